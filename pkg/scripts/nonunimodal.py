"""Local h* of conv(0, e_1, ..., e_d) in the lattice Z^d + Z(1/k, ..., 1/k).

For d = 5, k = 3 the local h* is t^2 + t^4: symmetric but not unimodal.

    python scripts/nonunimodal.py [--dim 5] [--k 3]
"""
import argparse
from fractions import Fraction

from mixedhstar import ehrhart as E
from mixedhstar.laurent import to_string
from mixedhstar.polytope import polytope


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=5)
    ap.add_argument("--k", type=int, default=3)
    args = ap.parse_args(argv)
    d, k = args.dim, args.k
    unit = [[int(i == j) for i in range(d)] for j in range(d)]
    P = polytope([[0] * d] + unit, [[Fraction(1, k)] * d] + unit[1:])
    l_box, h_box = E.hstar_box_oracle(P)
    print(f"normalized volume  {P.normalized_volume()}")
    print(f"h*                 {to_string(E.hstar(P))}   (box points: {to_string(h_box)})")
    print(f"local h*           {to_string(E.local_hstar(P))}   (box points: {to_string(l_box)})")
    print(f"mixed h*           {to_string(E.mixed_hstar(P))}")


if __name__ == "__main__":
    main()
