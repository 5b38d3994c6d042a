"""Print h, local h and mixed h of barycentric subdivisions of simplices.

    python scripts/eulerian_table.py [--max-n 6]
"""
import argparse
import time

from mixedhstar.laurent import to_string
from mixedhstar.poset import boolean_algebra
from mixedhstar.subdivision import barycentric_sfs


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    args = ap.parse_args(argv)
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        s = barycentric_sfs(boolean_algebra(n))
        print(f"n = {n}  ({time.perf_counter() - t0:.2f}s, {len(s.gamma)} chains)")
        print(f"  h       = {to_string(s.h())}")
        print(f"  local h = {to_string(s.local_h())}")
        print(f"  mixed h = {to_string(s.mixed_h())}")


if __name__ == "__main__":
    main()
