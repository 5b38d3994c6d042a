"""Standard posets and subdivisions used by tests, scripts and the corpus."""
from __future__ import annotations

from itertools import combinations

from .poset import RankedPoset, boolean_algebra, subset_name
from .subdivision import SFS, validate_sfs


def simplicial_complex(facets) -> RankedPoset:
    """Face poset (with the empty face) of the simplicial complex generated by ``facets``."""
    faces = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(len(f) + 1):
            faces.update(combinations(f, k))
    faces = sorted(faces, key=lambda s: (len(s), s))
    pos = {f: i for i, f in enumerate(faces)}
    down = []
    for f in faces:
        m = 0
        for k in range(len(f) + 1):
            for sub in combinations(f, k):
                m |= 1 << pos[sub]
        down.append(m)
    return RankedPoset([subset_name(f) for f in faces], [len(f) for f in faces], down)


def chan_example() -> SFS:
    """Two tetrahedra {1,2,3,4}, {1,2,3,5} glued along a pushed-in copy of the face {1,2,3}.

    Vertex 5 sits inside the face {1,2,3} of the simplex on {1,2,3,4}; the
    glued triangle itself lies in the interior.
    """
    gamma = simplicial_complex([(1, 2, 3, 4), (1, 2, 3, 5)])
    base = boolean_algebra(4)
    sigma = {}
    for e in gamma.elements:
        verts = [int(a) for a in e.strip("{}").split(",") if a]
        if 5 in verts:
            rest = [a for a in verts if a != 5]
            target = (1, 2, 3, 4) if len(verts) == 4 else (1, 2, 3)
            if len(verts) == 4 or set(rest) <= {1, 2, 3}:
                sigma[e] = subset_name(target)
            else:
                raise AssertionError("unexpected face")
        elif sorted(verts) == [1, 2, 3]:
            sigma[e] = subset_name((1, 2, 3, 4))
        else:
            sigma[e] = subset_name(verts)
    return validate_sfs(gamma, base, sigma)
