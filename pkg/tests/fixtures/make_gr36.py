"""Generate ``gr36_symmetric.json``, the ice quiver with potential of a
symmetric (3,6) Postnikov diagram.

Construction
------------
A reduced (k,n)-Postnikov diagram is determined by the maximal weakly
separated collection of k-subsets labelling its alternating faces.  For
(3,6) we take

    123 234 345 456 156 126   (boundary faces, frozen)
    124 125 145 245           (interior faces, mutable)

which is invariant under i -> i+3, the rotation by k boundary points.
The script re-checks weak separation, maximality (size k(n-k)+1) and
rotational invariance.

Faces meet at the vertices of the plabic tiling.  A white vertex is a
(k-1)-set K with at least three faces K+x; going round it the faces are
ordered by increasing x.  A black vertex is a (k+1)-set L with at least
three faces L-x, ordered by decreasing x.  Each such cycle of faces
becomes a cycle of arrows; white cycles enter W with sign +1, black cycles
with sign -1.  Arrows shared by two cycles must be traversed the same way
by both, which the script asserts.

Run from this directory: ``python make_gr36.py``.
"""

import json
from itertools import combinations
from pathlib import Path

K, N = 3, 6
LABELS = ["123", "234", "345", "456", "156", "126", "124", "125", "145", "245"]
FROZEN = LABELS[:6]


def subset(label):
    return frozenset(int(c) for c in label)


def label(s):
    return "".join(str(x) for x in sorted(s))


def weakly_separated(a, b):
    x, y = a - b, b - a
    seq = ["x" if i in x else "y" for i in range(1, N + 1) if i in x or i in y]
    changes = sum(1 for i in range(len(seq)) if seq[i] != seq[i - 1])
    return changes <= 2


def rotate(s, r=K):
    return frozenset((x - 1 + r) % N + 1 for x in s)


def build():
    faces = [subset(x) for x in LABELS]
    assert len(faces) == K * (N - K) + 1
    assert all(weakly_separated(a, b) for a, b in combinations(faces, 2))
    assert {rotate(f) for f in faces} == set(faces)

    cycles = []
    for kset in sorted({f - {x} for f in faces for x in f}, key=sorted):
        mem = sorted((f for f in faces if kset <= f), key=lambda f: min(f - kset))
        if len(mem) >= 3:
            cycles.append((1, [label(f) for f in mem]))
    for lset in sorted({f | {x} for f in faces for x in range(1, N + 1) if x not in f}, key=sorted):
        mem = sorted((f for f in faces if f <= lset), key=lambda f: -min(lset - f))
        if len(mem) >= 3:
            cycles.append((-1, [label(f) for f in mem]))

    arrows = {}
    potential = []
    for sign, cyc in cycles:
        ids = []
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            assert (v, u) not in arrows, f"inconsistent orientation on {u}-{v}"
            aid = arrows.setdefault((u, v), f"{u}_{v}")
            ids.append(aid)
        potential.append({"sign": sign, "cycle": ids})
    rotation = {x: label(rotate(subset(x))) for x in LABELS}
    return {
        "name": "Gr(3,6) symmetric",
        "vertices": LABELS,
        "arrows": [{"id": aid, "src": u, "tgt": v} for (u, v), aid in sorted(arrows.items())],
        "potential": potential,
        "frozen": FROZEN,
        "rotation": rotation,
        "order": 2,
    }


if __name__ == "__main__":
    out = Path(__file__).with_name("gr36_symmetric.json")
    out.write_text(json.dumps(build(), indent=1) + "\n")
    print(f"wrote {out}")
