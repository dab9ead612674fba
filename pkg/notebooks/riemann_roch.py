"""
When does the Riemann-Roch formula hold?
========================================

``dist(x)`` counts the chips one must add to make ``x`` cycle forever.  A
digraph has the Riemann-Roch property when some ``K`` and ``t`` satisfy
``dist(x) - dist(K - x) = t - deg(x)`` for every ``x``.  It holds only if all
minimally non-terminating classes share one degree.
"""

import numpy as np

from chipfire import dist, load_fixture, natural_rr_check, rank, rr_check, verify_undirected_rr
from chipfire.generators import box

for name in ("G1", "G2", "G3", "C4", "K3"):
    g = load_fixture(name)
    report = rr_check(g)
    degrees = [c.degree for c in report.mnt_classes]
    print(f"{name}: MNT degrees {degrees}  holds={report.holds}  reason={report.failure_reason}"
          f"  K={None if report.K is None else report.K.tolist()}  natural={natural_rr_check(g)}")

# G1: two minimally non-terminating vectors of different degree
g1 = load_fixture("G1")
for x in ([1, 0, 0, 1, 0, 2], [2, 1, 1, 1, 0, 0]):
    print(x, "degree", sum(x))

# on an undirected graph K = d and t = number of edges, for every x
g = load_fixture("cycle4_undirected")
checks = verify_undirected_rr(g, box(g.n, -1, 3))
print(len(checks), "distributions,", sum(not c.ok for c in checks), "violations")

# divisor rank through the duality with dist
f = np.array([1, 1, 0, 0])
print("rank", rank(g, f), " dist(0) =", dist(g, np.zeros(4, dtype=np.int64)))
