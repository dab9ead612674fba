"""
Linear equivalence and the Picard group
=======================================

Two distributions are equivalent when they differ by an integer combination of
Laplacian columns.  Each degree splits into the same finite number of classes.
"""

import numpy as np

from chipfire import canonical_rep, enumerate_classes, equivalent, lattice_of, load_fixture

g = load_fixture("G3")
lat = lattice_of(g)
print("Laplacian:\n", g.laplacian())
print("Hermite form of the first n-1 rows:\n", lat.hnf_matrix())
print("Smith invariants:", lat.snf_invariants, " classes per degree:", lat.pic0_order)

# (2,0,0,6) and the out-degree vector (2,1,2,3) sit in one class
print(equivalent(lat, [2, 0, 0, 6], [2, 1, 2, 3]))
print(canonical_rep(lat, [2, 0, 0, 6]), canonical_rep(lat, [2, 1, 2, 3]))

# firing never leaves the class
x = np.array([1, 0, 0, 3])
y = x + g.laplacian() @ np.array([2, -1, 0, 5])
print(y, equivalent(lat, x, y))

for name in ("C3", "G2", "K3", "G1"):
    lat = lattice_of(load_fixture(name))
    print(f"{name}: {lat.pic0_order} classes; degree 2 ->", [r.tolist() for r in enumerate_classes(lat, 2)][:4])
