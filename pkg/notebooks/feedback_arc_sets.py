"""
Feedback arcs, turnback arcs and non-termination
================================================

Deleting a feedback arc set leaves the digraph acyclic; reversing a turnback
arc set does.  Both have the same minimum size.  On Eulerian digraphs a
distribution cycles forever exactly when it dominates, up to equivalence,
the in-degree vector of some turnback arc set.
"""

from chipfire import (
    acyclic_orientations,
    load_fixture,
    min_turnback,
    minfas,
    minimal_feedback_arc_sets,
    nonterm_witness_acyclic_orientation,
    nonterm_witness_turnback,
)
from chipfire.graph import format_arcs

c3 = load_fixture("C3")
print("C3 minimal feedback arc sets:", [format_arcs(t).split() for t in minimal_feedback_arc_sets(c3)])

g = load_fixture("G2")
size, t = min_turnback(g)
print("G2 minfas:", minfas(g), " a minimum turnback set:")
print(format_arcs(t))

# play until every vertex has fired; arcs whose tail fired last after the head form T
w = nonterm_witness_turnback(g, [2, 0, 0, 0])
print("indeg(T) =", w.indegree, " surplus =", w.surplus, " reached", w.played_to)
print("stable input gives no witness:", nonterm_witness_turnback(g, [1, 1, 0, 0]))

# undirected graphs: the witness is an acyclic orientation
k3 = load_fixture("K3")
print("K3 has", len(acyclic_orientations(k3)), "acyclic orientations")
w = nonterm_witness_acyclic_orientation(k3, [0, 1, 2])
print(format_arcs(w.arcs))
