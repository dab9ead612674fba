"""Feedback and turnback arc sets, acyclic orientations, non-termination witnesses.

Arc subsets are ``n x n`` multiplicity tables dominated by the host graph, so a
set may take some copies of a parallel arc and not others.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SizeLimitExceeded
from .graph import MultiDigraph, arc_table, is_acyclic
from .game import is_terminating, play_until_all_fired

__all__ = [
    "is_feedback_arc_set",
    "is_turnback_arc_set",
    "minfas",
    "minfas_ordering",
    "backward_arcs",
    "min_turnback",
    "min_turnback_bruteforce",
    "sub_multisets",
    "minimal_feedback_arc_sets",
    "Witness",
    "nonterm_witness_turnback",
    "nonterm_witness_acyclic_orientation",
    "acyclic_orientations",
    "DEFAULT_ENUMERATION_LIMIT",
]

DEFAULT_ENUMERATION_LIMIT = 12


def is_feedback_arc_set(g: MultiDigraph, arcs) -> bool:
    """Deleting ``arcs`` leaves an acyclic digraph."""
    return is_acyclic(g.mult - arc_table(g, arcs))


def is_turnback_arc_set(g: MultiDigraph, arcs) -> bool:
    """Reversing ``arcs`` leaves an acyclic digraph."""
    t = arc_table(g, arcs)
    return is_acyclic(g.mult - t + t.T)


def _dp_over_orderings(g: MultiDigraph):
    # best[S] = fewest backward arcs when the vertices of S are placed first
    n = g.n
    if n > 24:
        raise SizeLimitExceeded(f"minfas DP over 2^{n} subsets is too large")
    full = (1 << n) - 1
    into = [[int(g.mult[u, v]) for u in range(n)] for v in range(n)]
    best = [0] + [-1] * full
    choice = [0] * (full + 1)
    for s in range(full + 1):
        if best[s] < 0:
            continue
        for v in range(n):
            bit = 1 << v
            if s & bit:
                continue
            later = full & ~(s | bit)
            cost = best[s] + sum(into[v][u] for u in range(n) if later >> u & 1)
            t = s | bit
            if best[t] < 0 or cost < best[t]:
                best[t] = cost
                choice[t] = v
    return best, choice, full


def minfas(g: MultiDigraph) -> int:
    """Exact minimum feedback arc set size by dynamic programming over vertex subsets."""
    best, _, full = _dp_over_orderings(g)
    return best[full]


def minfas_ordering(g: MultiDigraph) -> list[int]:
    """A vertex ordering whose backward arcs form a minimum feedback arc set."""
    _, choice, s = _dp_over_orderings(g)
    order = []
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    return order[::-1]


def backward_arcs(g: MultiDigraph, order) -> np.ndarray:
    """All copies of arcs pointing from a later to an earlier vertex of ``order``."""
    pos = np.empty(g.n, dtype=np.int64)
    pos[list(order)] = np.arange(g.n)
    mask = pos[:, None] > pos[None, :]
    return np.where(mask, g.mult, 0)


def min_turnback(g: MultiDigraph) -> tuple[int, np.ndarray]:
    """Size and a witness of a minimum turnback arc set.

    The witness is the backward-arc set of an optimal ordering, pruned to be
    inclusion-minimal as a feedback arc set; such sets are turnback sets.
    """
    t = backward_arcs(g, minfas_ordering(g))
    for u, v in zip(*np.nonzero(t)):
        while t[u, v] > 0:
            t[u, v] -= 1
            if not is_feedback_arc_set(g, t):
                t[u, v] += 1
                break
    return int(t.sum()), t


def sub_multisets(g: MultiDigraph, limit: Optional[int] = DEFAULT_ENUMERATION_LIMIT):
    """Every arc table dominated by ``g`` (``prod(m + 1)`` of them)."""
    if limit is not None and g.num_arcs > limit:
        raise SizeLimitExceeded(f"{g.num_arcs} arcs exceeds the enumeration limit {limit}")
    arcs = g.arcs()
    for ks in itertools.product(*(range(k + 1) for _, _, k in arcs)):
        t = np.zeros_like(g.mult)
        for (u, v, _), k in zip(arcs, ks):
            t[u, v] = k
        yield t


def min_turnback_bruteforce(g: MultiDigraph, limit: Optional[int] = DEFAULT_ENUMERATION_LIMIT) -> int:
    return min(int(t.sum()) for t in sub_multisets(g, limit) if is_turnback_arc_set(g, t))


def minimal_feedback_arc_sets(g: MultiDigraph, limit: Optional[int] = DEFAULT_ENUMERATION_LIMIT) -> list[np.ndarray]:
    """All inclusion-minimal feedback arc sets.

    Being a feedback set is upward closed, so a set is minimal exactly when
    dropping any single arc copy breaks it.
    """
    out = []
    for t in sub_multisets(g, limit):
        if not is_feedback_arc_set(g, t):
            continue
        minimal = True
        for u, v in zip(*np.nonzero(t)):
            t[u, v] -= 1
            still = is_feedback_arc_set(g, t)
            t[u, v] += 1
            if still:
                minimal = False
                break
        if minimal:
            out.append(t)
    return out


@dataclass(frozen=True)
class Witness:
    """``x ~ indegree(arcs) + surplus`` with ``surplus >= 0``."""

    arcs: np.ndarray
    surplus: np.ndarray
    played_to: np.ndarray  # the equivalent distribution reached by legal play

    @property
    def indegree(self) -> np.ndarray:
        return self.arcs.sum(axis=0)


def _last_firing_witness(g: MultiDigraph, x) -> Optional[Witness]:
    if is_terminating(g, x):
        return None
    state, last = play_until_all_fired(g, x)
    last = np.array(last)
    # arc u->v stays in the turnback set unless u's last firing precedes v's
    keep = last[:, None] > last[None, :]
    t = np.where(keep, g.mult, 0)
    surplus = state - t.sum(axis=0)
    if (surplus < 0).any():  # pragma: no cover - would contradict the construction
        raise AssertionError(f"negative surplus {surplus} from state {state}")
    return Witness(t, surplus, state)


def nonterm_witness_turnback(g: MultiDigraph, x) -> Optional[Witness]:
    """A turnback set ``T`` and ``a >= 0`` with ``x ~ indeg(T) + a``, or ``None``.

    Plays until every vertex has fired and takes ``T`` as the arcs ``uv``
    whose tail fired last after their head.  ``None`` means ``x`` terminates.
    """
    g.require_strongly_connected()
    g.require_eulerian()
    return _last_firing_witness(g, x)


def nonterm_witness_acyclic_orientation(g: MultiDigraph, x) -> Optional[Witness]:
    """Same as :func:`nonterm_witness_turnback` on an undirected graph.

    Last-firing times are distinct, so the turnback set takes exactly one
    direction of every edge: it is an acyclic orientation.
    """
    g.require_bidirected()
    g.require_strongly_connected()
    return _last_firing_witness(g, x)


def acyclic_orientations(g: MultiDigraph, limit: Optional[int] = 2 * DEFAULT_ENUMERATION_LIMIT) -> list[np.ndarray]:
    """All acyclic orientations of an undirected graph, as arc tables."""
    g.require_bidirected()
    if limit is not None and g.num_arcs > limit:
        raise SizeLimitExceeded(f"{g.num_arcs} arcs exceeds the enumeration limit {limit}")
    edges = [(u, v, k) for u, v, k in g.arcs() if u < v]
    out = []
    for split in itertools.product(*(range(k + 1) for _, _, k in edges)):
        t = np.zeros_like(g.mult)
        for (u, v, k), j in zip(edges, split):
            t[u, v] = j
            t[v, u] = k - j
        if is_acyclic(t):
            out.append(t)
    return out
