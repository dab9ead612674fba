"""Random and exhaustive graph families for sweeps and tests.

All random generators take a :class:`numpy.random.Generator`, so a seed fixes
every draw.
"""

from __future__ import annotations

import itertools

import numpy as np

from .graph import MultiDigraph, build_digraph, from_undirected

__all__ = [
    "random_eulerian_digraph",
    "random_connected_undirected",
    "random_strongly_connected_digraph",
    "random_digraph",
    "connected_undirected_graphs",
    "all_digraphs",
    "box",
]


def random_eulerian_digraph(rng: np.random.Generator, n_min: int = 2, n_max: int = 5,
                            max_cycles: int = 3, max_tries: int = 1000) -> MultiDigraph:
    """Union of random directed cycles; draws that are not strongly connected are discarded."""
    for _ in range(max_tries):
        n = int(rng.integers(n_min, n_max + 1))
        arcs = []
        for _ in range(int(rng.integers(1, max_cycles + 1))):
            length = int(rng.integers(2, n + 1))
            cyc = [int(v) for v in rng.permutation(n)[:length]]
            arcs += [(cyc[i], cyc[(i + 1) % length]) for i in range(length)]
        g = build_digraph(n, arcs)
        if g.strongly_connected:
            return g
    raise RuntimeError("could not draw a strongly connected Eulerian digraph")


def random_connected_undirected(rng: np.random.Generator, n_min: int = 2, n_max: int = 4,
                                max_extra: int = 2, multi: bool = False) -> MultiDigraph:
    """Random spanning tree plus up to ``max_extra`` further edges, made bidirected."""
    n = int(rng.integers(n_min, n_max + 1))
    order = [int(v) for v in rng.permutation(n)]
    edges = [(order[i], order[int(rng.integers(0, i))]) for i in range(1, n)]
    present = {frozenset(e) for e in edges}
    for _ in range(int(rng.integers(0, max_extra + 1))):
        if n < 2:
            break
        u, v = (int(a) for a in rng.choice(n, size=2, replace=False))
        if multi or frozenset((u, v)) not in present:
            edges.append((u, v))
            present.add(frozenset((u, v)))
    return from_undirected(n, edges)


def random_strongly_connected_digraph(rng: np.random.Generator, n_min: int = 2, n_max: int = 4,
                                      max_extra: int = 3) -> MultiDigraph:
    """A random Hamiltonian cycle plus random extra arcs (parallel arcs allowed)."""
    n = int(rng.integers(n_min, n_max + 1))
    cyc = [int(v) for v in rng.permutation(n)]
    arcs = [(cyc[i], cyc[(i + 1) % n]) for i in range(n)] if n > 1 else []
    for _ in range(int(rng.integers(0, max_extra + 1))):
        if n < 2:
            break
        u, v = (int(a) for a in rng.choice(n, size=2, replace=False))
        arcs.append((u, v))
    return build_digraph(n, arcs)


def random_digraph(rng: np.random.Generator, n: int, num_arcs: int) -> MultiDigraph:
    """``num_arcs`` arcs between uniformly random distinct endpoints; may be disconnected."""
    arcs = []
    for _ in range(num_arcs):
        u, v = (int(a) for a in rng.choice(n, size=2, replace=False))
        arcs.append((u, v))
    return build_digraph(n, arcs)


def connected_undirected_graphs(max_n: int, max_edges: int, multi: bool = False, min_n: int = 1):
    """Every labeled connected undirected graph with the given bounds.

    With ``multi`` an edge may repeat; otherwise graphs are simple.
    """
    for n in range(min_n, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for m in range(0, max_edges + 1):
            choices = (itertools.combinations_with_replacement(pairs, m) if multi
                       else itertools.combinations(pairs, m))
            for edges in choices:
                g = from_undirected(n, edges)
                if g.strongly_connected:
                    yield g


def all_digraphs(n: int):
    """Every simple digraph on ``n`` labeled vertices (``2^(n(n-1))`` of them)."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for bits in range(1 << len(pairs)):
        yield build_digraph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def box(n: int, lo: int, hi: int):
    """All integer vectors in ``[lo, hi]^n`` as numpy arrays."""
    for x in itertools.product(range(lo, hi + 1), repeat=n):
        yield np.array(x, dtype=np.int64)
