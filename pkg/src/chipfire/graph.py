"""Loop-free multidigraphs, their degree data and Laplacian.

Vertices are the integers ``0..n-1``.  A graph is stored as a dense ``n x n``
table ``mult`` where ``mult[u, v]`` counts the parallel arcs ``u -> v``.
Arc subsets (feedback sets, turnback sets, orientations) use the same kind
of table and must be dominated entrywise by the host graph's table.
"""

from __future__ import annotations

from collections import deque
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    LoopArc,
    NotASubset,
    NotBidirected,
    NotEulerian,
    NotStronglyConnected,
    ParseError,
    VertexOutOfRange,
)

__all__ = [
    "MultiDigraph",
    "build_digraph",
    "from_undirected",
    "is_strongly_connected",
    "is_eulerian",
    "is_bidirected",
    "laplacian",
    "arc_table",
    "subgraph_indegree",
    "is_acyclic",
    "is_acyclic_after",
    "parse_graph",
    "read_graph",
    "format_graph",
    "format_arcs",
]


class MultiDigraph:
    """Immutable loop-free directed multigraph.

    Parameters
    ----------
    mult : array_like, shape (n, n)
        Arc multiplicities; ``mult[u, v]`` is the number of arcs ``u -> v``.
    undirected : bool
        Set by :func:`from_undirected`; only affects how the graph is printed.
    """

    __slots__ = ("_mult", "_undirected", "_strong", "_key", "_outs", "_dplus", "__weakref__")

    def __init__(self, mult, undirected: bool = False):
        table = np.array(mult, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise DimensionMismatch(f"multiplicity table must be square, got {table.shape}")
        if table.shape[0] < 1:
            raise DimensionMismatch("a graph needs at least one vertex")
        if (table < 0).any():
            raise ValueError("arc multiplicities must be non-negative")
        if np.diagonal(table).any():
            v = int(np.flatnonzero(np.diagonal(table))[0])
            raise LoopArc(f"loop at vertex {v}")
        table.setflags(write=False)
        self._mult = table
        self._undirected = bool(undirected)
        self._strong = _reaches_all(table) and _reaches_all(table.T)
        self._key = (table.shape[0], table.tobytes())
        self._outs = tuple(
            tuple((int(v), int(table[u, v])) for v in np.flatnonzero(table[u]))
            for u in range(table.shape[0])
        )
        self._dplus = tuple(int(d) for d in table.sum(axis=1))
        if self._undirected and not self.bidirected:
            raise NotBidirected("undirected flag set on a non-bidirected table")

    # structure ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._mult.shape[0]

    @property
    def mult(self) -> np.ndarray:
        return self._mult

    @property
    def out_degree(self) -> np.ndarray:
        return self._mult.sum(axis=1)

    @property
    def in_degree(self) -> np.ndarray:
        return self._mult.sum(axis=0)

    @property
    def num_arcs(self) -> int:
        return int(self._mult.sum())

    @property
    def undirected_edge_count(self) -> int:
        """Number of undirected edges ``|E|/2``; only meaningful when bidirected."""
        if not self.bidirected:
            raise NotBidirected("undirected edge count of a non-bidirected graph")
        return self.num_arcs // 2

    @property
    def strongly_connected(self) -> bool:
        return self._strong

    @property
    def eulerian(self) -> bool:
        return bool((self.out_degree == self.in_degree).all())

    @property
    def bidirected(self) -> bool:
        return bool((self._mult == self._mult.T).all())

    @property
    def is_undirected(self) -> bool:
        return self._undirected

    @property
    def termination_bound(self) -> int:
        """Degree above which every distribution is non-terminating: ``|E| - |V|``."""
        return self.num_arcs - self.n

    def arcs(self) -> list[tuple[int, int, int]]:
        """Arcs as ``(u, v, multiplicity)`` triples in row-major order."""
        us, vs = np.nonzero(self._mult)
        return [(int(u), int(v), int(self._mult[u, v])) for u, v in zip(us, vs)]

    def out_neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(head, multiplicity)`` pairs of its out-arcs."""
        return self._outs

    def out_degree_list(self) -> tuple[int, ...]:
        return self._dplus

    def laplacian(self) -> np.ndarray:
        return laplacian(self)

    # requirements used by the game and divisor modules ----------------------

    def require_strongly_connected(self) -> None:
        if not self._strong:
            raise NotStronglyConnected("operation requires a strongly connected digraph")

    def require_eulerian(self) -> None:
        if not self.eulerian:
            raise NotEulerian("operation requires an Eulerian digraph")

    def require_bidirected(self) -> None:
        if not self.bidirected:
            raise NotBidirected("operation requires a bidirected (undirected) graph")

    def check_vertex(self, v) -> int:
        v = int(v)
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in 0..{self.n - 1}")
        return v

    def check_vector(self, x) -> np.ndarray:
        arr = np.asarray(x)
        if arr.shape != (self.n,):
            raise DimensionMismatch(f"expected a vector of length {self.n}, got shape {arr.shape}")
        return arr.astype(np.int64)

    # dunder ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MultiDigraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        kind = "undirected" if self._undirected else "digraph"
        return f"MultiDigraph({kind}, n={self.n}, arcs={self.arcs()})"


def _reaches_all(table: np.ndarray) -> bool:
    n = table.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(table[u]):
            if not seen[v]:
                seen[v] = True
                queue.append(int(v))
    return bool(seen.all())


def _accumulate(n: int, items: Iterable, both_ways: bool) -> np.ndarray:
    if n < 1:
        raise DimensionMismatch("a graph needs at least one vertex")
    table = np.zeros((n, n), dtype=np.int64)
    for item in items:
        if len(item) == 2:
            u, v, k = item[0], item[1], 1
        elif len(item) == 3:
            u, v, k = item
        else:
            raise ValueError(f"arc must be (u, v) or (u, v, k), got {item!r}")
        u, v, k = int(u), int(v), int(k)
        for w in (u, v):
            if not 0 <= w < n:
                raise VertexOutOfRange(f"vertex {w} not in 0..{n - 1}")
        if u == v:
            raise LoopArc(f"loop at vertex {u}")
        if k < 0:
            raise ValueError(f"negative multiplicity {k} for arc ({u}, {v})")
        table[u, v] += k
        if both_ways:
            table[v, u] += k
    return table


def build_digraph(n: int, arcs: Iterable) -> MultiDigraph:
    """Build a multidigraph from ``(u, v)`` or ``(u, v, k)`` items; repeats accumulate."""
    return MultiDigraph(_accumulate(n, arcs, both_ways=False))


def from_undirected(n: int, edges: Iterable) -> MultiDigraph:
    """Bidirected graph with one arc pair per undirected edge."""
    return MultiDigraph(_accumulate(n, edges, both_ways=True), undirected=True)


def is_strongly_connected(g: MultiDigraph) -> bool:
    return g.strongly_connected


def is_eulerian(g: MultiDigraph) -> bool:
    return g.eulerian


def is_bidirected(g: MultiDigraph) -> bool:
    return g.bidirected


def laplacian(g: MultiDigraph) -> np.ndarray:
    """``L[u, v] = -outdeg(v)`` on the diagonal and ``mult[v, u]`` elsewhere.

    Firing ``v`` adds column ``v`` to the distribution; every column sums to 0.
    """
    return g.mult.T - np.diag(g.out_degree)


def arc_table(g: MultiDigraph, arcs) -> np.ndarray:
    """Normalize an arc subset to a multiplicity table dominated by ``g``.

    ``arcs`` may be an ``n x n`` table, ``None`` (empty subset) or an iterable
    of ``(u, v)`` / ``(u, v, k)`` items.
    """
    if arcs is None:
        return np.zeros_like(g.mult)
    if isinstance(arcs, np.ndarray) and arcs.ndim == 2:
        if arcs.shape != g.mult.shape:
            raise DimensionMismatch(f"arc table shape {arcs.shape} != {g.mult.shape}")
        table = arcs.astype(np.int64)
    else:
        table = _accumulate(g.n, arcs, both_ways=False)
    if (table < 0).any() or (table > g.mult).any():
        raise NotASubset("arc subset is not contained in the graph")
    return table


def subgraph_indegree(g: MultiDigraph, arcs) -> np.ndarray:
    """Indegree vector of the spanning subgraph formed by ``arcs``."""
    return arc_table(g, arcs).sum(axis=0)


def is_acyclic(table: np.ndarray) -> bool:
    """Kahn's algorithm on the support of a multiplicity table."""
    table = np.asarray(table)
    n = table.shape[0]
    indeg = (table > 0).sum(axis=0)
    queue = deque(int(v) for v in np.flatnonzero(indeg == 0))
    removed = 0
    while queue:
        u = queue.popleft()
        removed += 1
        for v in np.flatnonzero(table[u]):
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(int(v))
    return removed == n


def is_acyclic_after(g: MultiDigraph, reversed=None, removed=None) -> bool:
    """Whether ``g`` becomes acyclic after reversing and deleting the given arcs."""
    rev = arc_table(g, reversed)
    rem = arc_table(g, removed)
    if (rev + rem > g.mult).any():
        raise NotASubset("reversed and removed arc sets overlap beyond the graph's multiplicity")
    return is_acyclic(g.mult - rev - rem + rev.T)


# text format ----------------------------------------------------------------

def parse_graph(text: str) -> MultiDigraph:
    """Parse the ``digraph N`` / ``undirected N`` edge-list format.

    After the header each line is ``u v [k]``; ``#`` starts a comment.
    """
    header = None
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2 or fields[0] not in ("digraph", "undirected"):
                raise ParseError("expected header 'digraph N' or 'undirected N'", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(f"bad vertex count {fields[1]!r}", lineno) from None
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
            header = (fields[0], n)
            continue
        if len(fields) not in (2, 3):
            raise ParseError(f"expected 'u v [k]', got {line!r}", lineno)
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", lineno) from None
        u, v = nums[0], nums[1]
        k = nums[2] if len(nums) == 3 else 1
        if not (0 <= u < header[1] and 0 <= v < header[1]):
            raise ParseError(f"vertex out of range 0..{header[1] - 1}", lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        if k < 0:
            raise ParseError("multiplicity must be non-negative", lineno)
        items.append((u, v, k))
    if header is None:
        raise ParseError("empty graph file")
    kind, n = header
    if kind == "undirected":
        return from_undirected(n, items)
    return build_digraph(n, items)


def read_graph(path) -> MultiDigraph:
    return parse_graph(Path(path).read_text())


def format_arcs(table: np.ndarray, undirected: bool = False) -> str:
    """``u v [k]`` lines for a multiplicity table (each pair once if undirected)."""
    table = np.asarray(table)
    lines = []
    for u, v in zip(*np.nonzero(table)):
        if undirected and u > v:
            continue
        k = int(table[u, v])
        lines.append(f"{u} {v}" if k == 1 else f"{u} {v} {k}")
    return "\n".join(lines)


def format_graph(g: MultiDigraph, comment: Optional[str] = None) -> str:
    header = f"{'undirected' if g.is_undirected else 'digraph'} {g.n}"
    parts = [f"# {comment}"] if comment else []
    parts.append(header)
    body = format_arcs(g.mult, undirected=g.is_undirected)
    if body:
        parts.append(body)
    return "\n".join(parts) + "\n"
