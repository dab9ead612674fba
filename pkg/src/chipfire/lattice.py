"""Exact arithmetic on the image lattice of a Laplacian.

Two distributions are equivalent when their difference is an integer
combination of Laplacian columns.  Every column has zero sum, so the image
sits inside the degree-zero lattice, which is identified with ``Z^(n-1)`` by
dropping the last coordinate.  Inside that copy the image has full rank
``n-1`` for strongly connected graphs, and a lower-triangular Hermite basis
gives unique coset representatives by plain division with remainder.

All reductions use Python integers, so nothing here can overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from operator import mul

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .errors import DimensionMismatch, RankDeficient
from .graph import MultiDigraph, laplacian

__all__ = [
    "LaplacianLattice",
    "build_lattice",
    "lattice_of",
    "hermite_basis",
    "equivalent",
    "canonical_rep",
    "canonical_key",
    "enumerate_classes",
]


def hermite_basis(rows: list[list[int]]) -> list[list[int]]:
    """Column-style Hermite normal form of an ``r x m`` integer matrix of rank ``r``.

    Returns the ``r`` basis columns (each a list of length ``r``) of the column
    span, lower triangular with a positive diagonal and entries left of the
    diagonal reduced into ``[0, pivot)``.
    """
    r = len(rows)
    m = len(rows[0]) if r else 0
    cols = [[int(rows[i][j]) for i in range(r)] for j in range(m)]
    for i in range(r):
        active = [c for c in cols[i:] if c[i] != 0]
        rest = [c for c in cols[i:] if c[i] == 0]
        if not active:
            raise RankDeficient(f"lattice has rank below {r} (no pivot in row {i})")
        # Euclid on row i across the active columns
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[i]))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q = c[i] // piv[i]
                c = [a - q * b for a, b in zip(c, piv)]
                (nxt if c[i] != 0 else rest).append(c)
            active = nxt
        piv = active[0]
        if piv[i] < 0:
            piv = [-a for a in piv]
        cols = cols[:i] + [piv] + rest
    basis = cols[:r]
    if any(any(c) for c in cols[r:]):  # pragma: no cover - guarded by the pivot loop
        raise RankDeficient("residual columns after reduction")
    for i in range(r):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return basis


@dataclass(frozen=True)
class LaplacianLattice:
    """Hermite and Smith data for the image of a Laplacian.

    ``hnf_basis[j]`` is the ``j``-th basis column written in the first ``n-1``
    coordinates; ``snf_invariants`` are the invariant factors of the first
    ``n-1`` rows of ``L``; ``pic0_order`` is the number of classes per degree.
    """

    n: int
    laplacian: np.ndarray
    hnf_basis: tuple[tuple[int, ...], ...]
    snf_invariants: tuple[int, ...]
    pic0_order: int

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self.hnf_basis[i][i] for i in range(self.n - 1))

    def hnf_matrix(self) -> np.ndarray:
        """Basis columns as an ``(n-1) x (n-1)`` object array of Python ints."""
        out = np.zeros((self.n - 1, self.n - 1), dtype=object)
        for j, col in enumerate(self.hnf_basis):
            out[:, j] = col
        return out

    def residues(self, x) -> tuple[int, ...]:
        w = [int(a) for a in x[: self.n - 1]]
        for i, col in enumerate(self.hnf_basis):
            q = w[i] // col[i]
            if q:
                for k in range(i, self.n - 1):
                    w[k] -= q * col[k]
        return tuple(w)

    def contains(self, w) -> bool:
        """Membership of a vector in the image of ``L``."""
        w = _as_ints(w, self.n)
        return sum(w) == 0 and not any(self.residues(w))


def _as_ints(x, n: int) -> list[int]:
    vals = [int(a) for a in np.asarray(x).ravel()]
    if len(vals) != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {len(vals)}")
    return vals


def build_lattice(L) -> LaplacianLattice:
    """Hermite basis, Smith invariants and class count for a Laplacian."""
    L = np.asarray(L, dtype=np.int64)
    n = L.shape[0]
    if L.shape != (n, n):
        raise DimensionMismatch(f"Laplacian must be square, got {L.shape}")
    if (L.sum(axis=0) != 0).any():
        raise ValueError("Laplacian columns must sum to zero")
    rows = [[int(a) for a in row] for row in L[: n - 1]]
    basis = hermite_basis(rows) if n > 1 else []
    if n > 1:
        dm = DomainMatrix([[ZZ(a) for a in row] for row in rows], (n - 1, n), ZZ)
        invariants = tuple(int(f) for f in invariant_factors(dm))
    else:
        invariants = ()
    if len(invariants) < n - 1 or 0 in invariants:
        raise RankDeficient("Smith form has a zero invariant factor")
    order = reduce(mul, invariants, 1)
    hnf_det = reduce(mul, (basis[i][i] for i in range(n - 1)), 1)
    if hnf_det != order:  # pragma: no cover - two independent index computations
        raise ArithmeticError(f"Hermite index {hnf_det} != Smith index {order}")
    L = L.copy()
    L.setflags(write=False)
    return LaplacianLattice(
        n=n,
        laplacian=L,
        hnf_basis=tuple(tuple(c) for c in basis),
        snf_invariants=invariants,
        pic0_order=order,
    )


@lru_cache(maxsize=256)
def lattice_of(g: MultiDigraph) -> LaplacianLattice:
    """Cached :func:`build_lattice` for a strongly connected graph."""
    g.require_strongly_connected()
    return build_lattice(laplacian(g))


def canonical_key(lat: LaplacianLattice, x) -> tuple[int, ...]:
    """Hashable class label ``(degree, residues...)``."""
    vals = _as_ints(x, lat.n)
    return (sum(vals),) + lat.residues(vals)


def equivalent(lat: LaplacianLattice, x, y) -> bool:
    """Whether ``x - y`` lies in the image of the Laplacian."""
    xs, ys = _as_ints(x, lat.n), _as_ints(y, lat.n)
    return lat.contains([a - b for a, b in zip(xs, ys)])


def _rep_from_key(key: tuple[int, ...]) -> np.ndarray:
    d, res = key[0], key[1:]
    return np.array(list(res) + [d - sum(res)], dtype=np.int64)


def canonical_rep(lat: LaplacianLattice, x) -> np.ndarray:
    """The unique representative whose first ``n-1`` entries are Hermite residues."""
    return _rep_from_key(canonical_key(lat, x))


def enumerate_classes(lat: LaplacianLattice, d: int) -> list[np.ndarray]:
    """One canonical representative for each class of degree ``d``.

    The residue box ``prod(range(pivot))`` is a complete, irredundant set of
    coset representatives, in lexicographic order.
    """
    return [_rep_from_key((int(d),) + res)
            for res in itertools.product(*(range(p) for p in lat.pivots))]
