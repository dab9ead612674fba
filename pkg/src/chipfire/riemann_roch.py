"""Riemann-Roch properties of strongly connected digraphs.

The decision procedure works on minimally non-terminating (MNT) classes: a
distribution is MNT when it is non-terminating but removing any single chip
makes it terminating.  A digraph has the Riemann-Roch property exactly when
all MNT classes share the degree ``dist(0)`` and some ``K`` maps MNT classes
to MNT classes via ``x -> K - x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .arcset import minfas
from .errors import SizeLimitExceeded
from .game import class_is_terminating, compositions, dist, nonnegative_representative, rank
from .graph import MultiDigraph
from .lattice import canonical_key, canonical_rep, enumerate_classes, lattice_of

__all__ = [
    "MNTClass",
    "RRReport",
    "IdentityCheck",
    "BoundCheck",
    "is_minimally_nonterminating",
    "enumerate_mnt_classes",
    "enumerate_mnt_classes_by_class",
    "rr_check",
    "natural_rr_report",
    "natural_rr_check",
    "genus",
    "canonical_divisor",
    "is_non_special",
    "verify_undirected_rr",
    "verify_baker_norine",
    "verify_eulerian_weak_rr",
    "rr_formula_spot_check",
    "DEFAULT_CANDIDATE_LIMIT",
]

DEFAULT_CANDIDATE_LIMIT = 2_000_000


@dataclass(frozen=True)
class MNTClass:
    key: tuple[int, ...]
    representative: np.ndarray  # canonical representative
    degree: int
    nonnegative: Optional[np.ndarray] = None  # a nowhere-negative member, when computed

    def to_record(self) -> dict:
        rec = {"representative": [int(a) for a in self.representative], "degree": self.degree}
        if self.nonnegative is not None:
            rec["nonnegative"] = [int(a) for a in self.nonnegative]
        return rec


@dataclass
class RRReport:
    holds: bool
    t: int
    mnt_classes: list[MNTClass]
    K: Optional[np.ndarray] = None
    failure_reason: Optional[str] = None
    degrees: tuple[int, ...] = ()
    K_candidates: list[np.ndarray] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "holds": self.holds,
            "t": self.t,
            "K": None if self.K is None else [int(a) for a in self.K],
            "mnt": [c.to_record() for c in self.mnt_classes],
            "degrees": list(self.degrees),
            "failure_reason": self.failure_reason,
        }


@dataclass(frozen=True)
class IdentityCheck:
    x: tuple[int, ...]
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class BoundCheck:
    x: tuple[int, ...]
    lower: int
    value: int
    upper: int

    @property
    def ok(self) -> bool:
        return self.lower <= self.value <= self.upper


def is_minimally_nonterminating(g: MultiDigraph, x) -> bool:
    x = np.asarray(x, dtype=np.int64)
    if class_is_terminating(g, x):
        return False
    for v in range(g.n):
        y = x.copy()
        y[v] -= 1
        if not class_is_terminating(g, y):
            return False
    return True


def _degree_window(g: MultiDigraph) -> range:
    # below dist(0) nothing is non-terminating; above |E|-|V|+1 removing a chip keeps it so
    return range(dist(g, np.zeros(g.n, dtype=np.int64)), g.termination_bound + 2)


def enumerate_mnt_classes(g: MultiDigraph, limit: Optional[int] = DEFAULT_CANDIDATE_LIMIT) -> list[MNTClass]:
    """All MNT classes, found among non-negative vectors of each admissible degree.

    Every non-terminating class has a non-negative member, so scanning
    non-negative vectors is complete.  Sorted by degree, then representative.
    """
    g.require_strongly_connected()
    lat = lattice_of(g)
    window = _degree_window(g)
    total = sum(math.comb(d + g.n - 1, g.n - 1) for d in window)
    if limit is not None and total > limit:
        raise SizeLimitExceeded(f"{total} candidate vectors exceeds limit {limit}")
    seen = set()
    found = []
    for d in window:
        for y in compositions(d, g.n):
            key = canonical_key(lat, y)
            if key in seen:
                continue
            seen.add(key)
            if is_minimally_nonterminating(g, y):
                found.append(MNTClass(key, canonical_rep(lat, y), d, np.array(y, dtype=np.int64)))
    return _sorted(found)


def enumerate_mnt_classes_by_class(g: MultiDigraph) -> list[MNTClass]:
    """MNT classes found by walking every class of each admissible degree.

    Independent of :func:`enumerate_mnt_classes`; the non-negative member is
    obtained by legal play from the canonical representative.
    """
    g.require_strongly_connected()
    lat = lattice_of(g)
    found = []
    for d in _degree_window(g):
        for rep in enumerate_classes(lat, d):
            if is_minimally_nonterminating(g, rep):
                found.append(MNTClass(canonical_key(lat, rep), rep, d, nonnegative_representative(g, rep)))
    return _sorted(found)


def _sorted(classes: list[MNTClass]) -> list[MNTClass]:
    return sorted(classes, key=lambda c: (c.degree, tuple(int(a) for a in c.representative)))


def _pairing_holds(lat, K, mnt: list[MNTClass], keys) -> bool:
    return all(canonical_key(lat, K - c.representative) in keys for c in mnt)


def rr_check(g: MultiDigraph, all_candidates: bool = False) -> RRReport:
    """Decide the Riemann-Roch property and produce a canonical distribution.

    With ``all_candidates`` every valid ``K`` class is collected in
    ``K_candidates`` rather than stopping at the first.
    """
    mnt = enumerate_mnt_classes(g)
    lat = lattice_of(g)
    t = dist(g, np.zeros(g.n, dtype=np.int64))
    degrees = tuple(sorted({c.degree for c in mnt}))
    if degrees != (t,):
        return RRReport(False, t, mnt, failure_reason="DegreeSpread", degrees=degrees)
    keys = {c.key for c in mnt}
    c0 = mnt[0]
    candidates = {}
    for c in mnt:
        K = canonical_rep(lat, c0.representative + c.representative)
        candidates.setdefault(tuple(int(a) for a in K), K)
    valid = [candidates[k] for k in sorted(candidates) if _pairing_holds(lat, candidates[k], mnt, keys)]
    if not valid:
        return RRReport(False, t, mnt, failure_reason="NoPairingK", degrees=degrees)
    return RRReport(True, t, mnt, K=valid[0], degrees=degrees,
                    K_candidates=valid if all_candidates else [valid[0]])


def natural_rr_report(g: MultiDigraph) -> RRReport:
    """Riemann-Roch with the fixed canonical distribution ``K = d+`` and ``t = |E|/2``."""
    g.require_strongly_connected()
    t = dist(g, np.zeros(g.n, dtype=np.int64))
    if g.num_arcs != 2 * t:
        return RRReport(False, t, [], failure_reason="EdgeCountMismatch")
    mnt = enumerate_mnt_classes(g)
    degrees = tuple(sorted({c.degree for c in mnt}))
    if degrees != (t,):
        return RRReport(False, t, mnt, failure_reason="DegreeSpread", degrees=degrees)
    lat = lattice_of(g)
    K = g.out_degree.astype(np.int64)
    if not _pairing_holds(lat, K, mnt, {c.key for c in mnt}):
        return RRReport(False, t, mnt, failure_reason="NoPairingK", degrees=degrees)
    return RRReport(True, t, mnt, K=K, degrees=degrees, K_candidates=[K])


def natural_rr_check(g: MultiDigraph) -> bool:
    return natural_rr_report(g).holds


# identities on undirected and Eulerian graphs ------------------------------

def genus(g: MultiDigraph) -> int:
    return g.undirected_edge_count - g.n + 1


def canonical_divisor(g: MultiDigraph) -> np.ndarray:
    """``K_G(v) = deg(v) - 2`` for an undirected graph."""
    g.require_bidirected()
    return g.out_degree - 2


def is_non_special(g: MultiDigraph, f) -> bool:
    from .game import is_equi_effective

    f = g.check_vector(f)
    return int(f.sum()) == genus(g) - 1 and not is_equi_effective(g, f)


def _vec(x, n) -> np.ndarray:
    arr = np.asarray(x, dtype=np.int64)
    if arr.shape != (n,):
        raise ValueError(f"expected length {n}, got {arr.shape}")
    return arr


def verify_undirected_rr(g: MultiDigraph, xs: Iterable) -> list[IdentityCheck]:
    """``dist(x) - dist(d - x) == m - deg(x)`` with ``m`` the undirected edge count."""
    g.require_bidirected()
    g.require_strongly_connected()
    m = g.undirected_edge_count
    d = g.out_degree
    out = []
    for x in xs:
        x = _vec(x, g.n)
        out.append(IdentityCheck(tuple(int(a) for a in x), dist(g, x) - dist(g, d - x), m - int(x.sum())))
    return out


def verify_baker_norine(g: MultiDigraph, fs: Iterable) -> list[IdentityCheck]:
    """``rank(f) - rank(K_G - f) == deg(f) - genus + 1`` on an undirected graph."""
    g.require_bidirected()
    K = canonical_divisor(g)
    gen = genus(g)
    out = []
    for f in fs:
        f = _vec(f, g.n)
        out.append(IdentityCheck(tuple(int(a) for a in f), rank(g, f) - rank(g, K - f), int(f.sum()) - gen + 1))
    return out


def verify_eulerian_weak_rr(g: MultiDigraph, xs: Iterable) -> list[BoundCheck]:
    """Two-sided bound on ``dist(x) - dist(d- - x)`` for Eulerian digraphs."""
    g.require_eulerian()
    g.require_strongly_connected()
    mf = minfas(g)
    arcs = g.num_arcs
    dminus = g.in_degree
    out = []
    for x in xs:
        x = _vec(x, g.n)
        deg = int(x.sum())
        out.append(BoundCheck(tuple(int(a) for a in x), mf - deg,
                              dist(g, x) - dist(g, dminus - x), arcs - mf - deg))
    return out


def rr_formula_spot_check(g: MultiDigraph, report: RRReport, xs: Iterable) -> list[IdentityCheck]:
    """``dist(x) - dist(K - x) == t - deg(x)`` with the report's ``K`` and ``t``."""
    if not report.holds:
        raise ValueError("report does not certify the Riemann-Roch property")
    K = np.asarray(report.K, dtype=np.int64)
    out = []
    for x in xs:
        x = _vec(x, g.n)
        out.append(IdentityCheck(tuple(int(a) for a in x), dist(g, x) - dist(g, K - x), report.t - int(x.sum())))
    return out
