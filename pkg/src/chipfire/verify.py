"""Property sweeps over graphs and distributions, plus brute-force oracles.

Each ``check_*`` function runs one family of checks on one graph and returns a
:class:`SweepReport`; :func:`run_sweep` drives a named property over a graph
source for the command line.  The oracles here avoid the memoized class
machinery of :mod:`chipfire.game` so they can serve as independent checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from . import arcset, generators
from .game import (
    compositions,
    decide_termination,
    dist,
    dist_bruteforce,
    is_terminating,
    play,
)
from .errors import GraphClassError
from .graph import MultiDigraph, format_arcs, format_graph, is_acyclic
from .lattice import equivalent, lattice_of
from .riemann_roch import (
    rr_check,
    rr_formula_spot_check,
    verify_eulerian_weak_rr,
    verify_undirected_rr,
)

__all__ = [
    "SweepReport",
    "equi_effective_by_search",
    "rank_by_definition",
    "check_abelian",
    "check_dist_invariance",
    "check_gallai",
    "check_minfas_turnback",
    "check_turnback_characterization",
    "check_turnback_lemma",
    "check_acyclic_characterization",
    "check_undirected_rr",
    "check_eulerian_weak_rr",
    "check_rr_formula",
    "PROPERTIES",
    "run_sweep",
]


@dataclass
class SweepReport:
    property: str
    trials: int = 0
    failures: int = 0
    first_counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, g: Optional[MultiDigraph] = None, detail: str = "") -> None:
        self.trials += 1
        if not ok:
            self.failures += 1
            if self.first_counterexample is None:
                graph = format_graph(g) if g is not None else ""
                self.first_counterexample = f"{graph}{detail}".rstrip()

    def merge(self, other: "SweepReport") -> "SweepReport":
        self.trials += other.trials
        self.failures += other.failures
        if self.first_counterexample is None:
            self.first_counterexample = other.first_counterexample
        return self

    def to_record(self) -> dict:
        return {
            "property": self.property,
            "trials": self.trials,
            "failures": self.failures,
            "passed": self.passed,
            "first_counterexample": self.first_counterexample,
        }

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{self.property}: {status} ({self.trials - self.failures}/{self.trials} trials)"
        if self.first_counterexample:
            text += "\nfirst counterexample:\n" + self.first_counterexample
        return text


def _fmt(x) -> str:
    return ",".join(str(int(a)) for a in x)


# oracles ---------------------------------------------------------------------

def equi_effective_by_search(g: MultiDigraph, f) -> bool:
    """Search every effective divisor of degree ``deg(f)`` for one equivalent to ``f``."""
    f = np.asarray(f, dtype=np.int64)
    d = int(f.sum())
    if d < 0:
        return False
    lat = lattice_of(g)
    return any(equivalent(lat, f, h) for h in compositions(d, g.n))


def rank_by_definition(g: MultiDigraph, f) -> int:
    """``min deg(h) - 1`` over effective ``h`` with ``f - h`` not equi-effective."""
    f = np.asarray(f, dtype=np.int64)
    k = 0
    while True:
        for h in compositions(k, g.n):
            if not equi_effective_by_search(g, f - np.array(h, dtype=np.int64)):
                return k - 1
        k += 1


def _has_decomposition(g: MultiDigraph, x, indegrees) -> bool:
    # x ~ rho + a with a >= 0 for some rho in the list
    return any(equi_effective_by_search(g, np.asarray(x) - rho) for rho in indegrees)


# checks -------------------------------------------------------------------------

def check_abelian(g: MultiDigraph, xs: Iterable, strategies=("lowest", "highest", "rotating")) -> SweepReport:
    """Strategy independence of verdict, move count, fire counts and final state.

    Also checks that traces are consistent with the Laplacian, that a detected
    cycle fires every vertex, and that high-degree inputs indeed cycle.
    """
    rep = SweepReport("abelian")
    L = g.laplacian()
    for x in xs:
        traces = [play(g, x, strategy=s) for s in strategies]
        ok = len({t.terminated for t in traces}) == 1
        for t in traces:
            ok &= bool((np.array(t.final_state) == np.asarray(x) + L @ t.fire_counts).all())
            if not t.terminated:
                ok &= bool((t.cycle_fire_counts() > 0).all())
        if ok and traces[0].terminated:
            ref = traces[0]
            for t in traces[1:]:
                ok &= t.moves == ref.moves
                ok &= bool((t.fire_counts == ref.fire_counts).all())
                ok &= t.final_state == ref.final_state
        if int(np.sum(x)) > g.termination_bound:
            ok &= not traces[0].terminated
        rep.record(ok, g, f"x = {_fmt(x)}")
    return rep


def check_dist_invariance(g: MultiDigraph, rng: np.random.Generator, trials: int,
                          x_range=(-1, 3), z_range=(-2, 2)) -> SweepReport:
    """``dist(x) == dist(x + L z)``, with the brute-force scan on the shifted side."""
    rep = SweepReport("dist-invariance")
    L = g.laplacian()
    for _ in range(trials):
        x = rng.integers(x_range[0], x_range[1] + 1, size=g.n)
        z = rng.integers(z_range[0], z_range[1] + 1, size=g.n)
        y = x + L @ z
        ok = dist(g, x) == dist_bruteforce(g, y)
        ok &= decide_termination(g, x) == decide_termination(g, y)
        rep.record(ok, g, f"x = {_fmt(x)}\nz = {_fmt(z)}")
    return rep


def check_gallai(g: MultiDigraph) -> SweepReport:
    """Every inclusion-minimal feedback arc set is a turnback arc set."""
    rep = SweepReport("gallai")
    for t in arcset.minimal_feedback_arc_sets(g):
        rep.record(arcset.is_turnback_arc_set(g, t), g, "set:\n" + format_arcs(t))
    return rep


def check_minfas_turnback(g: MultiDigraph) -> SweepReport:
    """DP minfas, witnessed minimum turnback set and subset brute force agree."""
    rep = SweepReport("minfas-turnback")
    mf = arcset.minfas(g)
    size, witness = arcset.min_turnback(g)
    brute_fas = min(int(t.sum()) for t in arcset.sub_multisets(g) if arcset.is_feedback_arc_set(g, t))
    brute_tas = arcset.min_turnback_bruteforce(g)
    ok = mf == size == brute_fas == brute_tas == int(witness.sum())
    ok &= arcset.is_turnback_arc_set(g, witness)
    rep.record(ok, g, f"minfas={mf} witness={size} brute_fas={brute_fas} brute_tas={brute_tas}")
    return rep


def _turnback_indegrees(g: MultiDigraph) -> list[np.ndarray]:
    seen = {}
    for t in arcset.sub_multisets(g, limit=None):
        if arcset.is_turnback_arc_set(g, t):
            rho = t.sum(axis=0)
            seen.setdefault(tuple(int(a) for a in rho), rho)
    return list(seen.values())


def check_turnback_characterization(g: MultiDigraph, xs: Iterable) -> SweepReport:
    """On Eulerian ``g``: non-terminating iff ``x ~ indeg(T) + a`` for a turnback ``T``.

    The witness from legal play is validated, and the biconditional is also
    checked against an exhaustive search over all turnback sets.
    """
    rep = SweepReport("turnback-characterization")
    lat = lattice_of(g)
    rhos = _turnback_indegrees(g)
    for x in xs:
        nonterm = not is_terminating(g, x)
        w = arcset.nonterm_witness_turnback(g, x)
        ok = nonterm == (w is not None) == _has_decomposition(g, x, rhos)
        if w is not None:
            ok &= arcset.is_turnback_arc_set(g, w.arcs)
            ok &= bool((w.surplus >= 0).all())
            ok &= equivalent(lat, x, w.indegree + w.surplus)
        rep.record(ok, g, f"x = {_fmt(x)}")
    return rep


def check_turnback_lemma(g: MultiDigraph, surplus_max: int = 1) -> SweepReport:
    """``indeg(T) + a`` is non-terminating for every turnback ``T`` and small ``a >= 0``."""
    rep = SweepReport("turnback-lemma")
    for rho in _turnback_indegrees(g):
        for a in generators.box(g.n, 0, surplus_max):
            rep.record(not is_terminating(g, rho + a), g, f"rho = {_fmt(rho)}\na = {_fmt(a)}")
    return rep


def check_acyclic_characterization(g: MultiDigraph, xs: Iterable) -> SweepReport:
    """On undirected ``g``: non-terminating iff ``x ~ indeg(O) + a`` for an acyclic orientation ``O``."""
    rep = SweepReport("acyclic-characterization")
    lat = lattice_of(g)
    orients = arcset.acyclic_orientations(g)
    rhos = [o.sum(axis=0) for o in orients]
    m = g.undirected_edge_count
    for rho in rhos:
        rep.record(int(rho.sum()) == m, g, f"orientation indegree {_fmt(rho)} has degree != {m}")
    for x in xs:
        nonterm = not is_terminating(g, x)
        w = arcset.nonterm_witness_acyclic_orientation(g, x)
        ok = nonterm == (w is not None) == _has_decomposition(g, x, rhos)
        if w is not None:
            ok &= bool((w.arcs + w.arcs.T == g.mult).all()) and is_acyclic(w.arcs)
            ok &= bool((w.surplus >= 0).all())
            ok &= equivalent(lat, x, w.indegree + w.surplus)
        rep.record(ok, g, f"x = {_fmt(x)}")
    return rep


def check_undirected_rr(g: MultiDigraph, xs: Iterable) -> SweepReport:
    rep = SweepReport("undirected-rr")
    for c in verify_undirected_rr(g, xs):
        rep.record(c.ok, g, f"x = {_fmt(c.x)}: lhs {c.lhs} != rhs {c.rhs}")
    return rep


def check_eulerian_weak_rr(g: MultiDigraph, xs: Iterable) -> SweepReport:
    """Both bounds on samples, and equality at the two sharpness witnesses."""
    rep = SweepReport("eulerian-weak-rr")
    for c in verify_eulerian_weak_rr(g, xs):
        rep.record(c.ok, g, f"x = {_fmt(c.x)}: {c.lower} <= {c.value} <= {c.upper} fails")
    _, t = arcset.min_turnback(g)
    rho = t.sum(axis=0)
    low, high = verify_eulerian_weak_rr(g, [rho, g.in_degree - rho])
    rep.record(low.value == low.lower, g, f"lower bound not tight at x = {_fmt(rho)}")
    rep.record(high.value == high.upper, g, f"upper bound not tight at x = {_fmt(high.x)}")
    return rep


def check_rr_formula(g: MultiDigraph, xs: Iterable) -> SweepReport:
    """When the property holds, the full identity on samples plus ``deg K = 2t`` and ``dist(K) = 0``."""
    rep = SweepReport("rr-formula")
    report = rr_check(g)
    if not report.holds:
        return rep
    zero = np.zeros(g.n, dtype=np.int64)
    rep.record(int(report.K.sum()) == 2 * report.t and report.t == dist(g, zero) and dist(g, report.K) == 0,
               g, f"K = {_fmt(report.K)}, t = {report.t}")
    for c in rr_formula_spot_check(g, report, xs):
        rep.record(c.ok, g, f"x = {_fmt(c.x)}: lhs {c.lhs} != rhs {c.rhs}")
    return rep


# command-line driver ------------------------------------------------------------------

def _random_xs(rng, g, trials, lo=-1, hi=3):
    return [rng.integers(lo, hi + 1, size=g.n) for _ in range(trials)]


def _small(g: MultiDigraph) -> bool:
    return g.num_arcs <= arcset.DEFAULT_ENUMERATION_LIMIT


@dataclass(frozen=True)
class _Property:
    generator: Callable[[np.random.Generator], MultiDigraph]
    check: Callable[[MultiDigraph, np.random.Generator, int], SweepReport]
    graph_ok: Callable[[MultiDigraph], bool] = lambda g: True


def _gen_general(rng):
    return generators.random_strongly_connected_digraph(rng, 2, 4, 3)


def _gen_eulerian(rng):
    return generators.random_eulerian_digraph(rng, 2, 4, 3)


def _gen_undirected(rng):
    return generators.random_connected_undirected(rng, 2, 4, 2)


PROPERTIES: dict[str, _Property] = {
    "abelian": _Property(_gen_general, lambda g, rng, k: check_abelian(g, _random_xs(rng, g, k))),
    "dist-invariance": _Property(_gen_general, lambda g, rng, k: check_dist_invariance(g, rng, k)),
    "gallai": _Property(_gen_general, lambda g, rng, k: check_gallai(g), _small),
    "minfas-turnback": _Property(_gen_general, lambda g, rng, k: check_minfas_turnback(g), _small),
    "turnback-characterization": _Property(
        _gen_eulerian, lambda g, rng, k: check_turnback_characterization(g, _random_xs(rng, g, k)),
        lambda g: g.eulerian and _small(g)),
    "acyclic-characterization": _Property(
        _gen_undirected, lambda g, rng, k: check_acyclic_characterization(g, _random_xs(rng, g, k)),
        lambda g: g.bidirected),
    "undirected-rr": _Property(
        _gen_undirected, lambda g, rng, k: check_undirected_rr(g, _random_xs(rng, g, k)),
        lambda g: g.bidirected),
    "eulerian-weak-rr": _Property(
        _gen_eulerian, lambda g, rng, k: check_eulerian_weak_rr(g, _random_xs(rng, g, k)),
        lambda g: g.eulerian),
    "rr-formula": _Property(_gen_general, lambda g, rng, k: check_rr_formula(g, _random_xs(rng, g, k))),
}


def run_sweep(prop: str, graphs: Optional[list[MultiDigraph]] = None, random_graphs: int = 10,
              trials: int = 20, seed: int = 0) -> SweepReport:
    """Run a named property on the given graphs, or on ``random_graphs`` seeded draws."""
    if prop not in PROPERTIES:
        raise KeyError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    chosen = PROPERTIES[prop]
    rng = np.random.default_rng(seed)
    if graphs is None:
        graphs = [chosen.generator(rng) for _ in range(random_graphs)]
    total = SweepReport(prop)
    for g in graphs:
        if not chosen.graph_ok(g):
            raise GraphClassError(f"property {prop!r} does not apply to this graph")
        total.merge(chosen.check(g, rng, trials))
    return total
