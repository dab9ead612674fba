"""The chip-firing game: legal play, termination, dist, rank.

A vertex ``v`` is active when it holds at least ``outdeg(v)`` chips; firing
it sends one chip along every out-arc, i.e. adds column ``v`` of the
Laplacian.  Entries never leave the box ``[min(0, x(v)), sum(max(x, 0))]``
during a legal game, so a game either stabilizes or revisits a state.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional, Union

import numpy as np

from .errors import DimensionMismatch, StepLimitExceeded
from .graph import MultiDigraph
from .lattice import canonical_key, lattice_of

__all__ = [
    "Verdict",
    "Terminated",
    "CycleDetected",
    "GameTrace",
    "lowest_active",
    "highest_active",
    "RotatingPointer",
    "STRATEGIES",
    "fire",
    "play",
    "default_step_limit",
    "decide_termination",
    "is_terminating",
    "play_until_all_fired",
    "nonnegative_representative",
    "compositions",
    "dist",
    "dist_bruteforce",
    "rank",
    "is_equi_effective",
    "class_is_terminating",
]

INT64_MAX = np.iinfo(np.int64).max

Strategy = Callable[[list, list], int]


class Verdict(enum.Enum):
    TERMINATING = "terminating"
    NON_TERMINATING = "non-terminating"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Terminated:
    final: tuple[int, ...]


@dataclass(frozen=True)
class CycleDetected:
    repeated_state: tuple[int, ...]
    cycle_start: int  # step index of the first visit to ``repeated_state``
    cycle_length: int


@dataclass
class GameTrace:
    initial: tuple[int, ...]
    firing_sequence: list[int]
    fire_counts: np.ndarray
    outcome: Union[Terminated, CycleDetected]

    @property
    def terminated(self) -> bool:
        return isinstance(self.outcome, Terminated)

    @property
    def moves(self) -> int:
        return len(self.firing_sequence)

    @property
    def final_state(self) -> tuple[int, ...]:
        if self.terminated:
            return self.outcome.final
        return self.outcome.repeated_state

    def cycle_fire_counts(self) -> Optional[np.ndarray]:
        """Per-vertex firings inside the detected cycle, or ``None``."""
        if self.terminated:
            return None
        seg = self.firing_sequence[self.outcome.cycle_start:]
        return np.bincount(seg, minlength=len(self.initial)).astype(np.int64)

    def to_log(self, laplacian: np.ndarray) -> str:
        state = np.array(self.initial, dtype=np.int64)
        lines = [f"start: {_csv(state)}"]
        for i, v in enumerate(self.firing_sequence, start=1):
            state = state + laplacian[:, v]
            lines.append(f"step {i}: fire {v} -> {_csv(state)}")
        if self.terminated:
            lines.append(f"terminated after {self.moves} moves")
        else:
            lines.append(f"state repeated; cycle of length {self.outcome.cycle_length}")
        return "\n".join(lines)

    def to_record(self) -> dict:
        rec = {
            "outcome": "terminated" if self.terminated else "cycle",
            "moves": self.moves,
            "fire_counts": [int(c) for c in self.fire_counts],
        }
        if self.terminated:
            rec["final"] = list(self.outcome.final)
        else:
            rec["repeated_state"] = list(self.outcome.repeated_state)
            rec["cycle_length"] = self.outcome.cycle_length
        return rec


def _csv(x) -> str:
    return ",".join(str(int(a)) for a in x)


# strategies -----------------------------------------------------------------

def lowest_active(state, active) -> int:
    return active[0]


def highest_active(state, active) -> int:
    return active[-1]


class RotatingPointer:
    """Fire the first active vertex at or after a pointer that advances cyclically."""

    def __init__(self):
        self.pointer = 0

    def __call__(self, state, active) -> int:
        for v in active:
            if v >= self.pointer:
                break
        else:
            v = active[0]
        self.pointer = v + 1
        return v


STRATEGIES: dict[str, Callable[[], Strategy]] = {
    "lowest": lambda: lowest_active,
    "highest": lambda: highest_active,
    "rotating": RotatingPointer,
}


def _strategy(choice) -> Strategy:
    if choice is None:
        return lowest_active
    if isinstance(choice, str):
        return STRATEGIES[choice]()
    return choice


# core -----------------------------------------------------------------------

def _checked_state(g: MultiDigraph, x) -> list[int]:
    vals = [int(a) for a in np.asarray(x).ravel()]
    if len(vals) != g.n:
        raise DimensionMismatch(f"expected a vector of length {g.n}, got {len(vals)}")
    top = sum(max(a, 0) for a in vals)
    if top > INT64_MAX or any(a < -INT64_MAX for a in vals):
        raise OverflowError("chip counts exceed the 64-bit range")
    return vals


def fire(g: MultiDigraph, x, v) -> np.ndarray:
    """``x + L 1_v``; legality is not checked."""
    v = g.check_vertex(v)
    x = g.check_vector(x)
    return x + g.laplacian()[:, v]


def default_step_limit(x) -> int:
    """Number of states in the legal-game box, plus one."""
    vals = [int(a) for a in x]
    hi = sum(max(a, 0) for a in vals)
    return math.prod(hi - min(0, a) + 1 for a in vals) + 1


def play(g: MultiDigraph, x, strategy=None, step_limit: Optional[int] = None) -> GameTrace:
    """Play a legal game until it stabilizes or revisits a state.

    ``strategy`` is ``"lowest"`` (default), ``"highest"``, ``"rotating"`` or a
    callable ``(state, active_vertices) -> vertex``.  A repeated state proves
    the game can be continued forever, whatever the strategy.
    """
    g.require_strongly_connected()
    state = _checked_state(g, x)
    initial = tuple(state)
    choose = _strategy(strategy)
    limit = default_step_limit(state) if step_limit is None else int(step_limit)
    outs = g.out_neighbors()
    dplus = g.out_degree_list()
    n = g.n
    seq: list[int] = []
    seen = {initial: 0}
    while True:
        active = [v for v in range(n) if state[v] >= dplus[v]]
        if not active:
            outcome = Terminated(tuple(state))
            break
        if len(seq) >= limit:
            raise StepLimitExceeded(f"no stable or repeated state within {limit} steps")
        v = choose(state, active)
        if state[v] < dplus[v]:
            raise ValueError(f"strategy chose inactive vertex {v}")
        state[v] -= dplus[v]
        for w, k in outs[v]:
            state[w] += k
        seq.append(v)
        key = tuple(state)
        if key in seen:
            first = seen[key]
            outcome = CycleDetected(key, first, len(seq) - first)
            break
        seen[key] = len(seq)
    counts = np.bincount(np.array(seq, dtype=np.int64), minlength=n).astype(np.int64)
    return GameTrace(initial, seq, counts, outcome)


def _terminates(g: MultiDigraph, state: list[int]) -> bool:
    """Lean lowest-index simulation; ``state`` is consumed."""
    outs = g.out_neighbors()
    dplus = g.out_degree_list()
    n = g.n
    seen = {tuple(state)}
    while True:
        for v in range(n):
            if state[v] >= dplus[v]:
                break
        else:
            return True
        state[v] -= dplus[v]
        for w, k in outs[v]:
            state[w] += k
        key = tuple(state)
        if key in seen:
            return False
        seen.add(key)


def decide_termination(g: MultiDigraph, x) -> Verdict:
    """Terminating or non-terminating, by direct simulation from ``x``."""
    g.require_strongly_connected()
    state = _checked_state(g, x)
    if sum(state) > g.termination_bound:
        return Verdict.NON_TERMINATING
    return Verdict.TERMINATING if _terminates(g, state) else Verdict.NON_TERMINATING


def is_terminating(g: MultiDigraph, x) -> bool:
    return decide_termination(g, x) is Verdict.TERMINATING


def play_until_all_fired(g: MultiDigraph, x):
    """Play the lowest-index game until every vertex has fired at least once.

    Returns ``(state, last_fired)`` where ``last_fired[v]`` is the step of the
    last firing of ``v``, or ``None`` when the game stabilizes first.
    """
    g.require_strongly_connected()
    state = _checked_state(g, x)
    outs = g.out_neighbors()
    dplus = g.out_degree_list()
    n = g.n
    last = [-1] * n
    missing = n
    step = 0
    seen = set()
    while missing:
        for v in range(n):
            if state[v] >= dplus[v]:
                break
        else:
            return None
        state[v] -= dplus[v]
        for w, k in outs[v]:
            state[w] += k
        if last[v] < 0:
            missing -= 1
            seen = set()
        last[v] = step
        step += 1
        # a repeat with vertices still unfired contradicts strong connectivity
        key = tuple(state)
        if key in seen:  # pragma: no cover
            raise RuntimeError("state repeated before every vertex fired")
        seen.add(key)
    return np.array(state, dtype=np.int64), last


def nonnegative_representative(g: MultiDigraph, x) -> Optional[np.ndarray]:
    """A nowhere-negative distribution reachable from ``x`` by legal play.

    Exists exactly when ``x`` is non-terminating: once every vertex has fired
    no entry is negative.  Returns ``None`` for terminating ``x``.
    """
    if is_terminating(g, x):
        return None
    state, _ = play_until_all_fired(g, x)
    return state


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer vectors of length ``parts`` summing to ``total``, lexicographically."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


# dist and rank ---------------------------------------------------------------

@dataclass
class _ClassMemo:
    lattice: object
    terminating: dict = field(default_factory=dict)
    dist: dict = field(default_factory=dict)


@lru_cache(maxsize=64)
def _memo(g: MultiDigraph) -> _ClassMemo:
    return _ClassMemo(lattice_of(g))


def _class_terminates(g: MultiDigraph, memo: _ClassMemo, key, x: list[int]) -> bool:
    hit = memo.terminating.get(key)
    if hit is None:
        hit = sum(x) <= g.termination_bound and _terminates(g, list(x))
        memo.terminating[key] = hit
    return hit


def class_is_terminating(g: MultiDigraph, x) -> bool:
    """Termination memoized per equivalence class (valid since it is a class property)."""
    g.require_strongly_connected()
    memo = _memo(g)
    vals = _checked_state(g, x)
    return _class_terminates(g, memo, canonical_key(memo.lattice, vals), vals)


def dist(g: MultiDigraph, x) -> int:
    """Fewest chips that, added anywhere, make ``x`` non-terminating.

    Breadth-first over classes: level ``k`` holds the classes of ``x + y`` for
    ``y >= 0`` of degree ``k``; at most ``pic0_order`` classes per level.
    """
    g.require_strongly_connected()
    memo = _memo(g)
    lat = memo.lattice
    start = _checked_state(g, x)
    key0 = canonical_key(lat, start)
    if key0 in memo.dist:
        return memo.dist[key0]
    n = g.n
    bound = g.termination_bound
    level = {key0: start}
    k = 0
    while True:
        if sum(start) + k > bound:
            break
        if any(not _class_terminates(g, memo, key, vec) for key, vec in level.items()):
            break
        nxt = {}
        for vec in level.values():
            for v in range(n):
                w = list(vec)
                w[v] += 1
                key = canonical_key(lat, w)
                if key not in nxt:
                    nxt[key] = w
        level = nxt
        k += 1
    memo.dist[key0] = k
    return k


def dist_bruteforce(g: MultiDigraph, x) -> int:
    """``dist`` by scanning added-chip vectors degree by degree; no memoization."""
    g.require_strongly_connected()
    x = _checked_state(g, x)
    top = max(0, g.termination_bound + 1 - sum(x))
    for d in range(top + 1):
        for y in compositions(d, g.n):
            if not is_terminating(g, [a + b for a, b in zip(x, y)]):
                return d
    raise AssertionError("degree above |E|-|V| must be non-terminating")  # pragma: no cover


def _dual(g: MultiDigraph, f) -> np.ndarray:
    f = g.check_vector(f)
    return g.out_degree - 1 - f


def rank(g: MultiDigraph, f) -> int:
    """Divisor rank via ``rank(f) = dist(d+ - 1 - f) - 1``."""
    g.require_strongly_connected()
    return dist(g, _dual(g, f)) - 1


def is_equi_effective(g: MultiDigraph, f) -> bool:
    """Whether ``f`` is equivalent to an effective divisor, via termination of its dual."""
    g.require_strongly_connected()
    return is_terminating(g, _dual(g, f))
