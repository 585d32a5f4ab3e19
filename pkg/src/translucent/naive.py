"""Literal reference interpreter for both computation relations.

Nothing here is clever: configurations are explicit tuples, each step is
the textbook single-step relation, and nondeterminism is resolved by an
exhaustive breadth-first search with a visited set.  The fast engine is
tested against this module.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union

from .model import (
    Automaton,
    KindError,
    Verdict,
    require_deterministic,
)

__all__ = [
    "ReturningConfig",
    "NonReturningConfig",
    "Delete",
    "EndGoTo",
    "EndAccept",
    "Stuck",
    "Trace",
    "SweepRecord",
    "FuelExhausted",
    "initial_configs",
    "step",
    "step_returning",
    "step_nonreturning",
    "accepts_naive",
    "configuration_graph",
    "find_accepting_trace",
    "trace_deterministic",
    "default_fuel",
    "decompose",
    "render_trace",
]


@dataclass(frozen=True)
class ReturningConfig:
    """``q w <|`` for the returning model.

    ``origin[i]`` is the original tape position of ``remaining[i]``.
    """

    state: str
    remaining: str
    origin: tuple[int, ...] = None

    def __post_init__(self):
        if self.origin is None:
            object.__setattr__(self, "origin", tuple(range(len(self.remaining))))
        elif len(self.origin) != len(self.remaining):
            raise ValueError("origin must give one position per remaining letter")


@dataclass(frozen=True)
class NonReturningConfig:
    """``x q w <|``: the live tape positions, split at ``head``.

    ``live`` holds original positions into ``word`` that are not yet deleted;
    ``live[:head]`` is ``x`` and ``live[head:]`` is ``w``.
    """

    state: str
    word: str
    live: tuple[int, ...]
    head: int = 0

    @property
    def key(self):
        return (self.state, self.live, self.head)

    def tape(self) -> str:
        return "".join(self.word[p] for p in self.live)


Config = Union[ReturningConfig, NonReturningConfig]


# -- steps -------------------------------------------------------------------


@dataclass(frozen=True)
class Delete:
    position: int
    letter: str
    source: str
    target: str


@dataclass(frozen=True)
class EndGoTo:
    source: str
    target: str


@dataclass(frozen=True)
class EndAccept:
    state: str


@dataclass(frozen=True)
class Stuck:
    state: str
    reason: str


Step = Union[Delete, EndGoTo, EndAccept, Stuck]


def _source(s: Step) -> str:
    return s.state if isinstance(s, (EndAccept, Stuck)) else s.source


@dataclass
class Trace:
    initial_state: str
    input: str
    steps: list = field(default_factory=list)
    verdict: Verdict | None = None
    # tape snapshots before each step, for rendering: (live positions, head)
    snapshots: list = field(default_factory=list, repr=False, compare=False)

    def states(self) -> list[str]:
        """State of the configuration preceding each step."""
        return [_source(s) for s in self.steps]

    def deletions(self) -> list[Delete]:
        return [s for s in self.steps if isinstance(s, Delete)]


class FuelExhausted(RuntimeError):
    """A deterministic run did not halt within its step budget."""

    def __init__(self, trace: Trace, fuel: int):
        self.trace = trace
        self.fuel = fuel
        super().__init__(f"no verdict after {fuel} steps")


def step_returning(aut: Automaton, cfg: ReturningConfig) -> list[tuple[Step, ReturningConfig | None]]:
    """All single steps from ``cfg`` under the returning relation.

    Terminal steps (:class:`EndAccept`, :class:`Stuck`) come with ``None``
    in place of a successor configuration.
    """
    if not aut.kind.returning:
        raise KindError(f"step_returning needs NFAwtl/DFAwtl, got {aut.kind}")
    q = cfg.state
    tau = aut.tau(q)
    for i, a in enumerate(cfg.remaining):
        if a in tau:
            continue
        succ = aut.targets(q, a)
        if not succ:
            return [(Stuck(q, f"no transition on {a}"), None)]
        rest = cfg.remaining[:i] + cfg.remaining[i + 1 :]
        origin = cfg.origin[:i] + cfg.origin[i + 1 :]
        pos = cfg.origin[i]
        return [(Delete(pos, a, q, p), ReturningConfig(p, rest, origin)) for p in succ]
    if q in aut.final:
        return [(EndAccept(q), None)]
    return [(Stuck(q, "not final"), None)]


def step_nonreturning(aut: Automaton, cfg: NonReturningConfig) -> list[tuple[Step, NonReturningConfig | None]]:
    """All single steps from ``cfg`` under the non-returning relation."""
    if aut.kind.returning:
        raise KindError(f"step_nonreturning needs nrNFAwtl/nrDFAwtl, got {aut.kind}")
    q = cfg.state
    tau = aut.tau(q)
    live = cfg.live
    for j in range(cfg.head, len(live)):
        pos = live[j]
        a = cfg.word[pos]
        if a in tau:
            continue
        succ = aut.targets(q, a)
        if not succ:
            return [(Stuck(q, f"no transition on {a}"), None)]
        rest = live[:j] + live[j + 1 :]
        return [
            (Delete(pos, a, q, p), NonReturningConfig(p, cfg.word, rest, j))
            for p in succ
        ]
    act = aut.end_action(q)
    if act.is_accept:
        return [(EndAccept(q), None)]
    if act.is_reject:
        return [(Stuck(q, "no end transition"), None)]
    order = aut.state_index
    return [
        (EndGoTo(q, p), NonReturningConfig(p, cfg.word, live, 0))
        for p in sorted(act.targets, key=order.__getitem__)
    ]


def step(aut: Automaton, cfg: Config):
    if aut.kind.returning:
        return step_returning(aut, cfg)
    return step_nonreturning(aut, cfg)


def initial_configs(aut: Automaton, word: str) -> list[Config]:
    aut.check_word(word)
    if aut.kind.returning:
        return [ReturningConfig(q, word) for q in aut.initial_ordered]
    live = tuple(range(len(word)))
    return [NonReturningConfig(q, word, live, 0) for q in aut.initial_ordered]


def _key(cfg: Config):
    if isinstance(cfg, NonReturningConfig):
        return cfg.key
    return (cfg.state, cfg.origin)


def accepts_naive(aut: Automaton, word: str) -> Verdict:
    """Exhaustive search: Accept iff some computation reaches Accept.

    Infinite computations revisit a configuration and are cut off by the
    visited set, so the search terminates on every input.
    """
    seen = set()
    todo = deque()
    for cfg in initial_configs(aut, word):
        k = _key(cfg)
        if k not in seen:
            seen.add(k)
            todo.append(cfg)
    while todo:
        cfg = todo.popleft()
        for st, nxt in step(aut, cfg):
            if isinstance(st, EndAccept):
                return Verdict.ACCEPT
            if nxt is None:
                continue
            k = _key(nxt)
            if k not in seen:
                seen.add(k)
                todo.append(nxt)
    return Verdict.REJECT


def configuration_graph(aut: Automaton, word: str) -> dict:
    """Reachable configuration graph as ``{key: [successor keys]}``.

    Keys are ``(state, live, head)`` for non-returning kinds and
    ``(state, origin)`` for returning kinds; terminal steps add no edges.
    """
    graph: dict = {}
    todo = deque(initial_configs(aut, word))
    for cfg in todo:
        graph.setdefault(_key(cfg), [])
    while todo:
        cfg = todo.popleft()
        succ = []
        for _, nxt in step(aut, cfg):
            if nxt is None:
                continue
            k = _key(nxt)
            succ.append(k)
            if k not in graph:
                graph[k] = []
                todo.append(nxt)
        graph[_key(cfg)] = succ
    return graph


def _snapshot(cfg: Config):
    if isinstance(cfg, NonReturningConfig):
        return (cfg.live, cfg.head)
    return (cfg.origin, 0)


def find_accepting_trace(aut: Automaton, word: str) -> Trace | None:
    """Shortest accepting computation (in steps), or ``None``."""
    parent: dict = {}
    todo = deque()
    for cfg in initial_configs(aut, word):
        k = _key(cfg)
        if k not in parent:
            parent[k] = None
            todo.append(cfg)
    cfg_of = {_key(c): c for c in todo}
    while todo:
        cfg = todo.popleft()
        for st, nxt in step(aut, cfg):
            if isinstance(st, EndAccept):
                chain = [(st, cfg)]
                k = _key(cfg)
                while parent[k] is not None:
                    pk, pst = parent[k]
                    chain.append((pst, cfg_of[pk]))
                    k = pk
                chain.reverse()
                trace = Trace(chain[0][1].state, word, verdict=Verdict.ACCEPT)
                for s, c in chain:
                    trace.steps.append(s)
                    trace.snapshots.append(_snapshot(c))
                return trace
            if nxt is None:
                continue
            k = _key(nxt)
            if k not in parent:
                parent[k] = (_key(cfg), st)
                cfg_of[k] = nxt
                todo.append(nxt)
    return None


def default_fuel(aut: Automaton, word: str) -> int:
    return (len(aut.states) + 1) * (len(word) + 1) ** 2


def trace_deterministic(aut: Automaton, word: str, fuel: int | None = None) -> Trace:
    """The unique maximal computation of a deterministic automaton.

    Raises :class:`FuelExhausted` (carrying the partial trace) when no
    verdict is reached within ``fuel`` steps.
    """
    require_deterministic(aut)
    if fuel is None:
        fuel = default_fuel(aut, word)
    (cfg,) = initial_configs(aut, word)
    trace = Trace(cfg.state, word)
    while len(trace.steps) < fuel:
        ((st, nxt),) = step(aut, cfg)
        trace.steps.append(st)
        trace.snapshots.append(_snapshot(cfg))
        if nxt is None:
            trace.verdict = Verdict.ACCEPT if isinstance(st, EndAccept) else Verdict.REJECT
            return trace
        cfg = nxt
    raise FuelExhausted(trace, fuel)


# -- sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRecord:
    start_state: str
    end_state: str
    deleted_positions: tuple[int, ...]


def decompose(trace: Trace) -> list[SweepRecord]:
    """Split a non-returning trace into sweeps at its end-marker GoTo steps.

    A trace with ``k`` GoTo steps yields ``k + 1`` sweeps; the last one may
    delete nothing (e.g. an accepting sweep over an already empty tape).
    """
    sweeps = []
    start = trace.initial_state
    current = start
    deleted: list[int] = []
    for st in trace.steps:
        if isinstance(st, Delete):
            deleted.append(st.position)
            current = st.target
        elif isinstance(st, EndGoTo):
            sweeps.append(SweepRecord(start, st.source, tuple(deleted)))
            start = current = st.target
            deleted = []
    sweeps.append(SweepRecord(start, current, tuple(deleted)))
    return sweeps


def _describe(st: Step) -> str:
    if isinstance(st, Delete):
        return f"delete {st.letter}@{st.position} -> {st.target}"
    if isinstance(st, EndGoTo):
        return f"end -> {st.target}"
    if isinstance(st, EndAccept):
        return "accept"
    return f"reject ({st.reason})"


def render_trace(trace: Trace) -> str:
    """One line per step: ``state | tape with ^ at the head | action``."""
    out = []
    word = trace.input
    for st, (live, head) in zip(trace.steps, trace.snapshots):
        letters = [word[p] for p in live]
        tape = "".join(letters[:head]) + "^" + "".join(letters[head:])
        out.append(f"{_source(st)} | {tape} | {_describe(st)}")
    return "\n".join(out)
