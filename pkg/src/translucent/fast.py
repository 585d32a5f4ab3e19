"""Indexed membership engine for deterministic automata.

The tape is kept in a :class:`~translucent.index.PositionIndex`; finding the
next visible letter costs one successor query per non-translucent letter and
reading it costs one delete, so a run on a word of length ``n`` performs
``O(n * |Q| * |Sigma|)`` index operations of ``O(log n)`` each.

Infinite computations of a deterministic automaton can only arise from
end-marker steps that delete nothing.  The engine keeps the set of states
that have met the end marker since the last deletion and rejects as soon as
one of them meets it again, because the machine would then repeat itself
forever.

Two kernels implement the same loop: a compiled one (``_ckernel``, built
from Cython when available) and the pure-Python fallback below.  The
compiled kernel is chosen at import unless ``TRANSLUCENT_PURE_PYTHON`` is set.
Traces are always produced by the Python kernel.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple

from .index import PositionIndex
from .model import Automaton, KindError, Kind, Verdict, require_deterministic
from .naive import Delete, EndAccept, EndGoTo, Stuck, Trace

__all__ = [
    "BACKEND",
    "RunStats",
    "FastRun",
    "Tables",
    "compile_tables",
    "Runner",
    "PyKernel",
    "run_fast",
    "run_fast_returning",
]

# verdict / reason codes shared with the compiled kernel
ACCEPTED = 1
R_NONE, R_NO_TRANSITION, R_END_REJECT, R_LOOP, R_NOT_FINAL = range(5)
E_REJECT, E_ACCEPT, E_GOTO = 0, 1, 2

_REASONS = {
    R_NO_TRANSITION: "no transition on {}",
    R_END_REJECT: "no end transition",
    R_LOOP: "end-marker loop",
    R_NOT_FINAL: "not final",
}


@dataclass(frozen=True)
class RunStats:
    deletions: int
    end_events: int
    index_ops: int

    def render(self) -> str:
        return (
            f"deletions  {self.deletions}\n"
            f"end_events {self.end_events}\n"
            f"index_ops  {self.index_ops}"
        )


class FastRun(NamedTuple):
    verdict: Verdict
    stats: RunStats
    trace: Trace | None = None


@dataclass(frozen=True)
class Tables:
    """Integer encoding of a deterministic automaton for the kernels."""

    n_states: int
    n_letters: int
    initial: int
    returning: bool
    final: tuple[int, ...]
    visible: tuple[tuple[int, ...], ...]
    delta: tuple[int, ...]
    end_kind: tuple[int, ...]
    end_target: tuple[int, ...]


def compile_tables(aut: Automaton) -> Tables:
    require_deterministic(aut)
    si = aut.state_index
    nl = len(aut.alphabet)
    delta = []
    visible = []
    end_kind = []
    end_target = []
    for q in aut.states:
        tau = aut.tau(q)
        visible.append(tuple(i for i, a in enumerate(aut.alphabet) if a not in tau))
        for a in aut.alphabet:
            succ = aut.targets(q, a)
            delta.append(si[succ[0]] if succ else -1)
        if aut.kind.returning:
            end_kind.append(E_ACCEPT if q in aut.final else E_REJECT)
            end_target.append(-1)
        else:
            act = aut.end_action(q)
            if act.is_accept:
                end_kind.append(E_ACCEPT)
                end_target.append(-1)
            elif act.is_goto:
                end_kind.append(E_GOTO)
                end_target.append(si[act.targets[0]])
            else:
                end_kind.append(E_REJECT)
                end_target.append(-1)
    (init,) = aut.initial
    return Tables(
        n_states=len(aut.states),
        n_letters=nl,
        initial=si[init],
        returning=aut.kind.returning,
        final=tuple(int(aut.final is not None and q in aut.final) for q in aut.states),
        visible=tuple(visible),
        delta=tuple(delta),
        end_kind=tuple(end_kind),
        end_target=tuple(end_target),
    )


def _py_run(t: Tables, codes, events: list | None = None):
    """Reference kernel.  Returns ``(verdict, reason, deletions, end_events, ops)``.

    When ``events`` is a list, one tuple per step is appended:
    ``("del", pos, code, src, dst)``, ``("goto", src, dst)``,
    ``("accept", q)`` or ``("stuck", q, reason, code)``, each followed by
    the head position before the step.
    """
    idx = PositionIndex(codes, nletters=t.n_letters)
    n = len(codes)
    succ = idx.succ
    nl = t.n_letters
    delta = t.delta
    visible = t.visible
    state = t.initial
    head = 0
    seen_at_end = set()
    deletions = end_events = 0
    returning = t.returning
    while True:
        best = n
        best_a = -1
        for a in visible[state]:
            p = succ(a, head)
            if 0 <= p < best:
                best = p
                best_a = a
        if best_a >= 0:
            nxt = delta[state * nl + best_a]
            if nxt < 0:
                if events is not None:
                    events.append(("stuck", state, R_NO_TRANSITION, best_a, head))
                return 0, R_NO_TRANSITION, deletions, end_events, idx.ops
            if events is not None:
                events.append(("del", best, best_a, state, nxt, head))
            idx.remove(best)
            deletions += 1
            seen_at_end.clear()
            state = nxt
            head = 0 if returning else best
            continue
        kind = t.end_kind[state]
        if kind == E_ACCEPT:
            if events is not None:
                events.append(("accept", state, head))
            return ACCEPTED, R_NONE, deletions, end_events, idx.ops
        if kind == E_REJECT:
            reason = R_NOT_FINAL if returning else R_END_REJECT
            if events is not None:
                events.append(("stuck", state, reason, -1, head))
            return 0, reason, deletions, end_events, idx.ops
        if state in seen_at_end:
            if events is not None:
                events.append(("stuck", state, R_LOOP, -1, head))
            return 0, R_LOOP, deletions, end_events, idx.ops
        seen_at_end.add(state)
        end_events += 1
        nxt = t.end_target[state]
        if events is not None:
            events.append(("goto", state, nxt, head))
        state = nxt
        head = 0


class PyKernel:
    """Pure-Python kernel with the same interface as the compiled one."""

    def __init__(self, tables: Tables):
        self.tables = tables

    def run(self, codes: bytes):
        verdict, _, d, e, ops = _py_run(self.tables, codes)
        return verdict, d, e, ops


if os.environ.get("TRANSLUCENT_PURE_PYTHON"):
    CKernel = None
else:
    try:
        from ._ckernel import Kernel as CKernel
    except ImportError:  # extension not built
        CKernel = None

BACKEND = "cython" if CKernel is not None else "python"
Kernel = CKernel if CKernel is not None else PyKernel


def _tables_for_kernel(t: Tables):
    return (
        t.n_states,
        t.n_letters,
        t.initial,
        int(t.returning),
        list(t.final),
        [list(v) for v in t.visible],
        list(t.delta),
        list(t.end_kind),
        list(t.end_target),
    )


def make_kernel(tables: Tables, backend: str | None = None):
    backend = backend or BACKEND
    if backend == "python":
        return PyKernel(tables)
    if CKernel is None:
        raise RuntimeError("compiled kernel is not available")
    return CKernel(*_tables_for_kernel(tables))


class Runner:
    """An automaton compiled once for many fast membership runs."""

    def __init__(self, aut: Automaton, backend: str | None = None):
        require_deterministic(aut)
        self.aut = aut
        self.tables = compile_tables(aut)
        self.kernel = make_kernel(self.tables, backend)
        # letter -> byte code
        self._trans = str.maketrans({a: chr(i) for i, a in enumerate(aut.alphabet)})

    def encode(self, word: str) -> bytes:
        self.aut.check_word(word)
        return word.translate(self._trans).encode("latin-1")

    def accepts(self, word: str) -> bool:
        return self.kernel.run(self.encode(word))[0] == ACCEPTED

    def accepts_codes(self, codes: bytes) -> bool:
        return self.kernel.run(codes)[0] == ACCEPTED

    def run(self, word: str, want_trace: bool = False) -> FastRun:
        codes = self.encode(word)
        if not want_trace:
            verdict, d, e, ops = self.kernel.run(codes)
            return FastRun(
                Verdict.ACCEPT if verdict == ACCEPTED else Verdict.REJECT,
                RunStats(d, e, ops),
            )
        events = []
        verdict, _, d, e, ops = _py_run(self.tables, codes, events)
        return FastRun(
            Verdict.ACCEPT if verdict == ACCEPTED else Verdict.REJECT,
            RunStats(d, e, ops),
            self._trace(word, events, verdict),
        )

    def _trace(self, word: str, events: list, verdict: int) -> Trace:
        aut = self.aut
        Q = aut.states
        S = aut.alphabet
        trace = Trace(Q[self.tables.initial], word)
        alive = [True] * len(word)
        for ev in events:
            head_pos = ev[-1]
            live = tuple(p for p in range(len(word)) if alive[p])
            head = sum(1 for p in live if p < head_pos)
            tag = ev[0]
            if tag == "del":
                _, pos, a, src, dst, _ = ev
                st = Delete(pos, S[a], Q[src], Q[dst])
                alive[pos] = False
            elif tag == "goto":
                st = EndGoTo(Q[ev[1]], Q[ev[2]])
            elif tag == "accept":
                st = EndAccept(Q[ev[1]])
            else:
                _, q, reason, a, _ = ev
                text = _REASONS[reason]
                if reason == R_NO_TRANSITION:
                    text = text.format(S[a])
                st = Stuck(Q[q], text)
            trace.steps.append(st)
            trace.snapshots.append((live, head))
        trace.verdict = Verdict.ACCEPT if verdict == ACCEPTED else Verdict.REJECT
        return trace


def run_fast(aut: Automaton, word: str, want_trace: bool = False, backend: str | None = None) -> FastRun:
    """Decide membership of ``word`` for a deterministic automaton.

    Works for both DFAwtl (head back to the left end after each deletion)
    and nrDFAwtl.  Returns ``(verdict, stats, trace)``; ``trace`` is ``None``
    unless requested.
    """
    return Runner(aut, backend).run(word, want_trace)


def run_fast_returning(aut: Automaton, word: str, backend: str | None = None) -> tuple[Verdict, RunStats]:
    if aut.kind is not Kind.DFAWTL:
        raise KindError(f"run_fast_returning needs a DFAwtl, got {aut.kind}")
    verdict, stats, _ = Runner(aut, backend).run(word)
    return verdict, stats
