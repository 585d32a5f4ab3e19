"""Automaton values for the four translucent-letter machine kinds.

One :class:`Automaton` type covers all kinds; the ``kind`` tag decides
whether final states (returning kinds) or end-marker actions
(non-returning kinds) are meaningful.  Values are immutable once built.
Structural problems are not raised at construction time; call
:func:`validate` to obtain them as data.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

RESERVED = frozenset({"END", "ACCEPT", "EPS", "=", "->"})


class AutomatonError(ValueError):
    """Base class for errors raised by engines and constructions."""


class KindError(AutomatonError):
    """An operation was applied to the wrong automaton kind."""


class NondeterministicError(AutomatonError):
    """A deterministic-only operation received a nondeterministic automaton."""


class InvalidAutomatonError(AutomatonError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid automaton:\n" + report.render())


class AlphabetError(AutomatonError):
    """Alphabets of two automata (or a word and an automaton) do not fit."""


class Kind(str, enum.Enum):
    NFAWTL = "NFAwtl"
    DFAWTL = "DFAwtl"
    NRNFAWTL = "nrNFAwtl"
    NRDFAWTL = "nrDFAwtl"

    @property
    def returning(self) -> bool:
        return self in (Kind.NFAWTL, Kind.DFAWTL)

    @property
    def deterministic(self) -> bool:
        return self in (Kind.DFAWTL, Kind.NRDFAWTL)

    def __str__(self) -> str:
        return self.value


class Verdict(enum.Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"

    def __bool__(self) -> bool:
        return self is Verdict.ACCEPT

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EndAction:
    """What a non-returning automaton does on reaching the end marker.

    ``kind`` is ``"accept"``, ``"goto"`` or ``"reject"``; ``targets`` is only
    non-empty for ``"goto"``.  Use :data:`ACCEPT`, :data:`REJECT` and
    :func:`goto` rather than the constructor.
    """

    kind: str
    targets: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("accept", "goto", "reject"):
            raise ValueError(f"unknown end action {self.kind!r}")
        if self.kind != "goto" and self.targets:
            raise ValueError(f"{self.kind} takes no targets")
        if self.kind == "goto" and not self.targets:
            raise ValueError("goto needs at least one target; use REJECT")

    @property
    def is_accept(self) -> bool:
        return self.kind == "accept"

    @property
    def is_reject(self) -> bool:
        return self.kind == "reject"

    @property
    def is_goto(self) -> bool:
        return self.kind == "goto"

    def __str__(self) -> str:
        if self.kind == "goto":
            return "GoTo{" + ", ".join(self.targets) + "}"
        return self.kind.capitalize()


ACCEPT = EndAction("accept")
REJECT = EndAction("reject")


def goto(*targets: str) -> EndAction:
    """GoTo action; an empty target set collapses to :data:`REJECT`."""
    uniq = tuple(dict.fromkeys(targets))
    return EndAction("goto", uniq) if uniq else REJECT


@dataclass(frozen=True)
class Automaton:
    """A finite automaton with translucent letters.

    Missing translucency entries mean the empty set, missing transitions
    mean the empty set and (for non-returning kinds) missing end actions
    mean Reject.  The constructor normalises all of these so that two
    automata denoting the same tuple compare equal.
    """

    kind: Kind
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: frozenset[str]
    translucent: Mapping[str, frozenset[str]] = field(default_factory=dict)
    delta: Mapping[tuple[str, str], frozenset[str]] = field(default_factory=dict)
    final: frozenset[str] | None = None
    end_delta: Mapping[str, EndAction] | None = None

    def __post_init__(self):
        kind = Kind(self.kind)
        set_ = object.__setattr__
        set_(self, "kind", kind)
        set_(self, "states", tuple(self.states))
        set_(self, "alphabet", tuple(self.alphabet))
        set_(self, "initial", frozenset(self.initial))
        tau = {q: frozenset(self.translucent.get(q, ())) for q in self.states}
        # keep entries naming unknown states so validate() can report them
        for q, letters in self.translucent.items():
            if q not in tau:
                tau[q] = frozenset(letters)
        set_(self, "translucent", tau)
        set_(
            self,
            "delta",
            {k: frozenset(v) for k, v in self.delta.items() if v},
        )
        if kind.returning:
            set_(self, "final", frozenset(self.final or ()))
            if self.end_delta is not None and any(
                not act.is_reject for act in self.end_delta.values()
            ):
                raise KindError(f"{kind} automata have no end-marker transitions")
            set_(self, "end_delta", None)
        else:
            if self.final:
                raise KindError(f"{kind} automata have no final states")
            set_(self, "final", None)
            ends = dict(self.end_delta or {})
            norm = {q: ends.pop(q, REJECT) for q in self.states}
            norm.update(ends)
            # goto targets in declaration order, undeclared ones last
            pos = {q: i for i, q in enumerate(self.states)}
            for q, act in norm.items():
                if len(act.targets) > 1:
                    ts = sorted(act.targets, key=lambda p: pos.get(p, len(pos)))
                    norm[q] = EndAction("goto", tuple(ts))
            set_(self, "end_delta", norm)

    # -- lookups used by the engines -------------------------------------

    def tau(self, state: str) -> frozenset[str]:
        return self.translucent.get(state, frozenset())

    def targets(self, state: str, letter: str) -> tuple[str, ...]:
        """Successor states of ``delta(state, letter)`` in declaration order."""
        succ = self.delta.get((state, letter))
        if not succ:
            return ()
        return tuple(q for q in self.states if q in succ)

    def end_action(self, state: str) -> EndAction:
        if self.end_delta is None:
            raise KindError(f"{self.kind} automata have no end-marker transitions")
        return self.end_delta.get(state, REJECT)

    @property
    def initial_ordered(self) -> tuple[str, ...]:
        return tuple(q for q in self.states if q in self.initial)

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def letter_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def check_word(self, word: str) -> None:
        bad = sorted({c for c in word if c not in self.letter_index})
        if bad:
            raise AlphabetError(
                f"letters {', '.join(map(repr, bad))} are not in the alphabet "
                f"{{{', '.join(self.alphabet)}}}"
            )

    def with_kind(self, kind: Kind) -> "Automaton":
        return Automaton(
            kind=kind,
            states=self.states,
            alphabet=self.alphabet,
            initial=self.initial,
            translucent=self.translucent,
            delta=self.delta,
            final=self.final,
            end_delta=self.end_delta,
        )


def make_automaton(
    kind: Kind | str,
    states: Iterable[str],
    alphabet: Iterable[str],
    initial: Iterable[str],
    translucent: Mapping[str, Iterable[str]] | None = None,
    delta: Mapping[tuple[str, str], Iterable[str] | str] | None = None,
    final: Iterable[str] | None = None,
    end: Mapping[str, EndAction | Iterable[str] | str] | None = None,
) -> Automaton:
    """Convenience builder accepting loose shapes.

    ``delta`` values may be a single state name; ``end`` values may be an
    :class:`EndAction`, the string ``"ACCEPT"``, a state name or a collection
    of state names.  Translucency values may be strings of letters.
    """
    norm_delta = {}
    for key, val in (delta or {}).items():
        norm_delta[key] = frozenset([val] if isinstance(val, str) else val)
    norm_end = None
    if end is not None:
        norm_end = {}
        for q, act in end.items():
            if isinstance(act, EndAction):
                norm_end[q] = act
            elif act == "ACCEPT":
                norm_end[q] = ACCEPT
            elif isinstance(act, str):
                norm_end[q] = goto(act)
            else:
                norm_end[q] = goto(*act)
    return Automaton(
        kind=Kind(kind),
        states=tuple(states),
        alphabet=tuple(alphabet),
        initial=frozenset(initial),
        translucent={q: frozenset(v) for q, v in (translucent or {}).items()},
        delta=norm_delta,
        final=frozenset(final) if final is not None else None,
        end_delta=norm_end,
    )


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    where: str = ""

    def __str__(self) -> str:
        loc = f" [{self.where}]" if self.where else ""
        return f"{self.rule}: {self.message}{loc}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        # truthy means "well-formed"
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def rules(self) -> list[str]:
        return [v.rule for v in self.violations]

    def render(self) -> str:
        if not self.violations:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def _valid_letter(a: object) -> bool:
    return (
        isinstance(a, str)
        and len(a) == 1
        and a.isprintable()
        and not a.isspace()
        and a != "#"
    )


def _valid_state(q: object) -> bool:
    return (
        isinstance(q, str)
        and q != ""
        and q not in RESERVED
        and "#" not in q
        and all(c.isprintable() and not c.isspace() for c in q)
    )


def validate(aut: Automaton) -> ValidationReport:
    """Collect every structural violation of ``aut``; empty means well-formed."""
    out: list[Violation] = []
    add = lambda rule, msg, where="": out.append(Violation(rule, msg, where))

    Q = set(aut.states)
    S = set(aut.alphabet)
    if len(Q) != len(aut.states):
        add("duplicate-state", "state declared more than once")
    if len(S) != len(aut.alphabet):
        add("duplicate-letter", "letter declared more than once")
    for q in aut.states:
        if not _valid_state(q):
            add("bad-state-name", f"{q!r} is not a valid state token", str(q))
    for a in aut.alphabet:
        if not _valid_letter(a):
            add("bad-letter", f"{a!r} is not a single printable character", str(a))

    for q in sorted(aut.initial - Q):
        add("unknown-state", f"initial state {q} not declared", q)
    if aut.final is not None:
        for q in sorted(aut.final - Q):
            add("unknown-state", f"final state {q} not declared", q)

    for q, letters in aut.translucent.items():
        if q not in Q:
            add("unknown-state", f"translucency given for undeclared state {q}", q)
        for a in sorted(letters - S):
            add("unknown-letter", f"translucent letter {a} not in alphabet", f"{q},{a}")

    for (q, a), succ in aut.delta.items():
        where = f"{q},{a}"
        if q not in Q:
            add("unknown-state", f"transition from undeclared state {q}", where)
        if a not in S:
            add("unknown-letter", f"transition on undeclared letter {a}", where)
        for p in sorted(succ - Q):
            add("unknown-state", f"transition target {p} not declared", where)
        if a in aut.tau(q):
            add(
                "translucency",
                f"delta({q},{a}) must be empty because {a} is translucent for {q}",
                where,
            )

    if aut.end_delta is not None:
        for q, act in aut.end_delta.items():
            if q not in Q:
                add("unknown-state", f"end action for undeclared state {q}", q)
            for p in act.targets:
                if p not in Q:
                    add("unknown-state", f"end target {p} not declared", f"{q},END")

    if aut.kind.deterministic:
        if len(aut.initial) != 1:
            add(
                "det-initial",
                f"deterministic kind needs exactly one initial state, got {len(aut.initial)}",
            )
        for (q, a), succ in aut.delta.items():
            if len(succ) > 1:
                add("det-delta", f"delta({q},{a}) has {len(succ)} targets", f"{q},{a}")
        if aut.end_delta is not None:
            for q, act in aut.end_delta.items():
                if len(act.targets) > 1:
                    add(
                        "det-end",
                        f"delta({q},END) has {len(act.targets)} targets",
                        f"{q},END",
                    )
    return ValidationReport(tuple(out))


def is_deterministic(aut: Automaton) -> bool:
    """Structural determinism, ignoring the kind tag."""
    if len(aut.initial) != 1:
        return False
    if any(len(s) > 1 for s in aut.delta.values()):
        return False
    if aut.end_delta is not None and any(
        len(a.targets) > 1 for a in aut.end_delta.values()
    ):
        return False
    return True


def require_valid(aut: Automaton) -> None:
    report = validate(aut)
    if not report:
        raise InvalidAutomatonError(report)


def require_deterministic(aut: Automaton) -> None:
    if not aut.kind.deterministic:
        raise NondeterministicError(f"expected a deterministic kind, got {aut.kind}")
    if not is_deterministic(aut):
        raise NondeterministicError(f"{aut.kind} automaton is not structurally deterministic")


def require_nonreturning(aut: Automaton, what: str) -> None:
    if aut.kind.returning:
        raise KindError(f"{what} needs a non-returning automaton, got {aut.kind}")
