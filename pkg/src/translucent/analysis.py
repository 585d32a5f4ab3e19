"""Language-level tools built on the membership engines.

Everything here works by exhaustive enumeration of ``Sigma^{<=K}`` in
length-lexicographic order (letters ordered as declared), with a budget on
the total number of membership tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

from .fast import Runner
from .model import AlphabetError, Automaton, require_valid
from .naive import accepts_naive

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "ParikhVector",
    "EnumerationResult",
    "Witness",
    "NoWitnessUpTo",
    "Equal",
    "Counterexample",
    "words_up_to",
    "membership",
    "enumerate_accepted",
    "bounded_emptiness",
    "parikh_sample",
    "equivalent_up_to",
    "to_diagram",
]

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"{needed} membership tests needed, budget is {budget}")
        self.needed = needed
        self.budget = budget


@dataclass(frozen=True, order=True)
class ParikhVector:
    """Letter counts of a word, aligned with ``letters``."""

    letters: tuple[str, ...]
    counts: tuple[int, ...]

    @classmethod
    def of(cls, word: str, alphabet) -> "ParikhVector":
        letters = tuple(alphabet)
        return cls(letters, tuple(word.count(a) for a in letters))

    def __getitem__(self, letter: str) -> int:
        return self.counts[self.letters.index(letter)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.letters, self.counts))

    def total(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.counts)) + ")"


@dataclass(frozen=True)
class EnumerationResult:
    max_len: int
    accepted: list[str]

    def __iter__(self):
        return iter(self.accepted)

    def __len__(self) -> int:
        return len(self.accepted)

    def __contains__(self, word) -> bool:
        return word in self.accepted


@dataclass(frozen=True)
class Witness:
    word: str

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NoWitnessUpTo:
    max_len: int

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"no witness up to {self.max_len}"


@dataclass(frozen=True)
class Equal:
    max_len: int

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Counterexample:
    word: str
    # membership in the first and second automaton
    first: bool
    second: bool

    def __bool__(self) -> bool:
        return False


def _count(nletters: int, max_len: int) -> int:
    return sum(nletters**k for k in range(max_len + 1))


def _check_budget(aut: Automaton, max_len: int, budget: int, factor: int = 1) -> None:
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    needed = factor * _count(len(aut.alphabet), max_len)
    if needed > budget:
        raise BudgetExceeded(needed, budget)


def words_up_to(alphabet, max_len: int) -> Iterator[str]:
    """All words of length ``<= max_len`` in length-lexicographic order."""
    letters = tuple(alphabet)
    for k in range(max_len + 1):
        for t in product(letters, repeat=k):
            yield "".join(t)


def membership(aut: Automaton, engine: str = "auto") -> Callable[[str], bool]:
    """Boolean membership test; ``auto`` picks the fast engine when it applies."""
    if engine == "auto":
        engine = "fast" if aut.kind.deterministic else "naive"
    if engine == "fast":
        return Runner(aut).accepts
    if engine == "naive":
        return lambda w: bool(accepts_naive(aut, w))
    raise ValueError(f"unknown engine {engine!r}")


def _accepted(aut: Automaton, max_len: int, engine: str) -> Iterator[str]:
    if engine == "auto":
        engine = "fast" if aut.kind.deterministic else "naive"
    if engine == "fast":
        # skip per-word encoding: enumerate letter codes directly
        runner = Runner(aut)
        letters = aut.alphabet
        codes = range(len(letters))
        for k in range(max_len + 1):
            for t in product(codes, repeat=k):
                if runner.accepts_codes(bytes(t)):
                    yield "".join(letters[i] for i in t)
    else:
        test = membership(aut, engine)
        for w in words_up_to(aut.alphabet, max_len):
            if test(w):
                yield w


def enumerate_accepted(
    aut: Automaton, max_len: int, engine: str = "auto", budget: int = DEFAULT_BUDGET
) -> EnumerationResult:
    """Every accepted word of length ``<= max_len``, length-lexicographically."""
    require_valid(aut)
    _check_budget(aut, max_len, budget)
    return EnumerationResult(max_len, list(_accepted(aut, max_len, engine)))


def bounded_emptiness(
    aut: Automaton, max_len: int, engine: str = "auto", budget: int = DEFAULT_BUDGET
) -> Witness | NoWitnessUpTo:
    """Shortest accepted word, or a certificate that none has length ``<= max_len``."""
    require_valid(aut)
    _check_budget(aut, max_len, budget)
    for w in _accepted(aut, max_len, engine):
        return Witness(w)
    return NoWitnessUpTo(max_len)


def parikh_sample(
    aut: Automaton, max_len: int, engine: str = "auto", budget: int = DEFAULT_BUDGET
) -> set[ParikhVector]:
    require_valid(aut)
    _check_budget(aut, max_len, budget)
    return {ParikhVector.of(w, aut.alphabet) for w in _accepted(aut, max_len, engine)}


def equivalent_up_to(
    a1: Automaton, a2: Automaton, max_len: int, budget: int = DEFAULT_BUDGET
) -> Equal | Counterexample:
    """Compare two languages on all words up to ``max_len``.

    Words are generated in the first automaton's letter order.
    """
    if set(a1.alphabet) != set(a2.alphabet):
        raise AlphabetError(
            f"alphabets differ: {''.join(a1.alphabet)} vs {''.join(a2.alphabet)}"
        )
    require_valid(a1)
    require_valid(a2)
    _check_budget(a1, max_len, budget, factor=2)
    t1, t2 = membership(a1), membership(a2)
    for w in words_up_to(a1.alphabet, max_len):
        x, y = t1(w), t2(w)
        if x != y:
            return Counterexample(w, x, y)
    return Equal(max_len)


# -- diagrams --------------------------------------------------------------------

END_MARK = "◁"


def _label(tau: frozenset[str], symbol: str, order: dict[str, int]) -> str:
    if not tau:
        return symbol
    ys = sorted(tau, key=order.__getitem__)
    y = ys[0] if len(ys) == 1 else "{" + ",".join(ys) + "}"
    return f"({y}*, {symbol})"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_diagram(aut: Automaton) -> str:
    """Graphviz DOT text; letter edges carry ``(Y*, x)`` labels as in the usual figures."""
    require_valid(aut)
    order = aut.letter_index
    accept = "Accept"
    taken = set(aut.states)
    while accept in taken:
        accept += "_"
    lines = [
        "digraph automaton {",
        "  rankdir=LR;",
        '  __start [shape=point, label=""];',
    ]
    for q in aut.states:
        lines.append(f"  {_quote(q)} [shape=circle];")
    lines.append(f"  {_quote(accept)} [shape=box, label=\"Accept\"];")
    for q in aut.initial_ordered:
        lines.append(f"  __start -> {_quote(q)};")
    for q in aut.states:
        tau = aut.tau(q)
        for a in aut.alphabet:
            for p in aut.targets(q, a):
                lines.append(f"  {_quote(q)} -> {_quote(p)} [label={_quote(_label(tau, a, order))}];")
        end_label = _quote(_label(tau, END_MARK, order))
        if aut.kind.returning:
            if q in aut.final:
                lines.append(f"  {_quote(q)} -> {_quote(accept)} [label={end_label}];")
            continue
        act = aut.end_action(q)
        if act.is_accept:
            lines.append(f"  {_quote(q)} -> {_quote(accept)} [label={end_label}];")
        elif act.is_goto:
            for p in act.targets:
                lines.append(f"  {_quote(q)} -> {_quote(p)} [label={end_label}, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
