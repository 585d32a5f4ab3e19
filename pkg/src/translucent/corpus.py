"""Worked example automata and engine-independent language predicates.

Every fixture ships twice: as a builder function here and as a canonical
TLA file under ``fixtures/``.  The two must serialise identically.

Primed letters a' and b' are written ``A`` and ``B``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from .model import ACCEPT, Automaton, Kind, make_automaton
from .textformat import parse_tla

__all__ = [
    "Fixture",
    "fixture_shuffle_copy",
    "fixture_anbncn",
    "fixture_end_loop",
    "fixture_exp3",
    "fixture_empty",
    "fixture_lvee_predicate",
    "end_loop_deterministic",
    "lambda_only",
    "empty_language",
    "all_fixtures",
    "fixture_text",
    "load_fixture",
]


@dataclass(frozen=True)
class Fixture:
    name: str
    automaton: Automaton
    # None means the oracle abstains on that word
    oracle: Callable[[str], Optional[bool]]
    notes: str = ""
    total: bool = True


# -- oracles -----------------------------------------------------------------

_PRIME = {"a": "A", "b": "B"}


def _is_interleaving(w: str, x: str, y: str) -> bool:
    """Whether ``w`` is some interleaving of ``x`` and ``y`` (classic DP)."""
    if len(w) != len(x) + len(y):
        return False
    # ok[j] == w[:i+j] interleaves x[:i] and y[:j]
    ok = [True] + [False] * len(y)
    for j in range(1, len(y) + 1):
        ok[j] = ok[j - 1] and y[j - 1] == w[j - 1]
    for i in range(1, len(x) + 1):
        ok[0] = ok[0] and x[i - 1] == w[i - 1]
        for j in range(1, len(y) + 1):
            ok[j] = (ok[j] and x[i - 1] == w[i + j - 1]) or (
                ok[j - 1] and y[j - 1] == w[i + j - 1]
            )
    return ok[len(y)]


def shuffle_copy_oracle(w: str) -> bool:
    # v has to be the subsequence of unprimed letters, phi(v) the primed ones
    v = "".join(c for c in w if c in "ab")
    return _is_interleaving(w, v, "".join(_PRIME[c] for c in v))


_ANBNCN = re.compile(r"(a*)(b*)(c*)")


def anbncn_oracle(w: str) -> bool:
    m = _ANBNCN.fullmatch(w)
    return bool(m) and len(m.group(1)) == len(m.group(2)) == len(m.group(3))


def end_loop_oracle(w: str) -> bool:
    """Words over {a, b} with at most one b.

    From p the machine deletes the first b and moves to q; q has no letter
    transitions, so a second visible b blocks it.  With no b left, p can
    branch to r at the end marker and r accepts.
    """
    return w.count("b") <= 1


def _power_of_three(m: int) -> bool:
    while m > 1 and m % 3 == 0:
        m //= 3
    return m == 1


_LPRIME = re.compile(r"ab((?:cacabb)*)c")


def exp3_oracle(w: str) -> Optional[bool]:
    """Partial: decides (abc)^m and ab(cacabb)^n c, abstains elsewhere."""
    if w and len(w) % 3 == 0 and w == "abc" * (len(w) // 3):
        return _power_of_three(len(w) // 3)
    if _LPRIME.fullmatch(w):
        return True
    return None


def lvee_oracle(w: str) -> bool:
    if set(w) - {"a", "b"}:
        return False
    na, nb = w.count("a"), w.count("b")
    return nb == na or nb == 2 * na


# -- builders ----------------------------------------------------------------


def shuffle_copy_automaton() -> Automaton:
    return make_automaton(
        Kind.DFAWTL,
        states=["q0", "qa", "qa'", "qb", "qb'"],
        alphabet="abAB",
        initial=["q0"],
        final=["q0"],
        translucent={"qa": "AB", "qa'": "ab", "qb": "AB", "qb'": "ab"},
        delta={
            ("q0", "a"): "qa'",
            ("q0", "b"): "qb'",
            ("q0", "A"): "qa",
            ("q0", "B"): "qb",
            ("qa", "a"): "q0",
            ("qb", "b"): "q0",
            ("qa'", "A"): "q0",
            ("qb'", "B"): "q0",
        },
    )


def anbncn_automaton() -> Automaton:
    return make_automaton(
        Kind.NRDFAWTL,
        states=["qa", "qb", "qc", "qr"],
        alphabet="abc",
        initial=["qa"],
        translucent={"qb": "a", "qc": "b", "qr": "c"},
        delta={("qa", "a"): "qb", ("qb", "b"): "qc", ("qc", "c"): "qr"},
        end={"qr": "qa", "qa": ACCEPT},
    )


def end_loop_automaton() -> Automaton:
    return make_automaton(
        Kind.NRNFAWTL,
        states=["p", "q", "r"],
        alphabet="ab",
        initial=["p"],
        translucent={"p": "a", "q": "a", "r": "a"},
        delta={("p", "b"): "q"},
        end={"p": ["q", "r"], "q": "p", "r": ACCEPT},
    )


def end_loop_deterministic() -> Automaton:
    """The end-loop machine keeping only the branch p -> q at the end marker."""
    return make_automaton(
        Kind.NRDFAWTL,
        states=["p", "q", "r"],
        alphabet="ab",
        initial=["p"],
        translucent={"p": "a", "q": "a", "r": "a"},
        delta={("p", "b"): "q"},
        end={"p": "q", "q": "p", "r": ACCEPT},
    )


def exp3_automaton() -> Automaton:
    q = [f"q{i}" for i in range(9)]
    return make_automaton(
        Kind.NRDFAWTL,
        states=q,
        alphabet="abc",
        initial=["q0"],
        translucent={"q0": "a", "q3": "b", "q6": "ac"},
        delta={
            ("q0", "b"): "q1",
            ("q1", "c"): "q2",
            ("q2", "a"): "q3",
            ("q3", "c"): "q4",
            ("q4", "a"): "q5",
            ("q5", "b"): "q6",
            ("q6", "b"): "q1",
            ("q7", "a"): "q8",
        },
        end={"q2": "q7", "q6": "q0", "q8": ACCEPT},
    )


def empty_automaton() -> Automaton:
    q = [f"q{i}" for i in range(6)]
    return make_automaton(
        Kind.NRDFAWTL,
        states=q,
        alphabet="abc",
        initial=["q0"],
        translucent={"q0": "b", "q1": "c", "q2": "c", "q4": "a"},
        delta={("q0", "a"): "q1", ("q2", "b"): "q3", ("q4", "c"): "q5"},
        end={"q1": "q2", "q3": "q4", "q5": ACCEPT},
    )


def lambda_only(alphabet="abc", kind: Kind = Kind.NRDFAWTL) -> Automaton:
    """One state, nothing readable except the end marker: accepts exactly the empty word."""
    if Kind(kind).returning:
        return make_automaton(kind, ["s"], alphabet, ["s"], final=["s"])
    return make_automaton(kind, ["s"], alphabet, ["s"], end={"s": ACCEPT})


def empty_language(alphabet="abc", kind: Kind = Kind.NRDFAWTL) -> Automaton:
    if Kind(kind).returning:
        return make_automaton(kind, ["s"], alphabet, ["s"], final=[])
    return make_automaton(kind, ["s"], alphabet, ["s"])


# -- fixtures ----------------------------------------------------------------


def fixture_shuffle_copy() -> Fixture:
    return Fixture(
        "shuffle_copy",
        shuffle_copy_automaton(),
        shuffle_copy_oracle,
        "DFAwtl accepting the shuffles of w with its primed copy; A = a', B = b'",
    )


def fixture_anbncn() -> Fixture:
    return Fixture("anbncn", anbncn_automaton(), anbncn_oracle, "nrDFAwtl for a^n b^n c^n")


def fixture_end_loop() -> Fixture:
    return Fixture(
        "end_loop",
        end_loop_automaton(),
        end_loop_oracle,
        "nrNFAwtl with an infinite computation p -> q -> p at the end marker",
    )


def fixture_exp3() -> Fixture:
    return Fixture(
        "exp3",
        exp3_automaton(),
        exp3_oracle,
        "nrDFAwtl accepting (abc)^(3^n); full language not characterised",
        total=False,
    )


def fixture_empty() -> Fixture:
    return Fixture(
        "empty",
        empty_automaton(),
        lambda w: False,
        "nrDFAwtl whose three single-sweep patterns cannot be combined",
    )


def fixture_lvee_predicate() -> Callable[[str], bool]:
    """Membership in {w in {a,b}* : |w|_b in {|w|_a, 2|w|_a}} (no nrDFAwtl exists)."""
    return lvee_oracle


def all_fixtures() -> dict[str, Fixture]:
    fx = [
        fixture_shuffle_copy(),
        fixture_anbncn(),
        fixture_end_loop(),
        fixture_exp3(),
        fixture_empty(),
    ]
    return {f.name: f for f in fx}


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath("fixtures", f"{name}.tla").read_text(encoding="utf-8")


def load_fixture(name: str) -> Automaton:
    return parse_tla(fixture_text(name))
