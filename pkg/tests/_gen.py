"""Random automata and words for property and differential tests."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from translucent.model import ACCEPT, REJECT, Automaton, Kind, goto

LETTERS = "abcd"


def random_automaton(
    rng: random.Random,
    kind: Kind,
    max_states: int = 5,
    max_letters: int = 3,
    alphabet: str | None = None,
    p_delta: float = 0.6,
) -> Automaton:
    """Valid automaton of the given kind drawn from ``rng``."""
    kind = Kind(kind)
    n = rng.randint(1, max_states)
    sigma = alphabet or LETTERS[: rng.randint(1, max_letters)]
    states = [f"q{i}" for i in range(n)]
    det = kind.deterministic
    translucent, delta, end = {}, {}, {}
    for q in states:
        tau = {a for a in sigma if rng.random() < 0.35}
        translucent[q] = tau
        for a in sigma:
            if a in tau or rng.random() > p_delta:
                continue
            k = 1 if det else rng.randint(1, 2)
            delta[(q, a)] = set(rng.sample(states, min(k, n)))
        r = rng.random()
        if r < 0.3:
            end[q] = ACCEPT
        elif r < 0.75:
            k = 1 if det else rng.randint(1, 2)
            end[q] = goto(*rng.sample(states, min(k, n)))
        else:
            end[q] = REJECT
    if det:
        initial = {states[0]}
    else:
        initial = set(rng.sample(states, rng.randint(1, min(2, n))))
    final = {q for q in states if rng.random() < 0.4} if kind.returning else None
    return Automaton(
        kind=kind,
        states=tuple(states),
        alphabet=tuple(sigma),
        initial=frozenset(initial),
        translucent=translucent,
        delta=delta,
        final=final,
        end_delta=None if kind.returning else end,
    )


def rename_letters(aut: Automaton, mapping) -> Automaton:
    """Copy of ``aut`` with every letter replaced through ``mapping``."""
    m = dict(mapping)
    return Automaton(
        kind=aut.kind,
        states=aut.states,
        alphabet=[m[a] for a in aut.alphabet],
        initial=aut.initial,
        translucent={q: {m[a] for a in t} for q, t in aut.translucent.items()},
        delta={(q, m[a]): s for (q, a), s in aut.delta.items()},
        final=aut.final,
        end_delta=aut.end_delta,
    )


def random_word(rng: random.Random, alphabet, max_len: int) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


@st.composite
def automata(draw, kinds=tuple(Kind), max_states: int = 6, max_letters: int = 4, alphabet=None):
    """Hypothesis strategy for valid automata; shrinks toward few states and letters."""
    kind = draw(st.sampled_from(kinds))
    n = draw(st.integers(1, max_states))
    sigma = alphabet or LETTERS[: draw(st.integers(1, max_letters))]
    states = [f"q{i}" for i in range(n)]
    state = st.sampled_from(states)
    det = kind.deterministic
    targets = st.sets(state, min_size=1, max_size=1 if det else n)
    translucent, delta, end = {}, {}, {}
    for q in states:
        tau = draw(st.sets(st.sampled_from(sigma)))
        translucent[q] = tau
        for a in sigma:
            if a not in tau and draw(st.booleans()):
                delta[(q, a)] = draw(targets)
        if not kind.returning:
            choice = draw(st.sampled_from(["reject", "accept", "goto"]))
            if choice == "accept":
                end[q] = ACCEPT
            elif choice == "goto":
                end[q] = goto(*sorted(draw(targets)))
    if det:
        initial = {states[0]}
    else:
        initial = draw(st.sets(state, min_size=1))
    final = draw(st.sets(state)) if kind.returning else None
    return Automaton(
        kind=kind,
        states=tuple(states),
        alphabet=tuple(sigma),
        initial=frozenset(initial),
        translucent=translucent,
        delta=delta,
        final=final,
        end_delta=None if kind.returning else end,
    )


def words(alphabet, max_len: int = 8):
    return st.text(alphabet=st.sampled_from(tuple(alphabet)), max_size=max_len)
