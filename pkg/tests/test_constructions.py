import random
from graphlib import TopologicalSorter

import pytest
from hypothesis import given, settings

from translucent.analysis import words_up_to
from translucent.constructions import (
    EPSILON,
    ClassicalNFA,
    complement_deterministic,
    complete_reading,
    disjoint_shuffle,
    eliminate_end_loops,
    embed_nfawtl,
    normalize,
    unary_to_nfa,
    union,
)
from translucent.corpus import (
    all_fixtures,
    anbncn_automaton,
    end_loop_automaton,
    end_loop_deterministic,
    exp3_automaton,
    lambda_only,
    shuffle_copy_automaton,
)
from translucent.model import ACCEPT, AlphabetError, Kind, KindError, NondeterministicError, make_automaton, validate
from translucent.naive import accepts_naive, configuration_graph

from _gen import automata, random_automaton, rename_letters


def lang(aut, n):
    return {w for w in words_up_to(aut.alphabet, n) if accepts_naive(aut, w)}


NONRET = [f for f in all_fixtures().values() if not f.automaton.kind.returning]


def test_embed_shuffle_copy():
    a = shuffle_copy_automaton()
    b = embed_nfawtl(a)
    assert b.kind is Kind.NRDFAWTL
    assert validate(b)
    assert len(b.states) == 2 * len(a.states)
    assert b.tau("q0'") == set(a.alphabet)
    assert b.end_action("q0'").targets == ("q0",)
    assert b.end_action("q0").is_accept
    assert lang(b, 6) == lang(a, 6)


def test_embed_nondeterministic_kind():
    a = make_automaton(
        Kind.NFAWTL, ["s", "t"], "ab", ["s", "t"],
        translucent={"s": "b"}, delta={("s", "a"): ["s", "t"], ("t", "b"): "s"}, final=["s"],
    )
    b = embed_nfawtl(a)
    assert b.kind is Kind.NRNFAWTL
    assert lang(b, 6) == lang(a, 6)


def test_embed_rejects_nonreturning():
    with pytest.raises(KindError):
        embed_nfawtl(anbncn_automaton())


def test_prime_name_clash():
    a = make_automaton(Kind.DFAWTL, ["p", "p'"], "a", ["p"], delta={("p", "a"): "p'"}, final=["p'"])
    b = embed_nfawtl(a)
    assert len(set(b.states)) == 4
    assert lang(b, 4) == lang(a, 4)


def test_eliminate_end_loops_on_end_loop():
    a = end_loop_automaton()
    b = eliminate_end_loops(a)
    assert validate(b)
    assert b.initial == {"p[]"}
    assert b.end_action("p[]").targets == ("q[p]", "r[p]")
    # q[p] would go back to p, which is already in S
    assert b.end_action("p[p,q]").is_reject
    assert lang(b, 7) == lang(a, 7)
    for w in ["", "a", "ab", "aba", "bab", "aabaa"]:
        g = configuration_graph(b, w)
        assert len(tuple(TopologicalSorter(g).static_order())) == len(g)


def test_eliminate_end_loops_keeps_determinism():
    b = eliminate_end_loops(end_loop_deterministic())
    assert b.kind is Kind.NRDFAWTL
    assert validate(b)


def test_complete_reading():
    a = anbncn_automaton()
    b = complete_reading(a)
    assert "q_e" in b.states
    assert b.end_action("qa").targets == ("q_e",)
    assert b.end_action("q_e").is_accept
    assert b.tau("q_e") == frozenset()
    assert lang(b, 7) == lang(a, 7)


def test_normalize_preserves_fixture_languages():
    for f in NONRET:
        assert lang(normalize(f.automaton), 6) == lang(f.automaton, 6), f.name


def test_normal_form_accepts_only_after_full_deletion():
    b = normalize(exp3_automaton())
    accepting = [q for q in b.states if b.end_action(q).is_accept]
    assert accepting == ["q_e"]


def test_complement_anbncn():
    a = anbncn_automaton()
    c = complement_deterministic(a)
    assert c.kind is Kind.NRDFAWTL
    assert validate(c)
    for w in words_up_to("abc", 6):
        assert bool(accepts_naive(c, w)) != bool(accepts_naive(a, w)), w


def test_complement_handles_end_loops():
    a = end_loop_deterministic()
    c = complement_deterministic(a)
    for w in words_up_to("ab", 6):
        assert bool(accepts_naive(c, w)) != bool(accepts_naive(a, w)), w


def test_complement_requires_deterministic():
    with pytest.raises(NondeterministicError):
        complement_deterministic(end_loop_automaton())
    with pytest.raises(KindError):
        complement_deterministic(shuffle_copy_automaton())


def test_double_complement():
    a = exp3_automaton()
    cc = complement_deterministic(complement_deterministic(a))
    assert lang(cc, 6) == lang(a, 6)


def test_union():
    a, b = anbncn_automaton(), exp3_automaton()
    u = union(a, b)
    assert u.kind is Kind.NRNFAWTL
    assert u.initial == {"qa·1", "q0·2"}
    assert lang(u, 6) == lang(a, 6) | lang(b, 6)


def test_union_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        union(anbncn_automaton(), end_loop_automaton())


def test_disjoint_shuffle_projection():
    a1 = make_automaton(Kind.NRDFAWTL, ["s", "t"], "a", ["s"], delta={("s", "a"): "t", ("t", "a"): "s"}, end={"s": ACCEPT})
    a2 = rename_letters(anbncn_automaton(), {"a": "x", "b": "y", "c": "z"})
    assert a2.alphabet == ("x", "y", "z")
    d = disjoint_shuffle(a1, a2)
    assert d.alphabet == ("a", "x", "y", "z")
    for w in words_up_to(d.alphabet, 5):
        p1 = "".join(c for c in w if c in "a")
        p2 = "".join(c for c in w if c in "xyz")
        want = bool(accepts_naive(a1, p1)) and bool(accepts_naive(a2, p2))
        assert bool(accepts_naive(d, w)) == want, w


def test_disjoint_shuffle_overlap():
    with pytest.raises(AlphabetError):
        disjoint_shuffle(anbncn_automaton(), exp3_automaton())


def test_unary_to_nfa_parity():
    a = make_automaton(Kind.NRDFAWTL, ["s", "t"], "a", ["s"], delta={("s", "a"): "t", ("t", "a"): "s"}, end={"s": ACCEPT})
    n = unary_to_nfa(a)
    assert [k for k in range(10) if n.accepts("a" * k)] == [0, 2, 4, 6, 8]


def test_unary_to_nfa_translucent_goto():
    # p skips every a and restarts in q; q counts a's modulo 2
    a = make_automaton(
        Kind.NRNFAWTL, ["p", "q", "r"], "a", ["p"],
        translucent={"p": "a"},
        delta={("q", "a"): "r", ("r", "a"): "q"},
        end={"p": "q", "q": ACCEPT},
    )
    n = unary_to_nfa(a)
    assert n.epsilon_moves()
    for k in range(15):
        assert n.accepts("a" * k) == bool(accepts_naive(a, "a" * k)), k


def test_unary_to_nfa_empty_tape_goto():
    # the start state only reaches Accept through an end-marker step
    a = make_automaton(Kind.NRDFAWTL, ["p", "q"], "a", ["p"], delta={("p", "a"): "p"}, end={"p": "q", "q": ACCEPT})
    n = unary_to_nfa(a)
    for k in range(6):
        assert n.accepts("a" * k) == bool(accepts_naive(a, "a" * k)), k


def test_unary_to_nfa_requires_unary():
    with pytest.raises(AlphabetError):
        unary_to_nfa(anbncn_automaton())


def test_unary_random():
    rng = random.Random(11)
    for _ in range(40):
        a = random_automaton(rng, Kind.NRNFAWTL, max_states=4, alphabet="a")
        n = unary_to_nfa(a)
        for k in range(12):
            assert n.accepts("a" * k) == bool(accepts_naive(a, "a" * k)), (a, k)


def test_classical_nfa_text_round_trip():
    n = unary_to_nfa(lambda_only("a"))
    assert ClassicalNFA.from_text(n.to_text()) == n
    assert "@type NFA" in n.to_text()


def test_classical_nfa_epsilon():
    n = ClassicalNFA(
        states=("x", "y"), alphabet=("a",), initial=frozenset({"x"}), final=frozenset({"y"}),
        transitions={("x", EPSILON): frozenset({"y"}), ("y", "a"): frozenset({"x"})},
    )
    assert n.accepts("") and n.accepts("aaa")
    assert "@delta x EPS -> y" in n.to_text()


@settings(max_examples=60, deadline=None)
@given(automata(kinds=(Kind.NRNFAWTL, Kind.NRDFAWTL), max_states=4, max_letters=2))
def test_normalize_random(aut):
    assert lang(normalize(aut), 4) == lang(aut, 4)


@settings(max_examples=60, deadline=None)
@given(automata(kinds=(Kind.NRDFAWTL,), max_states=4, max_letters=2))
def test_complement_random(aut):
    c = complement_deterministic(aut)
    assert validate(c)
    for w in words_up_to(aut.alphabet, 4):
        assert bool(accepts_naive(c, w)) != bool(accepts_naive(aut, w))


@settings(max_examples=60, deadline=None)
@given(automata(kinds=(Kind.NFAWTL, Kind.DFAWTL), max_states=4, max_letters=2))
def test_embed_random(aut):
    assert lang(embed_nfawtl(aut), 4) == lang(aut, 4)
