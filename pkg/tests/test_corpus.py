import pytest

from translucent.analysis import words_up_to
from translucent.corpus import (
    all_fixtures,
    anbncn_oracle,
    exp3_oracle,
    fixture_lvee_predicate,
    fixture_text,
    load_fixture,
    shuffle_copy_oracle,
)
from translucent.fast import Runner
from translucent.model import validate
from translucent.naive import accepts_naive
from translucent.textformat import serialize_tla

FIXTURES = all_fixtures()

# accepted words of the end-loop fixture up to length 5, from exhaustive search
END_LOOP_SNAPSHOT = [
    "", "a", "b", "aa", "ab", "ba", "aaa", "aab", "aba", "baa",
    "aaaa", "aaab", "aaba", "abaa", "baaa",
    "aaaaa", "aaaab", "aaaba", "aabaa", "abaaa", "baaaa",
]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_valid(name):
    assert validate(FIXTURES[name].automaton)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_builder_matches_file(name):
    assert serialize_tla(FIXTURES[name].automaton) == fixture_text(name)
    assert load_fixture(name) == FIXTURES[name].automaton


@pytest.mark.parametrize("name", [n for n, f in FIXTURES.items() if f.total])
def test_engine_matches_oracle(name):
    f = FIXTURES[name]
    a = f.automaton
    n = 9 if name == "anbncn" else (6 if len(a.alphabet) > 3 else 8)
    test = Runner(a).accepts if a.kind.deterministic else (lambda w: bool(accepts_naive(a, w)))
    for w in words_up_to(a.alphabet, n):
        assert test(w) == f.oracle(w), w


def test_exp3_partial_oracle():
    r = Runner(FIXTURES["exp3"].automaton)
    for m in range(1, 13):
        w = "abc" * m
        assert r.accepts(w) == exp3_oracle(w)
    for n in range(6):
        w = "ab" + "cacabb" * n + "c"
        assert exp3_oracle(w) is True and r.accepts(w)
    assert exp3_oracle("cab") is None
    for w in words_up_to("abc", 7):
        v = exp3_oracle(w)
        if v is not None:
            assert r.accepts(w) == v, w


def test_end_loop_snapshot():
    a = FIXTURES["end_loop"].automaton
    got = [w for w in words_up_to("ab", 5) if accepts_naive(a, w)]
    assert got == END_LOOP_SNAPSHOT


def test_oracles():
    assert shuffle_copy_oracle("abbABaBA")
    assert shuffle_copy_oracle("")
    assert shuffle_copy_oracle("Aa")
    assert not shuffle_copy_oracle("aa")
    assert not shuffle_copy_oracle("aB")
    assert anbncn_oracle("aabbcc") and anbncn_oracle("")
    assert not anbncn_oracle("abcabc")
    lvee = fixture_lvee_predicate()
    assert lvee("ab") and lvee("abb") and lvee("")
    assert not lvee("aab")


def test_deterministic_fixtures_are_not_lvee():
    lvee = fixture_lvee_predicate()
    for f in FIXTURES.values():
        if not f.automaton.kind.deterministic or set(f.automaton.alphabet) != {"a", "b"}:
            continue
        r = Runner(f.automaton)
        assert any(r.accepts(w) != lvee(w) for w in words_up_to("ab", 6))
