import pytest

from translucent.model import (
    ACCEPT,
    REJECT,
    Automaton,
    EndAction,
    InvalidAutomatonError,
    Kind,
    KindError,
    NondeterministicError,
    AlphabetError,
    Verdict,
    goto,
    is_deterministic,
    make_automaton,
    require_deterministic,
    require_valid,
    validate,
)


def small(kind=Kind.NRDFAWTL, **kw):
    base = dict(
        states=["p", "q"],
        alphabet="ab",
        initial=["p"],
        translucent={"p": "b"},
        delta={("p", "a"): "q"},
    )
    if Kind(kind).returning:
        base["final"] = ["q"]
    else:
        base["end"] = {"q": "ACCEPT"}
    base.update(kw)
    return make_automaton(kind, **base)


def test_kind_flags():
    assert Kind.NFAWTL.returning and not Kind.NFAWTL.deterministic
    assert Kind.DFAWTL.returning and Kind.DFAWTL.deterministic
    assert not Kind.NRNFAWTL.returning and not Kind.NRNFAWTL.deterministic
    assert Kind("nrDFAwtl") is Kind.NRDFAWTL


def test_verdict_truthiness():
    assert Verdict.ACCEPT and not Verdict.REJECT


def test_goto_collapses_and_dedups():
    assert goto() == REJECT
    assert goto("p", "p").targets == ("p",)
    with pytest.raises(ValueError):
        EndAction("accept", ("p",))


def test_defaults_are_normalised():
    a = small()
    assert a.tau("q") == frozenset()
    assert a.end_action("p") == REJECT
    assert a.end_action("q") == ACCEPT
    assert a.targets("q", "a") == ()
    # empty transition sets are dropped, so these compare equal
    b = make_automaton(
        Kind.NRDFAWTL, ["p", "q"], "ab", ["p"],
        translucent={"p": "b", "q": ""},
        delta={("p", "a"): "q", ("q", "b"): []},
        end={"q": ACCEPT, "p": REJECT},
    )
    assert a == b


def test_goto_targets_follow_declaration_order():
    a = make_automaton(Kind.NRNFAWTL, ["p", "q", "r"], "a", ["p"], end={"p": ["r", "q"]})
    assert a.end_action("p").targets == ("q", "r")


def test_kind_mismatch_on_construction():
    with pytest.raises(KindError):
        make_automaton(Kind.DFAWTL, ["p"], "a", ["p"], end={"p": ACCEPT})
    with pytest.raises(KindError):
        make_automaton(Kind.NRDFAWTL, ["p"], "a", ["p"], final=["p"])
    with pytest.raises(KindError):
        small(Kind.DFAWTL).end_action("p")


def test_valid_automaton_has_empty_report():
    r = validate(small())
    assert r and len(r) == 0 and r.render() == "ok"


@pytest.mark.parametrize(
    "change, rule",
    [
        (dict(translucent={"p": "a"}), "translucency"),
        (dict(initial=["p", "q"]), "det-initial"),
        (dict(initial=["z"]), "unknown-state"),
        (dict(delta={("p", "a"): ["p", "q"]}), "det-delta"),
        (dict(delta={("p", "x"): "q"}), "unknown-letter"),
        (dict(delta={("p", "a"): "z"}), "unknown-state"),
        (dict(end={"p": ["p", "q"]}), "det-end"),
        (dict(end={"p": "z"}), "unknown-state"),
        (dict(translucent={"p": "x"}), "unknown-letter"),
        (dict(alphabet=["a", "bb"]), "bad-letter"),
        (dict(states=["p", "q", "END"]), "bad-state-name"),
        (dict(states=["p", "q", "p"]), "duplicate-state"),
    ],
)
def test_validation_rules(change, rule):
    r = validate(small(**change))
    assert not r
    assert rule in r.rules()
    with pytest.raises(InvalidAutomatonError):
        require_valid(small(**change))


def test_translucency_violation_reports_location():
    r = validate(small(translucent={"p": "a"}))
    (v,) = [v for v in r if v.rule == "translucency"]
    assert v.where == "p,a"
    assert "translucency" in r.render()


def test_nondeterministic_kind_allows_branching():
    a = small(Kind.NRNFAWTL, initial=["p", "q"], delta={("p", "a"): ["p", "q"]})
    assert validate(a)
    assert not is_deterministic(a)
    with pytest.raises(NondeterministicError):
        require_deterministic(a)


def test_require_deterministic_wants_deterministic_kind():
    a = small().with_kind(Kind.NRNFAWTL)
    assert is_deterministic(a)
    with pytest.raises(NondeterministicError):
        require_deterministic(a)


def test_check_word():
    a = small()
    a.check_word("abba")
    with pytest.raises(AlphabetError, match="'c'"):
        a.check_word("abc")


def test_returning_final_states():
    a = small(Kind.DFAWTL)
    assert a.final == {"q"} and a.end_delta is None
    assert validate(a)
