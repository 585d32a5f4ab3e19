import pytest
from hypothesis import given, settings

from translucent.corpus import all_fixtures, fixture_text
from translucent.model import ACCEPT, Kind, goto, validate
from translucent.textformat import TLASyntaxError, parse_tla, serialize_tla

from _gen import automata

ANBNCN = """\
# a^n b^n c^n
@type nrDFAwtl
@alphabet a b c
@states qa qb qc qr
@initial qa
@translucent qb = a
@translucent qc = b
@translucent qr = c
@delta qa a -> qb
@delta qb b -> qc
@delta qc c -> qr
@delta qr END -> qa
@delta qa END -> ACCEPT
"""


def test_parse_example():
    a = parse_tla(ANBNCN)
    assert a.kind is Kind.NRDFAWTL
    assert len(a.states) == 4 and len(a.alphabet) == 3
    assert a.tau("qa") == frozenset() and a.tau("qr") == {"c"}
    assert a.targets("qc", "c") == ("qr",)
    assert a.end_action("qr") == goto("qa")
    assert a.end_action("qa") == ACCEPT
    assert a.end_action("qb").is_reject


def test_parse_matches_fixture():
    assert parse_tla(ANBNCN) == all_fixtures()["anbncn"].automaton


def test_canonical_form_is_fixed_point():
    text = serialize_tla(parse_tla(ANBNCN))
    assert serialize_tla(parse_tla(text)) == text
    assert text.startswith("@type nrDFAwtl\n@alphabet a b c\n")
    assert "@translucent qa =\n" in text


def test_returning_format():
    text = "@type DFAwtl\n@alphabet a\n@states p\n@initial p\n@final p\n@delta p a -> p\n"
    a = parse_tla(text)
    assert a.final == {"p"}
    assert serialize_tla(a) == text.replace("@final p\n", "@final p\n@translucent p =\n")


def test_semantic_errors_left_to_validate():
    a = parse_tla(ANBNCN.replace("@translucent qb = a", "@translucent qb = a b"))
    assert "translucency" in validate(a).rules()


@pytest.mark.parametrize(
    "edit, message",
    [
        (lambda t: t.replace("@delta qa END -> ACCEPT", "@delta qa END -> ACCEPT qb"), "conflicting END"),
        (lambda t: t + "@delta qa END -> qb\n", "conflicting END"),
        (lambda t: t + "@delta qr END -> qb\n", "duplicate END"),
        (lambda t: t.replace("@alphabet a b c", "@alphabet a bc"), "single character"),
        (lambda t: t.replace("qc c -> qr", "qc c -> qz"), "unknown state"),
        (lambda t: t.replace("qc c -> qr", "qc d -> qr"), "unknown letter"),
        (lambda t: t + "@states x\n", "duplicate @states"),
        (lambda t: t + "@final qa\n", "@final is not allowed"),
        (lambda t: t + "@bogus\n", "unknown directive"),
        (lambda t: t.replace("@type nrDFAwtl\n", "") + "@type nrDFAwtl\n", "@type must be"),
        (lambda t: t.replace("@type nrDFAwtl", "@type DFA"), "unknown automaton type"),
        (lambda t: t.replace("@initial qa\n", ""), "missing @initial"),
        (lambda t: t + "@translucent qb = c\n", "duplicate @translucent"),
        (lambda t: t + "@delta qa a -> qa\n", "duplicate @delta"),
    ],
)
def test_syntax_errors(edit, message):
    with pytest.raises(TLASyntaxError, match=message):
        parse_tla(edit(ANBNCN))


def test_syntax_error_carries_line():
    with pytest.raises(TLASyntaxError) as e:
        parse_tla(ANBNCN + "@bogus\n")
    assert e.value.line == ANBNCN.count("\n") + 1


def test_end_rejected_for_returning_kind():
    text = "@type DFAwtl\n@alphabet a\n@states p\n@initial p\n@final p\n@delta p END -> ACCEPT\n"
    with pytest.raises(TLASyntaxError, match="END transitions are not allowed"):
        parse_tla(text)


def test_final_required_for_returning_kind():
    with pytest.raises(TLASyntaxError, match="@final is required"):
        parse_tla("@type NFAwtl\n@alphabet a\n@states p\n@initial p\n")


@pytest.mark.parametrize("name", sorted(all_fixtures()))
def test_fixture_round_trip(name):
    text = fixture_text(name)
    a = parse_tla(text)
    assert serialize_tla(a) == text
    assert parse_tla(serialize_tla(a)) == a


@settings(max_examples=300, deadline=None)
@given(automata())
def test_round_trip_random(aut):
    assert validate(aut)
    assert parse_tla(serialize_tla(aut)) == aut
