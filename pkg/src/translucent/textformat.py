"""Reading and writing the line-oriented TLA v1 automaton format.

Example::

    @type nrDFAwtl
    @alphabet a b c
    @states qa qb qc qr
    @initial qa
    @translucent qa =
    @translucent qb = a
    @delta qa a -> qb
    @delta qr END -> qa
    @delta qa END -> ACCEPT

``#`` starts a comment.  Omitted translucency lines mean the empty set and an
omitted ``END`` line means Reject.
"""
from __future__ import annotations

from .model import (
    ACCEPT,
    Automaton,
    EndAction,
    Kind,
    goto,
    require_valid,
)

__all__ = ["TLASyntaxError", "parse_tla", "serialize_tla", "load_tla"]

_HEADERS = ("@type", "@alphabet", "@states", "@initial", "@final", "@translucent", "@delta")
_ONCE = ("@type", "@alphabet", "@states", "@initial", "@final")


class TLASyntaxError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if tokens:
            yield lineno, tokens


def parse_tla(text: str) -> Automaton:
    """Parse TLA text into an :class:`Automaton`.

    Raises :class:`TLASyntaxError` for malformed lines, duplicate
    declarations, unknown states or letters, and conflicting ``END`` actions.
    Semantic rules such as the translucency constraint are left to
    :func:`~translucent.model.validate`.
    """
    seen: dict[str, int] = {}
    kind: Kind | None = None
    alphabet: list[str] = []
    states: list[str] = []
    initial: list[str] = []
    final: list[str] | None = None
    translucent: dict[str, frozenset[str]] = {}
    delta: dict[tuple[str, str], frozenset[str]] = {}
    end: dict[str, EndAction] = {}
    end_line: dict[str, int] = {}

    def need_state(q: str, lineno: int) -> str:
        if q not in state_set:
            raise TLASyntaxError(f"unknown state {q!r}", lineno)
        return q

    def need_letter(a: str, lineno: int) -> str:
        if a not in letter_set:
            raise TLASyntaxError(f"unknown letter {a!r}", lineno)
        return a

    state_set: set[str] = set()
    letter_set: set[str] = set()
    first = True
    for lineno, tokens in _lines(text):
        head, args = tokens[0], tokens[1:]
        if head not in _HEADERS:
            raise TLASyntaxError(f"unknown directive {head!r}", lineno)
        if first and head != "@type":
            raise TLASyntaxError("@type must be the first declaration", lineno)
        first = False
        if head in _ONCE:
            if head in seen:
                raise TLASyntaxError(
                    f"duplicate {head} declaration (first on line {seen[head]})", lineno
                )
            seen[head] = lineno
        if head != "@type" and "@states" not in seen and head in ("@initial", "@final", "@translucent", "@delta"):
            raise TLASyntaxError(f"{head} before @states", lineno)
        if head in ("@translucent", "@delta") and "@alphabet" not in seen:
            raise TLASyntaxError(f"{head} before @alphabet", lineno)

        if head == "@type":
            if len(args) != 1:
                raise TLASyntaxError("@type takes exactly one kind", lineno)
            try:
                kind = Kind(args[0])
            except ValueError:
                raise TLASyntaxError(f"unknown automaton type {args[0]!r}", lineno) from None
        elif head == "@alphabet":
            for a in args:
                if len(a) != 1:
                    raise TLASyntaxError(f"letter {a!r} is not a single character", lineno)
                if a in letter_set:
                    raise TLASyntaxError(f"duplicate letter {a!r}", lineno)
                letter_set.add(a)
                alphabet.append(a)
        elif head == "@states":
            if not args:
                raise TLASyntaxError("@states needs at least one state", lineno)
            for q in args:
                if q in ("END", "ACCEPT", "=", "->", "EPS"):
                    raise TLASyntaxError(f"{q!r} is reserved", lineno)
                if q in state_set:
                    raise TLASyntaxError(f"duplicate state {q!r}", lineno)
                state_set.add(q)
                states.append(q)
        elif head == "@initial":
            initial = [need_state(q, lineno) for q in args]
            if len(set(initial)) != len(initial):
                raise TLASyntaxError("duplicate initial state", lineno)
        elif head == "@final":
            if kind is not None and not kind.returning:
                raise TLASyntaxError(f"@final is not allowed for {kind}", lineno)
            final = [need_state(q, lineno) for q in args]
        elif head == "@translucent":
            if len(args) < 2 or args[1] != "=":
                raise TLASyntaxError("expected '@translucent <state> = <letter> ...'", lineno)
            q = need_state(args[0], lineno)
            if q in translucent:
                raise TLASyntaxError(f"duplicate @translucent for {q}", lineno)
            translucent[q] = frozenset(need_letter(a, lineno) for a in args[2:])
        elif head == "@delta":
            if len(args) < 3 or args[2] != "->":
                raise TLASyntaxError("expected '@delta <state> <letter> -> <target> ...'", lineno)
            q = need_state(args[0], lineno)
            rhs = args[3:]
            if args[1] == "END":
                if kind is not None and kind.returning:
                    raise TLASyntaxError(f"END transitions are not allowed for {kind}", lineno)
                if "ACCEPT" in rhs and len(rhs) > 1:
                    raise TLASyntaxError(f"conflicting END actions for {q}: ACCEPT and states", lineno)
                if not rhs:
                    raise TLASyntaxError("END transition needs ACCEPT or target states", lineno)
                if rhs == ["ACCEPT"]:
                    act = ACCEPT
                else:
                    act = goto(*(need_state(p, lineno) for p in rhs))
                if q in end:
                    if end[q].is_accept != act.is_accept:
                        raise TLASyntaxError(
                            f"conflicting END actions for {q}: ACCEPT and states "
                            f"(other on line {end_line[q]})",
                            lineno,
                        )
                    raise TLASyntaxError(f"duplicate END transition for {q}", lineno)
                end[q] = act
                end_line[q] = lineno
            else:
                a = args[1]
                if len(a) != 1:
                    raise TLASyntaxError(f"letter {a!r} is not a single character", lineno)
                need_letter(a, lineno)
                if (q, a) in delta:
                    raise TLASyntaxError(f"duplicate @delta for ({q}, {a})", lineno)
                if not rhs:
                    raise TLASyntaxError("transition needs at least one target", lineno)
                delta[(q, a)] = frozenset(need_state(p, lineno) for p in rhs)

    if kind is None:
        raise TLASyntaxError("missing @type")
    for h in ("@alphabet", "@states", "@initial"):
        if h not in seen:
            raise TLASyntaxError(f"missing {h}")
    if kind.returning and final is None:
        raise TLASyntaxError(f"@final is required for {kind}")

    return Automaton(
        kind=kind,
        states=tuple(states),
        alphabet=tuple(alphabet),
        initial=frozenset(initial),
        translucent=translucent,
        delta=delta,
        final=frozenset(final) if final is not None else None,
        end_delta=None if kind.returning else end,
    )


def serialize_tla(aut: Automaton) -> str:
    """Canonical TLA text: states in declaration order, then letters in order."""
    require_valid(aut)
    order = aut.state_index
    ordered = lambda qs: sorted(qs, key=order.__getitem__)
    lines = [
        f"@type {aut.kind.value}",
        " ".join(["@alphabet", *aut.alphabet]),
        " ".join(["@states", *aut.states]),
        " ".join(["@initial", *ordered(aut.initial)]),
    ]
    if aut.kind.returning:
        lines.append(" ".join(["@final", *ordered(aut.final)]))
    for q in aut.states:
        tau = aut.tau(q)
        lines.append(" ".join(["@translucent", q, "=", *(a for a in aut.alphabet if a in tau)]))
    for q in aut.states:
        for a in aut.alphabet:
            succ = aut.targets(q, a)
            if succ:
                lines.append(" ".join(["@delta", q, a, "->", *succ]))
        if aut.end_delta is not None:
            act = aut.end_action(q)
            if act.is_accept:
                lines.append(f"@delta {q} END -> ACCEPT")
            elif act.is_goto:
                lines.append(" ".join(["@delta", q, "END", "->", *ordered(act.targets)]))
    return "\n".join(lines) + "\n"


def load_tla(path) -> Automaton:
    with open(path, encoding="utf-8") as fh:
        return parse_tla(fh.read())
