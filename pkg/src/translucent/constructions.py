"""Language-preserving transformations between translucent-letter automata.

Every function returns a fresh, valid :class:`Automaton`.  Generated states
get readable names derived from the originals (``q'``, ``q[p,r]``, ``q·1``);
a numeric ``~k`` suffix is appended on the rare clash.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .model import (
    ACCEPT,
    REJECT,
    AlphabetError,
    Automaton,
    EndAction,
    Kind,
    KindError,
    goto,
    require_deterministic,
    require_nonreturning,
    require_valid,
)

__all__ = [
    "EPSILON",
    "ClassicalNFA",
    "embed_nfawtl",
    "eliminate_end_loops",
    "complete_reading",
    "normalize",
    "union",
    "disjoint_shuffle",
    "complement_deterministic",
    "unary_to_nfa",
]

EPSILON = ""


def _fresh(name: str, taken: set[str]) -> str:
    if name not in taken:
        taken.add(name)
        return name
    k = 1
    while f"{name}~{k}" in taken:
        k += 1
    taken.add(f"{name}~{k}")
    return f"{name}~{k}"


def _rename(aut: Automaton, names: Mapping[str, str]) -> dict:
    """Components of ``aut`` with every state mapped through ``names``."""
    return dict(
        states=[names[q] for q in aut.states],
        initial={names[q] for q in aut.initial},
        translucent={names[q]: aut.tau(q) for q in aut.states},
        delta={(names[q], a): {names[p] for p in s} for (q, a), s in aut.delta.items()},
        end={
            names[q]: goto(*(names[p] for p in act.targets)) if act.is_goto else act
            for q, act in (aut.end_delta or {}).items()
        },
    )


# -- returning -> non-returning ----------------------------------------------


def embed_nfawtl(aut: Automaton) -> Automaton:
    """Simulate a returning automaton by a non-returning one.

    Each letter step ``q -a-> p`` becomes a step into an auxiliary state
    ``p'`` for which every letter is translucent; ``p'`` runs to the end
    marker and restarts in ``p`` at the left end, which is exactly the
    return move.  Final states accept at the end marker.
    """
    if not aut.kind.returning:
        raise KindError(f"embed_nfawtl needs NFAwtl/DFAwtl, got {aut.kind}")
    require_valid(aut)
    taken = set(aut.states)
    prime = {q: _fresh(q + "'", taken) for q in aut.states}
    sigma = frozenset(aut.alphabet)
    translucent = {q: aut.tau(q) for q in aut.states}
    translucent.update({prime[q]: sigma for q in aut.states})
    delta = {(q, a): {prime[p] for p in s} for (q, a), s in aut.delta.items()}
    end: dict[str, EndAction] = {q: ACCEPT for q in aut.final}
    end.update({prime[q]: goto(q) for q in aut.states})
    kind = Kind.NRDFAWTL if aut.kind is Kind.DFAWTL else Kind.NRNFAWTL
    return Automaton(
        kind=kind,
        states=aut.states + tuple(prime[q] for q in aut.states),
        alphabet=aut.alphabet,
        initial=aut.initial,
        translucent=translucent,
        delta=delta,
        end_delta=end,
    )


# -- normal form ---------------------------------------------------------------


def _set_name(q: str, S: frozenset[str], order: Mapping[str, int]) -> str:
    return q + "[" + ",".join(sorted(S, key=order.__getitem__)) + "]"


def eliminate_end_loops(aut: Automaton) -> Automaton:
    """Track the states that met the end marker since the last deletion.

    States are pairs ``(q, S)``; a letter step resets ``S`` to the empty set,
    an end-marker step from ``q`` adds ``q`` to ``S`` and is blocked when
    ``q`` is already there.  Only pairs reachable from ``I x {{}}`` are built.
    """
    require_nonreturning(aut, "eliminate_end_loops")
    require_valid(aut)
    order = aut.state_index
    empty = frozenset()
    start = [(q, empty) for q in aut.initial_ordered]
    seen = set(start)
    todo = deque(start)
    pairs = []
    trans: dict = {}
    ends: dict = {}
    while todo:
        q, S = node = todo.popleft()
        pairs.append(node)
        nexts = []
        for a in aut.alphabet:
            succ = [(p, empty) for p in aut.targets(q, a)]
            if succ:
                trans[(node, a)] = succ
                nexts.extend(succ)
        act = aut.end_action(q)
        if act.is_goto:
            if q in S:
                ends[node] = None
            else:
                S2 = S | {q}
                succ = [(p, S2) for p in sorted(act.targets, key=order.__getitem__)]
                ends[node] = succ
                nexts.extend(succ)
        else:
            ends[node] = act
        for nxt in nexts:
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)

    taken: set[str] = set()
    # stable order: by original state order, then by discovery
    pairs.sort(key=lambda n: order[n[0]])
    name = {n: _fresh(_set_name(n[0], n[1], order), taken) for n in pairs}
    end: dict[str, EndAction] = {}
    for n in pairs:
        e = ends[n]
        if e is None:
            end[name[n]] = REJECT
        elif isinstance(e, EndAction):
            end[name[n]] = e
        else:
            end[name[n]] = goto(*(name[m] for m in e))
    return Automaton(
        kind=aut.kind,
        states=tuple(name[n] for n in pairs),
        alphabet=aut.alphabet,
        initial=frozenset(name[(q, empty)] for q in aut.initial),
        translucent={name[n]: aut.tau(n[0]) for n in pairs},
        delta={(name[n], a): {name[m] for m in succ} for (n, a), succ in trans.items()},
        end_delta=end,
    )


def complete_reading(aut: Automaton, sink: str = "q_e") -> Automaton:
    """Make every accepting run delete the whole tape first.

    Former accepting states hand over to a new state that sees every letter,
    deletes it and stays put, and accepts at the end marker.
    """
    require_nonreturning(aut, "complete_reading")
    require_valid(aut)
    qe = _fresh(sink, set(aut.states))
    end = {
        q: (goto(qe) if aut.end_action(q).is_accept else aut.end_action(q))
        for q in aut.states
    }
    end[qe] = ACCEPT
    delta = dict(aut.delta)
    delta.update({(qe, a): frozenset([qe]) for a in aut.alphabet})
    translucent = dict(aut.translucent)
    translucent[qe] = frozenset()
    return Automaton(
        kind=aut.kind,
        states=aut.states + (qe,),
        alphabet=aut.alphabet,
        initial=aut.initial,
        translucent=translucent,
        delta=delta,
        end_delta=end,
    )


def normalize(aut: Automaton) -> Automaton:
    """Loop-free, complete-reading equivalent of ``aut`` (determinism kept)."""
    return complete_reading(eliminate_end_loops(aut))


# -- closure operations ----------------------------------------------------------


def _apart(a1: Automaton, a2: Automaton):
    n1 = {q: q + "·1" for q in a1.states}
    taken = set(n1.values())
    n2 = {q: _fresh(q + "·2", taken) for q in a2.states}
    return n1, n2


def union(a1: Automaton, a2: Automaton) -> Automaton:
    """Disjoint union of two non-returning automata over the same alphabet.

    The result is always of kind nrNFAwtl, since it has two initial states.
    """
    for a in (a1, a2):
        require_nonreturning(a, "union")
        require_valid(a)
    if set(a1.alphabet) != set(a2.alphabet):
        raise AlphabetError(
            f"union needs equal alphabets, got {{{', '.join(a1.alphabet)}}} "
            f"and {{{', '.join(a2.alphabet)}}}"
        )
    n1, n2 = _apart(a1, a2)
    c1, c2 = _rename(a1, n1), _rename(a2, n2)
    return Automaton(
        kind=Kind.NRNFAWTL,
        states=tuple(c1["states"] + c2["states"]),
        alphabet=a1.alphabet,
        initial=frozenset(c1["initial"] | c2["initial"]),
        translucent={**c1["translucent"], **c2["translucent"]},
        delta={**c1["delta"], **c2["delta"]},
        end_delta={**c1["end"], **c2["end"]},
    )


def disjoint_shuffle(a1: Automaton, a2: Automaton) -> Automaton:
    """Automaton for the shuffle of two languages over disjoint alphabets.

    The first machine runs with the second alphabet made translucent; where
    it would accept it restarts the second machine instead, which in turn
    ignores whatever is left of the first alphabet.
    """
    for a in (a1, a2):
        require_nonreturning(a, "disjoint_shuffle")
        require_valid(a)
    overlap = set(a1.alphabet) & set(a2.alphabet)
    if overlap:
        raise AlphabetError(f"alphabets overlap in {{{', '.join(sorted(overlap))}}}")
    n1, n2 = _apart(a1, a2)
    c1, c2 = _rename(a1, n1), _rename(a2, n2)
    s1, s2 = frozenset(a1.alphabet), frozenset(a2.alphabet)
    translucent = {q: t | s2 for q, t in c1["translucent"].items()}
    translucent.update({q: t | s1 for q, t in c2["translucent"].items()})
    i2 = [n2[q] for q in a2.initial_ordered]
    end = {q: (goto(*i2) if act.is_accept else act) for q, act in c1["end"].items()}
    end.update(c2["end"])
    return Automaton(
        kind=Kind.NRNFAWTL,
        states=tuple(c1["states"] + c2["states"]),
        alphabet=a1.alphabet + a2.alphabet,
        initial=frozenset(c1["initial"]),
        translucent=translucent,
        delta={**c1["delta"], **c2["delta"]},
        end_delta=end,
    )


def complement_deterministic(aut: Automaton, sink: str = "q_+") -> Automaton:
    """nrDFAwtl for the complement of ``L(aut)``.

    The input is normalised first so that it has no infinite computations;
    then every way of getting stuck leads to a new accepting state and the
    former accept steps become rejections.
    """
    require_nonreturning(aut, "complement_deterministic")
    require_deterministic(aut)
    base = normalize(aut)
    qp = _fresh(sink, set(base.states))
    sigma = frozenset(base.alphabet)
    delta = dict(base.delta)
    end: dict[str, EndAction] = {}
    for q in base.states:
        tau = base.tau(q)
        for a in base.alphabet:
            if a not in tau and not base.targets(q, a):
                delta[(q, a)] = frozenset([qp])
        act = base.end_action(q)
        if act.is_accept:
            end[q] = REJECT
        elif act.is_reject:
            end[q] = goto(qp)
        else:
            end[q] = act
    end[qp] = ACCEPT
    translucent = dict(base.translucent)
    translucent[qp] = sigma
    return Automaton(
        kind=Kind.NRDFAWTL,
        states=base.states + (qp,),
        alphabet=base.alphabet,
        initial=base.initial,
        translucent=translucent,
        delta=delta,
        end_delta=end,
    )


# -- unary alphabets -------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalNFA:
    """Ordinary NFA with empty-word moves, keyed ``(state, letter or EPSILON)``."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: frozenset[str]
    final: frozenset[str]
    transitions: Mapping[tuple[str, str], frozenset[str]] = field(default_factory=dict)

    def closure(self, states: Iterable[str]) -> set[str]:
        out = set(states)
        todo = list(out)
        while todo:
            q = todo.pop()
            for p in self.transitions.get((q, EPSILON), ()):
                if p not in out:
                    out.add(p)
                    todo.append(p)
        return out

    def accepts(self, word: str) -> bool:
        current = self.closure(self.initial)
        for a in word:
            step = set()
            for q in current:
                step |= self.transitions.get((q, a), frozenset())
            current = self.closure(step)
            if not current:
                return False
        return bool(current & self.final)

    def epsilon_moves(self) -> dict[str, frozenset[str]]:
        return {q: s for (q, a), s in self.transitions.items() if a == EPSILON and s}

    def to_text(self) -> str:
        order = {q: i for i, q in enumerate(self.states)}
        srt = lambda qs: sorted(qs, key=order.__getitem__)
        lines = [
            "@type NFA",
            " ".join(["@alphabet", *self.alphabet]),
            " ".join(["@states", *self.states]),
            " ".join(["@initial", *srt(self.initial)]),
            " ".join(["@final", *srt(self.final)]),
        ]
        for q in self.states:
            for a in (*self.alphabet, EPSILON):
                succ = self.transitions.get((q, a))
                if succ:
                    lines.append(" ".join(["@delta", q, a or "EPS", "->", *srt(succ)]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ClassicalNFA":
        """Inverse of :meth:`to_text`; raises ``ValueError`` on malformed input."""
        head: dict[str, list[str]] = {}
        trans: dict[tuple[str, str], frozenset[str]] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            tokens = raw.split("#", 1)[0].split()
            if not tokens:
                continue
            if tokens[0] == "@delta":
                if len(tokens) < 5 or tokens[3] != "->":
                    raise ValueError(f"line {lineno}: expected '@delta q a -> p ...'")
                a = EPSILON if tokens[2] == "EPS" else tokens[2]
                trans[(tokens[1], a)] = frozenset(tokens[4:])
            elif tokens[0] in ("@type", "@alphabet", "@states", "@initial", "@final"):
                head[tokens[0]] = tokens[1:]
            else:
                raise ValueError(f"line {lineno}: unknown directive {tokens[0]!r}")
        if head.get("@type") != ["NFA"]:
            raise ValueError("expected '@type NFA'")
        states = tuple(head.get("@states", ()))
        known = set(states)
        for (q, _), succ in trans.items():
            if q not in known or not succ <= known:
                raise ValueError(f"transition from {q!r} mentions an unknown state")
        return cls(
            states=states,
            alphabet=tuple(head.get("@alphabet", ())),
            initial=frozenset(head.get("@initial", ())),
            final=frozenset(head.get("@final", ())),
            transitions=trans,
        )


def unary_to_nfa(aut: Automaton) -> ClassicalNFA:
    """Classical NFA for the language of a unary non-returning automaton.

    Runs on the normal form: letter steps are copied, and an end-marker
    step of a state that cannot see the letter becomes an empty-word move.
    A state that can see the letter meets the end marker only on an empty
    tape, so its end-marker behaviour is captured by making it final when
    its chain of end-marker steps reaches an accepting one.
    """
    require_nonreturning(aut, "unary_to_nfa")
    if len(aut.alphabet) != 1:
        raise AlphabetError(f"unary_to_nfa needs a one-letter alphabet, got {len(aut.alphabet)}")
    (a,) = aut.alphabet
    base = normalize(aut)
    trans: dict[tuple[str, str], frozenset[str]] = {}
    for q in base.states:
        succ = base.delta.get((q, a))
        if succ:
            trans[(q, a)] = succ
        act = base.end_action(q)
        if act.is_goto and base.tau(q) == {a}:
            trans[(q, EPSILON)] = frozenset(act.targets)

    # states accepting the empty tape through end-marker steps alone
    final = {q for q in base.states if base.end_action(q).is_accept}
    changed = True
    while changed:
        changed = False
        for q in base.states:
            act = base.end_action(q)
            if q not in final and act.is_goto and final & set(act.targets):
                final.add(q)
                changed = True
    return ClassicalNFA(
        states=base.states,
        alphabet=base.alphabet,
        initial=base.initial,
        final=frozenset(final),
        transitions=trans,
    )
