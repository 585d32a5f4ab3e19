"""Per-letter ordered sets of live tape positions.

Each letter owns the sorted array of positions where it occurs plus a
Fenwick tree of liveness bits over that array.  Positions are only ever
deleted, so this gives an ordered set with ``O(log n)`` successor and
delete without rebalancing.
"""
from __future__ import annotations

from bisect import bisect_left
from typing import Sequence

__all__ = ["PositionIndex", "first_visible"]


class PositionIndex:
    """Live positions ``0..n-1`` of a word, grouped by letter.

    ``ops`` counts successor and delete calls; the engines report it as
    their machine-independent cost measure.
    """

    def __init__(self, word: Sequence, alphabet: Sequence[str] | None = None, nletters: int | None = None):
        if alphabet is None:
            # word is already a sequence of small integer codes
            codes = list(word)
            if nletters is None:
                nletters = max(codes) + 1 if codes else 0
            self.alphabet = None
            self._code = None
        else:
            self.alphabet = tuple(alphabet)
            self._code = {a: i for i, a in enumerate(self.alphabet)}
            codes = [self._code[c] for c in word]
            nletters = len(self.alphabet)
        self.codes = codes
        self.ops = 0
        pos = [[] for _ in range(nletters)]
        rank = [0] * len(codes)
        for p, a in enumerate(codes):
            rank[p] = len(pos[a])
            pos[a].append(p)
        self._pos = pos
        self._rank = rank
        # all-ones Fenwick tree: node i covers lowbit(i) ones
        self._tree = [[0] + [i & -i for i in range(1, len(ps) + 1)] for ps in pos]
        self._live = [len(ps) for ps in pos]
        self._alive = [True] * len(codes)
        self._step = []
        for ps in pos:
            s = 1
            while s * 2 <= len(ps):
                s *= 2
            self._step.append(s if ps else 0)

    def __len__(self) -> int:
        return sum(self._live)

    def __contains__(self, p: int) -> bool:
        return 0 <= p < len(self._alive) and self._alive[p]

    def live_positions(self, letter=None) -> list[int]:
        if letter is None:
            return [p for p, ok in enumerate(self._alive) if ok]
        a = self._code[letter] if self._code is not None else letter
        return [p for p in self._pos[a] if self._alive[p]]

    def _prefix(self, a: int, r: int) -> int:
        tree = self._tree[a]
        s = 0
        while r > 0:
            s += tree[r]
            r &= r - 1
        return s

    def succ(self, a: int, p: int) -> int:
        """Least live position ``>= p`` holding letter code ``a``, or ``-1``."""
        self.ops += 1
        if a >= len(self._pos) or self._live[a] == 0:
            return -1
        ps = self._pos[a]
        k = self._prefix(a, bisect_left(ps, p)) + 1
        if k > self._live[a]:
            return -1
        tree = self._tree[a]
        m = len(ps)
        idx = 0
        step = self._step[a]
        while step:
            nxt = idx + step
            if nxt <= m and tree[nxt] < k:
                idx = nxt
                k -= tree[nxt]
            step >>= 1
        return ps[idx]

    def remove(self, p: int) -> None:
        """Delete live position ``p`` from its letter's set."""
        self.ops += 1
        if not self._alive[p]:
            raise KeyError(f"position {p} is not live")
        self._alive[p] = False
        a = self.codes[p]
        self._live[a] -= 1
        tree = self._tree[a]
        i = self._rank[p] + 1
        m = len(tree) - 1
        while i <= m:
            tree[i] -= 1
            i += i & -i

    # letter-level API

    def successor_at_or_after(self, letter, p: int) -> int | None:
        a = self._code.get(letter, len(self._pos)) if self._code is not None else letter
        q = self.succ(a, p)
        return None if q < 0 else q

    def delete(self, p: int) -> None:
        self.remove(p)


def first_visible(idx: PositionIndex, head: int, translucent) -> tuple[int, str] | None:
    """Leftmost live position ``>= head`` whose letter is not translucent."""
    best = -1
    best_letter = None
    for letter in idx.alphabet:
        if letter in translucent:
            continue
        p = idx.successor_at_or_after(letter, head)
        if p is not None and (best < 0 or p < best):
            best, best_letter = p, letter
    if best < 0:
        return None
    return best, best_letter
