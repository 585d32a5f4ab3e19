# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled membership kernel; same loop and op counts as ``fast._py_run``."""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset


cdef enum:
    E_REJECT = 0
    E_ACCEPT = 1
    E_GOTO = 2


cdef class Kernel:
    cdef int nq, nl, init, returning
    cdef int *delta
    cdef int *vis
    cdef int *nvis
    cdef int *endk
    cdef int *endt
    # per-run scratch, grown on demand
    cdef int cap
    cdef int *grouped    # positions grouped by letter, ascending within group
    cdef int *rank       # rank of a position within its letter group
    cdef int *tree       # Fenwick trees, one segment per letter (1-based)
    cdef int *start
    cdef int *cnt
    cdef int *live
    cdef int *top        # highest power of two <= cnt
    cdef long *stamp     # end-marker visit epoch per state
    cdef long epoch

    def __cinit__(self, int nq, int nl, int init, int returning, final,
                  visible, delta, end_kind, end_target):
        cdef int q, a, i
        self.nq = nq
        self.nl = nl
        self.init = init
        self.returning = returning
        self.delta = <int *> malloc(max(1, nq * nl) * sizeof(int))
        self.vis = <int *> malloc(max(1, nq * nl) * sizeof(int))
        self.nvis = <int *> malloc(max(1, nq) * sizeof(int))
        self.endk = <int *> malloc(max(1, nq) * sizeof(int))
        self.endt = <int *> malloc(max(1, nq) * sizeof(int))
        self.stamp = <long *> malloc(max(1, nq) * sizeof(long))
        self.start = <int *> malloc(max(1, nl) * sizeof(int))
        self.cnt = <int *> malloc(max(1, nl) * sizeof(int))
        self.live = <int *> malloc(max(1, nl) * sizeof(int))
        self.top = <int *> malloc(max(1, nl) * sizeof(int))
        self.cap = 0
        self.grouped = NULL
        self.rank = NULL
        self.tree = NULL
        self.epoch = 0
        for q in range(nq):
            self.stamp[q] = -1
            row = visible[q]
            self.nvis[q] = len(row)
            for i in range(len(row)):
                self.vis[q * nl + i] = row[i]
            for a in range(nl):
                self.delta[q * nl + a] = delta[q * nl + a]
            self.endk[q] = end_kind[q]
            self.endt[q] = end_target[q]
            if returning:
                self.endk[q] = E_ACCEPT if final[q] else E_REJECT

    def __dealloc__(self):
        free(self.delta)
        free(self.vis)
        free(self.nvis)
        free(self.endk)
        free(self.endt)
        free(self.stamp)
        free(self.start)
        free(self.cnt)
        free(self.live)
        free(self.top)
        free(self.grouped)
        free(self.rank)
        free(self.tree)

    cdef int _reserve(self, int n) except -1:
        if n <= self.cap:
            return 0
        cdef int newcap = max(n, 2 * self.cap, 16)
        self.grouped = <int *> realloc(self.grouped, newcap * sizeof(int))
        self.rank = <int *> realloc(self.rank, newcap * sizeof(int))
        self.tree = <int *> realloc(self.tree, (newcap + self.nl) * sizeof(int))
        if self.grouped == NULL or self.rank == NULL or self.tree == NULL:
            raise MemoryError()
        self.cap = newcap
        return 0

    cdef inline int _succ(self, int a, int p) nogil:
        cdef int c = self.cnt[a]
        if self.live[a] == 0:
            return -1
        cdef int *g = self.grouped + self.start[a]
        # lower bound of p among the letter's positions
        cdef int lo = 0, hi = c, mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if g[mid] < p:
                lo = mid + 1
            else:
                hi = mid
        cdef int *t = self.tree + self.start[a] + a  # 1-based segment
        cdef int k = 1
        cdef int r = lo
        while r > 0:
            k += t[r]
            r &= r - 1
        if k > self.live[a]:
            return -1
        cdef int idx = 0, step = self.top[a], nxt
        while step:
            nxt = idx + step
            if nxt <= c and t[nxt] < k:
                idx = nxt
                k -= t[nxt]
            step >>= 1
        return g[idx]

    cdef inline void _remove(self, const unsigned char[:] word, int p) nogil:
        cdef int a = word[p]
        cdef int c = self.cnt[a]
        cdef int *t = self.tree + self.start[a] + a
        cdef int i = self.rank[p] + 1
        self.live[a] -= 1
        while i <= c:
            t[i] -= 1
            i += i & -i

    def run(self, const unsigned char[:] word):
        """Return ``(verdict, deletions, end_events, index_ops)``."""
        cdef int n = word.shape[0]
        cdef int nl = self.nl
        cdef int a, i, p, s, acc
        self._reserve(n if n > 0 else 1)
        memset(self.cnt, 0, nl * sizeof(int))
        for p in range(n):
            if word[p] >= nl:
                raise ValueError("letter code out of range")
            self.cnt[word[p]] += 1
        acc = 0
        for a in range(nl):
            self.start[a] = acc
            acc += self.cnt[a]
            self.live[a] = self.cnt[a]
            s = 1
            while s * 2 <= self.cnt[a]:
                s *= 2
            self.top[a] = s if self.cnt[a] > 0 else 0
            # all-ones Fenwick segment
            self.tree[self.start[a] + a] = 0
            for i in range(1, self.cnt[a] + 1):
                self.tree[self.start[a] + a + i] = i & -i
            self.cnt[a] = 0
        for p in range(n):
            a = word[p]
            self.rank[p] = self.cnt[a]
            self.grouped[self.start[a] + self.cnt[a]] = p
            self.cnt[a] += 1

        cdef int state = self.init
        cdef int head = 0
        cdef int best, best_a, nxt, kind
        cdef long deletions = 0, end_events = 0, ops = 0
        self.epoch += 1
        while True:
            best = n
            best_a = -1
            for i in range(self.nvis[state]):
                a = self.vis[state * nl + i]
                ops += 1
                p = self._succ(a, head)
                if p >= 0 and p < best:
                    best = p
                    best_a = a
            if best_a >= 0:
                nxt = self.delta[state * nl + best_a]
                if nxt < 0:
                    return 0, deletions, end_events, ops
                ops += 1
                self._remove(word, best)
                deletions += 1
                self.epoch += 1
                state = nxt
                head = 0 if self.returning else best
                continue
            kind = self.endk[state]
            if kind == E_ACCEPT:
                return 1, deletions, end_events, ops
            if kind == E_REJECT:
                return 0, deletions, end_events, ops
            if self.stamp[state] == self.epoch:
                return 0, deletions, end_events, ops
            self.stamp[state] = self.epoch
            end_events += 1
            state = self.endt[state]
            head = 0
