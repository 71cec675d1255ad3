# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled ZDD kernel.

Mirror of ``_kernel_py.ZddKernel``: node arena in flat int32 vectors, an
open-addressing unique table keyed by (var, hi, lo) and an unbounded
open-addressing operation cache keyed by (op, f, g).
"""

from libc.stdint cimport int32_t, uint32_t, uint64_t
from libcpp.vector cimport vector

cdef enum:
    BOT = 0
    TOP = 1

cdef enum:
    OP_UNION = 1
    OP_INTER = 2
    OP_DIFF = 3
    OP_JOIN = 4
    OP_MEET = 5
    OP_NONSUP = 6
    OP_CHOOSE = 7
    OP_CHANGE = 8


cdef struct Entry:
    int32_t a
    int32_t b
    int32_t c
    int32_t val


cdef inline uint64_t _hash3(int32_t a, int32_t b, int32_t c) noexcept nogil:
    cdef uint64_t h = <uint64_t><uint32_t>a
    h = h * 0x9E3779B97F4A7C15ULL + <uint64_t><uint32_t>b
    h = h * 0xC2B2AE3D27D4EB4FULL + <uint64_t><uint32_t>c
    h ^= h >> 29
    h *= 0xBF58476D1CE4E5B9ULL
    h ^= h >> 32
    return h


cdef class _Table:
    cdef vector[Entry] slots
    cdef size_t mask
    cdef size_t used

    def __cinit__(self, size_t capacity=4096):
        cdef Entry empty
        empty.a = 0
        empty.b = 0
        empty.c = 0
        empty.val = -1
        self.slots.assign(capacity, empty)
        self.mask = capacity - 1
        self.used = 0

    cdef inline int32_t get(self, int32_t a, int32_t b, int32_t c) noexcept:
        cdef size_t i = _hash3(a, b, c) & self.mask
        cdef Entry* e
        while True:
            e = &self.slots[i]
            if e.val < 0:
                return -1
            if e.a == a and e.b == b and e.c == c:
                return e.val
            i = (i + 1) & self.mask

    cdef void put(self, int32_t a, int32_t b, int32_t c, int32_t val) noexcept:
        cdef size_t i
        cdef Entry* e
        if 2 * (self.used + 1) > self.slots.size():
            self._grow()
        i = _hash3(a, b, c) & self.mask
        while True:
            e = &self.slots[i]
            if e.val < 0:
                e.a = a
                e.b = b
                e.c = c
                e.val = val
                self.used += 1
                return
            if e.a == a and e.b == b and e.c == c:
                e.val = val
                return
            i = (i + 1) & self.mask

    cdef void _grow(self) noexcept:
        cdef vector[Entry] old
        cdef Entry empty
        cdef size_t k, i
        old.swap(self.slots)
        empty.a = 0
        empty.b = 0
        empty.c = 0
        empty.val = -1
        self.slots.assign(old.size() * 2, empty)
        self.mask = self.slots.size() - 1
        for k in range(old.size()):
            if old[k].val >= 0:
                i = _hash3(old[k].a, old[k].b, old[k].c) & self.mask
                while self.slots[i].val >= 0:
                    i = (i + 1) & self.mask
                self.slots[i] = old[k]


cdef class ZddKernel:
    cdef vector[int32_t] _var
    cdef vector[int32_t] _hi
    cdef vector[int32_t] _lo
    cdef _Table _unique
    cdef _Table _cache
    cdef readonly int num_vars
    cdef int32_t _level_terminal

    backend = "compiled"

    def __cinit__(self, int num_vars):
        self.num_vars = num_vars
        self._level_terminal = num_vars + 1
        for _ in range(2):
            self._var.push_back(self._level_terminal)
            self._hi.push_back(-1)
            self._lo.push_back(-1)
        self._unique = _Table(1 << 12)
        self._cache = _Table(1 << 14)

    def __len__(self):
        return self._var.size()

    def var(self, int32_t f):
        return self._var[f]

    def hi(self, int32_t f):
        return self._hi[f]

    def lo(self, int32_t f):
        return self._lo[f]

    def cache_size(self):
        return self._cache.used

    # -- node store ---------------------------------------------------------

    cdef int32_t _mk(self, int32_t v, int32_t hi, int32_t lo) noexcept:
        cdef int32_t r
        if hi == BOT:
            return lo
        r = self._unique.get(v, hi, lo)
        if r < 0:
            r = <int32_t>self._var.size()
            self._var.push_back(v)
            self._hi.push_back(hi)
            self._lo.push_back(lo)
            self._unique.put(v, hi, lo, r)
        return r

    def mk(self, int32_t v, int32_t hi, int32_t lo):
        return self._mk(v, hi, lo)

    # -- binary operations --------------------------------------------------

    cdef int32_t _union(self, int32_t f, int32_t g) noexcept:
        cdef int32_t r, t, vf, vg, a, b
        if f == BOT:
            return g
        if g == BOT or f == g:
            return f
        if f > g:
            t = f; f = g; g = t
        r = self._cache.get(OP_UNION, f, g)
        if r >= 0:
            return r
        vf = self._var[f]
        vg = self._var[g]
        if vf < vg:
            r = self._mk(vf, self._hi[f], self._union(self._lo[f], g))
        elif vf > vg:
            r = self._mk(vg, self._hi[g], self._union(f, self._lo[g]))
        else:
            a = self._union(self._hi[f], self._hi[g])
            b = self._union(self._lo[f], self._lo[g])
            r = self._mk(vf, a, b)
        self._cache.put(OP_UNION, f, g, r)
        return r

    cdef int32_t _inter(self, int32_t f, int32_t g) noexcept:
        cdef int32_t r, t, vf, vg, a, b
        if f == BOT or g == BOT:
            return BOT
        if f == g:
            return f
        if f > g:
            t = f; f = g; g = t
        r = self._cache.get(OP_INTER, f, g)
        if r >= 0:
            return r
        vf = self._var[f]
        vg = self._var[g]
        if vf < vg:
            r = self._inter(self._lo[f], g)
        elif vf > vg:
            r = self._inter(f, self._lo[g])
        else:
            a = self._inter(self._hi[f], self._hi[g])
            b = self._inter(self._lo[f], self._lo[g])
            r = self._mk(vf, a, b)
        self._cache.put(OP_INTER, f, g, r)
        return r

    cdef int32_t _diff(self, int32_t f, int32_t g) noexcept:
        cdef int32_t r, vf, vg, a, b
        if f == BOT or f == g:
            return BOT
        if g == BOT:
            return f
        r = self._cache.get(OP_DIFF, f, g)
        if r >= 0:
            return r
        vf = self._var[f]
        vg = self._var[g]
        if vf < vg:
            r = self._mk(vf, self._hi[f], self._diff(self._lo[f], g))
        elif vf > vg:
            r = self._diff(f, self._lo[g])
        else:
            a = self._diff(self._hi[f], self._hi[g])
            b = self._diff(self._lo[f], self._lo[g])
            r = self._mk(vf, a, b)
        self._cache.put(OP_DIFF, f, g, r)
        return r

    cdef int32_t _join(self, int32_t f, int32_t g) noexcept:
        cdef int32_t r, t, vf, vg, hf, lf, hg, lg, hi, a, b
        if f == BOT or g == BOT:
            return BOT
        if f == TOP:
            return g
        if g == TOP:
            return f
        if f > g:
            t = f; f = g; g = t
        r = self._cache.get(OP_JOIN, f, g)
        if r >= 0:
            return r
        vf = self._var[f]
        vg = self._var[g]
        if vf < vg:
            a = self._join(self._hi[f], g)
            b = self._join(self._lo[f], g)
            r = self._mk(vf, a, b)
        elif vf > vg:
            a = self._join(f, self._hi[g])
            b = self._join(f, self._lo[g])
            r = self._mk(vg, a, b)
        else:
            hf = self._hi[f]; lf = self._lo[f]; hg = self._hi[g]; lg = self._lo[g]
            a = self._join(hf, hg)
            b = self._join(hf, lg)
            hi = self._union(a, b)
            a = self._join(lf, hg)
            hi = self._union(hi, a)
            b = self._join(lf, lg)
            r = self._mk(vf, hi, b)
        self._cache.put(OP_JOIN, f, g, r)
        return r

    cdef int32_t _meet(self, int32_t f, int32_t g) noexcept:
        cdef int32_t r, t, vf, vg, hf, lf, hg, lg, lo, a, b
        if f == BOT or g == BOT:
            return BOT
        if f == TOP or g == TOP:
            return TOP
        if f > g:
            t = f; f = g; g = t
        r = self._cache.get(OP_MEET, f, g)
        if r >= 0:
            return r
        vf = self._var[f]
        vg = self._var[g]
        if vf < vg:
            a = self._meet(self._hi[f], g)
            b = self._meet(self._lo[f], g)
            r = self._union(a, b)
        elif vf > vg:
            a = self._meet(f, self._hi[g])
            b = self._meet(f, self._lo[g])
            r = self._union(a, b)
        else:
            hf = self._hi[f]; lf = self._lo[f]; hg = self._hi[g]; lg = self._lo[g]
            a = self._meet(hf, lg)
            b = self._meet(lf, hg)
            lo = self._union(a, b)
            a = self._meet(lf, lg)
            lo = self._union(lo, a)
            a = self._meet(hf, hg)
            r = self._mk(vf, a, lo)
        self._cache.put(OP_MEET, f, g, r)
        return r

    cdef bint _contains_empty(self, int32_t f) noexcept:
        while f > TOP:
            f = self._lo[f]
        return f == TOP

    cdef int32_t _nonsup(self, int32_t f, int32_t g) noexcept:
        cdef int32_t r, vf, vg, lg, hi, a, b
        if g == BOT:
            return f
        if f == BOT or g == TOP or f == g:
            return BOT
        if f == TOP:
            return BOT if self._contains_empty(g) else TOP
        r = self._cache.get(OP_NONSUP, f, g)
        if r >= 0:
            return r
        vf = self._var[f]
        vg = self._var[g]
        if vf > vg:
            r = self._nonsup(f, self._lo[g])
        elif vf < vg:
            a = self._nonsup(self._hi[f], g)
            b = self._nonsup(self._lo[f], g)
            r = self._mk(vf, a, b)
        else:
            lg = self._lo[g]
            a = self._nonsup(self._hi[f], self._hi[g])
            hi = self._nonsup(a, lg)
            b = self._nonsup(self._lo[f], lg)
            r = self._mk(vf, hi, b)
        self._cache.put(OP_NONSUP, f, g, r)
        return r

    cdef int32_t _change(self, int32_t f, int32_t v) noexcept:
        cdef int32_t r, vf, a, b
        if f == BOT:
            return BOT
        r = self._cache.get(OP_CHANGE, f, v)
        if r >= 0:
            return r
        vf = self._var[f]
        if vf > v:
            r = self._mk(v, f, BOT)
        else:
            a = self._change(self._hi[f], v)
            b = self._change(self._lo[f], v)
            r = self._mk(vf, a, b)
        self._cache.put(OP_CHANGE, f, v, r)
        return r

    cdef int32_t _choose(self, int32_t f, int32_t k) noexcept:
        cdef int32_t r, q, lo
        if k == 1:
            return f
        if f == BOT:
            return TOP if k == 0 else BOT
        r = self._cache.get(OP_CHOOSE, f, k)
        if r >= 0:
            return r
        lo = self._lo[f]
        r = self._choose(lo, k)
        if k > 0:
            q = self._choose(lo, k - 1)
            r = self._mk(self._var[f], q, r)
        self._cache.put(OP_CHOOSE, f, k, r)
        return r

    def union(self, int32_t f, int32_t g):
        return self._union(f, g)

    def intersection(self, int32_t f, int32_t g):
        return self._inter(f, g)

    def difference(self, int32_t f, int32_t g):
        return self._diff(f, g)

    def join(self, int32_t f, int32_t g):
        return self._join(f, g)

    def meet(self, int32_t f, int32_t g):
        return self._meet(f, g)

    def nonsupersets(self, int32_t f, int32_t g):
        return self._nonsup(f, g)

    def change(self, int32_t f, int32_t v):
        return self._change(f, v)

    def choose(self, int32_t f, int32_t k):
        return self._choose(f, k)

    def contains_empty(self, int32_t f):
        return self._contains_empty(f)

    def is_singletons(self, int32_t f):
        while f > TOP:
            if self._hi[f] != TOP:
                return False
            f = self._lo[f]
        return f == BOT

    # -- counting / shape ---------------------------------------------------

    def reachable(self, int32_t f):
        cdef vector[int32_t] stack
        cdef int32_t u, c
        cdef set seen
        if f <= TOP:
            return [f]
        seen = {BOT, TOP, f}
        stack.push_back(f)
        while not stack.empty():
            u = stack.back()
            stack.pop_back()
            for c in (self._hi[u], self._lo[u]):
                if c not in seen:
                    seen.add(c)
                    if c > TOP:
                        stack.push_back(c)
        return sorted(seen)

    def node_count(self, int32_t f):
        return len(self.reachable(f))

    def support(self, int32_t f):
        return sorted({self._var[u] for u in self.reachable(f) if u > TOP})

    def count(self, int32_t f):
        # children always carry smaller ids than their parents
        cdef dict counts = {BOT: 0, TOP: 1}
        cdef int32_t u
        for u in self.reachable(f):
            if u > TOP:
                counts[u] = counts[self._hi[u]] + counts[self._lo[u]]
        return counts[f]

    cdef int32_t _rename(self, int32_t f, vector[int32_t]& perm,
                         vector[int32_t]& memo) noexcept:
        cdef int32_t h, lo, r
        if f <= TOP:
            return f
        if <size_t>f < memo.size() and memo[f] >= 0:
            return memo[f]
        h = self._rename(self._hi[f], perm, memo)
        lo = self._rename(self._lo[f], perm, memo)
        r = self._union(lo, self._change(h, perm[self._var[f]]))
        memo[f] = r
        return r

    def rename(self, int32_t f, dict mapping):
        cdef vector[int32_t] perm
        cdef vector[int32_t] memo
        cdef int32_t v
        perm.resize(self.num_vars + 2)
        for v in range(self.num_vars + 2):
            perm[v] = v
        for k, val in mapping.items():
            perm[k] = val
        memo.assign(self._var.size(), -1)
        return self._rename(f, perm, memo)
