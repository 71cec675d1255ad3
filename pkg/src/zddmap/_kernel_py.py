"""Pure-Python ZDD kernel.

Same surface as the compiled ``_kernel`` extension; used when the extension
is not built or when ``ZDDMAP_PURE_PYTHON`` is set.  Nodes are plain ints:
0 is the empty family, 1 is the unit family, everything else indexes the
``var``/``hi``/``lo`` arrays.
"""

BOT = 0
TOP = 1

_UNION = 1
_INTER = 2
_DIFF = 3
_JOIN = 4
_MEET = 5
_NONSUP = 6
_CHOOSE = 7
_CHANGE = 8


class ZddKernel:
    backend = "python"

    def __init__(self, num_vars):
        self.num_vars = num_vars
        # terminals sort below every variable
        self._level_terminal = num_vars + 1
        self._var = [self._level_terminal, self._level_terminal]
        self._hi = [-1, -1]
        self._lo = [-1, -1]
        self._unique = {}
        self._cache = {}

    # -- node store ---------------------------------------------------------

    def __len__(self):
        return len(self._var)

    def var(self, f):
        return self._var[f]

    def hi(self, f):
        return self._hi[f]

    def lo(self, f):
        return self._lo[f]

    def cache_size(self):
        return len(self._cache)

    def mk(self, v, hi, lo):
        if hi == BOT:
            return lo
        key = (v, hi, lo)
        r = self._unique.get(key)
        if r is None:
            r = len(self._var)
            self._var.append(v)
            self._hi.append(hi)
            self._lo.append(lo)
            self._unique[key] = r
        return r

    # -- binary operations --------------------------------------------------

    def union(self, f, g):
        if f == BOT:
            return g
        if g == BOT or f == g:
            return f
        if f > g:
            f, g = g, f
        key = (_UNION, f, g)
        r = self._cache.get(key)
        if r is not None:
            return r
        vf, vg = self._var[f], self._var[g]
        if vf < vg:
            r = self.mk(vf, self._hi[f], self.union(self._lo[f], g))
        elif vf > vg:
            r = self.mk(vg, self._hi[g], self.union(f, self._lo[g]))
        else:
            r = self.mk(vf, self.union(self._hi[f], self._hi[g]),
                        self.union(self._lo[f], self._lo[g]))
        self._cache[key] = r
        return r

    def intersection(self, f, g):
        if f == BOT or g == BOT:
            return BOT
        if f == g:
            return f
        if f > g:
            f, g = g, f
        key = (_INTER, f, g)
        r = self._cache.get(key)
        if r is not None:
            return r
        vf, vg = self._var[f], self._var[g]
        if vf < vg:
            r = self.intersection(self._lo[f], g)
        elif vf > vg:
            r = self.intersection(f, self._lo[g])
        else:
            r = self.mk(vf, self.intersection(self._hi[f], self._hi[g]),
                        self.intersection(self._lo[f], self._lo[g]))
        self._cache[key] = r
        return r

    def difference(self, f, g):
        if f == BOT or f == g:
            return BOT
        if g == BOT:
            return f
        key = (_DIFF, f, g)
        r = self._cache.get(key)
        if r is not None:
            return r
        vf, vg = self._var[f], self._var[g]
        if vf < vg:
            r = self.mk(vf, self._hi[f], self.difference(self._lo[f], g))
        elif vf > vg:
            r = self.difference(f, self._lo[g])
        else:
            r = self.mk(vf, self.difference(self._hi[f], self._hi[g]),
                        self.difference(self._lo[f], self._lo[g]))
        self._cache[key] = r
        return r

    def join(self, f, g):
        if f == BOT or g == BOT:
            return BOT
        if f == TOP:
            return g
        if g == TOP:
            return f
        if f > g:
            f, g = g, f
        key = (_JOIN, f, g)
        r = self._cache.get(key)
        if r is not None:
            return r
        vf, vg = self._var[f], self._var[g]
        if vf < vg:
            r = self.mk(vf, self.join(self._hi[f], g), self.join(self._lo[f], g))
        elif vf > vg:
            r = self.mk(vg, self.join(f, self._hi[g]), self.join(f, self._lo[g]))
        else:
            hf, lf, hg, lg = self._hi[f], self._lo[f], self._hi[g], self._lo[g]
            hi = self.union(self.union(self.join(hf, hg), self.join(hf, lg)),
                            self.join(lf, hg))
            r = self.mk(vf, hi, self.join(lf, lg))
        self._cache[key] = r
        return r

    def meet(self, f, g):
        if f == BOT or g == BOT:
            return BOT
        if f == TOP or g == TOP:
            return TOP
        if f > g:
            f, g = g, f
        key = (_MEET, f, g)
        r = self._cache.get(key)
        if r is not None:
            return r
        vf, vg = self._var[f], self._var[g]
        if vf < vg:
            r = self.union(self.meet(self._hi[f], g), self.meet(self._lo[f], g))
        elif vf > vg:
            r = self.union(self.meet(f, self._hi[g]), self.meet(f, self._lo[g]))
        else:
            hf, lf, hg, lg = self._hi[f], self._lo[f], self._hi[g], self._lo[g]
            lo = self.union(self.union(self.meet(hf, lg), self.meet(lf, hg)),
                            self.meet(lf, lg))
            r = self.mk(vf, self.meet(hf, hg), lo)
        self._cache[key] = r
        return r

    def nonsupersets(self, f, g):
        if g == BOT:
            return f
        if f == BOT or g == TOP or f == g:
            return BOT
        if f == TOP:
            # {∅} survives unless ∅ ∈ g
            return BOT if self.contains_empty(g) else TOP
        key = (_NONSUP, f, g)
        r = self._cache.get(key)
        if r is not None:
            return r
        vf, vg = self._var[f], self._var[g]
        if vf > vg:
            r = self.nonsupersets(f, self._lo[g])
        elif vf < vg:
            r = self.mk(vf, self.nonsupersets(self._hi[f], g),
                        self.nonsupersets(self._lo[f], g))
        else:
            lg = self._lo[g]
            hi = self.nonsupersets(self.nonsupersets(self._hi[f], self._hi[g]), lg)
            r = self.mk(vf, hi, self.nonsupersets(self._lo[f], lg))
        self._cache[key] = r
        return r

    def contains_empty(self, f):
        while f > TOP:
            f = self._lo[f]
        return f == TOP

    def change(self, f, v):
        """Add variable ``v`` to every set of ``f``; ``v`` must be absent from f."""
        if f == BOT:
            return BOT
        key = (_CHANGE, f, v)
        r = self._cache.get(key)
        if r is not None:
            return r
        vf = self._var[f]
        if vf > v:
            r = self.mk(v, f, BOT)
        else:
            r = self.mk(vf, self.change(self._hi[f], v), self.change(self._lo[f], v))
        self._cache[key] = r
        return r

    # -- counting / shape ---------------------------------------------------

    def is_singletons(self, f):
        while f > TOP:
            if self._hi[f] != TOP:
                return False
            f = self._lo[f]
        return f == BOT

    def choose(self, f, k):
        if k == 1:
            return f
        if f == BOT:
            return TOP if k == 0 else BOT
        key = (_CHOOSE, f, k)
        r = self._cache.get(key)
        if r is not None:
            return r
        lo = self._lo[f]
        r = self.choose(lo, k)
        if k > 0:
            q = self.choose(lo, k - 1)
            r = self.mk(self._var[f], q, r)
        self._cache[key] = r
        return r

    def count(self, f):
        memo = {BOT: 0, TOP: 1}
        return self._count(f, memo)

    def _count(self, f, memo):
        r = memo.get(f)
        if r is None:
            r = self._count(self._hi[f], memo) + self._count(self._lo[f], memo)
            memo[f] = r
        return r

    def reachable(self, f):
        """Sorted list of node ids reachable from ``f`` (terminals included)."""
        seen = {BOT, TOP} if f > TOP else {f}
        stack = [f] if f > TOP else []
        while stack:
            u = stack.pop()
            seen.add(u)
            for c in (self._hi[u], self._lo[u]):
                if c not in seen:
                    seen.add(c)
                    if c > TOP:
                        stack.append(c)
        return sorted(seen)

    def node_count(self, f):
        return len(self.reachable(f))

    def support(self, f):
        return sorted({self._var[u] for u in self.reachable(f) if u > TOP})

    def rename(self, f, perm):
        """Rebuild ``f`` with variables relabelled by the involution ``perm`` (dict)."""
        memo = {}
        return self._rename(f, perm, memo)

    def _rename(self, f, perm, memo):
        if f <= TOP:
            return f
        r = memo.get(f)
        if r is not None:
            return r
        h = self._rename(self._hi[f], perm, memo)
        lo = self._rename(self._lo[f], perm, memo)
        v = self._var[f]
        r = self.union(lo, self.change(h, perm.get(v, v)))
        memo[f] = r
        return r
