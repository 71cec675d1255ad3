"""Zero-suppressed decision diagrams with a family algebra.

An :class:`Engine` owns the node store and operation cache for a universe of
``num_vars`` variables numbered ``1..num_vars`` (smaller index sits closer to
the root).  Families are handed out as :class:`Family` values; two families of
one engine are equal exactly when they hold the same root node.

The recursive kernels live in ``_kernel`` (Cython) with ``_kernel_py`` as the
pure-Python fallback.  Set ``ZDDMAP_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
import sys
from typing import Iterable, Iterator, Sequence

from . import _kernel_py

try:
    from . import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

BOT = 0
TOP = 1

__all__ = [
    "BOT",
    "TOP",
    "Engine",
    "Family",
    "ZddError",
    "available_backends",
    "default_backend",
]


class ZddError(ValueError):
    """Invalid use of the ZDD engine (bad variable, ordering, operand mix)."""


def available_backends() -> list[str]:
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def default_backend() -> str:
    if _compiled is None or os.environ.get("ZDDMAP_PURE_PYTHON", "") not in ("", "0"):
        return "python"
    return "compiled"


def _kernel_class(backend: str | None):
    backend = backend or default_backend()
    if backend == "compiled":
        if _compiled is None:
            raise ZddError("compiled ZDD kernel is not available")
        return _compiled.ZddKernel
    if backend == "python":
        return _kernel_py.ZddKernel
    raise ZddError(f"unknown backend {backend!r}")


class Family:
    """A family of sets, held as a root node inside an :class:`Engine`."""

    __slots__ = ("engine", "root")

    def __init__(self, engine: Engine, root: int):
        self.engine = engine
        self.root = root

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return self.engine is other.engine and self.root == other.root

    def __hash__(self):
        return hash((id(self.engine), self.root))

    def __repr__(self):
        return f"Family(root={self.root}, sets={self.count()})"

    def __bool__(self):
        return self.root != BOT

    def __len__(self):
        return self.count()

    def __iter__(self) -> Iterator[frozenset[int]]:
        return self.engine.enumerate(self)

    def __contains__(self, members) -> bool:
        return self.engine.contains(self, members)

    def __or__(self, other):
        return self.engine.union(self, other)

    def __and__(self, other):
        return self.engine.intersection(self, other)

    def __sub__(self, other):
        return self.engine.difference(self, other)

    def join(self, other):
        return self.engine.join(self, other)

    def meet(self, other):
        return self.engine.meet(self, other)

    def nonsupersets(self, other):
        return self.engine.nonsupersets(self, other)

    def count(self) -> int:
        return self.engine.count_sets(self)

    def node_count(self) -> int:
        return self.engine.node_count(self)

    def to_sets(self) -> set[frozenset[int]]:
        return set(self)


class Engine:
    """Canonical ZDD store over variables ``1..num_vars``.

    Not thread-safe; serialize all calls on one engine.  Independent engines
    share nothing.

    Args:
        num_vars: size of the variable universe.
        names: optional display names, one per variable, used by :meth:`to_dot`.
        backend: ``"compiled"``, ``"python"`` or ``None`` for the default.
    """

    def __init__(self, num_vars: int, names: Sequence[str] | None = None,
                 backend: str | None = None):
        if num_vars < 0:
            raise ZddError("num_vars must be nonnegative")
        if names is not None and len(names) != num_vars:
            raise ZddError("need exactly one name per variable")
        self.num_vars = num_vars
        self.names = list(names) if names is not None else None
        self._k = _kernel_class(backend)(num_vars)
        self.backend = self._k.backend
        # recursion depth of the kernels grows with the number of levels
        need = 4 * num_vars + 200
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)

    # -- construction -------------------------------------------------------

    @property
    def empty(self) -> Family:
        return Family(self, BOT)

    @property
    def unit(self) -> Family:
        return Family(self, TOP)

    def _check_var(self, x: int) -> None:
        if not 1 <= x <= self.num_vars:
            raise ZddError(f"variable {x} outside universe 1..{self.num_vars}")

    def make_node(self, var: int, hi: int, lo: int) -> int:
        """Return the canonical node for ``(var, hi, lo)`` (raw node ids)."""
        self._check_var(var)
        k = self._k
        size = len(k)
        for child in (hi, lo):
            if not 0 <= child < size:
                raise ZddError(f"unknown node {child}")
            if child > TOP and k.var(child) <= var:
                raise ZddError(
                    f"child variable {k.var(child)} does not follow variable {var}")
        return k.mk(var, hi, lo)

    def family(self, root: int) -> Family:
        if not 0 <= root < len(self._k):
            raise ZddError(f"unknown node {root}")
        return Family(self, root)

    def elementary(self, x: int) -> Family:
        """The family ``{{x}}``."""
        self._check_var(x)
        return Family(self, self._k.mk(x, TOP, BOT))

    def universal(self) -> Family:
        """All ``2**num_vars`` subsets of the universe."""
        r = TOP
        for v in range(self.num_vars, 0, -1):
            r = self._k.mk(v, r, r)
        return Family(self, r)

    def from_sets(self, sets: Iterable[Iterable[int]]) -> Family:
        """Build a family from explicit member sets."""
        k = self._k
        r = BOT
        for s in sets:
            cube = TOP
            for v in sorted(set(s), reverse=True):
                self._check_var(v)
                cube = k.mk(v, cube, BOT)
            r = k.union(r, cube)
        return Family(self, r)

    def singletons(self, xs: Iterable[int]) -> Family:
        """Union of elementary families ``{{x}}`` for ``x`` in ``xs``."""
        return self.from_sets([x] for x in xs)

    # -- algebra ------------------------------------------------------------

    def _roots(self, f: Family, g: Family) -> tuple[int, int]:
        if f.engine is not self or g.engine is not self:
            raise ZddError("operands belong to a different engine")
        return f.root, g.root

    def union(self, f: Family, g: Family) -> Family:
        return Family(self, self._k.union(*self._roots(f, g)))

    def intersection(self, f: Family, g: Family) -> Family:
        return Family(self, self._k.intersection(*self._roots(f, g)))

    def difference(self, f: Family, g: Family) -> Family:
        return Family(self, self._k.difference(*self._roots(f, g)))

    def join(self, f: Family, g: Family) -> Family:
        """``{a | b : a in f, b in g}``."""
        return Family(self, self._k.join(*self._roots(f, g)))

    def meet(self, f: Family, g: Family) -> Family:
        """``{a & b : a in f, b in g}``."""
        return Family(self, self._k.meet(*self._roots(f, g)))

    def nonsupersets(self, f: Family, g: Family) -> Family:
        """Members of ``f`` that contain no member of ``g``."""
        return Family(self, self._k.nonsupersets(*self._roots(f, g)))

    def union_all(self, families: Iterable[Family]) -> Family:
        r = self.empty
        for f in families:
            r = self.union(r, f)
        return r

    def choose(self, f: Family, k: int) -> Family:
        """All ``k``-element unions of distinct members of a singleton family."""
        self._roots(f, f)
        if k < 0:
            raise ZddError("k must be nonnegative")
        if not self._k.is_singletons(f.root):
            raise ZddError("choose needs a family of singletons")
        return Family(self, self._k.choose(f.root, k))

    def rename_by_pairs(self, f: Family, pairs: Sequence[tuple[int, int]]) -> Family:
        """Swap variables ``x`` and ``y`` for every ``(x, y)`` in ``pairs``."""
        self._roots(f, f)
        perm: dict[int, int] = {}
        for x, y in pairs:
            self._check_var(x)
            self._check_var(y)
            if x in perm or y in perm or x == y:
                raise ZddError(f"overlapping rename pair ({x}, {y})")
            perm[x] = y
            perm[y] = x
        if not perm or f.root <= TOP:
            return f
        return Family(self, self._k.rename(f.root, perm))

    # -- queries ------------------------------------------------------------

    def count_sets(self, f: Family) -> int:
        return self._k.count(f.root)

    def node_count(self, f: Family) -> int:
        """Distinct nodes reachable from ``f``, both terminals included."""
        return self._k.node_count(f.root)

    def support(self, f: Family) -> list[int]:
        """Variables occurring in some member of ``f``."""
        return self._k.support(f.root)

    def contains(self, f: Family, members: Iterable[int]) -> bool:
        k = self._k
        u = f.root
        for v in sorted(set(members)):
            while u > TOP and k.var(u) < v:
                u = k.lo(u)
            if u <= TOP or k.var(u) != v:
                return False
            u = k.hi(u)
        while u > TOP:
            u = k.lo(u)
        return u == TOP

    def enumerate(self, f: Family) -> Iterator[frozenset[int]]:
        """Yield members in lexicographic order of their sorted variable lists."""
        k = self._k

        def walk(u):
            if u == TOP:
                yield ()
            if u <= TOP:
                return
            lo = k.lo(u)
            # ∅ sorts before everything, then sets that hold this variable
            if k.contains_empty(lo):
                yield ()
            v = k.var(u)
            for s in walk(k.hi(u)):
                yield (v,) + s
            for s in walk(lo):
                if s:
                    yield s

        return (frozenset(s) for s in walk(f.root))

    def node_table(self) -> list[tuple[int, int, int]]:
        """Every stored ``(var, hi, lo)`` triple, terminals excluded."""
        k = self._k
        return [(k.var(u), k.hi(u), k.lo(u)) for u in range(2, len(k))]

    def cache_size(self) -> int:
        return self._k.cache_size()

    def __len__(self):
        return len(self._k)

    # -- export -------------------------------------------------------------

    def var_name(self, v: int) -> str:
        if self.names is not None:
            return self.names[v - 1]
        return f"x{v}"

    def to_dot(self, f: Family, name: str = "zdd") -> str:
        """Graphviz source: dashed LO edges, solid HI edges."""
        k = self._k
        lines = [f"digraph {name} {{", '  node [shape=circle];',
                 '  n0 [shape=box, label="⊥"];', '  n1 [shape=box, label="⊤"];']
        for u in self._k.reachable(f.root):
            if u <= TOP:
                continue
            lines.append(f'  n{u} [label="{self.var_name(k.var(u))}"];')
            lines.append(f"  n{u} -> n{k.lo(u)} [style=dashed];")
            lines.append(f"  n{u} -> n{k.hi(u)};")
        lines.append("}")
        return "\n".join(lines) + "\n"
