"""Truncated multisimplicial sets and the nerve functors.

Cells are computed lazily per multidegree and cached.  Face and degeneracy
operators are given per direction as functions of ``(i, mdeg, cell)``.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .category import FinCat, FinFunctor, Id, check_quota, identity_functor
from .grids import Grid, degeneracy_map, enumerate_grids, face_map, precompose, stack
from .relative import KRelStructure, w_star_at

MDeg = tuple[int, ...]
Simplex = tuple[Id, tuple]

FaceFn = Callable[[int, int, MDeg, object], object]


class TruncMultiSSet:
    """A ``arity``-fold simplicial set stored through degree ``bound`` in every direction."""

    def __init__(
        self,
        arity: int,
        bound: int,
        cells: Callable[[MDeg], Sequence],
        face: FaceFn,
        degeneracy: FaceFn,
        *,
        nondegenerate: Callable[[MDeg, object], bool] | None = None,
        nondegenerate_cells: Callable[[int], Sequence] | None = None,
        name: str = "",
    ) -> None:
        self.arity = arity
        self.bound = bound
        self._cells_fn = cells
        self._face = face
        self._degen = degeneracy
        self._nondeg = nondegenerate
        self._nondeg_cells = nondegenerate_cells
        self._cache: dict[MDeg, tuple] = {}
        self.name = name

    def __repr__(self) -> str:
        return f"<TruncMultiSSet {self.name} arity={self.arity} bound={self.bound}>"

    def cells(self, mdeg: MDeg) -> tuple:
        mdeg = tuple(mdeg)
        if len(mdeg) != self.arity or any(d < 0 or d > self.bound for d in mdeg):
            raise ValueError(f"multidegree {mdeg} outside arity {self.arity} / bound {self.bound}")
        got = self._cache.get(mdeg)
        if got is None:
            got = self._cache[mdeg] = tuple(self._cells_fn(mdeg))
        return got

    def count(self, mdeg: MDeg) -> int:
        return len(self.cells(mdeg))

    def face(self, direction: int, i: int, mdeg: MDeg, cell: object) -> object:
        if not 0 <= i <= mdeg[direction] or mdeg[direction] == 0:
            raise ValueError("face index out of range")
        return self._face(direction, i, tuple(mdeg), cell)

    def degeneracy(self, direction: int, i: int, mdeg: MDeg, cell: object) -> object:
        if not 0 <= i <= mdeg[direction] or mdeg[direction] + 1 > self.bound:
            raise ValueError("degeneracy index out of range")
        return self._degen(direction, i, tuple(mdeg), cell)

    def is_nondegenerate(self, mdeg: MDeg, cell: object) -> bool:
        """Not in the image of any degeneracy (arity 1 only)."""
        if self._nondeg is not None:
            return self._nondeg(mdeg, cell)
        if self.arity != 1:
            raise ValueError("nondegeneracy test is for arity 1")
        (d,) = mdeg
        for i in range(d):
            lower = self._face(0, i, mdeg, cell)
            if self._degen(0, i, (d - 1,), lower) == cell:
                return False
        return True

    def nondegenerate(self, d: int) -> list:
        if self._nondeg_cells is not None:
            return list(self._nondeg_cells(d))
        return [x for x in self.cells((d,)) if self.is_nondegenerate((d,), x)]


def _dec(mdeg: MDeg, t: int, delta: int) -> MDeg:
    return mdeg[:t] + (mdeg[t] + delta,) + mdeg[t + 1:]


# -- the classical nerve -------------------------------------------------


def nerve_simplices(c: FinCat, d: int) -> list[Simplex]:
    """Composable chains ``(x0, (f1, ..., fd))``."""
    cur: list[Simplex] = [(x, ()) for x in c.objects]
    for _ in range(d):
        nxt = []
        for x0, fs in cur:
            end = c.tgt(fs[-1]) if fs else x0
            for f in c.out(end):
                nxt.append((x0, fs + (f,)))
        cur = nxt
        check_quota(0, len(cur), f"nerve of {c.name}")
    return cur


def nerve_face(c: FinCat, i: int, simplex: Simplex) -> Simplex:
    x0, fs = simplex
    d = len(fs)
    if i == 0:
        return (c.tgt(fs[0]), fs[1:])
    if i == d:
        return (x0, fs[:-1])
    return (x0, fs[: i - 1] + (c.compose(fs[i], fs[i - 1]),) + fs[i + 1:])


def nerve_degeneracy(c: FinCat, i: int, simplex: Simplex) -> Simplex:
    x0, fs = simplex
    xi = x0 if i == 0 else c.tgt(fs[i - 1])
    return (x0, fs[:i] + (c.identity[xi],) + fs[i:])


def nerve_nondegenerate(c: FinCat, simplex: Simplex) -> bool:
    ids = c.identity_set
    return not any(f in ids for f in simplex[1])


def nerve_nondegenerate_simplices(c: FinCat, d: int) -> list[Simplex]:
    """Chains of ``d`` non-identity morphisms."""
    ids = c.identity_set
    out_ni = {x: [f for f in c.out(x) if f not in ids] for x in c.objects}
    cur: list[Simplex] = [(x, ()) for x in c.objects]
    for _ in range(d):
        nxt = []
        for x0, fs in cur:
            end = c.tgt(fs[-1]) if fs else x0
            for f in out_ni[end]:
                nxt.append((x0, fs + (f,)))
        cur = nxt
        check_quota(0, len(cur), f"nerve of {c.name}")
    return cur


def nerve(c: FinCat, bound: int = 4) -> TruncMultiSSet:
    """The classical nerve, truncated at ``bound``."""
    return TruncMultiSSet(
        1,
        bound,
        lambda m: nerve_simplices(c, m[0]),
        lambda t, i, m, x: nerve_face(c, i, x),
        lambda t, i, m, x: nerve_degeneracy(c, i, x),
        nondegenerate=lambda m, x: nerve_nondegenerate(c, x),
        nondegenerate_cells=lambda d: nerve_nondegenerate_simplices(c, d),
        name=f"N({c.name})",
    )


def nerve_map(F: FinFunctor, simplex: Simplex) -> Simplex:
    x0, fs = simplex
    return (F.ob(x0), tuple(F(f) for f in fs))


# -- grid nerves ---------------------------------------------------------


def _grid_sset(c: FinCat, masks: list, bound: int, name: str) -> TruncMultiSSet:
    arity = len(masks)

    def cells(mdeg: MDeg) -> list[Grid]:
        return enumerate_grids(c, mdeg, masks)

    def face(t: int, i: int, mdeg: MDeg, g: Grid) -> Grid:
        return precompose(c, mdeg, g, t, face_map(mdeg[t], i))[1]

    def degen(t: int, i: int, mdeg: MDeg, g: Grid) -> Grid:
        return precompose(c, mdeg, g, t, degeneracy_map(mdeg[t], i))[1]

    return TruncMultiSSet(arity, bound, cells, face, degen, name=name)


def k_simplicial_nerve(c: KRelStructure, bound: int = 2) -> TruncMultiSSet:
    """Cells in multidegree ``(p_k, ..., p_1, q)`` are relative functors
    ``p_k^{v_k} x ... x p_1^{v_1} x q^w -> C``.
    """
    if c.k < 1:
        raise ValueError("k_simplicial_nerve needs k >= 1; use nerve() for k = 0")
    masks = [c.v_masks[c.k - 1 - t] for t in range(c.k)] + [c.w_mask]
    return _grid_sset(c.ambient, masks, bound, f"s^{c.k}N({c.name})")


def simplicial_nerve(c: KRelStructure, bound: int = 2) -> TruncMultiSSet:
    """Bisimplicial nerve of a relative category: ``p^v x q^w -> C``."""
    if c.k != 1:
        raise ValueError("simplicial_nerve is for relative categories (k = 1)")
    masks = [frozenset(c.ambient.morphisms), c.w_mask]
    return _grid_sset(c.ambient, masks, bound, f"sN({c.name})")


# -- levelwise diagrams -----------------------------------------------------


@dataclass(eq=False)
class LevelwiseDiagram:
    """A ``k``-simplicial diagram of finite categories on a truncated grid.

    ``category(p)`` gives the level category; ``face(t, i, p)`` and
    ``degeneracy(t, i, p)`` give the structure functors out of level ``p``.
    """

    k: int
    bound: int
    category: Callable[[MDeg], FinCat]
    face: Callable[[int, int, MDeg], FinFunctor]
    degeneracy: Callable[[int, int, MDeg], FinFunctor]
    name: str = ""


def constant_diagram(c: FinCat, k: int, bound: int) -> LevelwiseDiagram:
    ident = identity_functor(c)
    return LevelwiseDiagram(k, bound, lambda p: c, lambda t, i, p: ident, lambda t, i, p: ident,
                            name=f"const({c.name})")


def w_star_diagram(c: KRelStructure, bound: int) -> LevelwiseDiagram:
    """``w_* C`` on the window ``p* <= bound``, with cached levels."""
    levels: dict[MDeg, FinCat] = {}
    a = c.ambient

    def category(p: MDeg) -> FinCat:
        if p not in levels:
            levels[p] = w_star_at(c, p)
        return levels[p]

    def along(t: int, p: MDeg, sigma: tuple, q: MDeg) -> FinFunctor:
        X, Y = category(p), category(q)
        return FinFunctor(
            X,
            Y,
            {o: precompose(a, p, o, t, sigma)[1] for o in X.objects},
            {m: precompose(a, p + (1,), m, t, sigma)[1] for m in X.morphisms},
        )

    return LevelwiseDiagram(
        c.k,
        bound,
        category,
        lambda t, i, p: along(t, p, face_map(p[t], i), _dec(p, t, -1)),
        lambda t, i, p: along(t, p, degeneracy_map(p[t], i), _dec(p, t, 1)),
        name=f"w*({c.name})",
    )


def validate_diagram(d: LevelwiseDiagram) -> list[str]:
    """Check functoriality of the structure maps against the simplicial identities (faces)."""
    problems = []
    for p in itertools.product(range(d.bound + 1), repeat=d.k):
        for t in range(d.k):
            if p[t] < 2:
                continue
            for j in range(p[t] + 1):
                for i in range(j):
                    a = d.face(t, j, p).then(d.face(t, i, _dec(p, t, -1)))
                    b = d.face(t, i, p).then(d.face(t, j - 1, _dec(p, t, -1)))
                    if not a.same_as(b):
                        problems.append(f"d{i}d{j} != d{j-1}d{i} at {p} direction {t}")
    return problems


def levelwise_nerve(d: LevelwiseDiagram, bound: int | None = None) -> TruncMultiSSet:
    """Apply the nerve at every level; the last direction is the nerve direction."""
    b = d.bound if bound is None else bound
    k = d.k

    def cells(mdeg: MDeg) -> list:
        return nerve_simplices(d.category(mdeg[:k]), mdeg[k])

    def face(t: int, i: int, mdeg: MDeg, x: Simplex) -> Simplex:
        if t == k:
            return nerve_face(d.category(mdeg[:k]), i, x)
        return nerve_map(d.face(t, i, mdeg[:k]), x)

    def degen(t: int, i: int, mdeg: MDeg, x: Simplex) -> Simplex:
        if t == k:
            return nerve_degeneracy(d.category(mdeg[:k]), i, x)
        return nerve_map(d.degeneracy(t, i, mdeg[:k]), x)

    return TruncMultiSSet(k + 1, b, cells, face, degen, name=f"N*({d.name})")


def wstar_simplex_to_grid(w: FinCat, c: FinCat, p_star: MDeg, x: Simplex) -> Grid:
    """Translate a ``q``-simplex of ``N(w)``, ``w = w_{p*} C``, into a grid of shape ``p* + (q,)``."""
    x0, fs = x
    layers = [x0] + [w.tgt(f) for f in fs]
    return stack(c, tuple(p_star), layers, list(fs))


# -- diagonal ------------------------------------------------------------------


def diagonal(m: TruncMultiSSet) -> TruncMultiSSet:
    """``d``-cells are the ``(d, ..., d)``-cells; faces act in every direction at once."""
    if m.arity < 2:
        raise ValueError("diagonal needs arity >= 2")
    r = m.arity

    def cells(mdeg: MDeg) -> tuple:
        return m.cells((mdeg[0],) * r)

    def face(t: int, i: int, mdeg: MDeg, x: object) -> object:
        d = mdeg[0]
        cur = (d,) * r
        for s in range(r):
            x = m._face(s, i, cur, x)
            cur = _dec(cur, s, -1)
        return x

    def degen(t: int, i: int, mdeg: MDeg, x: object) -> object:
        d = mdeg[0]
        cur = (d,) * r
        for s in range(r):
            x = m._degen(s, i, cur, x)
            cur = _dec(cur, s, 1)
        return x

    return TruncMultiSSet(1, m.bound, cells, face, degen, name=f"diag({m.name})")


# -- simplicial identities -------------------------------------------------------


def check_simplicial_identities(m: TruncMultiSSet, window: int | None = None) -> list[str]:
    """Exhaustively verify the simplicial identities within the window (default: the bound)."""
    top = m.bound if window is None else min(window, m.bound)
    problems: list[str] = []
    F, S = m._face, m._degen
    for mdeg in itertools.product(range(top + 1), repeat=m.arity):
        for x in m.cells(mdeg):
            for t in range(m.arity):
                d = mdeg[t]
                # faces
                if d >= 2:
                    for j in range(d + 1):
                        y = F(t, j, mdeg, x)
                        for i in range(j):
                            lhs = F(t, i, _dec(mdeg, t, -1), y)
                            rhs = F(t, j - 1, _dec(mdeg, t, -1), F(t, i, mdeg, x))
                            if lhs != rhs:
                                problems.append(f"d{i}d{j} at {mdeg} dir {t}")
                if d + 1 <= m.bound:
                    for j in range(d + 1):
                        s = S(t, j, mdeg, x)
                        up = _dec(mdeg, t, 1)
                        for i in range(d + 2):
                            fi = F(t, i, up, s)
                            if i in (j, j + 1):
                                ok = fi == x
                            elif i < j:
                                ok = fi == S(t, j - 1, _dec(mdeg, t, -1), F(t, i, mdeg, x))
                            else:
                                ok = fi == S(t, j, _dec(mdeg, t, -1), F(t, i - 1, mdeg, x))
                            if not ok:
                                problems.append(f"d{i}s{j} at {mdeg} dir {t}")
                        if d + 2 <= m.bound:
                            for i in range(j + 1):
                                lhs = S(t, i, up, s)
                                rhs = S(t, j + 1, up, S(t, i, mdeg, x))
                                if lhs != rhs:
                                    problems.append(f"s{i}s{j} at {mdeg} dir {t}")
                # mixed directions commute
                for u in range(t + 1, m.arity):
                    if d >= 1 and mdeg[u] >= 1:
                        for i in range(d + 1):
                            for j in range(mdeg[u] + 1):
                                a = F(u, j, _dec(mdeg, t, -1), F(t, i, mdeg, x))
                                b = F(t, i, _dec(mdeg, u, -1), F(u, j, mdeg, x))
                                if a != b:
                                    problems.append(f"mixed d{i}/d{j} at {mdeg} dirs {t},{u}")
            if len(problems) > 20:
                return problems
    return problems
