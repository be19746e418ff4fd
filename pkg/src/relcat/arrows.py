"""n-arrow path objects, fibers and pullback objects, and the zigzag embedding.

A zigzag object is ``("z", (l_n, ..., l_1))``.  Leg ``l_i`` joins ``Z_i``
and ``Z_{i-1}``; its source is whichever of the two has odd index, so the
zigzag reads ``Z_n ... Z_2 <- Z_1 -> Z_0``.  A map of zigzags is
``("zm", source, target, (v_n, ..., v_0))`` with every square commuting.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .category import (
    CategoryError,
    FinCat,
    FinFunctor,
    Id,
    check_quota,
    identity_functor,
    pullback_cat,
)
from .homology import WEVerdict, relative_we_verdict
from .relative import KRelStructure, cat_hat


def leg_points_up(i: int) -> bool:
    """True when leg ``i`` runs ``Z_i -> Z_{i-1}`` (odd ``i``)."""
    return i % 2 == 1


def leg(legs: tuple, i: int) -> Id:
    return legs[len(legs) - i]


def node(c: FinCat, legs: tuple, i: int) -> Id:
    """Object ``Z_i`` of a zigzag given by its legs."""
    if i == 0:
        return c.tgt(leg(legs, 1))
    m = leg(legs, i)
    return c.src(m) if leg_points_up(i) else c.tgt(m)


def nodes(c: FinCat, legs: tuple) -> tuple:
    """``(Z_n, ..., Z_0)``."""
    return tuple(node(c, legs, i) for i in range(len(legs), -1, -1))


def identity_zigzag(c: FinCat, x: Id, n: int) -> Id:
    return ("z", (c.identity[x],) * n)


def enumerate_zigzags(c: FinCat, w: frozenset, n: int) -> list[Id]:
    """All ``n``-arrow zigzags with legs in ``w``, in lexicographic leg order of enumeration."""
    w_out: dict[Id, list[Id]] = {x: [] for x in c.objects}
    w_in: dict[Id, list[Id]] = {x: [] for x in c.objects}
    for m, (s, t) in c.morphisms.items():
        if m in w:
            w_out[s].append(m)
            w_in[t].append(m)
    partial = [((m,), c.src(m)) for m in c.morphisms if m in w]  # (l_i, ..., l_1), Z_i
    for i in range(2, n + 1):
        nxt = []
        for ls, top in partial:
            for m in (w_in[top] if leg_points_up(i) else w_out[top]):
                nxt.append(((m,) + ls, c.src(m) if leg_points_up(i) else c.tgt(m)))
        partial = nxt
        check_quota(len(partial), 0, f"{n}-arrow zigzags")
    return [("z", ls) for ls, _ in partial]


def _square_ok(c: FinCat, i: int, old: Id, new: Id, v_hi: Id, v_lo: Id) -> bool:
    # leg i between Z_i (vertical v_hi) and Z_{i-1} (vertical v_lo)
    if leg_points_up(i):
        return c.compose(new, v_hi) == c.compose(v_lo, old)
    return c.compose(new, v_lo) == c.compose(v_hi, old)


def vertical_maps(c: FinCat, objects: Iterable[Id], mask: frozenset, n: int) -> dict[Id, tuple[Id, Id]]:
    """All commuting vertical maps between the given zigzags with every vertical in ``mask``."""
    objs = list(objects)
    by_legs = {o[1]: o for o in objs}
    m_out: dict[Id, list[Id]] = {x: [] for x in c.objects}
    for m, (s, _) in c.morphisms.items():
        if m in mask:
            m_out[s].append(m)
    out: dict[Id, tuple[Id, Id]] = {}
    for X in objs:
        legs = X[1]
        xs = nodes(c, legs)[::-1]  # Z_0 .. Z_n

        def extend(i: int, vs: tuple, new_legs: tuple) -> None:
            # vs = (v_{i-1}, ..., v_0); new_legs = (l'_{i-1}, ..., l'_1)
            if i > n:
                Y = by_legs.get(new_legs)
                if Y is not None:
                    out[("zm", X, Y, vs)] = (X, Y)
                return
            old = leg(legs, i)
            v_lo = vs[0]
            for v in m_out[xs[i]]:
                if leg_points_up(i):
                    cands = c.hom(c.tgt(v), c.tgt(v_lo))
                else:
                    cands = c.hom(c.tgt(v_lo), c.tgt(v))
                for nl in cands:
                    if _square_ok(c, i, old, nl, v, v_lo):
                        extend(i + 1, (v,) + vs, (nl,) + new_legs)

        for v0 in m_out[xs[0]]:
            extend(1, (v0,), ())
        check_quota(len(objs), len(out), f"{n}-arrow path maps")
    return out


def _compose_vertical(c: FinCat, g: Id, f: Id) -> Id:
    return ("zm", f[1], g[2], tuple(c.compose(b, a) for b, a in zip(g[3], f[3])))


@dataclass(eq=False)
class PathObject:
    """``Z⌢n⌣Z`` with its end projections and the identity-zigzag embedding ``j``."""

    structure: KRelStructure
    pi_n: FinFunctor
    pi_0: FinFunctor
    j: FinFunctor
    n: int
    base: KRelStructure = field(repr=False)


def n_arrow_path(z: KRelStructure, n: int) -> PathObject:
    if n < 1:
        raise ValueError("n must be >= 1")
    c = z.ambient
    objs = enumerate_zigzags(c, z.w_mask, n)
    cache: dict[frozenset, dict] = {}

    def verticals(mask: frozenset) -> dict:
        if mask not in cache:
            cache[mask] = vertical_maps(c, objs, mask, n)
        return cache[mask]

    w_maps = verticals(z.w_mask)
    v_maps = [verticals(m) for m in z.v_masks]
    if z.k == 0:
        ambient = dict(w_maps)
    elif z.k == 1:
        ambient = dict(v_maps[0])
    else:
        ambient = {}
        for vm in v_maps:
            ambient.update(vm)
        ambient = _closure(c, ambient)
    check_quota(len(objs), len(ambient), f"{n}-arrow path object")
    ident = {X: ("zm", X, X, tuple(c.identity[x] for x in nodes(c, X[1]))) for X in objs}
    cat = FinCat(objs, ambient, ident, lambda g, f: _compose_vertical(c, g, f),
                 name=f"{z.name}⌢{n}⌣{z.name}")
    structure = KRelStructure(
        cat, tuple(frozenset(vm) for vm in v_maps), frozenset(w_maps), name=cat.name
    )
    pi_n = FinFunctor(cat, c, {X: node(c, X[1], n) for X in objs}, {m: m[3][0] for m in ambient}, name="pi_n")
    pi_0 = FinFunctor(cat, c, {X: node(c, X[1], 0) for X in objs}, {m: m[3][-1] for m in ambient}, name="pi_0")
    j_obj = {x: identity_zigzag(c, x, n) for x in c.objects}
    j_mor = {}
    for m, (s, t) in c.morphisms.items():
        jm = ("zm", j_obj[s], j_obj[t], (m,) * (n + 1))
        if jm not in ambient:
            raise CategoryError(f"identity zigzag image of {m!r} is not a path-object map")
        j_mor[m] = jm
    j = FinFunctor(c, cat, j_obj, j_mor, name="j")
    return PathObject(structure, pi_n, pi_0, j, n, z)


def _closure(c: FinCat, maps: dict) -> dict:
    """Close a set of vertical maps under composition."""
    out = dict(maps)
    by_src: dict[Id, list[Id]] = {}
    by_tgt: dict[Id, list[Id]] = {}

    def add(m: Id) -> None:
        by_src.setdefault(m[1], []).append(m)
        by_tgt.setdefault(m[2], []).append(m)

    for m in out:
        add(m)
    frontier = list(out)
    while frontier:
        new = []
        for f in frontier:
            pairs = [(g, f) for g in by_src.get(f[2], ())] + [(f, e) for e in by_tgt.get(f[1], ())]
            for g, e in pairs:
                h = _compose_vertical(c, g, e)
                if h not in out:
                    out[h] = (h[1], h[2])
                    add(h)
                    new.append(h)
        check_quota(0, len(out), "vertical closure")
        frontier = new
    return out


# -- pullbacks of k-relative objects ------------------------------------------


def rel_pullback(
    f: FinFunctor, g: FinFunctor, xs: KRelStructure, ys: KRelStructure
) -> tuple[KRelStructure, FinFunctor, FinFunctor]:
    """Strict pullback with masks made of pairs lying in both masks."""
    if xs.k != ys.k:
        raise CategoryError("pullback of structures with different k")
    P, px, py = pullback_cat(f, g)

    def pair_mask(a: frozenset, b: frozenset) -> frozenset:
        return frozenset(m for m in P.morphisms if m[0] in a and m[1] in b)

    s = KRelStructure(
        P,
        tuple(pair_mask(a, b) for a, b in zip(xs.v_masks, ys.v_masks)),
        pair_mask(xs.w_mask, ys.w_mask),
        name=P.name,
    )
    return s, px, py


@dataclass(eq=False)
class FiberObject:
    """``fX⌢n⌣Z`` with ``pi`` (induced by ``pi_0``) and the projections of the defining pullback."""

    structure: KRelStructure
    pi: FinFunctor
    to_source: FinFunctor
    to_path: FinFunctor
    path: PathObject
    f: FinFunctor
    source: KRelStructure


_path_cache: dict[tuple[int, int], tuple[KRelStructure, PathObject]] = {}


def cached_path(z: KRelStructure, n: int) -> PathObject:
    """``n_arrow_path`` memoized on the identity of ``z``."""
    key = (id(z), n)
    hit = _path_cache.get(key)
    if hit is not None and hit[0] is z:
        return hit[1]
    p = n_arrow_path(z, n)
    _path_cache[key] = (z, p)
    return p


def n_arrow_fiber(
    f: FinFunctor,
    n: int,
    x: KRelStructure | None = None,
    z: KRelStructure | None = None,
    *,
    path: PathObject | None = None,
) -> FiberObject:
    """``lim(X -f-> Z <-pi_n- Z⌢n⌣Z)``; structures default to the 0-relative ones."""
    x = x or cat_hat(f.source)
    z = z or cat_hat(f.target)
    if path is None:
        path = cached_path(z, n)
    s, px, pp = rel_pullback(f, path.pi_n, x, path.structure)
    pi = pp.then(path.pi_0)
    pi.name = "pi"
    return FiberObject(s, pi, px, pp, path, f, x)


@dataclass(eq=False)
class PullbackObject:
    """``fX⌢n⌣gY`` with ``pi`` to ``Y`` and the map to the fiber object."""

    structure: KRelStructure
    pi: FinFunctor
    to_fiber: FinFunctor
    fiber: FiberObject
    g: FinFunctor
    target_side: KRelStructure


def n_arrow_pullback(
    f: FinFunctor,
    g: FinFunctor,
    n: int,
    x: KRelStructure | None = None,
    y: KRelStructure | None = None,
    z: KRelStructure | None = None,
    *,
    path: PathObject | None = None,
    fiber: FiberObject | None = None,
) -> PullbackObject:
    """``fX⌢n⌣gY``; a previously built ``fiber`` for ``f`` may be passed in."""
    if f.target is not g.target:
        raise CategoryError("n_arrow_pullback: f and g need the same target")
    y = y or cat_hat(g.source)
    fib = fiber or n_arrow_fiber(f, n, x, z, path=path)
    s, pf, py = rel_pullback(fib.pi, g, fib.structure, y)
    return PullbackObject(s, py, pf, fib, g, y)


# -- the embedding diagram ------------------------------------------------------


def strict_pullback_problems(
    top: FinFunctor, left: FinFunctor, right: FinFunctor, bottom: FinFunctor
) -> list[str]:
    """Why the square ``A -top-> B``, ``A -left-> C``, ``B -right-> D``, ``C -bottom-> D`` is not a strict pullback."""
    A = top.source
    problems = []
    for x in A.objects:
        if right.ob(top.ob(x)) != bottom.ob(left.ob(x)):
            problems.append(f"square does not commute at object {x!r}")
    for m in A.morphisms:
        if right(top(m)) != bottom(left(m)):
            problems.append(f"square does not commute at morphism {m!r}")
    if problems:
        return problems
    P, _, _ = pullback_cat(bottom, right)
    obj_image = {(left.ob(x), top.ob(x)) for x in A.objects}
    mor_image = {(left(m), top(m)) for m in A.morphisms}
    if len(obj_image) != len(A.objects) or obj_image != set(P.objects):
        problems.append(f"objects: {len(A.objects)} vs {len(P.objects)} in the strict pullback")
    if len(mor_image) != len(A.morphisms) or mor_image != set(P.morphisms):
        problems.append(f"morphisms: {len(A.morphisms)} vs {len(P.morphisms)} in the strict pullback")
    return problems


@dataclass(eq=False)
class EmbedReport:
    strict: KRelStructure
    strict_to_x: FinFunctor
    strict_to_y: FinFunctor
    h: FinFunctor
    k: FinFunctor
    pullback: PullbackObject
    left_square: list[str]
    right_square: list[str]
    verdict_h: WEVerdict
    verdict_k: WEVerdict

    @property
    def squares_ok(self) -> bool:
        return not self.left_square and not self.right_square


def zigzag_embed(
    f: FinFunctor,
    g: FinFunctor,
    n: int,
    x: KRelStructure | None = None,
    y: KRelStructure | None = None,
    z: KRelStructure | None = None,
    *,
    bound: int = 4,
    path: PathObject | None = None,
) -> EmbedReport:
    """Strict pullback ``P``, ``h: X -> fX⌢n⌣Z`` and ``k: P -> fX⌢n⌣gY`` with the checks."""
    x = x or cat_hat(f.source)
    y = y or cat_hat(g.source)
    z = z or cat_hat(f.target)
    pb = n_arrow_pullback(f, g, n, x, y, z, path=path)
    fib = pb.fiber
    jz = fib.path.j
    X = f.source
    h = FinFunctor(
        X,
        fib.structure.ambient,
        {o: (o, jz.ob(f.ob(o))) for o in X.objects},
        {m: (m, jz(f(m))) for m in X.morphisms},
        name="h",
    )
    strict, sx, sy = rel_pullback(f, g, x, y)
    S = strict.ambient
    k = FinFunctor(
        S,
        pb.structure.ambient,
        {o: (h.ob(o[0]), o[1]) for o in S.objects},
        {m: (h(m[0]), m[1]) for m in S.morphisms},
        name="k",
    )
    left = strict_pullback_problems(k, sx, pb.to_fiber, h)
    right = strict_pullback_problems(pb.to_fiber, pb.pi, fib.pi, g)
    vh = relative_we_verdict(h, x, fib.structure, bound)
    vk = relative_we_verdict(k, strict, pb.structure, bound)
    return EmbedReport(strict, sx, sy, h, k, pb, left, right, vh, vk)


def hewq_problems(p: PathObject) -> list[str]:
    """``pi_n j = pi_0 j = 1`` checked exactly."""
    ident = identity_functor(p.base.ambient)
    out = []
    if not p.j.then(p.pi_n).same_as(ident):
        out.append("pi_n j != 1")
    if not p.j.then(p.pi_0).same_as(ident):
        out.append("pi_0 j != 1")
    return out
