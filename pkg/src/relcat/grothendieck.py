"""Grothendieck constructions and the slice assignments ``Z ↦ fX⌢n⌣Z``.

For a covariant ``F: D -> Cat`` a morphism of ``Gr F`` is ``(d, A1, a)``
with ``d: D1 -> D2`` and ``a: (Fd)A1 -> A2``; the source fiber object is
kept in the id because ``(d, a)`` alone does not fix it.  Composition is
``(d', a')(d, a) = (d'd, a' ∘ (Fd')a)``.

For a contravariant ``F`` a morphism is ``(d, a, A2)`` with
``a: A1 -> (Fd)A2`` and ``(d', a')(d, a) = (d'd, (Fd)a' ∘ a)``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .arrows import FiberObject, leg, leg_points_up, n_arrow_fiber
from .category import (
    CategoryError,
    FinCat,
    FinFunctor,
    Id,
    Violation,
    check_quota,
    validate_functor,
)


@dataclass(eq=False)
class GrothendieckInput:
    """A functor ``base -> Cat`` (``variance="co"``) or ``base^op -> Cat`` (``"contra"``)."""

    base: FinCat
    fibers: dict[Id, FinCat]
    action: dict[Id, FinFunctor]
    variance: str = "co"
    name: str = ""

    def ends(self, d: Id) -> tuple[Id, Id]:
        """Base objects whose fibers are the source and target of ``action[d]``."""
        s, t = self.base.morphisms[d]
        return (s, t) if self.variance == "co" else (t, s)


def validate_grothendieck_input(inp: GrothendieckInput) -> list[Violation]:
    B = inp.base
    out: list[Violation] = []
    if inp.variance not in ("co", "contra"):
        return [Violation("variance", (inp.variance,))]
    for x in B.objects:
        if x not in inp.fibers:
            out.append(Violation("missing fiber", (x,)))
    for d in B.morphisms:
        F = inp.action.get(d)
        if F is None:
            out.append(Violation("missing action", (d,)))
            continue
        a, b = inp.ends(d)
        if F.source is not inp.fibers[a] or F.target is not inp.fibers[b]:
            if not (F.source.same_as(inp.fibers[a]) and F.target.same_as(inp.fibers[b])):
                out.append(Violation("action endpoints", (d,)))
                continue
        out.extend(Violation(f"action {d!r}: {v.axiom}", v.witness) for v in validate_functor(F))
    if out:
        return out
    for x in B.objects:
        F = inp.action[B.identity[x]]
        fib = inp.fibers[x]
        if any(F.ob(o) != o for o in fib.objects) or any(F(m) != m for m in fib.morphisms):
            out.append(Violation("identity not sent to identity functor", (x,)))
    for g, f in B.composable_pairs():
        gf = inp.action[B.compose(g, f)]
        first, second = (inp.action[f], inp.action[g]) if inp.variance == "co" else (inp.action[g], inp.action[f])
        if not first.then(second).same_as(gf):
            out.append(Violation("composite not sent to composite functor", (g, f)))
    return out


def grothendieck(inp: GrothendieckInput) -> tuple[FinCat, FinFunctor]:
    """``Gr F`` and its projection to the base."""
    B = inp.base
    objs = [(D, A) for D in B.objects for A in inp.fibers[D].objects]
    mors: dict[Id, tuple[Id, Id]] = {}
    for d, (D1, D2) in B.morphisms.items():
        F = inp.action[d]
        if inp.variance == "co":
            fib2 = inp.fibers[D2]
            for A1 in inp.fibers[D1].objects:
                for a in fib2.out(F.ob(A1)):
                    mors[(d, A1, a)] = ((D1, A1), (D2, fib2.tgt(a)))
        else:
            fib1 = inp.fibers[D1]
            for A2 in inp.fibers[D2].objects:
                for a in fib1.into(F.ob(A2)):
                    mors[(d, a, A2)] = ((D1, fib1.src(a)), (D2, A2))
        check_quota(len(objs), len(mors), "Grothendieck construction")
    ident = {}
    for D, A in objs:
        i = B.identity[D]
        a = inp.fibers[D].identity[A]
        ident[(D, A)] = (i, A, a) if inp.variance == "co" else (i, a, A)

    if inp.variance == "co":
        def comp(g: Id, f: Id) -> Id:
            d2, _, a2 = g
            d1, A1, a1 = f
            D3 = B.tgt(d2)
            return (B.compose(d2, d1), A1, inp.fibers[D3].compose(a2, inp.action[d2](a1)))
    else:
        def comp(g: Id, f: Id) -> Id:
            d2, a2, A3 = g
            d1, a1, _ = f
            D1 = B.src(d1)
            return (B.compose(d2, d1), inp.fibers[D1].compose(inp.action[d1](a2), a1), A3)

    G = FinCat(objs, mors, ident, comp, name=f"Gr({inp.name})" if inp.name else "Gr")
    pi = FinFunctor(G, B, {o: o[0] for o in objs}, {m: m[0] for m in mors}, name="pi")
    return G, pi


def strict_fiber(p: FinFunctor, b: Id) -> FinCat:
    """Objects over ``b`` and morphisms over its identity."""
    E = p.source
    one = p.target.identity[b]
    objs = [e for e in E.objects if p.ob(e) == b]
    mors = {m: st for m, st in E.morphisms.items() if p(m) == one}
    return FinCat(objs, mors, {e: E.identity[e] for e in objs}, E.compose, name=f"{E.name}|{b!r}")


# -- the slice assignment ------------------------------------------------------------


def _replace_leg(legs: tuple, i: int, m: Id) -> tuple:
    pos = len(legs) - i
    return legs[:pos] + (m,) + legs[pos + 1:]


@dataclass(eq=False)
class SliceData:
    """A Grothendieck input built from ``fX⌢n⌣Z`` together with the object it should reproduce."""

    input: GrothendieckInput
    fiber: FiberObject
    target: FinCat
    relabel: Callable[[Id, bool], Id]
    projection: FinFunctor


def slice_functor(f: FinFunctor, n: int, *, fiber: FiberObject | None = None) -> SliceData:
    """``Z ↦ fX⌢n⌣Z`` over the target of ``f``, maps acting by composition with leg 1."""
    fib = fiber or n_arrow_fiber(f, n)
    Z = f.target
    pi = fib.pi
    fibers = {z: strict_fiber(pi, z) for z in Z.objects}
    action = {}
    for d, (z1, z2) in Z.morphisms.items():
        src, tgt = fibers[z1], fibers[z2]

        def push_obj(o: Id, d: Id = d) -> Id:
            x, (tag, legs) = o
            return (x, (tag, _replace_leg(legs, 1, Z.compose(d, leg(legs, 1)))))

        def push_mor(m: Id, d: Id = d, z2: Id = z2) -> Id:
            a, (tag, S, T, vs) = m
            return (a, (tag, push_obj((None, S))[1], push_obj((None, T))[1], vs[:-1] + (Z.identity[z2],)))

        action[d] = FinFunctor(
            src, tgt, {o: push_obj(o) for o in src.objects}, {m: push_mor(m) for m in src.morphisms}
        )
    inp = GrothendieckInput(Z, fibers, action, "co", name="fX⌢n⌣-")

    def relabel(gid: Id, is_object: bool) -> Id:
        if is_object:
            return gid[1]
        z, A1, (a, (tag, _, T, vs)) = gid
        return (a, (tag, A1[1], T, vs[:-1] + (z,)))

    return SliceData(inp, fib, fib.structure.ambient, relabel, pi)


def co_slice_functor(
    f: FinFunctor, n: int, z0: Id, *, fiber: FiberObject | None = None
) -> SliceData:
    """``X ↦ fX⌢n⌣Z0``: covariant in ``X`` for even ``n``, contravariant for odd ``n``.

    A map ``x`` acts on leg ``n`` by composition with ``f(x)``.
    """
    fib = fiber or n_arrow_fiber(f, n)
    X, Z = f.source, f.target
    over = strict_fiber(fib.pi, z0)
    proj = FinFunctor(
        over, X, {o: o[0] for o in over.objects}, {m: m[0] for m in over.morphisms}, name="proj"
    )
    fibers = {x: strict_fiber(proj, x) for x in X.objects}
    contra = leg_points_up(n)
    action = {}
    for d, (x1, x2) in X.morphisms.items():
        fd = f(d)
        a_end, b_end = (x2, x1) if contra else (x1, x2)
        src, tgt = fibers[a_end], fibers[b_end]

        def move(legs: tuple, fd: Id = fd) -> tuple:
            ln = leg(legs, n)
            return _replace_leg(legs, n, Z.compose(ln, fd) if contra else Z.compose(fd, ln))

        def obj(o: Id, b_end: Id = b_end, move=move) -> Id:
            _, (tag, legs) = o
            return (b_end, (tag, move(legs)))

        def mor(m: Id, b_end: Id = b_end, move=move) -> Id:
            _, (tag, S, T, vs) = m
            S2, T2 = (S[0], move(S[1])), (T[0], move(T[1]))
            return (X.identity[b_end], (tag, S2, T2, (Z.identity[f.ob(b_end)],) + vs[1:]))

        action[d] = FinFunctor(
            src, tgt, {o: obj(o) for o in src.objects}, {m: mor(m) for m in src.morphisms}
        )
    inp = GrothendieckInput(X, fibers, action, "contra" if contra else "co", name=f"f-⌢{n}⌣{z0!r}")

    def relabel(gid: Id, is_object: bool) -> Id:
        if is_object:
            return gid[1]
        if contra:
            x, (_, (tag, S, _, vs)), A2 = gid
            return (x, (tag, S, A2[1], (f(x),) + vs[1:]))
        x, A1, (_, (tag, _, T, vs)) = gid
        return (x, (tag, A1[1], T, (f(x),) + vs[1:]))

    return SliceData(inp, fib, over, relabel, proj)


def gr_identity_problems(data: SliceData) -> list[str]:
    """Check that ``Gr`` of the assignment, relabeled, is exactly ``data.target`` over the same base."""
    G, pi = grothendieck(data.input)
    T = data.target
    on_obj = {o: data.relabel(o, True) for o in G.objects}
    on_mor = {m: data.relabel(m, False) for m in G.morphisms}
    problems = []
    if len(set(on_obj.values())) != len(on_obj) or len(set(on_mor.values())) != len(on_mor):
        problems.append("relabeling is not injective")
        return problems
    R = G.relabel(on_obj, on_mor)
    if set(R.objects) != set(T.objects):
        problems.append(f"objects differ: {len(R.objects)} vs {len(T.objects)}")
    if R.morphisms != T.morphisms:
        problems.append(f"morphisms differ: {len(R.morphisms)} vs {len(T.morphisms)}")
    if problems:
        return problems
    if not R.same_as(T):
        problems.append("identities or composition differ")
    P = data.projection
    for m in G.morphisms:
        if P(on_mor[m]) != pi(m):
            problems.append(f"projection differs at {m!r}")
            break
    return problems


def check_input_or_raise(inp: GrothendieckInput) -> None:
    bad = validate_grothendieck_input(inp)
    if bad:
        raise CategoryError("; ".join(map(str, bad[:5])))


def constant_input(base: FinCat, c: FinCat) -> GrothendieckInput:
    from .category import identity_functor

    ident = identity_functor(c)
    return GrothendieckInput(base, {x: c for x in base.objects}, {d: ident for d in base.morphisms},
                             name=f"const({c.name})")
