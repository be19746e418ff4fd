"""Properties B_n and C_n, family-fibrillations and the Quillen lemma harness.

Weak equivalences are read through :func:`induced_we_verdict` (or its
relative variant), so every check returns a report of verdicts rather than a
boolean.  Fibrillation is only ever checked against a finite family of
cospans; reports call the result "family-fibrillation".
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from .arrows import n_arrow_fiber
from .category import (
    FinCat,
    FinFunctor,
    Id,
    QuotaError,
    chain,
    identity_functor,
    pullback_cat,
    render_id,
    terminal,
)
from .grids import face_map
from .grothendieck import GrothendieckInput, grothendieck, slice_functor
from .homology import (
    Inconclusive,
    WEVerdict,
    induced_we_verdict,
    relative_we_verdict,
)
from .relative import KRelStructure, multidegree_window, w_star_at, w_star_functor
from .simplicial import nerve_simplices

PASS, REFUTED, INCONCLUSIVE, SKIPPED = "pass", "refuted", "inconclusive", "skipped"


@dataclass
class Case:
    id: str
    status: str
    verdict: WEVerdict | None = None
    witness: str = ""

    @classmethod
    def of(cls, case_id: str, v: WEVerdict) -> "Case":
        status = {"consistent": PASS, "refuted": REFUTED, "inconclusive": INCONCLUSIVE}[v.kind]
        return cls(case_id, status, v, "" if v.ok else str(v))


@dataclass
class PropertyReport:
    """Per-case outcomes; skipped cases never influence ``overall``."""

    property: str
    cases: list[Case] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def overall(self) -> str:
        statuses = {c.status for c in self.cases}
        if REFUTED in statuses:
            return REFUTED
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    @property
    def refuted(self) -> list[Case]:
        return [c for c in self.cases if c.status == REFUTED]

    def extend(self, other: "PropertyReport", prefix: str) -> None:
        for c in other.cases:
            self.cases.append(Case(f"{prefix}{c.id}", c.status, c.verdict, c.witness))
        self.notes.extend(f"{prefix}{n}" for n in other.notes)

    def summary(self) -> str:
        counts = {s: sum(c.status == s for c in self.cases) for s in (PASS, REFUTED, INCONCLUSIVE, SKIPPED)}
        parts = ", ".join(f"{v} {k}" for k, v in counts.items() if v)
        return f"{self.property}: {self.overall} ({parts or 'no cases'})"


def _guard(case_id: str, thunk: Callable[[], WEVerdict]) -> Case:
    try:
        return Case.of(case_id, thunk())
    except QuotaError as e:
        return Case.of(case_id, Inconclusive(f"quota: {e}"))


# -- relative functors into Cat ----------------------------------------------------


def check_relative_functor(inp: GrothendieckInput, bound: int = 4) -> PropertyReport:
    """Does every base morphism act by a weak equivalence?  Identities are skipped as trivially fine."""
    rep = PropertyReport("relative-functor")
    ids = inp.base.identity_set
    for d in inp.base.morphisms:
        if d in ids:
            continue
        rep.cases.append(_guard(render_id(d), lambda d=d: induced_we_verdict(inp.action[d], bound)))
    return rep


# -- B_n and C_n ----------------------------------------------------------------------


@dataclass(eq=False)
class RelativeMap:
    """A relative functor together with its source and target structures."""

    functor: FinFunctor
    source: KRelStructure
    target: KRelStructure


@dataclass(eq=False)
class LevelwiseMap:
    """A map of ``k``-simplicial categories given by its component at each multidegree."""

    k: int
    multidegrees: list[tuple[int, ...]]
    component: Callable[[tuple[int, ...]], FinFunctor]


def _levels(k: int, window: int) -> list[tuple[int, ...]]:
    return multidegree_window(k, window)


def _fmt_level(p: tuple[int, ...]) -> str:
    return "p" + ",".join(map(str, p)) + "/"


def check_Bn(
    f: FinFunctor | RelativeMap | LevelwiseMap, n: int, bound: int = 4, *, window: int = 1
) -> PropertyReport:
    """Property B_n: the slice assignment ``Z ↦ fX⌢n⌣Z`` is a relative functor.

    A plain functor is treated as a map of categories; a levelwise map is
    checked at every multidegree; a relative map with ``k >= 1`` is checked
    through ``w_*`` on the multidegrees ``p* <= window``.
    """
    rep = PropertyReport(f"B_{n}")
    if isinstance(f, FinFunctor):
        try:
            sd = slice_functor(f, n)
        except QuotaError as e:
            rep.cases.append(Case.of("slice", Inconclusive(f"quota: {e}")))
            return rep
        inner = check_relative_functor(sd.input, bound)
        rep.cases.extend(inner.cases)
        return rep
    if isinstance(f, RelativeMap):
        if f.source.k == 0:
            return check_Bn(f.functor, n, bound)
        rm = f
        lm = LevelwiseMap(
            rm.source.k,
            _levels(rm.source.k, window),
            lambda p: w_star_functor(rm.functor, rm.source, rm.target, p),
        )
        rep.notes.append(f"checked through w_* on multidegrees <= {window}")
        f = lm
    for p in f.multidegrees:
        try:
            comp = f.component(p)
        except QuotaError as e:
            rep.cases.append(Case.of(_fmt_level(p), Inconclusive(f"quota: {e}")))
            continue
        rep.extend(check_Bn(comp, n, bound), _fmt_level(p))
    return rep


def point_inclusion(z: FinCat, obj: Id) -> FinFunctor:
    t = terminal()
    return FinFunctor(t, z, {"*": obj}, {"1*": z.identity[obj]}, name=f"0^w->{render_id(obj)}")


@dataclass(eq=False)
class LevelwiseObject:
    k: int
    multidegrees: list[tuple[int, ...]]
    level: Callable[[tuple[int, ...]], FinCat]


def check_Cn(
    z: FinCat | KRelStructure | LevelwiseObject, n: int, bound: int = 4, *, window: int = 1
) -> PropertyReport:
    """Property C_n: every object inclusion ``0^w -> Z`` has property B_n."""
    rep = PropertyReport(f"C_{n}")
    if isinstance(z, FinCat):
        for o in z.objects:
            rep.extend(check_Bn(point_inclusion(z, o), n, bound), f"{render_id(o)}/")
        return rep
    if isinstance(z, KRelStructure):
        if z.k == 0:
            return check_Cn(z.ambient, n, bound)
        rep.notes.append(f"checked through w_* on multidegrees <= {window}")
        z = LevelwiseObject(z.k, _levels(z.k, window), lambda p, z=z: w_star_at(z, p))
    for p in z.multidegrees:
        try:
            level = z.level(p)
        except QuotaError as e:
            rep.cases.append(Case.of(_fmt_level(p), Inconclusive(f"quota: {e}")))
            continue
        rep.extend(check_Cn(level, n, bound), _fmt_level(p))
    return rep


# -- fibrillations -------------------------------------------------------------------


@dataclass(eq=False)
class Cospan:
    """The lower row ``A -probe-> A' -foot-> B`` of a fibrillation test.

    Its two feet into ``B`` are ``foot ∘ probe`` and ``foot``; ``probe`` is the
    map that must be a weak equivalence for the case to count.
    """

    probe: FinFunctor
    foot: FinFunctor
    label: str

    @property
    def feet(self) -> tuple[FinFunctor, FinFunctor]:
        return self.probe.then(self.foot), self.foot


def simplex_functor(b: FinCat, simplex: tuple) -> FinFunctor:
    """The functor ``[m] -> B`` picked out by a nerve simplex ``(x0, (f1..fm))``."""
    x0, fs = simplex
    m = len(fs)
    c = chain(m)
    objs = [x0]
    for f in fs:
        objs.append(b.tgt(f))
    on_obj = {str(i): objs[i] for i in range(m + 1)}
    on_mor = {}
    for i in range(m + 1):
        acc = b.identity[objs[i]]
        on_mor[f"{i}-{i}"] = acc
        for j in range(i + 1, m + 1):
            acc = b.compose(fs[j - 1], acc)
            on_mor[f"{i}-{j}"] = acc
    return FinFunctor(c, b, on_obj, on_mor)


def chain_map(p: int, q: int, sigma: tuple[int, ...]) -> FinFunctor:
    """Monotone ``sigma: [p] -> [q]`` as a functor of chains."""
    a, b = chain(p), chain(q)
    return FinFunctor(
        a,
        b,
        {str(i): str(sigma[i]) for i in range(p + 1)},
        {f"{i}-{j}": f"{sigma[i]}-{sigma[j]}" for i in range(p + 1) for j in range(i, p + 1)},
    )


def default_cospan_family(b: FinCat, max_dim: int = 2) -> list[Cospan]:
    """Simplex probes ``Δ[m] -> B`` for ``m <= max_dim`` (degenerate ones included).

    For each probe ``s`` there is one case with the identity as foot
    (``probe = s``) and one case per face inclusion ``Δ[m-1] -> Δ[m]`` with
    ``s`` as foot.  Order: by dimension, then nerve enumeration order.
    """
    ident = identity_functor(b)
    family = []
    for m in range(max_dim + 1):
        for s in nerve_simplices(b, m):
            sf = simplex_functor(b, s)
            tag = f"s{m}[{render_id(s[0])};{','.join(render_id(x) for x in s[1])}]"
            family.append(Cospan(sf, ident, f"{tag}|id"))
            if m >= 1:
                for i in range(m + 1):
                    family.append(Cospan(chain_map(m - 1, m, face_map(m, i)), sf, f"{tag}|d{i}"))
    return family


def _pullback_along(p: FinFunctor, u: FinFunctor) -> FinFunctor:
    """``u*p``: the projection ``A' ×_B E -> A'``."""
    _, pa, _ = pullback_cat(u, p)
    return pa


def check_fibrillation(
    p: FinFunctor,
    family: Iterable[Cospan],
    bound: int = 4,
    *,
    verdict: Callable[[FinFunctor], WEVerdict] | None = None,
) -> PropertyReport:
    """For each cospan, if the probe is a weak equivalence, is the pulled-back probe one too?"""
    we = verdict or (lambda F: induced_we_verdict(F, bound))
    rep = PropertyReport("family-fibrillation")
    for cs in family:
        try:
            pre = we(cs.probe)
            if not pre.ok:
                rep.cases.append(Case(cs.label, SKIPPED, pre, "probe is not a weak equivalence"))
                continue
            q = _pullback_along(p, cs.foot)
            _, _, j = pullback_cat(cs.probe, q)
            rep.cases.append(Case.of(cs.label, we(j)))
        except QuotaError as e:
            rep.cases.append(Case.of(cs.label, Inconclusive(f"quota: {e}")))
    return rep


def fibrillation_stability(p: FinFunctor, family: list[Cospan], bound: int = 4) -> PropertyReport:
    """Pullbacks of ``p`` along the family feet are again family-fibrillations, and
    pullbacks of weak equivalences along ``p`` stay weak equivalences."""
    rep = PropertyReport("fibrillation-stability")
    seen = set()
    for cs in family:
        key = (tuple(sorted(cs.foot.on_objects.items(), key=repr)), tuple(sorted(cs.foot.on_morphisms.items(), key=repr)))
        if key in seen:
            continue
        seen.add(key)
        q = _pullback_along(p, cs.foot)
        sub = check_fibrillation(q, default_cospan_family(cs.foot.source, 1), bound)
        rep.extend(sub, f"pullback[{cs.label}]/")
    for cs in family:
        if not all(m in cs.foot.on_morphisms and cs.foot(m) == m for m in cs.foot.source.morphisms):
            continue
        if cs.foot.source is not p.target:
            continue
        pre = induced_we_verdict(cs.probe, bound)
        if not pre.ok:
            continue
        _, _, j = pullback_cat(cs.probe, p)
        rep.cases.append(Case.of(f"we-pullback[{cs.label}]", induced_we_verdict(j, bound)))
    return rep


@dataclass
class QuillenReport:
    relative: PropertyReport
    fibrillation: PropertyReport

    @property
    def agree(self) -> bool:
        a, b = self.relative.overall, self.fibrillation.overall
        return a == b and a in (PASS, REFUTED)

    @property
    def overall(self) -> str:
        return self.relative.overall if self.agree else INCONCLUSIVE


def quillen_lemma_harness(inp: GrothendieckInput, bound: int = 4) -> QuillenReport:
    """Relativity of ``F`` against family-fibrillation of ``Gr F -> D``."""
    if inp.variance != "co":
        raise ValueError("the harness takes covariant inputs")
    rel = check_relative_functor(inp, bound)
    _, pi = grothendieck(inp)
    fib = check_fibrillation(pi, default_cospan_family(inp.base), bound)
    return QuillenReport(rel, fib)


# -- the two k = 1 harness paths ----------------------------------------------------------


@dataclass
class TwoPathReport:
    direct: PropertyReport
    levelwise: PropertyReport
    size_mismatches: list[str]

    @property
    def agree(self) -> bool:
        return self.direct.overall == self.levelwise.overall and not self.size_mismatches


def maximal_k(c: FinCat, k: int) -> KRelStructure:
    full = frozenset(c.morphisms)
    return KRelStructure(c, tuple(full for _ in range(k)), full, name=f"{c.name}^w")


def relative_cospan_family(
    z: KRelStructure, max_dim: int = 2
) -> list[tuple[Cospan, KRelStructure, KRelStructure]]:
    """Probes ``[m]^w -> Z`` through ``w`` with the structures of probe source and target."""
    out = []
    for cs in default_cospan_family(z.ambient, max_dim):
        identity_foot = cs.label.endswith("|id")
        s = cs.probe if identity_foot else cs.foot
        if not all(s(m) in z.w_mask for m in s.source.morphisms):
            continue
        a = maximal_k(cs.probe.source, z.k)
        b = z if identity_foot else maximal_k(cs.probe.target, z.k)
        out.append((cs, a, b))
    return out


def check_rel_fibrillation(
    p: FinFunctor, e: KRelStructure, z: KRelStructure, bound: int = 3, max_dim: int = 2
) -> PropertyReport:
    """Family-fibrillation of relative categories, verdicts through the relative nerve."""
    from .arrows import rel_pullback

    rep = PropertyReport("family-fibrillation (relative)")
    for cs, a, b in relative_cospan_family(z, max_dim):
        try:
            pre = relative_we_verdict(cs.probe, a, b, bound)
            if not pre.ok:
                rep.cases.append(Case(cs.label, SKIPPED, pre, "probe is not a weak equivalence"))
                continue
            eb, q, _ = rel_pullback(cs.foot, p, b, e)
            ea, _, j = rel_pullback(cs.probe, q, a, eb)
            rep.cases.append(Case.of(cs.label, relative_we_verdict(j, ea, eb, bound)))
        except QuotaError as err:
            rep.cases.append(Case.of(cs.label, Inconclusive(f"quota: {err}")))
    return rep


def two_path_harness(
    f: FinFunctor, x: KRelStructure, z: KRelStructure, n: int, bound: int = 3, *, window: int = 1
) -> TwoPathReport:
    """Two routes to the homotopy-pullback conclusion for ``k = 1``.

    Direct: ``π: fX⌢n⌣Z -> Z`` is a family-fibrillation of relative
    categories.  Levelwise: for each ``p <= window`` the projection of
    ``(w_p f)(w_p X)⌢n⌣(w_p Z)`` is a family-fibrillation of categories, and
    its size matches ``w_p`` applied to the direct fiber object.
    """
    if z.k != 1 or x.k != 1:
        raise ValueError("two_path_harness is for k = 1")
    fib = n_arrow_fiber(f, n, x, z)
    direct = check_rel_fibrillation(fib.pi, fib.structure, z, bound)
    level = PropertyReport("family-fibrillation (levelwise)")
    mismatches: list[str] = []
    for p in multidegree_window(1, window):
        wf = w_star_functor(f, x, z, p)
        lf = n_arrow_fiber(wf, n)
        whole = w_star_at(fib.structure, p)
        mine = lf.structure.ambient
        if (len(whole.objects), len(whole.morphisms)) != (len(mine.objects), len(mine.morphisms)):
            mismatches.append(
                f"{_fmt_level(p)} w_p of fiber {len(whole.objects)}/{len(whole.morphisms)}"
                f" vs fiber of w_p f {len(mine.objects)}/{len(mine.morphisms)}"
            )
        level.extend(check_fibrillation(lf.pi, default_cospan_family(wf.target), bound), _fmt_level(p))
    return TwoPathReport(direct, level, mismatches)
