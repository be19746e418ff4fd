"""Closed-form homotopy pullbacks of finite groupoids and the B_n theorem harness.

For ``f: G1 -> G`` and ``g: G2 -> G`` the homotopy pullback is computed
component-wise.  Fix a component ``C`` of ``G`` with base object ``o`` and
paths ``p_y: y -> o`` from a spanning tree.  A component ``C1`` of ``G1``
(base ``o1``) over ``C`` gives ``φ(a) = p ∘ f(a) ∘ p⁻¹`` on ``Aut(o1)``, and
likewise ``ψ`` for ``G2``.  Components of the homotopy pullback over
``(C1, C2)`` are the orbits of ``(a, b)·γ = φ(a) γ ψ(b)⁻¹`` on ``Aut(o)``,
that is the double cosets ``φ(Aut o1) \\ Aut o / ψ(Aut o2)``, and the
isotropy at ``γ`` is ``{(a, b) : ψ(b) = γ⁻¹ φ(a) γ}``.  Representatives are
the least elements of their orbits in canonical id order.

Nothing here uses the zigzag constructions, so the result can serve as an
independent check on them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .arrows import EmbedReport, n_arrow_pullback, zigzag_embed
from .category import CategoryError, FinCat, FinFunctor, Id, QuotaError, group_category, render_id, sort_key
from .homology import HomologySignature, category_homology, pi0, relative_homology, zero_signature
from .properties import INCONCLUSIVE, PASS, REFUTED, SKIPPED, PropertyReport, check_Bn
from .relative import KRelStructure, cat_hat


@dataclass
class IsotropyGroup:
    elements: list[Id]
    mult: dict[tuple[Id, Id], Id]
    unit: Id

    def axiom_problems(self) -> list[str]:
        els = set(self.elements)
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.mult.get((a, b)) not in els:
                    out.append(f"not closed at {a!r}, {b!r}")
        if out:
            return out
        for a in self.elements:
            if self.mult[(self.unit, a)] != a or self.mult[(a, self.unit)] != a:
                out.append(f"unit fails at {a!r}")
            if not any(self.mult[(a, b)] == self.unit for b in self.elements):
                out.append(f"no inverse for {a!r}")
            for b in self.elements:
                for c in self.elements:
                    if self.mult[(self.mult[(a, b)], c)] != self.mult[(a, self.mult[(b, c)])]:
                        out.append(f"not associative at {a!r}, {b!r}, {c!r}")
        return out

    def category(self) -> FinCat:
        return group_category(self.elements, self.mult, name="BK")


@dataclass
class GroupoidPresentation:
    """A disjoint union of one-object groupoids."""

    components: list[tuple[Id, IsotropyGroup]] = field(default_factory=list)

    def homology(self, bound: int = 4) -> HomologySignature:
        total = zero_signature(bound - 1)
        for _, grp in self.components:
            total = total + category_homology(grp.category(), bound)
        return total

    def summary(self) -> str:
        sizes = ",".join(str(len(g.elements)) for _, g in self.components)
        return f"{len(self.components)} components, isotropy orders [{sizes}]"


def groupoid_problems(c: FinCat) -> list[str]:
    return [f"{render_id(m)} is not invertible in {c.name}" for m in c.morphisms if c.inverse(m) is None]


def _components_with_paths(c: FinCat) -> dict[Id, tuple[Id, Id]]:
    """Each object to ``(base, path to base)``; base is the least object of its component."""
    out: dict[Id, tuple[Id, Id]] = {}
    for start in sorted(c.objects, key=sort_key):
        if start in out:
            continue
        out[start] = (start, c.identity[start])
        queue = deque([start])
        while queue:
            y = queue.popleft()
            to_base = out[y][1]
            for m in sorted(c.into(y), key=sort_key):
                x = c.src(m)
                if x not in out:
                    out[x] = (start, c.compose(to_base, m))
                    queue.append(x)
            for m in sorted(c.out(y), key=sort_key):
                x = c.tgt(m)
                if x not in out:
                    out[x] = (start, c.compose(to_base, c.inverse(m)))
                    queue.append(x)
    return out


def groupoid_pullback_oracle(f: FinFunctor, g: FinFunctor) -> GroupoidPresentation:
    if f.target is not g.target:
        raise CategoryError("oracle: f and g need the same target")
    G, G1, G2 = f.target, f.source, g.source
    bad = groupoid_problems(G) + groupoid_problems(G1) + groupoid_problems(G2)
    if bad:
        raise CategoryError("oracle needs groupoids: " + "; ".join(bad[:3]))
    paths = _components_with_paths(G)

    def transported(F: FinFunctor, base: Id) -> tuple[Id, Id, list[Id], dict[Id, Id]]:
        """Base of the target component, ``Aut(base)`` and the conjugated map on it."""
        fo = F.ob(base)
        o, p = paths[fo]
        p_inv = G.inverse(p)
        auts = sorted(F.source.hom(base, base), key=sort_key)
        return o, p, auts, {a: G.compose(p, G.compose(F(a), p_inv)) for a in auts}

    bases1 = sorted({b for b, _ in _components_with_paths(G1).values()}, key=sort_key)
    bases2 = sorted({b for b, _ in _components_with_paths(G2).values()}, key=sort_key)
    pres = GroupoidPresentation()
    for o1 in bases1:
        o, _, aut1, phi = transported(f, o1)
        for o2 in bases2:
            o_, _, aut2, psi = transported(g, o2)
            if o_ != o:
                continue
            aut = sorted(G.hom(o, o), key=sort_key)
            inv = {x: G.inverse(x) for x in aut}
            seen: set[Id] = set()
            for gamma in aut:
                if gamma in seen:
                    continue
                orbit = {G.compose(phi[a], G.compose(gamma, inv[psi[b]])) for a in aut1 for b in aut2}
                seen |= orbit
                stab = [
                    (a, b) for a in aut1 for b in aut2 if psi[b] == G.compose(inv[gamma], G.compose(phi[a], gamma))
                ]
                mult = {
                    (x, y): (G1.compose(x[0], y[0]), G2.compose(x[1], y[1])) for x in stab for y in stab
                }
                unit = (G1.identity[o1], G2.identity[o2])
                pres.components.append(((o1, o2, gamma), IsotropyGroup(stab, mult, unit)))
    return pres


# -- the theorem harness -------------------------------------------------------------


@dataclass
class TheoremReport:
    hypothesis: PropertyReport
    mode: str
    construction: HomologySignature | None = None
    construction_pi0: int | None = None
    oracle: GroupoidPresentation | None = None
    oracle_homology: HomologySignature | None = None
    embed: EmbedReport | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def homology_match(self) -> bool | None:
        if self.oracle_homology is None or self.construction is None:
            return None
        top = min(self.construction.exact_through, self.oracle_homology.exact_through)
        return self.construction.through(top) == self.oracle_homology.through(top)

    @property
    def overall(self) -> str:
        if self.mode == "skipped":
            return SKIPPED
        if self.mode == "inconclusive":
            return INCONCLUSIVE
        if self.embed is not None and not self.embed.squares_ok:
            return REFUTED
        if self.homology_match is False:
            return REFUTED
        if self.embed is not None and self.embed.verdict_h.kind == "refuted":
            return REFUTED
        if self.embed is not None and self.embed.verdict_h.kind == "inconclusive":
            return INCONCLUSIVE
        return PASS


def verify_theorem_Bn(
    f: FinFunctor,
    g: FinFunctor,
    n: int,
    bound: int = 4,
    *,
    x: KRelStructure | None = None,
    y: KRelStructure | None = None,
    z: KRelStructure | None = None,
    window: int = 0,
) -> TheoremReport:
    """Check that the n-arrow pullback of ``f`` and ``g`` is a homotopy pullback.

    The B_n hypothesis is checked first (for ``k >= 1`` through ``w_*`` on
    multidegrees ``<= window``); when it fails the report is skipped.  With
    groupoid inputs the construction's homology is compared with the oracle
    through ``bound - 1``; otherwise only the embedding diagram is checked.
    """
    x = x or cat_hat(f.source)
    y = y or cat_hat(g.source)
    z = z or cat_hat(f.target)
    from .properties import RelativeMap

    hyp = check_Bn(f if z.k == 0 else RelativeMap(f, x, z), n, bound, window=window)
    if hyp.overall != PASS:
        return TheoremReport(hyp, "skipped", notes=[f"hypothesis B_{n} not established: {hyp.overall}"])
    rep = TheoremReport(hyp, "oracle")
    try:
        pb = n_arrow_pullback(f, g, n, x, y, z)
        rep.construction = relative_homology(pb.structure, bound)
        rep.construction_pi0 = pi0(pb.structure.ambient)
        rep.embed = zigzag_embed(f, g, n, x, y, z, bound=bound)
    except QuotaError as e:
        rep.notes.append(f"quota: {e}")
        rep.mode = "inconclusive"
        return rep
    if any(groupoid_problems(c) for c in (f.source, g.source, f.target)):
        rep.mode = "embed-only"
        rep.notes.append("inputs are not groupoids: no closed-form oracle, structural checks only")
        return rep
    rep.oracle = groupoid_pullback_oracle(f, g)
    rep.oracle_homology = rep.oracle.homology(bound)
    return rep
