"""Relative and k-relative structures over finite categories.

A :class:`KRelStructure` is an ambient :class:`FinCat` together with ``k``
wide subcategories ``v_1 .. v_k`` and a wide subcategory ``w`` of weak
equivalences, each stored as a frozenset of morphism ids.  ``k = 0`` is the
maximal case (``w`` is everything) and ``k = 1`` is an ordinary relative
category (``v_1`` is everything).
"""

from __future__ import annotations

import itertools
import weakref
from collections import deque
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Any

from .category import (
    CategoryError,
    FinCat,
    FinFunctor,
    Id,
    check_quota,
    chain,
    opposite,
    product,
    render_id,
    validate_functor,
)
from .grids import Grid, enumerate_grids, precompose, stack


@dataclass(eq=False)
class KRelStructure:
    ambient: FinCat
    v_masks: tuple[frozenset, ...]
    w_mask: frozenset
    saturated: bool | None = None
    name: str = ""

    @property
    def k(self) -> int:
        return len(self.v_masks)

    def mask(self, which: str | int) -> frozenset:
        """``"a"``, ``"w"`` or a 1-based index ``i`` for ``v_i``."""
        if which == "a":
            return frozenset(self.ambient.morphisms)
        if which == "w":
            return self.w_mask
        return self.v_masks[int(which) - 1]

    def is_relative_functor(self, F: FinFunctor, target: "KRelStructure") -> bool:
        if any(F(m) not in target.w_mask for m in self.w_mask):
            return False
        for i in range(min(self.k, target.k)):
            if any(F(m) not in target.v_masks[i] for m in self.v_masks[i]):
                return False
        return True


def cat_hat(c: FinCat) -> KRelStructure:
    """``c`` as a 0-relative (maximal) object."""
    return KRelStructure(c, (), frozenset(c.morphisms), saturated=True, name=c.name)


def relative(c: FinCat, w: Iterable[Id], name: str = "") -> KRelStructure:
    """An ordinary relative category (``k = 1``)."""
    wm = frozenset(w) | frozenset(c.identity.values())
    return KRelStructure(c, (frozenset(c.morphisms),), wm, name=name or c.name)


def maximal(c: FinCat) -> KRelStructure:
    return KRelStructure(c, (frozenset(c.morphisms),), frozenset(c.morphisms), saturated=True, name=c.name)


def minimal(c: FinCat) -> KRelStructure:
    return KRelStructure(
        c, (frozenset(c.morphisms),), frozenset(c.identity.values()), saturated=True, name=c.name
    )


def shape_chain(p: int, flavor: str, k: int, i: int | None = None) -> KRelStructure:
    """The shapes ``p^w``, ``p^{v_i}`` and ``p^v`` on the chain ``[p]``.

    ``flavor`` is ``"w"`` (every mask full), ``"v"`` (``v_i`` full, the other
    ``v_j`` and ``w`` discrete; needs ``1 <= i <= k``) or ``"minimal"``
    (all ``v_j`` full, ``w`` discrete).
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    c = chain(p)
    full = frozenset(c.morphisms)
    ids = frozenset(c.identity.values())
    if flavor == "w":
        return KRelStructure(c, (full,) * k, full, saturated=True, name=f"{p}^w")
    if flavor == "v":
        if i is None or not 1 <= i <= k:
            raise ValueError(f"v_i index {i} out of range for k={k}")
        vs = tuple(full if j == i else ids for j in range(1, k + 1))
        return KRelStructure(c, vs, ids, name=f"{p}^v{i}")
    if flavor == "minimal":
        if k == 0:
            raise ValueError("a 0-relative structure is maximal")
        return KRelStructure(c, (full,) * k, ids, saturated=True, name=f"{p}^v")
    raise ValueError(f"unknown flavor {flavor!r}")


# -- validation -------------------------------------------------------------


@dataclass
class AxiomResult:
    axiom: str
    status: str  # "pass" | "fail" | "inconclusive"
    witness: Any = None
    detail: str = ""


@dataclass
class KRelReport:
    results: list[AxiomResult] = field(default_factory=list)

    def status(self, axiom: str) -> str:
        return next(r.status for r in self.results if r.axiom == axiom)

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.results)


def _closure(c: FinCat, gens: Iterable[Id]) -> set[Id]:
    """Smallest composition-closed set containing ``gens`` and all identities."""
    seen = set(gens) | set(c.identity.values())
    frontier = deque(seen)
    while frontier:
        f = frontier.popleft()
        for g in list(seen):
            for h in ((c.compose(g, f),) if c.tgt(f) == c.src(g) else ()) + (
                (c.compose(f, g),) if c.tgt(g) == c.src(f) else ()
            ):
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
    return seen


def mask_problems(c: FinCat, mask: frozenset, label: str) -> list[AxiomResult]:
    out = []
    missing = [x for x in c.objects if c.identity[x] not in mask]
    if missing:
        out.append(AxiomResult(f"{label} contains identities", "fail", missing[0]))
    unknown = [m for m in mask if m not in c.morphisms]
    if unknown:
        out.append(AxiomResult(f"{label} within ambient", "fail", unknown[0]))
        return out
    for f in mask:
        for g in c.out(c.tgt(f)):
            if g in mask and c.compose(g, f) not in mask:
                out.append(AxiomResult(f"{label} closed under composition", "fail", (g, f)))
                return out
    return out


def validate_krel(c: KRelStructure, relation_search_depth: int = 4) -> KRelReport:
    """Check masks, containments and the two generation axioms.

    Axiom (ii) uses a bounded congruence closure on words of non-identity
    generators (see :func:`check_relations`).
    """
    a = c.ambient
    report = KRelReport()
    problems = mask_problems(a, c.w_mask, "w")
    for i, v in enumerate(c.v_masks, 1):
        problems += mask_problems(a, v, f"v{i}")
        if not c.w_mask <= v:
            problems.append(AxiomResult(f"w ⊆ v{i}", "fail", next(iter(c.w_mask - v))))
    if c.k == 0 and c.w_mask != frozenset(a.morphisms):
        problems.append(AxiomResult("k=0 means w = ambient", "fail"))
    if c.k == 1 and c.v_masks[0] != frozenset(a.morphisms):
        problems.append(AxiomResult("k=1 means v1 = ambient", "fail"))
    report.results.append(
        AxiomResult("masks", "fail" if problems else "pass", problems[0].witness if problems else None,
                    "; ".join(p.axiom for p in problems))
    )
    if problems:
        return report
    if c.k == 0:
        report.results.append(AxiomResult("generation (i)", "pass"))
        report.results.append(AxiomResult("relations (ii)", "pass"))
        return report
    gens = set().union(*c.v_masks)
    missing = set(a.morphisms) - _closure(a, gens)
    report.results.append(
        AxiomResult("generation (i)", "fail" if missing else "pass", next(iter(missing), None))
    )
    report.results.append(check_relations(c, relation_search_depth))
    return report


def _rewrites(c: KRelStructure, word: tuple, depth: int) -> tuple[list[tuple], bool]:
    """Neighbours of a word under the generating moves; flag if a move was cut by ``depth``."""
    a = c.ambient
    start, letters = word
    vs = c.v_masks
    ids = a.identity_set
    out: list[tuple] = []
    cut = False

    def strip(ls: Iterable[Id]) -> tuple:
        return tuple(m for m in ls if m not in ids)

    for pos, m in enumerate(letters):
        for v in vs:
            if m not in v:
                continue
            for x in v:
                if x in ids or a.src(x) != a.src(m):
                    continue
                for y in a.hom(a.tgt(x), a.tgt(m)):
                    if y in v and y not in ids and a.compose(y, x) == m:
                        if len(letters) + 1 > depth:
                            cut = True
                        else:
                            out.append((start, letters[:pos] + (x, y) + letters[pos + 1:]))
    for pos in range(len(letters) - 1):
        x, y = letters[pos], letters[pos + 1]
        comp = a.compose(y, x)
        for i, vi in enumerate(vs):
            if x not in vi:
                continue
            for j, vj in enumerate(vs):
                if y not in vj:
                    continue
                if i == j:
                    out.append((start, letters[:pos] + strip((comp,)) + letters[pos + 2:]))
                    continue
                # square: y∘x = x2∘y1 with y1 in v_j, x2 in v_i
                for y1 in a.out(a.src(x)):
                    if y1 not in vj:
                        continue
                    for x2 in a.hom(a.tgt(y1), a.tgt(y)):
                        if x2 in vi and a.compose(x2, y1) == comp:
                            out.append((start, letters[:pos] + strip((y1, x2)) + letters[pos + 2:]))
    return out, cut


def enumerate_words(c: KRelStructure, depth: int) -> list[tuple]:
    a = c.ambient
    gens = [m for m in sorted(set().union(*c.v_masks), key=repr) if m not in a.identity_set]
    by_src: dict[Id, list[Id]] = {}
    for m in gens:
        by_src.setdefault(a.src(m), []).append(m)
    words: list[tuple] = [(x, ()) for x in a.objects]
    frontier = list(words)
    for _ in range(depth):
        nxt = []
        for start, letters in frontier:
            end = a.tgt(letters[-1]) if letters else start
            for m in by_src.get(end, ()):
                nxt.append((start, letters + (m,)))
        words += nxt
        frontier = nxt
        check_quota(0, len(words), "relation word search")
    return words


def word_value(c: KRelStructure, word: tuple) -> Id:
    start, letters = word
    return c.ambient.compose_path(letters) if letters else c.ambient.identity[start]


def check_relations(c: KRelStructure, depth: int) -> AxiomResult:
    """Bounded congruence closure for axiom (ii).

    Words are sequences of non-identity generators from the union of the
    ``v_i`` of length at most ``depth``.  Moves: merge two adjacent letters of
    a common ``v_i``; split a letter into two letters of one ``v_i``; swap an
    adjacent ``v_i``/``v_j`` pair through a commuting square (identity sides
    allowed, identities dropped).  Two words with equal value must be
    connected.  An unconnected pair is a failure when neither class was
    truncated by the depth bound, otherwise inconclusive.
    """
    words = enumerate_words(c, depth)
    parent: dict[tuple, tuple] = {w: w for w in words}
    truncated: dict[tuple, bool] = {}

    def find(w: tuple) -> tuple:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for w in words:
        nbrs, cut = _rewrites(c, w, depth)
        if cut:
            truncated[w] = True
        for n in nbrs:
            if n not in parent:
                truncated[w] = True
                continue
            rw, rn = find(w), find(n)
            if rw != rn:
                parent[rw] = rn
    class_cut: dict[tuple, bool] = {}
    for w, flag in truncated.items():
        if flag:
            class_cut[find(w)] = True
    by_value: dict[Id, tuple] = {}
    inconclusive = None
    for w in words:
        val = word_value(c, w)
        first = by_value.setdefault(val, w)
        if find(first) != find(w):
            if class_cut.get(find(first)) or class_cut.get(find(w)):
                inconclusive = inconclusive or (first, w)
                continue
            return AxiomResult("relations (ii)", "fail", (first, w),
                               f"words {_fmt_word(first)} and {_fmt_word(w)} agree in the ambient "
                               "category but are not related by the generating relations")
    if inconclusive:
        return AxiomResult("relations (ii)", "inconclusive", inconclusive, f"depth {depth}")
    return AxiomResult("relations (ii)", "pass")


def _fmt_word(w: tuple) -> str:
    start, letters = w
    return "·".join(render_id(m) for m in letters) if letters else f"1_{render_id(start)}"


# -- strict homotopies ------------------------------------------------------


@dataclass
class HomotopyVerdict:
    valid: bool
    problems: list[str] = field(default_factory=list)


def check_strict_homotopy(
    h: FinFunctor,
    f: FinFunctor,
    g: FinFunctor,
    we_oracle: Callable[[Id], Any],
) -> HomotopyVerdict:
    """Check that ``h: C x 1^w -> D`` is a strict homotopy from ``f`` to ``g``.

    ``h.source`` must be ``product(C, chain(1))``.  ``we_oracle`` receives a
    morphism of ``D`` and returns a bool or a verdict object with an ``ok``
    attribute.
    """
    problems = [str(v) for v in validate_functor(h)]
    C = f.source
    for x in C.objects:
        for end, F in (("0", f), ("1", g)):
            if h.ob((x, end)) != F.ob(x):
                problems.append(f"endpoint {end} mismatch at object {render_id(x)}")
    for m in C.morphisms:
        for end, F in (("0-0", f), ("1-1", g)):
            if h((m, end)) != F(m):
                problems.append(f"endpoint {end[0]} mismatch at morphism {render_id(m)}")
    for x in C.objects:
        comp = h((C.identity[x], "0-1"))
        verdict = we_oracle(comp)
        ok = verdict if isinstance(verdict, bool) else getattr(verdict, "ok", False)
        if not ok:
            problems.append(f"component at {render_id(x)} is not a weak equivalence")
    return HomotopyVerdict(not problems, problems)


def cylinder(c: FinCat) -> FinCat:
    """``c x 1^w`` as a plain category (pairs with the chain ``[1]``)."""
    return product(c, chain(1))[0]


# -- 3-arrow calculi --------------------------------------------------------

_op_cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


@dataclass(eq=False)
class ThreeArrowCalculus:
    u_mask: frozenset
    v_mask: frozenset
    factorization: dict[Id, tuple[Id, Id]]
    witnesses: dict[tuple[Id, Id, Id, Id], Id] = field(default_factory=dict)


@dataclass
class CalculusReport:
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if r.status != "pass"]


def _cocones(c: FinCat, mask: frozenset, b: Id, cc: Id, u: Id, m: Id) -> list[tuple]:
    """Cocones ``(P, p1: b->P, p2: cc->P)`` in ``mask`` under the span ``b <-u- a -m-> cc``."""
    out = []
    for P in c.objects:
        for p1 in c.hom(b, P):
            if p1 not in mask:
                continue
            for p2 in c.hom(cc, P):
                if p2 in mask and c.compose(p1, u) == c.compose(p2, m):
                    out.append((P, p1, p2))
    return out


def pushouts(c: FinCat, mask: frozenset, u: Id, m: Id) -> list[tuple]:
    """All pushouts, inside the subcategory ``mask``, of the span ``u``, ``m`` (common source)."""
    b, cc = c.tgt(u), c.tgt(m)
    cones = _cocones(c, mask, b, cc, u, m)
    result = []
    for P, p1, p2 in cones:
        universal = True
        for Q, q1, q2 in cones:
            n = sum(
                1
                for t in c.hom(P, Q)
                if t in mask and c.compose(t, p1) == q1 and c.compose(t, p2) == q2
            )
            if n != 1:
                universal = False
                break
        if universal:
            result.append((P, p1, p2))
    return result


def pullbacks(c: FinCat, mask: frozenset, v: Id, m: Id) -> list[tuple]:
    """All pullbacks ``(P, p1: P->src v, p2: P->src m)`` of the cospan ``v``, ``m``."""
    op = _op_cache.get(c)
    if op is None:
        op = _op_cache[c] = opposite(c)
    return pushouts(op, mask, v, m)


def _calculus_on(
    z: KRelStructure, cal: ThreeArrowCalculus, mask: frozenset, label: str, strict_extra: bool
) -> list[AxiomResult]:
    a = z.ambient
    res: list[AxiomResult] = []
    w = z.w_mask

    # (i) pushouts of U-maps
    bad = None
    for u in sorted(cal.u_mask, key=repr):
        for m in a.out(a.src(u)):
            if m not in mask:
                continue
            pos = pushouts(a, mask, u, m)
            if not pos:
                bad = bad or ("no pushout", u, m)
            elif any(p2 not in cal.u_mask for _, _, p2 in pos):
                bad = bad or ("pushout leaves U", u, m)
    res.append(AxiomResult(f"{label}: pushouts of U (i)", "fail" if bad else "pass", bad))

    # (ii) pullbacks of V-maps
    bad = None
    for v in sorted(cal.v_mask, key=repr):
        for m in a.into(a.tgt(v)):
            if m not in mask:
                continue
            pbs = pullbacks(a, mask, v, m)
            if not pbs:
                bad = bad or ("no pullback", v, m)
            elif any(p2 not in cal.v_mask for _, _, p2 in pbs):
                bad = bad or ("pullback leaves V", v, m)
    res.append(AxiomResult(f"{label}: pullbacks of V (ii)", "fail" if bad else "pass", bad))

    if strict_extra:
        bad = None
        for u in sorted(cal.u_mask, key=repr):
            for m in a.out(a.src(u)):
                if m in w and m in mask:
                    for _, p1, _ in pushouts(a, mask, u, m):
                        if p1 not in w:
                            bad = bad or (u, m)
        res.append(AxiomResult(f"{label}: pushouts of w along U (i')", "fail" if bad else "pass", bad))
        bad = None
        for v in sorted(cal.v_mask, key=repr):
            for m in a.into(a.tgt(v)):
                if m in w and m in mask:
                    for _, p1, _ in pullbacks(a, mask, v, m):
                        if p1 not in w:
                            bad = bad or (v, m)
        res.append(AxiomResult(f"{label}: pullbacks of w along V (ii')", "fail" if bad else "pass", bad))

    # (iii) functorial factorization
    bad = None
    for f in sorted(w, key=repr):
        fac = cal.factorization.get(f)
        if fac is None:
            bad = bad or ("missing factorization", f)
            continue
        u, v = fac
        if u not in cal.u_mask or v not in cal.v_mask or a.tgt(u) != a.src(v) or a.compose(v, u) != f:
            bad = bad or ("invalid factorization", f)
    if bad is None:
        bad = _check_functoriality(z, cal, mask)
    res.append(AxiomResult(f"{label}: functorial factorization (iii)", "fail" if bad else "pass", bad))
    return res


def arrow_squares(a: FinCat, w: frozenset, mask: frozenset) -> list[tuple[Id, Id, Id, Id]]:
    """Morphisms ``(f, f', top, bottom)`` of the arrow category of ``w`` with sides in ``mask``."""
    out = []
    for f in w:
        for g in w:
            for top in a.hom(a.src(f), a.src(g)):
                if top not in mask:
                    continue
                for bot in a.hom(a.tgt(f), a.tgt(g)):
                    if bot in mask and a.compose(bot, f) == a.compose(g, top):
                        out.append((f, g, top, bot))
    return out


def _check_functoriality(z: KRelStructure, cal: ThreeArrowCalculus, mask: frozenset) -> Any:
    a = z.ambient
    squares = arrow_squares(a, z.w_mask, mask)
    for sq in squares:
        f, g, top, bot = sq
        m = cal.witnesses.get(sq)
        uf, vf = cal.factorization[f]
        ug, vg = cal.factorization[g]
        if m is None or m not in mask:
            return ("missing witness", sq)
        if a.morphisms[m] != (a.tgt(uf), a.tgt(ug)):
            return ("witness type", sq)
        if a.compose(m, uf) != a.compose(ug, top) or a.compose(vg, m) != a.compose(bot, vf):
            return ("witness does not commute", sq)
        if f == g and a.is_identity(top) and a.is_identity(bot) and not a.is_identity(m):
            return ("identity square not sent to identity", sq)
    index = {}
    for sq in squares:
        index.setdefault(sq[0], []).append(sq)
    for s1 in squares:
        for s2 in index.get(s1[1], ()):
            comp = (s1[0], s2[1], a.compose(s2[2], s1[2]), a.compose(s2[3], s1[3]))
            if cal.witnesses.get(comp) != a.compose(cal.witnesses[s2], cal.witnesses[s1]):
                return ("composition of squares", s1, s2)
    return None


def derive_witnesses(z: KRelStructure, u_mask: frozenset, v_mask: frozenset,
                     factorization: dict[Id, tuple[Id, Id]]) -> dict:
    """Fill in the connecting morphism of every square where it is unique (corpus helper)."""
    a = z.ambient
    wit = {}
    for sq in arrow_squares(a, z.w_mask, frozenset(a.morphisms)):
        f, g, top, bot = sq
        uf, vf = factorization[f]
        ug, vg = factorization[g]
        cands = [
            m
            for m in a.hom(a.tgt(uf), a.tgt(ug))
            if a.compose(m, uf) == a.compose(ug, top) and a.compose(vg, m) == a.compose(bot, vf)
        ]
        if len(cands) == 1:
            wit[sq] = cands[0]
    return wit


def check_three_arrow_calculus(
    z: KRelStructure, cal: ThreeArrowCalculus, strict: bool = False
) -> CalculusReport:
    """Exhaustively check the 3-arrow calculus axioms (and, if ``strict``, the restrictions)."""
    a = z.ambient
    report = CalculusReport()
    for label, m in (("U", cal.u_mask), ("V", cal.v_mask)):
        probs = mask_problems(a, m, label)
        if not m <= z.w_mask:
            probs.append(AxiomResult(f"{label} ⊆ w", "fail", next(iter(m - z.w_mask))))
        report.results += probs or [AxiomResult(f"{label} is a subcategory of w", "pass")]
    if not report.ok:
        return report
    full = frozenset(a.morphisms)
    report.results += _calculus_on(z, cal, full, "a", strict)
    if strict:
        report.results += _calculus_on(z, cal, z.w_mask, "w", False)
        for i, v in enumerate(z.v_masks, 1):
            if v != full:
                report.results += _calculus_on(z, cal, v, f"v{i}", False)
    return report


def iso_calculus(z: KRelStructure) -> ThreeArrowCalculus:
    """``U = V =`` isomorphisms lying in ``w``; each iso factors as ``iso∘id``."""
    a = z.ambient
    isos = frozenset(m for m in z.w_mask if a.inverse(m) is not None)
    fac = {m: (a.identity[a.src(m)], m) for m in isos}
    wit = derive_witnesses(z, isos, isos, fac) if z.w_mask == isos else {}
    return ThreeArrowCalculus(isos, isos, fac, wit)


# -- the higher equivalence functor ----------------------------------------


def wstar_shape(c: KRelStructure, p_star: tuple[int, ...]) -> tuple[tuple[int, ...], list]:
    """Grid shape and per-direction masks for ``p_k^{v_k} x ... x p_1^{v_1}``."""
    if len(p_star) != c.k:
        raise ValueError(f"multidimension {p_star} has wrong length for k={c.k}")
    masks = [c.v_masks[c.k - 1 - t] for t in range(c.k)]
    return tuple(p_star), masks


def w_star_at(c: KRelStructure, p_star: tuple[int, ...]) -> FinCat:
    """``w_{p*} C``: relative grid functors with natural weak equivalences as maps.

    Objects are grids of shape ``p*``; a morphism is a grid of shape
    ``p* + (1,)`` whose last-direction edges lie in ``w``.
    """
    if c.k < 1:
        raise ValueError("w_star_at needs k >= 1")
    a = c.ambient
    dims, masks = wstar_shape(c, tuple(p_star))
    objs = enumerate_grids(a, dims, masks)
    mors_list = enumerate_grids(a, dims + (1,), masks + [c.w_mask])
    last = len(dims)
    mors = {}
    for g in mors_list:
        _, s = precompose(a, dims + (1,), g, last, (0,))
        _, t = precompose(a, dims + (1,), g, last, (1,))
        mors[g] = (s, t)
    check_quota(len(objs), len(mors), f"w_{p_star}")
    # a grid of shape dims is stored exactly like one of shape dims + (0,)
    ident = {o: precompose(a, dims + (0,), o, last, (0, 0))[1] for o in objs}

    def comp(beta: Grid, alpha: Grid) -> Grid:
        s, mid, t = mors[alpha][0], mors[alpha][1], mors[beta][1]
        big = stack(a, dims, [s, mid, t], [alpha, beta])
        return precompose(a, dims + (2,), big, last, (0, 2))[1]

    return FinCat(objs, mors, ident, comp, name=f"w_{p_star}({c.name})")


def w_star_functor(F: FinFunctor, source: KRelStructure, target: KRelStructure,
                   p_star: tuple[int, ...]) -> FinFunctor:
    """``w_{p*} F`` for a relative functor ``F``."""
    if not source.is_relative_functor(F, target):
        raise CategoryError("w_star_functor needs a relative functor")
    X = w_star_at(source, p_star)
    Y = w_star_at(target, p_star)

    def ap(g: Grid) -> Grid:
        return tuple(F.ob(v) for v in g[0]), tuple(F(e) for e in g[1])

    return FinFunctor(X, Y, {o: ap(o) for o in X.objects}, {m: ap(m) for m in X.morphisms})


def multidegree_window(k: int, max_p: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(max_p + 1), repeat=k))


