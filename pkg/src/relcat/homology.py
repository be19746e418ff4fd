"""Integral homology of truncated simplicial sets and the weak-equivalence verdict.

Chains are normalized: only nondegenerate simplices are basis elements, and a
face that is degenerate contributes zero.  Ranks and torsion come from
invariant factors; sparse unit pivots are eliminated first and whatever is
left goes through a dense Smith normal form.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .category import FinCat, FinFunctor, Id, QuotaError, full_subcategory, sort_key
from .relative import KRelStructure
from .simplicial import TruncMultiSSet, diagonal, k_simplicial_nerve, nerve, nerve_map
from .grids import apply_functor

Matrix = list[list[int]]
SparseCols = list[dict[int, int]]

# -- Smith normal form -------------------------------------------------------


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U @ m @ V == D``, ``D`` diagonal, ``d_i | d_{i+1}``, ``d_i >= 0``."""
    a = [list(map(int, r)) for r in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u, v = _identity(nr), _identity(nc)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                cands = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    a = [list(r) for r in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


def matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*y)) if y else []
    return [[sum(p * q for p, q in zip(r, c)) for c in cols] for r in x]


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(m)) == 1


def check_snf(m: Sequence[Sequence[int]], d: Matrix, u: Matrix, v: Matrix) -> list[str]:
    """Everything that is wrong with a claimed decomposition ``u m v = d``."""
    problems = []
    if matmul(matmul(u, m), v) != d and (m and m[0]):
        problems.append("U M V != D")
    if not is_unimodular(u):
        problems.append("U not unimodular")
    if not is_unimodular(v):
        problems.append("V not unimodular")
    diag = []
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j and x:
                problems.append(f"off-diagonal entry at {(i, j)}")
            if i == j:
                diag.append(x)
    nz = [x for x in diag if x]
    if any(x < 0 for x in diag) or diag[: len(nz)] != nz:
        problems.append("diagonal not normalized")
    if any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)):
        problems.append("divisibility chain broken")
    return problems


def _dense_factors(a: Matrix) -> list[int]:
    d, _, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def invariant_factors(vectors: SparseCols) -> list[int]:
    """Nonzero invariant factors of the matrix whose columns are ``vectors``.

    Columns are sparse ``{row: value}`` maps.  Unit pivots are eliminated in
    place; the remainder is handed to the dense Smith normal form.
    """
    cols: dict[int, dict[int, int]] = {j: dict(c) for j, c in enumerate(vectors) if c}
    rows: dict[int, set[int]] = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in list(cols):
            c = cols.get(j)
            if not c:
                continue
            piv = None
            for i, x in c.items():
                if x in (1, -1) and (piv is None or len(rows[i]) < len(rows[piv])):
                    piv = i
            if piv is None:
                continue
            # clear row ``piv`` from the other columns, then drop column j and row piv
            s = c[piv]
            for j2 in list(rows[piv]):
                if j2 == j:
                    continue
                c2 = cols[j2]
                q = c2[piv] * s
                for i, x in c.items():
                    y = c2.get(i, 0) - q * x
                    if y:
                        if i not in c2:
                            rows.setdefault(i, set()).add(j2)
                        c2[i] = y
                    elif i in c2:
                        del c2[i]
                        rows[i].discard(j2)
                if not c2:
                    del cols[j2]
            for i in c:
                rows[i].discard(j)
            del cols[j]
            del rows[piv]
            units += 1
            progress = True
    if not cols:
        return [1] * units
    live_rows = sorted({i for c in cols.values() for i in c})
    ri = {i: n for n, i in enumerate(live_rows)}
    dense = [[0] * len(cols) for _ in live_rows]
    for n, c in enumerate(cols.values()):
        for i, x in c.items():
            dense[ri[i]][n] = x
    return [1] * units + _dense_factors(dense)


# -- chain complexes -----------------------------------------------------------


@dataclass
class ChainComplex:
    """Normalized chains through degree ``top``; ``boundary[d]`` lists the columns of ∂_d."""

    bases: list[list]
    index: list[dict]
    boundary: list[SparseCols]

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def rank(self, d: int) -> int:
        return len(self.bases[d])


def chain_complex(s: TruncMultiSSet, top: int) -> ChainComplex:
    if s.arity != 1:
        raise ValueError("chain complexes are built from arity-1 simplicial sets")
    if top > s.bound:
        raise ValueError(f"degree {top} beyond truncation bound {s.bound}")
    bases, index, boundary = [], [], []
    for d in range(top + 1):
        basis = s.nondegenerate(d)
        bases.append(basis)
        index.append({x: i for i, x in enumerate(basis)})
        cols: SparseCols = []
        if d > 0:
            lower = index[d - 1]
            for x in basis:
                col: dict[int, int] = {}
                for i in range(d + 1):
                    j = lower.get(s._face(0, i, (d,), x))
                    if j is not None:
                        col[j] = col.get(j, 0) + (-1 if i % 2 else 1)
                cols.append({j: v for j, v in col.items() if v})
        else:
            cols = [{} for _ in basis]
        boundary.append(cols)
    return ChainComplex(bases, index, boundary)


def boundary_squared_problems(cc: ChainComplex) -> list[str]:
    """Degrees where ∂∘∂ is not zero."""
    bad = []
    for d in range(2, cc.top + 1):
        lower = cc.boundary[d - 1]
        for n, col in enumerate(cc.boundary[d]):
            acc: dict[int, int] = {}
            for j, x in col.items():
                for i, y in lower[j].items():
                    acc[i] = acc.get(i, 0) + x * y
            if any(acc.values()):
                bad.append(f"degree {d} cell {n}")
                break
    return bad


@dataclass(frozen=True)
class HomologySignature:
    """Per degree ``(betti, torsion)``; values are exact through ``exact_through``."""

    groups: tuple[tuple[int, tuple[int, ...]], ...]
    exact_through: int

    def betti(self, d: int) -> int:
        return self.groups[d][0]

    def torsion(self, d: int) -> tuple[int, ...]:
        return self.groups[d][1]

    def through(self, d: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
        return self.groups[: d + 1]

    def is_point(self, d: int | None = None) -> bool:
        top = self.exact_through if d is None else d
        return self.through(top) == ((1, ()),) + ((0, ()),) * top

    def __add__(self, other: "HomologySignature") -> "HomologySignature":
        n = min(len(self.groups), len(other.groups))
        groups = tuple(
            (a[0] + b[0], tuple(sorted(a[1] + b[1]))) for a, b in zip(self.groups[:n], other.groups[:n])
        )
        return HomologySignature(groups, min(self.exact_through, other.exact_through))

    def __str__(self) -> str:
        parts = []
        for d, (b, tors) in enumerate(self.groups):
            terms = (["Z^%d" % b if b > 1 else "Z"] if b else []) + [f"Z/{t}" for t in tors]
            parts.append(f"H{d}=" + ("+".join(terms) if terms else "0"))
        return " ".join(parts) + f" (exact through {self.exact_through})"

    def to_json(self) -> dict:
        return {
            "groups": [{"betti": b, "torsion": list(t)} for b, t in self.groups],
            "exact_through": self.exact_through,
        }


def signature_of_complex(cc: ChainComplex, max_degree: int, exact_through: int) -> HomologySignature:
    if max_degree + 1 > cc.top:
        raise ValueError("need chains one degree above max_degree")
    factors = [invariant_factors(cc.boundary[d]) if d > 0 else [] for d in range(max_degree + 2)]
    groups = []
    for d in range(max_degree + 1):
        r_in, r_out = len(factors[d + 1]), len(factors[d])
        tors = tuple(sorted(x for x in factors[d + 1] if x > 1))
        groups.append((cc.rank(d) - r_out - r_in, tors))
    return HomologySignature(tuple(groups), exact_through)


def point_signature(max_degree: int, exact_through: int | None = None) -> HomologySignature:
    groups = ((1, ()),) + ((0, ()),) * max_degree
    return HomologySignature(groups, max_degree if exact_through is None else exact_through)


def zero_signature(max_degree: int, exact_through: int | None = None) -> HomologySignature:
    return HomologySignature(((0, ()),) * (max_degree + 1), max_degree if exact_through is None else exact_through)


def homology(s: TruncMultiSSet, max_degree: int | None = None) -> HomologySignature:
    """Integral homology of the normalized chains through ``max_degree`` (default ``bound - 1``)."""
    if s.arity != 1:
        s = diagonal(s)
    top = s.bound - 1 if max_degree is None else max_degree
    if top > s.bound - 1:
        raise ValueError(f"max_degree {top} exceeds bound - 1 = {s.bound - 1}")
    return signature_of_complex(chain_complex(s, top + 1), top, s.bound - 1)


# -- components, skeleta -------------------------------------------------------


def components(c: FinCat) -> list[list[Id]]:
    """Connected components, each listed in object order, ordered by first object."""
    parent = {x: x for x in c.objects}

    def find(x: Id) -> Id:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in c.morphisms.values():
        a, b = find(s), find(t)
        if a != b:
            parent[b] = a
    groups: dict[Id, list[Id]] = {}
    for x in c.objects:
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def pi0(c: FinCat) -> int:
    return len(components(c))


def has_initial_or_terminal(c: FinCat) -> bool:
    objs = c.objects
    for x in objs:
        if all(len(c.hom(x, y)) == 1 for y in objs) or all(len(c.hom(y, x)) == 1 for y in objs):
            return True
    return False


@dataclass(eq=False)
class Skeleton:
    """A skeleton ``S`` of ``C`` with ``inclusion: S -> C`` and ``retraction: C -> S``.

    ``to_rep[x]`` is an isomorphism from ``x`` to its representative.
    """

    category: FinCat
    rep: dict[Id, Id]
    to_rep: dict[Id, Id]
    from_rep: dict[Id, Id]
    source: FinCat = field(repr=False)

    def retract(self, m: Id) -> Id:
        c = self.source
        s, t = c.morphisms[m]
        return c.compose(self.to_rep[t], c.compose(m, self.from_rep[s]))

    def retraction(self) -> FinFunctor:
        c = self.source
        return FinFunctor(
            c, self.category, dict(self.rep), {m: self.retract(m) for m in c.morphisms}, name="retract"
        )


def skeleton(c: FinCat) -> Skeleton:
    rep: dict[Id, Id] = {}
    to_rep: dict[Id, Id] = {}
    from_rep: dict[Id, Id] = {}
    reps: list[Id] = []
    for x in c.objects:
        found = False
        for r in reps:
            for m in c.hom(x, r):
                inv = c.inverse(m)
                if inv is not None:
                    rep[x], to_rep[x], from_rep[x] = r, m, inv
                    found = True
                    break
            if found:
                break
        if not found:
            reps.append(x)
            rep[x] = x
            to_rep[x] = from_rep[x] = c.identity[x]
    return Skeleton(full_subcategory(c, reps), rep, to_rep, from_rep, c)


_monoid_cache: dict[tuple, HomologySignature] = {}


def _skeleton_homology(sk: FinCat, bound: int) -> HomologySignature:
    """Nerve homology; one-object categories are memoized by their multiplication table."""
    if len(sk.objects) != 1:
        return homology(nerve(sk, bound), bound - 1)
    mors = sorted(sk.morphisms, key=sort_key)
    index = {m: i for i, m in enumerate(mors)}
    key = (bound, index[sk.identity[sk.objects[0]]],
           tuple(index[sk.compose(g, f)] for g in mors for f in mors))
    hit = _monoid_cache.get(key)
    if hit is None:
        hit = _monoid_cache[key] = homology(nerve(sk, bound), bound - 1)
    return hit


def category_homology(c: FinCat, bound: int = 4, *, shortcuts: bool = True) -> HomologySignature:
    """Homology of the nerve of ``c`` through ``bound - 1``.

    With ``shortcuts`` each component is replaced by a skeleton, and components
    with an initial or terminal object are recorded as points.  Both are
    homotopy invariances of the nerve.
    """
    top = bound - 1
    if not shortcuts:
        return homology(nerve(c, bound), top)
    total = zero_signature(top, top)
    for comp in components(c):
        sub = full_subcategory(c, comp)
        if has_initial_or_terminal(sub):
            total = total + point_signature(top)
            continue
        sk = skeleton(sub).category
        if has_initial_or_terminal(sk):
            total = total + point_signature(top)
        else:
            total = total + _skeleton_homology(sk, bound)
    return total


def relative_homology(c: KRelStructure, bound: int = 3, *, literal: bool = False) -> HomologySignature:
    """Homology of the diagonal of the ``k``-simplicial nerve.

    Unless ``literal`` is set, structures for which that diagonal is weakly
    equivalent to the classical nerve (``k = 0``, maximal, minimal with
    ``k = 1``) use the classical nerve.
    """
    if not literal and _classical_suffices(c):
        return category_homology(c.ambient, bound)
    return homology(diagonal(k_simplicial_nerve(c, bound)), bound - 1)


# -- weak-equivalence verdicts ---------------------------------------------------


@dataclass(frozen=True)
class Refuted:
    degree: int
    witness: str

    ok = False
    kind = "refuted"

    def __str__(self) -> str:
        return f"Refuted(degree {self.degree}: {self.witness})"


@dataclass(frozen=True)
class ConsistentThrough:
    degree: int

    ok = True
    kind = "consistent"

    def __str__(self) -> str:
        return f"ConsistentThrough({self.degree})"


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    ok = False
    kind = "inconclusive"

    def __str__(self) -> str:
        return f"Inconclusive({self.reason})"


WEVerdict = Refuted | ConsistentThrough | Inconclusive


def chain_map(
    a: ChainComplex, b: ChainComplex, simplex_map: Callable[[int, object], object]
) -> list[SparseCols]:
    """Matrices of the induced map; images that are degenerate in ``b`` map to zero."""
    out = []
    for d in range(min(a.top, b.top) + 1):
        idx = b.index[d]
        cols = []
        for x in a.bases[d]:
            j = idx.get(simplex_map(d, x))
            cols.append({j: 1} if j is not None else {})
        out.append(cols)
    return out


def cone_is_acyclic(a: ChainComplex, b: ChainComplex, f: list[SparseCols], through: int) -> int | None:
    """First degree ``<= through`` where the mapping cone has homology, else ``None``.

    ``cone_d = B_d ⊕ A_{d-1}`` with ``∂(b, a) = (∂b + f a, -∂a)``.
    """
    def cone_rank(d: int) -> int:
        return b.rank(d) + (a.rank(d - 1) if d >= 1 else 0)

    def cone_boundary(d: int) -> SparseCols:
        if d == 0:
            return []
        nb = b.rank(d - 1)
        cols: SparseCols = [dict(col) for col in b.boundary[d]]
        for n in range(a.rank(d - 1)):
            col = dict(f[d - 1][n])
            if d >= 2:
                for j, x in a.boundary[d - 1][n].items():
                    col[nb + j] = -x
            cols.append(col)
        return cols

    factors = [invariant_factors(cone_boundary(d)) for d in range(through + 2)]
    for d in range(through + 1):
        free = cone_rank(d) - len(factors[d]) - len(factors[d + 1])
        if free or any(x > 1 for x in factors[d + 1]):
            return d
    return None


def _compare(
    a: ChainComplex, b: ChainComplex, f: list[SparseCols], bound: int
) -> WEVerdict:
    top = bound - 1
    sa = signature_of_complex(a, top, top)
    sb = signature_of_complex(b, top, top)
    for d in range(top + 1):
        if sa.groups[d] != sb.groups[d]:
            return Refuted(d, f"H{d} differs: {_fmt_group(sa.groups[d])} vs {_fmt_group(sb.groups[d])}")
    bad = cone_is_acyclic(a, b, f, top)
    if bad is not None:
        return Refuted(bad, f"induced map on H{bad} is not surjective")
    return ConsistentThrough(top)


def _fmt_group(g: tuple[int, tuple[int, ...]]) -> str:
    b, tors = g
    terms = ([f"Z^{b}"] if b else []) + [f"Z/{t}" for t in tors]
    return "+".join(terms) or "0"


def _pi0_check(F: FinFunctor) -> tuple[WEVerdict | None, dict[int, int], list, list]:
    ca, cb = components(F.source), components(F.target)
    where_b = {x: n for n, comp in enumerate(cb) for x in comp}
    image = {n: where_b[F.ob(comp[0])] for n, comp in enumerate(ca)}
    if len(ca) != len(cb) or len(set(image.values())) != len(ca):
        return Refuted(0, f"pi0: {len(ca)} components vs {len(cb)}, {len(set(image.values()))} hit"), image, ca, cb
    return None, image, ca, cb


def induced_we_verdict(F: FinFunctor, bound: int = 4, *, shortcuts: bool = True) -> WEVerdict:
    """Does ``N(F)`` induce isomorphisms on π₀ and on ``H_d`` for ``d < bound``?

    Equal homology through the horizon plus an acyclic mapping cone through
    ``bound - 1`` gives isomorphisms there: the cone makes the top map onto,
    and an onto map between isomorphic finitely generated abelian groups is
    an isomorphism.
    """
    try:
        bad, image, ca, cb = _pi0_check(F)
        if bad is not None:
            return bad
        if not shortcuts:
            a = chain_complex(nerve(F.source, bound), bound)
            b = chain_complex(nerve(F.target, bound), bound)
            f = chain_map(a, b, lambda d, x: nerve_map(F, x))
            return _compare(a, b, f, bound)
        top = bound - 1
        for n, comp in enumerate(ca):
            A = full_subcategory(F.source, comp)
            B = full_subcategory(F.target, cb[image[n]])
            if has_initial_or_terminal(A) and has_initial_or_terminal(B):
                continue
            sa, sb = skeleton(A), skeleton(B)
            r = sb.retract
            G = FinFunctor(
                sa.category,
                sb.category,
                {x: sb.rep[F.ob(x)] for x in sa.category.objects},
                {m: r(F(m)) for m in sa.category.morphisms},
            )
            a = chain_complex(nerve(sa.category, bound), bound)
            b = chain_complex(nerve(sb.category, bound), bound)
            v = _compare(a, b, chain_map(a, b, lambda d, x: nerve_map(G, x)), bound)
            if not v.ok:
                return v
        return ConsistentThrough(top)
    except QuotaError as e:
        return Inconclusive(f"quota: {e}")


def _is_full(mask: frozenset, c: FinCat) -> bool:
    return len(mask) == len(c.morphisms)


def _classical_suffices(c: KRelStructure) -> bool:
    # all-w makes each level of w_* equivalent to the ambient; w = identities
    # with k = 1 makes the bisimplicial nerve constant in the w-direction
    a = c.ambient
    if c.k == 0 or _is_full(c.w_mask, a):
        return True
    return c.k == 1 and c.w_mask <= a.identity_set


def relative_we_verdict(
    F: FinFunctor, source: KRelStructure, target: KRelStructure, bound: int = 4
) -> WEVerdict:
    """Verdict for a relative functor, read through the diagonal of the ``k``-simplicial nerves.

    For ``k = 0``, maximal structures and minimal relative categories this
    diagonal is weakly equivalent to the classical nerve, which is used instead.
    """
    if _classical_suffices(source) and _classical_suffices(target):
        return induced_we_verdict(F, bound)
    try:
        bad, _, _, _ = _pi0_check(F)
        if bad is not None:
            return bad
        ds = diagonal(k_simplicial_nerve(source, bound))
        dt = diagonal(k_simplicial_nerve(target, bound))
        a, b = chain_complex(ds, bound), chain_complex(dt, bound)
        f = chain_map(a, b, lambda d, g: apply_functor(F.ob, F, g))
        return _compare(a, b, f, bound)
    except QuotaError as e:
        return Inconclusive(f"quota: {e}")
