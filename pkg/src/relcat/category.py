"""Finite categories, functors, natural transformations and strict limits.

A :class:`FinCat` is stored as an explicit list of objects and morphisms
together with identities and a composition that is total on composable
pairs.  Small hand-written categories carry a literal composition table;
constructed categories carry a composition *rule* (a function of the two
morphism ids) that is evaluated on demand.  Both are exposed through the
same :meth:`FinCat.compose` and :attr:`FinCat.table`.

Ids are hashable values.  Hand-written inputs use strings; constructions
emit nested tuples (pairs are ``(a, b)``) so that canonical ids compare by
plain equality.  :func:`render_id` prints them in the text grammar
``(a,b)`` / ``z[m_n|...|m_1]``.
"""

from __future__ import annotations

import itertools
import os
from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Any

Id = Hashable


class CategoryError(ValueError):
    """Raised for malformed input (unknown ids, non-composable pairs)."""


class QuotaError(RuntimeError):
    """Raised when a construction would exceed the configured size caps."""


@dataclass(frozen=True)
class Caps:
    max_objects: int = 10_000
    max_morphisms: int = 100_000

    @classmethod
    def parse(cls, spec: str) -> "Caps":
        """Parse ``"objects=N,morphisms=M"`` (either key may be omitted)."""
        values = {"objects": cls.max_objects, "morphisms": cls.max_morphisms}
        for part in filter(None, (p.strip() for p in spec.split(","))):
            key, _, val = part.partition("=")
            if key not in values or not val.isdigit():
                raise ValueError(f"bad caps spec {part!r}")
            values[key] = int(val)
        return cls(values["objects"], values["morphisms"])

    def describe(self) -> str:
        return f"objects={self.max_objects},morphisms={self.max_morphisms}"


_caps = Caps.parse(os.environ["RELCAT_CAPS"]) if os.environ.get("RELCAT_CAPS") else Caps()


def get_caps() -> Caps:
    return _caps


def set_caps(caps: Caps) -> Caps:
    """Install new global caps and return the previous ones."""
    global _caps
    old, _caps = _caps, caps
    return old


def check_quota(n_objects: int, n_morphisms: int, what: str = "category") -> None:
    caps = _caps
    if n_objects > caps.max_objects or n_morphisms > caps.max_morphisms:
        raise QuotaError(
            f"{what} exceeds caps ({n_objects} objects, {n_morphisms} morphisms; "
            f"caps {caps.describe()})"
        )


def render_id(x: Id) -> str:
    """Text form of a canonical id."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        if len(x) == 2 and x[0] == "z" and isinstance(x[1], tuple):
            return "z[" + "|".join(render_id(m) for m in reversed(x[1])) + "]"
        return "(" + ",".join(render_id(m) for m in x) + ")"
    return str(x)


def sort_key(x: Id) -> Any:
    """Total order on canonical ids (strings before tuples, then lexicographic)."""
    if isinstance(x, tuple):
        return (1, tuple(sort_key(y) for y in x))
    if isinstance(x, str):
        return (0, x)
    return (0, str(x))


class FinCat:
    """A finite category with total composition on composable pairs.

    ``compose`` is either a mapping ``(g, f) -> g∘f`` or a callable taking
    ``(g, f)``.  Values are treated as immutable once constructed.
    """

    def __init__(
        self,
        objects: Iterable[Id],
        morphisms: Mapping[Id, tuple[Id, Id]] | Iterable[tuple[Id, Id, Id]],
        identity: Mapping[Id, Id],
        compose: Mapping[tuple[Id, Id], Id] | Callable[[Id, Id], Id],
        *,
        name: str = "",
        check_caps: bool = True,
    ) -> None:
        self.objects: tuple[Id, ...] = tuple(objects)
        if isinstance(morphisms, Mapping):
            self.morphisms: dict[Id, tuple[Id, Id]] = dict(morphisms)
        else:
            self.morphisms = {m: (s, t) for m, s, t in morphisms}
        self.identity: dict[Id, Id] = dict(identity)
        self.name = name
        if check_caps:
            check_quota(len(self.objects), len(self.morphisms), name or "category")
        if callable(compose):
            self._rule: Callable[[Id, Id], Id] | None = compose
            self._table: dict[tuple[Id, Id], Id] | None = None
        else:
            self._rule = None
            self._table = dict(compose)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FinCat{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    # -- structure -----------------------------------------------------
    def src(self, m: Id) -> Id:
        return self.morphisms[m][0]

    def tgt(self, m: Id) -> Id:
        return self.morphisms[m][1]

    def compose(self, g: Id, f: Id) -> Id:
        """Return ``g∘f`` (first ``f``, then ``g``)."""
        if self.morphisms[f][1] != self.morphisms[g][0]:
            raise CategoryError(f"not composable: {render_id(g)} after {render_id(f)}")
        if self._table is not None:
            return self._table[(g, f)]
        return self._rule(g, f)

    def compose_path(self, path: Iterable[Id]) -> Id:
        """Compose ``f1, f2, ...`` in diagrammatic order."""
        it = iter(path)
        acc = next(it)
        for m in it:
            acc = self.compose(m, acc)
        return acc

    def is_identity(self, m: Id) -> bool:
        return self.identity.get(self.morphisms[m][0]) == m

    @cached_property
    def identity_set(self) -> frozenset:
        return frozenset(self.identity.values())

    @cached_property
    def _hom_index(self) -> tuple[dict, dict, dict]:
        out: dict[Id, list[Id]] = {x: [] for x in self.objects}
        into: dict[Id, list[Id]] = {x: [] for x in self.objects}
        hom: dict[tuple[Id, Id], list[Id]] = {}
        for m, (s, t) in self.morphisms.items():
            out[s].append(m)
            into[t].append(m)
            hom.setdefault((s, t), []).append(m)
        return out, into, hom

    def out(self, x: Id) -> list[Id]:
        return self._hom_index[0][x]

    def into(self, x: Id) -> list[Id]:
        return self._hom_index[1][x]

    def hom(self, a: Id, b: Id) -> list[Id]:
        return self._hom_index[2].get((a, b), [])

    def composable_pairs(self) -> Iterable[tuple[Id, Id]]:
        """All ``(g, f)`` with ``tgt(f) = src(g)``."""
        for f, (_, t) in self.morphisms.items():
            for g in self.out(t):
                yield g, f

    @cached_property
    def table(self) -> dict[tuple[Id, Id], Id]:
        if self._table is not None:
            return self._table
        return {(g, f): self._rule(g, f) for g, f in self.composable_pairs()}

    def inverse(self, m: Id) -> Id | None:
        s, t = self.morphisms[m]
        ids, idt = self.identity[s], self.identity[t]
        for n in self.hom(t, s):
            if self.compose(n, m) == ids and self.compose(m, n) == idt:
                return n
        return None

    def is_groupoid(self) -> bool:
        return all(self.inverse(m) is not None for m in self.morphisms)

    def same_as(self, other: "FinCat") -> bool:
        """Structural equality: same ids, same src/tgt, identities and composition."""
        if set(self.objects) != set(other.objects) or self.morphisms != other.morphisms:
            return False
        if self.identity != other.identity:
            return False
        return all(self.compose(g, f) == other.compose(g, f) for g, f in self.composable_pairs())

    def relabel(self, on_objects: Mapping[Id, Id], on_morphisms: Mapping[Id, Id]) -> "FinCat":
        inv = {v: k for k, v in on_morphisms.items()}
        return FinCat(
            [on_objects[x] for x in self.objects],
            {on_morphisms[m]: (on_objects[s], on_objects[t]) for m, (s, t) in self.morphisms.items()},
            {on_objects[x]: on_morphisms[m] for x, m in self.identity.items()},
            lambda g, f: on_morphisms[self.compose(inv[g], inv[f])],
            name=self.name,
        )

    def canonical(self) -> "FinCat":
        """Same category with objects and morphisms in sorted id order and a literal table."""
        objs = sorted(self.objects, key=sort_key)
        mors = sorted(self.morphisms, key=sort_key)
        return FinCat(
            objs,
            {m: self.morphisms[m] for m in mors},
            {x: self.identity[x] for x in objs},
            dict(self.table),
            name=self.name,
        )


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.axiom}: " + ", ".join(render_id(w) for w in self.witness)


def validate_cat(c: FinCat) -> list[Violation]:
    """Every violated category axiom with a witness; empty iff ``c`` is a category."""
    report: list[Violation] = []
    objs = set(c.objects)
    for m, (s, t) in c.morphisms.items():
        for end in (s, t):
            if end not in objs:
                report.append(Violation("unknown object", (m, end)))
    if report:
        return report
    for x in c.objects:
        i = c.identity.get(x)
        if i is None or i not in c.morphisms or c.morphisms[i] != (x, x):
            report.append(Violation("identity", (x,)))
    if report:
        return report
    table: dict[tuple[Id, Id], Id] = {}
    for g, f in c.composable_pairs():
        try:
            h = c.compose(g, f)
        except (KeyError, CategoryError):
            report.append(Violation("composition undefined", (g, f)))
            continue
        if h not in c.morphisms:
            report.append(Violation("composite unknown", (g, f, h)))
            continue
        if c.morphisms[h] != (c.src(f), c.tgt(g)):
            report.append(Violation("src/tgt coherence", (g, f, h)))
        table[(g, f)] = h
    if c._table is not None:
        for (g, f) in c._table:
            if g not in c.morphisms or f not in c.morphisms or c.tgt(f) != c.src(g):
                report.append(Violation("composition of non-composable pair", (g, f)))
    for f in c.morphisms:
        s, t = c.morphisms[f]
        if table.get((f, c.identity[s])) != f or table.get((c.identity[t], f)) != f:
            report.append(Violation("identity law", (f,)))
    for (g, f), gf in table.items():
        for h in c.out(c.tgt(g)):
            hg = table.get((h, g))
            if hg is None or (h, gf) not in table or (hg, f) not in table:
                continue
            if table[(h, gf)] != table[(hg, f)]:
                report.append(Violation("associativity", (h, g, f)))
    return report


# -- functors and natural transformations ---------------------------------


@dataclass(eq=False)
class FinFunctor:
    source: FinCat
    target: FinCat
    on_objects: dict[Id, Id]
    on_morphisms: dict[Id, Id]
    name: str = ""

    def __call__(self, m: Id) -> Id:
        return self.on_morphisms[m]

    def ob(self, x: Id) -> Id:
        return self.on_objects[x]

    def then(self, g: "FinFunctor") -> "FinFunctor":
        """Composite ``g∘self``."""
        return FinFunctor(
            self.source,
            g.target,
            {x: g.on_objects[y] for x, y in self.on_objects.items()},
            {m: g.on_morphisms[n] for m, n in self.on_morphisms.items()},
        )

    def same_as(self, other: "FinFunctor") -> bool:
        return self.on_objects == other.on_objects and self.on_morphisms == other.on_morphisms


def identity_functor(c: FinCat) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms}, name="id")


def validate_functor(F: FinFunctor) -> list[Violation]:
    report: list[Violation] = []
    S, T = F.source, F.target
    for x in S.objects:
        if F.on_objects.get(x) not in set(T.objects):
            report.append(Violation("object map", (x,)))
    if report:
        return report
    for m, (s, t) in S.morphisms.items():
        n = F.on_morphisms.get(m)
        if n not in T.morphisms:
            report.append(Violation("morphism map", (m,)))
        elif T.morphisms[n] != (F.on_objects[s], F.on_objects[t]):
            report.append(Violation("src/tgt preservation", (m,)))
    if report:
        return report
    for x in S.objects:
        if F.on_morphisms[S.identity[x]] != T.identity[F.on_objects[x]]:
            report.append(Violation("identity preservation", (x,)))
    for g, f in S.composable_pairs():
        if F.on_morphisms[S.compose(g, f)] != T.compose(F.on_morphisms[g], F.on_morphisms[f]):
            report.append(Violation("composition preservation", (g, f)))
    return report


@dataclass(eq=False)
class NatTransformation:
    source_functor: FinFunctor
    target_functor: FinFunctor
    components: dict[Id, Id]


def validate_nat(eta: NatTransformation) -> list[Violation]:
    F, G = eta.source_functor, eta.target_functor
    T = F.target
    report: list[Violation] = []
    for x in F.source.objects:
        c = eta.components.get(x)
        if c not in T.morphisms or T.morphisms[c] != (F.ob(x), G.ob(x)):
            report.append(Violation("component type", (x,)))
    if report:
        return report
    for m, (s, t) in F.source.morphisms.items():
        if T.compose(eta.components[t], F(m)) != T.compose(G(m), eta.components[s]):
            report.append(Violation("naturality", (m,)))
    return report


def enumerate_functors(a: FinCat, b: FinCat) -> list[FinFunctor]:
    """All functors ``a -> b`` by backtracking (small categories only)."""
    objs = list(a.objects)
    non_id = [m for m in a.morphisms if not a.is_identity(m)]
    result = []
    for images in itertools.product(b.objects, repeat=len(objs)):
        om = dict(zip(objs, images))
        choices = [b.hom(om[a.src(m)], om[a.tgt(m)]) for m in non_id]
        for pick in itertools.product(*choices):
            mm = {a.identity[x]: b.identity[om[x]] for x in objs}
            mm.update(zip(non_id, pick))
            F = FinFunctor(a, b, om, mm)
            if all(mm[a.compose(g, f)] == b.compose(mm[g], mm[f]) for g, f in a.composable_pairs()):
                result.append(F)
    return result


# -- constructors ---------------------------------------------------------


def terminal() -> FinCat:
    return FinCat(["*"], {"1*": ("*", "*")}, {"*": "1*"}, {("1*", "1*"): "1*"}, name="terminal")


def empty() -> FinCat:
    return FinCat([], {}, {}, {}, name="empty")


def discrete(objects: Iterable[Id], name: str = "") -> FinCat:
    objs = list(objects)
    return FinCat(
        objs,
        {("id", x): (x, x) for x in objs},
        {x: ("id", x) for x in objs},
        {(("id", x), ("id", x)): ("id", x) for x in objs},
        name=name or "discrete",
    )


def chain(p: int) -> FinCat:
    """The poset ``0 -> 1 -> ... -> p``; the morphism ``i <= j`` has id ``"i-j"``."""
    key = lambda i, j: f"{i}-{j}"  # noqa: E731
    objs = [str(i) for i in range(p + 1)]
    return FinCat(
        objs,
        {key(i, j): (str(i), str(j)) for i in range(p + 1) for j in range(i, p + 1)},
        {str(i): key(i, i) for i in range(p + 1)},
        {
            (key(j, k), key(i, j)): key(i, k)
            for i in range(p + 1)
            for j in range(i, p + 1)
            for k in range(j, p + 1)
        },
        name=f"[{p}]",
    )


def poset(elements: Iterable[Id], leq: Callable[[Id, Id], bool], name: str = "") -> FinCat:
    """The category of a finite poset; morphism ``a<=b`` has id ``(a, b)``."""
    els = list(elements)
    mors = {(a, b): (a, b) for a in els for b in els if leq(a, b)}
    return FinCat(
        els,
        mors,
        {a: (a, a) for a in els},
        lambda g, f: (f[0], g[1]),
        name=name or "poset",
    )


def group_category(elements: list[str], mult: Mapping[tuple[str, str], str], name: str = "") -> FinCat:
    """``BG`` for a group given by its multiplication table; ``g∘f = mult[g, f]``.

    The identity element is detected from the table.
    """
    unit = next(
        e for e in elements if all(mult[(e, x)] == x and mult[(x, e)] == x for x in elements)
    )
    return FinCat(
        ["•"],
        {g: ("•", "•") for g in elements},
        {"•": unit},
        dict(mult),
        name=name or "BG",
    )


def cyclic_group(n: int) -> FinCat:
    els = [f"g{i}" for i in range(n)]
    return group_category(
        els, {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}, name=f"BC{n}"
    )


def product(a: FinCat, b: FinCat) -> tuple[FinCat, FinFunctor, FinFunctor]:
    """Product category with its two projections; ids are pairs."""
    check_quota(len(a.objects) * len(b.objects), len(a.morphisms) * len(b.morphisms), "product")
    objs = [(x, y) for x in a.objects for y in b.objects]
    mors = {
        (f, g): ((sf, sg), (tf, tg))
        for f, (sf, tf) in a.morphisms.items()
        for g, (sg, tg) in b.morphisms.items()
    }
    c = FinCat(
        objs,
        mors,
        {(x, y): (a.identity[x], b.identity[y]) for x, y in objs},
        lambda g, f: (a.compose(g[0], f[0]), b.compose(g[1], f[1])),
        name=f"{a.name}×{b.name}",
    )
    p1 = FinFunctor(c, a, {o: o[0] for o in objs}, {m: m[0] for m in mors})
    p2 = FinFunctor(c, b, {o: o[1] for o in objs}, {m: m[1] for m in mors})
    return c, p1, p2


def flatten_pair_id(x: Id) -> tuple:
    """Pair-flattening convention: ``((a,b),c)`` and ``(a,(b,c))`` both become ``(a,b,c)``."""
    if isinstance(x, tuple):
        out: list = []
        for y in x:
            out.extend(flatten_pair_id(y) if isinstance(y, tuple) else (y,))
        return tuple(out)
    return (x,)


def pullback_cat(f: FinFunctor, g: FinFunctor) -> tuple[FinCat, FinFunctor, FinFunctor]:
    """Strict pullback of ``X -f-> Z <-g- Y`` with its projections to ``X`` and ``Y``."""
    if f.target is not g.target and not f.target.same_as(g.target):
        raise CategoryError("pullback_cat: functors must share a target")
    X, Y = f.source, g.source
    by_image: dict[Id, list[Id]] = {}
    for y in Y.objects:
        by_image.setdefault(g.on_objects[y], []).append(y)
    objs = [(x, y) for x in X.objects for y in by_image.get(f.on_objects[x], [])]
    mor_by_image: dict[Id, list[Id]] = {}
    for m in Y.morphisms:
        mor_by_image.setdefault(g.on_morphisms[m], []).append(m)
    mors: dict[Id, tuple[Id, Id]] = {}
    for a, (sa, ta) in X.morphisms.items():
        for b in mor_by_image.get(f.on_morphisms[a], ()):
            sb, tb = Y.morphisms[b]
            mors[(a, b)] = ((sa, sb), (ta, tb))
    check_quota(len(objs), len(mors), "pullback")
    P = FinCat(
        objs,
        mors,
        {(x, y): (X.identity[x], Y.identity[y]) for x, y in objs},
        lambda v, u: (X.compose(v[0], u[0]), Y.compose(v[1], u[1])),
        name=f"{X.name}×{Y.name}",
    )
    px = FinFunctor(P, X, {o: o[0] for o in objs}, {m: m[0] for m in mors})
    py = FinFunctor(P, Y, {o: o[1] for o in objs}, {m: m[1] for m in mors})
    return P, px, py


def opposite(c: FinCat) -> FinCat:
    return FinCat(
        c.objects,
        {m: (t, s) for m, (s, t) in c.morphisms.items()},
        c.identity,
        lambda g, f: c.compose(f, g),
        name=f"{c.name}^op",
    )


def full_subcategory(c: FinCat, objects: Iterable[Id]) -> FinCat:
    keep = set(objects)
    return FinCat(
        [x for x in c.objects if x in keep],
        {m: st for m, st in c.morphisms.items() if st[0] in keep and st[1] in keep},
        {x: c.identity[x] for x in c.objects if x in keep},
        c.compose,
        name=c.name,
    )


def subcategory(c: FinCat, morphisms: Iterable[Id], name: str = "") -> FinCat:
    """Wide subcategory on the given (composition-closed) morphism set."""
    keep = set(morphisms) | set(c.identity.values())
    return FinCat(
        c.objects,
        {m: st for m, st in c.morphisms.items() if m in keep},
        c.identity,
        c.compose,
        name=name or c.name,
    )


def inclusion(sub: FinCat, c: FinCat) -> FinFunctor:
    return FinFunctor(sub, c, {x: x for x in sub.objects}, {m: m for m in sub.morphisms})


class CycleError(CategoryError):
    def __init__(self, cycle: list[Id]) -> None:
        super().__init__("directed cycle: " + " -> ".join(map(str, cycle)))
        self.cycle = cycle


def free_category_on_acyclic_graph(
    vertices: Iterable[Id], edges: Iterable[tuple[Id, Id, Id]]
) -> FinCat:
    """Free category on a DAG: morphisms are directed paths.

    ``edges`` are ``(edge_id, src, tgt)``.  A path is ``(start, (e1, e2, ...))``;
    the identity at ``v`` is ``(v, ())``.  A cycle raises :class:`CycleError`.
    """
    verts = list(vertices)
    edge_list = list(edges)
    succ: dict[Id, list[tuple[Id, Id]]] = {v: [] for v in verts}
    for e, s, t in edge_list:
        if s not in succ or t not in succ:
            raise CategoryError(f"edge {e!r} references unknown vertex")
        succ[s].append((e, t))
    state: dict[Id, int] = {}
    stack: list[Id] = []

    def visit(v: Id) -> None:
        state[v] = 1
        stack.append(v)
        for _, w in succ[v]:
            if state.get(w) == 1:
                raise CycleError(stack[stack.index(w):] + [w])
            if w not in state:
                visit(w)
        stack.pop()
        state[v] = 2

    for v in verts:
        if v not in state:
            visit(v)
    mors: dict[Id, tuple[Id, Id]] = {(v, ()): (v, v) for v in verts}

    def extend(start: Id, path: tuple, at: Id) -> None:
        for e, w in succ[at]:
            p = path + (e,)
            mors[(start, p)] = (start, w)
            extend(start, p, w)

    for v in verts:
        extend(v, (), v)
    check_quota(len(verts), len(mors), "free category")
    return FinCat(verts, mors, {v: (v, ()) for v in verts}, lambda g, f: (f[0], f[1] + g[1]), name="free")
