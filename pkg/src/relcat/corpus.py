"""The example corpus: small categories, structures, maps, zigzags, Cat-valued diagrams and calculi.

Everything is built deterministically; ``seed`` only drives the two random
posets at the end, through :class:`random.Random`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .category import (
    FinCat,
    FinFunctor,
    chain,
    cyclic_group,
    discrete,
    empty,
    group_category,
    identity_functor,
    poset,
    product,
    terminal,
)
from .grothendieck import GrothendieckInput, constant_input
from .io import Document, Zigzag, serialize, to_document
from .relative import KRelStructure, ThreeArrowCalculus, derive_witnesses, iso_calculus, maximal, minimal, shape_chain


def symmetric_group_3() -> FinCat:
    """``BS3`` with elements the permutations of ``012`` written as strings; ``g∘f`` is ``x ↦ g(f(x))``."""
    perms = ["".join(p) for p in itertools.permutations("012")]
    mult = {(g, f): "".join(g[int(f[i])] for i in range(3)) for g in perms for f in perms}
    return group_category(perms, mult, name="BS3")


def klein_four() -> FinCat:
    els = ["e", "a", "b", "c"]
    idx = {x: i for i, x in enumerate(els)}
    return group_category(els, {(x, y): els[idx[x] ^ idx[y]] for x in els for y in els}, name="BV4")


def pseudo_circle() -> FinCat:
    """Four points ``a, b < c, d``: the minimal finite model of the circle."""
    return poset(["a", "b", "c", "d"], lambda x, y: x == y or (x in "ab" and y in "cd"), name="pseudo-circle")


def point_map(c: FinCat, obj, source: FinCat | None = None) -> FinFunctor:
    t = source or terminal()
    (o,) = t.objects
    return FinFunctor(t, c, {o: obj}, {t.identity[o]: c.identity[obj]}, name=f"pt->{obj}")


def square_k2() -> KRelStructure:
    """``[1] x [1]`` with horizontal maps as ``v_1``, vertical ones as ``v_2`` and ``w`` trivial."""
    sq, _, _ = product(chain(1), chain(1))
    sq.name = "square"
    ids = frozenset(sq.identity.values())
    horiz = frozenset(m for m, (s, t) in sq.morphisms.items() if s[1] == t[1])
    vert = frozenset(m for m, (s, t) in sq.morphisms.items() if s[0] == t[0])
    return KRelStructure(sq, (horiz, vert), ids, name="square_k2")


def chain_calculus(z: KRelStructure) -> ThreeArrowCalculus:
    """``U = w``, ``V = identities``: every weak equivalence factors as ``id ∘ u``."""
    a = z.ambient
    ids = frozenset(a.identity.values())
    fac = {m: (m, a.identity[a.tgt(m)]) for m in z.w_mask}
    return ThreeArrowCalculus(z.w_mask, ids, fac, derive_witnesses(z, z.w_mask, ids, fac))


def _random_poset(rng: random.Random, n: int, name: str) -> KRelStructure:
    els = [f"p{i}" for i in range(n)]
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5}
    if len(rel) < 2:
        rel |= {(0, 1), (1, 2)}
    changed = True
    while changed:
        extra = {(i, k) for (i, j) in rel for (j2, k) in rel if j == j2} - rel
        rel |= extra
        changed = bool(extra)
    c = poset(els, lambda x, y: x == y or (int(x[1:]), int(y[1:])) in rel, name=name)
    w = set(c.morphisms)
    return KRelStructure(c, (frozenset(c.morphisms),), frozenset(w), name=name)


@dataclass
class Corpus:
    categories: dict[str, FinCat] = field(default_factory=dict)
    structures: dict[str, KRelStructure] = field(default_factory=dict)
    functors: dict[str, FinFunctor] = field(default_factory=dict)
    zigzags: dict[str, Zigzag] = field(default_factory=dict)
    diagrams: dict[str, GrothendieckInput] = field(default_factory=dict)
    calculi: dict[str, tuple[str, ThreeArrowCalculus]] = field(default_factory=dict)

    def documents(self) -> dict[str, Document]:
        """File name to document, in a fixed order."""
        out: dict[str, Document] = {}
        for group, kind in (
            (self.categories, "category"),
            (self.structures, "krel"),
            (self.functors, "functor"),
            (self.zigzags, "zigzag"),
            (self.diagrams, "diagram"),
        ):
            for name in sorted(group):
                out[f"{kind}/{name}.json"] = to_document(group[name], kind)
        for name in sorted(self.calculi):
            out[f"calculus/{name}.json"] = to_document(self.calculi[name][1], "calculus")
        return out


def build_corpus(seed: int = 0) -> Corpus:
    c = Corpus()
    cat = c.categories
    groups = {"bc2": cyclic_group(2), "bc3": cyclic_group(3), "bc4": cyclic_group(4), "bs3": symmetric_group_3()}
    cat.update(groups)
    cat["bv4"] = klein_four()
    cat["terminal"] = terminal()
    cat["empty"] = empty()
    for p in range(4):
        cat[f"chain{p}"] = chain(p)
    cat["delta1"] = cat["chain1"]
    del cat["chain1"]
    cat["pseudo_circle"] = pseudo_circle()
    cat["discrete2"] = discrete(["a", "b"], name="{a,b}")

    st = c.structures
    for p in range(4):
        st[f"chain{p}_w"] = shape_chain(p, "w", 1)
        st[f"chain{p}_v"] = shape_chain(p, "minimal", 1)
    d1 = cat["delta1"]
    st["delta1_max"] = maximal(d1)
    st["delta1_min"] = minimal(d1)
    for name, g in groups.items():
        st[f"{name}_max"] = maximal(g)
    st["pseudo_circle_max"] = maximal(cat["pseudo_circle"])
    st["square_k2"] = square_k2()
    st["chain1_w_k2"] = shape_chain(1, "w", 2)
    st["chain2_v1_k2"] = shape_chain(2, "v", 2, 1)
    rng = random.Random(seed)
    for i in range(2):
        st[f"random_poset{i}"] = _random_poset(rng, 3, f"random_poset{i}")

    fn = c.functors
    pt = cat["terminal"]
    for name, g in groups.items():
        fn[f"pt_{name}"] = point_map(g, "•", pt)
        fn[f"id_{name}"] = identity_functor(g)
    fn["pt0_delta1"] = point_map(d1, "0", pt)
    fn["pt1_delta1"] = point_map(d1, "1", pt)
    fn["id_delta1"] = identity_functor(d1)
    fn["pt_pseudo_circle_a"] = point_map(cat["pseudo_circle"], "a", pt)
    fn["collapse_delta1"] = FinFunctor(d1, pt, {"0": "*", "1": "*"}, {m: "1*" for m in d1.morphisms}, name="!")
    fn["collapse_bc2"] = FinFunctor(groups["bc2"], pt, {"•": "*"}, {m: "1*" for m in groups["bc2"].morphisms}, name="!")
    c2 = cat["chain2"]
    fn["d2_chain2"] = FinFunctor(d1, c2, {"0": "0", "1": "1"}, {"0-0": "0-0", "0-1": "0-1", "1-1": "1-1"}, name="d2")
    fn["pt2_chain2"] = point_map(c2, "2", pt)

    zz = c.zigzags
    zz["pt_bc2_pt"] = Zigzag(fn["pt_bc2"], fn["pt_bc2"], name="pt_bc2_pt")
    zz["pt_bc3_pt"] = Zigzag(fn["pt_bc3"], fn["pt_bc3"], name="pt_bc3_pt")
    zz["id_bc3_id"] = Zigzag(fn["id_bc3"], fn["id_bc3"], name="id_bc3_id")
    zz["pt_bc2_id"] = Zigzag(fn["pt_bc2"], fn["id_bc2"], name="pt_bc2_id")
    mp = maximal(pt)
    zz["pt_bc2_pt_max"] = Zigzag(fn["pt_bc2"], fn["pt_bc2"], mp, mp, st["bc2_max"], name="pt_bc2_pt_max")
    zz["delta1_negative"] = Zigzag(fn["pt0_delta1"], fn["pt1_delta1"], mp, mp, st["delta1_max"], name="delta1_negative")
    zz["delta1_min_id"] = Zigzag(
        fn["id_delta1"], fn["id_delta1"], st["delta1_min"], st["delta1_min"], st["delta1_min"], name="delta1_min_id"
    )
    zz["chain2_face"] = Zigzag(fn["d2_chain2"], fn["pt2_chain2"], name="chain2_face")

    dg = c.diagrams
    bc2 = groups["bc2"]
    dg["const_bc2_over_delta1"] = constant_input(d1, bc2)
    e = cat["empty"]
    dg["empty_terminal_over_delta1"] = GrothendieckInput(
        d1,
        {"0": e, "1": pt},
        {"0-0": identity_functor(e), "1-1": identity_functor(pt), "0-1": FinFunctor(e, pt, {}, {})},
        name="empty_terminal",
    )
    two = cat["discrete2"]
    swap = FinFunctor(two, two, {"a": "b", "b": "a"}, {("id", "a"): ("id", "b"), ("id", "b"): ("id", "a")}, name="swap")
    dg["c2_swap"] = GrothendieckInput(bc2, {"•": two}, {"g0": identity_functor(two), "g1": swap}, name="c2_swap")
    dg["c2_trivial"] = GrothendieckInput(
        bc2, {"•": two}, {"g0": identity_functor(two), "g1": identity_functor(two)}, name="c2_trivial"
    )
    collapse2 = FinFunctor(two, pt, {"a": "*", "b": "*"}, {("id", "a"): "1*", ("id", "b"): "1*"}, name="!")
    dg["discrete2_to_point"] = GrothendieckInput(
        d1, {"0": two, "1": pt}, {"0-0": identity_functor(two), "1-1": identity_functor(pt), "0-1": collapse2},
        name="discrete2_to_point",
    )
    dg["delta1_to_point"] = GrothendieckInput(
        d1, {"0": d1, "1": pt}, {"0-0": identity_functor(d1), "1-1": identity_functor(pt), "0-1": fn["collapse_delta1"]},
        name="delta1_to_point",
    )

    cc = c.calculi
    for p in range(4):
        cc[f"chain{p}_w"] = (f"chain{p}_w", chain_calculus(st[f"chain{p}_w"]))
    for name in groups:
        cc[f"{name}_max_iso"] = (f"{name}_max", iso_calculus(st[f"{name}_max"]))
    cc["delta1_min_iso"] = ("delta1_min", iso_calculus(st["delta1_min"]))
    return c


def generate_corpus(seed: int = 0) -> dict[str, str]:
    """File name to canonical text."""
    return {name: serialize(doc) for name, doc in build_corpus(seed).documents().items()}


def write_corpus(directory: str, seed: int = 0) -> list[str]:
    import os

    written = []
    for name, text in generate_corpus(seed).items():
        path = os.path.join(directory, name)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        written.append(path)
    return written
