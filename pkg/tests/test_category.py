from __future__ import annotations

import pytest
from hypothesis import given

from relcat.category import (
    CategoryError,
    CycleError,
    FinCat,
    FinFunctor,
    QuotaError,
    Caps,
    chain,
    cyclic_group,
    discrete,
    enumerate_functors,
    free_category_on_acyclic_graph,
    identity_functor,
    opposite,
    product,
    pullback_cat,
    set_caps,
    terminal,
    validate_cat,
    validate_functor,
)

from conftest import cyclic_products, posets


def test_chain_counts():
    for p in range(5):
        c = chain(p)
        assert len(c.objects) == p + 1
        assert len(c.morphisms) == (p + 1) * (p + 2) // 2
        assert validate_cat(c) == []


def test_cyclic_group_table():
    c = cyclic_group(3)
    assert c.compose("g2", "g2") == "g1"
    assert c.inverse("g1") == "g2"
    assert c.is_groupoid()


def test_broken_associativity_is_reported():
    els = ["e", "a", "b"]
    # a "group" whose table is not associative
    mult = {(x, "e"): x for x in els} | {("e", x): x for x in els}
    mult |= {("a", "a"): "b", ("a", "b"): "e", ("b", "a"): "a", ("b", "b"): "a"}
    c = FinCat(["•"], {x: ("•", "•") for x in els}, {"•": "e"}, mult)
    axioms = {v.axiom for v in validate_cat(c)}
    assert any("assoc" in a for a in axioms)


def test_unknown_object_is_reported():
    c = FinCat(["x"], {"1x": ("x", "x"), "f": ("x", "y")}, {"x": "1x"}, {("1x", "1x"): "1x"})
    assert any(v.axiom == "unknown object" for v in validate_cat(c))


def test_functors_into_bc2():
    # functors [1] -> BC2 are the two elements
    assert len(enumerate_functors(chain(1), cyclic_group(2))) == 2
    # homomorphisms C4 -> C2
    assert len(enumerate_functors(cyclic_group(4), cyclic_group(2))) == 2


def test_pullback_of_points_over_bc2():
    g = cyclic_group(2)
    t = terminal()
    f = FinFunctor(t, g, {"*": "•"}, {"1*": "g0"})
    P, px, py = pullback_cat(f, f)
    assert len(P.objects) == 1 and len(P.morphisms) == 1
    assert validate_functor(px) == [] and validate_functor(py) == []


def test_free_category_rejects_cycles():
    with pytest.raises(CycleError):
        free_category_on_acyclic_graph(["a", "b"], [("f", "a", "b"), ("g", "b", "a")])
    c = free_category_on_acyclic_graph(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")])
    assert len(c.hom("a", "c")) == 2
    assert validate_cat(c) == []


def test_quota():
    old = set_caps(Caps(10, 100))
    try:
        with pytest.raises(QuotaError):
            chain(20)
    finally:
        set_caps(old)


def test_caps_parse():
    assert Caps.parse("objects=5") == Caps(5, 100_000)
    with pytest.raises(ValueError):
        Caps.parse("bogus=1")


def test_composable_check():
    with pytest.raises(CategoryError):
        chain(2).compose("0-1", "0-1")


@given(posets())
def test_random_posets_are_categories(c):
    assert validate_cat(c) == []
    assert validate_functor(identity_functor(c)) == []
    op = opposite(c)
    assert validate_cat(op) == []
    assert len(op.morphisms) == len(c.morphisms)


@given(cyclic_products())
def test_group_tables_are_categories(c):
    assert validate_cat(c) == []
    assert c.is_groupoid()


@given(posets(4), posets(3))
def test_product_projections(a, b):
    c, p1, p2 = product(a, b)
    assert validate_cat(c) == []
    assert validate_functor(p1) == [] and validate_functor(p2) == []
    assert len(c.morphisms) == len(a.morphisms) * len(b.morphisms)


@given(posets(4))
def test_canonical_form_is_same_category(c):
    assert c.canonical().same_as(c)


def test_discrete():
    d = discrete(["a", "b"])
    assert len(d.morphisms) == 2 and validate_cat(d) == []
