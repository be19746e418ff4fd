from __future__ import annotations

import pytest
from hypothesis import given

from relcat.arrows import leg, n_arrow_path
from relcat.category import FinFunctor, chain, cyclic_group, poset, product, validate_functor
from relcat.relative import (
    KRelStructure,
    ThreeArrowCalculus,
    cat_hat,
    check_strict_homotopy,
    check_three_arrow_calculus,
    derive_witnesses,
    iso_calculus,
    maximal,
    minimal,
    multidegree_window,
    relative,
    shape_chain,
    validate_krel,
    w_star_at,
    w_star_functor,
)

from conftest import posets


def test_shape_chain_examples():
    z = shape_chain(0, "w", 2)
    assert len(z.ambient.objects) == 1 and len(z.ambient.morphisms) == 1
    assert all(m == frozenset(z.ambient.morphisms) for m in z.v_masks + (z.w_mask,))
    one = shape_chain(1, "w", 1)
    assert "0-1" in one.w_mask and "0-1" in one.v_masks[0]
    v = shape_chain(2, "v", 2, 1)
    ids = v.ambient.identity_set
    assert v.v_masks[0] == frozenset(v.ambient.morphisms)
    assert v.v_masks[1] == ids and v.w_mask == ids
    with pytest.raises(ValueError):
        shape_chain(2, "v", 2, 3)


def test_corpus_structures_validate(corpus):
    for name, z in corpus.structures.items():
        rep = validate_krel(z)
        assert rep.ok, (name, [r for r in rep.results if r.status != "pass"])


def test_containment_failure_is_reported():
    c = chain(1)
    z = KRelStructure(c, (c.identity_set,), frozenset(c.morphisms))
    rep = validate_krel(z)
    assert not rep.ok
    assert "w ⊆ v1" in rep.results[0].detail


def test_square_relations_pass(corpus):
    rep = validate_krel(corpus.structures["square_k2"])
    assert rep.status("relations (ii)") == "pass"


def test_diamond_without_mixed_square_fails_relations():
    # both paths of the square go v1 then v2, so no v1/v2 square relates them
    sq, _, _ = product(chain(1), chain(1))
    ids = sq.identity_set
    first = frozenset(m for m, (s, t) in sq.morphisms.items() if s == ("0", "0") and t in {("1", "0"), ("0", "1")})
    second = frozenset(m for m, (s, t) in sq.morphisms.items() if t == ("1", "1") and s in {("1", "0"), ("0", "1")})
    z = KRelStructure(sq, (first | ids, second | ids), ids)
    rep = validate_krel(z)
    assert rep.status("generation (i)") == "pass"
    res = next(r for r in rep.results if r.axiom == "relations (ii)")
    assert res.status == "fail"
    a, b = res.witness
    assert a[1] != b[1] and sq.compose_path(a[1]) == sq.compose_path(b[1])


@given(posets(4))
def test_maximal_and_minimal_posets_validate(c):
    assert validate_krel(maximal(c)).ok
    assert validate_krel(minimal(c)).ok
    assert validate_krel(cat_hat(c)).ok


def _ids_then_all(z: KRelStructure) -> ThreeArrowCalculus:
    a = z.ambient
    ids = a.identity_set
    fac = {m: (a.identity[a.src(m)], m) for m in z.w_mask}
    return ThreeArrowCalculus(ids, z.w_mask, fac, derive_witnesses(z, ids, z.w_mask, fac))


@pytest.mark.parametrize("p", range(4))
def test_chain_calculi_strict(corpus, p):
    z = corpus.structures[f"chain{p}_w"]
    assert check_three_arrow_calculus(z, _ids_then_all(z), strict=True).ok
    assert check_three_arrow_calculus(z, corpus.calculi[f"chain{p}_w"][1], strict=True).ok


def test_iso_calculus_on_groups_and_minimal(corpus):
    for name in ("bc2_max", "bc3_max", "bc4_max", "bs3_max"):
        z = corpus.structures[name]
        assert check_three_arrow_calculus(z, iso_calculus(z), strict=True).ok, name
    z = minimal(chain(2))
    assert check_three_arrow_calculus(z, iso_calculus(z)).ok


def test_cospan_poset_has_no_pullback():
    c = poset(["a", "b", "c"], lambda x, y: x == y or (x in "ab" and y == "c"))
    z = relative(c, [("a", "c")])
    a = z.ambient
    ids = a.identity_set
    fac = {m: (a.identity[a.src(m)], m) for m in z.w_mask}
    rep = check_three_arrow_calculus(z, ThreeArrowCalculus(ids, z.w_mask, fac, derive_witnesses(z, ids, z.w_mask, fac)))
    (fail,) = [r for r in rep.failures() if "(ii)" in r.axiom]
    assert fail.witness[0] == "no pullback"
    assert fail.witness[1] == ("a", "c")


def test_strict_homotopy_trivial_and_endpoint():
    c = chain(1)
    cyl, pr, _ = product(c, chain(1))
    ident = FinFunctor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})
    h = pr.then(ident)
    assert check_strict_homotopy(h, ident, ident, lambda m: True).valid
    const = FinFunctor(c, c, {x: "1" for x in c.objects}, {m: "1-1" for m in c.morphisms})
    v = check_strict_homotopy(h, ident, const, lambda m: True)
    assert not v.valid and any("endpoint 1 mismatch at object 0" in p for p in v.problems)


def test_path_object_contracts_onto_diagonal():
    # identity => j∘pi_0 on Δ¹⌢1⌣Δ¹, component at X = (a: Z1 -> Z0) is the vertical map (a, id)
    z = maximal(chain(1))
    p = n_arrow_path(z, 1)
    P = p.structure.ambient
    jp = p.pi_0.then(p.j)
    comp = {}
    for X in P.objects:
        a = leg(X[1], 1)
        z0 = p.pi_0.ob(X)
        comp[X] = ("zm", X, jp.ob(X), (a, chain(1).identity[z0]))
        assert comp[X] in P.morphisms
    cyl, _, _ = product(P, chain(1))
    obj = {(X, e): (X if e == "0" else jp.ob(X)) for X in P.objects for e in "01"}
    mor = {}
    for m, (s, t) in P.morphisms.items():
        mor[(m, "0-0")] = m
        mor[(m, "1-1")] = jp(m)
        mor[(m, "0-1")] = P.compose(comp[t], m)
    h = FinFunctor(cyl, P, obj, mor)
    assert validate_functor(h) == []
    ident = FinFunctor(P, P, {x: x for x in P.objects}, {m: m for m in P.morphisms})
    v = check_strict_homotopy(h, ident, jp, lambda m: m in p.structure.w_mask)
    assert v.valid, v.problems


def test_w_star_functor_and_window():
    z = maximal(chain(1))
    ident = FinFunctor(z.ambient, z.ambient, {x: x for x in z.ambient.objects}, {m: m for m in z.ambient.morphisms})
    F = w_star_functor(ident, z, z, (1,))
    assert validate_functor(F) == []
    assert all(F(m) == m for m in F.source.morphisms)
    assert multidegree_window(2, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    w0 = w_star_at(maximal(cyclic_group(2)), (0,))
    assert len(w0.objects) == 1 and len(w0.morphisms) == 2
