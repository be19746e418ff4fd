from __future__ import annotations

import pytest

from relcat.arrows import hewq_problems, n_arrow_fiber, n_arrow_path, n_arrow_pullback, zigzag_embed
from relcat.category import FinFunctor, chain, cyclic_group, discrete, validate_cat
from relcat.corpus import point_map
from relcat.grothendieck import (
    GrothendieckInput,
    co_slice_functor,
    gr_identity_problems,
    grothendieck,
    slice_functor,
    strict_fiber,
)
from relcat.homology import category_homology, pi0
from relcat.relative import maximal, w_star_at


def test_path_object_sizes():
    assert len(n_arrow_path(maximal(chain(1)), 1).structure.ambient.objects) == 3
    assert len(n_arrow_path(maximal(cyclic_group(2)), 2).structure.ambient.objects) == 4


@pytest.mark.parametrize("n", [1, 2, 3])
def test_path_object_is_a_category_with_sections(n):
    p = n_arrow_path(maximal(chain(1)), n)
    assert validate_cat(p.structure.ambient) == []
    assert hewq_problems(p) == []


def test_fiber_of_point_in_bc2():
    bc2 = cyclic_group(2)
    fib = n_arrow_fiber(point_map(bc2, "•"), 1)
    F = fib.structure.ambient
    assert len(F.objects) == 2
    assert all(len(F.hom(a, b)) == 1 for a in F.objects for b in F.objects)


def test_fiber_of_vertex_in_delta1():
    d1 = chain(1)
    F = n_arrow_fiber(point_map(d1, "0"), 1).structure.ambient
    assert len(F.objects) == 2
    assert len([m for m in F.morphisms if not F.is_identity(m)]) == 1


def test_pullback_of_the_two_vertices_is_a_point():
    d1 = chain(1)
    pb = n_arrow_pullback(point_map(d1, "0"), point_map(d1, "1"), 1)
    P = pb.structure.ambient
    assert len(P.objects) == 1 and len(P.morphisms) == 1


def test_pullback_of_points_in_bc2_has_two_components():
    bc2 = cyclic_group(2)
    pb = n_arrow_pullback(point_map(bc2, "•"), point_map(bc2, "•"), 3)
    assert pi0(pb.structure.ambient) == 2
    assert category_homology(pb.structure.ambient, 4).through(3) == ((2, ()), (0, ()), (0, ()), (0, ()))


def test_levels_of_the_vertex_pullback_are_terminal(corpus):
    zz = corpus.zigzags["delta1_negative"]
    pb = n_arrow_pullback(zz.f, zz.g, 1, zz.x, zz.y, zz.z)
    for p in [(0,), (1,)]:
        level = w_star_at(pb.structure, p)
        assert len(level.objects) == 1 and len(level.morphisms) == 1


def test_embed_negative_control(corpus):
    zz = corpus.zigzags["delta1_negative"]
    r = zigzag_embed(zz.f, zz.g, 1, zz.x, zz.y, zz.z)
    assert r.squares_ok
    assert len(r.strict.ambient.objects) == 0
    assert r.verdict_h.ok
    assert r.verdict_k.kind == "refuted" and r.verdict_k.degree == 0


def test_embed_points_in_bc2():
    bc2 = cyclic_group(2)
    f = point_map(bc2, "•")
    r = zigzag_embed(f, f, 3)
    assert r.squares_ok
    assert len(r.strict.ambient.objects) == 1
    assert r.verdict_k.kind == "refuted" and r.verdict_k.degree == 0
    assert r.verdict_h.ok


def _c2_on_two():
    bc2 = cyclic_group(2)
    two = discrete(["a", "b"])
    ident = FinFunctor(two, two, {"a": "a", "b": "b"}, {("id", "a"): ("id", "a"), ("id", "b"): ("id", "b")})
    swap = FinFunctor(two, two, {"a": "b", "b": "a"}, {("id", "a"): ("id", "b"), ("id", "b"): ("id", "a")})
    return GrothendieckInput(bc2, {"•": two}, {"g0": ident, "g1": swap})


def test_translation_groupoid_is_contractible():
    G, p = grothendieck(_c2_on_two())
    assert validate_cat(G) == []
    assert len(G.objects) == 2
    assert all(len(G.hom(a, b)) == 1 for a in G.objects for b in G.objects)
    assert category_homology(G, 3).is_point()


def test_slice_fibers():
    bc2 = cyclic_group(2)
    data = slice_functor(point_map(bc2, "•"), 1)
    (fib,) = data.input.fibers.values()
    assert len(fib.objects) == 2 and len(fib.morphisms) == 2
    d1 = chain(1)
    data = slice_functor(point_map(d1, "0"), 1)
    for fib in data.input.fibers.values():
        assert len(fib.objects) == 1 and len(fib.morphisms) == 1
    action = data.input.action["0-1"]
    assert len(action.on_objects) == 1 and len(action.on_morphisms) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_slice_and_coslice_reproduce_the_fiber(corpus, n):
    for name in ("pt_bc2", "id_bc2", "pt0_delta1", "id_delta1", "d2_chain2"):
        f = corpus.functors[name]
        assert gr_identity_problems(slice_functor(f, n)) == [], (name, n)
        for z0 in f.target.objects:
            data = co_slice_functor(f, n, z0)
            assert data.input.variance == ("co" if n % 2 == 0 else "contra")
            assert gr_identity_problems(data) == [], (name, n, z0)


def test_strict_fiber_of_projection():
    G, p = grothendieck(_c2_on_two())
    F = strict_fiber(p, "•")
    assert len(F.objects) == 2 and len(F.morphisms) == 2
