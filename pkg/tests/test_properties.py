from __future__ import annotations

import pytest

from relcat.category import chain, cyclic_group, identity_functor
from relcat.corpus import point_map
from relcat.grothendieck import grothendieck
from relcat.properties import (
    PASS,
    REFUTED,
    SKIPPED,
    LevelwiseObject,
    RelativeMap,
    check_Bn,
    check_Cn,
    check_fibrillation,
    check_relative_functor,
    default_cospan_family,
    fibrillation_stability,
    quillen_lemma_harness,
    two_path_harness,
)
from relcat.relative import cat_hat, maximal, minimal, w_star_at


def test_family_sizes_and_labels():
    fam = default_cospan_family(cyclic_group(2))
    assert len(fam) == 23
    assert sum(c.label.endswith("|id") for c in fam) == 1 + 2 + 4
    fam = default_cospan_family(chain(1))
    assert len(fam) == 27
    assert fam[0].label == "s0[0;]|id"
    assert [c.label for c in fam] == [c.label for c in default_cospan_family(chain(1))]


def test_action_on_two_points_is_relative(corpus):
    assert check_relative_functor(corpus.diagrams["c2_swap"]).overall == PASS
    assert check_relative_functor(corpus.diagrams["empty_terminal_over_delta1"]).overall == REFUTED


@pytest.mark.parametrize("n", [1, 2, 3])
def test_Bn_into_groupoids(corpus, n):
    for name in ("pt_bc2", "id_bc2", "pt_bc3", "id_bc3"):
        assert check_Bn(corpus.functors[name], n).overall == PASS, name


def test_Bn_vertex_of_delta1():
    assert check_Bn(point_map(chain(1), "0"), 1).overall == PASS


def test_Bn_delta1_minimal_identity():
    z = minimal(chain(1))
    rep = check_Bn(RelativeMap(identity_functor(z.ambient), z, z), 1, window=1)
    assert rep.overall == PASS
    assert rep.cases == []
    assert all(len(w_star_at(z, (p,)).morphisms) == len(w_star_at(z, (p,)).objects) for p in range(3))


def test_Cn_groupoids_and_chains(corpus):
    for name in ("bc2", "bc3"):
        for n in (1, 2, 3):
            assert check_Cn(corpus.categories[name], n).overall == PASS
    for p in range(4):
        assert check_Cn(corpus.structures[f"chain{p}_w"], 3, window=0).overall == PASS


def test_Cn_failure_control():
    rep = check_Cn(cat_hat(chain(1)), 1)
    assert rep.overall == REFUTED
    assert [c.id for c in rep.refuted] == ["1/0-1"]
    assert rep.refuted[0].verdict.degree == 0


def test_Cn_levelwise_object_prefixes():
    z = maximal(cyclic_group(2))
    rep = check_Cn(LevelwiseObject(1, [(0,)], lambda p: w_star_at(z, p)), 1)
    assert rep.overall == PASS
    assert all(c.id.startswith("p0/") for c in rep.cases)


def test_translation_groupoid_projection_is_a_fibrillation(corpus):
    _, pi = grothendieck(corpus.diagrams["c2_swap"])
    rep = check_fibrillation(pi, default_cospan_family(pi.target))
    assert rep.overall == PASS
    # probes from contractible simplices into BC2 are not weak equivalences
    assert any(c.status == SKIPPED for c in rep.cases)
    stab = fibrillation_stability(pi, default_cospan_family(pi.target, 1))
    assert stab.overall == PASS


def test_empty_over_terminal_is_not_a_fibrillation(corpus):
    _, pi = grothendieck(corpus.diagrams["empty_terminal_over_delta1"])
    rep = check_fibrillation(pi, default_cospan_family(pi.target))
    assert rep.overall == REFUTED
    assert "s0[0;]|id" in {c.id for c in rep.refuted}
    assert not any(c.status == SKIPPED for c in rep.cases)


def test_weak_equivalence_pullback_along_fibrillation(corpus):
    _, pi = grothendieck(corpus.diagrams["const_bc2_over_delta1"])
    stab = fibrillation_stability(pi, default_cospan_family(pi.target, 1))
    case = next(c for c in stab.cases if c.id == "we-pullback[s0[0;]|id]")
    assert case.status == PASS and case.verdict.kind == "consistent"


def test_quillen_harness_on_corpus(corpus):
    expected = {
        "const_bc2_over_delta1": PASS,
        "empty_terminal_over_delta1": REFUTED,
        "c2_swap": PASS,
        "c2_trivial": PASS,
        "discrete2_to_point": REFUTED,
        "delta1_to_point": PASS,
    }
    for name, inp in corpus.diagrams.items():
        r = quillen_lemma_harness(inp)
        assert r.agree, name
        assert r.overall == expected[name], name


def test_two_path_harness_agrees(corpus):
    z = corpus.structures["delta1_min"]
    r = two_path_harness(identity_functor(z.ambient), z, z, 1, window=1)
    assert r.agree, (r.direct.summary(), r.levelwise.summary(), r.size_mismatches)
    zz = corpus.zigzags["delta1_negative"]
    r = two_path_harness(zz.f, zz.x, zz.z, 1, window=1)
    assert r.agree, (r.direct.summary(), r.levelwise.summary(), r.size_mismatches)
