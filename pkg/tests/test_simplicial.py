from __future__ import annotations

import itertools

import pytest
from hypothesis import given

from relcat.category import chain, cyclic_group
from relcat.grids import enumerate_grids
from relcat.relative import maximal, minimal, shape_chain, w_star_at
from relcat.simplicial import (
    check_simplicial_identities,
    diagonal,
    k_simplicial_nerve,
    levelwise_nerve,
    nerve,
    nerve_nondegenerate_simplices,
    simplicial_nerve,
    validate_diagram,
    w_star_diagram,
    wstar_simplex_to_grid,
)

from brute import monotone_maps
from conftest import cyclic_products, posets


def test_bc2_nerve_one_nondegenerate_per_degree():
    c = cyclic_group(2)
    for d in range(5):
        nd = nerve_nondegenerate_simplices(c, d)
        assert len(nd) == 1
        assert len(nerve(c, 4).cells((d,))) == 2**d


def test_chain_nerve_counts_match_monotone_maps():
    for p in range(4):
        n = nerve(chain(p), 3)
        for d in range(4):
            assert n.count((d,)) == len(monotone_maps((d,), p))


@given(posets(4))
def test_nerve_simplicial_identities_posets(c):
    assert check_simplicial_identities(nerve(c, 3)) == []


@given(cyclic_products())
def test_nerve_simplicial_identities_groups(c):
    assert check_simplicial_identities(nerve(c, 2)) == []


def test_corpus_nerves_satisfy_identities(corpus):
    for name, c in corpus.categories.items():
        bound = 2 if len(c.morphisms) > 4 else 3
        assert check_simplicial_identities(nerve(c, bound)) == [], name


def test_one_w_has_six_cells_in_bidegree_1_1():
    s = k_simplicial_nerve(shape_chain(1, "w", 1), 2)
    assert s.count((1, 1)) == len(monotone_maps((1, 1), 1)) == 6


def test_delta1_minimal_counts_independent_of_q():
    s = k_simplicial_nerve(minimal(chain(1)), 2)
    for p in range(3):
        for q in range(3):
            assert s.count((p, q)) == p + 2


def test_delta1_maximal_bidegree_counts():
    s = k_simplicial_nerve(maximal(chain(1)), 2)
    expected = {(0, 0): 2, (1, 1): 6, (2, 1): 10, (1, 2): 10}
    for mdeg, n in expected.items():
        assert s.count(mdeg) == n == len(monotone_maps(mdeg, 1))


def test_square_k2_cells(corpus):
    # image point of (a, b) is (u(b), v(a)) with u, v monotone [1] -> [1]
    s = k_simplicial_nerve(corpus.structures["square_k2"], 1)
    assert s.count((1, 1, 0)) == 9
    nondeg = [g for g in s.cells((1, 1, 0)) if len(set(g[0])) == 4]
    assert len(nondeg) == 1


def test_grid_nerves_satisfy_identities(corpus):
    for name in ("delta1_max", "delta1_min", "chain1_w_k2", "square_k2", "chain2_v1_k2"):
        z = corpus.structures[name]
        assert check_simplicial_identities(k_simplicial_nerve(z, 1)) == [], name


def test_diagonal_of_bc2_maximal_counts():
    bc2 = cyclic_group(2)
    d = diagonal(simplicial_nerve(maximal(bc2), 3))
    (g,) = [m for m in bc2.morphisms if m != bc2.identity["•"]]
    els = [bc2.identity["•"], g]
    for deg in range(3):
        # brute force: assign group elements to the unit edges of [deg] x [deg] and keep commuting grids
        h = [((i, j), (i + 1, j)) for i in range(deg) for j in range(deg + 1)]
        v = [((i, j), (i, j + 1)) for i in range(deg + 1) for j in range(deg)]
        count = 0
        for vals in itertools.product(els, repeat=len(h) + len(v)):
            e = dict(zip(h + v, vals))
            ok = all(
                bc2.compose(e[((i + 1, j), (i + 1, j + 1))], e[((i, j), (i + 1, j))])
                == bc2.compose(e[((i, j + 1), (i + 1, j + 1))], e[((i, j), (i, j + 1))])
                for i in range(deg)
                for j in range(deg)
            )
            count += ok
        assert d.count((deg,)) == count == 2 ** ((deg + 1) ** 2 - 1)
    assert d.count((3,)) == 2**15
    assert check_simplicial_identities(diagonal(simplicial_nerve(maximal(bc2), 2))) == []


def test_w1_of_delta1_maximal():
    w1 = w_star_at(maximal(chain(1)), (1,))
    assert len(w1.objects) == 3
    assert len(w1.morphisms) == len(monotone_maps((1, 1), 1)) == 6


@pytest.mark.parametrize(
    "name,window", [("delta1_max", 1), ("delta1_min", 2), ("chain2_v", 1), ("chain1_w_k2", 1), ("square_k2", 1)]
)
def test_levelwise_nerve_equals_k_simplicial_nerve(corpus, name, window):
    z = corpus.structures[name]
    lw = levelwise_nerve(w_star_diagram(z, window), window)
    ks = k_simplicial_nerve(z, window)
    assert validate_diagram(w_star_diagram(z, window)) == []
    for mdeg in itertools.product(range(window + 1), repeat=z.k + 1):
        w = w_star_at(z, mdeg[:-1])
        translated = [wstar_simplex_to_grid(w, z.ambient, mdeg[:-1], x) for x in lw.cells(mdeg)]
        assert len(translated) == len(set(translated))
        assert set(translated) == set(ks.cells(mdeg)), mdeg


def test_enumerate_grids_matches_monotone_maps():
    for dims in [(1,), (2,), (1, 1), (2, 1), (1, 1, 1)]:
        for p in range(3):
            assert len(enumerate_grids(chain(p), dims, [None] * len(dims))) == len(monotone_maps(dims, p))
