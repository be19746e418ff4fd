from __future__ import annotations

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from relcat.category import FinFunctor, chain, cyclic_group, discrete, identity_functor, terminal
from relcat.corpus import point_map, pseudo_circle
from relcat.homology import (
    ConsistentThrough,
    Refuted,
    boundary_squared_problems,
    category_homology,
    chain_complex,
    check_snf,
    homology,
    induced_we_verdict,
    is_unimodular,
    relative_homology,
    relative_we_verdict,
    smith_normal_form,
)
from relcat.relative import maximal, minimal, relative
from relcat.simplicial import diagonal, k_simplicial_nerve, nerve

from brute import bar_homology, cyclic_table, order_complex_homology
from conftest import cyclic_products, posets

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_snf_example():
    d, u, v = smith_normal_form([[2, 0], [0, 3]])
    assert d == [[1, 0], [0, 6]]
    assert check_snf([[2, 0], [0, 3]], d, u, v) == []


@given(matrices)
def test_snf_matches_sympy_and_is_unimodular(m):
    d, u, v = smith_normal_form(m)
    assert check_snf(m, d, u, v) == []
    assert is_unimodular(u) and is_unimodular(v)
    ref = sympy_snf(Matrix(m), domain=ZZ)
    ours = sorted(abs(d[i][i]) for i in range(min(len(m), len(m[0]))) if d[i][i])
    theirs = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i])
    assert ours == theirs


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_group_homology_matches_bar_complex(n):
    expected = bar_homology(*cyclic_table(n), 3)
    got = homology(nerve(cyclic_group(n), 4), 3)
    assert list(got.groups) == expected
    assert category_homology(cyclic_group(n), 4) == got


def test_bc2_values():
    h = category_homology(cyclic_group(2), 4)
    assert h.through(3) == ((1, ()), (0, (2,)), (0, ()), (0, (2,)))


def test_pseudo_circle_is_a_circle():
    c = pseudo_circle()
    expected = order_complex_homology(list("abcd"), lambda x, y: x in "ab" and y in "cd", 2)
    assert list(category_homology(c, 3).groups) == expected == [(1, ()), (1, ()), (0, ())]
    assert category_homology(c, 3, shortcuts=False) == category_homology(c, 3)


@given(posets(4))
def test_poset_homology_matches_order_complex(c):
    less = lambda x, y: x != y and bool(c.hom(x, y))
    assert list(category_homology(c, 3).groups) == order_complex_homology(list(c.objects), less, 2)


@given(cyclic_products())
def test_shortcuts_agree_with_full_nerve(c):
    assert category_homology(c, 3) == category_homology(c, 3, shortcuts=False)


def test_boundary_squared_zero_on_corpus(corpus):
    for name, c in corpus.categories.items():
        bound = 2 if len(c.morphisms) > 6 else 3
        assert boundary_squared_problems(chain_complex(nerve(c, bound), bound)) == [], name
    for name in ("delta1_max", "delta1_min", "square_k2"):
        s = diagonal(k_simplicial_nerve(corpus.structures[name], 2))
        assert boundary_squared_problems(chain_complex(s, 2)) == [], name


def test_literal_diagonal_agrees_with_classical():
    for z in (maximal(cyclic_group(2)), maximal(chain(1)), minimal(chain(2))):
        assert relative_homology(z, 3, literal=True) == relative_homology(z, 3)


def test_verdicts():
    d1 = chain(1)
    pt = terminal()
    inc = point_map(d1, "0", pt)
    assert isinstance(induced_we_verdict(inc, 4), ConsistentThrough)
    two = discrete(["a", "b"])
    v = induced_we_verdict(FinFunctor(two, d1, {"a": "0", "b": "1"}, {("id", "a"): "0-0", ("id", "b"): "1-1"}), 4)
    assert isinstance(v, Refuted) and v.degree == 0
    bc2 = cyclic_group(2)
    collapse = FinFunctor(bc2, pt, {"•": "*"}, {m: "1*" for m in bc2.morphisms})
    v = induced_we_verdict(collapse, 4)
    assert isinstance(v, Refuted) and v.degree == 1
    assert induced_we_verdict(identity_functor(bc2), 4).ok


def test_relative_verdict_literal_path():
    # w strictly between identities and everything forces the literal diagonal
    z = relative(chain(2), ["0-1"])
    assert relative_homology(z, 3).is_point()
    assert relative_we_verdict(identity_functor(z.ambient), z, z, 3).ok
    collapse = FinFunctor(z.ambient, terminal(), {x: "*" for x in z.ambient.objects}, {m: "1*" for m in z.ambient.morphisms})
    assert relative_we_verdict(collapse, z, maximal(terminal()), 3).ok
