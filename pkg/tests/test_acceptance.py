"""Acceptance criteria A1-A10.

Each test records one line in ``RESULTS``; ``conftest.py`` prints them in the
terminal summary, and running this file directly prints them too.
"""

from __future__ import annotations

import functools
import itertools
import time

import pytest

from relcat.arrows import hewq_problems, n_arrow_fiber, n_arrow_path, n_arrow_pullback, zigzag_embed
from relcat.category import (
    Caps,
    cyclic_group,
    enumerate_functors,
    full_subcategory,
    set_caps,
)
from relcat.corpus import build_corpus, klein_four, point_map
from relcat.homology import (
    boundary_squared_problems,
    category_homology,
    chain_complex,
    check_snf,
    components,
    homology,
    is_unimodular,
    pi0,
    relative_homology,
    relative_we_verdict,
    smith_normal_form,
)
from relcat.oracle import groupoid_pullback_oracle, verify_theorem_Bn
from relcat.properties import (
    PASS,
    REFUTED,
    RelativeMap,
    check_Bn,
    check_Cn,
    quillen_lemma_harness,
    two_path_harness,
)
from relcat.relative import KRelStructure, cat_hat, check_three_arrow_calculus, maximal, w_star_at
from relcat.simplicial import (
    check_simplicial_identities,
    k_simplicial_nerve,
    levelwise_nerve,
    nerve,
    w_star_diagram,
    wstar_simplex_to_grid,
)

from brute import bar_homology, cyclic_table

RESULTS: dict[str, str] = {}


def criterion(label: str):
    """Record PASS/FAIL with elapsed time for one acceptance criterion."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as e:
                RESULTS[label] = f"{label} FAIL ({time.perf_counter() - t:.1f} s): {type(e).__name__}: {e}"
                raise
            RESULTS[label] = f"{label} PASS ({time.perf_counter() - t:.1f} s){': ' + detail if detail else ''}"

        return run

    return wrap


@pytest.fixture(scope="module")
def corpus():
    return build_corpus(0)


@pytest.fixture
def big_caps():
    old = set_caps(Caps(10000 * 4, 100000 * 4))
    yield
    set_caps(old)


def _structures(corpus) -> dict[str, KRelStructure]:
    out = dict(corpus.structures)
    for name, c in corpus.categories.items():
        out[f"{name}^"] = cat_hat(c)
    return out


# -- A1 ------------------------------------------------------------------------------


@pytest.mark.parametrize("order", [2, 3])
def test_A1_theorem_on_loop_groupoid(order):
    label = f"A1[C{order}]"

    @criterion(label)
    def run():
        t = time.perf_counter()
        g = cyclic_group(order)
        f = point_map(g, "•")
        mp, mg = maximal(f.source), maximal(g)
        rep = verify_theorem_Bn(f, f, 3, 4, x=mp, y=mp, z=mg)
        assert rep.hypothesis.overall == PASS
        pb = n_arrow_pullback(f, f, 3, mp, mp, mg)
        P = pb.structure.ambient
        assert pi0(P) == order
        for comp in components(P):
            assert category_homology(full_subcategory(P, comp), 4).is_point(3)
        oracle = groupoid_pullback_oracle(f, f)
        assert len(oracle.components) == order
        assert all(len(iso.elements) == 1 for _, iso in oracle.components)
        assert rep.homology_match is True and rep.overall == PASS
        elapsed = time.perf_counter() - t
        assert elapsed < 10, f"{elapsed:.1f} s"
        return f"pi0 = {order}, components are points through degree 3, oracle agrees"

    run()


# -- A2 ------------------------------------------------------------------------------


def test_A2_oracle_sweep():
    @criterion("A2")
    def run():
        t = time.perf_counter()
        groups = [cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four()]
        cases = mismatches = 0
        for G in groups:
            z = cat_hat(G)
            homs = [F for H in groups for F in enumerate_functors(H, G)]
            for f in homs:
                fib = n_arrow_fiber(f, 3, z=z)
                for g in homs:
                    pb = n_arrow_pullback(f, g, 3, z=z, fiber=fib)
                    got = relative_homology(pb.structure, 3)
                    want = groupoid_pullback_oracle(f, g).homology(3)
                    cases += 1
                    mismatches += got.through(2) != want.through(2)
        elapsed = time.perf_counter() - t
        assert mismatches == 0, f"{mismatches} of {cases} cases differ"
        assert elapsed < 300, f"{elapsed:.1f} s"
        return f"{cases} homomorphism pairs, 0 mismatches"

    run()


# -- A3 ------------------------------------------------------------------------------


def test_A3_embedding_squares(corpus):
    @criterion("A3")
    def run():
        checked = 0
        for name, zz in corpus.zigzags.items():
            for n in (1, 2, 3):
                r = zigzag_embed(zz.f, zz.g, n, zz.x, zz.y, zz.z, bound=4)
                assert r.squares_ok, (name, n, r.left_square, r.right_square)
                assert r.verdict_h.kind == "consistent", (name, n, str(r.verdict_h))
                checked += 1
        return f"{checked} zigzag/n pairs, both squares strict pullbacks, h ConsistentThrough"

    run()


# -- A4 ------------------------------------------------------------------------------


def test_A4_path_object_sections(corpus, big_caps):
    @criterion("A4")
    def run():
        checked = 0
        for name, z in _structures(corpus).items():
            for n in (1, 2, 3):
                p = n_arrow_path(z, n)
                assert hewq_problems(p) == [], (name, n)
                for F, a, b in ((p.j, z, p.structure), (p.pi_n, p.structure, z), (p.pi_0, p.structure, z)):
                    v = relative_we_verdict(F, a, b, 3)
                    assert v.kind == "consistent", (name, n, F.name, str(v))
                checked += 1
        return f"{checked} structure/n pairs, sections exact, j/pi_n/pi_0 ConsistentThrough"

    run()


# -- A5 ------------------------------------------------------------------------------


def test_A5_negative_control(corpus):
    @criterion("A5")
    def run():
        zz = corpus.zigzags["delta1_negative"]
        r = zigzag_embed(zz.f, zz.g, 1, zz.x, zz.y, zz.z)
        assert len(r.strict.ambient.objects) == 0
        P = r.pullback.structure.ambient
        assert len(P.objects) == 1 and len(P.morphisms) == 1
        assert r.verdict_k.kind == "refuted" and r.verdict_k.degree == 0
        return "strict pullback empty, 1-arrow pullback a point, k Refuted at degree 0"

    run()


# -- A6 ------------------------------------------------------------------------------


def test_A6_quillen_harness(corpus):
    @criterion("A6")
    def run():
        outcomes = {}
        for name, inp in corpus.diagrams.items():
            r = quillen_lemma_harness(inp)
            assert r.agree, (name, r.relative.summary(), r.fibrillation.summary())
            outcomes[name] = r.overall
        assert outcomes["empty_terminal_over_delta1"] == REFUTED
        return ", ".join(f"{k}={v}" for k, v in sorted(outcomes.items()))

    run()


# -- A7 ------------------------------------------------------------------------------


def test_A7_Cn_implies_Bn(corpus, big_caps):
    @criterion("A7")
    def run():
        passing = violations = maps = 0
        for n in (1, 2, 3):
            for name, c in corpus.categories.items():
                if check_Cn(c, n).overall != PASS:
                    continue
                passing += 1
                for fname, f in corpus.functors.items():
                    if f.target is c:
                        maps += 1
                        violations += check_Bn(f, n).overall == REFUTED
            for name, zz in corpus.zigzags.items():
                if zz.z is None or zz.z.k == 0:
                    continue
                if check_Cn(zz.z, n, window=0).overall != PASS:
                    continue
                passing += 1
                maps += 1
                violations += check_Bn(RelativeMap(zz.f, zz.x, zz.z), n, window=0).overall == REFUTED
        assert violations == 0
        return f"{passing} objects with C_n, {maps} maps checked, 0 violations"

    run()


# -- A8 ------------------------------------------------------------------------------


def test_A8_strict_calculus_gives_C3(corpus):
    @criterion("A8")
    def run():
        checked = []
        for name, (zname, cal) in sorted(corpus.calculi.items()):
            z = corpus.structures[zname]
            rep = check_three_arrow_calculus(z, cal, strict=True)
            assert rep.ok, (name, [(r.axiom, r.witness) for r in rep.failures()])
            windows = [0]
            if zname.startswith("chain") and int(zname[5]) <= 2:
                windows.append(1)
            for w in windows:
                assert check_Cn(z, 3, window=w).overall != REFUTED, (name, w)
            checked.append(f"{name}(w<={max(windows)})")
        return "strict calculus and C_3 not refuted: " + " ".join(checked)

    run()


# -- A9 ------------------------------------------------------------------------------


def test_A9_homology_kernel(corpus):
    @criterion("A9")
    def run():
        t = time.perf_counter()
        got = homology(nerve(cyclic_group(2), 4), 3)
        assert list(got.groups) == bar_homology(*cyclic_table(2), 3) == [(1, ()), (0, (2,)), (0, ()), (0, (2,))]
        for name, c in corpus.categories.items():
            bound = 3 if len(c.morphisms) <= 6 else 2
            s = nerve(c, bound)
            assert check_simplicial_identities(s) == [], name
            cc = chain_complex(s, bound)
            assert boundary_squared_problems(cc) == [], name
            for d in range(1, bound + 1):
                cols = cc.boundary[d]
                rows = cc.rank(d - 1)
                if not cols or not rows or rows * len(cols) > 20000:
                    continue
                m = [[cols[j].get(i, 0) for j in range(len(cols))] for i in range(rows)]
                dd, u, v = smith_normal_form(m)
                assert check_snf(m, dd, u, v) == [], (name, d)
                assert is_unimodular(u) and is_unimodular(v), (name, d)
        elapsed = time.perf_counter() - t
        assert elapsed < 30, f"{elapsed:.1f} s"
        return "H(BC2) = (Z, Z/2, 0, Z/2) matches the bar complex; identities, d^2 = 0 and SNF checks hold"

    run()


# -- A10 -----------------------------------------------------------------------------


def test_A10_levelwise_coherence(corpus):
    @criterion("A10")
    def run():
        cells = 0
        for name, z in corpus.structures.items():
            if z.k not in (1, 2):
                continue
            window = 1
            lw = levelwise_nerve(w_star_diagram(z, window), window)
            ks = k_simplicial_nerve(z, window)
            for mdeg in itertools.product(range(window + 1), repeat=z.k + 1):
                w = w_star_at(z, mdeg[:-1])
                mine = [wstar_simplex_to_grid(w, z.ambient, mdeg[:-1], x) for x in lw.cells(mdeg)]
                assert len(mine) == len(set(mine)) and set(mine) == set(ks.cells(mdeg)), (name, mdeg)
                cells += len(mine)
        paths = 0
        for name, zz in corpus.zigzags.items():
            if zz.z is None or zz.z.k != 1:
                continue
            r = two_path_harness(zz.f, zz.x, zz.z, 1, window=1)
            assert r.agree, (name, r.direct.summary(), r.levelwise.summary(), r.size_mismatches)
            paths += 1
        return f"{cells} cells identical; two harness paths agree on {paths} zigzags"

    run()


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
