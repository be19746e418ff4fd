from __future__ import annotations

import pytest
from hypothesis import settings, strategies as st

from relcat.category import FinCat, group_category, poset
from relcat.corpus import build_corpus

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(0)


@st.composite
def posets(draw, max_size: int = 5) -> FinCat:
    """Random posets on ``0..n-1`` refining the natural order."""
    n = draw(st.integers(1, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    rel = set(chosen)
    while True:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        if not extra:
            break
        rel |= extra
    return poset([str(i) for i in range(n)], lambda x, y: x == y or (int(x), int(y)) in rel)


@st.composite
def cyclic_products(draw) -> FinCat:
    """``B(Z/a x Z/b)`` from its multiplication table."""
    a = draw(st.integers(1, 4))
    b = draw(st.integers(1, 3))
    els = [f"{i}.{j}" for i in range(a) for j in range(b)]

    def mul(x: str, y: str) -> str:
        i1, j1 = map(int, x.split("."))
        i2, j2 = map(int, y.split("."))
        return f"{(i1 + i2) % a}.{(j1 + j2) % b}"

    return group_category(els, {(x, y): mul(x, y) for x in els for y in els}, name=f"B(C{a}xC{b})")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(results, key=lambda s: (int(s[1:].split("[")[0]), s)):
        terminalreporter.write_line(results[label])
