"""Independent brute-force oracles for the tests.

Nothing here calls the package's chain complexes or Smith normal form:
simplices are enumerated directly and elementary divisors come from sympy.
"""

from __future__ import annotations

import itertools

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def _divisors(rows: int, cols: list[dict[int, int]]) -> list[int]:
    if not cols or rows == 0:
        return []
    m = Matrix(rows, len(cols), lambda i, j: cols[j].get(i, 0))
    d = smith_normal_form(m, domain=ZZ)
    return [abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0]


def homology_from_cells(cells: list[list], faces) -> list[tuple[int, tuple[int, ...]]]:
    """Homology through ``len(cells) - 2`` of a complex with ``cells[d]`` and ``faces(d, x) -> [(sign, y)]``."""
    index = [{x: i for i, x in enumerate(cs)} for cs in cells]
    divs = [[]]
    for d in range(1, len(cells)):
        cols = []
        for x in cells[d]:
            col: dict[int, int] = {}
            for sign, y in faces(d, x):
                j = index[d - 1].get(y)
                if j is not None:
                    col[j] = col.get(j, 0) + sign
            cols.append({k: v for k, v in col.items() if v})
        divs.append(_divisors(len(cells[d - 1]), cols))
    out = []
    for d in range(len(cells) - 1):
        betti = len(cells[d]) - len(divs[d]) - len(divs[d + 1])
        out.append((betti, tuple(sorted(x for x in divs[d + 1] if x > 1))))
    return out


def bar_homology(elements: list, mult, unit, top: int) -> list[tuple[int, tuple[int, ...]]]:
    """Group homology ``H_d(G; Z)`` for ``d <= top`` from the normalized inhomogeneous bar complex.

    ``d[g1|...|gn] = [g2|...|gn] + sum (-1)^i [..|g_i g_{i+1}|..] + (-1)^n [g1|...|g_{n-1}]``;
    cells containing the unit are zero.
    """
    nontriv = [g for g in elements if g != unit]
    cells = [list(itertools.product(nontriv, repeat=d)) for d in range(top + 2)]

    def faces(d: int, x: tuple) -> list:
        out = [(1, x[1:])]
        for i in range(d - 1):
            prod = mult(x[i], x[i + 1])
            if prod != unit:
                out.append(((-1) ** (i + 1), x[:i] + (prod,) + x[i + 2:]))
        out.append(((-1) ** d, x[:-1]))
        return out

    return homology_from_cells(cells, faces)


def order_complex_homology(elements: list, less, top: int) -> list[tuple[int, tuple[int, ...]]]:
    """Homology of the order complex of a finite poset (strict chains as simplices)."""
    cells = []
    for d in range(top + 2):
        cells.append([c for c in itertools.permutations(elements, d + 1)
                      if all(less(c[i], c[i + 1]) for i in range(d))])

    def faces(d: int, x: tuple) -> list:
        return [((-1) ** i, x[:i] + x[i + 1:]) for i in range(d + 1)]

    return homology_from_cells(cells, faces)


def monotone_maps(dims: tuple[int, ...], target: int) -> list[tuple]:
    """Order-preserving maps ``[d1] x ... x [dr] -> [target]`` as value tuples over the grid points."""
    pts = list(itertools.product(*(range(d + 1) for d in dims)))
    out = []
    for vals in itertools.product(range(target + 1), repeat=len(pts)):
        v = dict(zip(pts, vals))
        if all(v[p] <= v[q] for p in pts for q in pts if all(a <= b for a, b in zip(p, q))):
            out.append(vals)
    return out


def cyclic_table(n: int):
    els = list(range(n))
    return els, (lambda a, b: (a + b) % n), 0
