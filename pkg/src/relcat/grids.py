"""Functors from products of chains ``[d_1] x ... x [d_m]`` into a finite category.

A grid is stored as ``(verts, edges)``: ``verts`` lists the image of every
grid point in lexicographic order (last coordinate fastest) and ``edges``
lists the image of every unit edge, ordered by direction and then by the
lexicographic position of the edge's source point.  A grid determines the
functor because unit squares commute.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Sequence
from functools import lru_cache

from .category import FinCat, Id, check_quota

Grid = tuple[tuple, tuple]


@lru_cache(maxsize=None)
def points(dims: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(*(range(d + 1) for d in dims)))


@lru_cache(maxsize=None)
def point_index(dims: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    return {p: i for i, p in enumerate(points(dims))}


@lru_cache(maxsize=None)
def edge_slots(dims: tuple[int, ...]) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """``(direction, source point)`` for every unit edge, in storage order."""
    return tuple(
        (t, p) for t in range(len(dims)) for p in points(dims) if p[t] < dims[t]
    )


@lru_cache(maxsize=None)
def edge_index(dims: tuple[int, ...]) -> dict[tuple[int, tuple[int, ...]], int]:
    return {slot: i for i, slot in enumerate(edge_slots(dims))}


def _step(p: tuple[int, ...], t: int, delta: int = 1) -> tuple[int, ...]:
    return p[:t] + (p[t] + delta,) + p[t + 1:]


def enumerate_grids(
    c: FinCat, dims: Sequence[int], masks: Sequence[frozenset | None]
) -> list[Grid]:
    """All functors from the product of chains sending direction-``t`` unit edges into ``masks[t]``.

    ``None`` as a mask means "any morphism".
    """
    dims = tuple(dims)
    pts = points(dims)
    slots = edge_slots(dims)
    eidx = edge_index(dims)
    m = len(dims)
    allowed_out: list[dict[Id, list[Id]]] = []
    allowed_hom: list[dict[tuple[Id, Id], list[Id]]] = []
    for t in range(m):
        mask = masks[t]
        out: dict[Id, list[Id]] = {}
        hom: dict[tuple[Id, Id], list[Id]] = {}
        for f, (s, tt) in c.morphisms.items():
            if mask is None or f in mask:
                out.setdefault(s, []).append(f)
                hom.setdefault((s, tt), []).append(f)
        allowed_out.append(out)
        allowed_hom.append(hom)

    verts: list[Id] = [None] * len(pts)
    edges: list[Id] = [None] * len(slots)
    pidx = point_index(dims)
    results: list[Grid] = []
    compose = c.compose

    incoming = []
    for y in pts:
        ins = [t for t in range(m) if y[t] > 0]
        incoming.append(ins)

    def rec(k: int) -> None:
        if k == len(pts):
            results.append((tuple(verts), tuple(edges)))
            return
        y = pts[k]
        ins = incoming[k]
        if not ins:
            for o in c.objects:
                verts[k] = o
                rec(k + 1)
            return
        t0 = ins[0]
        s0 = verts[pidx[_step(y, t0, -1)]]
        e0 = eidx[(t0, _step(y, t0, -1))]
        for f0 in allowed_out[t0].get(s0, ()):
            o = c.morphisms[f0][1]
            edges[e0] = f0
            verts[k] = o
            assign(k, y, ins, 1, o)
        edges[e0] = None

    def assign(k: int, y: tuple, ins: list[int], j: int, o: Id) -> None:
        if j == len(ins):
            rec(k + 1)
            return
        t = ins[j]
        src_pt = _step(y, t, -1)
        s = verts[pidx[src_pt]]
        e = eidx[(t, src_pt)]
        for f in allowed_hom[t].get((s, o), ()):
            edges[e] = f
            ok = True
            for t_prev in ins[:j]:
                corner = _step(src_pt, t_prev, -1)
                # corner -> corner+e_t_prev -> y  vs  corner -> corner+e_t -> y
                a1 = edges[eidx[(t_prev, corner)]]
                b1 = f
                a2 = edges[eidx[(t, corner)]]
                b2 = edges[eidx[(t_prev, _step(y, t_prev, -1))]]
                if compose(b1, a1) != compose(b2, a2):
                    ok = False
                    break
            if ok:
                assign(k, y, ins, j + 1, o)
        edges[e] = None

    rec(0)
    check_quota(0, len(results), f"grid enumeration {dims}")
    return results


def path_morphism(c: FinCat, dims: tuple[int, ...], g: Grid, a: tuple, b: tuple) -> Id:
    """Image of the unique morphism ``a <= b`` of the grid shape."""
    verts, edges = g
    eidx = edge_index(dims)
    acc = c.identity[verts[point_index(dims)[a]]]
    cur = a
    for t in range(len(dims)):
        while cur[t] < b[t]:
            acc = c.compose(edges[eidx[(t, cur)]], acc)
            cur = _step(cur, t)
    return acc


@lru_cache(maxsize=4096)
def _precompose_plan(
    dims: tuple[int, ...], direction: int, sigma: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[tuple[int, object], ...]]:
    """Index plan: vertex sources, and for each new edge one of
    ``(0, edge)``, ``(1, vertex)`` (identity) or ``(2, edges)`` (composite path)."""
    new_dims = dims[:direction] + (len(sigma) - 1,) + dims[direction + 1:]
    pidx = point_index(dims)
    eidx = edge_index(dims)

    def image(p: tuple) -> tuple:
        return p[:direction] + (sigma[p[direction]],) + p[direction + 1:]

    vsrc = tuple(pidx[image(p)] for p in points(new_dims))
    plan: list[tuple[int, object]] = []
    for t, p in edge_slots(new_dims):
        a, b = image(p), image(_step(p, t))
        if t != direction:
            plan.append((0, eidx[(t, a)]))
        elif a == b:
            plan.append((1, pidx[a]))
        else:
            path = []
            cur = a
            while cur != b:
                path.append(eidx[(t, cur)])
                cur = _step(cur, t)
            plan.append((0, path[0]) if len(path) == 1 else (2, tuple(path)))
    return new_dims, vsrc, tuple(plan)


def precompose(
    c: FinCat, dims: tuple[int, ...], g: Grid, direction: int, sigma: Sequence[int]
) -> tuple[tuple[int, ...], Grid]:
    """Restrict ``g`` along a monotone map ``sigma: [d'] -> [dims[direction]]``.

    Returns the new shape and grid.
    """
    new_dims, vsrc, plan = _precompose_plan(tuple(dims), direction, tuple(sigma))
    verts, edges = g
    nedges = []
    for kind, ref in plan:
        if kind == 0:
            nedges.append(edges[ref])
        elif kind == 1:
            nedges.append(c.identity[verts[ref]])
        else:
            acc = edges[ref[0]]
            for e in ref[1:]:
                acc = c.compose(edges[e], acc)
            nedges.append(acc)
    return new_dims, (tuple(verts[i] for i in vsrc), tuple(nedges))


def face_map(d: int, i: int) -> tuple[int, ...]:
    """Coface ``[d-1] -> [d]`` skipping ``i``."""
    return tuple(j if j < i else j + 1 for j in range(d))


def degeneracy_map(d: int, i: int) -> tuple[int, ...]:
    """Codegeneracy ``[d+1] -> [d]`` hitting ``i`` twice."""
    return tuple(j if j <= i else j - 1 for j in range(d + 2))


def apply_functor(F_obj: Callable[[Id], Id], F_mor: Callable[[Id], Id], g: Grid) -> Grid:
    verts, edges = g
    return tuple(F_obj(v) for v in verts), tuple(F_mor(e) for e in edges)


def stack(
    c: FinCat, dims: tuple[int, ...], layers: Sequence[Grid], links: Sequence[Grid]
) -> Grid:
    """Glue grids of shape ``dims`` into one of shape ``dims + (len(layers)-1,)``.

    ``links[j]`` is a grid of shape ``dims + (1,)`` from ``layers[j]`` to
    ``layers[j+1]``; only its last-direction edges are read.
    """
    q = len(layers) - 1
    new_dims = dims + (q,)
    bidx = point_index(dims)
    beidx = edge_index(dims)
    link_dims = dims + (1,)
    leidx = edge_index(link_dims)
    last = len(dims)
    verts = tuple(layers[p[-1]][0][bidx[p[:-1]]] for p in points(new_dims))
    edges = []
    for t, p in edge_slots(new_dims):
        if t < last:
            edges.append(layers[p[-1]][1][beidx[(t, p[:-1])]])
        else:
            edges.append(links[p[-1]][1][leidx[(last, p[:-1] + (0,))]])
    return verts, tuple(edges)


def iterate_multidegrees(bound: int, arity: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(bound + 1), repeat=arity)
