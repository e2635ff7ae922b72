"""Non-crossing embedding of an outerplanar graph on any point set.

The graph is completed to a maximal outerplanar graph; its Hamilton cycle is
cut open at one edge, which goes to a hull edge of the point set. Each
triangle on an edge (u, w) with apex z is then realised by choosing z's
point so that the remaining points split between the two sub-polygons in
the sizes they need, with the two groups on opposite sides of a line.
"""

from __future__ import annotations

from functools import cmp_to_key
from typing import Sequence

from ..coloring import Color, Embedding, Extremal
from ..errors import ContractViolation, InvalidInput
from ..geometry import Point, PointSet, convex_hull, has_collinear_triple, orient
from ..graphs import PatternGraph, maximal_outerplanar_completion


def _as_points(P) -> list[Point]:
    pts = list(P.points if isinstance(P, PointSet) else P)
    if any(p.id < 0 for p in pts):
        raise InvalidInput("points must carry ids")
    return pts


def embed_outerplanar(
    G: PatternGraph,
    P: "PointSet | Sequence[Point]",
    anchor: tuple[int, int] | None = None,
    color: Color = Color.RED,
    extremal: Extremal | None = None,
) -> Embedding:
    """Map ``G`` onto exactly the points ``P`` without crossings.

    ``anchor = (v, p)`` forces vertex ``v`` onto point id ``p``, which must
    be a hull vertex of ``P``. ``color`` is only recorded on the result: the
    caller uses this inside a monochromatic set.
    """
    pts = _as_points(P)
    n = G.n
    if len(pts) != n:
        raise ContractViolation(f"need exactly {n} points, got {len(pts)}")
    if has_collinear_triple(pts):
        raise ContractViolation("points are not in general position")
    order, full = maximal_outerplanar_completion(G)
    by_id = {p.id: p for p in pts}
    hull = convex_hull(pts)
    if anchor is not None:
        v, p = anchor
        if not 0 <= v < n:
            raise ContractViolation(f"anchor vertex {v} out of range")
        if p not in hull:
            raise ContractViolation(f"anchor point {p} is not on the convex hull")
        k = order.index(v)
        cyc = order[k:] + order[:k]
        start = hull.index(p)
    else:
        cyc, start = list(order), 0
    mapping = [-1] * n
    mapping[cyc[0]] = hull[start]
    if n == 1:
        return Embedding(G, tuple(mapping), color, extremal)
    second = hull[(start + 1) % len(hull)]
    mapping[cyc[-1]] = second
    rest = [p for p in pts if p.id not in (hull[start], second)]
    _place(full, cyc, by_id[hull[start]], by_id[second], rest, mapping)
    return Embedding(G, tuple(mapping), color, extremal)


def _place(H: PatternGraph, path: list[int], pu: Point, pv: Point, S: list[Point], mapping: list[int]):
    # path[0] sits at pu, path[-1] at pv, and the inner path vertices must
    # use exactly the points S, all strictly on one side of line pu-pv.
    while len(path) > 2:
        k = len(path) - 1
        u, w = path[0], path[k]
        j = next(i for i in range(1, k) if H.has_edge(u, path[i]) and H.has_edge(path[i], w))
        r, s_a, s_b = _split(pu, pv, S, j - 1)
        mapping[path[j]] = r.id
        if j > 1:
            _place(H, path[:j + 1], pu, r, s_a, mapping)
        path, pu, S = path[j:], r, s_b


def _split(pu: Point, pv: Point, S: list[Point], need: int) -> tuple[Point, list[Point], list[Point]]:
    """Apex r and a split of S - {r} into ``need`` points beyond line pu-r
    and the rest beyond line pv-r, separated by a line through r.

    Angles are measured at pu from pv (alpha) and at pv from pu (beta). An
    apex with no point below it in both angles leaves the triangle pu-pv-r
    empty; among those apexes one always admits the requested count.
    """
    side = orient(pu, pv, S[0])
    by_alpha = sorted(S, key=cmp_to_key(lambda a, b: -1 if orient(pu, a, b) == side else 1))
    pareto, best = [], None
    for q in by_alpha:
        if best is None or orient(pv, q, best) == -side:
            pareto.append(q)
            best = q
    for r in pareto:
        a_only, behind, b_only = [], [], []
        for q in S:
            if q is r:
                continue
            beyond_u = orient(pu, r, q) == side
            beyond_v = orient(pv, r, q) == -side
            if beyond_u and beyond_v:
                behind.append(q)
            elif beyond_u:
                a_only.append(q)
            else:
                b_only.append(q)
        if not len(a_only) <= need <= len(a_only) + len(behind):
            continue
        d1 = Point(2 * r.x - pu.x, 2 * r.y - pu.y)
        d2 = Point(2 * r.x - pv.x, 2 * r.y - pv.y)
        turn = orient(r, d1, d2)
        behind.sort(key=cmp_to_key(lambda a, b: -1 if orient(r, a, b) == turn else 1))
        # behind[0] borders the B-only region, behind[-1] the A-only region
        x = len(behind) - (need - len(a_only))
        return r, a_only + behind[x:], b_only + behind[:x]
    raise AssertionError("no admissible apex; points are not in general position")
