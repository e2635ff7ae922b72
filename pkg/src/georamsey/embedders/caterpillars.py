"""Caterpillar-versus-host pipelines and the caterpillar self-Ramsey bound."""

from __future__ import annotations

from typing import Sequence

from ..coloring import Certificate, Color, ColoredKP, Embedding, _bits, find_mono_noncrossing, ids_mask
from ..errors import ContractViolation, InvalidInput, ValidationFailure
from ..geometry import OrderKey, convex_hull, is_convex_position, order_points, orient, strip_partition
from ..graphs import CaterpillarStructure, PatternGraph
from .common import (
    as_caterpillar,
    certify,
    checked,
    degenerate,
    embed_in_clique,
    points_of,
    require_convex,
    require_ham_outerplanar,
    require_size,
)
from .dichotomy import StructureKind, min_degree_or_clique, monotone_path_or_clique


def dense_convex_caterpillar(K: ColoredKP, T, ids: Sequence[int] | None = None) -> Embedding:
    """Red copy of the caterpillar ``T`` in a dense red graph on convex points.

    Any convex geometric graph on N vertices with more than (n-2)N/2 edges
    contains every n-vertex caterpillar without crossings. The bound is
    enforced; the copy itself is found by exhaustive search.
    """
    cs = as_caterpillar(T)
    ids = list(range(K.n)) if ids is None else sorted(set(ids))
    if not is_convex_position(points_of(K, ids)):
        raise ContractViolation("points must be in convex position")
    N, n = len(ids), cs.n
    edges = K.red_edge_count(ids_mask(ids))
    if N < n or edges <= (n - 2) * N // 2:
        raise ContractViolation(f"{edges} red edges on {N} points do not exceed {(n - 2) * N // 2}")
    e = find_mono_noncrossing(K, cs.graph, Color.RED, within=ids)
    if e is None:
        raise ValidationFailure("dense convex graph without the caterpillar")
    return e


def convex_caterpillar_vs_ham(K: ColoredKP, T, H: PatternGraph) -> Certificate:
    """Red caterpillar T or blue Hamiltonian outerplanar H on (n-1)(m-1)+1 convex points."""
    cs = as_caterpillar(T)
    require_ham_outerplanar(H)
    require_convex(K)
    n, m = cs.n, H.n
    require_size(K, (n - 1) * (m - 1) + 1)
    e = degenerate(K, cs.graph, H)
    if e is None:
        s = min_degree_or_clique(K, n, m)
        if s.kind is StructureKind.MIN_DEGREE:
            e = dense_convex_caterpillar(K, cs, s.ids)
        else:
            e = embed_in_clique(K, H, s.ids, Color.BLUE)
    return certify(K, e, pipeline="convex_caterpillar_vs_ham")


def _two_star_centres(cs: CaterpillarStructure) -> tuple[int, int]:
    inner = [v for v in range(cs.n) if cs.graph.degree(v) > 1]
    if cs.n < 4 or len(inner) != 2:
        raise InvalidInput("expected a tree with exactly two non-leaf vertices")
    return inner[0], inner[1]


def general_twostar_vs_ham(K: ColoredKP, T, H: PatternGraph) -> Certificate:
    """Red double star or blue H on (n-1)(m-1)+1 points in general position."""
    cs = as_caterpillar(T)
    x, y = _two_star_centres(cs)
    require_ham_outerplanar(H)
    n, m = cs.n, H.n
    require_size(K, (n - 1) * (m - 1) + 1)
    e = degenerate(K, cs.graph, H)
    if e is None:
        s = min_degree_or_clique(K, n, m)
        if s.kind is StructureKind.CLIQUE:
            e = embed_in_clique(K, H, s.ids, Color.BLUE)
        else:
            e = _place_two_star(K, cs, x, y, s.ids)
    return certify(K, e, pipeline="general_twostar_vs_ham")


def _place_two_star(K: ColoredKP, cs: CaterpillarStructure, x: int, y: int, S: Sequence[int]) -> Embedding:
    # every point of S has >= n-1 red neighbours inside S
    g = cs.graph
    a, b = g.degree(x), g.degree(y)
    pts = K.points.points
    inside = ids_mask(S)
    u = convex_hull(points_of(K, S))[0]
    nbrs = list(_bits(K.red[u] & inside))
    around = order_points([pts[i] for i in nbrs] + [pts[u]], OrderKey.ANGULAR, pivot=pts[u])[1:]
    v = around[a - 1]
    side_a, side_b = around[:a - 1], around[a:]
    sa = orient(pts[u], pts[v], pts[side_a[0]]) if side_a else -orient(pts[u], pts[v], pts[side_b[0]])
    v_nbrs = [w for w in _bits(K.red[v] & inside) if w != u]
    v_a = [w for w in v_nbrs if orient(pts[u], pts[v], pts[w]) == sa]
    v_b = [w for w in v_nbrs if orient(pts[u], pts[v], pts[w]) != sa]
    mapping = [-1] * cs.n
    if len(v_a) >= a - 1:
        # u carries the degree-b centre with leaves on side B
        centre_u, leaves_u, centre_v, leaves_v = y, side_b, x, v_a
    else:
        centre_u, leaves_u, centre_v, leaves_v = x, side_a, y, v_b
    mapping[centre_u], mapping[centre_v] = u, v
    for leaf, p in zip([w for w in g.adj[centre_u] if w != centre_v], leaves_u):
        mapping[leaf] = p
    for leaf, p in zip([w for w in g.adj[centre_v] if w != centre_u], leaves_v):
        mapping[leaf] = p
    if -1 in mapping:
        raise ValidationFailure("double star placement ran out of leaves")
    return Embedding(g, tuple(mapping), Color.RED)


def _assemble(cs: CaterpillarStructure, spine_pts: Sequence[int], leaf_pts: dict, color: Color) -> Embedding:
    mapping = [-1] * cs.n
    for s, p in zip(cs.spine, spine_pts):
        mapping[s] = p
        for leaf, q in zip(cs.leaf_map[s], leaf_pts[p]):
            mapping[leaf] = q
    return Embedding(cs.graph, tuple(mapping), color)


def general_caterpillar_vs_ham(K: ColoredKP, T, H: PatternGraph) -> Certificate:
    """Red caterpillar or blue H on Delta*gamma*m^2 points in general position.

    Each of gamma*m vertical strips of Delta*m points holds a red star large
    enough for any spine vertex, or else a blue K_m; a red monotone path
    through the star centres then gives the spine.
    """
    cs = as_caterpillar(T)
    require_ham_outerplanar(H)
    n, m = cs.n, H.n
    delta, gamma = cs.max_degree, cs.spine_length
    require_size(K, delta * gamma * m * m)
    e = degenerate(K, cs.graph, H)
    if e is None:
        e = _strip_caterpillar(K, cs, H, delta, gamma, m)
    return certify(K, e, pipeline="general_caterpillar_vs_ham")


def _strip_caterpillar(K, cs, H, delta, gamma, m) -> Embedding:
    need = cs.max_leaves
    strips = strip_partition(K.points, [delta * m] * (gamma * m))
    centres, leaves = [], {}
    for strip in strips:
        inside = ids_mask(strip)
        c = max(strip, key=lambda i: (K.degree(i, Color.RED, inside), -i))
        if K.degree(c, Color.RED, inside) < need:
            s = min_degree_or_clique(K, need + 1, m, strip)
            if s.kind is not StructureKind.CLIQUE:
                raise ValidationFailure("strip without a large red star has a dense subgraph")
            return embed_in_clique(K, H, s.ids, Color.BLUE)
        centres.append(c)
        leaves[c] = list(_bits(K.red[c] & inside))
    s = monotone_path_or_clique(centres, K, gamma, m)
    if s.kind is StructureKind.CLIQUE:
        return embed_in_clique(K, H, s.ids, Color.BLUE)
    return _assemble(cs, s.ids, leaves, Color.RED)


def selframsey_caterpillar(K: ColoredKP, T) -> Embedding:
    """Monochromatic copy of the caterpillar ``T`` on 4*Delta*gamma*n points."""
    cs = as_caterpillar(T)
    n = cs.n
    if n <= 2:
        require_size(K, n)
        if n == 1:
            return Embedding(cs.graph, (0,), Color.RED)
        return checked(K, Embedding(cs.graph, (0, 1), K.color(0, 1)))
    delta, gamma = cs.max_degree, cs.spine_length
    require_size(K, 4 * delta * gamma * n)
    strips = strip_partition(K.points, [2 * delta] * (2 * gamma * n))
    centre_of = {Color.RED: [], Color.BLUE: []}
    for strip in strips:
        inside = ids_mask(strip)
        reds = [i for i in strip if K.degree(i, Color.RED, inside) >= delta]
        if reds:
            centre_of[Color.RED].append((reds[0], inside))
        else:
            # every point has >= delta blue edges inside the strip
            centre_of[Color.BLUE].append((strip[0], inside))
    c = Color.RED if len(centre_of[Color.RED]) >= gamma * n else Color.BLUE
    chosen = centre_of[c][:gamma * n]
    centres = [p for p, _ in chosen]
    leaves = {p: list(_bits(K.mask(p, c) & inside)) for p, inside in chosen}
    s = monotone_path_or_clique(centres, K, gamma, n, color=c)
    if s.kind is StructureKind.CLIQUE:
        e = embed_in_clique(K, cs.graph, s.ids, c.other)
    else:
        e = _assemble(cs, s.ids, leaves, c)
    return checked(K, e)
