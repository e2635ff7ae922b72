"""Recursive pipelines for arbitrary trees.

All three build an *extreme* red copy of a rooted tree (T, v): v is mapped
to the highest point of the copy. The root goes to a point p near the top;
each child subtree gets its own region below, where extreme copies rooted
at several candidate points ("connectors") are harvested recursively. If
some p has a red edge to a connector in every region the copies are joined
through p. Otherwise a whole block of candidates p is blue to all
connectors of one region, and that blue block is where the other pattern is
found.

Joining through p can cross a neighbouring region's copy when regions are
vertical strips; the assembly searches over the admissible choices and
raises ``PipelineFailure`` if every one of them crosses. In convex position
regions are arcs of the hull and joins never cross.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..coloring import Certificate, Color, ColoredKP, Embedding, Extremal, ids_mask
from ..errors import ContractViolation, InvalidInput, PipelineFailure
from ..geometry import OrderKey, Point, convex_hull, is_convex_position, order_points, segments_cross, strip_partition
from ..graphs import PatternGraph, PW2Decomposition, RootedTree, center_rooted
from .avoiding import avoiding_pw2_step, embed_in_avoiding, extract_avoiding
from .common import as_caterpillar, certify, embed_in_clique, points_of, require_size, top_point
from .dichotomy import EitherStructure, StructureKind, min_degree_or_clique
from .outerplanar import embed_outerplanar

DEFAULT_C = 1  # smallest constant with zero failures in the calibration sweeps
ASSEMBLY_BUDGET = 20_000


class _BlueFound(Exception):
    def __init__(self, embedding: Embedding):
        super().__init__("blue witness")
        self.embedding = embedding


def _rooted(T) -> RootedTree:
    if isinstance(T, RootedTree):
        return T
    if isinstance(T, PatternGraph):
        return RootedTree(T, 0)
    raise InvalidInput("expected a tree")


def _segments(K: ColoredKP, tree: PatternGraph, mapping: Sequence[int]) -> list[tuple[Point, Point]]:
    pts = K.points.points
    return [(pts[mapping[u]], pts[mapping[v]]) for u, v in tree.sorted_edges()]


def _crosses(a: Point, b: Point, segs: Sequence[tuple[Point, Point]]) -> bool:
    return any(segments_cross(a, b, c, d) for c, d in segs)


def _join(K: ColoredKP, hub: int, slots: list[list[tuple[int, list]]], budget: int) -> list[int] | None:
    """One connector per slot, all joined to ``hub`` without crossings.

    Each option is (point id, segments of its copy). Slots are disjoint
    regions, so options never repeat across slots.
    """
    pts = K.points.points
    h = pts[hub]
    chosen: list[int] = []
    chosen_segs: list[list] = []
    nodes = 0
    order = sorted(range(len(slots)), key=lambda i: len(slots[i]))

    def rec(k: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return False
        if k == len(order):
            return True
        for q, segs in slots[order[k]]:
            e = pts[q]
            if any(_crosses(h, e, s) for s in chosen_segs):
                continue
            if any(_crosses(h, pts[c], segs) for c in chosen):
                continue
            chosen.append(q)
            chosen_segs.append(segs)
            if rec(k + 1):
                return True
            chosen.pop()
            chosen_segs.pop()
        return False

    if not rec(0):
        return None
    out = [0] * len(slots)
    for i, q in zip(order, chosen):
        out[i] = q
    return out


@dataclass
class _Scheme:
    """Region sizes and terminal step of one connector recursion."""

    s0: Callable[[int, int], int]           # (n, children) -> |S_0|
    strip: Callable[[int, int], int]        # (n_child, n) -> region size
    connectors: Callable[[int], int]        # n -> connectors per region
    block: Callable[[int], int]             # n -> blue block size needed in S_0
    terminal: Callable                      # (K, S0 block, region block, rt) -> red copy
    convex: bool = False
    stats: dict = field(default_factory=lambda: {"levels": 0})

    def region(self, st: RootedTree, n: int) -> int:
        # the formula, unless the child's own recursion needs more room
        return max(self.strip(st.n, n), self.need(st) + self.connectors(n) - 1)

    def need(self, rt: RootedTree) -> int:
        """Smallest point count the recursion can run on."""
        if rt.n == 1:
            return 1
        subs = rt.child_subtrees()
        return self.s0(rt.n, len(subs)) + sum(self.region(st, rt.n) for st, _ in subs)


def _regions(K: ColoredKP, ids: list[int], s0: int, sizes: list[int], convex: bool):
    pts = K.points.points
    by_y = sorted(ids, key=lambda i: -pts[i].y)
    top = by_y[:s0]
    if not convex:
        return top, strip_partition([pts[i] for i in by_y[s0:]], sizes)
    cyc = convex_hull(points_of(K, ids))
    top_set = set(top)
    start = next(k for k in range(len(cyc)) if cyc[k] not in top_set and cyc[k - 1] in top_set) if top_set else 0
    arc = [cyc[(start + k) % len(cyc)] for k in range(len(cyc)) if cyc[(start + k) % len(cyc)] not in top_set]
    out, pos = [], 0
    for s in sizes:
        out.append(arc[pos:pos + s])
        pos += s
    return top, out


def _solve(K: ColoredKP, ids: list[int], rt: RootedTree, sc: _Scheme) -> tuple[int, ...]:
    """Red extreme copy of ``rt`` inside ``ids`` (mapping by rt vertex), or raise _BlueFound."""
    if rt.n == 1:
        return (top_point(K, ids),)
    sc.stats["levels"] += 1
    n = rt.n
    subs = rt.child_subtrees()
    sizes = [sc.region(st, n) for st, _ in subs]
    s0 = sc.s0(n, len(subs))
    if s0 + sum(sizes) > len(ids):
        raise ContractViolation(f"recursion needs {s0 + sum(sizes)} points, has {len(ids)}")
    top, regions = _regions(K, ids, s0, sizes, sc.convex)
    conns: list[list[int]] = []
    copies: list[dict] = []
    for (st, _), region in zip(subs, regions):
        taken: list[int] = []
        cp: dict = {}
        for _ in range(sc.connectors(n)):
            used = set(taken)
            sub = _solve(K, [p for p in region if p not in used], st, sc)
            taken.append(sub[0])
            cp[sub[0]] = (sub, _segments(K, st.tree, sub))
        conns.append(taken)
        copies.append(cp)
    blue_in: list[list[int]] = [[] for _ in subs]
    for p in top:
        slots, dead = [], []
        for i, taken in enumerate(conns):
            red = [q for q in taken if K.is_red(p, q)]
            if not red:
                dead.append(i)
            slots.append([(q, copies[i][q][1]) for q in red])
        if dead:
            for i in dead:
                blue_in[i].append(p)
            continue
        pick = _join(K, p, slots, ASSEMBLY_BUDGET)
        if pick is None:
            continue
        mapping = [-1] * n
        mapping[rt.root] = p
        for (st, vmap), i, q in zip(subs, range(len(subs)), pick):
            sub = copies[i][q][0]
            for x in range(st.n):
                mapping[vmap[x]] = sub[x]
        return tuple(mapping)
    need = sc.block(n)
    for i, group in enumerate(blue_in):
        if len(group) >= need:
            return sc.terminal(K, group[:need], conns[i], rt)
    raise PipelineFailure("every candidate root either crosses or leaves no blue block")


def _red_copy_in_clique(K: ColoredKP, rt: RootedTree, clique: Sequence[int]) -> tuple[int, ...]:
    e = embed_outerplanar(rt.tree, points_of(K, clique), anchor=(rt.root, top_point(K, clique)))
    return e.mapping


def _finish(K: ColoredKP, rt: RootedTree, ids: list[int], sc: _Scheme, other: PatternGraph, **fp) -> Certificate:
    try:
        mapping = _solve(K, ids, rt, sc)
        e = Embedding(rt.tree, mapping, Color.RED, Extremal("y", rt.root))
    except _BlueFound as found:
        e = found.embedding
    return certify(K, e, **fp)


def _trivial(K: ColoredKP, rt: RootedTree, other: PatternGraph) -> Embedding | None:
    if rt.n == 1:
        return Embedding(rt.tree, (top_point(K, range(K.n)),), Color.RED, Extremal("y", rt.root))
    if other.n == 1:
        return Embedding(other, (0,), Color.BLUE)
    return None


# -- trees versus caterpillars ------------------------------------------------------

def caterpillar_scheme(cs, m: int, c: int) -> _Scheme:
    m1, m2 = cs.bipartition_sizes

    def terminal(K, block0, block_i, rt):
        pair = extract_avoiding(points_of(K, block0), points_of(K, block_i), sizes=(m1, m2))
        if pair is None:
            raise PipelineFailure(f"no avoiding pair of sizes {(m1, m2)} in the blue block (constant too small)")
        raise _BlueFound(embed_in_avoiding(K, cs, pair, Color.BLUE))

    return _Scheme(
        s0=lambda n, l: c * m1 * m1 * l,
        strip=lambda ni, n: c * (ni - 1) * m * m + c * m2 * m2,
        connectors=lambda n: c * m2 * m2,
        block=lambda n: c * m1 * m1,
        terminal=terminal,
    )


def tree_vs_caterpillar(K: ColoredKP, T, C, c: int = DEFAULT_C) -> Certificate:
    """Red extreme copy of the rooted tree T or blue caterpillar C on c(n-1)m^2+1 points."""
    rt = _rooted(T)
    cs = as_caterpillar(C)
    n, m = rt.n, cs.n
    if c < 1:
        raise ContractViolation("the size constant must be positive")
    require_size(K, c * (n - 1) * m * m + 1)
    fp = {"pipeline": "tree_vs_caterpillar", "c": c}
    e = _trivial(K, rt, cs.graph)
    if e is not None:
        return certify(K, e, **fp)
    sc = caterpillar_scheme(cs, m, c)
    return _finish(K, rt, list(range(K.n)), sc, cs.graph, **fp)


# -- trees versus pathwidth-2 triangulations ----------------------------------------

def _pw2_terminal(D: PW2Decomposition, general: bool):
    m1, m2 = D.sizes

    def terminal(K, block0, block_i, rt):
        n = rt.n
        if general:
            pair = extract_avoiding(
                points_of(K, block0), points_of(K, block_i),
                sizes=((m1 - 1) * (n - 1) + 1, (m2 - 1) * (n - 1) + 1),
            )
            if pair is None:
                raise PipelineFailure("no avoiding pair large enough in the blue block (constant too small)")
            block0, block_i = list(pair.A), list(pair.B)
        out = avoiding_pw2_step(K, block0, block_i, D, n)
        if isinstance(out, Embedding):
            raise _BlueFound(out)
        return _red_copy_in_clique(K, rt, out.ids)

    return terminal


def pw2_scheme(D: PW2Decomposition, mode: str, c: int = DEFAULT_C) -> _Scheme:
    m1, m2 = D.sizes
    m = m1 + m2
    if mode == "convex":
        return _Scheme(
            s0=lambda n, l: (m1 - 1) * (n - 1) * l + 1,
            strip=lambda ni, n: (ni - 1) ** 2 * (m - 1) + (n - 1) * (m2 - 1) + 1,
            connectors=lambda n: (m2 - 1) * (n - 1) + 1,
            block=lambda n: (m1 - 1) * (n - 1) + 1,
            terminal=_pw2_terminal(D, False),
            convex=True,
        )
    if mode == "general":
        return _Scheme(
            s0=lambda n, l: c * m1 * m1 * n * n * l,
            strip=lambda ni, n: c * m * m * (ni - 1) ** 3 + c * m2 * m2 * n * n,
            connectors=lambda n: c * m2 * m2 * n * n,
            block=lambda n: c * m1 * m1 * n * n,
            terminal=_pw2_terminal(D, True),
        )
    raise InvalidInput("mode must be 'convex' or 'general'")


def pw2_required_points(T, D: PW2Decomposition, mode: str, c: int = DEFAULT_C) -> int:
    rt = _rooted(T)
    m = D.graph.n
    if mode == "convex":
        return (rt.n - 1) ** 2 * (m - 1) + 1
    return max(c * m * m * (rt.n - 1) ** 3 + 1, pw2_scheme(D, mode, c).need(rt))


def tree_vs_pw2(K: ColoredKP, T, H: PW2Decomposition, mode: str = "convex", c: int = DEFAULT_C) -> Certificate:
    """Red extreme copy of (T, v) or blue copy of the triangulation behind ``H``."""
    rt = _rooted(T)
    if not isinstance(H, PW2Decomposition):
        raise InvalidInput("expected a pathwidth-2 decomposition")
    sc = pw2_scheme(H, mode, c)
    if mode == "convex" and not is_convex_position(K.points.points):
        raise ContractViolation("convex mode needs points in convex position")
    require_size(K, pw2_required_points(rt, H, mode, c))
    fp = {"pipeline": "tree_vs_pw2", "mode": mode}
    if mode == "general":
        fp["c"] = c
    e = _trivial(K, rt, H.graph)
    if e is not None:
        return certify(K, e, **fp)
    return _finish(K, rt, list(range(K.n)), sc, H.graph, **fp)


# -- trees of bounded diameter, one colour against itself --------------------------

class _BlueClique(Exception):
    def __init__(self, ids):
        super().__init__("blue clique")
        self.ids = ids


def merged_children(rt: RootedTree) -> tuple[RootedTree, list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Identify the roots of all child subtrees into one rooted tree.

    Returns the merged tree (root 0) and, per child subtree, its map into
    ``rt`` and its map into the merged tree.
    """
    edges, nxt, parts = [], 1, []
    for st, vmap in rt.child_subtrees():
        hom = [0] * st.n
        for x in range(1, st.n):
            hom[x] = nxt
            nxt += 1
        edges.extend((hom[u], hom[v]) for u, v in st.tree.edges)
        parts.append((vmap, tuple(hom)))
    return RootedTree(PatternGraph.from_edges(nxt, edges), 0), parts


def _star_join(K: ColoredKP, roots: list[int], copies: dict, k: int, budget: int) -> tuple[int, list[int]] | None:
    pts = K.points.points
    for c in sorted(roots, key=lambda i: -pts[i].y):
        low = [q for q in roots if q != c and pts[q].y < pts[c].y and K.is_red(c, q)]
        if len(low) < k:
            continue
        chosen: list[int] = []
        nodes = 0

        def rec(start: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                return False
            if len(chosen) == k:
                return True
            for t in range(start, len(low)):
                q = low[t]
                if any(_crosses(pts[c], pts[q], copies[x][1]) for x in chosen):
                    continue
                if any(_crosses(pts[c], pts[x], copies[q][1]) for x in chosen):
                    continue
                chosen.append(q)
                if rec(t + 1):
                    return True
                chosen.pop()
            return False

        if rec(0):
            return c, list(chosen)
    return None


def _solve_diameter(K: ColoredKP, ids: list[int], rt: RootedTree, h: int, n: int) -> tuple[int, ...]:
    if rt.n == 1:
        return (top_point(K, ids),)
    merged, parts = merged_children(rt)
    strips = strip_partition(points_of(K, ids), [n ** (2 * (h - 1))] * (n * n))
    copies = {}
    for strip in strips:
        sub = _solve_diameter(K, strip, merged, h - 1, n)
        copies[sub[0]] = (sub, _segments(K, merged.tree, sub))
    roots = list(copies)
    found = _star_join(K, roots, copies, len(parts), ASSEMBLY_BUDGET)
    if found is None:
        s = min_degree_or_clique(K, n, n, roots)
        if s.kind is StructureKind.CLIQUE:
            raise _BlueClique(s.ids)
        raise PipelineFailure("red stars among the harvested roots all cross")
    centre, leaves = found
    mapping = [-1] * rt.n
    mapping[rt.root] = centre
    for (vmap, hom), q in zip(parts, leaves):
        sub = copies[q][0]
        for x in range(len(vmap)):
            mapping[vmap[x]] = sub[hom[x]]
    return tuple(mapping)


def selframsey_tree_diameter(K: ColoredKP, T) -> Embedding:
    """Monochromatic copy of T on n^(2h) points, h = radius of T.

    A tree given as a plain graph is rooted at a centre.
    """
    rt = center_rooted(T) if isinstance(T, PatternGraph) else _rooted(T)
    n, h = rt.n, rt.height
    require_size(K, n ** (2 * h))
    ids = list(range(K.n))
    try:
        mapping = _solve_diameter(K, ids, rt, h, n)
        e = Embedding(rt.tree, mapping, Color.RED, Extremal("y", rt.root))
    except _BlueClique as blue:
        e = embed_in_clique(K, rt.tree, blue.ids, Color.BLUE)
    return certify(K, e, pipeline="selframsey_tree_diameter").embedding
