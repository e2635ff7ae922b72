"""Pattern graphs and recognition of the structural classes the pipelines use.

Everything here is desk scale (at most a few dozen vertices): outerplanarity
goes through a planarity test of the apex-augmented graph, Hamilton cycles
through plain backtracking, and the pathwidth-2 split through an exhaustive
enumeration of induced paths.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .errors import ContractViolation, InvalidInput


class Tag(str, enum.Enum):
    TREE = "Tree"
    CATERPILLAR = "Caterpillar"
    STAR = "Star"
    PATH = "Path"
    OUTERPLANAR = "Outerplanar"
    HAMILTONIAN_OUTERPLANAR = "HamiltonianOuterplanar"
    OUTERPLANAR_TRIANGULATION = "OuterplanarTriangulation"
    PW2_TRIANGULATION = "PW2Triangulation"


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PatternGraph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInput("a pattern graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidInput(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"edge {e} out of range")
            norm.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "PatternGraph":
        edges = list(edges)
        if len({_edge(*map(int, e)) for e in edges}) != len(edges):
            raise InvalidInput("parallel edges are not allowed")
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max(len(a) for a in self.adj)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def is_connected(self) -> bool:
        return len(_component(self, 0)) == self.n

    def relabel(self, perm: Sequence[int]) -> "PatternGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return PatternGraph(self.n, frozenset(_edge(perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Sequence[int]) -> "PatternGraph":
        """Induced subgraph relabelled to ``0..len(vertices)-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        return PatternGraph(
            len(vertices),
            frozenset(_edge(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos),
        )

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_dict(cls, data: dict) -> "PatternGraph":
        try:
            return cls.from_edges(int(data["n"]), data.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed PatternGraph JSON: {exc}") from exc

    @cached_property
    def tags(self) -> frozenset:
        return recognize(self)

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()


def _component(g: PatternGraph, start: int, allowed: set | None = None) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w not in seen and (allowed is None or w in allowed):
                seen.add(w)
                stack.append(w)
    return seen


# -- named constructors -------------------------------------------------------

def path_graph(n: int) -> PatternGraph:
    return PatternGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> PatternGraph:
    if n < 3:
        raise InvalidInput("a cycle needs at least three vertices")
    return PatternGraph(n, frozenset(_edge(i, (i + 1) % n) for i in range(n)))


def star_graph(n: int) -> PatternGraph:
    """K_{1,n-1} with centre 0."""
    return PatternGraph(n, frozenset((0, i) for i in range(1, n)))


def fan_graph(n: int) -> PatternGraph:
    """Apex 0 joined to every vertex of the path 1..n-1."""
    if n < 3:
        raise InvalidInput("a fan needs at least three vertices")
    edges = {(0, i) for i in range(1, n)} | {(i, i + 1) for i in range(1, n - 1)}
    return PatternGraph(n, frozenset(edges))


def complete_graph(n: int) -> PatternGraph:
    return PatternGraph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def caterpillar_graph(leaf_counts: Sequence[int]) -> PatternGraph:
    """Spine ``0..k-1`` where spine vertex i carries ``leaf_counts[i]`` leaves."""
    k = len(leaf_counts)
    edges = [(i, i + 1) for i in range(k - 1)]
    nxt = k
    for i, c in enumerate(leaf_counts):
        for _ in range(c):
            edges.append((i, nxt))
            nxt += 1
    return PatternGraph(nxt, frozenset(edges))


def two_star(a: int, b: int) -> PatternGraph:
    """Adjacent centres of degrees a and b (n = a + b)."""
    if a < 2 or b < 2:
        raise InvalidInput("both centres of a two-star need degree at least 2")
    return caterpillar_graph([a - 1, b - 1])


_NAMED = {
    "path": path_graph,
    "cycle": cycle_graph,
    "star": star_graph,
    "fan": fan_graph,
    "complete": complete_graph,
}


def named_graph(name: str) -> PatternGraph:
    """Parse names like ``path3``, ``cycle4``, ``star5``, ``fan4``, ``twostar2_3``."""
    m = re.fullmatch(r"twostar(\d+)_(\d+)", name)
    if m:
        return two_star(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"caterpillar((?:\d+_)*\d+)", name)
    if m:
        return caterpillar_graph([int(c) for c in m.group(1).split("_")])
    m = re.fullmatch(r"([a-z]+)(\d+)", name)
    if not m or m.group(1) not in _NAMED:
        raise InvalidInput(f"unknown graph name {name!r}")
    return _NAMED[m.group(1)](int(m.group(2)))


# -- recognition --------------------------------------------------------------

def outerplanar_order(g: PatternGraph) -> list[int] | None:
    """A cyclic vertex order in which all edges are non-interleaving chords.

    This is a one-page book embedding; it exists iff ``g`` is outerplanar.
    The order is read off as the rotation at an apex joined to every vertex
    in a planar embedding of the augmented graph.
    """
    if g.n <= 3:
        return list(range(g.n))
    h = nx.Graph()
    h.add_nodes_from(range(g.n + 1))
    h.add_edges_from(g.edges)
    h.add_edges_from((g.n, v) for v in range(g.n))
    planar, emb = nx.check_planarity(h)
    if not planar:
        return None
    return list(emb.neighbors_cw_order(g.n))


def chords_interleave(order: Sequence[int], edges: Iterable[tuple[int, int]]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    spans = [tuple(sorted((pos[u], pos[v]))) for u, v in edges]
    for i, (a, b) in enumerate(spans):
        for c, d in spans[i + 1:]:
            if a < c < b < d or c < a < d < b:
                return True
    return False


def hamilton_cycle(g: PatternGraph) -> list[int] | None:
    """Backtracking search for a Hamilton cycle, returned as a vertex list."""
    n = g.n
    if n < 3 or any(len(a) < 2 for a in g.adj):
        return None
    path = [0]
    used = [False] * n
    used[0] = True

    def feasible() -> bool:
        # every unvisited vertex still needs two usable neighbours
        tail = path[-1]
        for v in range(n):
            if used[v]:
                continue
            free = sum(1 for w in g.adj[v] if not used[w] or w == tail or w == 0)
            if free < 2:
                return False
        return True

    def extend() -> bool:
        if len(path) == n:
            return 0 in g.adj[path[-1]]
        for w in sorted(g.adj[path[-1]], key=lambda w: len(g.adj[w])):
            if used[w]:
                continue
            used[w] = True
            path.append(w)
            if feasible() and extend():
                return True
            path.pop()
            used[w] = False
        return False

    return list(path) if extend() else None


def recognize(g: PatternGraph) -> frozenset:
    """Every class tag that applies to ``g``."""
    tags = set()
    if g.is_tree():
        tags.add(Tag.TREE)
        if g.max_degree <= 2:
            tags.add(Tag.PATH)
        if g.n <= 2 or any(len(a) == g.n - 1 for a in g.adj):
            tags.add(Tag.STAR)
        inner = [v for v in range(g.n) if len(g.adj[v]) > 1]
        if not inner or (g.induced(inner).is_tree() and g.induced(inner).max_degree <= 2):
            tags.add(Tag.CATERPILLAR)
    if outerplanar_order(g) is not None:
        tags.add(Tag.OUTERPLANAR)
        if hamilton_cycle(g) is not None:
            tags.add(Tag.HAMILTONIAN_OUTERPLANAR)
        if g.n >= 3 and len(g.edges) == 2 * g.n - 3:
            tags.add(Tag.OUTERPLANAR_TRIANGULATION)
            if pw2_decompose(g) is not None:
                tags.add(Tag.PW2_TRIANGULATION)
    return frozenset(tags)


def maximal_outerplanar_completion(g: PatternGraph) -> tuple[list[int], PatternGraph]:
    """Circle order plus a maximal outerplanar supergraph on the same vertices.

    The supergraph contains every polygon side of the circle order and a
    triangulation of each face cut out by the original chords, so the circle
    order is its Hamilton cycle.
    """
    order = outerplanar_order(g)
    if order is None:
        raise InvalidInput("graph is not outerplanar")
    n = g.n
    edges = set(g.edges)
    if n >= 2:
        edges |= {_edge(order[i], order[(i + 1) % n]) for i in range(n)} if n >= 3 else {(0, 1)}

    def triangulate(poly: list[int]):
        k = len(poly)
        if k <= 3:
            return
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue
                if _edge(poly[i], poly[j]) in edges:
                    triangulate(poly[i:j + 1])
                    triangulate(poly[j:] + poly[:i + 1])
                    return
        for j in range(2, k - 1):
            edges.add(_edge(poly[0], poly[j]))

    if n >= 4:
        triangulate(list(order))
    return order, PatternGraph(n, frozenset(edges))


# -- caterpillars -------------------------------------------------------------

@dataclass(frozen=True)
class CaterpillarStructure:
    """Spine, leaves and bipartition of a caterpillar.

    ``m1`` is the size of the colour class containing vertex 0. For the
    degenerate trees on one or two vertices the spine is vertex 0 alone.
    """

    graph: PatternGraph
    spine: tuple[int, ...]
    leaf_map: dict
    classes: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def bipartition_sizes(self) -> tuple[int, int]:
        return len(self.classes[0]), len(self.classes[1])

    @property
    def max_degree(self) -> int:
        return self.graph.max_degree if self.graph.n > 1 else 0

    @property
    def spine_length(self) -> int:
        return len(self.spine)

    @property
    def max_leaves(self) -> int:
        return max(len(v) for v in self.leaf_map.values())

    def leaf_counts(self) -> list[int]:
        return [len(self.leaf_map[s]) for s in self.spine]

    def two_layer_order(self) -> tuple[list[int], list[int]]:
        """Layers of a crossing-free two-layer drawing.

        Layer 0 holds ``spine[0]``. Edges join the layers and are monotone:
        no two edges (a, b), (a', b') have a before a' and b' before b.
        """
        layers: tuple[list[int], list[int]] = ([], [])
        layers[0].append(self.spine[0])
        for i, s in enumerate(self.spine):
            side = i % 2
            layers[1 - side].extend(self.leaf_map[s])
            if i + 1 < len(self.spine):
                layers[1 - side].append(self.spine[i + 1])
        return layers


def bipartition(g: PatternGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two colour classes of a connected bipartite graph, vertex 0's first."""
    color = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in color:
                color[w] = 1 - color[u]
                queue.append(w)
            elif color[w] == color[u]:
                raise InvalidInput("graph is not bipartite")
    if len(color) != g.n:
        raise InvalidInput("graph is not connected")
    return (
        tuple(v for v in range(g.n) if color[v] == 0),
        tuple(v for v in range(g.n) if color[v] == 1),
    )


def caterpillar_structure(g: PatternGraph) -> CaterpillarStructure:
    if Tag.CATERPILLAR not in g.tags:
        raise InvalidInput("graph is not a caterpillar")
    if g.n <= 2:
        spine: list[int] = [0]
    else:
        inner = {v for v in range(g.n) if len(g.adj[v]) > 1}
        ends = [v for v in inner if sum(1 for w in g.adj[v] if w in inner) <= 1]
        start = min(ends)
        spine, prev = [start], None
        while True:
            nxt = [w for w in g.adj[spine[-1]] if w in inner and w != prev]
            if not nxt:
                break
            prev = spine[-1]
            spine.append(nxt[0])
    on_spine = set(spine)
    leaf_map = {s: tuple(sorted(w for w in g.adj[s] if w not in on_spine)) for s in spine}
    return CaterpillarStructure(g, tuple(spine), leaf_map, bipartition(g))


def caterpillar_from_structure(cs: CaterpillarStructure) -> PatternGraph:
    edges = {_edge(a, b) for a, b in zip(cs.spine, cs.spine[1:])}
    for s, leaves in cs.leaf_map.items():
        edges |= {_edge(s, leaf) for leaf in leaves}
    return PatternGraph(cs.n, frozenset(edges))


# -- pathwidth-2 triangulations -----------------------------------------------

@dataclass(frozen=True)
class PW2Decomposition:
    """Vertex split of an outerplanar triangulation into two induced paths.

    Both paths are oriented so that the cross edges are monotone: there are
    no cross edges (u_i, w_j), (u_k, w_l) with i < k and j > l.
    """

    graph: PatternGraph
    path_u: tuple[int, ...]
    path_rest: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.path_u), len(self.path_rest)

    def to_dict(self) -> dict:
        return {"U": list(self.path_u), "rest": list(self.path_rest), "sizes": list(self.sizes)}


def _induced_path_order(g: PatternGraph, verts: set[int]) -> list[int] | None:
    if not verts:
        return None
    inner_edges = [(u, v) for u, v in g.edges if u in verts and v in verts]
    if len(inner_edges) != len(verts) - 1:
        return None
    deg = {v: 0 for v in verts}
    for u, v in inner_edges:
        deg[u] += 1
        deg[v] += 1
    if any(d > 2 for d in deg.values()):
        return None
    start = min(v for v in verts if deg[v] <= 1)
    order, prev = [start], None
    while len(order) < len(verts):
        nxt = [w for w in g.adj[order[-1]] if w in verts and w != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def _monotone_cross(g: PatternGraph, a: Sequence[int], b: Sequence[int]) -> bool:
    pa = {v: i for i, v in enumerate(a)}
    pb = {v: i for i, v in enumerate(b)}
    cross = sorted(
        (pa[u], pb[v]) if u in pa else (pa[v], pb[u])
        for u, v in g.edges
        if (u in pa) != (v in pa)
    )
    return all(j1 <= j2 for (_, j1), (_, j2) in zip(cross, cross[1:]))


def induced_paths(g: PatternGraph) -> list[frozenset]:
    """All vertex sets inducing a path, smallest first."""
    found: set[frozenset] = set()

    def grow(path: list[int], members: set[int]):
        found.add(frozenset(members))
        tail = path[-1]
        for w in g.adj[tail]:
            if w in members:
                continue
            if any(x in members and x != tail for x in g.adj[w]):
                continue
            path.append(w)
            members.add(w)
            grow(path, members)
            members.discard(w)
            path.pop()

    for s in range(g.n):
        grow([s], {s})
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def pw2_decompose(g: PatternGraph) -> PW2Decomposition | None:
    """Find U such that U and its complement each induce a path.

    Returns ``None`` when no split exists, i.e. the triangulation has
    pathwidth at least 3.
    """
    if g.n < 3 or len(g.edges) != 2 * g.n - 3 or outerplanar_order(g) is None:
        raise InvalidInput("pw2_decompose needs an outerplanar triangulation")
    everything = set(range(g.n))
    for u in induced_paths(g):
        rest = everything - u
        if not rest:
            continue
        rest_order = _induced_path_order(g, rest)
        if rest_order is None:
            continue
        u_order = _induced_path_order(g, set(u))
        if _monotone_cross(g, u_order, rest_order):
            return PW2Decomposition(g, tuple(u_order), tuple(rest_order))
        if _monotone_cross(g, u_order, rest_order[::-1]):
            return PW2Decomposition(g, tuple(u_order), tuple(rest_order[::-1]))
    return None


def augment_caterpillar_to_pw2(cs: CaterpillarStructure) -> PatternGraph:
    """Pathwidth-2 outerplanar triangulation containing the caterpillar.

    The two layers of the caterpillar's crossing-free two-layer drawing become
    the two induced paths; the ladder between them is completed to a zig-zag
    triangulation through every caterpillar edge.
    """
    if cs.n < 3:
        raise ContractViolation("augmentation needs at least three vertices")
    top, bottom = cs.two_layer_order()
    pt = {v: i for i, v in enumerate(top)}
    pb = {v: i for i, v in enumerate(bottom)}
    edges = set(cs.graph.edges)
    edges |= {_edge(a, b) for a, b in zip(top, top[1:])}
    edges |= {_edge(a, b) for a, b in zip(bottom, bottom[1:])}
    rungs = sorted(
        (pt[u], pb[v]) if u in pt else (pt[v], pb[u]) for u, v in cs.graph.edges
    )
    path = [(0, 0)]
    for i, j in rungs + [(len(top) - 1, len(bottom) - 1)]:
        ci, cj = path[-1]
        while (ci, cj) != (i, j):
            if ci < i:
                ci += 1
            else:
                cj += 1
            path.append((ci, cj))
    edges |= {_edge(top[i], bottom[j]) for i, j in path}
    return PatternGraph(cs.n, frozenset(edges))


# -- trees ----------------------------------------------------------------------

def tree_centers(g: PatternGraph) -> list[int]:
    if g.n <= 2:
        return list(range(g.n))
    deg = [len(a) for a in g.adj]
    layer = [v for v in range(g.n) if deg[v] == 1]
    remaining = g.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in g.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_code(g: PatternGraph, root: int, parent: int = -1) -> str:
    kids = sorted(_rooted_code(g, w, root) for w in g.adj[root] if w != parent)
    return "(" + "".join(kids) + ")"


def canonical_tree_code(g: PatternGraph) -> str:
    """AHU code of the tree rooted at its centre (minimum over two centres)."""
    return min(_rooted_code(g, c) for c in tree_centers(g))


def _tree_from_code(code: str) -> PatternGraph:
    edges, stack, nxt = [], [], 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], nxt))
            stack.append(nxt)
            nxt += 1
        else:
            stack.pop()
    return PatternGraph(nxt, frozenset(_edge(u, v) for u, v in edges))


def enumerate_trees(n: int) -> list[PatternGraph]:
    """All non-isomorphic trees on ``n`` vertices, by leaf extension."""
    if n < 1:
        raise ContractViolation("n must be positive")
    if n > 10:
        raise ContractViolation("tree enumeration is limited to n <= 10")
    codes = {"()"}
    for k in range(2, n + 1):
        nxt = set()
        for code in codes:
            t = _tree_from_code(code)
            for v in range(t.n):
                grown = PatternGraph(k, t.edges | {(v, k - 1)})
                nxt.add(canonical_tree_code(grown))
        codes = nxt
    return [_tree_from_code(c) for c in sorted(codes)]


@dataclass(frozen=True)
class RootedTree:
    tree: PatternGraph
    root: int = 0

    def __post_init__(self):
        if not self.tree.is_tree():
            raise InvalidInput("rooted tree needs a tree")

    @property
    def n(self) -> int:
        return self.tree.n

    @cached_property
    def parent(self) -> dict:
        par = {self.root: -1}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for w in self.tree.adj[u]:
                if w not in par:
                    par[w] = u
                    queue.append(w)
        return par

    def children(self, v: int | None = None) -> list[int]:
        v = self.root if v is None else v
        return sorted(w for w in self.tree.adj[v] if self.parent[v] != w)

    @cached_property
    def height(self) -> int:
        depth = {self.root: 0}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for w in self.tree.adj[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    queue.append(w)
        return max(depth.values())

    def subtree_vertices(self, v: int) -> list[int]:
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(w for w in self.tree.adj[u] if w != self.parent[u])
        return sorted(out, key=lambda u: (u != v, u))

    def child_subtrees(self) -> list[tuple["RootedTree", tuple[int, ...]]]:
        """Rooted subtrees hanging off the root, each with its vertex map.

        The map sends a subtree vertex to the corresponding vertex of this
        tree; subtree vertex 0 is the child itself.
        """
        out = []
        for c in self.children():
            verts = self.subtree_vertices(c)
            out.append((RootedTree(self.tree.induced(verts), 0), tuple(verts)))
        return out


def center_rooted(g: PatternGraph) -> RootedTree:
    """Root a tree at a centre, so its height is ceil(diameter / 2)."""
    return RootedTree(g, tree_centers(g)[0])


def diameter(g: PatternGraph) -> int:
    def far(s):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        v = max(dist, key=dist.get)
        return v, dist[v]

    a, _ = far(0)
    return far(a)[1]
