"""2-edge-coloured complete geometric graphs, witnesses and their checking.

A ``ColoredKP`` stores the red graph as one bitmask per point; blue is the
complement. ``find_mono_noncrossing`` is the brute-force oracle every
constructive pipeline is checked against: it shares nothing with them except
the geometric predicates.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, InvalidInput
from .geometry import OrderKey, PointSet, PositionClass, is_convex_position, order_points, segments_cross
from .graphs import PatternGraph


class Color(str, enum.Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED


@dataclass(frozen=True)
class ColoredKP:
    """Complete geometric graph on ``points`` with a red/blue edge colouring."""

    points: PointSet
    red: tuple[int, ...]
    seed: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if getattr(self, "_trusted", False):
            return
        n = len(self.points)
        if len(self.red) != n:
            raise InvalidInput("one red mask per point is required")
        full = (1 << n) - 1
        for i, mask in enumerate(self.red):
            if mask & ~full or (mask >> i) & 1:
                raise InvalidInput(f"red mask of point {i} is malformed")
            for j in _bits(mask):
                if not (self.red[j] >> i) & 1:
                    raise InvalidInput(f"red relation is not symmetric at {i},{j}")

    @classmethod
    def from_red_edges(cls, points: PointSet, red_edges: Iterable[Sequence[int]], seed=None) -> "ColoredKP":
        n = len(points)
        masks = [0] * n
        for i, j in red_edges:
            i, j = int(i), int(j)
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise InvalidInput(f"bad red edge ({i}, {j})")
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return cls(points, tuple(masks), seed)

    @classmethod
    def _make(cls, points: PointSet, red: tuple[int, ...], seed=None) -> "ColoredKP":
        # internal constructor for masks that are symmetric by construction
        obj = object.__new__(cls)
        object.__setattr__(obj, "points", points)
        object.__setattr__(obj, "red", red)
        object.__setattr__(obj, "seed", seed)
        object.__setattr__(obj, "_trusted", True)
        return obj

    @classmethod
    def monochromatic(cls, points: PointSet, color: Color) -> "ColoredKP":
        n = len(points)
        full = (1 << n) - 1
        if Color(color) is Color.RED:
            return cls(points, tuple(full & ~(1 << i) for i in range(n)))
        return cls(points, (0,) * n)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    def color(self, i: int, j: int) -> Color:
        return Color.RED if (self.red[i] >> j) & 1 else Color.BLUE

    def is_red(self, i: int, j: int) -> bool:
        return bool((self.red[i] >> j) & 1)

    def mask(self, i: int, color: Color) -> int:
        """Neighbours of ``i`` joined by edges of ``color``."""
        if color is Color.RED:
            return self.red[i]
        return ((1 << self.n) - 1) & ~self.red[i] & ~(1 << i)

    def degree(self, i: int, color: Color, within: int | None = None) -> int:
        m = self.mask(i, color)
        if within is not None:
            m &= within
        return m.bit_count()

    def swapped(self) -> "ColoredKP":
        full = (1 << self.n) - 1
        return ColoredKP._make(self.points, tuple(full & ~m & ~(1 << i) for i, m in enumerate(self.red)), self.seed)

    def red_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.red[i]) if i < j]

    def red_edge_count(self, within: int | None = None) -> int:
        total = 0
        for i in range(self.n):
            if within is None or (within >> i) & 1:
                total += self.degree(i, Color.RED, within)
        return total // 2

    @cached_property
    def coloring_hash(self) -> str:
        """Order-independent 64-bit fold over (min-id, max-id, colour) triples."""
        n = self.n
        if n < 2:
            return "0" * 16
        iu, ju = np.triu_indices(n, 1)
        mat = np.zeros((n, n), dtype=bool)
        for i, m in enumerate(self.red):
            if m:
                mat[i, list(_bits(m))] = True
        col = mat[iu, ju].astype(np.uint64)
        key = (iu.astype(np.uint64) << np.uint64(33)) | (ju.astype(np.uint64) << np.uint64(1)) | col
        total = int(np.sum(_splitmix64(key), dtype=np.uint64))
        return f"{total:016x}"

    def to_dict(self) -> dict:
        out = {"points": self.points.to_dict(), "red_edges": [list(e) for e in self.red_edges()]}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ColoredKP":
        try:
            return cls.from_red_edges(PointSet.from_dict(data["points"]), data.get("red_edges", []), data.get("seed"))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed coloring JSON: {exc}") from exc


def _splitmix64(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = x + np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def ids_mask(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def random_coloring(points: PointSet, bias: float = 0.5, seed: int = 0) -> ColoredKP:
    """Each edge independently red with probability ``bias``."""
    if not 0.0 <= bias <= 1.0:
        raise InvalidInput("bias must lie in [0, 1]")
    n = len(points)
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    red = rng.random(iu.size) < bias
    mat = np.zeros((n, n), dtype=bool)
    mat[iu[red], ju[red]] = True
    mat |= mat.T
    packed = np.packbits(mat, axis=1, bitorder="little")
    masks = tuple(int.from_bytes(row.tobytes(), "little") for row in packed)
    return ColoredKP._make(points, masks, seed)


def lower_bound_coloring(n: int, m: int, points: PointSet) -> ColoredKP:
    """Red = m-1 disjoint cliques K_{n-1} on consecutive convex points.

    Labels run clockwise as seen from the lexicographically smallest point.
    """
    if n < 2 or m < 2:
        raise ContractViolation("the construction needs n >= 2 and m >= 2")
    if len(points) != (n - 1) * (m - 1):
        raise ContractViolation(f"construction needs exactly {(n - 1) * (m - 1)} points, got {len(points)}")
    if points.position_class is not PositionClass.CONVEX and not is_convex_position(points.points):
        raise ContractViolation("construction needs points in convex position")
    first = min(points.points, key=lambda p: (p.x, p.y))
    labels = order_points(points, OrderKey.ANGULAR, pivot=first)
    red = []
    for j in range(m - 1):
        part = labels[j * (n - 1):(j + 1) * (n - 1)]
        red.extend((a, b) for k, a in enumerate(part) for b in part[k + 1:])
    return ColoredKP.from_red_edges(points, red)


# -- embeddings and certificates ---------------------------------------------------

@dataclass(frozen=True)
class Extremal:
    axis: str
    root: int

    def __post_init__(self):
        if self.axis not in ("x", "y"):
            raise InvalidInput("extremal axis must be 'x' or 'y'")


@dataclass(frozen=True)
class Embedding:
    """Injective map from pattern vertices to point ids, claimed monochromatic."""

    pattern: PatternGraph
    mapping: tuple[int, ...]
    color: Color
    extremal: Extremal | None = None

    def image_edges(self) -> list[tuple[int, int]]:
        return [(self.mapping[u], self.mapping[v]) for u, v in self.pattern.sorted_edges()]

    def recolored(self, color: Color) -> "Embedding":
        return Embedding(self.pattern, self.mapping, color, self.extremal)

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_dict(),
            "map": list(self.mapping),
            "color": self.color.value,
            "extremal": None if self.extremal is None else {"axis": self.extremal.axis, "root": self.extremal.root},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Embedding":
        try:
            ext = data.get("extremal")
            return cls(
                PatternGraph.from_dict(data["pattern"]),
                tuple(int(i) for i in data["map"]),
                Color(data["color"]),
                None if ext is None else Extremal(ext["axis"], int(ext["root"])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"malformed embedding JSON: {exc}") from exc


@dataclass(frozen=True)
class Certificate:
    """A red witness for the tree side or a blue witness for the host side."""

    embedding: Embedding
    fingerprint: dict = field(default_factory=dict, compare=False)

    @property
    def color(self) -> Color:
        return self.embedding.color

    @property
    def kind(self) -> str:
        return "RedWitness" if self.color is Color.RED else "BlueWitness"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, **self.embedding.to_dict()}
        out["fingerprint"] = self.fingerprint
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        return cls(Embedding.from_dict(data), dict(data.get("fingerprint", {})))


def fingerprint(K: ColoredKP, **extra) -> dict:
    out = {"seed": K.seed, "N": K.n, "coloring_hash": K.coloring_hash}
    out.update(extra)
    return out


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str]

    def __bool__(self) -> bool:
        return self.ok


def validate(K: ColoredKP, e: Embedding) -> ValidationReport:
    """Check injectivity, edge colours, non-crossing and the extremal root."""
    bad: list[str] = []
    g = e.pattern
    if len(e.mapping) != g.n:
        return ValidationReport(False, [f"map has {len(e.mapping)} entries for {g.n} vertices"])
    if any(not 0 <= p < K.n for p in e.mapping):
        return ValidationReport(False, ["map refers to a point outside the instance"])
    if len(set(e.mapping)) != g.n:
        bad.append("map is not injective")
    pts = K.points.points
    edges = e.image_edges()
    for (u, v), (a, b) in zip(g.sorted_edges(), edges):
        if a != b and K.color(a, b) is not e.color:
            bad.append(f"edge {u}-{v} -> ({a},{b}) is {K.color(a, b).value}, not {e.color.value}")
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1:]:
            if segments_cross(pts[a], pts[b], pts[c], pts[d]):
                bad.append(f"edges ({a},{b}) and ({c},{d}) cross")
    if e.extremal is not None:
        axis, root = e.extremal.axis, e.extremal.root
        rv = getattr(pts[e.mapping[root]], axis)
        if any(getattr(pts[p], axis) > rv for p in e.mapping):
            bad.append(f"root {root} is not extreme in {axis}")
    return ValidationReport(not bad, bad)


# -- brute-force oracle -------------------------------------------------------------

def _search_order(g: PatternGraph) -> list[int]:
    order: list[int] = []
    seen: set[int] = set()
    while len(order) < g.n:
        start = max((v for v in range(g.n) if v not in seen), key=lambda v: (len(g.adj[v]), -v))
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g.adj[u], key=lambda w: (-len(g.adj[w]), w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def find_mono_noncrossing(
    K: ColoredKP,
    G: PatternGraph,
    color: Color = Color.RED,
    extremal: Extremal | None = None,
    within: Iterable[int] | None = None,
) -> Embedding | None:
    """Exhaustive backtracking for a ``color`` non-crossing copy of ``G``.

    ``within`` restricts the candidate points. Returns ``None`` only when
    the search space is exhausted.
    """
    color = Color(color)
    allowed = ((1 << K.n) - 1) if within is None else ids_mask(within)
    if G.n > allowed.bit_count():
        return None
    pts = K.points.points
    order = _search_order(G)
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in G.adj[v] if pos[w] < pos[v]] for v in order]
    masks = [K.mask(i, color) for i in range(K.n)]
    axis = extremal.axis if extremal else None
    root = extremal.root if extremal else None
    image = [-1] * G.n
    placed_edges: list[tuple[int, int]] = []

    def coord(p: int) -> int:
        return pts[p].x if axis == "x" else pts[p].y

    def place(k: int, used: int) -> bool:
        if k == G.n:
            return True
        v = order[k]
        cand = allowed & ~used
        for w in back[k]:
            cand &= masks[image[w]]
        if axis is not None and image[root] >= 0 and v != root:
            bound = coord(image[root])
        else:
            bound = None
        for p in _bits(cand):
            if bound is not None and coord(p) > bound:
                continue
            if axis is not None and v == root:
                if any(image[u] >= 0 and coord(image[u]) > coord(p) for u in range(G.n)):
                    continue
            new = [(p, image[w]) for w in back[k]]
            if any(
                segments_cross(pts[a], pts[b], pts[c], pts[d])
                for a, b in new
                for c, d in placed_edges
            ):
                continue
            image[v] = p
            placed_edges.extend(new)
            if place(k + 1, used | (1 << p)):
                return True
            del placed_edges[len(placed_edges) - len(new):]
            image[v] = -1
        return False

    if not place(0, 0):
        return None
    return Embedding(G, tuple(image), color, extremal)
