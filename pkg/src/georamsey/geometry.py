"""Exact planar geometry on integer points.

All predicates are evaluated with Python integers, so there is no rounding
anywhere. Coordinates are bounded by ``COORD_LIMIT`` which keeps every
intermediate of the 3x3 orientation determinant inside a signed 64-bit word,
so the same predicates could be ported to fixed-width arithmetic unchanged.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, InvalidInput

COORD_LIMIT = 1 << 25


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class PositionClass(str, enum.Enum):
    CONVEX = "convex"
    GENERAL = "general"


class OrderKey(str, enum.Enum):
    BY_X = "x"
    BY_Y = "y"
    ANGULAR = "angular"


@dataclass(frozen=True, slots=True)
class Point:
    x: int
    y: int
    id: int = -1

    def __iter__(self):
        yield self.x
        yield self.y


def cross(p: Point, q: Point, r: Point) -> int:
    """Signed doubled area of the triangle pqr, i.e. (q - p) x (r - p)."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of ``cross(p, q, r)`` as a plain int in {-1, 0, 1}."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    return Orientation(orient(p, q, r))


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the open segments ab and cd meet.

    Segments that share an endpoint never cross; under general position that
    is the only way two edges of a geometric graph can touch.
    """
    if (a.x, a.y) in ((c.x, c.y), (d.x, d.y)) or (b.x, b.y) in ((c.x, c.y), (d.x, d.y)):
        return False
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    if o1 * o2 >= 0:
        return False
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o3 * o4 < 0


def convex_hull(points: "PointSet | Iterable[Point]") -> list[int]:
    """Ids of the hull vertices in counterclockwise order (monotone chain).

    The walk starts at the lexicographically smallest point.
    """
    pts = sorted(points.points if isinstance(points, PointSet) else points, key=lambda p: (p.x, p.y))
    if len(pts) <= 2:
        return [p.id for p in pts]
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [p.id for p in lower[:-1] + upper[:-1]]


def is_convex_position(points: Sequence[Point]) -> bool:
    return len(convex_hull(points)) == len(points)


def has_collinear_triple(points: Sequence[Point]) -> bool:
    """Exact collinearity scan in O(N^2 log N).

    For every point the reduced directions to all other points are hashed;
    two equal directions (up to sign) mean three collinear points.
    """
    n = len(points)
    if n < 3:
        return False
    xs = np.fromiter((p.x for p in points), dtype=np.int64, count=n)
    ys = np.fromiter((p.y for p in points), dtype=np.int64, count=n)
    offset = np.int64(2 * COORD_LIMIT + 1)
    for i in range(n - 2):
        dx = xs[i + 1:] - xs[i]
        dy = ys[i + 1:] - ys[i]
        g = np.gcd(dx, dy)
        dx //= g
        dy //= g
        flip = (dx < 0) | ((dx == 0) & (dy < 0))
        dx = np.where(flip, -dx, dx)
        dy = np.where(flip, -dy, dy)
        keys = dx * (2 * offset) + (dy + offset)
        if np.unique(keys).size != keys.size:
            return True
    return False


@dataclass(frozen=True)
class PointSet:
    """An ordered point set in general position with distinct x and distinct y.

    Ids are array indices. Construction validates every invariant; the
    ``position_class`` flag is checked, not trusted.
    """

    points: tuple[Point, ...]
    position_class: PositionClass = PositionClass.GENERAL

    def __post_init__(self):
        pts = tuple(
            p if p.id == i else Point(p.x, p.y, i) for i, p in enumerate(self.points)
        )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "position_class", PositionClass(self.position_class))
        for p in pts:
            if not (isinstance(p.x, int) and isinstance(p.y, int)):
                raise InvalidInput(f"non-integer coordinate at point {p.id}")
            if abs(p.x) >= COORD_LIMIT or abs(p.y) >= COORD_LIMIT:
                raise InvalidInput(f"coordinate of point {p.id} exceeds 2^25")
        if len({p.x for p in pts}) != len(pts):
            raise InvalidInput("x-coordinates are not pairwise distinct")
        if len({p.y for p in pts}) != len(pts):
            raise InvalidInput("y-coordinates are not pairwise distinct")
        if has_collinear_triple(pts):
            raise InvalidInput("point set is not in general position")
        if self.position_class is PositionClass.CONVEX and not is_convex_position(pts):
            raise InvalidInput("point set declared convex is not in convex position")

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[int]], position_class="general") -> "PointSet":
        return cls(tuple(Point(int(x), int(y), i) for i, (x, y) in enumerate(coords)), position_class)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def coords(self) -> list[list[int]]:
        return [[p.x, p.y] for p in self.points]

    def to_dict(self) -> dict:
        return {"position_class": self.position_class.value, "points": self.coords()}

    @classmethod
    def from_dict(cls, data: dict) -> "PointSet":
        try:
            return cls.from_coords(data["points"], data.get("position_class", "general"))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"malformed PointSet JSON: {exc}") from exc


def _convex_coords(n: int, rng: random.Random) -> list[tuple[int, int]]:
    # points (x, x^2) with pairwise distinct |x|: strictly convex, distinct y
    half = 2895  # 2895^2 < 2^25
    if n > half + 1:
        raise ContractViolation(f"convex generation supports at most {half + 1} points, got {n}")
    mags = rng.sample(range(half + 1), n)
    xs = [m if rng.random() < 0.5 else -m for m in mags]
    return [(x, x * x) for x in xs]


def generate_points(
    n: int, position_class="general", seed: int = 0, span: int = 1 << 20
) -> PointSet:
    """Deterministic random point set of size ``n``.

    General sets sample distinct x and distinct y in ``[0, span)`` and
    resample until no three points are collinear. Convex sets are taken from
    the parabola y = x^2 with pairwise distinct |x|.
    """
    if n < 1:
        raise ContractViolation("need at least one point")
    position_class = PositionClass(position_class)
    rng = random.Random(seed)
    if position_class is PositionClass.CONVEX:
        coords = _convex_coords(n, rng)
        rng.shuffle(coords)
        return PointSet.from_coords(coords, position_class)
    span = min(max(span, 4 * n), COORD_LIMIT)
    for _ in range(1000):
        xs = rng.sample(range(span), n)
        ys = rng.sample(range(span), n)
        pts = tuple(Point(x, y, i) for i, (x, y) in enumerate(zip(xs, ys)))
        if not has_collinear_triple(pts):
            return PointSet(pts, position_class)
    raise ContractViolation("could not sample a general-position set; increase span")


def order_points(
    points: "PointSet | Sequence[Point]", key=OrderKey.BY_X, pivot: Point | None = None
) -> list[int]:
    """Total order of the ids of ``points``.

    ``BY_X`` / ``BY_Y`` sort by one coordinate. ``ANGULAR`` is the clockwise
    sweep seen from ``pivot``; the pivot must see every other point inside an
    open half-plane (it is a hull vertex, or lies outside the hull), otherwise
    the order is ambiguous and rejected. If the pivot belongs to the set it is
    listed first.
    """
    pts = list(points.points if isinstance(points, PointSet) else points)
    key = OrderKey(key)
    if key is OrderKey.BY_X:
        return [p.id for p in sorted(pts, key=lambda p: p.x)]
    if key is OrderKey.BY_Y:
        return [p.id for p in sorted(pts, key=lambda p: p.y)]
    if pivot is None:
        raise InvalidInput("angular order needs a pivot")
    others = [p for p in pts if (p.x, p.y) != (pivot.x, pivot.y)]
    head = [p.id for p in pts if (p.x, p.y) == (pivot.x, pivot.y)]
    if not others:
        return head
    probe = others + [Point(pivot.x, pivot.y, -2)]
    if -2 not in convex_hull(probe):
        raise ContractViolation("angular pivot is interior; clockwise order is ambiguous")
    for i in range(len(others)):
        for j in range(i + 1, len(others)):
            if orient(pivot, others[i], others[j]) == 0:
                raise ContractViolation("two points are collinear with the angular pivot")

    def cmp(a: Point, b: Point) -> int:
        # a before b when b is clockwise of a
        return orient(pivot, a, b)

    return head + [p.id for p in sorted(others, key=cmp_to_key(cmp))]


def strip_partition(points: "PointSet | Sequence[Point]", sizes: Sequence[int]) -> list[list[int]]:
    """Split into x-separated parts S_1 < S_2 < ... of the requested sizes.

    Points left over after the last part (the rightmost ones) are dropped.
    """
    pts = list(points.points if isinstance(points, PointSet) else points)
    if any(s < 0 for s in sizes):
        raise ContractViolation("negative strip size")
    if sum(sizes) > len(pts):
        raise ContractViolation(f"strips need {sum(sizes)} points, only {len(pts)} available")
    ids = order_points(pts, OrderKey.BY_X)
    parts, start = [], 0
    for s in sizes:
        parts.append(ids[start:start + s])
        start += s
    return parts


def side_of_line(a: Point, b: Point, pts: Iterable[Point]) -> set[int]:
    """Set of orientation signs of ``pts`` relative to the directed line ab."""
    return {orient(a, b, p) for p in pts}
