"""Helpers shared by the pipelines: argument coercion, size checks and the
final re-validation every returned witness goes through."""

from __future__ import annotations

from typing import Sequence

from ..coloring import Certificate, Color, ColoredKP, Embedding, Extremal, _bits, fingerprint, validate
from ..errors import ContractViolation, InvalidInput, ValidationFailure
from ..geometry import Point, PositionClass, is_convex_position
from ..graphs import CaterpillarStructure, PatternGraph, Tag, caterpillar_structure
from .outerplanar import embed_outerplanar


def as_caterpillar(T) -> CaterpillarStructure:
    if isinstance(T, CaterpillarStructure):
        return T
    if isinstance(T, PatternGraph):
        return caterpillar_structure(T)
    raise InvalidInput("expected a caterpillar")


def require_ham_outerplanar(H: PatternGraph):
    if H.n <= 2:
        if not H.is_connected():
            raise InvalidInput("host graph on at most two vertices must be connected")
        return
    if Tag.HAMILTONIAN_OUTERPLANAR not in H.tags:
        raise InvalidInput("host graph must be Hamiltonian outerplanar")


def require_size(K: ColoredKP, need: int, what: str = "instance"):
    if K.n < need:
        raise ContractViolation(f"{what} needs at least {need} points, got {K.n}")


def require_convex(K: ColoredKP):
    if K.points.position_class is not PositionClass.CONVEX and not is_convex_position(K.points.points):
        raise ContractViolation("points must be in convex position")


def points_of(K: ColoredKP, ids: Sequence[int]) -> list[Point]:
    return [K.points[i] for i in ids]


def top_point(K: ColoredKP, ids: Sequence[int]) -> int:
    return max(ids, key=lambda i: K.points[i].y)


def certify(K: ColoredKP, e: Embedding, **extra) -> Certificate:
    report = validate(K, e)
    if not report.ok:
        raise ValidationFailure("; ".join(report.violations[:3]))
    return Certificate(e, fingerprint(K, **extra))


def checked(K: ColoredKP, e: Embedding) -> Embedding:
    report = validate(K, e)
    if not report.ok:
        raise ValidationFailure("; ".join(report.violations[:3]))
    return e


def embed_in_clique(K: ColoredKP, G: PatternGraph, ids: Sequence[int], color: Color, root: int | None = None) -> Embedding:
    """Any outerplanar ``G`` inside a monochromatic clique; with ``root`` the
    copy is extreme in y, rooted at that vertex."""
    pts = points_of(K, ids)
    if root is None:
        return embed_outerplanar(G, pts, color=color)
    return embed_outerplanar(G, pts, anchor=(root, top_point(K, ids)), color=color, extremal=Extremal("y", root))


def degenerate(K: ColoredKP, T: PatternGraph, H: PatternGraph) -> Embedding | None:
    """Witness for the small cases a pipeline's general argument skips.

    One-vertex patterns are a single point. Two-vertex patterns are any edge
    of their colour; if there is none the instance is monochromatic in the
    other colour and the other pattern goes anywhere.
    """
    n, m = T.n, H.n
    ids = list(range(K.n))
    if n == 1:
        return Embedding(T, (top_point(K, ids),), Color.RED, Extremal("y", 0))
    if m == 1:
        return Embedding(H, (0,), Color.BLUE)
    if n == 2:
        for i in ids:
            if K.red[i]:
                j = next(_bits(K.red[i]))
                return Embedding(T, (i, j), Color.RED)
        return embed_in_clique(K, H, ids[:m], Color.BLUE)
    if m == 2:
        full = (1 << K.n) - 1
        for i in ids:
            blue = full & ~K.red[i] & ~(1 << i)
            if blue:
                return Embedding(H, (i, next(_bits(blue))), Color.BLUE)
        return embed_in_clique(K, T, ids[:n], Color.RED)
    return None
