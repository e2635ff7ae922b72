"""Mutually avoiding point sets and the embeddings they support.

A and B are mutually avoiding when no line through two points of A meets
conv(B) and no line through two points of B meets conv(A). Then every point
of B sees A in one common angular order and vice versa, so a bipartite
graph whose edges are monotone in those two orders has no crossings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

from ..coloring import Color, ColoredKP, Embedding
from ..errors import ContractViolation, InvalidInput, ValidationFailure
from ..geometry import Point, orient
from ..graphs import PW2Decomposition
from .common import as_caterpillar, checked
from .dichotomy import EitherStructure, StructureKind, monotone_path_or_clique


@dataclass(frozen=True)
class AvoidingPair:
    A: tuple[int, ...]
    B: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.A), len(self.B)

    def to_dict(self) -> dict:
        return {"A": list(self.A), "B": list(self.B)}


def _line_misses(p: Point, q: Point, others: Sequence[Point]) -> bool:
    # a line meets conv(S) iff S has points on both sides (general position)
    signs = {orient(p, q, r) for r in others}
    return len(signs) <= 1


def is_mutually_avoiding(A: Sequence[Point], B: Sequence[Point]) -> bool:
    """Full quadratic scan of the definition."""
    for X, Y in ((A, B), (B, A)):
        for i in range(len(X)):
            for j in range(i + 1, len(X)):
                if not _line_misses(X[i], X[j], Y):
                    return False
    return True


def separating_axis(A: Sequence[Point], B: Sequence[Point]) -> str:
    """'x' if a vertical line separates A from B, 'y' for a horizontal one."""
    for axis in ("x", "y"):
        a = [getattr(p, axis) for p in A]
        b = [getattr(p, axis) for p in B]
        if max(a) < min(b) or max(b) < min(a):
            return axis
    raise ContractViolation("sets are not separated by an axis-parallel line")


def _side_masks(X: Sequence[Point], Y: Sequence[Point]) -> dict:
    # for each pair i<j of X, bitmask over Y of the points left of line X_i X_j
    out = {}
    for i in range(len(X)):
        for j in range(i + 1, len(X)):
            m = 0
            for k, r in enumerate(Y):
                if orient(X[i], X[j], r) > 0:
                    m |= 1 << k
            out[i, j] = m
    return out


class _Search:
    """Backtracking over index sets (I of A, J of B) keeping the pair avoiding."""

    def __init__(self, A: Sequence[Point], B: Sequence[Point], budget: int):
        self.A, self.B = A, B
        self.la = _side_masks(A, B)
        self.lb = _side_masks(B, A)
        self.budget = budget
        self.nodes = 0

    def _ok_a(self, I: list[int], J: list[int], Jm: int, a: int) -> bool:
        for i in I:
            lm = self.la[min(i, a), max(i, a)]
            if Jm & lm and Jm & ~lm:
                return False
        if I:
            ref = I[0]
            for x, j in enumerate(J):
                for j2 in J[x + 1:]:
                    lm = self.lb[min(j, j2), max(j, j2)]
                    if ((lm >> a) & 1) != ((lm >> ref) & 1):
                        return False
        return True

    def _ok_b(self, I: list[int], Im: int, J: list[int], b: int) -> bool:
        for j in J:
            lm = self.lb[min(j, b), max(j, b)]
            if Im & lm and Im & ~lm:
                return False
        if J:
            ref = J[0]
            for x, i in enumerate(I):
                for i2 in I[x + 1:]:
                    lm = self.la[min(i, i2), max(i, i2)]
                    if ((lm >> b) & 1) != ((lm >> ref) & 1):
                        return False
        return True

    def run(self, s1: int, s2: int, order_a: Sequence[int], order_b: Sequence[int]):
        self.nodes = 0
        result: list = []

        def rec(I, Im, J, Jm, ka, kb) -> bool:
            self.nodes += 1
            if self.nodes > self.budget:
                return False
            if len(I) == s1 and len(J) == s2:
                result.extend([list(I), list(J)])
                return True
            grow_a = len(I) < s1 and (len(J) == s2 or len(I) * s2 <= len(J) * s1)
            if grow_a:
                if len(order_a) - ka < s1 - len(I):
                    return False
                for t in range(ka, len(order_a)):
                    if len(order_a) - t < s1 - len(I):
                        break
                    a = order_a[t]
                    if self._ok_a(I, J, Jm, a):
                        I.append(a)
                        if rec(I, Im | (1 << a), J, Jm, t + 1, kb):
                            return True
                        I.pop()
            else:
                for t in range(kb, len(order_b)):
                    if len(order_b) - t < s2 - len(J):
                        break
                    b = order_b[t]
                    if self._ok_b(I, Im, J, b):
                        J.append(b)
                        if rec(I, Im, J, Jm | (1 << b), ka, t + 1):
                            return True
                        J.pop()
            return False

        rec([], 0, [], 0, 0, 0)
        return (result[0], result[1]) if result else None


def _narrow_order(X: Sequence[Point], axis: str) -> list[int]:
    # points close to the median in the separating coordinate first: a thin
    # band parallel to the separator spans lines that miss the other side
    vals = sorted(getattr(p, axis) for p in X)
    mid = vals[len(vals) // 2]
    return sorted(range(len(X)), key=lambda i: (abs(getattr(X[i], axis) - mid), i))


def extract_avoiding(
    A: Sequence[Point],
    B: Sequence[Point],
    sizes: tuple[int, int] | None = None,
    budget: int = 200_000,
) -> AvoidingPair | None:
    """Mutually avoiding A' in A and B' in B.

    With ``sizes`` the pair has exactly those sizes, or ``None`` is returned
    if none exists (or the search budget runs out). Without ``sizes`` the
    target is |A'| = |B'| = floor(sqrt(k)), k = min(|A|, |B|); a greedy pass
    runs first, then exhaustive search, and if the target is unattainable
    the largest equal size found is returned.
    """
    A, B = list(A), list(B)
    if not A or not B:
        raise ContractViolation("both sets must be non-empty")
    axis = separating_axis(A, B)
    search = _Search(A, B, budget)
    oa, ob = _narrow_order(A, axis), _narrow_order(B, axis)

    def attempt(s1: int, s2: int):
        if s1 > len(A) or s2 > len(B):
            return None
        saved, search.budget = search.budget, 2 * (s1 + s2) + 1
        found = search.run(s1, s2, oa, ob)  # greedy: almost no backtracking
        search.budget = saved
        if found is None:
            found = search.run(s1, s2, oa, ob)
        if found is None:
            return None
        pair = AvoidingPair(tuple(A[i].id for i in found[0]), tuple(B[j].id for j in found[1]))
        if not is_mutually_avoiding([A[i] for i in found[0]], [B[j] for j in found[1]]):
            raise ValidationFailure("avoiding search returned a non-avoiding pair")
        return pair

    if sizes is not None:
        s1, s2 = sizes
        if s1 < 1 or s2 < 1:
            raise ContractViolation("avoiding sizes must be positive")
        return attempt(s1, s2)
    k = min(len(A), len(B))
    if k < 2:
        raise ContractViolation("each side needs at least two points")
    target = max(2, math.isqrt(k))
    best = None
    for s in range(2, k + 1):
        found = attempt(s, s)
        if found is None:
            break
        best = found
        if s >= target and s >= 2:
            break
    if best is None:
        raise ValidationFailure("no avoiding pair of size 2")
    return best


def avoiding_orders(K: ColoredKP, A: Sequence[int], B: Sequence[int]) -> tuple[list[int], list[int]]:
    """A sorted as every point of B sees it, B sorted as every point of A sees it.

    In these orders two A-B segments (a, b), (a', b') with a < a' and b < b'
    never cross.
    """
    pts = K.points.points
    b0, a0 = pts[B[0]], pts[A[0]]
    oa = sorted(A, key=cmp_to_key(lambda x, y: -orient(b0, pts[x], pts[y])))
    ob = sorted(B, key=cmp_to_key(lambda x, y: orient(a0, pts[x], pts[y])))
    return oa, ob


def embed_in_avoiding(K: ColoredKP, T, pair: AvoidingPair, color: Color = Color.BLUE) -> Embedding:
    """Caterpillar on an avoiding pair: colour class of vertex 0 onto A'."""
    cs = as_caterpillar(T)
    m1, m2 = cs.bipartition_sizes
    if pair.sizes != (m1, m2):
        raise ContractViolation(f"pair sizes {pair.sizes} do not match the caterpillar's classes {(m1, m2)}")
    oa, ob = avoiding_orders(K, pair.A, pair.B)
    top, bottom = cs.two_layer_order()
    if 0 not in top:
        top, bottom = bottom, top
    mapping = [-1] * cs.n
    for v, p in zip(top, oa):
        mapping[v] = p
    for v, p in zip(bottom, ob):
        mapping[v] = p
    return checked(K, Embedding(cs.graph, tuple(mapping), color))


def avoiding_pw2_step(
    K: ColoredKP, A: Sequence[int], B: Sequence[int], D: PW2Decomposition, n: int
) -> "Embedding | EitherStructure":
    """Blue copy of the triangulation behind ``D``, or a red clique K_n.

    A and B must be mutually avoiding with every A-B edge blue. A blue
    monotone path inside each side (in the avoiding orders) carries the two
    induced paths of the decomposition; the cross edges follow for free.
    """
    m1, m2 = D.sizes
    A, B = list(A), list(B)
    if len(A) < (m1 - 1) * (n - 1) + 1 or len(B) < (m2 - 1) * (n - 1) + 1:
        raise ContractViolation("avoiding blocks are too small for the decomposition")
    pts = K.points.points
    if not is_mutually_avoiding([pts[i] for i in A], [pts[j] for j in B]):
        raise ContractViolation("blocks are not mutually avoiding")
    if any(K.is_red(a, b) for a in A for b in B):
        raise ContractViolation("an edge between the blocks is red")
    oa, ob = avoiding_orders(K, A, B)
    s1 = monotone_path_or_clique(oa, K, m1, n, color=Color.BLUE)
    if s1.kind is StructureKind.CLIQUE:
        return s1
    s2 = monotone_path_or_clique(ob, K, m2, n, color=Color.BLUE)
    if s2.kind is StructureKind.CLIQUE:
        return s2
    mapping = [-1] * D.graph.n
    for v, p in zip(D.path_u, s1.ids):
        mapping[v] = p
    for v, p in zip(D.path_rest, s2.ids):
        mapping[v] = p
    return checked(K, Embedding(D.graph, tuple(mapping), Color.BLUE))
