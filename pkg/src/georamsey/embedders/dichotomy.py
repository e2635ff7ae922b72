"""The two either/or lemmas the pipelines are built from.

``min_degree_or_clique``: a graph on (m-1)(n-1)+1 vertices has a subgraph of
minimum degree n-1 or an independent set of size m (peel low-degree
vertices; if everything peels, the peeling order colours greedily with n-1
colours).

``monotone_path_or_clique``: an ordered set of (n-1)(m-1)+1 points carries a
red monotone path on n points or a blue clique on m points (label every
point by the longest red monotone path ending there).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..coloring import Color, ColoredKP, _bits, ids_mask
from ..errors import ContractViolation


class StructureKind(str, enum.Enum):
    MIN_DEGREE = "MinDegSubgraph"
    CLIQUE = "Clique"
    MONOTONE_PATH = "MonotonePath"


@dataclass(frozen=True)
class EitherStructure:
    """Outcome of a dichotomy lemma.

    ``color`` is the colour of the structure's edges: red for a min-degree
    subgraph or monotone path, blue for a clique, unless the lemma ran on a
    colour-swapped instance.
    """

    kind: StructureKind
    ids: tuple[int, ...]
    color: Color

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "ids": list(self.ids), "color": self.color.value}


def _check_counts(N: int, n: int, m: int):
    if n < 1 or m < 1:
        raise ContractViolation("n and m must be positive")
    need = (n - 1) * (m - 1) + 1
    if N < need:
        raise ContractViolation(f"need at least {need} points, got {N}")


def min_degree_or_clique(
    K: ColoredKP, n: int, m: int, ids: Iterable[int] | None = None, color: Color = Color.RED
) -> EitherStructure:
    """Subset with min ``color``-degree >= n-1, or m points pairwise of the other colour."""
    ids = list(range(K.n)) if ids is None else sorted(set(ids))
    _check_counts(len(ids), n, m)
    masks = {i: K.mask(i, color) for i in ids}
    alive = ids_mask(ids)
    deg = {i: (masks[i] & alive).bit_count() for i in ids}
    stack = [i for i in ids if deg[i] < n - 1]
    peeled: list[int] = []
    removed = 0
    while stack:
        v = stack.pop()
        if (removed >> v) & 1:
            continue
        removed |= 1 << v
        peeled.append(v)
        for w in _bits(masks[v] & alive & ~removed):
            deg[w] -= 1
            if deg[w] == n - 2:
                stack.append(w)
    survivors = alive & ~removed
    if survivors:
        return EitherStructure(StructureKind.MIN_DEGREE, tuple(_bits(survivors)), color)
    # each vertex has < n-1 neighbours peeled after it: greedy colouring in
    # reverse peel order uses at most n-1 classes
    classes: list[int] = []
    for v in reversed(peeled):
        for c, cls in enumerate(classes):
            if not masks[v] & cls:
                classes[c] |= 1 << v
                break
        else:
            classes.append(1 << v)
    best = max(classes, key=int.bit_count)
    return EitherStructure(StructureKind.CLIQUE, tuple(list(_bits(best))[:m]), color.other)


def monotone_path_or_clique(
    order: Sequence[int], K: ColoredKP, n: int, m: int, color: Color = Color.RED
) -> EitherStructure:
    """``color`` path increasing in ``order`` on n points, or m points pairwise of the other colour."""
    order = list(order)
    if len(set(order)) != len(order):
        raise ContractViolation("order lists a point twice")
    _check_counts(len(order), n, m)
    label: list[int] = []
    prev: list[int] = []
    for i, p in enumerate(order):
        mp = K.mask(p, color)
        best, arg = 1, -1
        for j in range(i):
            if label[j] + 1 > best and (mp >> order[j]) & 1:
                best, arg = label[j] + 1, j
        label.append(best)
        prev.append(arg)
        if best >= n:
            path = [i]
            while len(path) < n:
                path.append(prev[path[-1]])
            return EitherStructure(StructureKind.MONOTONE_PATH, tuple(order[k] for k in reversed(path)), color)
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(label):
        groups.setdefault(lab, []).append(order[i])
    cls = max(groups.values(), key=len)
    return EitherStructure(StructureKind.CLIQUE, tuple(cls[:m]), color.other)


def check_structure(K: ColoredKP, s: EitherStructure, n: int, m: int, order: Sequence[int] | None = None) -> bool:
    """Re-validate a dichotomy outcome directly against the colouring."""
    ids = list(s.ids)
    if len(set(ids)) != len(ids):
        return False
    if s.kind is StructureKind.CLIQUE:
        return len(ids) == m and all(K.color(a, b) is s.color for i, a in enumerate(ids) for b in ids[i + 1:])
    if s.kind is StructureKind.MIN_DEGREE:
        inside = ids_mask(ids)
        return bool(ids) and all(K.degree(i, s.color, inside) >= n - 1 for i in ids)
    if len(ids) != n or any(K.color(a, b) is not s.color for a, b in zip(ids, ids[1:])):
        return False
    if order is not None:
        pos = {p: i for i, p in enumerate(order)}
        return all(pos[a] < pos[b] for a, b in zip(ids, ids[1:]))
    return True
