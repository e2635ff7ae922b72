"""Shared generators for the test suite."""

import random

from georamsey.graphs import PatternGraph


def random_outerplanar(n: int, rng: random.Random, keep: float = 0.7) -> PatternGraph:
    """Random subgraph of a random polygon triangulation, randomly relabelled."""
    edges = {(i, (i + 1) % n) for i in range(n)} if n >= 3 else set()
    if n == 2:
        edges = {(0, 1)}

    def tri(poly):
        if len(poly) < 4:
            return
        i = rng.randrange(len(poly))
        k = rng.randrange(2, len(poly) - 1)
        a, b = poly[i], poly[(i + k) % len(poly)]
        edges.add((a, b))
        rot = poly[i:] + poly[:i]
        tri(rot[: k + 1])
        tri(rot[k:] + rot[:1])

    tri(list(range(n)))
    kept = [e for e in edges if rng.random() < keep]
    perm = list(range(n))
    rng.shuffle(perm)
    return PatternGraph.from_edges(n, [(perm[a], perm[b]) for a, b in kept])
