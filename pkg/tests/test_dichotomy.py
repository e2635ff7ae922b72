import itertools
import random

import networkx as nx
import pytest

from georamsey.coloring import Color, ColoredKP, random_coloring
from georamsey.embedders.dichotomy import (
    StructureKind,
    check_structure,
    min_degree_or_clique,
    monotone_path_or_clique,
)
from georamsey.errors import ContractViolation
from georamsey.geometry import generate_points, order_points


def _red_graph(K):
    g = nx.Graph()
    g.add_nodes_from(range(K.n))
    g.add_edges_from(K.red_edges())
    return g


def _longest_red_increasing(K, order):
    """Brute force over subsequences (small N only)."""
    best = 1 if order else 0
    for r in range(2, len(order) + 1):
        for sub in itertools.combinations(order, r):
            if all(K.is_red(a, b) for a, b in zip(sub, sub[1:])):
                best = r
                break
    return best


@pytest.mark.parametrize("n,m", [(2, 2), (3, 3), (4, 3), (3, 5), (5, 4)])
def test_min_degree_matches_networkx_core(n, m):
    N = (n - 1) * (m - 1) + 1
    for seed in range(60):
        K = random_coloring(generate_points(N, seed=seed), bias=seed / 60, seed=seed)
        s = min_degree_or_clique(K, n, m)
        assert check_structure(K, s, n, m)
        core = nx.k_core(_red_graph(K), n - 1)
        if s.kind is StructureKind.MIN_DEGREE:
            assert set(s.ids) == set(core.nodes)
        else:
            assert core.number_of_nodes() == 0 and s.color is Color.BLUE


def test_min_degree_on_subset_and_swapped_colour():
    K = random_coloring(generate_points(15, seed=3), 0.3, seed=3)
    ids = list(range(2, 12))
    s = min_degree_or_clique(K, 3, 5, ids=ids, color=Color.BLUE)
    assert set(s.ids) <= set(ids)
    assert check_structure(K, s, 3, 5)


@pytest.mark.parametrize("n,m", [(3, 3), (4, 4), (3, 5)])
def test_monotone_path_existence_matches_brute_force(n, m):
    N = (n - 1) * (m - 1) + 1
    for seed in range(80):
        P = generate_points(N, seed=seed)
        K = random_coloring(P, 0.5, seed=seed + 1000)
        order = order_points(P, "x")
        s = monotone_path_or_clique(order, K, n, m)
        assert check_structure(K, s, n, m, order)
        has_path = _longest_red_increasing(K, order) >= n
        assert (s.kind is StructureKind.MONOTONE_PATH) == has_path


def test_trivial_colourings():
    P = generate_points(10, seed=0)
    red = ColoredKP.monochromatic(P, Color.RED)
    blue = ColoredKP.monochromatic(P, Color.BLUE)
    order = list(range(10))
    assert monotone_path_or_clique(order, red, 4, 4).kind is StructureKind.MONOTONE_PATH
    s = monotone_path_or_clique(order, blue, 4, 4)
    assert s.kind is StructureKind.CLIQUE and len(s.ids) == 4
    assert min_degree_or_clique(blue, 4, 4).kind is StructureKind.CLIQUE
    assert min_degree_or_clique(red, 4, 4).kind is StructureKind.MIN_DEGREE


def test_undersized_inputs_are_rejected():
    K = random_coloring(generate_points(9, seed=0), 0.5, seed=0)
    with pytest.raises(ContractViolation):
        min_degree_or_clique(K, 4, 4)
    with pytest.raises(ContractViolation):
        monotone_path_or_clique(list(range(9)), K, 4, 4)
    with pytest.raises(ContractViolation):
        monotone_path_or_clique([0, 0, 1], K, 2, 2)


def test_check_structure_rejects_tampering():
    rng = random.Random(1)
    K = random_coloring(generate_points(10, seed=1), 0.5, seed=1)
    order = list(range(10))
    rng.shuffle(order)
    s = monotone_path_or_clique(order, K, 4, 4)
    if s.kind is StructureKind.MONOTONE_PATH:
        assert not check_structure(K, s, 4, 4, order[::-1])
    else:
        assert not check_structure(K, type(s)(s.kind, s.ids, s.color.other), 4, 4)
