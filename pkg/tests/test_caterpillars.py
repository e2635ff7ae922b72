import itertools

import pytest

from georamsey.coloring import Color, ColoredKP, random_coloring, validate
from georamsey.embedders.caterpillars import (
    convex_caterpillar_vs_ham,
    dense_convex_caterpillar,
    general_caterpillar_vs_ham,
    general_twostar_vs_ham,
    selframsey_caterpillar,
)
from georamsey.errors import ContractViolation, InvalidInput
from georamsey.geometry import PointSet, generate_points
from georamsey.graphs import caterpillar_graph, fan_graph, named_graph, two_star
from georamsey.seeds import derive_seed
from georamsey.verifier import coloring_from_mask, convex_points


def _instances(N, position_class, count, label):
    for s in range(count):
        seed = derive_seed(s, label)
        P = generate_points(N, position_class, seed=seed)
        yield random_coloring(P, (s % 9 + 1) / 10, seed=seed)


def _ok(K, cert, T, H):
    e = cert.embedding
    assert validate(K, e).ok
    assert e.pattern == (T if e.color is Color.RED else H)


def test_convex_caterpillar_exhaustive_star_vs_triangle():
    T, H = named_graph("star4"), named_graph("cycle3")
    P = convex_points(7)
    for mask in range(0, 1 << 21, 97):
        K = coloring_from_mask(P, mask)
        _ok(K, convex_caterpillar_vs_ham(K, T, H), T, H)


@pytest.mark.parametrize("T,H", [("caterpillar1_1", "fan4"), ("path5", "cycle4"), ("caterpillar2_0_1", "cycle3")])
def test_convex_caterpillar_random(T, H):
    T, H = named_graph(T), named_graph(H)
    N = (T.n - 1) * (H.n - 1) + 1
    for K in _instances(N, "convex", 60, ("cc", T, H)):
        _ok(K, convex_caterpillar_vs_ham(K, T, H), T, H)


def test_convex_certificate_survives_cyclic_relabelling():
    T, H = named_graph("path4"), named_graph("cycle3")
    P = convex_points(7)
    for s in range(20):
        K = random_coloring(P, 0.5, seed=s)
        shift = s % 7 + 1
        rot = PointSet.from_coords([P.coords()[(i + shift) % 7] for i in range(7)], "convex")
        red = [((a - shift) % 7, (b - shift) % 7) for a, b in K.red_edges()]
        K2 = ColoredKP.from_red_edges(rot, red)
        _ok(K2, convex_caterpillar_vs_ham(K2, T, H), T, H)


def test_dense_caterpillar_threshold_enforced():
    P = convex_points(6)
    K = ColoredKP.from_red_edges(P, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(ContractViolation):
        dense_convex_caterpillar(K, named_graph("path4"))
    full = ColoredKP.monochromatic(P, Color.RED)
    assert validate(full, dense_convex_caterpillar(full, named_graph("star4"))).ok


@pytest.mark.parametrize("a,b,H", [(2, 2, "cycle3"), (2, 3, "cycle4"), (3, 3, "fan4"), (4, 2, "cycle3")])
def test_general_twostar(a, b, H):
    T, H = two_star(a, b), named_graph(H)
    N = (T.n - 1) * (H.n - 1) + 1
    for K in _instances(N, "general", 60, ("ts", a, b, H)):
        _ok(K, general_twostar_vs_ham(K, T, H), T, H)


@pytest.mark.parametrize("T,H", [("path4", "cycle3"), ("caterpillar1_0_1", "cycle3"), ("star4", "fan4")])
def test_general_caterpillar(T, H):
    T, H = named_graph(T), named_graph(H)
    cs_delta = T.max_degree
    from georamsey.graphs import caterpillar_structure

    N = cs_delta * caterpillar_structure(T).spine_length * H.n ** 2
    for K in _instances(N, "general", 30, ("gc", T, H)):
        _ok(K, general_caterpillar_vs_ham(K, T, H), T, H)


@pytest.mark.parametrize("name", ["path3", "path4", "star4", "caterpillar1_1"])
def test_selframsey_caterpillar(name):
    from georamsey.graphs import caterpillar_structure

    T = named_graph(name)
    cs = caterpillar_structure(T)
    N = 4 * cs.max_degree * cs.spine_length * T.n
    for K in _instances(N, "general", 30, ("sf", name)):
        e = selframsey_caterpillar(K, T)
        assert validate(K, e).ok and e.pattern == T


def test_preconditions():
    K = random_coloring(generate_points(8, "general", seed=0), 0.5, seed=0)
    with pytest.raises(ContractViolation):
        convex_caterpillar_vs_ham(K, named_graph("path3"), named_graph("cycle3"))
    K = random_coloring(convex_points(4), 0.5, seed=0)
    with pytest.raises(ContractViolation):
        convex_caterpillar_vs_ham(K, named_graph("path3"), named_graph("cycle3"))
    with pytest.raises(InvalidInput):
        convex_caterpillar_vs_ham(K, named_graph("cycle3"), named_graph("cycle3"))
    with pytest.raises(InvalidInput):
        convex_caterpillar_vs_ham(K, named_graph("path3"), named_graph("star4"))
