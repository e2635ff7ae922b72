import pytest

from georamsey.coloring import Color, ColoredKP, random_coloring, validate
from georamsey.embedders.recursion import (
    merged_children,
    pw2_required_points,
    selframsey_tree_diameter,
    tree_vs_caterpillar,
    tree_vs_pw2,
)
from georamsey.errors import ContractViolation, InvalidInput
from georamsey.geometry import generate_points
from georamsey.graphs import RootedTree, center_rooted, enumerate_trees, fan_graph, named_graph, pw2_decompose
from georamsey.seeds import derive_seed


def _pool(N, position_class, count, label, pool=4):
    points = [generate_points(N, position_class, seed=derive_seed(i, label, N)) for i in range(pool)]
    for s in range(count):
        yield random_coloring(points[s % pool], (s % 7 + 1) / 8, seed=derive_seed(s, label, "colour"))


def _check_red_extreme(K, e, rt):
    assert validate(K, e).ok
    if e.color is Color.RED:
        assert e.extremal is not None and e.extremal.root == rt.root


@pytest.mark.parametrize("C", ["path3", "star4", "path4"])
def test_tree_vs_caterpillar_all_small_trees(C):
    C = named_graph(C)
    for T in enumerate_trees(4):
        rt = center_rooted(T)
        N = 2 * (T.n - 1) * C.n ** 2 + 1
        for K in _pool(N, "general", 12, ("tvc", T, C)):
            cert = tree_vs_caterpillar(K, rt, C, c=2)
            _check_red_extreme(K, cert.embedding, rt)
            assert cert.fingerprint["c"] == 2


def test_tree_vs_caterpillar_extreme_colourings():
    T, C = center_rooted(named_graph("star4")), named_graph("path3")
    P = generate_points(2 * 3 * 9 + 1, seed=1)
    red = tree_vs_caterpillar(ColoredKP.monochromatic(P, Color.RED), T, C).embedding
    blue = tree_vs_caterpillar(ColoredKP.monochromatic(P, Color.BLUE), T, C).embedding
    assert red.color is Color.RED and blue.color is Color.BLUE


def test_tree_vs_pw2_convex():
    D = pw2_decompose(fan_graph(4))
    for T in enumerate_trees(4):
        rt = center_rooted(T)
        N = pw2_required_points(rt, D, "convex")
        assert N == 28
        for K in _pool(N, "convex", 10, ("pw2c", T)):
            _check_red_extreme(K, tree_vs_pw2(K, rt, D, "convex").embedding, rt)


def test_tree_vs_pw2_general_small():
    D = pw2_decompose(named_graph("cycle3"))
    rt = center_rooted(named_graph("path3"))
    N = pw2_required_points(rt, D, "general", 1)
    for K in _pool(N, "general", 8, "pw2g"):
        _check_red_extreme(K, tree_vs_pw2(K, rt, D, "general", c=1).embedding, rt)


def test_tree_vs_pw2_rejects_bad_inputs():
    D = pw2_decompose(fan_graph(4))
    rt = center_rooted(named_graph("path3"))
    K = random_coloring(generate_points(30, "general", seed=0), 0.5, seed=0)
    with pytest.raises(ContractViolation):
        tree_vs_pw2(K, rt, D, "convex")
    with pytest.raises(InvalidInput):
        tree_vs_pw2(K, rt, fan_graph(4), "convex")
    K = random_coloring(generate_points(12, "convex", seed=0), 0.5, seed=0)
    with pytest.raises(ContractViolation):
        tree_vs_pw2(K, rt, D, "convex")


def test_merged_children_shape():
    rt = center_rooted(named_graph("path5"))
    merged, parts = merged_children(rt)
    assert merged.n == rt.n - 2 and merged.height == rt.height - 1
    assert sum(len(vm) for vm, _ in parts) == rt.n - 1


@pytest.mark.parametrize("T", enumerate_trees(4), ids=lambda t: str(sorted(t.edges)))
def test_selframsey_tree_diameter(T):
    rt = center_rooted(T)
    N = T.n ** (2 * rt.height)
    for K in _pool(N, "general", 10, ("diam", T), pool=2):
        e = selframsey_tree_diameter(K, T)
        assert validate(K, e).ok and e.pattern == T


def test_diameter_rejects_small_instances():
    K = random_coloring(generate_points(15, seed=0), 0.5, seed=0)
    with pytest.raises(ContractViolation):
        selframsey_tree_diameter(K, named_graph("path4"))
