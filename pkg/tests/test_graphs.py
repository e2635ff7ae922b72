import itertools
import random

import networkx as nx
import pytest

from georamsey.errors import InvalidInput
from georamsey.graphs import (
    PatternGraph,
    Tag,
    augment_caterpillar_to_pw2,
    canonical_tree_code,
    caterpillar_graph,
    caterpillar_structure,
    center_rooted,
    chords_interleave,
    diameter,
    enumerate_trees,
    fan_graph,
    hamilton_cycle,
    maximal_outerplanar_completion,
    named_graph,
    outerplanar_order,
    pw2_decompose,
    recognize,
)

TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23}


def _brute_outerplanar(g: PatternGraph) -> bool:
    """Some circle order has no interleaving chords."""
    if g.n <= 3:
        return True
    first, rest = 0, list(range(1, g.n))
    for perm in itertools.permutations(rest):
        if not chords_interleave([first, *perm], g.edges):
            return True
    return False


def _random_graph(n, p, rng):
    return PatternGraph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def _prufer_classes(n):
    """Non-isomorphic trees from all Prüfer sequences, grouped by networkx."""
    reps = []
    if n <= 2:
        return n and 1
    for seq in itertools.product(range(n), repeat=n - 2):
        t = nx.from_prufer_sequence(list(seq))
        if not any(nx.is_isomorphic(t, r) for r in reps):
            reps.append(t)
    return len(reps)


@pytest.mark.parametrize("n", range(1, 7))
def test_tree_enumeration_matches_prufer_classes(n):
    assert len(enumerate_trees(n)) == _prufer_classes(n)


def test_tree_enumeration_known_counts():
    for n, count in TREE_COUNTS.items():
        trees = enumerate_trees(n)
        assert len(trees) == count
        assert all(t.is_tree() and t.n == n for t in trees)
        assert len({canonical_tree_code(t) for t in trees}) == count


def test_canonical_code_is_label_invariant():
    rng = random.Random(0)
    for t in enumerate_trees(7):
        perm = list(range(7))
        rng.shuffle(perm)
        assert canonical_tree_code(t.relabel(perm)) == canonical_tree_code(t)


def test_outerplanarity_agrees_with_brute_force():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(1, 7)
        g = _random_graph(n, rng.choice([0.3, 0.5, 0.7]), rng)
        order = outerplanar_order(g)
        assert (order is not None) == _brute_outerplanar(g)
        if order is not None:
            assert sorted(order) == list(range(n))
            assert not chords_interleave(order, g.edges)


def test_k4_and_k23_are_not_outerplanar():
    assert outerplanar_order(named_graph("complete4")) is None
    k23 = PatternGraph.from_edges(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    assert outerplanar_order(k23) is None


def test_maximal_completion_contains_graph_and_is_triangulated():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(3, 9)
        g = _random_graph(n, 0.4, rng)
        if outerplanar_order(g) is None:
            continue
        order, full = maximal_outerplanar_completion(g)
        assert g.edges <= full.edges
        assert len(full.edges) == 2 * n - 3
        assert not chords_interleave(order, full.edges)
        assert all(full.has_edge(order[i], order[(i + 1) % n]) for i in range(n))


def test_hamilton_cycle_on_fan_and_cycle():
    for g in (fan_graph(6), named_graph("cycle5")):
        cyc = hamilton_cycle(g)
        assert sorted(cyc) == list(range(g.n))
        assert all(g.has_edge(cyc[i], cyc[(i + 1) % g.n]) for i in range(g.n))
    assert hamilton_cycle(named_graph("star4")) is None


def test_recognition_tags():
    assert {Tag.TREE, Tag.PATH, Tag.CATERPILLAR, Tag.OUTERPLANAR} <= recognize(named_graph("path4"))
    assert Tag.STAR in recognize(named_graph("star5"))
    assert Tag.PW2_TRIANGULATION in recognize(fan_graph(5))
    spider = PatternGraph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert Tag.TREE in recognize(spider) and Tag.CATERPILLAR not in recognize(spider)


def test_caterpillar_structure():
    cs = caterpillar_structure(caterpillar_graph([1, 0, 2]))
    assert cs.spine_length == 3 and cs.max_degree == 3 and cs.n == 6
    assert sum(cs.bipartition_sizes) == 6
    top, bottom = cs.two_layer_order()
    assert sorted(top + bottom) == list(range(6))
    pos = {v: i for i, v in enumerate(top)} | {v: i for i, v in enumerate(bottom)}
    edges = [(u, v) if u in top else (v, u) for u, v in cs.graph.edges]
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        assert not (pos[a] < pos[c] and pos[b] > pos[d])
    with pytest.raises(InvalidInput):
        caterpillar_structure(named_graph("cycle4"))


def test_augmented_caterpillar_is_pw2_and_contains_caterpillar():
    for counts in ([1, 1], [2, 0, 1], [0, 3, 0, 1], [2, 2]):
        cs = caterpillar_structure(caterpillar_graph(counts))
        h = augment_caterpillar_to_pw2(cs)
        assert cs.graph.edges <= h.edges
        assert Tag.PW2_TRIANGULATION in recognize(h)


def test_pw2_decomposition_paths():
    D = pw2_decompose(fan_graph(6))
    g = D.graph
    for path in (D.path_u, D.path_rest):
        induced = g.induced(list(path))
        assert induced.is_tree() and induced.max_degree <= 2
    assert sum(D.sizes) == 6


def test_rooting_and_diameter():
    t = named_graph("path5")
    rt = center_rooted(t)
    assert rt.root == 2 and rt.height == 2 and diameter(t) == 4
    subs = rt.child_subtrees()
    assert sorted(len(vm) for _, vm in subs) == [2, 2]


def test_graph_json_round_trip():
    g = caterpillar_graph([2, 1])
    assert PatternGraph.from_dict(g.to_dict()) == g


def test_named_graph_rejects_unknown():
    with pytest.raises(InvalidInput):
        named_graph("hexagon")
