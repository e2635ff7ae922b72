import itertools

import pytest

from georamsey.coloring import (
    Certificate,
    Color,
    ColoredKP,
    Embedding,
    Extremal,
    find_mono_noncrossing,
    fingerprint,
    lower_bound_coloring,
    random_coloring,
    validate,
)
from georamsey.errors import ContractViolation, InvalidInput
from georamsey.geometry import PointSet, generate_points, segments_cross
from georamsey.graphs import enumerate_trees, named_graph


def _brute_exists(K, G, color):
    """Try every injective map; no pruning at all."""
    pts = K.points.points
    for image in itertools.permutations(range(K.n), G.n):
        segs = [(image[u], image[v]) for u, v in G.sorted_edges()]
        if any(K.color(a, b) is not color for a, b in segs):
            continue
        if any(segments_cross(pts[a], pts[b], pts[c], pts[d])
               for (a, b), (c, d) in itertools.combinations(segs, 2)):
            continue
        return True
    return False


def test_swapped_is_an_involution_and_complements():
    K = random_coloring(generate_points(9, seed=1), 0.4, seed=2)
    S = K.swapped()
    assert S.swapped() == K
    for i, j in itertools.combinations(range(9), 2):
        assert K.color(i, j) is S.color(i, j).other


def test_degrees_and_edge_counts():
    K = random_coloring(generate_points(10, seed=3), 0.5, seed=4)
    assert sum(K.degree(i, Color.RED) for i in range(10)) == 2 * len(K.red_edges())
    assert K.red_edge_count() == len(K.red_edges())
    assert K.degree(0, Color.RED) + K.degree(0, Color.BLUE) == 9


def test_random_coloring_extremes_and_determinism():
    P = generate_points(8, seed=0)
    assert random_coloring(P, 1.0, 5).red_edge_count() == 28
    assert random_coloring(P, 0.0, 5).red_edge_count() == 0
    assert random_coloring(P, 0.5, 5) == random_coloring(P, 0.5, 5)
    with pytest.raises(InvalidInput):
        random_coloring(P, 1.5)


def test_coloring_hash_tracks_colours():
    P = generate_points(7, seed=0)
    K = ColoredKP.from_red_edges(P, [(0, 1), (2, 5)])
    same = ColoredKP.from_red_edges(P, [(5, 2), (1, 0)])
    other = ColoredKP.from_red_edges(P, [(0, 1), (2, 6)])
    assert K.coloring_hash == same.coloring_hash != other.coloring_hash


def test_coloring_json_round_trip():
    K = random_coloring(generate_points(11, "convex", seed=2), 0.3, seed=8)
    assert ColoredKP.from_dict(K.to_dict()) == K


def test_lower_bound_construction_shape():
    P = generate_points(6, "convex", seed=1)
    K = lower_bound_coloring(3, 4, P)
    assert K.red_edge_count() == 3
    # three disjoint red edges joining hull neighbours
    assert all(K.degree(i, Color.RED) == 1 for i in range(6))
    with pytest.raises(ContractViolation):
        lower_bound_coloring(3, 4, generate_points(5, "convex", seed=1))


def test_validate_flags_each_kind_of_violation():
    P = PointSet.from_coords([(0, 0), (10, 1), (11, 9), (1, 10)], "convex")
    K = ColoredKP.monochromatic(P, Color.RED)
    path = named_graph("path3")
    assert validate(K, Embedding(path, (0, 1, 2), Color.RED)).ok
    assert not validate(K, Embedding(path, (0, 1, 2), Color.BLUE)).ok
    assert not validate(K, Embedding(path, (0, 1, 1), Color.RED)).ok
    crossing = named_graph("path4")
    assert not validate(K, Embedding(crossing, (0, 2, 1, 3), Color.RED)).ok
    assert not validate(K, Embedding(path, (0, 1, 2), Color.RED, Extremal("y", 0))).ok
    assert validate(K, Embedding(path, (2, 1, 0), Color.RED, Extremal("y", 0))).ok


def test_oracle_agrees_with_brute_force():
    graphs = [named_graph("path3"), named_graph("path4"), named_graph("star4"), named_graph("cycle4")]
    for seed in range(40):
        P = generate_points(6, "general" if seed % 2 else "convex", seed=seed)
        K = random_coloring(P, 0.5, seed=seed)
        for G in graphs:
            for color in Color:
                found = find_mono_noncrossing(K, G, color)
                assert (found is not None) == _brute_exists(K, G, color)
                if found is not None:
                    assert validate(K, found).ok


def test_oracle_respects_within_and_extremal():
    K = ColoredKP.monochromatic(generate_points(8, seed=6), Color.BLUE)
    T = enumerate_trees(4)[0]
    e = find_mono_noncrossing(K, T, Color.BLUE, Extremal("x", 0), within=[1, 3, 5, 7])
    assert set(e.mapping) <= {1, 3, 5, 7}
    assert validate(K, e).ok
    assert find_mono_noncrossing(K, T, Color.RED) is None


def test_certificate_json_round_trip():
    P = generate_points(5, "convex", seed=0)
    K = ColoredKP.monochromatic(P, Color.RED)
    e = find_mono_noncrossing(K, named_graph("path3"), Color.RED, Extremal("y", 1))
    cert = Certificate(e, fingerprint(K, pipeline="test"))
    back = Certificate.from_dict(cert.to_dict())
    assert back == cert and back.fingerprint == cert.fingerprint
    assert cert.kind == "RedWitness"
