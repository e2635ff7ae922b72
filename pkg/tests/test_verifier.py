import itertools
import json

import pytest

from georamsey.coloring import Color, ColoredKP, find_mono_noncrossing, lower_bound_coloring
from georamsey.errors import ContractViolation
from georamsey.graphs import named_graph
from georamsey.seeds import derive_seed
from georamsey.verifier import (
    RamseyReport,
    calibrate_avoiding,
    calibrate_constant,
    canonical_coloring,
    coloring_from_mask,
    convex_points,
    exact_convex_ramsey,
    format_rows,
    mask_from_coloring,
    pipeline_ids,
    sweep_theorem,
)


def _oracle_counterexample_exists(T, H, N):
    """Every colouring through the backtracking oracle, no symmetry, no masks."""
    P = convex_points(N, seed=7)
    E = N * (N - 1) // 2
    for mask in range(1 << E):
        K = coloring_from_mask(P, mask)
        if find_mono_noncrossing(K, T, Color.RED) is None and find_mono_noncrossing(K, H, Color.BLUE) is None:
            return True
    return False


@pytest.mark.parametrize("T,H", [("path3", "cycle3"), ("path2", "cycle3"), ("path3", "path3")])
def test_exact_matches_independent_oracle(T, H):
    T, H = named_graph(T), named_graph(H)
    rep = exact_convex_ramsey(T, H, 6)
    assert rep.R is not None
    for N in range(2, rep.R + 1):
        assert _oracle_counterexample_exists(T, H, N) == (N < rep.R)


@pytest.mark.parametrize("T,H", [("path3", "cycle3"), ("path4", "cycle3"), ("star4", "cycle3"), ("path3", "cycle4")])
def test_engines_and_symmetry_agree(T, H):
    T, H = named_graph(T), named_graph(H)
    results = {
        exact_convex_ramsey(T, H, 7, engine="enumerate", symmetry=False).R,
        exact_convex_ramsey(T, H, 7, engine="enumerate", symmetry=True).R if T.n + H.n < 8 else None,
        exact_convex_ramsey(T, H, 7, engine="dfs", shards=4).R,
    }
    results.discard(None)
    assert results == {(T.n - 1) * (H.n - 1) + 1}


def test_result_is_independent_of_the_convex_point_set():
    T, H = named_graph("path3"), named_graph("cycle4")
    a = exact_convex_ramsey(T, H, 7, seed=1)
    b = exact_convex_ramsey(T, H, 7, seed=99)
    assert a.R == b.R == 7


def test_stored_counterexamples_are_counterexamples():
    T, H = named_graph("path4"), named_graph("cycle3")
    rep = exact_convex_ramsey(T, H, 7)
    for N, red in rep.counterexamples.items():
        if N < 2:
            continue
        K = ColoredKP.from_red_edges(convex_points(N), red)
        assert find_mono_noncrossing(K, T, Color.RED) is None
        assert find_mono_noncrossing(K, H, Color.BLUE) is None


def test_canonical_coloring_is_dihedral_invariant():
    P = convex_points(5)
    lb = mask_from_coloring(lower_bound_coloring(3, 3, convex_points(4)))
    assert canonical_coloring(lb, 4) == canonical_coloring(0b100001, 4)
    for mask in range(0, 1 << 10, 37):
        K = coloring_from_mask(P, mask)
        rot = [((a + 1) % 5, (b + 1) % 5) for a, b in K.red_edges()]
        m2 = mask_from_coloring(ColoredKP.from_red_edges(P, rot))
        assert canonical_coloring(mask, 5) == canonical_coloring(m2, 5)


def test_large_nmax_is_refused_with_estimate():
    with pytest.raises(ContractViolation, match="2\\^45"):
        exact_convex_ramsey(named_graph("path3"), named_graph("cycle3"), 10)


def test_report_serialises():
    rep = exact_convex_ramsey(named_graph("path3"), named_graph("cycle3"), 6)
    data = json.loads(json.dumps(rep.to_dict()))
    assert data["R"] == 5 and "4" in data["counterexamples"]
    assert "R = 5" in rep.table()
    assert isinstance(rep, RamseyReport)


def test_sweep_counts_and_reproducers(tmp_path):
    rows = sweep_theorem("convex_caterpillar_vs_ham", [{"T": "path3", "H": "cycle3"}], 25, reproducer_dir=tmp_path)
    r = rows[0]
    assert r.N == 5 and r.instances == 25 and r.validated == 25 and r.failures == 0
    assert r.red + r.blue == 25
    assert "path3" in format_rows(rows)
    # a forced-undersized cell fails with a contract violation and leaves a reproducer
    bad = sweep_theorem("convex_caterpillar_vs_ham", [{"T": "path3", "H": "cycle3", "N": 4}], 2, reproducer_dir=tmp_path)
    assert bad[0].failures == 2 and len(bad[0].reproducers) == 2
    rep = json.loads(open(bad[0].reproducers[0]).read())
    assert rep["error"].startswith("ContractViolation") and "coloring" in rep


def test_registry_lists_every_pipeline():
    assert set(pipeline_ids()) == {
        "convex_caterpillar_vs_ham", "general_twostar_vs_ham", "general_caterpillar_vs_ham",
        "selframsey_caterpillar", "tree_vs_caterpillar", "tree_vs_pw2:convex", "tree_vs_pw2:general",
        "selframsey_tree_diameter",
    }


def test_calibration():
    rows = calibrate_constant("tree_vs_caterpillar", [{"T": "path3", "H": "path3"}], 10, range(1, 3), point_pool=3)
    assert rows[0].constant == 1 and rows[0].monotone is True
    res = calibrate_avoiding(9, 10)
    assert res["min_size"] >= 2 and res["target"] == 3


def test_seed_derivation():
    assert derive_seed(1, "a") == derive_seed(1, "a")
    assert len({derive_seed(1, "a"), derive_seed(1, "b"), derive_seed(2, "a")}) == 3
    assert 0 <= derive_seed(5, "x", 3) < 2 ** 63
