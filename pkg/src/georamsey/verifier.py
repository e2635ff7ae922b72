"""Exact convex Ramsey numbers for tiny patterns, pipeline sweeps and
calibration of the unspecified size constants.

In convex position, whether two chords cross depends only on the cyclic
order of their endpoints, so the non-crossing copies of a pattern on N
convex points can be listed once as edge bitmasks. Checking a colouring is
then a handful of mask tests.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .coloring import Color, ColoredKP, find_mono_noncrossing, lower_bound_coloring, random_coloring
from .errors import ContractViolation, GeoRamseyError, InvalidInput, PipelineFailure, ValidationFailure
from .geometry import PointSet, convex_hull, generate_points, order_points
from .graphs import PatternGraph, caterpillar_structure, center_rooted, named_graph, pw2_decompose
from .embedders.recursion import DEFAULT_C
from .seeds import derive_seed

ENUMERATE_MAX_EDGES = 15  # N <= 6: vectorised enumeration with dihedral reduction
EXACT_N_MAX = 9


# -- convex embedding tables ---------------------------------------------------------

def edge_index(N: int) -> dict:
    return {e: k for k, e in enumerate(itertools.combinations(range(N), 2))}


def _interleave(a: int, b: int, c: int, d: int) -> bool:
    if a > b:
        a, b = b, a
    if c > d:
        c, d = d, c
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def convex_embedding_masks(G: PatternGraph, N: int) -> np.ndarray:
    """Edge masks of all non-crossing copies of G on N points in convex position.

    Point i is the i-th point in cyclic order; bit k of a mask is the k-th
    pair of ``itertools.combinations(range(N), 2)``.
    """
    if G.n > N:
        return np.zeros(0, dtype=np.uint64)
    idx = edge_index(N)
    edges = G.sorted_edges()
    pairs = [(e, f) for i, e in enumerate(edges) for f in edges[i + 1:] if not set(e) & set(f)]
    masks = set()
    for perm in itertools.permutations(range(N), G.n):
        if any(_interleave(perm[a], perm[b], perm[c], perm[d]) for (a, b), (c, d) in pairs):
            continue
        m = 0
        for u, v in edges:
            a, b = perm[u], perm[v]
            m |= 1 << idx[(a, b) if a < b else (b, a)]
        masks.add(m)
    return np.array(sorted(masks), dtype=np.uint64)


def dihedral_edge_perms(N: int) -> list[list[int]]:
    idx = edge_index(N)
    out = []
    for r in range(N):
        for flip in (False, True):
            g = [((r - i) % N) if flip else ((i + r) % N) for i in range(N)]
            perm = []
            for a, b in idx:
                x, y = g[a], g[b]
                perm.append(idx[(x, y) if x < y else (y, x)])
            out.append(perm)
    return out


def _permute_bits(colors: np.ndarray, perm: list[int]) -> np.ndarray:
    out = np.zeros_like(colors)
    one = np.uint64(1)
    for k, t in enumerate(perm):
        out |= ((colors >> np.uint64(k)) & one) << np.uint64(t)
    return out


def canonical_coloring(mask: int, N: int) -> int:
    """Smallest red-edge mask in the dihedral orbit of ``mask``."""
    arr = np.array([mask], dtype=np.uint64)
    return int(min(_permute_bits(arr, p)[0] for p in dihedral_edge_perms(N)))


def _witness_free(colors: np.ndarray, tm: np.ndarray, hm: np.ndarray) -> np.ndarray:
    free = np.ones(colors.shape, dtype=bool)
    for m in tm:
        free &= (colors & m) != m
    for m in hm:
        free &= (colors & m) != 0
    return free


# -- exact engines -------------------------------------------------------------------

def _enumerate(N: int, tm: np.ndarray, hm: np.ndarray, symmetry: bool) -> tuple[int | None, int, float]:
    E = N * (N - 1) // 2
    colors = np.arange(1 << E, dtype=np.uint64)
    total = colors.size
    if symmetry and N >= 3:
        canon = colors.copy()
        for p in dihedral_edge_perms(N):
            np.minimum(canon, _permute_bits(colors, p), out=canon)
        colors = colors[canon == colors]
    free = _witness_free(colors, tm, hm)
    hit = colors[free]
    found = int(hit[0]) if hit.size else None
    return found, int(colors.size), total / colors.size


def _dfs_shard(args) -> tuple[int | None, int]:
    E, prefix_bits, prefix, t_by_last, h_by_last = args
    nodes = 0

    def ok(e: int, red: int) -> bool:
        t = t_by_last[e]
        if t.size and np.any((t & np.uint64(red)) == t):
            return False
        h = h_by_last[e]
        if h.size and np.any((h & np.uint64(red)) == 0):
            return False
        return True

    for e in range(prefix_bits):
        if not ok(e, prefix):
            return None, 1
    stack = [(prefix_bits, prefix)]
    while stack:
        e, red = stack.pop()
        nodes += 1
        if e == E:
            return red, nodes
        for bit in (0, 1):
            r = red | (bit << e)
            if ok(e, r):
                stack.append((e + 1, r))
    return None, nodes


def _dfs(N: int, tm: np.ndarray, hm: np.ndarray, shards: int, workers: int) -> tuple[int | None, int]:
    E = N * (N - 1) // 2
    if (tm.size and tm.min() == 0) or (hm.size and hm.min() == 0):
        return None, 1  # an edgeless pattern always has a copy
    # group masks by their highest edge: that is when they become decidable
    def by_last(ms):
        groups = [[] for _ in range(E)]
        for m in ms:
            groups[int(m).bit_length() - 1].append(m)
        return [np.array(g, dtype=np.uint64) for g in groups]

    t_by, h_by = by_last(tm), by_last(hm)
    k = min(max(0, int(math.log2(max(1, shards)))), E)
    tasks = [(E, k, p, t_by, h_by) for p in range(1 << k)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_dfs_shard, tasks))
    else:
        results = []
        for t in tasks:
            results.append(_dfs_shard(t))
            if results[-1][0] is not None:
                break
    nodes = sum(r[1] for r in results)
    found = next((r[0] for r in results if r[0] is not None), None)
    return found, nodes


def convex_points(N: int, seed: int = 0) -> PointSet:
    """Convex point set whose ids follow the counterclockwise hull order."""
    P = generate_points(N, "convex", seed=seed)
    order = convex_hull(P) if N >= 3 else list(range(N))
    return PointSet.from_coords([(P[i].x, P[i].y) for i in order], "convex")


def coloring_from_mask(P: PointSet, mask: int) -> ColoredKP:
    N = len(P)
    red = [e for k, e in enumerate(itertools.combinations(range(N), 2)) if (mask >> k) & 1]
    return ColoredKP.from_red_edges(P, red)


def mask_from_coloring(K: ColoredKP) -> int:
    idx = edge_index(K.n)
    m = 0
    for e in K.red_edges():
        m |= 1 << idx[e]
    return m


@dataclass
class RamseyReport:
    T: PatternGraph
    H: PatternGraph
    position_class: str
    n_range: tuple[int, int]
    R: int | None
    counterexamples: dict = field(default_factory=dict)   # N -> red edge list
    examined: dict = field(default_factory=dict)          # N -> colourings (or DFS nodes)
    symmetry_factor: dict = field(default_factory=dict)   # N -> total / examined
    engine: dict = field(default_factory=dict)
    wall_clock: float = 0.0

    def to_dict(self) -> dict:
        return {
            "T": self.T.to_dict(),
            "H": self.H.to_dict(),
            "position_class": self.position_class,
            "n_range": list(self.n_range),
            "R": self.R,
            "counterexamples": {str(k): v for k, v in self.counterexamples.items()},
            "examined": {str(k): v for k, v in self.examined.items()},
            "symmetry_factor": {str(k): v for k, v in self.symmetry_factor.items()},
            "engine": {str(k): v for k, v in self.engine.items()},
            "wall_clock": self.wall_clock,
        }

    def table(self) -> str:
        rows = [f"{'N':>3}  {'engine':<9} {'examined':>10} {'sym':>6}  result"]
        for N in range(self.n_range[0], self.n_range[1] + 1):
            if N not in self.engine:
                continue
            res = "counterexample" if N in self.counterexamples else "all colourings have a witness"
            rows.append(
                f"{N:>3}  {self.engine[N]:<9} {self.examined[N]:>10} {self.symmetry_factor.get(N, 1.0):>6.2f}  {res}"
            )
        rows.append(f"R = {self.R if self.R is not None else 'undetermined (> %d)' % self.n_range[1]}")
        return "\n".join(rows)


def exact_convex_ramsey(
    T: PatternGraph,
    H: PatternGraph,
    N_max: int,
    engine: str = "auto",
    symmetry: bool = True,
    shards: int = 1,
    workers: int = 1,
    seed: int = 0,
) -> RamseyReport:
    """Smallest N such that every colouring of K_N (convex) has a red
    non-crossing T or a blue non-crossing H, if it is at most ``N_max``."""
    if N_max > EXACT_N_MAX:
        E = N_max * (N_max - 1) // 2
        raise ContractViolation(
            f"N_max = {N_max} exceeds {EXACT_N_MAX}: up to 2^{E} = {2 ** E:.3e} colourings at N = {N_max}"
        )
    if engine not in ("auto", "enumerate", "dfs"):
        raise InvalidInput("engine must be auto, enumerate or dfs")
    start = time.perf_counter()
    report = RamseyReport(T, H, "convex", (1, N_max), None)
    lb_size = (T.n - 1) * (H.n - 1)
    for N in range(1, N_max + 1):
        P = convex_points(N, seed)
        tm = convex_embedding_masks(T, N)
        hm = convex_embedding_masks(H, N)
        E = N * (N - 1) // 2
        use = engine if engine != "auto" else ("enumerate" if E <= ENUMERATE_MAX_EDGES else "dfs")
        report.engine[N] = use
        if use == "enumerate":
            found, examined, factor = _enumerate(N, tm, hm, symmetry)
        else:
            found, examined = _dfs(N, tm, hm, shards, workers)
            factor = 1.0
        report.examined[N] = examined
        report.symmetry_factor[N] = factor
        if found is not None:
            if N == lb_size and T.n >= 2 and H.n >= 2:
                # prefer the classical construction when it is a counterexample
                lb = mask_from_coloring(lower_bound_coloring(T.n, H.n, P))
                if _witness_free(np.array([lb], dtype=np.uint64), tm, hm)[0]:
                    found = lb
            K = coloring_from_mask(P, found)
            report.counterexamples[N] = [list(e) for e in K.red_edges()]
            continue
        report.R = N
        report.n_range = (1, N)
        break
    report.wall_clock = time.perf_counter() - start
    return report


# -- pipeline registry for sweeps and calibration ------------------------------------

@dataclass(frozen=True)
class PipelineSpec:
    position_class: str
    size: Callable          # (T, H, c) -> required instance size
    run: Callable           # (K, T, H, c) -> Certificate | Embedding
    needs_host: bool = True


def _registry() -> dict:
    from .embedders.caterpillars import (
        convex_caterpillar_vs_ham,
        general_caterpillar_vs_ham,
        general_twostar_vs_ham,
        selframsey_caterpillar,
    )
    from .embedders.recursion import pw2_required_points, selframsey_tree_diameter, tree_vs_caterpillar, tree_vs_pw2

    def cat(T):
        return caterpillar_structure(T)

    return {
        "convex_caterpillar_vs_ham": PipelineSpec(
            "convex", lambda T, H, c: (T.n - 1) * (H.n - 1) + 1, lambda K, T, H, c: convex_caterpillar_vs_ham(K, T, H)
        ),
        "general_twostar_vs_ham": PipelineSpec(
            "general", lambda T, H, c: (T.n - 1) * (H.n - 1) + 1, lambda K, T, H, c: general_twostar_vs_ham(K, T, H)
        ),
        "general_caterpillar_vs_ham": PipelineSpec(
            "general",
            lambda T, H, c: cat(T).max_degree * cat(T).spine_length * H.n ** 2,
            lambda K, T, H, c: general_caterpillar_vs_ham(K, T, H),
        ),
        "selframsey_caterpillar": PipelineSpec(
            "general",
            lambda T, H, c: 4 * cat(T).max_degree * cat(T).spine_length * T.n,
            lambda K, T, H, c: selframsey_caterpillar(K, T),
            needs_host=False,
        ),
        "tree_vs_caterpillar": PipelineSpec(
            "general",
            lambda T, H, c: c * (T.n - 1) * H.n ** 2 + 1,
            lambda K, T, H, c: tree_vs_caterpillar(K, center_rooted(T), H, c=c),
        ),
        "tree_vs_pw2:convex": PipelineSpec(
            "convex",
            lambda T, H, c: (T.n - 1) ** 2 * (H.n - 1) + 1,
            lambda K, T, H, c: tree_vs_pw2(K, center_rooted(T), _pw2(H), "convex"),
        ),
        "tree_vs_pw2:general": PipelineSpec(
            "general",
            lambda T, H, c: pw2_required_points(center_rooted(T), _pw2(H), "general", c),
            lambda K, T, H, c: tree_vs_pw2(K, center_rooted(T), _pw2(H), "general", c=c),
        ),
        "selframsey_tree_diameter": PipelineSpec(
            "general",
            lambda T, H, c: T.n ** (2 * center_rooted(T).height),
            lambda K, T, H, c: selframsey_tree_diameter(K, T),
            needs_host=False,
        ),
    }


def _pw2(H: PatternGraph):
    D = pw2_decompose(H)
    if D is None:
        raise InvalidInput("host graph is not a pathwidth-2 triangulation")
    return D


def pipeline_ids() -> list[str]:
    return sorted(_registry())


def get_pipeline(name: str) -> PipelineSpec:
    reg = _registry()
    if name not in reg:
        raise InvalidInput(f"unknown pipeline {name!r}; choose from {sorted(reg)}")
    return reg[name]


def _graph(g) -> PatternGraph:
    return g if isinstance(g, PatternGraph) else named_graph(g)


def make_instance(spec: PipelineSpec, N: int, seed: int, point_pool: int = 0) -> ColoredKP:
    """Random instance: point set from a small pool, colour bias drawn per seed."""
    pseed = derive_seed(seed % point_pool if point_pool else seed, "points", N, spec.position_class)
    P = generate_points(N, spec.position_class, seed=pseed)
    bias = random.Random(derive_seed(seed, "bias")).random()
    return random_coloring(P, bias, seed=derive_seed(seed, "coloring"))


@dataclass
class SweepRow:
    cell: dict
    N: int
    instances: int = 0
    validated: int = 0
    failures: int = 0
    red: int = 0
    blue: int = 0
    reproducers: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "cell": self.cell, "N": self.N, "instances": self.instances, "validated": self.validated,
            "failures": self.failures, "red": self.red, "blue": self.blue, "reproducers": self.reproducers,
        }


def run_cell(
    pipeline: str,
    cell: dict,
    seeds: int,
    c: int = DEFAULT_C,
    offset: int = 0,
    point_pool: int = 0,
    reproducer_dir: str | Path | None = None,
) -> SweepRow:
    spec = _registry()[pipeline]
    T = _graph(cell["T"])
    H = _graph(cell["H"]) if spec.needs_host else None
    N = int(cell["N"]) if "N" in cell else spec.size(T, H, c)
    row = SweepRow(dict(cell), N)
    for s in range(seeds):
        seed = derive_seed(offset + s, pipeline, json.dumps(cell, sort_keys=True))
        K = make_instance(spec, N, seed, point_pool)
        row.instances += 1
        try:
            out = spec.run(K, T, H, c)
        except (PipelineFailure, ValidationFailure, ContractViolation) as exc:
            row.failures += 1
            rep = {"pipeline": pipeline, "cell": cell, "c": c, "seed": seed, "error": f"{type(exc).__name__}: {exc}",
                   "coloring": K.to_dict()}
            if reproducer_dir is not None:
                path = Path(reproducer_dir) / f"{pipeline.replace(':', '_')}_{seed}.json"
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(json.dumps(rep))
                row.reproducers.append(str(path))
            continue
        emb = getattr(out, "embedding", out)
        from .coloring import validate

        if validate(K, emb).ok:
            row.validated += 1
            if emb.color is Color.RED:
                row.red += 1
            else:
                row.blue += 1
        else:
            row.failures += 1
    return row


def sweep_theorem(
    pipeline: str, grid: Iterable[dict], seeds: int, c: int = DEFAULT_C, point_pool: int = 0,
    reproducer_dir: str | Path | None = None,
) -> list[SweepRow]:
    """Run ``pipeline`` on ``seeds`` random instances per grid cell.

    A cell names ``T`` (and ``H``) and may override ``N``; otherwise the
    pipeline's required size is used. Failures are counted and, if requested, dumped
    as reproducer JSON.
    """
    if pipeline not in _registry():
        raise InvalidInput(f"unknown pipeline {pipeline!r}; choose from {pipeline_ids()}")
    return [run_cell(pipeline, cell, seeds, c, 0, point_pool, reproducer_dir) for cell in grid]


def format_rows(rows: list[SweepRow]) -> str:
    lines = [f"{'cell':<36} {'N':>6} {'inst':>6} {'ok':>6} {'fail':>5} {'red':>5} {'blue':>5}"]
    for r in rows:
        cell = ",".join(f"{k}={v}" for k, v in r.cell.items())
        lines.append(f"{cell:<36} {r.N:>6} {r.instances:>6} {r.validated:>6} {r.failures:>5} {r.red:>5} {r.blue:>5}")
    return "\n".join(lines)


# -- calibration ---------------------------------------------------------------------

@dataclass
class CalibrationRow:
    cell: dict
    constant: int | None
    tried: dict           # c -> failures
    monotone: bool | None
    note: str = ""

    def to_dict(self) -> dict:
        return {"cell": self.cell, "constant": self.constant, "tried": {str(k): v for k, v in self.tried.items()},
                "monotone": self.monotone, "note": self.note}


def calibrate_avoiding(k: int, seeds: int, seed: int = 0) -> dict:
    """Achieved avoiding sizes on random vertically separated pairs of k points each."""
    from .embedders.avoiding import extract_avoiding, is_mutually_avoiding

    sizes = []
    for s in range(seeds):
        P = generate_points(2 * k, "general", seed=derive_seed(seed + s, "avoiding", k))
        o = order_points(P, "x")
        A, B = [P[i] for i in o[:k]], [P[i] for i in o[k:]]
        pair = extract_avoiding(A, B)
        if not is_mutually_avoiding([P[i] for i in pair.A], [P[i] for i in pair.B]):
            raise ValidationFailure("extracted pair is not mutually avoiding")
        sizes.append(min(pair.sizes))
    target = max(2, math.isqrt(k))
    return {
        "k": k, "instances": seeds, "min_size": min(sizes), "target": target,
        "fraction_at_least_4": sum(s >= 4 for s in sizes) / seeds,
        "fraction_at_target": sum(s >= target for s in sizes) / seeds,
        "constant": min(sizes) / math.sqrt(k),
    }


def calibrate_constant(
    pipeline: str, grid: Iterable[dict], seeds: int, c_range: Iterable[int] = range(1, 5), point_pool: int = 0
) -> list[CalibrationRow]:
    """Smallest c in ``c_range`` with zero failures per cell, plus a check that the next c passes too."""
    if pipeline == "extract_avoiding":
        out = []
        for cell in grid:
            res = calibrate_avoiding(int(cell["k"]), seeds)
            out.append(CalibrationRow(dict(cell), None, {}, None, json.dumps(res)))
        return out
    if pipeline not in ("tree_vs_caterpillar", "tree_vs_pw2:general"):
        raise InvalidInput("calibration applies to tree_vs_caterpillar, tree_vs_pw2:general and extract_avoiding")
    cs = sorted(c_range)
    rows = []
    for cell in grid:
        T = _graph(cell["T"])
        if T.n == 1:
            rows.append(CalibrationRow(dict(cell), cs[0], {}, True, "single vertex: constant irrelevant"))
            continue
        tried, best = {}, None
        for c in cs:
            tried[c] = run_cell(pipeline, cell, seeds, c=c, point_pool=point_pool).failures
            if tried[c] == 0:
                best = c
                break
        monotone = None
        if best is not None:
            later = [c for c in cs if c > best]
            if later:
                tried[later[0]] = run_cell(pipeline, cell, seeds, c=later[0], point_pool=point_pool).failures
                monotone = tried[later[0]] == 0
        rows.append(CalibrationRow(dict(cell), best, tried, monotone, "" if best else "no constant in range passes"))
    return rows
