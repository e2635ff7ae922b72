"""Command-line interface.

Every JSON artifact carries a ``config`` block holding the parsed arguments,
so a run can be repeated from its own output. Exit codes: 0 success,
1 invalid input, 2 contract violation or pipeline failure, 3 a certificate
failed validation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .coloring import (
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
from .embedders.outerplanar import embed_outerplanar
from .embedders.recursion import DEFAULT_C
from .errors import ContractViolation, InvalidInput, PipelineFailure, ValidationFailure
from .geometry import PointSet, generate_points
from .graphs import PatternGraph, named_graph
from .seeds import derive_seed
from .svg import render_svg


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    args: dict = field(default_factory=dict)
    version: str = __version__

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        args = {k: v for k, v in vars(ns).items() if k not in ("func", "command")}
        return cls(ns.command, int(getattr(ns, "seed", 0) or 0), args)

    def to_dict(self) -> dict:
        return asdict(self)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


# -- io helpers ----------------------------------------------------------------------

def _load_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        data = json.loads(text)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInput(f"{path} must hold a JSON object")
    return data


def _emit(payload: dict | str, out: str | None):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=1, sort_keys=True) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)


def _graph(spec: str) -> PatternGraph:
    """A graph name such as ``cycle4`` or a path to PatternGraph JSON."""
    if spec.endswith(".json") or Path(spec).is_file():
        return PatternGraph.from_dict(_load_json(spec))
    return named_graph(spec)


def _coloring(path: str) -> ColoredKP:
    data = _load_json(path)
    return ColoredKP.from_dict(data.get("coloring", data))


def _witness(path: str) -> Embedding:
    data = _load_json(path)
    data = data.get("certificate", data.get("embedding", data))
    if data is None:
        raise InvalidInput(f"{path} holds no witness")
    return Embedding.from_dict(data)


def _checked_certificate(K: ColoredKP, emb: Embedding) -> None:
    rep = validate(K, emb)
    if not rep.ok:
        raise ValidationFailure("; ".join(rep.violations))


# -- subcommands ---------------------------------------------------------------------

def cmd_gen(ns, cfg: RunConfig) -> int:
    P = generate_points(ns.n, ns.position_class, seed=derive_seed(ns.seed, "gen", "points"), span=ns.span)
    _emit({**P.to_dict(), "config": cfg.to_dict()}, ns.out)
    return 0


def cmd_color(ns, cfg: RunConfig) -> int:
    if ns.points:
        P = PointSet.from_dict(_load_json(ns.points))
    elif ns.lower_bound:
        N = (ns.tree_n - 1) * (ns.host_m - 1)
        P = generate_points(N, "convex", seed=derive_seed(ns.seed, "color", "points"))
    else:
        if ns.N is None:
            raise InvalidInput("random colouring needs --points or --N")
        P = generate_points(ns.N, ns.position_class, seed=derive_seed(ns.seed, "color", "points"))
    if ns.lower_bound:
        if ns.tree_n is None or ns.host_m is None:
            raise InvalidInput("--lower-bound needs --tree-n and --host-m")
        K = lower_bound_coloring(ns.tree_n, ns.host_m, P)
    else:
        K = random_coloring(P, ns.bias, seed=derive_seed(ns.seed, "color", "coloring"))
    _emit({**K.to_dict(), "config": cfg.to_dict()}, ns.out)
    return 0


def cmd_embed(ns, cfg: RunConfig) -> int:
    G = _graph(ns.graph)
    P = PointSet.from_dict(_load_json(ns.points))
    anchor = None
    if ns.anchor:
        try:
            v, p = (int(t) for t in ns.anchor.split(":"))
        except ValueError as exc:
            raise InvalidInput("--anchor takes VERTEX:POINT") from exc
        anchor = (v, p)
    emb = embed_outerplanar(G, P, anchor=anchor)
    _checked_certificate(ColoredKP.monochromatic(P, Color.RED), emb)
    _emit({"embedding": emb.to_dict(), "config": cfg.to_dict()}, ns.out)
    return 0


def cmd_pipeline(ns, cfg: RunConfig) -> int:
    from .verifier import get_pipeline

    spec = get_pipeline(ns.name)
    K = _coloring(ns.coloring)
    T = _graph(ns.t)
    H = _graph(ns.h) if spec.needs_host else None
    if spec.needs_host and ns.h is None:
        raise InvalidInput(f"pipeline {ns.name} needs --h")
    out = spec.run(K, T, H, ns.c)
    cert = out if isinstance(out, Certificate) else Certificate(out, fingerprint(K, pipeline=ns.name))
    _checked_certificate(K, cert.embedding)
    _emit({"certificate": cert.to_dict(), "config": cfg.to_dict()}, ns.out)
    return 0


def cmd_oracle(ns, cfg: RunConfig) -> int:
    K = _coloring(ns.coloring)
    G = _graph(ns.graph)
    extremal = None
    if ns.extremal:
        axis, _, root = ns.extremal.partition(":")
        try:
            extremal = Extremal(axis, int(root))
        except ValueError as exc:
            raise InvalidInput("--extremal takes AXIS:ROOT, e.g. y:0") from exc
    emb = find_mono_noncrossing(K, G, Color(ns.color), extremal)
    if emb is not None:
        _checked_certificate(K, emb)
    _emit({"embedding": None if emb is None else emb.to_dict(), "found": emb is not None,
           "config": cfg.to_dict()}, ns.out)
    return 0


def cmd_verify(ns, cfg: RunConfig) -> int:
    from .verifier import exact_convex_ramsey, format_rows, sweep_theorem

    if ns.mode == "exact":
        rep = exact_convex_ramsey(_graph(ns.t), _graph(ns.h), ns.nmax, engine=ns.engine,
                                  shards=ns.shards, workers=ns.workers, seed=derive_seed(ns.seed, "verify", "points"))
        if ns.out not in (None, "-"):
            _emit({**rep.to_dict(), "config": cfg.to_dict()}, ns.out)
        print(rep.table())
        return 0
    cell = {"T": ns.t}
    if ns.h:
        cell["H"] = ns.h
    if ns.N:
        cell["N"] = ns.N
    rows = sweep_theorem(ns.pipeline, [cell], ns.seeds, c=ns.c, point_pool=ns.point_pool,
                         reproducer_dir=ns.reproducers)
    if ns.out not in (None, "-"):
        _emit({"rows": [r.to_dict() for r in rows], "config": cfg.to_dict()}, ns.out)
    print(format_rows(rows))
    return 2 if any(r.failures for r in rows) else 0


def cmd_calibrate(ns, cfg: RunConfig) -> int:
    from .verifier import calibrate_constant

    cell = {"k": ns.k} if ns.pipeline == "extract_avoiding" else {"T": ns.t, **({"H": ns.h} if ns.h else {})}
    rows = calibrate_constant(ns.pipeline, [cell], ns.seeds, range(ns.c_min, ns.c_max + 1), ns.point_pool)
    payload = {"rows": [r.to_dict() for r in rows], "config": cfg.to_dict()}
    _emit(payload, ns.out)
    return 0


def cmd_render(ns, cfg: RunConfig) -> int:
    K = _coloring(ns.coloring)
    w = _witness(ns.witness) if ns.witness else None
    _emit(render_svg(K, w, size=ns.size, edges=ns.edges), ns.out)
    return 0


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="georamsey", description="Geometric Ramsey embedders and verifiers")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("-o", "--out", default=None, help="output path (default stdout)")
        sp.set_defaults(func=func)
        return sp

    sp = add("gen", cmd_gen, "generate a point set")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class", dest="position_class", choices=["general", "convex"], default="general")
    sp.add_argument("--span", type=int, default=1 << 20)

    sp = add("color", cmd_color, "colour the complete graph on a point set")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--lower-bound", action="store_true")
    mode.add_argument("--random", action="store_true")
    sp.add_argument("--points", help="PointSet JSON (otherwise generated)")
    sp.add_argument("--tree-n", type=int)
    sp.add_argument("--host-m", type=int)
    sp.add_argument("--N", type=int, help="point count for a generated random instance")
    sp.add_argument("--class", dest="position_class", choices=["general", "convex"], default="general")
    sp.add_argument("--bias", type=float, default=0.5, help="probability of red")

    sp = add("embed", cmd_embed, "embed an outerplanar graph on a point set")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--points", required=True)
    sp.add_argument("--anchor", help="VERTEX:POINT, point must be on the hull")

    sp = add("pipeline", cmd_pipeline, "run an embedding pipeline on a coloured instance")
    sp.add_argument("name")
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--t", required=True, help="red target (name or JSON)")
    sp.add_argument("--h", help="blue target (name or JSON)")
    sp.add_argument("--c", type=int, default=DEFAULT_C)

    sp = add("oracle", cmd_oracle, "exhaustive search for a monochromatic non-crossing copy")
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--color", choices=["red", "blue"], default="red")
    sp.add_argument("--extremal", help="AXIS:ROOT")

    sp = add("verify", cmd_verify, "exact convex Ramsey numbers or randomised sweeps")
    sp.add_argument("mode", choices=["exact", "sweep"])
    sp.add_argument("--t", required=True)
    sp.add_argument("--h")
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("--engine", choices=["auto", "enumerate", "dfs"], default="auto")
    sp.add_argument("--shards", type=int, default=1)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--pipeline", default="convex_caterpillar_vs_ham")
    sp.add_argument("--seeds", type=int, default=100)
    sp.add_argument("--N", type=int)
    sp.add_argument("--c", type=int, default=DEFAULT_C)
    sp.add_argument("--point-pool", type=int, default=0)
    sp.add_argument("--reproducers", help="directory for failure reproducer JSON")

    sp = add("calibrate", cmd_calibrate, "smallest constant with zero failures")
    sp.add_argument("pipeline", choices=["tree_vs_caterpillar", "tree_vs_pw2:general", "extract_avoiding"])
    sp.add_argument("--t")
    sp.add_argument("--h")
    sp.add_argument("--k", type=int, default=16)
    sp.add_argument("--seeds", type=int, default=50)
    sp.add_argument("--c-min", type=int, default=1)
    sp.add_argument("--c-max", type=int, default=4)
    sp.add_argument("--point-pool", type=int, default=0)

    sp = add("render", cmd_render, "SVG of a coloured instance with an optional witness")
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--witness", help="certificate or embedding JSON")
    sp.add_argument("--size", type=int, default=600)
    sp.add_argument("--edges", choices=["auto", "all", "witness", "none"], default="auto")
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        if ns.command == "calibrate" and ns.pipeline != "extract_avoiding" and not ns.t:
            raise InvalidInput("calibrate needs --t")
        return ns.func(ns, RunConfig.from_namespace(ns))
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ContractViolation, PipelineFailure) as exc:
        print(f"contract: {exc}", file=sys.stderr)
        return 2
    except ValidationFailure as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
