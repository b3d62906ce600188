"""Command-line front end: ``abcd-lab {generate,predict,experiment,stats}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from abcdlab import harness, theory
from abcdlab.graphio import (
    MalformedFileError,
    read_communities,
    read_edges,
    write_communities,
    write_edges,
)
from abcdlab.params import FIELDS, ParamError, parse_config, validate
from abcdlab.pipeline import Stage, build_phase4, rewire_all, substream
from abcdlab.rewire import NonSimpleOutputError
from abcdlab.sequences import gen_communities, gen_degrees, phi
from abcdlab.stats import graph_report

log = logging.getLogger("abcdlab")


def _add_param_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="file of 'key = value' lines")
    p.add_argument("--seed", type=int, help="unsigned 64-bit RNG seed")
    for name in FIELDS:
        p.add_argument(f"--{name}", dest=f"param_{name}", metavar="VALUE")


def _params(args):
    raw: dict = {}
    if args.config is not None:
        raw.update(parse_config(args.config.read_text()))
    for name in FIELDS:
        value = getattr(args, f"param_{name}")
        if value is not None:
            raw[name] = value
    if args.seed is not None:
        raw["seed"] = args.seed
    return validate(raw)


def _dump(obj, out: Path | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_generate(args) -> int:
    params = _params(args)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    graph = build_phase4(params, args.workers)
    status = 0
    error = None
    if not args.phase4_only:
        try:
            rewire_all(graph, args.workers)
        except NonSimpleOutputError as exc:
            error = {"message": str(exc), "residual_census": exc.residual.to_dict()}
            status = 2
    summary = graph.summary()
    if error:
        summary["error"] = error
    write_edges(f"{prefix}.edges", graph.edges())
    write_communities(f"{prefix}.communities", graph.membership + 1)
    _dump(summary, Path(f"{prefix}.summary.json"))
    if error:
        log.error("%s", error["message"])
    return status


def cmd_predict(args) -> int:
    params = _params(args)
    # phi and the realized degrees come from the seeded phase 1-2 draws
    partition = gen_communities(params, substream(params.seed, Stage.COMMUNITIES))
    degrees = gen_degrees(params, substream(params.seed, Stage.DEGREES))
    pred = theory.predict(params, phi(partition.sizes), degrees)
    out = {"params": params.to_dict(), "realized_L": partition.L, **pred.to_dict()}
    _dump(out, args.out)
    return 0


def cmd_experiment(args) -> int:
    params = _params(args)
    plot = not args.no_plots
    if args.name == "ccdf":
        panels = harness.exp_ccdf(params, args.out, args.workers, plot)
        result = {p.title: {"sup_distance": p.sup_distance, "max_excess": p.max_excess} for p in panels}
    elif args.name == "volumes":
        buckets = harness.exp_volumes(params, args.out, args.workers, plot)
        result = [b.__dict__ for b in buckets]
    else:
        n_list = [int(x) for x in args.n_list.split(",")] if args.n_list else [params.n]
        _, result = harness.exp_collisions(params, n_list, args.seeds, args.out, args.workers, plot)
    _dump(result, None)
    return 0


def cmd_stats(args) -> int:
    membership = read_communities(args.communities)
    edges = read_edges(args.edges)
    if len(edges) and edges.max() >= len(membership):
        raise MalformedFileError(f"{args.edges}: node id beyond the {len(membership)} nodes listed")
    predicted = None
    if args.config is not None or args.param_n is not None:
        params = _params(args)
        ph = phi(np.unique(membership, return_counts=True)[1])
        predicted = lambda z: theory.expected_volume(z, params, ph)  # noqa: E731
    _dump(graph_report(edges, membership, predicted), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abcd-lab", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate one graph")
    _add_param_args(g)
    g.add_argument("--out", required=True, help="output prefix")
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--phase4-only", action="store_true", help="skip rewiring")
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("predict", help="emit closed-form predictions as JSON")
    _add_param_args(p)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_predict)

    e = sub.add_parser("experiment", help="run a desk-scale experiment")
    e.add_argument("name", choices=["ccdf", "volumes", "collisions"])
    _add_param_args(e)
    e.add_argument("--out", required=True, help="output prefix for CSV and PNG files")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--n-list", help="comma-separated node counts (collisions)")
    e.add_argument("--seeds", type=int, default=10, help="seeds per n (collisions)")
    e.add_argument("--no-plots", action="store_true")
    e.set_defaults(func=cmd_experiment)

    s = sub.add_parser("stats", help="summarize an .edges/.communities pair")
    s.add_argument("edges", type=Path)
    s.add_argument("communities", type=Path)
    _add_param_args(s)
    s.add_argument("--out", type=Path)
    s.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParamError, MalformedFileError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
