"""Desk-scale replications of the ccdf, volume and collision experiments.

Each experiment returns its data and, given an output prefix, writes CSV
files (``#`` header lines carry the parameters as JSON) plus a PNG figure.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from abcdlab import theory
from abcdlab.params import Params
from abcdlab.pipeline import ABCDGraph, build_phase4, generate_graph
from abcdlab.powerlaw import TruncPowerLaw
from abcdlab.stats import Bucket, EmpiricalCcdf, bucket_volumes, ccdf_gap, empirical_ccdf

DESK_NOTE = "desk scale: n <= 2^17 and 10 seeds (published runs: 2^20, 20 graphs)"

# paper parameter sets; (gamma, beta) pairs share the rest
TRIPLES = ((2.1, 1.1), (2.5, 1.5), (2.9, 1.9))
CCDF_BASE = dict(n=2**17, delta=5, zeta=0.4, s=50, tau=0.6, xi=0.5)
VOLUME_BASE = dict(n=2**17, delta=5, zeta=0.6, s=50, tau=0.9, xi=0.5)


def _header(fh, params: dict, extra: dict | None = None) -> None:
    fh.write(f"# params: {json.dumps(params, sort_keys=True)}\n")
    fh.write(f"# note: {DESK_NOTE}\n")
    for key, value in (extra or {}).items():
        fh.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")


def _write_csv(path: Path, params: dict, columns, rows, extra=None) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        _header(fh, params, extra)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
    return path


@dataclass
class CcdfPanel:
    title: str
    degrees: np.ndarray
    law: TruncPowerLaw
    emp: EmpiricalCcdf
    communities: int
    community_size: int | None

    @property
    def sup_distance(self) -> float:
        return float(np.max(np.abs(ccdf_gap(self.emp, self.law))))

    @property
    def max_excess(self) -> float:
        """Largest amount by which the empirical ccdf rises above the theory curve."""
        return float(np.max(ccdf_gap(self.emp, self.law)))


def ccdf_panels(graph: ABCDGraph) -> list[CcdfPanel]:
    p = graph.params
    sizes = graph.partition.sizes
    members = graph.partition.members()
    ph = graph.phi
    whole_law = TruncPowerLaw(p.gamma, p.delta, p.max_degree)
    panels = [CcdfPanel("whole graph", graph.degrees, whole_law, empirical_ccdf(graph.degrees), graph.L, None)]

    smallest = int(sizes.min())
    idx = np.flatnonzero(sizes == smallest)
    deg = np.concatenate([graph.degrees[members[j]] for j in idx])
    law = theory.community_law(smallest, p, ph)
    panels.append(CcdfPanel(f"{len(idx)} smallest (size {smallest})", deg, law, empirical_ccdf(deg), len(idx), smallest))

    largest = int(sizes.max())
    j = int(np.argmax(sizes))
    deg = graph.degrees[members[j]]
    law = theory.community_law(largest, p, ph)
    panels.append(CcdfPanel(f"largest (size {largest})", deg, law, empirical_ccdf(deg), 1, largest))
    return panels


def exp_ccdf(params: Params, out_prefix=None, workers: int = 1, plot: bool = True) -> list[CcdfPanel]:
    graph = generate_graph(params, workers=workers)
    panels = ccdf_panels(graph)
    if out_prefix is not None:
        prefix = Path(out_prefix)
        for tag, panel in zip(("whole", "smallest", "largest"), panels):
            k = panel.law.support
            rows = zip(k.tolist(), panel.emp.at(k).tolist(), panel.law.ccdf(k).tolist())
            extra = {
                "panel": panel.title,
                "communities": panel.communities,
                "community_size": panel.community_size,
                "nodes": int(len(panel.degrees)),
                "sup_distance": panel.sup_distance,
            }
            _write_csv(prefix.with_name(prefix.name + f"_ccdf_{tag}.csv"), params.to_dict(),
                       ["k", "empirical", "theory"], rows, extra)
        if plot:
            from abcdlab.plotting import plot_ccdf

            plot_ccdf(panels, prefix.with_name(prefix.name + "_ccdf.png"))
    return panels


def community_volumes(graph: ABCDGraph) -> list[Bucket]:
    p = graph.params
    sizes = graph.partition.sizes
    ph = graph.phi
    sums = np.bincount(graph.membership, weights=graph.degrees, minlength=graph.L)
    mean_deg = sums / sizes
    cache: dict[int, float] = {}
    predicted = []
    for z in sizes.tolist():
        if z not in cache:
            cache[z] = theory.expected_volume(z, p, ph)
        predicted.append(cache[z])
    return bucket_volumes(sizes, mean_deg, predicted)


def exp_volumes(params: Params, out_prefix=None, workers: int = 1, plot: bool = True) -> list[Bucket]:
    graph = build_phase4(params, workers)
    buckets = community_volumes(graph)
    if out_prefix is not None:
        prefix = Path(out_prefix)
        cols = list(asdict(buckets[0]).keys())
        rows = [list(asdict(b).values()) for b in buckets]
        _write_csv(prefix.with_name(prefix.name + "_volumes.csv"), params.to_dict(), cols, rows,
                   {"communities": graph.L, "phi": graph.phi})
        if plot:
            from abcdlab.plotting import plot_volumes

            plot_volumes(buckets, prefix.with_name(prefix.name + "_volumes.png"),
                         f"gamma={params.gamma}, beta={params.beta}")
    return buckets


COLLISION_STATS = ("S_c", "M_c", "S_b", "M_b", "M_bc")


def collision_cell(params: Params, workers: int = 1) -> dict:
    graph = build_phase4(params, workers)
    row = {"n": params.n, "seed": params.seed, "L": graph.L}
    row.update(graph.census.to_dict())
    for name in COLLISION_STATS:
        row[f"{name}/L"] = row[name] / graph.L
    return row


def summarize_cells(cells: list[dict]) -> list[dict]:
    summary = []
    for n in sorted({c["n"] for c in cells}):
        group = [c for c in cells if c["n"] == n]
        row: dict = {"n": n, "seeds": len(group), "L_mean": float(np.mean([c["L"] for c in group]))}
        for name in COLLISION_STATS:
            vals = np.array([c[name] for c in group], dtype=float)
            ratios = np.array([c[f"{name}/L"] for c in group])
            row[f"{name}_mean"] = float(vals.mean())
            row[f"{name}/L_mean"] = float(ratios.mean())
            row[f"{name}/L_std"] = float(ratios.std(ddof=1)) if len(group) > 1 else None
        summary.append(row)
    return summary


def exp_collisions(
    template: Params,
    n_list,
    seeds: int = 10,
    out_prefix=None,
    workers: int = 1,
    plot: bool = True,
) -> tuple[list[dict], list[dict]]:
    """Phase-4 collision census for every (n, seed) cell; seeds are
    ``template.seed + i``. Returns (cells, per-n summary)."""
    n_list = list(n_list)
    if n_list != sorted(n_list):
        raise ValueError("n_list must be ascending")
    cells = []
    for n in n_list:
        for i in range(seeds):
            cells.append(collision_cell(template.replace(n=n, seed=template.seed + i), workers))
    summary = summarize_cells(cells)
    if out_prefix is not None:
        prefix = Path(out_prefix)
        params = template.to_dict()
        params.pop("n")
        regime = asdict(theory.collision_regime(template))
        cols = list(summary[0].keys())
        rows = [["" if row[c] is None else row[c] for c in cols] for row in summary]
        _write_csv(prefix.with_name(prefix.name + "_collisions.csv"), params, cols, rows,
                   {"n_list": n_list, "regime": regime})
        cols = list(cells[0].keys())
        _write_csv(prefix.with_name(prefix.name + "_collisions_cells.csv"), params, cols,
                   [[c[k] for k in cols] for c in cells])
        if plot:
            from abcdlab.plotting import plot_collisions

            plot_collisions(summary, prefix.with_name(prefix.name + "_collisions.png"),
                            f"gamma={template.gamma}, beta={template.beta}")
    return cells, summary
