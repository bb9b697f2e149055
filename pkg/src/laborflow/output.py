"""Artifact writers: solution/simulation/sweep CSVs, result JSONs, and the
per-run ``run.json`` manifest with checksums.

Floats are written with ``repr`` (shortest round-trip), so artifacts are
byte-stable across runs with identical inputs.  ``run.json`` records the
command, package version, every effective parameter, the seed, and a sha256
per artifact — enough to reproduce the run exactly — and carries no
timestamps, so identical runs yield byte-identical manifests.
"""
from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np

from .calibration import CalibrationResult
from .graph import LaborFlowNetwork
from .micro_sim import SimResult
from .params import EconomyParams
from .steady_state import SteadyStateSolution


def _fmt(x) -> str:
    return repr(float(x))


def write_solution_csv(path, net: LaborFlowNetwork, h, ss: SteadyStateSolution,
                       w=None, ell=None, profit=None) -> None:
    """Per-firm steady-state table; appends w,ell,profit columns when given."""
    h = np.asarray(h, dtype=float)
    extended = w is not None
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        header = ["firm", "k", "h", "L", "U", "A", "O", "u", "t_u"]
        if extended:
            header += ["w", "ell", "profit"]
        writer.writerow(header)
        for i in range(net.n):
            row = [i, int(net.degrees[i]), _fmt(h[i]), _fmt(ss.L[i]),
                   _fmt(ss.U[i]), _fmt(ss.A[i]), _fmt(ss.O[i]),
                   _fmt(ss.u_firm[i]), _fmt(ss.t_u[i])]
            if extended:
                row += [_fmt(w[i]), _fmt(ell[i]), _fmt(profit[i])]
            writer.writerow(row)


def write_solution_sidecar(path, ss: SteadyStateSolution,
                           params: EconomyParams, **extra) -> None:
    data = {"varphi": ss.varphi, "u_agg": ss.u_agg, "params": params.to_dict()}
    data.update(extra)
    write_json(path, data)


def write_sim_csv(path, sim: SimResult) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["firm", "mean_L", "mean_U", "mean_A", "mean_O"])
        for i in range(sim.mean_L.size):
            writer.writerow([i, _fmt(sim.mean_L[i]), _fmt(sim.mean_U[i]),
                             _fmt(sim.mean_A[i]), _fmt(sim.mean_O[i])])


def write_u_series_csv(path, sim: SimResult) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["period", "u"])
        for t, u in enumerate(sim.u_series, start=1):
            writer.writerow([t, _fmt(u)])


def write_sweep_csv(path, points) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["topology", "seed", "c", "h_bar", "u_agg"])
        for p in points:
            writer.writerow([p.topology, "" if p.seed is None else p.seed,
                             _fmt(p.c), _fmt(p.h_bar), _fmt(p.u_agg)])


def write_calibration_json(path, result: CalibrationResult) -> None:
    write_json(path, result.to_dict())


def write_json(path, data: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_run_json(outdir, command: str, parameters: dict, seed,
                   artifacts) -> Path:
    """Manifest tying a run's effective inputs to checksummed outputs."""
    from . import __version__

    outdir = Path(outdir)
    manifest = {
        "command": command,
        "version": __version__,
        "parameters": parameters,
        "seed": seed,
        "artifacts": {Path(a).name: sha256_file(a) for a in artifacts},
    }
    path = outdir / "run.json"
    write_json(path, manifest)
    return path
