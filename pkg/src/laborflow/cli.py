"""Command-line surface: generate, solve, simulate, sweep, calibrate,
counterfactual.

Every command writes its artifacts plus a ``run.json`` manifest (effective
parameters, seed, sha256 checksums) into ``--out``.  Exit codes: 0 success,
2 input error, 3 numerical failure, 4 I/O error; failures emit a
machine-readable error JSON on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .calibration import FirmPanel, run_calibration
from .equilibrium import optimal_hiring_exogenous, solve_equilibrium, solve_exogenous
from .errors import (
    GenerationFailed,
    LaborFlowError,
    NoConvergence,
    SingularSystem,
    TargetOutOfBracket,
)
from .experiments import beveridge_sweep, generate_topology
from .graph import build_from_edge_list, read_edge_list, write_edge_list
from .micro_sim import simulate
from .output import (
    write_calibration_json,
    write_json,
    write_run_json,
    write_sim_csv,
    write_solution_csv,
    write_solution_sidecar,
    write_sweep_csv,
    write_u_series_csv,
)
from .params import load_params

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_NUMERICAL_ERRORS = (NoConvergence, TargetOutOfBracket, SingularSystem,
                     GenerationFailed)


def _uint64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laborflow",
        description="Unemployment equilibria on labor flow networks.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--threads", type=int, default=None,
                       help="cap internal parallelism (results never depend on it)")

    p = sub.add_parser("generate", help="generate a network and write its edge list")
    p.add_argument("--topology", required=True,
                   choices=["regular", "binomial", "pareto"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mean-degree", type=float, required=True)
    p.add_argument("--seed", type=_uint64, default=0)
    add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve the steady state / equilibrium on a network")
    p.add_argument("--edges", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--mode", choices=["endogenous", "exogenous"],
                   default="endogenous")
    p.add_argument("--w", type=float, default=None,
                   help="exogenous wage (overrides the parameter file)")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="agent-level Monte Carlo at the equilibrium policy")
    p.add_argument("--edges", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--mode", choices=["endogenous", "exogenous"],
                   default="endogenous")
    p.add_argument("--w", type=float, default=None)
    p.add_argument("--h", type=float, default=None,
                   help="uniform hiring policy override (skips the solve)")
    p.add_argument("--periods", type=int, required=True)
    p.add_argument("--burnin", type=int, default=None,
                   help="default: 10%% of periods")
    p.add_argument("--seed", type=_uint64, default=0)
    add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="Beveridge sweep over hiring costs")
    p.add_argument("--edges", default=None)
    p.add_argument("--topology", default=None,
                   choices=["regular", "binomial", "pareto"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mean-degree", type=float, default=None)
    p.add_argument("--params", required=True)
    p.add_argument("--c-min", type=float, required=True)
    p.add_argument("--c-max", type=float, required=True)
    p.add_argument("--c-steps", type=int, required=True)
    p.add_argument("--seed", type=_uint64, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("calibrate", help="estimate lambda from a panel and fit v to a target")
    p.add_argument("--panel", required=True, help="CSV with header firm,L,O")
    p.add_argument("--edges", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--target-u", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-5)
    add_common(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("counterfactual",
                       help="aggregate unemployment vs the homogeneous-network counterfactual")
    p.add_argument("--edges", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_counterfactual)

    return parser


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_net(path):
    edges, n = read_edge_list(path)
    return build_from_edge_list(edges, n)


def _solver_opts(args, extras) -> dict:
    opts = {}
    tol = getattr(args, "tol", None)
    max_iter = getattr(args, "max_iter", None)
    opts["tol"] = tol if tol is not None else float(extras.get("tol", 1e-10))
    opts["max_iter"] = int(max_iter if max_iter is not None
                           else extras.get("max_iter", 500))
    if "damping" in extras:
        opts["damping"] = float(extras["damping"])
    return opts


def cmd_generate(args) -> int:
    out = _outdir(args)
    net = generate_topology(args.topology, args.n, args.mean_degree, args.seed)
    edges_path = out / "edges.txt"
    write_edge_list(net, edges_path)
    write_run_json(out, "generate",
                   {"topology": args.topology, "n": args.n,
                    "mean_degree": args.mean_degree,
                    "realized_n": net.n,
                    "realized_mean_degree": net.mean_degree},
                   args.seed, [edges_path])
    return EXIT_OK


def cmd_solve(args) -> int:
    out = _outdir(args)
    net = _load_net(args.edges)
    params, extras = load_params(args.params)
    opts = _solver_opts(args, extras)
    if args.mode == "exogenous":
        w = args.w if args.w is not None else extras.get("w")
        if w is None:
            raise ValueError("exogenous mode requires w (flag --w or parameter file)")
        sol = solve_exogenous(net, params, float(w))
    else:
        sol = solve_equilibrium(net, params, **opts)
    csv_path = out / "solution.csv"
    json_path = out / "solution.json"
    write_solution_csv(csv_path, net, sol.h_star, sol.steady,
                       w=sol.w_star, ell=sol.ell, profit=sol.profit)
    write_solution_sidecar(json_path, sol.steady, params, mode=args.mode,
                           iterations=sol.iterations, residual=sol.residual,
                           corner_count=sol.corner_count)
    write_run_json(out, "solve",
                   {"edges": str(args.edges), "mode": args.mode,
                    "params": params.to_dict(), **opts},
                   None, [csv_path, json_path])
    return EXIT_OK


def _policy_for_simulation(args, net, params, extras, opts):
    if args.h is not None:
        return np.full(net.n, float(args.h)), "uniform"
    if args.mode == "exogenous":
        w = args.w if args.w is not None else extras.get("w")
        if w is None:
            raise ValueError("exogenous mode requires w (flag --w or parameter file)")
        return np.full(net.n, optimal_hiring_exogenous(params, float(w))), "exogenous"
    return solve_equilibrium(net, params, **opts).h_star, "endogenous"


def cmd_simulate(args) -> int:
    out = _outdir(args)
    net = _load_net(args.edges)
    params, extras = load_params(args.params)
    opts = _solver_opts(args, extras)
    h, policy_mode = _policy_for_simulation(args, net, params, extras, opts)
    burnin = args.burnin if args.burnin is not None else args.periods // 10
    sim = simulate(net, params, h, args.periods, burnin, args.seed)
    sim_path = out / "sim.csv"
    series_path = out / "u_series.csv"
    write_sim_csv(sim_path, sim)
    write_u_series_csv(series_path, sim)
    write_run_json(out, "simulate",
                   {"edges": str(args.edges), "params": params.to_dict(),
                    "policy_mode": policy_mode, "periods": args.periods,
                    "burnin": burnin, "backend": sim.backend},
                   args.seed, [sim_path, series_path])
    return EXIT_OK


def cmd_sweep(args) -> int:
    out = _outdir(args)
    params, extras = load_params(args.params)
    opts = _solver_opts(args, extras)
    opts.pop("damping", None)
    if args.edges is not None:
        net = _load_net(args.edges)
        topology = "custom"
    else:
        if args.topology is None or args.n is None or args.mean_degree is None:
            raise ValueError("sweep needs either --edges or --topology with "
                             "--n and --mean-degree")
        net = generate_topology(args.topology, args.n, args.mean_degree, args.seed)
        topology = args.topology
    if args.c_steps < 1 or not (0 < args.c_min <= args.c_max < 1):
        raise ValueError("need 0 < c-min <= c-max < 1 and c-steps >= 1")
    c_values = np.linspace(args.c_min, args.c_max, args.c_steps)
    points = beveridge_sweep(net, params, c_values, topology=topology,
                             seed=args.seed, **opts)
    sweep_path = out / "sweep.csv"
    write_sweep_csv(sweep_path, points)
    write_run_json(out, "sweep",
                   {"topology": topology, "params": params.to_dict(),
                    "c_min": args.c_min, "c_max": args.c_max,
                    "c_steps": args.c_steps, **opts},
                   args.seed, [sweep_path])
    if points and not any(p.converged for p in points):
        raise NoConvergence("no sweep point converged",
                            residual=points[-1].residual,
                            iterations=opts["max_iter"])
    return EXIT_OK


def cmd_calibrate(args) -> int:
    out = _outdir(args)
    panel = FirmPanel.from_csv(args.panel)
    net = _load_net(args.edges)
    params, _ = load_params(args.params)
    result = run_calibration(panel, net, params, args.target_u, tol=args.tol)
    path = out / "calibration.json"
    write_calibration_json(path, result)
    write_run_json(out, "calibrate",
                   {"panel": str(args.panel), "edges": str(args.edges),
                    "params": params.to_dict(), "target_u": args.target_u,
                    "tol": args.tol},
                   None, [path])
    return EXIT_OK


def cmd_counterfactual(args) -> int:
    from .calibration import counterfactual_regular

    out = _outdir(args)
    net = _load_net(args.edges)
    params, extras = load_params(args.params)
    opts = _solver_opts(args, extras)
    sol = solve_equilibrium(net, params, **opts)
    u_model = sol.steady.u_agg
    u_cf = counterfactual_regular(params, net.mean_degree, net.n)
    path = out / "counterfactual.json"
    write_json(path, {"u_model": u_model, "u_counterfactual": u_cf,
                      "gap": u_model - u_cf, "k_bar": net.mean_degree,
                      "n": net.n, "params": params.to_dict()})
    write_run_json(out, "counterfactual",
                   {"edges": str(args.edges), "params": params.to_dict(), **opts},
                   None, [path])
    return EXIT_OK


def _emit_error(err: Exception) -> None:
    payload = {"type": type(err).__name__, "message": str(err)}
    details = getattr(err, "details", None)
    if details:
        clean = {}
        for key, value in details.items():
            try:
                json.dumps(value)
            except TypeError:
                value = str(value)
            clean[key] = value
        payload["details"] = clean
    if isinstance(err, json.JSONDecodeError):
        payload["details"] = {"line": err.lineno, "column": err.colno}
    print(json.dumps({"error": payload}), file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None):
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(args.threads)
    try:
        return args.func(args)
    except _NUMERICAL_ERRORS as err:
        _emit_error(err)
        return EXIT_NUMERICAL
    except LaborFlowError as err:
        _emit_error(err)
        return EXIT_INPUT
    except (ValueError, KeyError) as err:
        _emit_error(err)
        return EXIT_INPUT
    except OSError as err:
        _emit_error(err)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
