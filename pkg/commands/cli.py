"""
CLI entry point for nsTrust.

    python -m commands.cli solve --problem l1box --norm inf --mode bundle --out run/
    python -m commands.cli certify --problem plant.json --task wc-alpha --method grid
    python -m commands.cli dragon --gamma 0.9 --Gamma 1 --emit-polygon --out run/

Exit codes: 0 on success (status critical, certified), 2 on a non-critical outcome
(inner stall, budget exhaustion, refuted certificate), 1 on errors.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from dotenv import load_dotenv
from pydantic import ValidationError

from app.bench.dragon import (RHO_B_LIMIT_HIGH, dragon_polygon, dragon_problem, dragon_quantities, dragon_rho)
from app.certify.decision import stability_decision
from app.certify.grid import grid_certify
from app.certify.zheng import MONTE_CARLO, zheng_maximize
from app.control.problems import solve_distance_to_instability
from app.components.problems.plant_problem import PLANT_TASKS
from app.core.exceptions import ConfigurationError, CoreException
from app.core.problem import ProblemInstance
from app.core.settings import SolverConfig
from app.factory import ApplicationFactory
from app.solver.trust_region import CRITICAL, SolveResult
from app.utils.logging_setup import CROSS_ICON, TICK_ICON, get_logger, setup_logging
from app.utils.serialization import build_report, write_report, write_rows_csv, write_trajectory_csv

# Load environment variables (CONFIG_DIR)
load_dotenv()

logger = get_logger("commands.cli")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CRITICAL = 2

SOLVER_FLAGS = ("gamma", "gamma_tilde", "Gamma", "theta", "M", "R0", "seed", "mode", "norm",
                "max_serious", "trial_mode", "recycle")
# levels of the classical dragon trajectory written to the polygon CSV
MAX_POLYGON_LEVELS = 50
DRAGON_FLOOR_TOL = 1e-4


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=["bundle", "classical"], help="Cutting planes or single-plane classical scheme")
    parser.add_argument("--norm", choices=["inf", "l1", "l2_single_plane"], help="Trust-region norm")
    parser.add_argument("--gamma", type=float, help="Acceptance threshold")
    parser.add_argument("--gamma-tilde", dest="gamma_tilde", type=float, help="Cut/shrink threshold")
    parser.add_argument("--Gamma", type=float, help="Radius doubling threshold")
    parser.add_argument("--theta", type=float, help="Share of the model decrease a randomized trial step must keep")
    parser.add_argument("--M", type=float, help="Length bound of randomized trial steps, in tangent-step units")
    parser.add_argument("--R0", type=float, help="Initial trust-region radius")
    parser.add_argument("--seed", type=int, help="Seed of every randomized path")
    parser.add_argument("--max-serious", dest="max_serious", type=int, help="Serious-step budget")
    parser.add_argument("--trial-mode", dest="trial_mode", choices=["deterministic", "randomized"])
    parser.add_argument("--recycle", action="store_const", const=True, help="Re-anchor global minorant planes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nstr", description="Nonsmooth trust-region bundle solver and robustness toolkit")
    parser.add_argument("--config-dir", dest="config_dir", help="Configuration directory (default $CONFIG_DIR or config)")
    parser.add_argument("--log-level", dest="log_level", help="Override the configured logging level")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Run the trust-region bundle solver")
    solve.add_argument("--problem", required=True, help="Built-in problem id or problem/plant file")
    solve.add_argument("--task", choices=["min", "wc-alpha", "wc-hinf", "distance"], help="Task for plant problems")
    solve.add_argument("--model", help="First-order model id (default: the problem's default model)")
    solve.add_argument("--c", type=float, help="Penalty constant of the distance task")
    solve.add_argument("--t-max", dest="t_max", type=float, help="Upper bound on t in the distance task")
    solve.add_argument("--threads", type=int, help="Accepted for symmetry with certify; the solver is sequential")
    solve.add_argument("--out", help="Directory for report.json and trace.csv")
    _add_solver_flags(solve)

    certify = sub.add_parser("certify", help="Certify a robustness result globally")
    certify.add_argument("--problem", required=True, help="Plant file or problem file naming a plant")
    certify.add_argument("--task", choices=["wc-alpha", "wc-hinf", "distance"], default="wc-alpha")
    certify.add_argument("--method", choices=["zheng", "grid"], default="zheng")
    certify.add_argument("--dstar", type=float, help="Distance estimate to certify (distance task)")
    certify.add_argument("--gamma-conf", dest="gamma_conf", type=float, help="Margin of the stability decision")
    certify.add_argument("--samples-per-dim", dest="samples_per_dim", type=int, help="Monte-Carlo samples per dimension")
    certify.add_argument("--grid-step", dest="grid_step", type=float, help="Spacing of the grid oracle")
    certify.add_argument("--warm-start", dest="warm_start", action="store_true",
                         help="Start Zheng's iteration at the solver's lower bound")
    certify.add_argument("--threads", type=int, help="Sampling threads")
    certify.add_argument("--out", help="Directory for report.json")
    _add_solver_flags(certify)

    dragon = sub.add_parser("dragon", help="Classical versus bundle mode on the dragon function")
    dragon.add_argument("--a", type=float, default=11.0, help="Level of the start point")
    dragon.add_argument("--x1", type=float, help="Start position on the level set (default (a/11)/sqrt(2))")
    dragon.add_argument("--gamma", type=float, default=0.9, help="Acceptance threshold, in (5/13, 1)")
    dragon.add_argument("--gamma-tilde", dest="gamma_tilde", type=float, help="Cut threshold (default (1+gamma)/2)")
    dragon.add_argument("--Gamma", type=float, default=1.0, help="Radius doubling threshold")
    dragon.add_argument("--R0", type=float, help="Initial radius")
    dragon.add_argument("--max-serious", dest="max_serious", type=int, default=500)
    dragon.add_argument("--bundle-max-serious", dest="bundle_max_serious", type=int, default=300)
    dragon.add_argument("--seed", type=int, default=0)
    dragon.add_argument("--emit-polygon", dest="emit_polygon", action="store_true",
                        help="Write the level polygons of the classical trajectory")
    dragon.add_argument("--out", help="Directory for trajectories, polygons and report.json")
    return parser


def _solver_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: getattr(args, key, None) for key in SOLVER_FLAGS if getattr(args, key, None) is not None}


def _emit(report: Dict[str, Any], out: Optional[str], name: str = "report.json") -> None:
    print(json.dumps(report, indent=2))
    if out:
        write_report(report, str(Path(out) / name))


def _run(app, problem: ProblemInstance, spec, args, cfg: SolverConfig):
    """Solve a problem; the distance task goes through the penalty escalation loop."""
    model_id = getattr(args, "model", None) or spec.model
    if problem.task == "distance":
        plant = problem.oracle.inner.plant
        result = solve_distance_to_instability(
            plant, cfg, c=problem.metadata["c"], t_max=problem.metadata["t_max"],
            model_factory=lambda p: app.build_model(p, model_id))
        extra = {"d_star": result.d_star, "delta": result.delta, "alpha": result.alpha, "c": result.c,
                 "verdict": result.verdict, "escalations": result.escalations}
        return result.solve, extra
    result = app.solve(problem, app.build_model(problem, model_id), cfg)
    extra = {"message": result.message}
    if problem.task in ("wc-alpha", "wc-hinf"):
        extra["worst_case_lower_bound"] = -result.f_final
    return result, extra


def cmd_solve(app, args: argparse.Namespace) -> int:
    """
    Solve a problem and emit the report (and trace CSV with --out).

    Returns:
        int: 0 on status critical, 2 on inner stall or budget exhaustion
    """
    problem, spec = app.load_problem(args.problem, {"task": args.task, "c": args.c, "t_max": args.t_max})
    cfg = app.solver_config(spec.solver, _solver_overrides(args))
    result, extra = _run(app, problem, spec, args, cfg)

    report = build_report("solve", task=problem.task, problem=problem.name, mode=cfg.mode, norm=cfg.norm,
                          status=result.status, x_final=result.x_final, f_final=result.f_final,
                          serious_steps=result.serious_steps, null_steps=result.null_steps, seed=cfg.seed,
                          config=cfg.model_dump(), extra=extra)
    _emit(report, args.out)
    if args.out:
        result.trace.to_csv(str(Path(args.out) / "trace.csv"))
    return EXIT_OK if result.status == CRITICAL else EXIT_NOT_CRITICAL


def cmd_certify(app, args: argparse.Namespace) -> int:
    """
    Compare the solver's worst-case lower bound with a global certifier, or run the
    stability decision for a distance estimate.

    Returns:
        int: 0 when the run completes (certified for the distance task), 2 when refuted
    """
    options = app.certify_options({"gamma_conf": args.gamma_conf, "samples_per_dim": args.samples_per_dim,
                                   "grid_step": args.grid_step, "threads": args.threads, "seed": args.seed})
    problem, spec = app.load_problem(args.problem, {"task": args.task})
    if problem.task not in PLANT_TASKS:
        raise ConfigurationError(f"certify needs a plant problem, got task '{problem.task}' for {problem.name}")
    cfg = app.solver_config(spec.solver, _solver_overrides(args))
    plant = problem.oracle.inner.plant if problem.task == "distance" else problem.oracle.plant
    extra: Dict[str, Any] = {"method": args.method, "certify": options}

    if problem.task == "distance":
        d_star = args.dstar
        if d_star is None:
            result, solved = _run(app, problem, spec, args, cfg)
            d_star = solved["d_star"]
            extra["solve"] = solved
        decision = stability_decision(plant, d_star, gamma_conf=options["gamma_conf"], method=args.method,
                                      seed=options["seed"], samples_per_dim=options["samples_per_dim"],
                                      var_tol=options["var_tol"], threads=options["threads"])
        extra.update({"d_star": d_star, "alpha_under": decision.alpha_under, "alpha_over": decision.alpha_over,
                      "gamma_conf": decision.gamma_conf})
        status = decision.describe()
        exit_code = EXIT_OK if decision.certified else EXIT_NOT_CRITICAL
        report = build_report("certify", task=problem.task, problem=problem.name, mode=cfg.mode, norm=cfg.norm,
                              status=status, seed=options["seed"], config=cfg.model_dump(), extra=extra)
        _emit(report, args.out)
        return exit_code

    result, solved = _run(app, problem, spec, args, cfg)
    lower_bound = -result.f_final
    lower, upper = problem.feasible.bounds()

    def worst_case(delta: np.ndarray) -> float:
        return -problem.oracle.f(delta)

    if args.method == "grid":
        grid = grid_certify(worst_case, lower, upper, step=options["grid_step"],
                            refine_step=options["grid_step"] / 10.0)
        value, argmax = grid.max_value, grid.argmax
        extra["evaluations"] = grid.evaluations
    else:
        zheng = zheng_maximize(worst_case, lower, upper, samples_per_dim=options["samples_per_dim"],
                               var_tol=options["var_tol"], seed=options["seed"], mode=MONTE_CARLO,
                               alpha0=lower_bound if args.warm_start else None, threads=options["threads"])
        value, argmax = zheng.alpha, zheng.argbest
        extra.update({"best_value": zheng.best_value, "history": zheng.history, "std_errors": zheng.std_errors,
                      "sweeps": zheng.iterations})
    extra.update({"solver_lower_bound": lower_bound, "certifier_value": value, "certifier_argmax": argmax,
                  "gap": value - lower_bound})
    report = build_report("certify", task=problem.task, problem=problem.name, mode=cfg.mode, norm=cfg.norm,
                          status=result.status, x_final=result.x_final, f_final=result.f_final,
                          serious_steps=result.serious_steps, null_steps=result.null_steps, seed=options["seed"],
                          config=cfg.model_dump(), extra=extra)
    _emit(report, args.out)
    logger.info(f"{TICK_ICON} solver bound {lower_bound:.10g} vs certifier {value:.10g} (gap {value - lower_bound:.3e})")
    return EXIT_OK


def _dragon_levels(result: SolveResult, f0: float) -> List[float]:
    levels = [f0] + [r.f for r in result.trace.serious()]
    return [a for a in levels if a > 0.0][:MAX_POLYGON_LEVELS]


def cmd_dragon(app, args: argparse.Namespace) -> int:
    """
    Run classical and bundle modes from the same dragon start and compare.

    Returns:
        int: 0
    """
    problem = dragon_problem(args.a, args.x1)
    a, x1 = args.a, float(problem.x0[0])
    table = dragon_quantities(a, x1, args.gamma)
    table.update({"rho_at_r_A": dragon_rho(a, x1, table["r_A"]), "rho_at_r_B": dragon_rho(a, x1, table["r_B"])})

    gamma_tilde = args.gamma_tilde if args.gamma_tilde is not None else 0.5 * (1.0 + args.gamma)
    common = {"gamma": args.gamma, "gamma_tilde": gamma_tilde, "Gamma": args.Gamma, "R0": args.R0, "seed": args.seed}
    classical_cfg = app.solver_config(None, {**common, "mode": "classical", "norm": "l2_single_plane",
                                             "max_serious": args.max_serious})
    bundle_cfg = app.solver_config(None, {**common, "mode": "bundle", "norm": "inf",
                                          "max_serious": args.bundle_max_serious})

    classical = app.solve(problem, app.build_model(problem, "standard"), classical_cfg)
    bundle = app.solve(problem, app.build_model(problem, "convex_self"), bundle_cfg)

    at_floor = bundle.f_final <= -100.0 + DRAGON_FLOOR_TOL
    if classical.status == CRITICAL:
        classical_line = f"classical: stopped with a criticality certificate at {classical.x_final.tolist()}"
    else:
        classical_line = (f"classical: stalled at non-critical point "
                          f"x={classical.x_final.tolist()} f={classical.f_final!r}")
    if args.gamma <= RHO_B_LIMIT_HIGH:
        classical_line += " (gamma <= 198/234: no stall guarantee)"
    bundle_line = ("bundle: reached global minimum -100" if at_floor
                   else f"bundle: stopped at f={bundle.f_final!r} ({bundle.status})")
    verdict = f"{classical_line} / {bundle_line}"

    if args.out:
        out = Path(args.out)
        write_trajectory_csv(str(out / "dragon_classical.csv"), classical.trace, problem.x0, a)
        write_trajectory_csv(str(out / "dragon_bundle.csv"), bundle.trace, problem.x0, a)
        if args.emit_polygon:
            rows = [[level, i + 1, vx, vy] for level in _dragon_levels(classical, a)
                    for i, (vx, vy) in enumerate(dragon_polygon(level).tolist())]
            write_rows_csv(str(out / "dragon_polygon.csv"), ["level", "vertex", "x1", "x2"], rows)
    elif args.emit_polygon:
        for level in _dragon_levels(classical, a):
            print(f"level {level!r}: " + " ".join(f"({vx!r}, {vy!r})" for vx, vy in dragon_polygon(level).tolist()))

    extra = {
        "analytic": table,
        "classical": {"status": classical.status, "x_final": classical.x_final, "f_final": classical.f_final,
                      "serious_steps": classical.serious_steps, "null_steps": classical.null_steps},
        "bundle": {"status": bundle.status, "x_final": bundle.x_final, "f_final": bundle.f_final,
                   "serious_steps": bundle.serious_steps, "null_steps": bundle.null_steps},
        "verdict": verdict,
    }
    report = build_report("dragon", task="min", problem="dragon", mode="classical+bundle", norm=None,
                          status=bundle.status, x_final=bundle.x_final, f_final=bundle.f_final,
                          serious_steps=bundle.serious_steps, null_steps=bundle.null_steps, seed=args.seed,
                          config={"classical": classical_cfg.model_dump(), "bundle": bundle_cfg.model_dump()},
                          extra=extra)
    _emit(report, args.out)
    print(verdict)
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "certify": cmd_certify, "dragon": cmd_dragon}


def main(argv: Optional[List[str]] = None) -> int:
    """Main function for the CLI application."""
    args = build_parser().parse_args(argv)
    try:
        app = ApplicationFactory.create_app(args.config_dir)
        if args.log_level:
            setup_logging(args.log_level)
        return COMMANDS[args.command](app, args)
    except (CoreException, ValidationError) as e:
        logger.error(f"{CROSS_ICON} {args.command} failed: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
