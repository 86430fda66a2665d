"""
Command-line interface.

Subcommands: solve, classify, limit, admissible, stability, bifurcate, batch.
Exit codes: 0 success, 1 domain error (non-admissible seed, out-of-range parameters,
nothing to plot), 2 usage error.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import pandas as pd

from .admissibility import check_admissible
from .bifurcation import sweep
from .classifier import analyze
from .config import (
    get_default_mode,
    get_default_plot_options,
    get_default_settings,
    load_user_config,
)
from .errors import RecurrenceError
from .exporter import (
    batch_to_summary_dataframe,
    emit_csv,
    emit_svg,
    export_json,
    export_orbit_csv,
    export_orbit_json,
    periodic_point_to_dict,
    probe_to_dataframe,
    result_to_dict,
    stability_to_dict,
    verdict_to_dict,
)
from .limits import limit_periodic_point
from .models import (
    BehaviorKind,
    Orbit,
    Params,
    SeedPair,
    SweepConfig,
    Termination,
    TerminationKind,
)
from .numerics import Mode, to_scalar
from .orbit import closed_form_orbit, iterate
from .stability import periodic_stability, periodic_stability_probe, zero_stability

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Missing or malformed command-line input."""


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[m.value for m in Mode], help="Arithmetic mode")
    common.add_argument("--tol", type=float, help="Error target for limits")
    common.add_argument("--params", help='Coefficients "a,b" (rationals as p/q allowed)')
    common.add_argument("--seed", help='Initial values "x_-1,x_0" (use --seed=-1,2 for a leading minus)')
    common.add_argument("--config", help="YAML file with option defaults (flags win)")
    common.add_argument("--out", help="Write the result here instead of stdout")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="WARNING",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all subcommands."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="recurrence",
        description="Solve, classify and sweep x_{n+1} = x_{n-1} / (a + b*x_n*x_{n-1}).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="Compute an orbit")
    solve.add_argument("--n-max", type=int, help="Last index to compute")
    solve.add_argument("--format", choices=["csv", "json"], default="csv")
    solve.add_argument("--closed-form", action="store_true", help="Evaluate through the closed form")

    sub.add_parser("classify", parents=[common], help="Classify asymptotic behavior")
    sub.add_parser("limit", parents=[common], help="Certified limiting 2-periodic point")

    admissible = sub.add_parser("admissible", parents=[common], help="Check seed admissibility")
    admissible.add_argument("--n-cap", type=int, help="Float-mode scan limit")

    stability = sub.add_parser("stability", parents=[common], help="Stability verdicts and probe")
    stability.add_argument("--p", help="x-coordinate of a 2-periodic point")
    stability.add_argument("--q", help="y-coordinate of a 2-periodic point")
    stability.add_argument("--deltas", help="Comma-separated probe perturbations")
    stability.add_argument("--probe-n-max", type=int)
    stability.add_argument("--workers", type=int)

    bifurcate = sub.add_parser("bifurcate", parents=[common], help="Bifurcation sweep over a")
    bifurcate.add_argument("--b", type=float)
    bifurcate.add_argument("--a-min", type=float)
    bifurcate.add_argument("--a-max", type=float)
    bifurcate.add_argument("--step", type=float)
    bifurcate.add_argument("--iters", type=int)
    bifurcate.add_argument("--keep-from", type=int)
    bifurcate.add_argument("--workers", type=int)
    bifurcate.add_argument("--svg", help="Also draw the diagram to this SVG file")
    bifurcate.add_argument("--y-clip", type=float, help="Drop markers with |x| above this")
    bifurcate.add_argument("--title")

    batch = sub.add_parser("batch", parents=[common], help="Classify every row of a CSV")
    batch.add_argument("--input", help="CSV with columns a,b,x_prev,x0")

    return parser


def _option(
    args: argparse.Namespace,
    user: Dict[str, Any],
    name: str,
    default: Any = None,
    cast: Optional[Callable[[Any], Any]] = None,
) -> Any:
    value = getattr(args, name, None)
    if value is None:
        value = user.get(name, default)
    # YAML 1.1 reads "1e-10" as a string
    if value is not None and cast is not None:
        return cast(value)
    return value


def _mode(args, user) -> Mode:
    return Mode(_option(args, user, "mode", get_default_mode()))


def _params(args, user, mode: Mode) -> Params:
    text = _option(args, user, "params")
    if text is None:
        raise UsageError("--params is required")
    return Params.parse(str(text), mode)


def _seed(args, user, mode: Mode) -> SeedPair:
    text = _option(args, user, "seed")
    if text is None:
        raise UsageError("--seed is required")
    return SeedPair.parse(str(text), mode)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_solve(args, user) -> int:
    mode = _mode(args, user)
    params, seed = _params(args, user, mode), _seed(args, user, mode)
    n_max = int(_option(args, user, "n_max", get_default_settings().n_max))

    if _option(args, user, "closed_form", False):
        orbit = Orbit(
            params=params,
            seed=seed,
            terms=closed_form_orbit(params, seed, n_max),
            termination=Termination(TerminationKind.COMPLETED),
        )
    else:
        orbit = iterate(params, seed, n_max)

    if _option(args, user, "format", "csv") == "json":
        _emit(export_orbit_json(orbit), args.out)
    else:
        _emit(export_orbit_csv(orbit), args.out)
    return EXIT_OK


def cmd_classify(args, user) -> int:
    mode = _mode(args, user)
    params, seed = _params(args, user, mode), _seed(args, user, mode)
    result = analyze(params, seed, tol=_option(args, user, "tol", cast=float))
    _emit(export_json(result_to_dict(result)), args.out)
    if result.behavior.kind == BehaviorKind.NOT_ADMISSIBLE:
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_limit(args, user) -> int:
    mode = _mode(args, user)
    params, seed = _params(args, user, mode), _seed(args, user, mode)
    point = limit_periodic_point(params, seed, tol=_option(args, user, "tol", cast=float))
    _emit(export_json(periodic_point_to_dict(point)), args.out)
    return EXIT_OK


def cmd_admissible(args, user) -> int:
    mode = _mode(args, user)
    params, seed = _params(args, user, mode), _seed(args, user, mode)
    verdict = check_admissible(params, seed, n_cap=_option(args, user, "n_cap", cast=int))
    _emit(export_json(verdict_to_dict(verdict)), args.out)
    return EXIT_OK if verdict.is_admissible else EXIT_DOMAIN


def _float_list(text: Any) -> List[float]:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(v) for v in str(text).split(",") if v.strip()]


def cmd_stability(args, user) -> int:
    mode = _mode(args, user)
    params = _params(args, user, mode)
    report: Dict[str, Any] = {"zero": stability_to_dict(zero_stability(params))}

    p, q = _option(args, user, "p"), _option(args, user, "q")
    if (p is None) != (q is None):
        raise UsageError("--p and --q must be given together")
    if p is not None:
        p, q = to_scalar(str(p), mode), to_scalar(str(q), mode)
        report["periodic"] = stability_to_dict(periodic_stability(params, p, q))
        if 0 < abs(params.a) < 1:
            deltas = _option(args, user, "deltas")
            probe = periodic_stability_probe(
                params,
                float(p),
                float(q),
                deltas=_float_list(deltas) if deltas is not None else None,
                n_max=_option(args, user, "probe_n_max", cast=int),
                workers=int(_option(args, user, "workers", 1)),
            )
            report["probe"] = {
                "empirical": probe.empirical,
                "shrinks_with_delta": probe.shrinks_with_delta,
                "rows": probe_to_dataframe(probe).to_dict(orient="records"),
            }

    _emit(export_json(report), args.out)
    return EXIT_OK


def cmd_bifurcate(args, user) -> int:
    settings = get_default_settings()
    a_min, a_max = _option(args, user, "a_min"), _option(args, user, "a_max")
    b, seed_text = _option(args, user, "b"), _option(args, user, "seed")
    if a_min is None or a_max is None:
        raise UsageError("--a-min and --a-max are required")
    if b is None or seed_text is None:
        raise UsageError("--b and --seed are required")

    seed = SeedPair.parse(str(seed_text), Mode.FLOAT)
    cfg = SweepConfig(
        a_min=float(a_min),
        a_max=float(a_max),
        step=float(_option(args, user, "step", settings.sweep_step)),
        b=float(b),
        seed=(seed.x_prev, seed.x_zero),
        iters=int(_option(args, user, "iters", settings.sweep_iters)),
        keep_from=int(_option(args, user, "keep_from", settings.sweep_keep_from)),
    )
    samples = sweep(cfg, workers=int(_option(args, user, "workers", settings.workers)))

    csv_bytes = emit_csv(samples)
    _emit(csv_bytes.decode("utf-8"), args.out)

    svg_path = _option(args, user, "svg")
    if svg_path:
        options = get_default_plot_options()
        y_clip = _option(args, user, "y_clip")
        if y_clip is not None:
            options.y_clip = float(y_clip)
        options.title = _option(args, user, "title", "") or ""
        emit_svg(samples, options, sink=svg_path)
    return EXIT_OK


def cmd_batch(args, user) -> int:
    path = _option(args, user, "input")
    if path is None:
        raise UsageError("--input is required")
    mode = _mode(args, user)
    tol = _option(args, user, "tol", cast=float)

    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = {"a", "b", "x_prev", "x0"} - set(frame.columns)
    if missing:
        raise UsageError(f"Input CSV lacks columns: {', '.join(sorted(missing))}")

    rows = []
    for raw in frame.to_dict(orient="records"):
        try:
            params = Params.from_values(raw["a"], raw["b"], mode)
            seed = SeedPair.from_values(raw["x_prev"], raw["x0"], mode)
            rows.append({"input": raw, "result": analyze(params, seed, tol=tol)})
        except (RecurrenceError, ValueError) as e:
            logger.debug("Batch row %s failed: %s", raw, e)
            rows.append({"input": raw, "error": str(e)})

    summary = batch_to_summary_dataframe(rows)
    _emit(summary.to_csv(index=False, lineterminator="\n"), args.out)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, Dict[str, Any]], int]] = {
    "solve": cmd_solve,
    "classify": cmd_classify,
    "limit": cmd_limit,
    "admissible": cmd_admissible,
    "stability": cmd_stability,
    "bifurcate": cmd_bifurcate,
    "batch": cmd_batch,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and return its exit code.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        0 on success, 1 on domain errors, 2 on usage errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.info("Running %s", args.command)

    try:
        user = load_user_config(args.config) if args.config else {}
        return COMMANDS[args.command](args, user)
    except RecurrenceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (UsageError, ValueError, OSError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
