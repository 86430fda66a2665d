"""
Configuration loading.

Defaults live in config/defaults.yaml; a user YAML file passed with --config can
override any command-line option, and explicit flags override both.
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .models import PlotOptions, SolverSettings

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).parent.parent / "config" / "defaults.yaml"


@lru_cache(maxsize=4)
def load_config(path: Optional[Path] = None) -> dict:
    """
    Load the defaults file.

    Args:
        path: Alternative defaults file, mainly for tests

    Returns:
        Parsed YAML mapping, empty when the file is missing
    """
    config_path = Path(path) if path is not None else CONFIG_PATH
    if config_path.exists():
        with open(config_path) as f:
            return yaml.safe_load(f) or {}
    logger.debug("No defaults file at %s, using built-in defaults", config_path)
    return {}


def get_default_settings(path: Optional[Path] = None) -> SolverSettings:
    """Build SolverSettings from the defaults file."""
    config = load_config(path)
    base = SolverSettings()

    numerics = config.get("numerics", {})
    admissibility = config.get("admissibility", {})
    orbit = config.get("orbit", {})
    limit = config.get("limit", {})
    monotonicity = config.get("monotonicity", {})
    stability = config.get("stability", {})
    sweep = config.get("sweep", {})

    return SolverSettings(
        max_bits=int(numerics.get("max_bits", base.max_bits)),
        n_cap=int(admissibility.get("n_cap", base.n_cap)),
        float_tol=float(admissibility.get("float_tol", base.float_tol)),
        n_max=int(orbit.get("n_max", base.n_max)),
        ill_conditioned_ratio=float(orbit.get("ill_conditioned_ratio", base.ill_conditioned_ratio)),
        limit_tol=float(limit.get("tol", base.limit_tol)),
        k_cap=int(limit.get("k_cap", base.k_cap)),
        scan_cap=int(monotonicity.get("scan_cap", base.scan_cap)),
        eig_tol=float(stability.get("eig_tol", base.eig_tol)),
        probe_deltas=[float(d) for d in stability.get("probe_deltas", base.probe_deltas)],
        probe_n_max=int(stability.get("probe_n_max", base.probe_n_max)),
        sweep_step=float(sweep.get("step", base.sweep_step)),
        sweep_iters=int(sweep.get("iters", base.sweep_iters)),
        sweep_keep_from=int(sweep.get("keep_from", base.sweep_keep_from)),
        workers=int(sweep.get("workers", base.workers)),
    )


def get_default_plot_options(path: Optional[Path] = None) -> PlotOptions:
    """Build PlotOptions from the defaults file."""
    plot = load_config(path).get("plot", {})
    base = PlotOptions()
    y_clip = plot.get("y_clip", base.y_clip)
    return PlotOptions(
        y_clip=float(y_clip) if y_clip is not None else None,
        width=float(plot.get("width", base.width)),
        height=float(plot.get("height", base.height)),
        marker_size=float(plot.get("marker_size", base.marker_size)),
    )


def get_default_mode(path: Optional[Path] = None) -> str:
    return str(load_config(path).get("numerics", {}).get("mode", "exact"))


def load_user_config(path: str) -> Dict[str, Any]:
    """
    Load a user config file whose keys mirror the command-line flags.

    Dashes and underscores are interchangeable in keys (``a-min`` or ``a_min``).

    Raises:
        ValueError: If the file does not hold a mapping
    """
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"Config file {path} must contain key: value pairs")
    return {str(key).replace("-", "_"): value for key, value in data.items()}
