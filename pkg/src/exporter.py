"""
Export functionality for orbits, classifications and bifurcation sweeps.

Supports CSV (pandas), JSON and SVG (matplotlib) output. Exact values are written
as "p/q" strings, floats with 17 significant digits.
"""

import io
import json
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

import matplotlib
import pandas as pd
from matplotlib.figure import Figure

from .errors import NoPlottableData
from .models import (
    AdmissibilityVerdict,
    Behavior,
    BifurcationSample,
    ClassificationResult,
    Orbit,
    PeriodicPoint,
    PlotOptions,
    ProbeReport,
    SampleFlag,
    StabilityVerdict,
)
from .numerics import format_scalar

SWEEP_COLUMNS = ["a", "n", "x", "flag"]
SVG_SALT = "recurrence-bifurcation"


def scalar_to_json(value) -> Any:
    """Fractions become "p/q" strings, floats stay numbers, None stays None."""
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return float(value)


def _write(text: str, filepath: Optional[str]) -> None:
    if filepath:
        with open(filepath, "w", newline="") as f:
            f.write(text)


# -----------------------------------------------------------------------------
# Orbits
# -----------------------------------------------------------------------------


def orbit_to_dataframe(orbit: Orbit) -> pd.DataFrame:
    """
    Convert an Orbit to a two-column DataFrame.

    Args:
        orbit: Orbit object

    Returns:
        DataFrame with columns n and x (x rendered as text)
    """
    rows = [{"n": n, "x": format_scalar(x)} for n, x in orbit.indexed()]
    return pd.DataFrame(rows, columns=["n", "x"])


def export_orbit_csv(orbit: Orbit, filepath: str = None) -> str:
    """
    Export an orbit as "n,x" CSV.

    Returns:
        CSV string (also written to file if filepath provided)
    """
    csv_string = orbit_to_dataframe(orbit).to_csv(index=False, lineterminator="\n")
    _write(csv_string, filepath)
    return csv_string


def orbit_to_dict(orbit: Orbit) -> Dict[str, Any]:
    """Convert an Orbit to a dictionary."""
    return {
        "params": {
            "a": scalar_to_json(orbit.params.a),
            "b": scalar_to_json(orbit.params.b),
            "mode": orbit.params.mode.value,
        },
        "seed": {
            "x_prev": scalar_to_json(orbit.seed.x_prev),
            "x_zero": scalar_to_json(orbit.seed.x_zero),
        },
        "termination": {
            "kind": orbit.termination.kind.value,
            "step": orbit.termination.step,
            "label": orbit.termination.label,
        },
        "ill_conditioned": list(orbit.ill_conditioned),
        "terms": [{"n": n, "x": scalar_to_json(x)} for n, x in orbit.indexed()],
    }


def export_orbit_json(orbit: Orbit, filepath: str = None, indent: int = 2) -> str:
    """Export an orbit to JSON."""
    json_string = json.dumps(orbit_to_dict(orbit), indent=indent)
    _write(json_string, filepath)
    return json_string


# -----------------------------------------------------------------------------
# Classification
# -----------------------------------------------------------------------------


def verdict_to_dict(verdict: AdmissibilityVerdict) -> Dict[str, Any]:
    return {
        "verdict": verdict.label,
        "kind": verdict.kind.value,
        "singular": verdict.singular.value if verdict.singular else None,
        "step": verdict.step,
        "max_n_checked": verdict.max_n_checked,
    }


def behavior_to_dict(behavior: Behavior) -> Dict[str, Any]:
    """
    Convert a Behavior to a dictionary.

    Only the fields meaningful for the behavior's class are included.
    """
    data: Dict[str, Any] = {"kind": behavior.kind.value, "bounded": behavior.is_bounded}
    if behavior.p is not None:
        data["p"] = scalar_to_json(behavior.p)
        data["q"] = scalar_to_json(behavior.q)
        data["start_index"] = behavior.start_index
    if behavior.error is not None:
        data["error_bound"] = behavior.error
    if behavior.cycle:
        data["cycle"] = [scalar_to_json(c) for c in behavior.cycle]
    if behavior.divergent:
        data["divergent"] = [
            {"modulus": d.modulus, "residue": d.residue, "sign": d.sign}
            for d in behavior.divergent
        ]
    if behavior.vanishing:
        data["vanishing"] = [{"modulus": m, "residue": r} for m, r in behavior.vanishing]
    if behavior.step is not None:
        data["step"] = behavior.step
    if behavior.monotone_from is not None:
        data["monotone_from"] = behavior.monotone_from
    return data


def stability_to_dict(verdict: Optional[StabilityVerdict]) -> Optional[Dict[str, Any]]:
    if verdict is None:
        return None
    return {
        "target": verdict.target.value,
        "verdict": verdict.verdict.value,
        "eigenvalues": (
            [scalar_to_json(e) for e in verdict.eigenvalues]
            if verdict.eigenvalues is not None else None
        ),
        "note": verdict.note,
    }


def periodic_point_to_dict(point: PeriodicPoint) -> Dict[str, Any]:
    return {
        "p": scalar_to_json(point.p),
        "q": scalar_to_json(point.q),
        "period": point.period,
        "error_bound": point.error_bound,
        "tail_bound": scalar_to_json(point.tail_bound),
        "terms_used": point.k_used,
    }


def result_to_dict(result: ClassificationResult) -> Dict[str, Any]:
    """
    Convert a ClassificationResult to the classify report dictionary.

    Args:
        result: ClassificationResult object

    Returns:
        Dictionary with params, seed, alpha, admissibility, behavior and certificates
    """
    return {
        "params": {
            "a": scalar_to_json(result.params.a),
            "b": scalar_to_json(result.params.b),
            "mode": result.params.mode.value,
        },
        "seed": {
            "x_prev": scalar_to_json(result.seed.x_prev),
            "x_zero": scalar_to_json(result.seed.x_zero),
        },
        "alpha": scalar_to_json(result.alpha),
        "admissibility": verdict_to_dict(result.verdict),
        "behavior": behavior_to_dict(result.behavior),
        "certificates": {
            "pq_product": scalar_to_json(result.pq_product),
            "pq_target": scalar_to_json(result.pq_target),
            "tail_bound": scalar_to_json(result.behavior.tail_bound),
            "eigenvalues": (
                [scalar_to_json(e) for e in result.periodic_stability.eigenvalues]
                if result.periodic_stability is not None else None
            ),
            "zero_stability": stability_to_dict(result.zero_stability),
            "periodic_stability": stability_to_dict(result.periodic_stability),
        },
    }


def export_json(data: Dict[str, Any], filepath: str = None, indent: int = 2) -> str:
    """Serialize any report dictionary to JSON."""
    json_string = json.dumps(data, indent=indent)
    _write(json_string, filepath)
    return json_string


def probe_to_dataframe(report: ProbeReport) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "delta": row.delta,
                "sup_distance": row.sup_distance,
                "final_distance": row.final_distance,
                "termination": row.termination,
            }
            for row in report.rows
        ],
        columns=["delta", "sup_distance", "final_distance", "termination"],
    )


# -----------------------------------------------------------------------------
# Batch Export Functions
# -----------------------------------------------------------------------------


def batch_to_summary_dataframe(rows: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    """
    Convert batch classification rows to a summary DataFrame.

    Each row is either a ClassificationResult under "result" or an error message under
    "error", with the raw input under "input".

    Returns:
        One summary line per seed
    """
    records = []
    for row in rows:
        raw = row["input"]
        record = {
            "a": raw.get("a"),
            "b": raw.get("b"),
            "x_prev": raw.get("x_prev"),
            "x0": raw.get("x0"),
        }
        result = row.get("result")
        if result is None:
            record.update({
                "alpha": "-",
                "admissibility": "-",
                "behavior": f"error: {row.get('error')}",
                "p": None,
                "q": None,
                "error_bound": None,
            })
        else:
            behavior = result.behavior
            record.update({
                "alpha": format_scalar(result.alpha),
                "admissibility": result.verdict.label,
                "behavior": behavior.kind.value,
                "p": format_scalar(behavior.p) if behavior.p is not None else None,
                "q": format_scalar(behavior.q) if behavior.q is not None else None,
                "error_bound": behavior.error,
            })
        records.append(record)
    return pd.DataFrame(
        records,
        columns=["a", "b", "x_prev", "x0", "alpha", "admissibility", "behavior", "p", "q", "error_bound"],
    )


# -----------------------------------------------------------------------------
# Bifurcation sweeps
# -----------------------------------------------------------------------------


def samples_to_dataframe(samples: Sequence[BifurcationSample]) -> pd.DataFrame:
    """Convert sweep samples to a DataFrame ordered by (a, n)."""
    df = pd.DataFrame(
        [
            {"a": s.a, "n": s.n, "x": s.x, "flag": s.flag.value}
            for s in samples
        ],
        columns=SWEEP_COLUMNS,
    )
    df["a"] = df["a"].astype(float)
    df["n"] = df["n"].astype(int)
    df["x"] = df["x"].astype(float)
    return df.sort_values(["a", "n"], kind="mergesort").reset_index(drop=True)


def emit_csv(samples: Sequence[BifurcationSample], sink: Optional[str] = None) -> bytes:
    """
    Render sweep samples as CSV with header "a,n,x,flag".

    Floats use 17 significant digits and flagged rows leave x empty, so the output is
    byte-identical for identical samples.

    Args:
        samples: Sweep samples
        sink: Optional file path to write to

    Returns:
        CSV as UTF-8 bytes
    """
    df = samples_to_dataframe(samples)
    csv_string = df.to_csv(index=False, float_format="%.17g", na_rep="", lineterminator="\n")
    data = csv_string.encode("utf-8")
    if sink:
        with open(sink, "wb") as f:
            f.write(data)
    return data


def emit_svg(
    samples: Sequence[BifurcationSample],
    options: Optional[PlotOptions] = None,
    sink: Optional[str] = None,
) -> bytes:
    """
    Draw the bifurcation diagram (x against a) as SVG.

    Every retained ok sample within the y-clip range becomes one marker inside the
    group with id "samples".

    Raises:
        NoPlottableData: If there is no ok sample
    """
    options = options or PlotOptions()
    ok = [s for s in samples if s.flag == SampleFlag.OK and s.x is not None]
    if not ok:
        raise NoPlottableData("No finite samples to plot")

    if options.y_clip is not None:
        ok = [s for s in ok if abs(s.x) <= options.y_clip]

    with matplotlib.rc_context({"svg.hashsalt": SVG_SALT, "svg.fonttype": "none"}):
        fig = Figure(figsize=(options.width, options.height))
        ax = fig.subplots()
        ax.plot(
            [s.a for s in ok],
            [s.x for s in ok],
            linestyle="none",
            marker=".",
            markersize=options.marker_size,
            color="black",
            gid="samples",
        )
        ax.set_xlabel("a")
        ax.set_ylabel("x")
        if options.y_clip is not None:
            ax.set_ylim(-options.y_clip, options.y_clip)
        if options.title:
            ax.set_title(options.title)

        buffer = io.BytesIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})

    data = buffer.getvalue()
    if sink:
        with open(sink, "wb") as f:
            f.write(data)
    return data
