"""Result persistence: CSV, summary JSON, SVG figures, run manifest.

Payload files (result.csv, audit.csv, summary.json, the SVGs) are byte
stable: re-running the same config and master seed reproduces them
exactly.  Timestamps and wall-clock numbers live only in manifest.json.

CSV schema (fixed): ``n,replication,statistic,edge_count,L_n``.  For
the stable-limit experiment the ``statistic`` column holds the edge
statistic; the weight-sum statistic is recoverable from the L_n column.
Floats are written with repr, which round-trips.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError
from .limits import (
    AuditResult,
    ExperimentConfig,
    GaussianLimitResult,
    LlnResult,
    StableLimitResult,
)
from .weights import model_to_config

__all__ = ["RunManifest", "emit_report", "config_to_dict", "config_from_dict"]

SCHEMA_VERSION = 1
RESULT_CSV_HEADER = "n,replication,statistic,edge_count,L_n"
AUDIT_CSV_HEADER = (
    "n,replication,t,c_n,a_n,selfloop_bound,i1_bound,i3_bound,t_a,t_b,t_c,t_d"
)


@dataclass(eq=False)
class RunManifest:
    config: dict
    artifact_version: str
    master_seed: int
    wall_clock_seconds: dict
    outputs: list[str]
    created_unix: float

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "artifact_version": self.artifact_version,
            "master_seed": self.master_seed,
            "wall_clock_seconds": self.wall_clock_seconds,
            "outputs": self.outputs,
            "created_unix": self.created_unix,
        }


def config_to_dict(config: ExperimentConfig) -> dict:
    return {
        "model": model_to_config(config.model),
        "n_grid": [int(n) for n in config.n_grid],
        "replications": config.replications,
        "master_seed": config.master_seed,
        "theorem": config.theorem,
        "sampler": config.sampler,
        "t_values": list(config.t_values),
    }


def config_from_dict(raw: dict) -> ExperimentConfig:
    from .weights import model_from_config

    try:
        model = model_from_config(raw["model"])
        return ExperimentConfig(
            model=model,
            n_grid=tuple(int(n) for n in raw["n_grid"]),
            replications=int(raw["replications"]),
            master_seed=int(raw["master_seed"]),
            theorem=str(raw["theorem"]),
            sampler=str(raw.get("sampler", "fast")),
            t_values=tuple(float(t) for t in raw.get("t_values", [1.0])),
        )
    except KeyError as exc:
        raise ConfigError(f"config is missing required field {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config: {exc}") from None


def _json_dump(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="ascii")


def _write_result_csv(path: Path, rows) -> None:
    lines = [RESULT_CSV_HEADER]
    for n, rep, stat, edge_count, l_n in rows:
        lines.append(f"{n},{rep},{stat!r},{edge_count},{l_n!r}")
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


# ----------------------------------------------------------------- SVG

_SVG_W, _SVG_H, _MARGIN = 640, 420, 45


def _svg_open(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<text x="{_SVG_W / 2}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
    ]


def _scaler(lo, hi, out_lo, out_hi):
    span = hi - lo if hi > lo else 1.0

    def to_px(v):
        return out_lo + (v - lo) / span * (out_hi - out_lo)

    return to_px


def _write_histogram_svg(path: Path, values: np.ndarray, title: str, overlay=None,
                         vline: float | None = None) -> None:
    """Density-normalized histogram bars plus an optional polyline overlay."""
    values = np.asarray(values, dtype=float)
    lo, hi = float(values.min()), float(values.max())
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    bins = min(60, max(10, int(math.sqrt(len(values)))))
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi), density=True)
    ymax = float(counts.max()) if counts.max() > 0 else 1.0
    if overlay is not None:
        ymax = max(ymax, float(np.max(overlay[1])))
    x_px = _scaler(lo, hi, _MARGIN, _SVG_W - _MARGIN)
    y_px = _scaler(0.0, 1.05 * ymax, _SVG_H - _MARGIN, 30.0)
    parts = _svg_open(title)
    for k, c in enumerate(counts):
        x0, x1 = x_px(edges[k]), x_px(edges[k + 1])
        y0 = y_px(float(c))
        parts.append(
            f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{x1 - x0:.2f}" '
            f'height="{(_SVG_H - _MARGIN) - y0:.2f}" fill="#9ecae1" stroke="#3182bd" stroke-width="0.5"/>'
        )
    if overlay is not None:
        ox, oy = overlay
        pts = " ".join(f"{x_px(float(x)):.2f},{y_px(float(y)):.2f}" for x, y in zip(ox, oy))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#de2d26" stroke-width="1.5"/>')
    if vline is not None and lo <= vline <= hi:
        parts.append(
            f'<line x1="{x_px(vline):.2f}" y1="30" x2="{x_px(vline):.2f}" '
            f'y2="{_SVG_H - _MARGIN}" stroke="#de2d26" stroke-width="1.5" stroke-dasharray="5,4"/>'
        )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_SVG_H - _MARGIN}" x2="{_SVG_W - _MARGIN}" '
        f'y2="{_SVG_H - _MARGIN}" stroke="black" stroke-width="1"/>'
    )
    for frac in (0.0, 0.5, 1.0):
        v = lo + frac * (hi - lo)
        parts.append(
            f'<text x="{x_px(v):.2f}" y="{_SVG_H - _MARGIN + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{v:.3g}</text>'
        )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="ascii")


def _write_qq_svg(path: Path, a: np.ndarray, b: np.ndarray, title: str,
                  xlabel: str, ylabel: str) -> None:
    """Quantile-quantile polyline of two equally sized samples, with y = x."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    lo = float(min(a[0], b[0]))
    hi = float(max(a[-1], b[-1]))
    x_px = _scaler(lo, hi, _MARGIN, _SVG_W - _MARGIN)
    y_px = _scaler(lo, hi, _SVG_H - _MARGIN, 30.0)
    parts = _svg_open(title)
    parts.append(
        f'<line x1="{x_px(lo):.2f}" y1="{y_px(lo):.2f}" x2="{x_px(hi):.2f}" '
        f'y2="{y_px(hi):.2f}" stroke="#999999" stroke-width="1" stroke-dasharray="4,4"/>'
    )
    pts = " ".join(f"{x_px(float(x)):.2f},{y_px(float(y)):.2f}" for x, y in zip(a, b))
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#3182bd" stroke-width="1.5"/>')
    parts.append(
        f'<text x="{_SVG_W / 2}" y="{_SVG_H - 8}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>'
    )
    parts.append(
        f'<text x="14" y="{_SVG_H / 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 14 {_SVG_H / 2})">{ylabel}</text>'
    )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="ascii")


# ------------------------------------------------------------- reports


def _normal_pdf_overlay(values: np.ndarray):
    lo, hi = float(values.min()), float(values.max())
    xs = np.linspace(lo, hi, 200)
    return xs, np.exp(-0.5 * xs * xs) / math.sqrt(2 * math.pi)


def emit_report(result, out_dir) -> RunManifest:
    """Write result.csv / audit.csv, summary.json, figures and manifest.

    Returns the manifest, which lists every emitted file.  Raises
    ConfigError before touching the filesystem if the result is empty.
    """
    t0 = time.perf_counter()
    out = Path(out_dir)
    if isinstance(result, GaussianLimitResult):
        payload = _emit_gaussian
    elif isinstance(result, StableLimitResult):
        payload = _emit_stable
    elif isinstance(result, LlnResult):
        payload = _emit_lln
    elif isinstance(result, AuditResult):
        payload = _emit_audit
    else:
        raise ConfigError(f"cannot report on {type(result).__name__}")
    _check_nonempty(result)
    out.mkdir(parents=True, exist_ok=True)
    outputs = payload(result, out)
    manifest = RunManifest(
        config=config_to_dict(result.config),
        artifact_version=__version__,
        master_seed=result.config.master_seed,
        wall_clock_seconds={
            "experiment": round(result.elapsed_seconds, 6),
            "report": round(time.perf_counter() - t0, 6),
        },
        outputs=sorted(outputs + ["manifest.json"]),
        created_unix=time.time(),
    )
    _json_dump(out / "manifest.json", manifest.to_dict())
    return manifest


def _check_nonempty(result) -> None:
    runs = getattr(result, "runs", None) or getattr(result, "rows", None) or getattr(
        result, "points", None
    )
    if not runs:
        raise ConfigError("empty result: nothing to report")


def _emit_gaussian(result: GaussianLimitResult, out: Path) -> list[str]:
    rows = []
    for run in result.runs:
        for rep, (stat, ec, l_n) in enumerate(
            zip(run.sample.values, run.edge_counts, run.weight_sums)
        ):
            rows.append((run.n, rep, float(stat), int(ec), float(l_n)))
    _write_result_csv(out / "result.csv", rows)
    outputs = ["result.csv", "summary.json"]
    summary = {
        "schema_version": SCHEMA_VERSION,
        "kind": "T1",
        "config": config_to_dict(result.config),
        "results": [
            {
                "n": run.n,
                "ks_d": run.ks.d_stat,
                "ks_p": run.ks.p_value,
                "n_effective": run.ks.n_effective,
                "mean": float(run.sample.values.mean()),
                "std": float(run.sample.values.std()),
            }
            for run in result.runs
        ],
        "trend": {
            "metric": "ks_d",
            "values": result.ks_d_trend,
            "nonincreasing": result.trend_nonincreasing,
        },
    }
    _json_dump(out / "summary.json", summary)
    for run in result.runs:
        name = f"hist_{run.n}.svg"
        _write_histogram_svg(
            out / name,
            run.sample.values,
            f"normalized edge count, n={run.n} (normal overlay)",
            overlay=_normal_pdf_overlay(run.sample.values),
        )
        outputs.append(name)
    return outputs


def _emit_stable(result: StableLimitResult, out: Path) -> list[str]:
    rows = []
    for run in result.runs:
        for rep, (stat, ec, l_n) in enumerate(
            zip(run.edge_sample.values, run.edge_counts, run.weight_sums)
        ):
            rows.append((run.n, rep, float(stat), int(ec), float(l_n)))
    _write_result_csv(out / "result.csv", rows)
    outputs = ["result.csv", "summary.json"]
    summary = {
        "schema_version": SCHEMA_VERSION,
        "kind": "T2",
        "config": config_to_dict(result.config),
        "results": [
            {
                "n": run.n,
                "a_n": run.a_n,
                "ks_d": run.ks.d_stat,
                "ks_p": run.ks.p_value,
                "n_effective": run.ks.n_effective,
                "edge_stat_median": float(np.median(run.edge_sample.values)),
                "weight_stat_median": float(np.median(run.weight_sample.values)),
            }
            for run in result.runs
        ],
        "trend": {
            "metric": "ks_d",
            "values": result.ks_d_trend,
            "nonincreasing": result.trend_nonincreasing,
        },
    }
    _json_dump(out / "summary.json", summary)
    for run in result.runs:
        name = f"hist_{run.n}.svg"
        _write_qq_svg(
            out / name,
            run.weight_sample.values,
            run.edge_sample.values,
            f"weight-sum vs edge statistic quantiles, n={run.n}",
            "weight-sum statistic",
            "edge statistic",
        )
        outputs.append(name)
    return outputs


def _emit_lln(result: LlnResult, out: Path) -> list[str]:
    rows = []
    for row in result.rows:
        counts = result.edge_counts[row.n]
        sums = result.weight_sums[row.n]
        for rep, (ec, l_n) in enumerate(zip(counts, sums)):
            rows.append((row.n, rep, float(ec / row.n), int(ec), float(l_n)))
    _write_result_csv(out / "result.csv", rows)
    outputs = ["result.csv", "summary.json"]
    summary = {
        "schema_version": SCHEMA_VERSION,
        "kind": "LLN",
        "config": config_to_dict(result.config),
        "results": [
            {
                "n": row.n,
                "mean_ratio": row.mean_ratio,
                "std_ratio": row.std_ratio,
                "target": row.target,
                "abs_error": abs(row.mean_ratio - row.target),
            }
            for row in result.rows
        ],
    }
    _json_dump(out / "summary.json", summary)
    for row in result.rows:
        name = f"hist_{row.n}.svg"
        _write_histogram_svg(
            out / name,
            result.edge_counts[row.n] / row.n,
            f"edges per vertex, n={row.n} (dashed line: EW/2)",
            vline=row.target,
        )
        outputs.append(name)
    return outputs


def _emit_audit(result: AuditResult, out: Path) -> list[str]:
    lines = [AUDIT_CSV_HEADER]
    n_t = len(result.config.t_values)
    for point in result.points:
        for k, term in enumerate(point.terms):
            rep = k // n_t
            lines.append(
                f"{term.n},{rep},{term.t!r},{term.c_n!r},{term.a_n!r},"
                f"{term.selfloop_bound!r},{term.i1_bound!r},{term.i3_bound!r},"
                f"{term.t_a!r},{term.t_b!r},{term.t_c!r},{term.t_d!r}"
            )
    (out / "audit.csv").write_text("\n".join(lines) + "\n", encoding="ascii")
    summary = {
        "schema_version": SCHEMA_VERSION,
        "kind": "AUDIT",
        "config": config_to_dict(result.config),
        "results": [
            {
                "n": point.n,
                "c_n": point.c_n,
                "a_n": point.a_n,
                "medians": {str(t): med for t, med in point.medians().items()},
                "pair_moment_small": point.pair_moment_small,
                "pair_moment_large": point.pair_moment_large,
            }
            for point in result.points
        ],
        "median_trends_decreasing": {
            str(t): trend for t, trend in result.median_trends().items()
        },
        "pair_moment_trends_decreasing": result.pair_moment_trends(),
        "remainder_coeff_bound": 0.5,
    }
    _json_dump(out / "summary.json", summary)
    return ["audit.csv", "summary.json"]
