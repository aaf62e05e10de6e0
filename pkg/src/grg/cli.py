"""Command-line entry point.

Subcommands:

* ``grg sample``     one graph, summary JSON (optional edge-list dump)
* ``grg experiment`` a configured T1 / T2 / LLN run with full report
* ``grg audit``      audit-term trajectories over the configured n grid
* ``grg lemma1``     truncated-moment ratio table for a heavy-tailed model
* ``grg report``     re-render summary and figures from a finished run

Exit codes: 0 success, 1 configuration/usage error, 2 numerical or I/O
failure.  The environment variable GRG_SEED overrides the config master
seed (an explicit ``--seed`` flag wins over both).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .errors import (
    BracketingError,
    ConfigError,
    DomainError,
    GrgError,
    HypothesisError,
    IntegrationError,
    ParameterError,
    SizeError,
    UnsupportedModelError,
)
from .graph import sample_graph_fast, sample_graph_naive, write_edge_list
from .limits import ExperimentConfig, run_experiment
from .report import config_from_dict, config_to_dict, emit_report
from .weights import (
    lemma1_ratio_check,
    model_from_config,
    model_to_config,
    sample_weights,
    truncated_first_moment_tail,
    truncated_second_moment,
)

__all__ = ["main"]

_CONFIG_ERRORS = (
    ConfigError,
    ParameterError,
    DomainError,
    UnsupportedModelError,
    SizeError,
    HypothesisError,
)
_NUMERIC_ERRORS = (IntegrationError, BracketingError, FloatingPointError)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage errors through exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def parse_model_spec(spec: str):
    """Parse 'kind:key=value,key=value' into a weight model."""
    kind, _, rest = spec.partition(":")
    params = {"kind": kind.strip()}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ParameterError(f"bad model parameter {item!r} (expected key=value)")
            try:
                params[key.strip()] = float(value)
            except ValueError:
                raise ParameterError(f"bad numeric value in {item!r}") from None
    return model_from_config(params)


def _load_config(path: str, args) -> ExperimentConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    config = config_from_dict(raw)
    seed = _resolve_seed(args, config.master_seed)
    overrides = {}
    if seed != config.master_seed:
        overrides["master_seed"] = seed
    if getattr(args, "sampler", None):
        overrides["sampler"] = args.sampler
    if overrides:
        config = ExperimentConfig(**{**config.__dict__, **overrides})
    return config


def _resolve_seed(args, fallback: int) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("GRG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"GRG_SEED must be an integer, got {env!r}") from None
    return fallback


def _cmd_sample(args) -> int:
    model = parse_model_spec(args.model)
    seed = _resolve_seed(args, 0)
    weights = sample_weights(model, args.n, seed)
    sampler = sample_graph_fast if args.sampler == "fast" else sample_graph_naive
    graph = sampler(weights, seed + 1 if args.graph_seed is None else args.graph_seed,
                    store_edges=args.edges is not None)
    summary = {
        "model": model_to_config(model),
        "n": graph.n,
        "seed": seed,
        "sampler": graph.sampler_tag,
        "edge_count": graph.edge_count,
        "edges_per_vertex": graph.edge_count / graph.n,
        "L_n": weights.sum_l,
        "sum_sq": weights.sum_sq,
        "degree_min": int(graph.degrees.min()),
        "degree_max": int(graph.degrees.max()),
        "degree_mean": float(graph.degrees.mean()),
        "candidates_examined": graph.candidates_examined,
    }
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    if args.edges:
        write_edge_list(graph, args.edges)
    return 0


def _cmd_experiment(args) -> int:
    config = _load_config(args.config, args)
    if config.theorem == "AUDIT":
        raise ConfigError("use 'grg audit' for audit configs")
    result = run_experiment(config, threads=args.threads)
    emit_report(result, args.out)
    sys.stdout.write(f"report written to {args.out}\n")
    return 0


def _cmd_audit(args) -> int:
    config = _load_config(args.config, args)
    if config.theorem != "AUDIT":
        raise ConfigError("audit config must set theorem='AUDIT'")
    result = run_experiment(config, threads=args.threads)
    emit_report(result, args.out)
    sys.stdout.write(f"audit written to {args.out}\n")
    return 0


def _cmd_lemma1(args) -> int:
    model = parse_model_spec(args.model)
    x_grid = [float(x) for x in args.x.split(",") if x.strip()]
    if not x_grid:
        raise ConfigError("need at least one x value")
    ratios = lemma1_ratio_check(model, x_grid)
    lines = [
        "x,trunc_second_exact,tail_first_exact,"
        "ratio_second,ratio_tail_karamata,ratio_tail_alt"
    ]
    flagged = False
    for r in ratios:
        e2 = truncated_second_moment(model, r.x)
        e1 = truncated_first_moment_tail(model, r.x)
        lines.append(
            f"{r.x!r},{e2!r},{e1!r},{r.ratio_second!r},"
            f"{r.ratio_tail_karamata!r},{r.ratio_tail_alt!r}"
        )
        if abs(r.ratio_tail_alt - 1.0) > 0.05:
            flagged = True
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    if flagged:
        sys.stderr.write(
            "note: the alternative tail constant (2-alpha)/(alpha-1) disagrees with "
            "the exact tail moment; the Karamata constant alpha/(alpha-1) is the "
            "consistent one (see ratio_tail_alt).\n"
        )
    return 0


def _cmd_report(args) -> int:
    run_dir = Path(args.run)
    manifest_path = run_dir / "manifest.json"
    if not manifest_path.exists():
        raise ConfigError(f"no manifest.json under {run_dir}")
    manifest = json.loads(manifest_path.read_text())
    config = config_from_dict(manifest["config"])
    result = run_experiment(config, threads=args.threads)
    out = args.out or args.run
    emit_report(result, out)
    sys.stdout.write(f"report regenerated in {out}\n")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="grg", description="generalized random graph experiments")
    parser.add_argument("--version", action="version", version=f"grg {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("sample", parents=[], help="sample one graph", add_help=True)
    p.add_argument("--model", required=True, help="e.g. pareto:alpha=1.5,xm=1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, help="weight seed (GRG_SEED overrides)")
    p.add_argument("--graph-seed", type=int, default=None, help="defaults to seed+1")
    p.add_argument("--sampler", choices=("naive", "fast"), default="fast")
    p.add_argument("--out", default=None, help="summary JSON path (stdout if omitted)")
    p.add_argument("--edges", default=None, help="optional edge-list dump path")
    p.set_defaults(handler=_cmd_sample)

    for name, handler, help_text in (
        ("experiment", _cmd_experiment, "run a configured limit-law experiment"),
        ("audit", _cmd_audit, "run a configured proof audit"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON experiment config")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override master seed")
        p.add_argument("--sampler", choices=("naive", "fast"), default=None)
        p.add_argument("--threads", type=int, default=0, help="worker processes (0 = auto)")
        p.set_defaults(handler=handler)

    p = sub.add_parser("lemma1", help="truncated-moment ratio table")
    p.add_argument("--model", required=True, help="heavy-tailed model spec")
    p.add_argument("--x", required=True, help="comma-separated truncation points")
    p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p.set_defaults(handler=_cmd_lemma1)

    p = sub.add_parser("report", help="re-render an existing run directory")
    p.add_argument("--run", required=True, help="directory containing manifest.json")
    p.add_argument("--out", default=None, help="target directory (defaults to --run)")
    p.add_argument("--threads", type=int, default=0)
    p.set_defaults(handler=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "handler", None):
            parser.print_usage(sys.stderr)
            return 1
        if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 0:
            raise ConfigError("--threads must be >= 0")
        return args.handler(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except _CONFIG_ERRORS as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 1
    except _NUMERIC_ERRORS as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"i/o failure: {exc}\n")
        return 2
    except GrgError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
