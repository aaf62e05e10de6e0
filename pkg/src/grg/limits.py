"""Experiment orchestration: limit-law runs and the proof audit.

Three Monte Carlo experiments and one deterministic audit:

* ``run_gaussian_limit`` -- the centered edge count over
  sqrt(n*(2*EW + Var W)) against the standard normal (finite second
  moment required).
* ``run_stable_limit`` -- for heavy tails with index alpha in (1, 2),
  the edge statistic (2*E_n - n*EW)/a_n against the weight-sum
  statistic (L_n - n*EW)/a_n from the same replications; both converge
  to the same stable law, so a two-sample KS needs no knowledge of its
  scale or skewness.
* ``run_lln`` -- E_n/n against EW/2.
* ``run_proof_audit`` -- the deterministic bound terms that control the
  characteristic-function expansion of the edge count, evaluated on
  sampled weight vectors; all of them must drift to zero as n grows.

Replications are independent tasks seeded by ``derive_seed`` from the
master seed and reduced in replication order, so results are identical
for any worker count.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError, HypothesisError, SizeError
from .graph import sample_graph_fast, sample_graph_naive
from .seeding import derive_seed
from .stats import KsResult, ks_one_sample, ks_two_sample, normal_cdf
from .weights import (
    WeightModel,
    WeightVector,
    analytic_moments,
    compute_norming,
    sample_weights,
    tail_params,
)

__all__ = [
    "ExperimentConfig",
    "NormalizedSample",
    "AuditTerms",
    "GaussianLimitResult",
    "StableLimitResult",
    "LlnResult",
    "AuditResult",
    "normal_limit_statistic",
    "stable_limit_statistic",
    "run_gaussian_limit",
    "run_stable_limit",
    "run_lln",
    "run_proof_audit",
    "run_experiment",
    "proof_audit",
    "mc_pair_moments",
]

EXPERIMENT_KINDS = ("T1", "T2", "LLN", "AUDIT")
AUDIT_MAX_N = 20_000
_AUDIT_TERM_NAMES = ("selfloop_bound", "i1_bound", "i3_bound", "t_a", "t_b", "t_c", "t_d")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one experiment bit for bit."""

    model: WeightModel
    n_grid: tuple[int, ...]
    replications: int
    master_seed: int
    theorem: str  # one of EXPERIMENT_KINDS
    sampler: str = "fast"
    t_values: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        if self.theorem not in EXPERIMENT_KINDS:
            raise ConfigError(f"theorem must be one of {EXPERIMENT_KINDS}, got {self.theorem!r}")
        if self.sampler not in ("naive", "fast"):
            raise ConfigError(f"sampler must be 'naive' or 'fast', got {self.sampler!r}")
        if not self.n_grid or any(int(n) < 2 for n in self.n_grid):
            raise ConfigError("n_grid must be non-empty with every n >= 2")
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        if self.theorem in ("T1", "T2") and self.replications < 100:
            raise ConfigError("limit-law experiments need at least 100 replications")
        if self.theorem == "AUDIT" and not self.t_values:
            raise ConfigError("audit needs at least one t value")


@dataclass(frozen=True, eq=False)
class NormalizedSample:
    """One normalized statistic per replication at a fixed n."""

    n: int
    values: np.ndarray
    norming_center: float
    norming_scale: float


@dataclass(frozen=True)
class AuditTerms:
    """Bound terms of the edge-count characteristic-function expansion.

    The double sums run over all ordered pairs including the diagonal.
    ``selfloop_bound`` controls the diagonal correction, ``i1_bound``
    and ``i3_bound`` the cubic and remainder terms of the expansion
    (with the remainder coefficient bounded by 1/2), and t_a..t_d are
    the four pair-sum terms that must vanish for the heavy-tailed limit:

        t_a = (1/a_n)   * sum W_i^2 / L
        t_b = (1/a_n^2) * sum_ij W_i W_j / (L + W_i W_j)
        t_c = (1/a_n)   * sum_ij W_i^2 W_j^2 / (L (L + W_i W_j))
        t_d = (1/a_n^2) * sum_ij W_i^2 W_j^2 / (L + W_i W_j)^2
    """

    n: int
    t: float
    c_n: float
    a_n: float
    selfloop_bound: float
    i1_bound: float
    i3_bound: float
    t_a: float
    t_b: float
    t_c: float
    t_d: float
    remainder_coeff_bound: float = 0.5


def normal_limit_statistic(edge_count, n: int, ew: float, var_w: float):
    """(2*E_n - n*EW) / sqrt(n*(2*EW + Var W)); affine in the edge count."""
    denom_sq = n * (2.0 * ew + var_w)
    if not (denom_sq > 0):
        raise DomainError(f"degenerate denominator n*(2EW+VarW) = {denom_sq}")
    out = (2.0 * np.asarray(edge_count, dtype=float) - n * ew) / math.sqrt(denom_sq)
    return float(out) if out.ndim == 0 else out


def stable_limit_statistic(edge_count, n: int, ew: float, a_n: float):
    """(2*E_n - n*EW) / a_n; affine in the edge count."""
    if not (a_n > 0):
        raise DomainError(f"norming constant must be positive, got {a_n}")
    out = (2.0 * np.asarray(edge_count, dtype=float) - n * ew) / a_n
    return float(out) if out.ndim == 0 else out


def _edge_stats_one(args):
    model, n, sampler_tag, master_seed, rep = args
    wv = sample_weights(model, n, derive_seed(master_seed, 2 * rep))
    sampler = sample_graph_fast if sampler_tag == "fast" else sample_graph_naive
    gs = sampler(wv, derive_seed(master_seed, 2 * rep + 1))
    return gs.edge_count, wv.sum_l


def _map_ordered(fn, args_list, threads: int):
    if threads == 1 or len(args_list) < 2:
        return [fn(a) for a in args_list]
    workers = (os.cpu_count() or 1) if threads == 0 else threads
    chunk = max(1, len(args_list) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args_list, chunksize=chunk))


def _replicate_edges(config: ExperimentConfig, n: int, threads: int):
    args = [
        (config.model, n, config.sampler, config.master_seed, rep)
        for rep in range(config.replications)
    ]
    pairs = _map_ordered(_edge_stats_one, args, threads)
    edge_counts = np.array([p[0] for p in pairs], dtype=np.int64)
    weight_sums = np.array([p[1] for p in pairs], dtype=float)
    return edge_counts, weight_sums


@dataclass(eq=False)
class GaussianLimitRun:
    n: int
    sample: NormalizedSample
    edge_counts: np.ndarray
    weight_sums: np.ndarray
    ks: KsResult


@dataclass(eq=False)
class GaussianLimitResult:
    config: ExperimentConfig
    runs: list[GaussianLimitRun]
    elapsed_seconds: float = 0.0

    @property
    def ks_d_trend(self) -> list[float]:
        return [r.ks.d_stat for r in self.runs]

    @property
    def trend_nonincreasing(self) -> bool:
        d = self.ks_d_trend
        return all(b <= a for a, b in zip(d, d[1:]))


def run_gaussian_limit(config: ExperimentConfig, threads: int = 1) -> GaussianLimitResult:
    """KS of the normalized edge count against the standard normal, per n."""
    if config.theorem != "T1":
        raise ConfigError(f"config is for {config.theorem}, not T1")
    t0 = time.perf_counter()
    runs = []
    for n in config.n_grid:
        n = int(n)
        mom = analytic_moments(config.model, n)
        if not math.isfinite(mom.ew2):
            raise HypothesisError("the normal limit needs a finite second moment")
        edge_counts, weight_sums = _replicate_edges(config, n, threads)
        values = normal_limit_statistic(edge_counts, n, mom.ew, mom.var_w)
        sample = NormalizedSample(
            n, values, n * mom.ew, math.sqrt(n * (2.0 * mom.ew + mom.var_w))
        )
        runs.append(
            GaussianLimitRun(n, sample, edge_counts, weight_sums, ks_one_sample(values, normal_cdf))
        )
    return GaussianLimitResult(config, runs, time.perf_counter() - t0)


@dataclass(eq=False)
class StableLimitRun:
    n: int
    a_n: float
    weight_sample: NormalizedSample
    edge_sample: NormalizedSample
    edge_counts: np.ndarray
    weight_sums: np.ndarray
    ks: KsResult


@dataclass(eq=False)
class StableLimitResult:
    config: ExperimentConfig
    runs: list[StableLimitRun]
    elapsed_seconds: float = 0.0

    @property
    def ks_d_trend(self) -> list[float]:
        return [r.ks.d_stat for r in self.runs]

    @property
    def trend_nonincreasing(self) -> bool:
        d = self.ks_d_trend
        return all(b <= a for a, b in zip(d, d[1:]))


def run_stable_limit(config: ExperimentConfig, threads: int = 1) -> StableLimitResult:
    """Two-sample KS between the weight-sum and edge statistics, per n.

    Both statistics are computed from the same replication so their
    dependence is preserved; the KS compares the two collections as
    samples of the common limit law.
    """
    if config.theorem != "T2":
        raise ConfigError(f"config is for {config.theorem}, not T2")
    tp = tail_params(config.model)
    if tp is None or not (1.0 < tp.alpha < 2.0):
        raise HypothesisError("the stable limit needs a heavy tail with alpha in (1, 2)")
    t0 = time.perf_counter()
    ew = analytic_moments(config.model).ew
    runs = []
    for n in config.n_grid:
        n = int(n)
        a_n = compute_norming(config.model, n)
        edge_counts, weight_sums = _replicate_edges(config, n, threads)
        wstat = (weight_sums - n * ew) / a_n
        estat = stable_limit_statistic(edge_counts, n, ew, a_n)
        runs.append(
            StableLimitRun(
                n,
                a_n,
                NormalizedSample(n, wstat, n * ew, a_n),
                NormalizedSample(n, estat, n * ew, a_n),
                edge_counts,
                weight_sums,
                ks_two_sample(wstat, estat),
            )
        )
    return StableLimitResult(config, runs, time.perf_counter() - t0)


@dataclass(frozen=True)
class LlnRow:
    n: int
    mean_ratio: float
    std_ratio: float
    target: float


@dataclass(eq=False)
class LlnResult:
    config: ExperimentConfig
    rows: list[LlnRow]
    edge_counts: dict[int, np.ndarray] = field(default_factory=dict)
    weight_sums: dict[int, np.ndarray] = field(default_factory=dict)
    elapsed_seconds: float = 0.0


def run_lln(config: ExperimentConfig, threads: int = 1) -> LlnResult:
    """Mean and spread of E_n/n per n; the target is EW/2."""
    if config.theorem != "LLN":
        raise ConfigError(f"config is for {config.theorem}, not LLN")
    t0 = time.perf_counter()
    rows = []
    counts: dict[int, np.ndarray] = {}
    sums: dict[int, np.ndarray] = {}
    for n in config.n_grid:
        n = int(n)
        mom = analytic_moments(config.model, n)
        if not math.isfinite(mom.ew):
            raise HypothesisError("the edge-density law needs a finite mean")
        edge_counts, weight_sums = _replicate_edges(config, n, threads)
        ratios = edge_counts / n
        rows.append(LlnRow(n, float(ratios.mean()), float(ratios.std()), mom.ew / 2.0))
        counts[n] = edge_counts
        sums[n] = weight_sums
    return LlnResult(config, rows, counts, sums, time.perf_counter() - t0)


def proof_audit(weights: WeightVector, t: float, c_n: float, a_n: float) -> AuditTerms:
    """Evaluate the expansion bound terms exactly as written, O(n^2).

    Diagonal pairs i = j are included in every double sum; the diagonal
    correction also appears separately as ``selfloop_bound``.  The
    normings are passed in explicitly so degenerate models stay
    auditable with whatever normings make sense for them.
    """
    n = weights.n
    if n > AUDIT_MAX_N:
        raise SizeError(f"audit double sums are capped at n={AUDIT_MAX_N}")
    if not (c_n > 0 and a_n > 0):
        raise DomainError("normings must be positive")
    w = weights.values
    l_n = weights.sum_l
    sum_sq = weights.sum_sq
    abs_t = abs(t)
    selfloop = 2.0 * abs_t / c_n * sum_sq / l_n
    i1 = abs_t**3 * l_n / (12.0 * c_n**3)
    i3 = t * t / (c_n * c_n) * (sum_sq / n) ** 2 * (n / l_n) ** 2
    sum_b = sum_c = sum_d = 0.0
    block = max(1, min(2048, (1 << 22) // n))
    for lo in range(0, n, block):
        prod = w[lo : lo + block, None] * w[None, :]
        ratio = prod / (l_n + prod)
        sum_b += float(ratio.sum())
        sum_c += float((prod * ratio).sum()) / l_n
        sum_d += float((ratio * ratio).sum())
    return AuditTerms(
        n=n,
        t=t,
        c_n=c_n,
        a_n=a_n,
        selfloop_bound=selfloop,
        i1_bound=i1,
        i3_bound=i3,
        t_a=sum_sq / l_n / a_n,
        t_b=sum_b / (a_n * a_n),
        t_c=sum_c / a_n,
        t_d=sum_d / (a_n * a_n),
    )


def mc_pair_moments(
    model: WeightModel, n: int, a_n: float, seed: int, draws: int = 10**6
) -> tuple[float, float]:
    """Monte Carlo estimates of the two pair-moment vanishing terms,

        (1/a_n) * E[ W1^2 W2^2 ; W1 W2 <= n ]   and
        (n/a_n) * E[ W1 W2     ; W1 W2 >  n ].

    Use the same seed across an n-grid so the trend is read off common
    random numbers rather than independent noise.
    """
    rng = np.random.default_rng(seed & ((1 << 64) - 1))
    w1 = sample_weights(model, draws, int(rng.integers(0, 2**63))).values
    w2 = sample_weights(model, draws, int(rng.integers(0, 2**63))).values
    prod = w1 * w2
    small = prod <= n
    m_small = float(np.mean(np.where(small, prod * prod, 0.0))) / a_n
    m_large = n * float(np.mean(np.where(small, 0.0, prod))) / a_n
    return m_small, m_large


def _audit_one(args):
    model, n, master_seed, rep, t_values, c_n, a_n = args
    wv = sample_weights(model, n, derive_seed(master_seed, rep))
    return [proof_audit(wv, t, c_n, a_n) for t in t_values]


@dataclass(eq=False)
class AuditGridPoint:
    n: int
    c_n: float
    a_n: float
    terms: list[AuditTerms]  # replications x t_values, replication-major
    pair_moment_small: float
    pair_moment_large: float

    def medians(self) -> dict[float, dict[str, float]]:
        out: dict[float, dict[str, float]] = {}
        for t in sorted({term.t for term in self.terms}):
            at_t = [term for term in self.terms if term.t == t]
            out[t] = {
                name: float(np.median([getattr(term, name) for term in at_t]))
                for name in _AUDIT_TERM_NAMES
            }
        return out


@dataclass(eq=False)
class AuditResult:
    config: ExperimentConfig
    points: list[AuditGridPoint]
    elapsed_seconds: float = 0.0

    def median_trends(self) -> dict[float, dict[str, bool]]:
        """Whether each term's median strictly decreases along the n grid."""
        per_point = [p.medians() for p in self.points]
        out: dict[float, dict[str, bool]] = {}
        for t in per_point[0]:
            out[t] = {
                name: all(
                    a[t][name] > b[t][name] for a, b in zip(per_point, per_point[1:])
                )
                for name in _AUDIT_TERM_NAMES
            }
        return out

    def pair_moment_trends(self) -> dict[str, bool]:
        small = [p.pair_moment_small for p in self.points]
        large = [p.pair_moment_large for p in self.points]
        return {
            "pair_moment_small": all(a > b for a, b in zip(small, small[1:])),
            "pair_moment_large": all(a > b for a, b in zip(large, large[1:])),
        }


def run_proof_audit(config: ExperimentConfig, threads: int = 1) -> AuditResult:
    """Audit-term trajectories over the n grid, one weight draw per seed.

    Normings follow the heavy-tailed convention c_n = a_n / 2 because
    the audited expansion is only interesting when the variance is
    infinite; finite-variance audits should call :func:`proof_audit`
    directly with the gaussian-limit normings.
    """
    if config.theorem != "AUDIT":
        raise ConfigError(f"config is for {config.theorem}, not AUDIT")
    tp = tail_params(config.model)
    if tp is None or not (1.0 < tp.alpha < 2.0):
        raise HypothesisError("the audit orchestration needs a heavy tail with alpha in (1, 2)")
    t0 = time.perf_counter()
    pair_seed = derive_seed(config.master_seed, 0x5041)
    points = []
    for n in config.n_grid:
        n = int(n)
        a_n = compute_norming(config.model, n)
        c_n = 0.5 * a_n
        args = [
            (config.model, n, config.master_seed, rep, config.t_values, c_n, a_n)
            for rep in range(config.replications)
        ]
        terms: list[AuditTerms] = []
        for chunk in _map_ordered(_audit_one, args, threads):
            terms.extend(chunk)
        m_small, m_large = mc_pair_moments(config.model, n, a_n, pair_seed)
        points.append(AuditGridPoint(n, c_n, a_n, terms, m_small, m_large))
    return AuditResult(config, points, time.perf_counter() - t0)


def run_experiment(config: ExperimentConfig, threads: int = 1):
    """Dispatch a config to its runner."""
    runner = {
        "T1": run_gaussian_limit,
        "T2": run_stable_limit,
        "LLN": run_lln,
        "AUDIT": run_proof_audit,
    }[config.theorem]
    return runner(config, threads=threads)
