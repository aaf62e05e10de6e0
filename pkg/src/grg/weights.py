"""Vertex-weight models: sampling, moments, tail asymptotics, norming.

A weight model is a small frozen dataclass describing a positive law.
The module exposes:

* ``sample_weights`` -- n i.i.d. draws packaged as a :class:`WeightVector`
  with exactly-summed totals,
* ``analytic_moments`` -- closed-form mean / variance / second moment,
* ``truncated_second_moment`` / ``truncated_first_moment_tail`` -- the
  truncated moments E[W^2; W <= x] and E[W; W >= x],
* ``lemma1_ratio_check`` -- exact truncated moments against their
  regular-variation asymptotes,
* ``compute_norming`` -- the scaling sequence a_n defined as the root of
  a^2 = n * E[W^2; W <= a].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np
from scipy import integrate

from .errors import (
    BracketingError,
    IntegrationError,
    ParameterError,
    UnsupportedModelError,
)

__all__ = [
    "ConstantWeights",
    "ExponentialWeights",
    "LogNormalWeights",
    "GammaWeights",
    "ParetoWeights",
    "ParetoLogWeights",
    "WeightModel",
    "WeightVector",
    "TailParams",
    "Moments",
    "LemmaRatios",
    "sample_weights",
    "analytic_moments",
    "truncated_second_moment",
    "truncated_first_moment_tail",
    "tail_params",
    "lemma1_ratio_check",
    "compute_norming",
    "model_to_config",
    "model_from_config",
]

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class ConstantWeights:
    """Degenerate law: every vertex gets the value n*lam/(n - lam).

    The value is resolved only once the vertex count is known, which
    makes every pair probability exactly lam/n.  Requires 0 < lam < n at
    resolution time.
    """

    lam: float

    def __post_init__(self):
        if not (self.lam > 0):
            raise ParameterError(f"lam must be positive, got {self.lam}")

    def resolved_value(self, n: int) -> float:
        if not (0 < self.lam < n):
            raise ParameterError(
                f"constant weights need lam < n (lam={self.lam}, n={n})"
            )
        return n * self.lam / (n - self.lam)


@dataclass(frozen=True)
class ExponentialWeights:
    rate: float

    def __post_init__(self):
        if not (self.rate > 0):
            raise ParameterError(f"rate must be positive, got {self.rate}")

    def density(self, w):
        w = np.asarray(w, dtype=float)
        return np.where(w >= 0, self.rate * np.exp(-self.rate * w), 0.0)

    support_lower = 0.0


@dataclass(frozen=True)
class LogNormalWeights:
    mu: float
    sigma: float

    def __post_init__(self):
        if not (self.sigma > 0):
            raise ParameterError(f"sigma must be positive, got {self.sigma}")

    def density(self, w):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        pos = w > 0
        z = (np.log(w[pos]) - self.mu) / self.sigma
        out[pos] = np.exp(-0.5 * z * z) / (w[pos] * self.sigma * math.sqrt(2 * math.pi))
        return out

    support_lower = 0.0


@dataclass(frozen=True)
class GammaWeights:
    shape: float
    scale: float

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise ParameterError(
                f"shape and scale must be positive, got ({self.shape}, {self.scale})"
            )

    def density(self, w):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        pos = w > 0
        k, th = self.shape, self.scale
        logpdf = (k - 1) * np.log(w[pos]) - w[pos] / th - math.lgamma(k) - k * math.log(th)
        out[pos] = np.exp(logpdf)
        return out

    support_lower = 0.0


@dataclass(frozen=True)
class ParetoWeights:
    """Pure power-law tail: P(W > x) = (x/xm)^(-alpha) for x >= xm."""

    alpha: float
    xm: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.xm > 0):
            raise ParameterError(
                f"alpha and xm must be positive, got ({self.alpha}, {self.xm})"
            )

    def density(self, w):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        mask = w >= self.xm
        out[mask] = self.alpha * self.xm**self.alpha * w[mask] ** (-self.alpha - 1)
        return out

    @property
    def support_lower(self):
        return self.xm


@dataclass(frozen=True)
class ParetoLogWeights:
    """Power-law tail with a logarithmic slowly varying correction.

    Survival function P(W > x) = (x/xm)^(-alpha) * (1 + log(x/xm)) for
    x >= xm, normalized so P(W > xm) = 1.  The survival function is
    monotone only for alpha >= 1; alpha > 1 is required so the mean is
    finite.
    """

    alpha: float
    xm: float

    def __post_init__(self):
        if not (self.alpha > 1):
            raise ParameterError(
                f"log-corrected Pareto needs alpha > 1, got {self.alpha}"
            )
        if not (self.xm > 0):
            raise ParameterError(f"xm must be positive, got {self.xm}")

    def survival(self, w):
        w = np.asarray(w, dtype=float)
        out = np.ones_like(w)
        mask = w >= self.xm
        r = w[mask] / self.xm
        out[mask] = r ** (-self.alpha) * (1.0 + np.log(r))
        return out

    def density(self, w):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        mask = w >= self.xm
        r = w[mask] / self.xm
        out[mask] = (
            r ** (-self.alpha - 1)
            * (self.alpha * (1.0 + np.log(r)) - 1.0)
            / self.xm
        )
        return out

    @property
    def support_lower(self):
        return self.xm


WeightModel = Union[
    ConstantWeights,
    ExponentialWeights,
    LogNormalWeights,
    GammaWeights,
    ParetoWeights,
    ParetoLogWeights,
]


@dataclass(frozen=True)
class TailParams:
    """Parameters of a regularly varying tail P(W > x) = c x^(-alpha) h(x)."""

    alpha: float
    c: float
    h_kind: str  # "constant" | "logarithmic"
    x0: float = 1.0  # reference scale of the logarithmic factor

    def h(self, x):
        if self.h_kind == "constant":
            return np.ones_like(np.asarray(x, dtype=float))
        return 1.0 + np.log(np.asarray(x, dtype=float) / self.x0)


@dataclass(frozen=True, eq=False)
class WeightVector:
    """A realized weight sample with exactly-summed totals.

    ``sum_l`` is the total weight and ``sum_sq`` the total of squares,
    both accumulated with exact compensated summation (math.fsum), so
    the relative error is one rounding at any sample size.
    """

    values: np.ndarray
    sum_l: float
    sum_sq: float

    @classmethod
    def from_values(cls, values) -> "WeightVector":
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ParameterError("weights must form a non-empty 1-d array")
        if not np.all(arr > 0):
            raise ParameterError("all weights must be strictly positive")
        return cls(arr, math.fsum(arr), math.fsum(arr * arr))

    @property
    def n(self) -> int:
        return int(self.values.shape[0])


class Moments(NamedTuple):
    ew: float
    var_w: float
    ew2: float


class LemmaRatios(NamedTuple):
    x: float
    ratio_second: float
    ratio_tail_karamata: float
    ratio_tail_alt: float


def sample_weights(model: WeightModel, n: int, seed: int) -> WeightVector:
    """Draw n i.i.d. weights; identical (model, n, seed) give identical output."""
    if n < 2:
        raise ParameterError(f"need at least 2 vertices, got n={n}")
    rng = np.random.default_rng(seed & _SEED_MASK)
    if isinstance(model, ConstantWeights):
        values = np.full(n, model.resolved_value(n))
    elif isinstance(model, ExponentialWeights):
        values = rng.standard_exponential(n) / model.rate
    elif isinstance(model, LogNormalWeights):
        values = rng.lognormal(model.mu, model.sigma, n)
    elif isinstance(model, GammaWeights):
        values = rng.gamma(model.shape, model.scale, n)
    elif isinstance(model, ParetoWeights):
        values = model.xm * (1.0 - rng.random(n)) ** (-1.0 / model.alpha)
    elif isinstance(model, ParetoLogWeights):
        values = _pareto_log_inverse_survival(model, 1.0 - rng.random(n))
    else:
        raise UnsupportedModelError(f"unknown weight model {model!r}")
    return WeightVector.from_values(values)


def _pareto_log_inverse_survival(model: ParetoLogWeights, u: np.ndarray) -> np.ndarray:
    """Solve survival(x) = u for each u in (0, 1] by bisection in log space.

    The inverse has no closed form; h(y) = -alpha*y + log(1+y) with
    y = log(x/xm) is strictly decreasing, so plain bisection converges.
    """
    target = np.log(u)
    lo = np.zeros_like(target)
    hi = np.maximum(1.0, -target / (model.alpha - 1.0) + 1.0)
    # grow hi until h(hi) is below every target
    for _ in range(200):
        under = -model.alpha * hi + np.log1p(hi) > target
        if not under.any():
            break
        hi[under] *= 2.0
    else:
        raise BracketingError("inverse-survival bracket did not close")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        high_side = -model.alpha * mid + np.log1p(mid) > target
        lo = np.where(high_side, mid, lo)
        hi = np.where(high_side, hi, mid)
    return model.xm * np.exp(0.5 * (lo + hi))


def analytic_moments(model: WeightModel, n: int | None = None) -> Moments:
    """Closed-form (EW, Var W, EW^2); infinite entries are math.inf.

    Constant weights are resolved at the vertex count, so ``n`` is
    required for that model and ignored otherwise.
    """
    if isinstance(model, ConstantWeights):
        if n is None:
            raise ParameterError("constant weights need n to resolve the value")
        v = model.resolved_value(n)
        return Moments(v, 0.0, v * v)
    if isinstance(model, ExponentialWeights):
        ew = 1.0 / model.rate
        return Moments(ew, ew * ew, 2.0 * ew * ew)
    if isinstance(model, LogNormalWeights):
        ew = math.exp(model.mu + 0.5 * model.sigma**2)
        ew2 = math.exp(2 * model.mu + 2 * model.sigma**2)
        return Moments(ew, ew2 - ew * ew, ew2)
    if isinstance(model, GammaWeights):
        ew = model.shape * model.scale
        var = model.shape * model.scale**2
        return Moments(ew, var, var + ew * ew)
    if isinstance(model, ParetoWeights):
        a, xm = model.alpha, model.xm
        ew = a * xm / (a - 1.0) if a > 1 else math.inf
        ew2 = a * xm * xm / (a - 2.0) if a > 2 else math.inf
        var = ew2 - ew * ew if math.isfinite(ew2) else math.inf
        return Moments(ew, var, ew2)
    if isinstance(model, ParetoLogWeights):
        a, xm = model.alpha, model.xm
        s = 1.0 / (a - 1.0)
        ew = xm * (1.0 + s + s * s)
        if a > 2:
            q = 1.0 / (a - 2.0)
            ew2 = xm * xm * (1.0 + 2.0 * q + 2.0 * q * q)
            var = ew2 - ew * ew
        else:
            ew2 = var = math.inf
        return Moments(ew, var, ew2)
    raise UnsupportedModelError(f"unknown weight model {model!r}")


def _quad(fn, lo, hi) -> float:
    out = integrate.quad(fn, lo, hi, epsabs=1e-10, epsrel=1e-10, limit=300, full_output=1)
    if len(out) > 3:
        raise IntegrationError(f"quadrature did not converge: {out[3]}")
    return out[0]


def _pdf_at(model, w: float) -> float:
    return float(model.density(np.array([w]))[0])


def truncated_second_moment(model: WeightModel, x: float) -> float:
    """E[W^2; W <= x]: closed form for the power-law models, quadrature otherwise."""
    if not (x > 0):
        raise ParameterError(f"truncation point must be positive, got {x}")
    if isinstance(model, ParetoWeights):
        a, xm = model.alpha, model.xm
        if x <= xm:
            return 0.0
        if a == 2.0:
            return 2.0 * xm * xm * math.log(x / xm)
        return a * xm**a * (x ** (2.0 - a) - xm ** (2.0 - a)) / (2.0 - a)
    if isinstance(model, ParetoLogWeights):
        a, xm = model.alpha, model.xm
        if x <= xm:
            return 0.0
        r = x / xm
        if a == 2.0:
            ia = math.log(r)
            ib = 0.5 * math.log(r) ** 2
        else:
            ia = (r ** (2.0 - a) - 1.0) / (2.0 - a)
            ib = (r ** (2.0 - a) * ((2.0 - a) * math.log(r) - 1.0) + 1.0) / (2.0 - a) ** 2
        return xm * xm * ((a - 1.0) * ia + a * ib)
    if isinstance(model, ConstantWeights):
        raise UnsupportedModelError("constant weights have no density to integrate")
    lo = model.support_lower
    if x <= lo:
        return 0.0
    return _quad(lambda w: w * w * _pdf_at(model, w), lo, x)


def truncated_first_moment_tail(model: WeightModel, x: float) -> float:
    """E[W; W >= x]: closed form for the power-law models, quadrature otherwise."""
    if not (x > 0):
        raise ParameterError(f"truncation point must be positive, got {x}")
    if isinstance(model, ParetoWeights):
        a, xm = model.alpha, model.xm
        if a <= 1:
            return math.inf
        return a * xm**a / (a - 1.0) * max(x, xm) ** (1.0 - a)
    if isinstance(model, ParetoLogWeights):
        a, xm = model.alpha, model.xm
        r = max(x, xm) / xm
        lr = math.log(r)
        head = r ** (1.0 - a) * (1.0 + lr)
        tail = r ** (1.0 - a) / (a - 1.0) + r ** (1.0 - a) * ((a - 1.0) * lr + 1.0) / (a - 1.0) ** 2
        return xm * (head + tail)
    if isinstance(model, ConstantWeights):
        raise UnsupportedModelError("constant weights have no density to integrate")
    lo = max(x, model.support_lower)
    return _quad(lambda w: w * _pdf_at(model, w), lo, np.inf)


def tail_params(model: WeightModel) -> TailParams | None:
    """Tail descriptor for the heavy-tailed models, None otherwise."""
    if isinstance(model, ParetoWeights):
        return TailParams(model.alpha, model.xm**model.alpha, "constant", model.xm)
    if isinstance(model, ParetoLogWeights):
        return TailParams(model.alpha, model.xm**model.alpha, "logarithmic", model.xm)
    return None


def lemma1_ratio_check(model: WeightModel, x_grid) -> list[LemmaRatios]:
    """Exact truncated moments against their regular-variation asymptotes.

    For a tail c x^(-alpha) h(x) with alpha in (1, 2) the asymptotes are

    * E[W^2; W <= x]  ~  c*alpha/(2-alpha) * x^(2-alpha) * h(x)
    * E[W;  W >= x]   ~  c*alpha/(alpha-1) * x^(1-alpha) * h(x)

    The second constant is sometimes printed as c*(2-alpha)/(alpha-1);
    that variant disagrees with the exact closed form (for a pure
    power-law tail the ratio is exactly alpha/(2-alpha)), so it is
    reported as ``ratio_tail_alt`` for flagging rather than asserted.
    """
    tp = tail_params(model)
    if tp is None:
        raise UnsupportedModelError(f"{type(model).__name__} has no tail parameters")
    out = []
    for x in np.asarray(x_grid, dtype=float):
        x = float(x)
        h = float(tp.h(x))
        exact2 = truncated_second_moment(model, x)
        exact_tail = truncated_first_moment_tail(model, x)
        asym2 = tp.c * tp.alpha / (2.0 - tp.alpha) * x ** (2.0 - tp.alpha) * h
        karamata = tp.c * tp.alpha / (tp.alpha - 1.0) * x ** (1.0 - tp.alpha) * h
        alt = tp.c * (2.0 - tp.alpha) / (tp.alpha - 1.0) * x ** (1.0 - tp.alpha) * h
        out.append(LemmaRatios(x, exact2 / asym2, exact_tail / karamata, exact_tail / alt))
    return out


def compute_norming(model: WeightModel, n: int) -> float:
    """The unique large root a > xm of a^2 = n * E[W^2; W <= a].

    The map a -> n*E[W^2; W <= a]/a^2 rises from 0 at the support edge
    and then decreases to 0, so the equation can have a spurious small
    root near xm; the bracket is therefore walked down from above to pin
    the root on the decreasing branch, which is the one that grows like
    n^(1/alpha).
    """
    if n < 2:
        raise ParameterError(f"need n >= 2, got n={n}")
    tp = tail_params(model)
    if tp is None or not (1.0 < tp.alpha < 2.0):
        raise UnsupportedModelError(
            "norming sequence is defined for heavy-tailed models with alpha in (1, 2)"
        )
    xm = model.support_lower

    def gap(a: float) -> float:
        return a * a - n * truncated_second_moment(model, a)

    guess = (n * tp.c * tp.alpha / (2.0 - tp.alpha)) ** (1.0 / tp.alpha)
    hi = max(2.0 * xm, guess)
    for _ in range(200):
        if gap(hi) > 0:
            break
        hi *= 2.0
    else:
        raise BracketingError("no positive gap found while widening the bracket")
    lo = 0.5 * hi
    while gap(lo) > 0:
        hi = lo
        lo *= 0.5
        if lo <= xm * (1.0 + 1e-12):
            raise BracketingError("no sign change above the support edge")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gap(mid) <= 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * hi:
            break
    return 0.5 * (lo + hi)


_MODEL_TAGS = {
    "constant": ConstantWeights,
    "exponential": ExponentialWeights,
    "lognormal": LogNormalWeights,
    "gamma": GammaWeights,
    "pareto": ParetoWeights,
    "paretolog": ParetoLogWeights,
}

_FIELD_ALIASES = {"lambda": "lam"}


def model_to_config(model: WeightModel) -> dict:
    """JSON-friendly dict with a ``kind`` tag plus the model parameters."""
    for tag, cls in _MODEL_TAGS.items():
        if isinstance(model, cls):
            params = {k: getattr(model, k) for k in cls.__dataclass_fields__}
            return {"kind": tag, **params}
    raise UnsupportedModelError(f"unknown weight model {model!r}")


def model_from_config(config: dict) -> WeightModel:
    """Inverse of :func:`model_to_config`; raises ParameterError on bad input."""
    try:
        kind = config["kind"]
    except (TypeError, KeyError):
        raise ParameterError("model config needs a 'kind' tag") from None
    cls = _MODEL_TAGS.get(str(kind).lower())
    if cls is None:
        raise ParameterError(f"unknown model kind {kind!r}")
    params = {
        _FIELD_ALIASES.get(k, k): float(v) for k, v in config.items() if k != "kind"
    }
    try:
        return cls(**params)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {kind}: {exc}") from None
