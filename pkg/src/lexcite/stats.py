"""Statistical battery: ECDFs, two-sample KS tests, bootstrap point
estimation, and the six polynomial regression model families.

The KS p-value uses the asymptotic series p = 2 * sum_{k>=1} (-1)^(k-1)
exp(-2 k^2 lambda^2) with lambda = D * sqrt(n1*n2/(n1+n2)), truncated once
terms fall below 1e-12 and clamped to [0, 1]. Bootstrap intervals are
percentile (nearest-rank) with a recorded seed. Regressions are ordinary
least squares with SVD rank detection; designs wider than the row count or
rank-deficient designs are reported NonEstimable instead of being forced.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateResponse,
    DegenerateResponseWarning,
    EmptySample,
    JoinMismatch,
    LengthMismatch,
    NoRowsRemaining,
)
from .impact import NormalizedScore
from .metrics import ComplexityProfile

_SERIES_EPS = 1e-12
# Resample index blocks are capped so bootstrap memory stays bounded; the
# block size is a fixed function of the inputs, keeping runs reproducible.
_BOOTSTRAP_BLOCK_CELLS = 2_000_000

N_VARIABLES = 12

# Column layout per model family: 1/3 full quadratic, 2/4 squares+linear,
# 5/6 linear only. The intercept is always included.
MODEL_IDS = (1, 2, 3, 4, 5, 6)
_QUADRATIC_MODELS = {1, 3}
_SQUARES_MODELS = {2, 4}
_LOG_RESPONSE_MODELS = {3, 4, 6}


@dataclass(frozen=True)
class KsResult:
    d_statistic: float
    p_value: float
    stars: int
    n1: int
    n2: int


@dataclass(frozen=True)
class BootstrapEstimate:
    point: float
    ci_low: float
    ci_high: float
    iterations: int
    level: float
    seed: int


@dataclass
class ModelFit:
    model_id: int
    coefficients: dict[str, list[float]] | None
    r_squared: float | None
    n_used: int
    n_dropped_zero_nc: int
    n_dropped_absent: int
    status: str  # "Estimable" | "NonEstimable"


def ecdf(sample: Sequence[float], x: float) -> float:
    """Fraction of sample values <= x."""
    if len(sample) == 0:
        raise EmptySample("ecdf of empty sample")
    data = np.sort(np.asarray(sample, dtype=float))
    return float(np.searchsorted(data, x, side="right")) / len(data)


def ecdf_steps(sample: Sequence[float]) -> list[tuple[float, float]]:
    """(x, F(x)) at every distinct sample value, for step plotting."""
    if len(sample) == 0:
        raise EmptySample("ecdf of empty sample")
    data = np.sort(np.asarray(sample, dtype=float))
    values = np.unique(data)
    # right-continuous step height after each distinct value
    counts = np.searchsorted(data, values, side="right")
    return [(float(v), float(c) / len(data)) for v, c in zip(values, counts)]


def stars_for_p(p: float) -> int:
    if p <= 0.001:
        return 3
    if p <= 0.01:
        return 2
    if p <= 0.05:
        return 1
    return 0


def ks_asymptotic_p(lam: float) -> float:
    """Two-sided asymptotic KS tail probability at lambda."""
    if lam < 1e-4:
        return 1.0
    total = 0.0
    sign = 1.0
    k = 1
    while True:
        term = math.exp(-2.0 * k * k * lam * lam)
        total += sign * term
        if term < _SERIES_EPS:
            break
        sign = -sign
        k += 1
    return min(max(2.0 * total, 0.0), 1.0)


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> KsResult:
    """Two-sample KS test: supremum ECDF gap over all observed values."""
    if len(a) == 0 or len(b) == 0:
        raise EmptySample("ks_two_sample requires two nonempty samples")
    a_sorted = np.sort(np.asarray(a, dtype=float))
    b_sorted = np.sort(np.asarray(b, dtype=float))
    n1, n2 = len(a_sorted), len(b_sorted)
    pooled = np.concatenate([a_sorted, b_sorted])
    cdf_a = np.searchsorted(a_sorted, pooled, side="right") / n1
    cdf_b = np.searchsorted(b_sorted, pooled, side="right") / n2
    d = float(np.max(np.abs(cdf_a - cdf_b)))
    lam = d * math.sqrt(n1 * n2 / (n1 + n2))
    p = ks_asymptotic_p(lam)
    return KsResult(d_statistic=d, p_value=p, stars=stars_for_p(p), n1=n1, n2=n2)


def _nearest_rank(sorted_values: np.ndarray, q: float) -> float:
    """Nearest-rank percentile: the ceil(q*n)-th smallest value."""
    n = len(sorted_values)
    rank = min(max(math.ceil(q * n), 1), n)
    return float(sorted_values[rank - 1])


def bootstrap_mean_ci(
    sample: Sequence[float],
    iterations: int = 10_000,
    level: float = 0.95,
    seed: int = 0,
) -> BootstrapEstimate:
    """Percentile bootstrap CI for the mean, bit-reproducible per seed."""
    data = np.asarray(sample, dtype=float)
    n = len(data)
    if n == 0:
        raise EmptySample("bootstrap of empty sample")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    rng = np.random.default_rng(seed)
    means = np.empty(iterations, dtype=float)
    block = max(1, _BOOTSTRAP_BLOCK_CELLS // n)
    done = 0
    while done < iterations:
        rows = min(block, iterations - done)
        idx = rng.integers(0, n, size=(rows, n))
        means[done:done + rows] = data[idx].mean(axis=1)
        done += rows
    means.sort()
    alpha = (1.0 - level) / 2.0
    return BootstrapEstimate(
        point=float(data.mean()),
        ci_low=_nearest_rank(means, alpha),
        ci_high=_nearest_rank(means, 1.0 - alpha),
        iterations=iterations,
        level=level,
        seed=seed,
    )


def r_squared(y: Sequence[float], yhat: Sequence[float]) -> float:
    """Coefficient of determination 1 - SS_res/SS_tot."""
    y = np.asarray(y, dtype=float)
    yhat = np.asarray(yhat, dtype=float)
    if len(y) != len(yhat) or len(y) < 2:
        raise LengthMismatch(f"need equal lengths >= 2, got {len(y)} and {len(yhat)}")
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        raise DegenerateResponse("constant response: SS_tot = 0")
    ss_res = float(np.sum((y - yhat) ** 2))
    return 1.0 - ss_res / ss_tot


def design_labels(model_id: int) -> list[str]:
    """Fixed, documented column order for each model family."""
    if model_id not in MODEL_IDS:
        raise ValueError(f"unknown model id {model_id}")
    labels = ["const"] + [f"x{i}" for i in range(1, N_VARIABLES + 1)]
    if model_id in _QUADRATIC_MODELS or model_id in _SQUARES_MODELS:
        labels += [f"x{i}^2" for i in range(1, N_VARIABLES + 1)]
    if model_id in _QUADRATIC_MODELS:
        labels += [
            f"x{i}*x{j}"
            for i in range(1, N_VARIABLES + 1)
            for j in range(i + 1, N_VARIABLES + 1)
        ]
    return labels


def _expand_design(base: np.ndarray, model_id: int) -> np.ndarray:
    n = base.shape[0]
    cols = [np.ones(n), *(base[:, i] for i in range(N_VARIABLES))]
    if model_id in _QUADRATIC_MODELS or model_id in _SQUARES_MODELS:
        cols += [base[:, i] ** 2 for i in range(N_VARIABLES)]
    if model_id in _QUADRATIC_MODELS:
        cols += [
            base[:, i] * base[:, j]
            for i in range(N_VARIABLES)
            for j in range(i + 1, N_VARIABLES)
        ]
    return np.column_stack(cols)


def _standardize(base: np.ndarray) -> np.ndarray:
    # Affine rescaling before term expansion preserves the expanded column
    # span (hence fitted values, rank, and R^2) while conditioning the
    # normal equations; zero-variance columns are only centered.
    mean = base.mean(axis=0)
    sd = base.std(axis=0)
    sd[sd == 0.0] = 1.0
    return (base - mean) / sd


def design_matrix(
    profiles: Sequence[ComplexityProfile],
    model_id: int,
    standardize: bool = False,
) -> tuple[np.ndarray, list[str], int]:
    """Design matrix and column labels for a model family.

    Profiles with any Absent variable are dropped; the drop count is
    returned. Raises NoRowsRemaining when nothing is left.
    """
    complete = [p for p in profiles if not p.has_absent()]
    n_dropped = len(profiles) - len(complete)
    if not complete:
        raise NoRowsRemaining("no profiles without Absent variables")
    base = np.array([p.values() for p in complete], dtype=float)
    if standardize:
        base = _standardize(base)
    return _expand_design(base, model_id), design_labels(model_id), n_dropped


_COEFFICIENT_FAMILIES = {
    # model -> (family name -> column slice), matching the per-term reading
    # of the shared-letter coefficients in the model definitions.
    1: {"a": (13, 25), "b": (25, 91), "c": (1, 13), "d": (0, 1)},
    3: {"a": (13, 25), "b": (25, 91), "c": (1, 13), "d": (0, 1)},
    2: {"a": (13, 25), "b": (1, 13), "c": (0, 1)},
    4: {"a": (13, 25), "b": (1, 13), "c": (0, 1)},
    5: {"a": (1, 13), "b": (0, 1)},
    6: {"a": (1, 13), "b": (0, 1)},
}


def fit_model(
    profiles: Sequence[ComplexityProfile],
    scores: Sequence[NormalizedScore],
    model_id: int,
) -> ModelFit:
    """Fit one model family by least squares with rank detection.

    Models 1 and 2 regress the normalized citation score itself; models 3,
    4, and 6 regress its natural log, dropping zero-score rows and counting
    them; model 5 fits the exponential-response form by least squares of
    the score against the linear columns. Designs with fewer rows than
    columns, or rank-deficient designs, come back NonEstimable with no
    R-squared. Coefficients are reported in standardized-predictor space.
    """
    if model_id not in MODEL_IDS:
        raise ValueError(f"unknown model id {model_id}")
    score_map = {s.doc_id: s.nc for s in scores}
    joined = [(p, score_map[p.doc_id]) for p in profiles if p.doc_id in score_map]
    if profiles and not joined:
        raise JoinMismatch("profiles and scores share no doc_ids")
    if not joined:
        raise NoRowsRemaining("no profiles to fit")

    complete = [(p, nc) for p, nc in joined if not p.has_absent()]
    n_dropped_absent = len(joined) - len(complete)

    n_dropped_zero = 0
    if model_id in _LOG_RESPONSE_MODELS:
        kept = [(p, nc) for p, nc in complete if nc > 0]
        n_dropped_zero = len(complete) - len(kept)
    else:
        kept = complete
    if not kept:
        raise NoRowsRemaining("all rows excluded before fitting")

    base = np.array([p.values() for p, _ in kept], dtype=float)
    nc = np.array([v for _, v in kept], dtype=float)
    y = np.log(nc) if model_id in _LOG_RESPONSE_MODELS else nc
    design = _expand_design(_standardize(base), model_id)
    n_rows, n_cols = design.shape

    fit = ModelFit(
        model_id=model_id,
        coefficients=None,
        r_squared=None,
        n_used=n_rows,
        n_dropped_zero_nc=n_dropped_zero,
        n_dropped_absent=n_dropped_absent,
        status="NonEstimable",
    )
    if n_rows < n_cols:
        return fit
    # rcond=None scales the singular-value cutoff by machine epsilon times
    # max(n_rows, n_cols), the documented rank-deficiency threshold.
    beta, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < n_cols:
        return fit

    yhat = design @ beta
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        warnings.warn("constant response; R-squared reported as 0",
                      DegenerateResponseWarning)
        r2 = 0.0
    else:
        r2 = 1.0 - float(np.sum((y - yhat) ** 2)) / ss_tot
        r2 = min(max(r2, 0.0), 1.0)

    fit.status = "Estimable"
    fit.r_squared = r2
    fit.coefficients = {
        family: [float(v) for v in beta[lo:hi]]
        for family, (lo, hi) in _COEFFICIENT_FAMILIES[model_id].items()
    }
    return fit
