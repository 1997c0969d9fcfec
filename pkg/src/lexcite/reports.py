"""Report-row builders for the group-comparison and regression outputs.

Four tables are produced. comparison.csv holds one KS row per variable and
group pair; cdf.csv holds the ECDF step points per variable and group;
estimates.csv holds the bootstrap mean and confidence interval per variable
and group; regression.csv holds one row per model and cohort with the
R-squared or "-" when the fit is not estimable.

Row order is fixed everywhere: variables x1..x12, groups High/Medium/Low,
pairs High-Medium, High-Low, Medium-Low, models 1..6, cohorts all/High/
Medium/Low. Documents whose value for a variable is Absent are excluded
from that variable's rows and counted in the n_excluded column. When the
effective sample for a group is empty (an empty stratum, or every document
lacking the variable), a GroupEmpty row is emitted instead of failing.

Bootstrap subseeds are derived from the root seed by hashing the variable
index and group index, so adding or removing one variable never perturbs
another variable's interval.
"""

from __future__ import annotations

import hashlib
from typing import Sequence

from .impact import GROUP_ORDER, ImpactGroup, NormalizedScore
from .metrics import ComplexityProfile, VARIABLE_COLUMNS
from .stats import MODEL_IDS, bootstrap_mean_ci, ecdf_steps, fit_model, ks_two_sample

GROUP_PAIRS = (
    (ImpactGroup.HIGH, ImpactGroup.MEDIUM),
    (ImpactGroup.HIGH, ImpactGroup.LOW),
    (ImpactGroup.MEDIUM, ImpactGroup.LOW),
)

COHORT_ORDER = ("all", ImpactGroup.HIGH.value, ImpactGroup.MEDIUM.value,
                ImpactGroup.LOW.value)

COMPARISON_HEADER = ["variable", "group_pair", "d", "p", "stars",
                     "n1", "n2", "n_excluded", "status"]
CDF_HEADER = ["variable", "group", "x", "f"]
ESTIMATES_HEADER = ["variable", "group", "point", "ci_low", "ci_high",
                    "n", "n_excluded", "status"]
REGRESSION_HEADER = ["model", "cohort", "r_squared", "n_used", "n_dropped"]

STATUS_OK = "Ok"
STATUS_GROUP_EMPTY = "GroupEmpty"


def stars_text(stars: int) -> str:
    """Render a 0-3 star level as '', '*', '**', or '***'."""
    if stars not in (0, 1, 2, 3):
        raise ValueError(f"star level out of range: {stars}")
    return "*" * stars


def subseed(seed: int, var_index: int, group_index: int) -> int:
    """Per-(variable, group) bootstrap seed derived from the root seed."""
    digest = hashlib.sha256(f"{seed}:{var_index}:{group_index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def group_samples(
    profiles: Sequence[ComplexityProfile],
    scores: Sequence[NormalizedScore],
    column: str,
) -> dict[ImpactGroup, tuple[list[float], int]]:
    """Per group: the variable's present values and the Absent-drop count."""
    group_of = {s.doc_id: s.group for s in scores if s.group is not None}
    out: dict[ImpactGroup, tuple[list[float], int]] = {}
    for group in GROUP_ORDER:
        values: list[float] = []
        excluded = 0
        for profile in profiles:
            if group_of.get(profile.doc_id) is not group:
                continue
            value = profile.value(column)
            if value is None:
                excluded += 1
            else:
                values.append(float(value))
        out[group] = (values, excluded)
    return out


def build_comparison_rows(
    profiles: Sequence[ComplexityProfile],
    scores: Sequence[NormalizedScore],
) -> list[list[object]]:
    rows: list[list[object]] = []
    for column in VARIABLE_COLUMNS:
        samples = group_samples(profiles, scores, column)
        for ga, gb in GROUP_PAIRS:
            pair = f"{ga.value}-{gb.value}"
            (va, ea), (vb, eb) = samples[ga], samples[gb]
            if not va or not vb:
                rows.append([column, pair, None, None, "",
                             len(va), len(vb), ea + eb, STATUS_GROUP_EMPTY])
                continue
            ks = ks_two_sample(va, vb)
            rows.append([column, pair, ks.d_statistic, ks.p_value,
                         stars_text(ks.stars), ks.n1, ks.n2, ea + eb, STATUS_OK])
    return rows


def build_cdf_rows(
    profiles: Sequence[ComplexityProfile],
    scores: Sequence[NormalizedScore],
) -> list[list[object]]:
    rows: list[list[object]] = []
    for column in VARIABLE_COLUMNS:
        samples = group_samples(profiles, scores, column)
        for group in GROUP_ORDER:
            values, _ = samples[group]
            if not values:
                continue
            for x, f in ecdf_steps(values):
                rows.append([column, group.value, x, f])
    return rows


def build_estimate_rows(
    profiles: Sequence[ComplexityProfile],
    scores: Sequence[NormalizedScore],
    iterations: int,
    level: float,
    seed: int,
) -> list[list[object]]:
    rows: list[list[object]] = []
    for var_index, column in enumerate(VARIABLE_COLUMNS, start=1):
        samples = group_samples(profiles, scores, column)
        for group_index, group in enumerate(GROUP_ORDER):
            values, excluded = samples[group]
            if not values:
                rows.append([column, group.value, None, None, None,
                             0, excluded, STATUS_GROUP_EMPTY])
                continue
            est = bootstrap_mean_ci(values, iterations=iterations, level=level,
                                    seed=subseed(seed, var_index, group_index))
            rows.append([column, group.value, est.point, est.ci_low,
                         est.ci_high, len(values), excluded, STATUS_OK])
    return rows


def build_regression_rows(
    profiles: Sequence[ComplexityProfile],
    scores: Sequence[NormalizedScore],
) -> list[list[object]]:
    """One row per model and cohort; '-' marks a NonEstimable fit."""
    by_id = {s.doc_id: s for s in scores}
    cohorts: dict[str, list[ComplexityProfile]] = {"all": list(profiles)}
    for group in GROUP_ORDER:
        cohorts[group.value] = [
            p for p in profiles
            if p.doc_id in by_id and by_id[p.doc_id].group is group
        ]
    rows: list[list[object]] = []
    for model_id in MODEL_IDS:
        for cohort in COHORT_ORDER:
            members = cohorts[cohort]
            if not members:
                rows.append([model_id, cohort, "-", 0, 0])
                continue
            fit = fit_model(members, scores, model_id)
            r2 = "-" if fit.r_squared is None else fit.r_squared
            rows.append([model_id, cohort, r2, fit.n_used,
                         fit.n_dropped_zero_nc + fit.n_dropped_absent])
    return rows
