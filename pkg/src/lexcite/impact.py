"""Field/year-normalized citation scores and impact stratification.

A paper's normalized citation score is its total citations divided by the
mean citations of all papers published in the same year and domain. Papers
are then ranked by that score and split into the top 1% (High), the next 9%
(Medium), and the remaining 90% (Low), with floor-based group sizes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

from .errors import GroupEmptyWarning, MissingBaseline, ZeroBaselineNonzeroCitations


class ImpactGroup(str, Enum):
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"


GROUP_ORDER = (ImpactGroup.HIGH, ImpactGroup.MEDIUM, ImpactGroup.LOW)


@dataclass(frozen=True)
class CitationRecord:
    doc_id: str
    year: int
    domain: str
    total_citations: int

    def __post_init__(self):
        if self.total_citations < 0:
            raise ValueError(f"negative citations for {self.doc_id!r}")


@dataclass(frozen=True)
class Baseline:
    """Mean citations (adc) over the n papers in one year x domain cell."""

    year: int
    domain: str
    adc: float
    n: int


@dataclass
class NormalizedScore:
    doc_id: str
    nc: float
    group: ImpactGroup | None = None


def compute_baselines(records: list[CitationRecord]) -> list[Baseline]:
    """One baseline per distinct (year, domain) cell, sorted for determinism."""
    cells: dict[tuple[int, str], list[int]] = {}
    for rec in records:
        cells.setdefault((rec.year, rec.domain), []).append(rec.total_citations)
    return [
        Baseline(year=year, domain=domain, adc=sum(counts) / len(counts), n=len(counts))
        for (year, domain), counts in sorted(cells.items())
    ]


def baseline_map(baselines: list[Baseline]) -> dict[tuple[int, str], Baseline]:
    return {(b.year, b.domain): b for b in baselines}


def normalize_citations(
    record: CitationRecord,
    baselines: dict[tuple[int, str], Baseline],
) -> NormalizedScore:
    """Citations divided by the cell mean; group left unset.

    A zero-mean cell is only consistent with zero citations; anything else
    signals a baseline computed from different records.
    """
    cell = baselines.get((record.year, record.domain))
    if cell is None:
        raise MissingBaseline(f"no baseline for ({record.year}, {record.domain!r})")
    if cell.adc == 0:
        if record.total_citations == 0:
            return NormalizedScore(doc_id=record.doc_id, nc=0.0)
        raise ZeroBaselineNonzeroCitations(
            f"{record.doc_id!r} has {record.total_citations} citations in a zero-mean cell"
        )
    return NormalizedScore(doc_id=record.doc_id, nc=record.total_citations / cell.adc)


def stratify(scores: list[NormalizedScore]) -> list[NormalizedScore]:
    """Assign High/Medium/Low groups by descending score.

    The top floor(N/100) papers are High, the next floor(N/10) - floor(N/100)
    Medium, the rest Low. Ties are broken by ascending doc_id so grouping is
    deterministic. Returns a new list in ranked order.
    """
    ranked = sorted(scores, key=lambda s: (-s.nc, s.doc_id))
    n = len(ranked)
    n_high = n // 100
    n_top10 = n // 10
    if n_high == 0:
        warnings.warn(f"High group empty at N={n} (< 100 documents)", GroupEmptyWarning)
    out = []
    for i, score in enumerate(ranked):
        if i < n_high:
            group = ImpactGroup.HIGH
        elif i < n_top10:
            group = ImpactGroup.MEDIUM
        else:
            group = ImpactGroup.LOW
        out.append(NormalizedScore(doc_id=score.doc_id, nc=score.nc, group=group))
    return out
