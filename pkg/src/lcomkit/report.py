"""Descriptive statistics, cohesion classification and split suggestions.

These reproduce the evaluation workflow used with LCOM on whole systems:
summarise each metric column, count cohesive classes under a threshold,
compare systems side by side and point at classes worth splitting.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import DegenerateVariance, EmptyInput, LengthMismatch
from .metrics import MetricsRecord, lcom_ck, size_metrics
from .model import DEFAULT_POLICY, ClassModel, MethodPolicy, PairEvidence

COHESIVE = "cohesive"
UNCOHESIVE = "uncohesive"

# Minimum public methods before a split is recommended.
SPLIT_MIN_NPM = 5


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    min: float
    max: float
    mean: float
    median: float
    std_dev: float


@dataclass(frozen=True)
class SystemSummary:
    system_name: str
    class_count: int
    lcom_stats: DescriptiveStats
    cohesive_count: int
    uncohesive_count: int
    cohesive_pct: float
    uncohesive_pct: float
    threshold_used: int
    # Median LCOM below 1: the strict reading of a cohesive system.
    median_cohesive: bool
    # Median LCOM at most 1: the lenient reading that also accepts a median of 1.
    median_cohesive_lenient: bool


@dataclass(frozen=True)
class SplitSuggestion:
    class_name: str
    groups: Tuple[Tuple[str, ...], ...]
    recommended: bool
    lcom: int
    npm: int


def descriptive_stats(values: Sequence[float]) -> DescriptiveStats:
    """n, min, max, mean, median (interpolated for even n) and sample std dev."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise EmptyInput("descriptive statistics need at least one value")
    std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return DescriptiveStats(
        n=int(arr.size),
        min=float(arr.min()),
        max=float(arr.max()),
        mean=float(arr.mean()),
        median=float(np.median(arr)),
        std_dev=std,
    )


def classify_cohesion(record: MetricsRecord, threshold: int = 0) -> str:
    """``cohesive`` when LCOM does not exceed ``threshold`` (0 or 1)."""
    if threshold not in (0, 1):
        warnings.warn(f"cohesion threshold {threshold} is outside the usual 0 or 1", stacklevel=2)
    return COHESIVE if record.lcom <= threshold else UNCOHESIVE


def _pct(count: int, total: int) -> float:
    return round(100.0 * count / total, 1)


def system_summary(name: str, records: Sequence[MetricsRecord], threshold: int = 0) -> SystemSummary:
    if not records:
        raise EmptyInput(f"system {name!r} has no classes")
    cohesive = sum(1 for r in records if classify_cohesion(r, threshold) == COHESIVE)
    total = len(records)
    stats = descriptive_stats([r.lcom for r in records])
    return SystemSummary(
        system_name=name,
        class_count=total,
        lcom_stats=stats,
        cohesive_count=cohesive,
        uncohesive_count=total - cohesive,
        cohesive_pct=_pct(cohesive, total),
        uncohesive_pct=_pct(total - cohesive, total),
        threshold_used=threshold,
        median_cohesive=stats.median < 1,
        median_cohesive_lenient=stats.median <= 1,
    )


def metric_table(records: Sequence[MetricsRecord]) -> Dict[str, DescriptiveStats]:
    """Descriptive statistics for every numeric column, keyed by column name."""
    if not records:
        raise EmptyInput("no records")
    rows = [r.row() for r in records]
    return {col: descriptive_stats([row[col] for row in rows]) for col in rows[0] if col != "class"}


def correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson product-moment correlation coefficient."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape:
        raise LengthMismatch(f"{x.size} values against {y.size}")
    if x.size < 2:
        raise LengthMismatch("need at least two pairs")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateVariance("a variable has zero variance")
    r = float(dx @ dy) / np.sqrt(sxx * syy)
    return float(min(max(r, -1.0), 1.0))


def sharing_components(evidence: PairEvidence) -> List[Tuple[str, ...]]:
    """Connected components of the method graph whose edges are sharing pairs.

    Components come out in order of their first method; methods keep their
    original order inside a component.
    """
    adj: Dict[str, List[str]] = {m: [] for m in evidence.methods}
    for a, b in evidence.sharing_pairs:
        adj[a].append(b)
        adj[b].append(a)
    order = {m: i for i, m in enumerate(evidence.methods)}
    seen = set()
    groups = []
    for start in evidence.methods:
        if start in seen:
            continue
        seen.add(start)
        comp = []
        queue = deque([start])
        while queue:
            m = queue.popleft()
            comp.append(m)
            for nb in adj[m]:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        groups.append(tuple(sorted(comp, key=order.__getitem__)))
    return groups


def split_from_evidence(class_name: str, evidence: PairEvidence, lcom: int, npm: int) -> SplitSuggestion:
    groups = tuple(sharing_components(evidence))
    recommended = len(groups) >= 2 and lcom > 0 and npm >= SPLIT_MIN_NPM
    return SplitSuggestion(class_name, groups, recommended, lcom, npm)


def suggest_split(cls: ClassModel, policy: MethodPolicy = DEFAULT_POLICY) -> SplitSuggestion:
    """Group methods by shared attributes and say whether splitting is advised.

    A split is recommended only when there are at least two groups, LCOM is
    positive and the class has at least five public methods.
    """
    lcom, ev = lcom_ck(cls, policy)
    _, npm = size_metrics(cls)
    return split_from_evidence(cls.name, ev, lcom, npm)
