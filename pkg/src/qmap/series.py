"""Metric time series over ordered maps and drop-based disruption flags."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .metrics import LmaxMode, MapMetrics, map_metrics
from .model import CognitiveMap, DecisionFrame, to_simplicial_family
from .qengine import Convention, complexity

METRICS = ("n_concepts", "n_links", "ratio", "density", "avg_closeness", "complexity")


@dataclass(frozen=True)
class SeriesEntry:
    period: str
    metrics: MapMetrics
    complexity: float | None = None

    def value(self, name: str) -> float | None:
        if name == "complexity":
            return self.complexity
        return self.metrics.as_dict()[name]


@dataclass(frozen=True)
class MetricSeries:
    entries: tuple[SeriesEntry, ...]
    averages: dict[str, float | None] = field(default_factory=dict)

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a series needs at least one entry")
        periods = [e.period for e in self.entries]
        if len(set(periods)) != len(periods):
            raise ValueError("period labels must be unique")
        if not self.averages:
            object.__setattr__(self, "averages",
                               {m: _mean(self.values(m)) for m in METRICS})

    def __len__(self):
        return len(self.entries)

    @property
    def periods(self) -> list[str]:
        return [e.period for e in self.entries]

    def values(self, metric: str) -> list[float | None]:
        return [e.value(metric) for e in self.entries]


def _mean(xs):
    xs = [x for x in xs if x is not None]
    return math.fsum(xs) / len(xs) if xs else None


def build_series(maps: Sequence[CognitiveMap],
                 frames: Sequence[DecisionFrame | None] | None = None,
                 periods: Sequence[str] | None = None,
                 lmax: LmaxMode = "paper", undirected: bool = False,
                 convention: Convention = "paper") -> MetricSeries:
    """Compute per-period metrics (and complexity where a frame is given).

    Period labels default to each map's ``period``, then its ``map_id``.
    """
    if not maps:
        raise ValueError("need at least one map")
    frames = list(frames) if frames is not None else [None] * len(maps)
    if len(frames) != len(maps):
        raise ValueError("frames must align with maps")
    entries = []
    for i, cmap in enumerate(maps):
        period = periods[i] if periods else (cmap.period or cmap.map_id)
        frame = frames[i]
        c = complexity(to_simplicial_family(frame), convention) if frame else None
        entries.append(SeriesEntry(period, map_metrics(cmap, lmax, undirected), c))
    return MetricSeries(tuple(entries))


@dataclass(frozen=True)
class Baseline:
    """Reference value a period is compared against.

    ``prev`` is the preceding period, ``trailing`` the mean of up to ``k``
    preceding periods, ``overall`` the mean of the whole series.
    """

    kind: str = "prev"
    k: int = 1

    def __post_init__(self):
        if self.kind not in ("prev", "trailing", "overall"):
            raise ValueError(f"unknown baseline {self.kind!r}")
        if self.k < 1:
            raise ValueError("trailing window must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "Baseline":
        """Parse ``prev``, ``overall`` or ``trailing:K``."""
        kind, _, k = text.partition(":")
        if kind == "trailing":
            if not k.isdigit():
                raise ValueError(f"trailing baseline needs a window, got {text!r}")
            return cls("trailing", int(k))
        if k:
            raise ValueError(f"unexpected argument in baseline {text!r}")
        return cls(kind)

    def __str__(self):
        return f"trailing:{self.k}" if self.kind == "trailing" else self.kind

    def value(self, history: list[float | None], t: int) -> float | None:
        if self.kind == "prev":
            return history[t - 1]
        if self.kind == "trailing":
            return _mean(history[max(0, t - self.k):t])
        return _mean(history)


@dataclass(frozen=True)
class Flag:
    period: str
    metric: str
    relative_drop: float
    baseline: float
    direction: str = "drop"


@dataclass(frozen=True)
class DisruptionReport:
    flags: tuple[Flag, ...]
    threshold: float
    baseline: str = "prev"

    def __bool__(self):
        return bool(self.flags)

    def flagged_periods(self) -> list[str]:
        return list(dict.fromkeys(f.period for f in self.flags))


def detect_disruption(series: MetricSeries, threshold: float = 0.30,
                      baseline: Baseline | str = "prev",
                      two_sided: bool = False,
                      metrics: Sequence[str] = METRICS) -> DisruptionReport:
    """Flag every (period, metric) whose relative drop reaches ``threshold``.

    The drop is (b - x) / b against the baseline b; the first period is
    never flagged, nor are periods where the value or the baseline is
    missing or b <= 0. With ``two_sided`` rises of the same relative size
    are flagged too, with ``direction="rise"``.
    """
    if not 0 < threshold < 1:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    if len(series) < 2:
        raise ValueError("disruption detection needs at least two periods")
    if isinstance(baseline, str):
        baseline = Baseline.parse(baseline)
    flags = []
    for t in range(1, len(series)):
        period = series.entries[t].period
        for metric in sorted(metrics):
            history = series.values(metric)
            x, b = history[t], baseline.value(history, t)
            if x is None or b is None or b <= 0:
                continue
            change = (b - x) / b
            if change >= threshold:
                flags.append(Flag(period, metric, change, b))
            elif two_sided and -change >= threshold:
                flags.append(Flag(period, metric, -change, b, "rise"))
    return DisruptionReport(tuple(flags), threshold, str(baseline))
