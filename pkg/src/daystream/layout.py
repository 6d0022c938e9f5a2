"""Mirrored stacked wave geometry for one day of planned and logged bins.

Logged activities stack upward from a fixed horizontal baseline, planned
activities stack downward as the exact negation of an identically computed
stack, so a day that went according to plan renders perfectly symmetric.

Per-activity thickness is interpolated first and then stacked, never the
other way around: this keeps layers non-negative and non-crossing by
construction. Bin values sit at bin centers (hour h at x = h + 0.5) with
zero padding at x = 0 and x = 24 so waves taper at the day's edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from datetime import date as Date, timedelta
from typing import Iterable, Sequence

from .errors import (
    InconsistentActivities,
    InvalidLayoutConfig,
    UnknownActivity,
    WrongDayCount,
)
from .interp import hermite_slopes, eval_hermite, piecewise_linear
from .model import HOURS_PER_DAY, BinMatrix, DayRecord

SMOOTH_NONE = "none"
SMOOTH_CUBIC = "shape_preserving_cubic"
SMOOTHINGS = (SMOOTH_NONE, SMOOTH_CUBIC)

SIDE_LOGGED = "logged"
SIDE_PLANNED = "planned"


@dataclass(frozen=True)
class LayoutConfig:
    """Session-local presentation state: stack order, filter, smoothing."""

    order: tuple[str, ...]
    visible: frozenset[str]
    smoothing: str = SMOOTH_CUBIC
    samples_per_bin: int = 8

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "visible", frozenset(self.visible))
        if len(set(self.order)) != len(self.order):
            raise InvalidLayoutConfig("stack order repeats an activity")
        if not self.visible <= set(self.order):
            raise InvalidLayoutConfig("visible set references unknown activities")
        if self.smoothing not in SMOOTHINGS:
            raise InvalidLayoutConfig(f"unknown smoothing {self.smoothing!r}")
        if self.samples_per_bin < 1:
            raise InvalidLayoutConfig("samples_per_bin must be >= 1")

    @staticmethod
    def for_activities(
        ids: Iterable[str],
        smoothing: str = SMOOTH_CUBIC,
        samples_per_bin: int = 8,
    ) -> "LayoutConfig":
        order = tuple(ids)
        return LayoutConfig(
            order=order,
            visible=frozenset(order),
            smoothing=smoothing,
            samples_per_bin=samples_per_bin,
        )

    def visible_in_order(self) -> tuple[str, ...]:
        return tuple(a for a in self.order if a in self.visible)


@dataclass(frozen=True)
class WaveBand:
    """One activity's filled band on one side of the baseline."""

    activity: str
    side: str
    points: tuple[tuple[float, float, float], ...]  # (x, lower, upper)


@dataclass(frozen=True)
class WaveGeometry:
    date: Date | None
    bands: tuple[WaveBand, ...]
    y_max: float  # symmetric scale extent; the own or week-shared maximum

    @property
    def is_empty(self) -> bool:
        return not self.bands


def reorder_to_baseline(config: LayoutConfig, activity: str) -> LayoutConfig:
    """Pull a wave to the baseline: move it to stack index 0, keep the rest."""
    if activity not in config.order:
        raise UnknownActivity(f"{activity!r} is not in the stack order")
    rest = tuple(a for a in config.order if a != activity)
    return replace(config, order=(activity,) + rest)


def set_filter(config: LayoutConfig, visible: Iterable[str]) -> LayoutConfig:
    """Restrict the stack to a subset; hidden layers close their gap."""
    visible = frozenset(visible)
    unknown = visible - set(config.order)
    if unknown:
        raise UnknownActivity(f"not in the stack order: {sorted(unknown)}")
    return replace(config, visible=visible)


def _sample_grid(samples_per_bin: int) -> list[float]:
    """Uniform grid over [0, 24] plus every bin center, deduplicated."""
    xs = {j / samples_per_bin for j in range(HOURS_PER_DAY * samples_per_bin + 1)}
    xs.update(h + 0.5 for h in range(HOURS_PER_DAY))
    return sorted(xs)


_KNOT_XS = [0.0] + [h + 0.5 for h in range(HOURS_PER_DAY)] + [24.0]


def _thickness(row: Sequence[int], smoothing: str, sample_xs: list[float]) -> list[float]:
    ys = [0.0] + [float(v) for v in row] + [0.0]
    if smoothing == SMOOTH_NONE:
        values = piecewise_linear(_KNOT_XS, ys, sample_xs)
    else:
        slopes = hermite_slopes(_KNOT_XS, ys)
        values = [eval_hermite(_KNOT_XS, ys, slopes, x) for x in sample_xs]
    return [v if v > 0.0 else 0.0 for v in values]


def _stack_side(
    matrix: BinMatrix,
    order: Sequence[str],
    smoothing: str,
    sample_xs: list[float],
    side: str,
    negate: bool,
) -> tuple[list[WaveBand], float]:
    thicknesses = [_thickness(matrix.cells[a], smoothing, sample_xs) for a in order]
    n = len(sample_xs)
    # fsum keeps each boundary independent of stack permutation
    boundaries = [[0.0] * n]
    for k in range(1, len(order) + 1):
        boundaries.append(
            [math.fsum(t[i] for t in thicknesses[:k]) for i in range(n)]
        )
    bands = []
    for k, activity in enumerate(order):
        lower, upper = boundaries[k], boundaries[k + 1]
        if negate:
            points = tuple(
                (x, -lower[i], -upper[i]) for i, x in enumerate(sample_xs)
            )
        else:
            points = tuple(
                (x, lower[i], upper[i]) for i, x in enumerate(sample_xs)
            )
        bands.append(WaveBand(activity=activity, side=side, points=points))
    top = max(boundaries[-1], default=0.0) if order else 0.0
    return bands, top


def compute_layout(
    planned: BinMatrix,
    logged: BinMatrix,
    config: LayoutConfig,
) -> WaveGeometry:
    """Turn a planned/logged bin matrix pair into mirrored wave geometry.

    An empty visible set yields empty geometry, not an error. Y units are
    minutes; x runs over hours 0..24.
    """
    if set(planned.activities) != set(logged.activities):
        raise InconsistentActivities(
            "planned and logged matrices cover different activities"
        )
    universe = set(planned.activities)
    order = config.visible_in_order()
    missing = [a for a in order if a not in universe]
    if missing:
        raise InconsistentActivities(f"not in the bin matrices: {missing}")
    if not order:
        return WaveGeometry(date=planned.date, bands=(), y_max=0.0)

    sample_xs = _sample_grid(config.samples_per_bin)
    logged_bands, logged_top = _stack_side(
        logged, order, config.smoothing, sample_xs, SIDE_LOGGED, negate=False
    )
    planned_bands, planned_top = _stack_side(
        planned, order, config.smoothing, sample_xs, SIDE_PLANNED, negate=True
    )
    return WaveGeometry(
        date=planned.date,
        bands=tuple(logged_bands + planned_bands),
        y_max=max(logged_top, planned_top),
    )


def day_layout(day: DayRecord, config: LayoutConfig) -> WaveGeometry:
    """Bin one day over the config's stack order and lay it out."""
    from .core import bin_day

    planned = bin_day(day, "planned", config.order)
    logged = bin_day(day, "logged", config.order)
    return compute_layout(planned, logged, config)


def week_layouts(
    days: Sequence[DayRecord],
    config: LayoutConfig,
) -> list[WaveGeometry]:
    """Layouts for seven consecutive days sharing one y scale.

    The shared scale is the maximum extent across the whole week so the
    small multiples stay comparable.
    """
    if len(days) != 7:
        raise WrongDayCount(f"expected 7 days, got {len(days)}")
    for prev, cur in zip(days, days[1:]):
        if cur.date != prev.date + timedelta(days=1):
            raise WrongDayCount(
                f"days are not consecutive at {prev.date} -> {cur.date}"
            )
    geometries = [day_layout(day, config) for day in days]
    shared = max(g.y_max for g in geometries)
    return [replace(g, y_max=shared) for g in geometries]


def geometry_to_dict(geometry: WaveGeometry) -> dict:
    """JSON-ready form consumed by the API and the web client."""
    return {
        "date": geometry.date.isoformat() if geometry.date else None,
        "y_max": geometry.y_max,
        "bands": [
            {
                "activity": band.activity,
                "side": band.side,
                "points": [[x, lo, hi] for x, lo, hi in band.points],
            }
            for band in geometry.bands
        ],
    }
