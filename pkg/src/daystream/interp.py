"""Shape-preserving piecewise cubic interpolation.

Slopes follow Fritsch & Carlson ("Monotone Piecewise Cubic Interpolation",
SIAM J. Numer. Anal. 17, 1980) with the Butland weighted harmonic mean at
interior knots and the non-centered three-point endpoint formula. The
resulting Hermite interpolant is monotone on every knot interval, so it
never overshoots the data: non-negative knot values yield a non-negative
curve, which is exactly what a stacked layout needs.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Sequence


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def hermite_slopes(xs: Sequence[float], ys: Sequence[float]) -> list[float]:
    """Per-knot tangents for a monotone cubic Hermite interpolant."""
    n = len(xs)
    if n != len(ys) or n < 2:
        raise ValueError("need matching xs/ys with at least two knots")
    h = [xs[i + 1] - xs[i] for i in range(n - 1)]
    if any(step <= 0 for step in h):
        raise ValueError("knots must be strictly increasing")
    delta = [(ys[i + 1] - ys[i]) / h[i] for i in range(n - 1)]

    if n == 2:
        return [delta[0], delta[0]]

    m = [0.0] * n
    for i in range(1, n - 1):
        if delta[i - 1] == 0.0 or delta[i] == 0.0 or _sign(delta[i - 1]) != _sign(delta[i]):
            m[i] = 0.0
        else:
            w1 = 2.0 * h[i] + h[i - 1]
            w2 = h[i] + 2.0 * h[i - 1]
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i])

    # endpoints: three-point formula, clamped to keep the end segment monotone
    for idx, (h0, h1, d0, d1) in (
        (0, (h[0], h[1], delta[0], delta[1])),
        (n - 1, (h[-1], h[-2], delta[-1], delta[-2])),
    ):
        slope = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
        if _sign(slope) != _sign(d0):
            slope = 0.0
        elif _sign(d0) != _sign(d1) and abs(slope) > 3.0 * abs(d0):
            slope = 3.0 * d0
        m[idx] = slope
    return m


def eval_hermite(
    xs: Sequence[float],
    ys: Sequence[float],
    slopes: Sequence[float],
    x: float,
) -> float:
    """Evaluate the cubic Hermite interpolant at one point (clamped ends)."""
    n = len(xs)
    if x <= xs[0]:
        return ys[0]
    if x >= xs[-1]:
        return ys[-1]
    i = bisect_right(xs, x) - 1
    if xs[i] == x:
        return ys[i]
    h = xs[i + 1] - xs[i]
    t = (x - xs[i]) / h
    t2 = t * t
    t3 = t2 * t
    h00 = 2.0 * t3 - 3.0 * t2 + 1.0
    h10 = t3 - 2.0 * t2 + t
    h01 = -2.0 * t3 + 3.0 * t2
    h11 = t3 - t2
    return (
        h00 * ys[i]
        + h10 * h * slopes[i]
        + h01 * ys[i + 1]
        + h11 * h * slopes[i + 1]
    )


def monotone_cubic(
    xs: Sequence[float], ys: Sequence[float], sample_xs: Sequence[float]
) -> list[float]:
    """Sample the shape-preserving cubic through (xs, ys) at sample_xs."""
    slopes = hermite_slopes(xs, ys)
    return [eval_hermite(xs, ys, slopes, x) for x in sample_xs]


def piecewise_linear(
    xs: Sequence[float], ys: Sequence[float], sample_xs: Sequence[float]
) -> list[float]:
    """Sample the polyline through (xs, ys) at sample_xs (clamped ends)."""
    out = []
    for x in sample_xs:
        if x <= xs[0]:
            out.append(ys[0])
            continue
        if x >= xs[-1]:
            out.append(ys[-1])
            continue
        i = bisect_right(xs, x) - 1
        if xs[i] == x:
            out.append(ys[i])
            continue
        t = (x - xs[i]) / (xs[i + 1] - xs[i])
        out.append(ys[i] + t * (ys[i + 1] - ys[i]))
    return out
