from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from daystream.interp import eval_hermite, hermite_slopes, monotone_cubic, piecewise_linear


def test_passes_through_knots_exactly():
    xs = [0.0, 0.5, 1.5, 2.5, 3.0]
    ys = [0.0, 10.0, 60.0, 5.0, 0.0]
    assert monotone_cubic(xs, ys, xs) == ys
    assert piecewise_linear(xs, ys, xs) == ys


def test_spike_does_not_go_negative():
    # the adversarial [0, 60, 0] bin pattern
    xs = [0.0, 1.0, 2.0, 3.0, 4.0]
    ys = [0.0, 0.0, 60.0, 0.0, 0.0]
    sample = [i / 100 for i in range(401)]
    values = monotone_cubic(xs, ys, sample)
    assert min(values) >= 0.0
    assert max(values) <= 60.0


def test_monotone_data_stays_monotone():
    xs = [0.0, 1.0, 2.0, 3.0]
    ys = [0.0, 10.0, 30.0, 31.0]
    sample = [i / 50 for i in range(151)]
    values = monotone_cubic(xs, ys, sample)
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_two_knots_is_a_straight_line():
    values = monotone_cubic([0.0, 2.0], [0.0, 10.0], [0.0, 0.5, 1.0, 2.0])
    assert values == pytest.approx([0.0, 2.5, 5.0, 10.0])


def test_clamps_outside_domain():
    xs = [1.0, 2.0, 3.0]
    ys = [5.0, 7.0, 6.0]
    slopes = hermite_slopes(xs, ys)
    assert eval_hermite(xs, ys, slopes, 0.0) == 5.0
    assert eval_hermite(xs, ys, slopes, 9.0) == 6.0


def test_rejects_bad_knots():
    with pytest.raises(ValueError):
        hermite_slopes([0.0, 0.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        hermite_slopes([0.0], [1.0])


@given(st.lists(st.integers(min_value=0, max_value=60), min_size=2, max_size=26))
def test_nonnegative_data_gives_nonnegative_curve(values):
    xs = [float(i) for i in range(len(values))]
    ys = [float(v) for v in values]
    sample = [i / 4 for i in range(4 * (len(values) - 1) + 1)]
    out = monotone_cubic(xs, ys, sample)
    assert min(out) >= -1e-9
    assert max(out) <= 60.0 + 1e-9


def test_bounded_by_segment_endpoints():
    rng = random.Random(11)
    for _ in range(200):
        ys = [float(rng.randint(0, 60)) for _ in range(8)]
        xs = [float(i) for i in range(8)]
        slopes = hermite_slopes(xs, ys)
        for i in range(7):
            lo, hi = min(ys[i], ys[i + 1]), max(ys[i], ys[i + 1])
            for k in range(1, 10):
                v = eval_hermite(xs, ys, slopes, i + k / 10)
                assert lo - 1e-9 <= v <= hi + 1e-9
