"""Standalone SVG export of wave geometry. No dependencies, byte-stable."""

from __future__ import annotations

from typing import Mapping

from .errors import DegenerateCanvas
from .layout import SIDE_PLANNED, WaveGeometry

MIN_CANVAS = 100
MARGIN = 28
PLANNED_OPACITY = 0.5
FALLBACK_COLOR = "#888888"
EMPTY_SCALE_MINUTES = 60.0


def _fmt(value: float) -> str:
    # fixed precision keeps equal inputs byte-identical
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


def render_svg(
    geometry: WaveGeometry,
    palette: Mapping[str, str],
    width_px: int = 960,
    height_px: int = 420,
) -> str:
    """Render mirrored wave geometry as an SVG 1.1 document.

    One closed path per activity per side; planned paths at 50% opacity.
    The y scale is symmetric about the baseline and covers the geometry's
    maximum extent. Paths carry data-activity/data-side attributes for
    hit-testing.
    """
    if width_px < MIN_CANVAS or height_px < MIN_CANVAS:
        raise DegenerateCanvas(
            f"canvas must be at least {MIN_CANVAS}x{MIN_CANVAS}px, "
            f"got {width_px}x{height_px}"
        )
    plot_w = width_px - 2 * MARGIN
    plot_h = height_px - 2 * MARGIN
    center_y = MARGIN + plot_h / 2
    scale = geometry.y_max if geometry.y_max > 0 else EMPTY_SCALE_MINUTES

    def px(x: float) -> float:
        return MARGIN + (x / 24.0) * plot_w

    def py(y: float) -> float:
        return center_y - (y / scale) * (plot_h / 2)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width_px}" height="{height_px}" '
        f'viewBox="0 0 {width_px} {height_px}">',
        f'<rect x="0" y="0" width="{width_px}" height="{height_px}" fill="#ffffff"/>',
    ]

    for band in geometry.bands:
        color = palette.get(band.activity, FALLBACK_COLOR)
        opacity = PLANNED_OPACITY if band.side == SIDE_PLANNED else 1.0
        forward = [f"{_fmt(px(x))},{_fmt(py(upper))}" for x, _, upper in band.points]
        backward = [
            f"{_fmt(px(x))},{_fmt(py(lower))}" for x, lower, _ in reversed(band.points)
        ]
        d = "M" + " L".join(forward + backward) + " Z"
        lines.append(
            f'<path d="{d}" fill="{color}" fill-opacity="{opacity:g}" '
            f'data-activity="{band.activity}" data-side="{band.side}"/>'
        )

    # hour ticks along the baseline, labels every six hours
    for hour in range(25):
        x = _fmt(px(hour))
        lines.append(
            f'<line x1="{x}" y1="{_fmt(center_y - 3)}" x2="{x}" '
            f'y2="{_fmt(center_y + 3)}" stroke="#555555" stroke-width="1"/>'
        )
        if hour % 6 == 0:
            lines.append(
                f'<text x="{x}" y="{_fmt(height_px - 8)}" text-anchor="middle" '
                f'font-size="11" font-family="sans-serif">{hour}</text>'
            )

    # the central baseline itself, drawn above the waves
    lines.append(
        f'<line x1="{_fmt(px(0))}" y1="{_fmt(center_y)}" x2="{_fmt(px(24))}" '
        f'y2="{_fmt(center_y)}" stroke="#333333" stroke-width="1"/>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
