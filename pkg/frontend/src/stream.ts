// Mirrored stream chart: turns server-computed wave geometry into SVG
// regions. The only math here is scaling data coordinates to pixels; the
// stacking, smoothing, and mirroring all happened on the server.

import { GeometryDto } from "./types";

export interface StreamOptions {
  width: number;
  height: number;
  margin: number;
  plannedOpacity: number;
  onWaveClick?: (activity: string) => void;
}

export const DEFAULT_STREAM_OPTIONS: StreamOptions = {
  width: 960,
  height: 420,
  margin: 28,
  plannedOpacity: 0.5, // matches the server's SVG export
};

const SVG_NS = "http://www.w3.org/2000/svg";
const EMPTY_SCALE_MINUTES = 60;

function fmt(value: number): string {
  return value.toFixed(2);
}

export function bandPath(
  points: [number, number, number][],
  xPx: (x: number) => number,
  yPx: (y: number) => number,
): string {
  const forward = points.map(([x, , upper]) => `${fmt(xPx(x))},${fmt(yPx(upper))}`);
  const backward = [...points]
    .reverse()
    .map(([x, lower]) => `${fmt(xPx(x))},${fmt(yPx(lower))}`);
  return `M${[...forward, ...backward].join(" L")} Z`;
}

export function renderStream(
  container: Element,
  geometry: GeometryDto,
  palette: Map<string, string>,
  options: StreamOptions = DEFAULT_STREAM_OPTIONS,
): SVGSVGElement {
  const { width, height, margin, plannedOpacity, onWaveClick } = options;
  const doc = container.ownerDocument;
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "stream-chart");
  svg.setAttribute("role", "img");

  const plotW = width - 2 * margin;
  const plotH = height - 2 * margin;
  const centerY = margin + plotH / 2;
  const scale = geometry.y_max > 0 ? geometry.y_max : EMPTY_SCALE_MINUTES;
  const xPx = (x: number) => margin + (x / 24) * plotW;
  const yPx = (y: number) => centerY - (y / scale) * (plotH / 2);

  for (const band of geometry.bands) {
    const path = doc.createElementNS(SVG_NS, "path");
    path.setAttribute("d", bandPath(band.points, xPx, yPx));
    path.setAttribute("fill", palette.get(band.activity) ?? "#888888");
    path.setAttribute(
      "fill-opacity",
      band.side === "planned" ? String(plannedOpacity) : "1",
    );
    path.setAttribute("class", "wave-region");
    path.dataset.activity = band.activity;
    path.dataset.side = band.side;
    if (onWaveClick) {
      path.addEventListener("click", () => onWaveClick(band.activity));
    }
    svg.appendChild(path);
  }

  // hour ticks and the central baseline, above the waves
  for (let hour = 0; hour <= 24; hour += 1) {
    const tick = doc.createElementNS(SVG_NS, "line");
    tick.setAttribute("x1", fmt(xPx(hour)));
    tick.setAttribute("x2", fmt(xPx(hour)));
    tick.setAttribute("y1", fmt(centerY - 3));
    tick.setAttribute("y2", fmt(centerY + 3));
    tick.setAttribute("stroke", "#555");
    tick.setAttribute("class", "hour-tick");
    svg.appendChild(tick);
    if (hour % 6 === 0) {
      const label = doc.createElementNS(SVG_NS, "text");
      label.setAttribute("x", fmt(xPx(hour)));
      label.setAttribute("y", fmt(height - 8));
      label.setAttribute("text-anchor", "middle");
      label.setAttribute("class", "hour-label");
      label.textContent = String(hour);
      svg.appendChild(label);
    }
  }
  const baseline = doc.createElementNS(SVG_NS, "line");
  baseline.setAttribute("x1", fmt(xPx(0)));
  baseline.setAttribute("x2", fmt(xPx(24)));
  baseline.setAttribute("y1", fmt(centerY));
  baseline.setAttribute("y2", fmt(centerY));
  baseline.setAttribute("stroke", "#333");
  baseline.setAttribute("class", "baseline");
  svg.appendChild(baseline);

  container.replaceChildren(svg);
  return svg;
}
