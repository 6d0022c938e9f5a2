// Reflection panel: detected deviation events and adherence scores, plus
// week small multiples rendered with the shared y scale the server picked.

import { renderStream, DEFAULT_STREAM_OPTIONS } from "./stream";
import { Activity, PatternsDto, ScoreDto, WeekDto } from "./types";

const KIND_LABELS: Record<string, string> = {
  forward_shift: "moved later",
  backward_shift: "moved earlier",
  replacement: "replaced by",
  addition: "unplanned",
  lengthening: "ran longer",
  shortening: "cut short",
  omission: "dropped",
};

export function renderPatterns(
  container: Element,
  patterns: PatternsDto,
  names: Map<string, string>,
): void {
  const doc = container.ownerDocument;
  const list = doc.createElement("ul");
  list.className = "pattern-list";
  if (patterns.events.length === 0) {
    const item = doc.createElement("li");
    item.className = "pattern-none";
    item.textContent = "no deviations: the day went to plan";
    list.appendChild(item);
  }
  for (const event of patterns.events) {
    const item = doc.createElement("li");
    item.className = `pattern pattern-${event.kind}`;
    const label = KIND_LABELS[event.kind] ?? event.kind;
    const name = names.get(event.activity) ?? event.activity;
    let text = `${name}: ${label}`;
    if (event.kind === "replacement" && event.replacing_activity) {
      text += ` ${names.get(event.replacing_activity) ?? event.replacing_activity}`;
    }
    if (["forward_shift", "backward_shift", "lengthening", "shortening"].includes(event.kind)) {
      text += ` (${event.magnitude_minutes} min)`;
    }
    item.textContent = text;
    list.appendChild(item);
  }
  container.replaceChildren(list);
}

export function renderScore(
  container: Element,
  score: ScoreDto,
  names: Map<string, string>,
): void {
  const doc = container.ownerDocument;
  const root = doc.createElement("div");
  root.className = "score-panel";
  const overall = doc.createElement("p");
  overall.className = "score-overall";
  overall.textContent =
    score.overall === null
      ? "adherence: no data yet"
      : `adherence: ${(score.overall * 100).toFixed(0)}%`;
  root.appendChild(overall);
  const list = doc.createElement("ul");
  for (const [activity, value] of Object.entries(score.per_activity)) {
    if (value === null) continue;
    const item = doc.createElement("li");
    item.dataset.activity = activity;
    item.textContent = `${names.get(activity) ?? activity}: ${(value * 100).toFixed(0)}%`;
    list.appendChild(item);
  }
  root.appendChild(list);
  container.replaceChildren(root);
}

export function renderWeek(
  container: Element,
  week: WeekDto,
  activities: Activity[],
  onPickDay: (date: string) => void,
): void {
  const doc = container.ownerDocument;
  const palette = new Map(activities.map((a) => [a.id, a.color]));
  const strip = doc.createElement("div");
  strip.className = "week-strip";
  for (const layout of week.layouts) {
    const cell = doc.createElement("figure");
    cell.className = "week-cell";
    const chart = doc.createElement("div");
    renderStream(chart, layout, palette, {
      ...DEFAULT_STREAM_OPTIONS,
      width: 220,
      height: 110,
      margin: 8,
    });
    const caption = doc.createElement("figcaption");
    caption.textContent = layout.date ?? "";
    cell.append(chart, caption);
    if (layout.date) {
      const date = layout.date;
      cell.addEventListener("click", () => onPickDay(date));
    }
    strip.appendChild(cell);
  }
  container.replaceChildren(strip);
}
