// Activity legend: one chip per live activity. Clicking a chip toggles
// on-the-go logging through the API; currently running activities get an
// animated border. Checkboxes drive the session-local visibility filter.

import { Activity } from "./types";

export interface LegendHandlers {
  onToggleLogging: (activity: string) => void;
  onVisibilityChange: (activity: string, shown: boolean) => void;
}

export function renderLegend(
  container: Element,
  activities: Activity[],
  activeIds: Set<string>,
  pendingIds: Set<string>,
  visible: Set<string>,
  handlers: LegendHandlers,
): void {
  const doc = container.ownerDocument;
  const list = doc.createElement("ul");
  list.className = "legend";
  for (const activity of activities.filter((a) => !a.archived)) {
    const item = doc.createElement("li");
    item.className = "legend-item";
    item.dataset.activity = activity.id;

    const checkbox = doc.createElement("input");
    checkbox.type = "checkbox";
    checkbox.checked = visible.has(activity.id);
    checkbox.className = "legend-filter";
    checkbox.title = `show or hide ${activity.name}`;
    checkbox.addEventListener("change", () =>
      handlers.onVisibilityChange(activity.id, checkbox.checked),
    );
    item.appendChild(checkbox);

    const chip = doc.createElement("button");
    chip.type = "button";
    chip.className = "legend-chip";
    if (activeIds.has(activity.id)) chip.classList.add("active"); // animated border via CSS
    if (pendingIds.has(activity.id)) chip.classList.add("pending");
    chip.style.setProperty("--chip-color", activity.color);
    chip.textContent = activity.name;
    chip.addEventListener("click", () => handlers.onToggleLogging(activity.id));
    item.appendChild(chip);

    list.appendChild(item);
  }
  container.replaceChildren(list);
}
