// Diary editor: retrospective planning and logging on a 5-minute grid.
// Validation failures come back from the API as 409/422 and are surfaced
// inline, message verbatim.

import { Activity, DayDto, IntervalDto } from "./types";

export const DIARY_GRID_MINUTES = 5;

export function minutesToHhmm(minutes: number): string {
  const h = Math.floor(minutes / 60);
  const m = minutes % 60;
  return `${String(h).padStart(2, "0")}:${String(m).padStart(2, "0")}`;
}

export function hhmmToMinutes(text: string): number {
  const match = /^(\d{1,2}):(\d{2})$/.exec(text.trim());
  if (!match) throw new Error(`not a HH:MM time: ${text}`);
  const minutes = Number(match[1]) * 60 + Number(match[2]);
  if (Number(match[2]) > 59 || minutes > 1440) {
    throw new Error(`time out of range: ${text}`);
  }
  return minutes;
}

export function snapToGrid(minutes: number): number {
  return Math.round(minutes / DIARY_GRID_MINUTES) * DIARY_GRID_MINUTES;
}

export interface DiaryHandlers {
  onAdd: (kind: "plan" | "log", activity: string, start: number, end: number) => void;
  onRemove: (kind: "plan" | "log", interval: IntervalDto) => void;
}

function renderIntervalList(
  doc: Document,
  title: string,
  kind: "plan" | "log",
  intervals: IntervalDto[],
  names: Map<string, string>,
  handlers: DiaryHandlers,
): HTMLElement {
  const section = doc.createElement("section");
  section.className = `diary-${kind}`;
  const heading = doc.createElement("h3");
  heading.textContent = title;
  section.appendChild(heading);
  const list = doc.createElement("ul");
  for (const interval of intervals) {
    const item = doc.createElement("li");
    item.dataset.activity = interval.activity;
    const text = doc.createElement("span");
    text.textContent = `${names.get(interval.activity) ?? interval.activity} ${minutesToHhmm(interval.start)}-${minutesToHhmm(interval.end)}`;
    item.appendChild(text);
    const remove = doc.createElement("button");
    remove.type = "button";
    remove.className = "diary-remove";
    remove.textContent = "remove";
    remove.addEventListener("click", () => handlers.onRemove(kind, interval));
    item.appendChild(remove);
    list.appendChild(item);
  }
  section.appendChild(list);
  return section;
}

export function renderDiary(
  container: Element,
  day: DayDto,
  activities: Activity[],
  handlers: DiaryHandlers,
): void {
  const doc = container.ownerDocument;
  const root = doc.createElement("div");
  root.className = "diary";

  const names = new Map(activities.map((a) => [a.id, a.name]));
  root.appendChild(
    renderIntervalList(doc, "Planned", "plan", day.planned, names, handlers),
  );
  root.appendChild(
    renderIntervalList(doc, "Logged", "log", day.logged, names, handlers),
  );

  const form = doc.createElement("form");
  form.className = "diary-form";
  const select = doc.createElement("select");
  select.name = "activity";
  for (const activity of activities.filter((a) => !a.archived)) {
    const option = doc.createElement("option");
    option.value = activity.id;
    option.textContent = activity.name;
    select.appendChild(option);
  }
  const kindSelect = doc.createElement("select");
  kindSelect.name = "kind";
  for (const kind of ["plan", "log"]) {
    const option = doc.createElement("option");
    option.value = kind;
    option.textContent = kind;
    kindSelect.appendChild(option);
  }
  const start = doc.createElement("input");
  start.name = "start";
  start.placeholder = "14:00";
  const end = doc.createElement("input");
  end.name = "end";
  end.placeholder = "15:00";
  const submit = doc.createElement("button");
  submit.type = "submit";
  submit.textContent = "add";
  const error = doc.createElement("p");
  error.className = "diary-error";

  form.append(select, kindSelect, start, end, submit, error);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    error.textContent = "";
    try {
      const from = snapToGrid(hhmmToMinutes(start.value));
      const to = snapToGrid(hhmmToMinutes(end.value));
      handlers.onAdd(
        kindSelect.value as "plan" | "log",
        select.value,
        from,
        to,
      );
    } catch (exc) {
      error.textContent = exc instanceof Error ? exc.message : String(exc);
    }
  });
  root.appendChild(form);
  container.replaceChildren(root);
}

export function showDiaryError(container: Element, message: string): void {
  const error = container.querySelector(".diary-error");
  if (error) error.textContent = message;
}
