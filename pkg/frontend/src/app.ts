// Application wiring: one ViewState, one ApiClient, and a render loop in
// which every displayed value comes straight from an API response. The
// active-timer poll re-fetches on a fixed interval; layout fetches carry
// sequence numbers so a stale response can never overwrite a newer one.

import { ApiClient } from "./api";
import { renderDiary, showDiaryError } from "./diary";
import { renderLegend } from "./legend";
import { renderPatterns, renderScore, renderWeek } from "./panel";
import { ViewState } from "./state";
import { renderStream } from "./stream";
import { Activity, ApiError } from "./types";

export interface AppElements {
  legend: Element;
  stream: Element;
  week: Element;
  diary: Element;
  patterns: Element;
  score: Element;
  dateInput: HTMLInputElement;
  smoothInput: HTMLInputElement;
}

function today(): string {
  const now = new Date();
  const month = String(now.getMonth() + 1).padStart(2, "0");
  const day = String(now.getDate()).padStart(2, "0");
  return `${now.getFullYear()}-${month}-${day}`;
}

function minutesNow(): number {
  const now = new Date();
  return now.getHours() * 60 + now.getMinutes();
}

export class App {
  state: ViewState;
  activities: Activity[] = [];
  private names = new Map<string, string>();
  private palette = new Map<string, string>();
  private pollTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private api: ApiClient,
    private elements: AppElements,
    selectedDate: string = today(),
    private clock: () => number = minutesNow,
  ) {
    this.state = new ViewState(selectedDate, []);
  }

  async start(): Promise<void> {
    await this.refreshActivities();
    this.elements.dateInput.value = this.state.selectedDate;
    this.elements.dateInput.addEventListener("change", () => {
      this.state.selectedDate = this.elements.dateInput.value;
      void this.refreshAll();
    });
    this.elements.smoothInput.checked = this.state.config.smooth;
    this.elements.smoothInput.addEventListener("change", () => {
      this.state.config.smooth = this.elements.smoothInput.checked;
      void this.refreshStream();
    });
    await this.refreshAll();
    this.pollTimer = setInterval(() => {
      void this.pollActive();
    }, this.state.pollIntervalMs);
  }

  stop(): void {
    if (this.pollTimer !== null) clearInterval(this.pollTimer);
  }

  async refreshActivities(): Promise<void> {
    this.activities = await this.api.activities();
    const live = this.activities.filter((a) => !a.archived);
    // stored order seeds the session stack; session changes stay local
    this.state.adoptStoredOrder(
      [...live].sort((a, b) => a.order - b.order).map((a) => a.id),
    );
    this.names = new Map(this.activities.map((a) => [a.id, a.name]));
    this.palette = new Map(this.activities.map((a) => [a.id, a.color]));
  }

  layoutQuery() {
    return {
      order: [...this.state.config.order],
      visible: this.state.visibleInOrder(),
      smooth: this.state.config.smooth,
    };
  }

  async refreshAll(): Promise<void> {
    await Promise.all([
      this.refreshStream(),
      this.refreshDiary(),
      this.refreshPanel(),
      this.refreshWeek(),
      this.pollActive(),
    ]);
  }

  async refreshStream(): Promise<void> {
    const seq = this.state.nextSeq();
    const geometry = await this.api.layout(
      this.state.selectedDate,
      this.layoutQuery(),
    );
    if (!this.state.acceptSeq(seq)) return; // a newer fetch superseded this one
    renderStream(this.elements.stream, geometry, this.palette, {
      width: 960,
      height: 420,
      margin: 28,
      plannedOpacity: 0.5,
      onWaveClick: (activity) => {
        this.state.pullToBaseline(activity);
        void this.refreshStream();
      },
    });
  }

  async refreshWeek(): Promise<void> {
    const week = await this.api.week(this.state.selectedDate, this.layoutQuery());
    renderWeek(this.elements.week, week, this.activities, (date) => {
      this.state.selectedDate = date;
      this.elements.dateInput.value = date;
      void this.refreshAll();
    });
  }

  async refreshDiary(): Promise<void> {
    const day = await this.api.day(this.state.selectedDate);
    renderDiary(this.elements.diary, day, this.activities, {
      onAdd: (kind, activity, start, end) => {
        void this.addInterval(kind, activity, start, end);
      },
      onRemove: (kind, interval) => {
        void this.removeInterval(kind, interval.activity, interval.start, interval.end);
      },
    });
  }

  async refreshPanel(): Promise<void> {
    const [patterns, score] = await Promise.all([
      this.api.patterns(this.state.selectedDate),
      this.api.score(this.state.selectedDate),
    ]);
    renderPatterns(this.elements.patterns, patterns, this.names);
    renderScore(this.elements.score, score, this.names);
  }

  async pollActive(): Promise<void> {
    const day = await this.api.day(this.state.selectedDate);
    const active = new Set(day.active.map((t) => t.activity));
    renderLegend(
      this.elements.legend,
      this.activities,
      active,
      this.state.pendingToggles,
      this.state.config.visible,
      {
        onToggleLogging: (activity) => {
          void this.toggle(activity);
        },
        onVisibilityChange: (activity, shown) => {
          this.state.setVisible(activity, shown);
          void this.refreshStream();
        },
      },
    );
  }

  async toggle(activity: string): Promise<void> {
    if (this.state.pendingToggles.has(activity)) return; // acknowledgement pending
    this.state.pendingToggles.add(activity);
    try {
      await this.api.toggle(activity, this.state.selectedDate, this.clock());
    } finally {
      this.state.pendingToggles.delete(activity);
    }
    await Promise.all([this.pollActive(), this.refreshStream(), this.refreshPanel()]);
  }

  async addInterval(
    kind: "plan" | "log",
    activity: string,
    start: number,
    end: number,
  ): Promise<void> {
    try {
      await this.api.addInterval(this.state.selectedDate, kind, activity, start, end);
    } catch (exc) {
      if (exc instanceof ApiError) {
        showDiaryError(this.elements.diary, `${exc.code}: ${exc.message}`);
        return;
      }
      throw exc;
    }
    await Promise.all([this.refreshDiary(), this.refreshStream(), this.refreshPanel()]);
  }

  async removeInterval(
    kind: "plan" | "log",
    activity: string,
    start: number,
    end: number,
  ): Promise<void> {
    try {
      await this.api.removeInterval(this.state.selectedDate, kind, activity, start, end);
    } catch (exc) {
      if (exc instanceof ApiError) {
        showDiaryError(this.elements.diary, `${exc.code}: ${exc.message}`);
        return;
      }
      throw exc;
    }
    await Promise.all([this.refreshDiary(), this.refreshStream(), this.refreshPanel()]);
  }
}

export function mount(root: Document = document): App {
  const elements: AppElements = {
    legend: root.getElementById("legend")!,
    stream: root.getElementById("stream")!,
    week: root.getElementById("week")!,
    diary: root.getElementById("diary")!,
    patterns: root.getElementById("patterns")!,
    score: root.getElementById("score")!,
    dateInput: root.getElementById("date") as HTMLInputElement,
    smoothInput: root.getElementById("smooth") as HTMLInputElement,
  };
  const app = new App(new ApiClient(), elements);
  void app.start();
  return app;
}
