// Thin typed client over the journal service. Every rendered value in the
// UI originates from one of these calls; nothing is derived client-side
// beyond coordinate scaling.

import {
  Activity,
  ApiError,
  ApiErrorBody,
  DayDto,
  GeometryDto,
  PatternsDto,
  ScoreDto,
  ToggleResponse,
  WeekDto,
} from "./types";

export type FetchLike = typeof fetch;

export interface LayoutQuery {
  order: string[];
  visible: string[];
  smooth: boolean;
}

async function request<T>(
  fetchImpl: FetchLike,
  url: string,
  init?: RequestInit,
): Promise<T> {
  const response = await fetchImpl(url, init);
  if (!response.ok) {
    let body: ApiErrorBody = { code: "HttpError", message: response.statusText };
    try {
      body = (await response.json()) as ApiErrorBody;
    } catch {
      // non-JSON error body; keep the fallback
    }
    throw new ApiError(response.status, body.code, body.message);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    private base: string = "",
    private fetchImpl: FetchLike = fetch.bind(globalThis),
  ) {}

  activities(): Promise<Activity[]> {
    return request(this.fetchImpl, `${this.base}/api/activities`);
  }

  day(date: string): Promise<DayDto> {
    return request(this.fetchImpl, `${this.base}/api/days/${date}`);
  }

  layout(date: string, query: LayoutQuery): Promise<GeometryDto> {
    const params = new URLSearchParams({
      order: query.order.join(","),
      visible: query.visible.join(","),
      smooth: String(query.smooth),
    });
    return request(
      this.fetchImpl,
      `${this.base}/api/days/${date}/layout?${params}`,
    );
  }

  week(start: string, query: LayoutQuery): Promise<WeekDto> {
    const params = new URLSearchParams({
      order: query.order.join(","),
      visible: query.visible.join(","),
      smooth: String(query.smooth),
    });
    return request(
      this.fetchImpl,
      `${this.base}/api/week/${start}/layouts?${params}`,
    );
  }

  patterns(date: string): Promise<PatternsDto> {
    return request(this.fetchImpl, `${this.base}/api/days/${date}/patterns`);
  }

  score(date: string): Promise<ScoreDto> {
    return request(this.fetchImpl, `${this.base}/api/days/${date}/score`);
  }

  toggle(activity: string, date: string, now: number): Promise<ToggleResponse> {
    return request(this.fetchImpl, `${this.base}/api/toggle`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ activity, date, now }),
    });
  }

  addInterval(
    date: string,
    kind: "plan" | "log",
    activity: string,
    start: number,
    end: number,
  ): Promise<DayDto> {
    return request(this.fetchImpl, `${this.base}/api/days/${date}/${kind}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ activity, start, end }),
    });
  }

  removeInterval(
    date: string,
    kind: "plan" | "log",
    activity: string,
    start: number,
    end: number,
  ): Promise<DayDto> {
    const id = `${activity}:${start}:${end}`;
    return request(this.fetchImpl, `${this.base}/api/days/${date}/${kind}/${id}`, {
      method: "DELETE",
    });
  }
}
