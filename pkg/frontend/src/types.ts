// Wire types mirroring the journal service's JSON payloads.

export interface Activity {
  id: string;
  name: string;
  color: string;
  order: number;
  archived: boolean;
}

export interface IntervalDto {
  activity: string;
  start: number;
  end: number;
}

export interface TimerDto {
  activity: string;
  started_at: number;
}

export interface DayDto {
  date: string;
  planned: IntervalDto[];
  logged: IntervalDto[];
  active: TimerDto[];
}

/** One activity's filled band; points are [x, lower, upper] in data units. */
export interface BandDto {
  activity: string;
  side: "logged" | "planned";
  points: [number, number, number][];
}

export interface GeometryDto {
  date: string | null;
  y_max: number;
  bands: BandDto[];
}

export interface WeekDto {
  start: string;
  shared_y_max: number;
  layouts: GeometryDto[];
}

export interface PatternEventDto {
  kind: string;
  activity: string;
  planned: IntervalDto | null;
  logged: IntervalDto | null;
  replacing_activity: string | null;
  magnitude_minutes: number;
}

export interface PatternsDto {
  date: string;
  events: PatternEventDto[];
}

export interface ScoreDto {
  date: string;
  per_activity: Record<string, number | null>;
  overall: number | null;
}

export interface ToggleResponse {
  status: "started" | "stopped";
  day: DayDto;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}
