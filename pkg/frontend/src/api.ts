/** Typed client for the exercise service.
 *
 * The browser side never inspects programs or computes hints; it only
 * carries these documented payloads back and forth.
 */

export interface ExerciseSummary {
  id: string;
  statement: string;
}

export interface ExerciseDetail extends ExerciseSummary {
  given: string;
}

export interface HintView {
  phase: number;
  level: number;
  message: string;
  payload: Record<string, unknown>;
}

export interface DiagnosisView {
  phase_reached: number | string;
  passed: boolean;
  finding: Record<string, unknown> | null;
  hints: HintView[];
  flags: string[];
  timings: Record<string, number>;
}

export interface AttemptRequest {
  answer_source: string;
  requested_level: number;
  session?: string;
}

export interface AttemptResponse {
  session: string;
  exercise_id: string;
  served_level: number;
  available_level: number;
  failed_attempts: number;
  passed: boolean;
  diagnosis: DiagnosisView;
}

export interface Api {
  listExercises(): Promise<ExerciseSummary[]>;
  getExercise(id: string): Promise<ExerciseDetail>;
  submitAttempt(id: string, request: AttemptRequest): Promise<AttemptResponse>;
}

/** HTTP error the service answered with (404, 422, 503, ...). */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function readError(response: Response): Promise<ApiError> {
  let detail = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // Non-JSON error body; keep the status line.
  }
  return new ApiError(response.status, detail);
}

export class HttpApi implements Api {
  constructor(private readonly baseUrl: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) throw await readError(response);
    return (await response.json()) as T;
  }

  listExercises(): Promise<ExerciseSummary[]> {
    return this.get("/api/v1/exercises");
  }

  getExercise(id: string): Promise<ExerciseDetail> {
    return this.get(`/api/v1/exercises/${encodeURIComponent(id)}`);
  }

  async submitAttempt(id: string, request: AttemptRequest): Promise<AttemptResponse> {
    const response = await fetch(
      `${this.baseUrl}/api/v1/exercises/${encodeURIComponent(id)}/attempts`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(request),
      },
    );
    if (!response.ok) throw await readError(response);
    return (await response.json()) as AttemptResponse;
  }
}
