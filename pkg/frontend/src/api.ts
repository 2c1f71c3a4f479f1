// Typed client for the jobpath query API. All numbers displayed by the UI
// come from these payloads; the client never recomputes criteria.

export interface JobRef {
  id: number;
  industry: string;
  company_size: string;
  title: string;
}

export interface JobSummary extends JobRef {
  level: number;
  pagerank: number;
  out_degree?: number;
}

export interface PathHop {
  from: JobRef;
  to: JobRef;
  D: number;
  L: number;
  R: number;
}

export interface PathTotals {
  D: number;
  L: number;
  R: number;
}

export interface PathResponse {
  schema_version: number;
  origin: JobRef;
  method: string;
  hops: PathHop[];
  totals: PathTotals;
  lambda?: number[];
}

export interface WeightEntry {
  weights: number[];
  pim: number | null;
  is_star: boolean;
}

export interface WeightsResponse {
  schema_version: number;
  lambda_star: number[];
  entries: WeightEntry[];
}

export interface PlanRequest {
  origin_job_id: number;
  lambda?: number[] | "auto";
  method?: string;
  max_len?: number;
  snap?: boolean;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseJson(response: Response): Promise<unknown> {
  if (!response.ok) {
    let detail = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body && typeof body.error === "string") {
        detail = body.error;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return response.json();
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async searchJobs(query: string, signal?: AbortSignal): Promise<JobSummary[]> {
    const url = `${this.baseUrl}/api/jobs?q=${encodeURIComponent(query)}`;
    const payload = (await parseJson(await this.fetchFn(url, { signal }))) as {
      jobs: JobSummary[];
    };
    return payload.jobs;
  }

  async weights(): Promise<WeightsResponse> {
    const url = `${this.baseUrl}/api/weights`;
    return (await parseJson(await this.fetchFn(url))) as WeightsResponse;
  }

  async plan(request: PlanRequest, signal?: AbortSignal): Promise<PathResponse> {
    const url = `${this.baseUrl}/api/plan`;
    const response = await this.fetchFn(url, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
      signal,
    });
    return (await parseJson(response)) as PathResponse;
  }

  async neighbors(jobId: number): Promise<unknown> {
    const url = `${this.baseUrl}/api/graph/neighbors/${jobId}`;
    return parseJson(await this.fetchFn(url));
  }

  async benchmark(): Promise<unknown> {
    return parseJson(await this.fetchFn(`${this.baseUrl}/api/benchmark`));
  }
}
