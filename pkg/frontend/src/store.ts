// Explorer state machine. Every displayed value derives from API
// responses; slider positions are the one piece of client-owned state and
// they only ever reach the server through a snapped plan request.

import {
  ApiClient,
  ApiError,
  JobSummary,
  PathResponse,
  WeightsResponse,
} from "./api.js";
import { renormalize, snapToGrid, Triple, weightsKey } from "./simplex.js";

export const ALL_METHODS = [
  "multicriteria_utility",
  "greedy_most_common",
  "greedy_shortest_duration",
  "greedy_level_gain",
  "greedy_desirability_gain",
  "utility_duration",
  "utility_level",
  "utility_desirability",
  "equal_weighted_utility",
] as const;

export type MethodName = (typeof ALL_METHODS)[number];

export interface ExplorerState {
  origin: JobSummary | null;
  weights: Triple;
  snapped: number[] | null;
  method: MethodName;
  searchResults: JobSummary[];
  lastPath: PathResponse | null;
  comparePaths: PathResponse[];
  weightGrid: WeightsResponse | null;
  error: string | null;
  planInFlight: boolean;
}

type Listener = (state: ExplorerState) => void;

export class ExplorerStore {
  state: ExplorerState = {
    origin: null,
    weights: [1 / 3, 1 / 3, 1 / 3],
    snapped: null,
    method: "multicriteria_utility",
    searchResults: [],
    lastPath: null,
    comparePaths: [],
    weightGrid: null,
    error: null,
    planInFlight: false,
  };

  private listeners: Listener[] = [];
  private planCache = new Map<string, PathResponse>();
  private planController: AbortController | null = null;

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  private setState(patch: Partial<ExplorerState>): void {
    this.state = { ...this.state, ...patch };
    this.emit();
  }

  async loadWeightGrid(): Promise<void> {
    try {
      const grid = await this.api.weights();
      this.setState({ weightGrid: grid, error: null });
    } catch (error) {
      this.setState({ error: describeError(error) });
    }
  }

  async search(query: string): Promise<void> {
    const trimmed = query.trim();
    if (trimmed === "") {
      this.setState({ searchResults: [] });
      return;
    }
    try {
      const jobs = await this.api.searchJobs(trimmed);
      this.setState({ searchResults: jobs, error: null });
    } catch (error) {
      // banner only; previous results stay on screen
      this.setState({ error: describeError(error) });
    }
  }

  async selectOrigin(job: JobSummary): Promise<void> {
    this.setState({ origin: job });
    await this.releaseWeights();
  }

  setWeights(raw: number[]): void {
    this.setState({ weights: renormalize(raw) });
  }

  setMethod(method: MethodName): Promise<void> {
    this.setState({ method });
    return this.releaseWeights();
  }

  async applyLambdaStar(): Promise<void> {
    const star = this.state.weightGrid?.lambda_star;
    if (!star) {
      this.setState({ error: "weight grid not loaded yet" });
      return;
    }
    this.setState({ weights: renormalize(star) });
    await this.releaseWeights();
  }

  gridPoints(): number[][] {
    return this.state.weightGrid?.entries.map((e) => e.weights) ?? [];
  }

  /**
   * Slider release: snap the display weights to the learned grid, answer
   * from cache when the snapped query was already planned, otherwise
   * issue exactly one plan request (cancelling any still-pending one).
   */
  async releaseWeights(): Promise<void> {
    const origin = this.state.origin;
    if (origin === null) {
      return;
    }
    const grid = this.gridPoints();
    const snapped =
      grid.length > 0 ? snapToGrid(this.state.weights, grid) : [...this.state.weights];
    const cacheKey = `${origin.id}|${this.state.method}|${weightsKey(snapped)}`;
    const cached = this.planCache.get(cacheKey);
    if (cached !== undefined) {
      this.setState({ lastPath: cached, snapped, error: null });
      return;
    }

    if (this.planController !== null) {
      this.planController.abort();
    }
    const controller = new AbortController();
    this.planController = controller;
    this.setState({ planInFlight: true, snapped });
    try {
      const path = await this.api.plan(
        {
          origin_job_id: origin.id,
          method: this.state.method,
          lambda: [...this.state.weights],
          snap: true,
        },
        controller.signal,
      );
      this.planCache.set(cacheKey, path);
      this.setState({ lastPath: path, error: null, planInFlight: false });
    } catch (error) {
      if (isAbort(error)) {
        return; // a newer release superseded this request
      }
      // 400/409/500 all surface inline; the previous path stays intact
      this.setState({ error: describeError(error), planInFlight: false });
    } finally {
      if (this.planController === controller) {
        this.planController = null;
      }
    }
  }

  /** Side-by-side comparison: one plan request per selected method. */
  async compare(methods: MethodName[]): Promise<void> {
    const origin = this.state.origin;
    if (origin === null) {
      return;
    }
    const paths: PathResponse[] = [];
    try {
      for (const method of methods) {
        paths.push(
          await this.api.plan({
            origin_job_id: origin.id,
            method,
            lambda: [...this.state.weights],
            snap: true,
          }),
        );
      }
      this.setState({ comparePaths: paths, error: null });
    } catch (error) {
      this.setState({ error: describeError(error) });
    }
  }
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    return `API error ${error.status}: ${error.message}`;
  }
  return error instanceof Error ? error.message : String(error);
}

function isAbort(error: unknown): boolean {
  return error instanceof DOMException && error.name === "AbortError";
}
