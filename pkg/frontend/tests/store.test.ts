// UI contract: snap-once planning, cache, failure isolation, cancellation.

import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { test } from "node:test";
import { fileURLToPath } from "node:url";

import { ApiClient, PathResponse } from "../src/api.js";
import { ExplorerStore } from "../src/store.js";
import { JOB, jsonResponse, mockFetch, weightsPayload } from "./helpers.js";

// Compiled tests run from test-dist/tests/, so the fixture lives two
// levels up in the source tree.
const ONE_HOT_FIXTURE = JSON.parse(
  readFileSync(
    fileURLToPath(new URL("../../tests/fixtures/one_hot_plan.json", import.meta.url)),
    "utf-8",
  ),
) as PathResponse;

function pathPayload(method = "multicriteria_utility", lambda: number[] = [0.25, 0.25, 0.5]): unknown {
  return {
    schema_version: 1,
    origin: { id: JOB.id, industry: JOB.industry, company_size: JOB.company_size, title: JOB.title },
    method,
    lambda,
    hops: [
      {
        from: { id: 0, industry: "ind01", company_size: "[11-50]", title: "role 0010" },
        to: { id: 4, industry: "ind08", company_size: "[5001-10000]", title: "role 0014" },
        D: 11.5,
        L: 6.25,
        R: 2.5,
      },
    ],
    totals: { D: 11.5, L: 6.25, R: 2.5 },
  };
}

function storeWithRoutes(planResponder?: (url: string, init?: RequestInit) => Response) {
  const fetchFn = mockFetch([
    {
      match: (url) => url.includes("/api/weights"),
      respond: () => jsonResponse(weightsPayload()),
    },
    {
      match: (url) => url.includes("/api/jobs"),
      respond: () => jsonResponse({ schema_version: 1, jobs: [JOB] }),
    },
    {
      match: (url, init) => url.includes("/api/plan") && init?.method === "POST",
      respond: planResponder ?? (() => jsonResponse(pathPayload())),
    },
  ]);
  const store = new ExplorerStore(new ApiClient("", fetchFn));
  return { store, fetchFn };
}

import type { RecordedRequest } from "./helpers.js";

function planRequests(fetchFn: { requests: RecordedRequest[] }): RecordedRequest[] {
  return fetchFn.requests.filter((r) => r.url.includes("/api/plan"));
}

test("slider release issues exactly one snapped plan request", async () => {
  const { store, fetchFn } = storeWithRoutes();
  await store.loadWeightGrid();
  await store.selectOrigin(JOB); // auto-plan – request #1
  fetchFn.requests.length = 0;

  store.setWeights([0.49, 0.26, 0.25]); // snaps to (0.5, 0.25, 0.25)
  await store.releaseWeights();

  const plans = planRequests(fetchFn);
  assert.equal(plans.length, 1);
  const body = plans[0]!.body as { snap: boolean; lambda: number[] };
  assert.equal(body.snap, true);
  assert.equal(fetchFn.requests.length, 1); // nothing else fired
});

test("two slider settings snapping to the same grid point reuse the cached path", async () => {
  const { store, fetchFn } = storeWithRoutes();
  await store.loadWeightGrid();
  await store.selectOrigin(JOB);
  fetchFn.requests.length = 0;

  store.setWeights([0.49, 0.26, 0.25]); // snaps to (0.5, 0.25, 0.25)
  await store.releaseWeights();
  const first = store.state.lastPath;
  assert.equal(planRequests(fetchFn).length, 1);

  store.setWeights([0.51, 0.24, 0.25]); // same snap target
  await store.releaseWeights();
  assert.equal(planRequests(fetchFn).length, 1); // no second request
  assert.equal(store.state.lastPath, first);
  assert.deepEqual(store.state.snapped, [0.5, 0.25, 0.25]);
});

test("API failure surfaces a banner and leaves prior state intact", async () => {
  let fail = false;
  const { store, fetchFn } = storeWithRoutes(() =>
    fail
      ? jsonResponse({ schema_version: 1, error: "boom" }, 500)
      : jsonResponse(pathPayload()),
  );
  await store.loadWeightGrid();
  await store.selectOrigin(JOB);
  const before = store.state.lastPath;
  assert.ok(before !== null);

  fail = true;
  store.setWeights([1, 0, 0]);
  await store.releaseWeights();

  assert.ok(store.state.error !== null);
  assert.match(store.state.error!, /500/);
  assert.equal(store.state.lastPath, before); // prior path preserved
  assert.equal(store.state.searchResults.length, 0 /* untouched */);
  void fetchFn;
});

test("409 and 400 from planning are surfaced inline", async () => {
  const { store } = storeWithRoutes(() =>
    jsonResponse({ schema_version: 1, error: "lambda is not a learned grid point" }, 409),
  );
  await store.loadWeightGrid();
  await store.selectOrigin(JOB);
  assert.match(store.state.error!, /409/);
  assert.match(store.state.error!, /grid point/);
});

test("one-hot slider path matches the CLI one-hot plan fixture", async () => {
  // The mock returns a payload captured from the command-line planner for
  // lambda = (0, 1, 0); the store must request exactly that vector and
  // display the payload untouched.
  const { store, fetchFn } = storeWithRoutes(() => jsonResponse(ONE_HOT_FIXTURE));
  await store.loadWeightGrid();
  store.state = { ...store.state, origin: JOB };

  store.setWeights([0, 1, 0]);
  await store.releaseWeights();

  const plans = planRequests(fetchFn);
  assert.equal(plans.length, 1);
  const body = plans[0]!.body as { lambda: number[] };
  assert.deepEqual(body.lambda, [0, 1, 0]);
  assert.deepEqual(store.state.snapped, [0, 1, 0]);

  const path = store.state.lastPath!;
  assert.deepEqual(path.totals, ONE_HOT_FIXTURE.totals);
  assert.equal(path.hops.length, ONE_HOT_FIXTURE.hops.length);
  assert.deepEqual(path.hops, ONE_HOT_FIXTURE.hops);
});

test("selecting an origin auto-refreshes the plan", async () => {
  const { store, fetchFn } = storeWithRoutes();
  await store.loadWeightGrid();
  await store.search("role");
  assert.equal(store.state.searchResults.length, 1);
  await store.selectOrigin(store.state.searchResults[0]!);
  assert.equal(planRequests(fetchFn).length, 1);
  assert.ok(store.state.lastPath !== null);
});

test("empty search query clears results without a request", async () => {
  const { store, fetchFn } = storeWithRoutes();
  await store.search("   ");
  assert.deepEqual(store.state.searchResults, []);
  assert.equal(fetchFn.requests.length, 0);
});

test("search failure keeps previous results and shows a banner", async () => {
  let healthy = true;
  const fetchFn = mockFetch([
    {
      match: (url) => url.includes("/api/jobs"),
      respond: () =>
        healthy
          ? jsonResponse({ schema_version: 1, jobs: [JOB] })
          : jsonResponse({ schema_version: 1, error: "down" }, 500),
    },
  ]);
  const store = new ExplorerStore(new ApiClient("", fetchFn));
  await store.search("role");
  assert.equal(store.state.searchResults.length, 1);
  healthy = false;
  await store.search("role again");
  assert.equal(store.state.searchResults.length, 1); // previous state preserved
  assert.match(store.state.error!, /500/);
});

test("newer slider release aborts the pending request", async () => {
  let release: ((r: Response) => void) | null = null;
  let callIndex = 0;
  const { store, fetchFn } = storeWithRoutes((): Response => {
    throw new Error("unused");
  });
  // custom plan route with a controllable first response
  const slowFetch = mockFetch([
    {
      match: (url) => url.includes("/api/weights"),
      respond: () => jsonResponse(weightsPayload()),
    },
    {
      match: (url, init) => url.includes("/api/plan") && init?.method === "POST",
      respond: (_url, init) => {
        callIndex += 1;
        if (callIndex === 1) {
          return new Promise<Response>((resolve, reject) => {
            release = resolve;
            init?.signal?.addEventListener("abort", () =>
              reject(new DOMException("aborted", "AbortError")),
            );
          });
        }
        return jsonResponse(pathPayload("multicriteria_utility", [1, 0, 0]));
      },
    },
  ]);
  const slowStore = new ExplorerStore(new ApiClient("", slowFetch));
  await slowStore.loadWeightGrid();
  slowStore.state = { ...slowStore.state, origin: JOB };

  slowStore.setWeights([0.5, 0.5, 0]);
  const firstRelease = slowStore.releaseWeights(); // hangs on the mock
  store.setWeights([0, 0, 1]);
  slowStore.setWeights([1, 0, 0]);
  const secondRelease = slowStore.releaseWeights(); // aborts the first

  await Promise.all([firstRelease, secondRelease]);
  assert.equal(planRequests(slowFetch).length, 2);
  const firstSignal = planRequests(slowFetch)[0]!.signal;
  assert.equal(firstSignal?.aborted, true);
  assert.equal(slowStore.state.lastPath!.lambda![0], 1);
  assert.equal(slowStore.state.error, null);
  assert.ok(release !== null); // the hung promise was created
  void fetchFn;
});

test("lambda-star shortcut applies the starred grid vector", async () => {
  const { store, fetchFn } = storeWithRoutes();
  await store.loadWeightGrid();
  store.state = { ...store.state, origin: JOB };
  await store.applyLambdaStar();

  const star = (store.state.weightGrid!.entries.find((e) => e.is_star) ?? null)!.weights;
  assert.deepEqual(store.state.snapped, star);
  const body = planRequests(fetchFn)[0]!.body as { lambda: number[] };
  assert.deepEqual(body.lambda, star);
});

test("compare fetches one path per selected method", async () => {
  const { store, fetchFn } = storeWithRoutes((_, init) => {
    const body = JSON.parse(init?.body as string) as { method: string };
    return jsonResponse(pathPayload(body.method));
  });
  await store.loadWeightGrid();
  store.state = { ...store.state, origin: JOB };
  await store.compare(["multicriteria_utility", "greedy_most_common"]);
  assert.equal(planRequests(fetchFn).length, 2);
  assert.deepEqual(
    store.state.comparePaths.map((p) => p.method),
    ["multicriteria_utility", "greedy_most_common"],
  );
});
