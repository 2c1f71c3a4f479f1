import assert from "node:assert/strict";
import { test } from "node:test";
import { ApiClient, ApiError } from "../src/api.js";
import { JOB, jsonResponse, mockFetch } from "./helpers.js";
test("search encodes the query and unwraps jobs", async () => {
    const fetchFn = mockFetch([
        {
            match: (url) => url.includes("/api/jobs"),
            respond: () => jsonResponse({ schema_version: 1, jobs: [JOB] }),
        },
    ]);
    const client = new ApiClient("", fetchFn);
    const jobs = await client.searchJobs("senior engineer & co");
    assert.equal(jobs.length, 1);
    assert.ok(fetchFn.requests[0].url.includes("q=senior%20engineer%20%26%20co"));
});
test("plan posts JSON and returns the payload", async () => {
    const payload = {
        schema_version: 1,
        origin: JOB,
        method: "multicriteria_utility",
        hops: [],
        totals: { D: 0, L: 0, R: 0 },
    };
    const fetchFn = mockFetch([
        {
            match: (url, init) => url.includes("/api/plan") && init?.method === "POST",
            respond: () => jsonResponse(payload),
        },
    ]);
    const client = new ApiClient("", fetchFn);
    const path = await client.plan({ origin_job_id: 0, lambda: "auto" });
    assert.deepEqual(path.totals, { D: 0, L: 0, R: 0 });
    assert.deepEqual(fetchFn.requests[0].body, { origin_job_id: 0, lambda: "auto" });
});
test("error responses raise ApiError with the server detail", async () => {
    const fetchFn = mockFetch([
        {
            match: () => true,
            respond: () => jsonResponse({ schema_version: 1, error: "unknown job id: 999" }, 404),
        },
    ]);
    const client = new ApiClient("", fetchFn);
    await assert.rejects(() => client.neighbors(999), (error) => {
        assert.ok(error instanceof ApiError);
        const apiError = error;
        assert.equal(apiError.status, 404);
        assert.match(apiError.message, /unknown job id/);
        return true;
    });
});
test("non-JSON error bodies fall back to the status code", async () => {
    const fetchFn = mockFetch([
        {
            match: () => true,
            respond: () => new Response("<html>gateway broke</html>", { status: 502 }),
        },
    ]);
    const client = new ApiClient("", fetchFn);
    await assert.rejects(() => client.weights(), (error) => error instanceof ApiError && error.message === "HTTP 502");
});
