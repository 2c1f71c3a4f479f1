// Typed client for the jobpath query API. All numbers displayed by the UI
// come from these payloads; the client never recomputes criteria.
export class ApiError extends Error {
    status;
    constructor(status, message) {
        super(message);
        this.status = status;
        this.name = "ApiError";
    }
}
async function parseJson(response) {
    if (!response.ok) {
        let detail = `HTTP ${response.status}`;
        try {
            const body = (await response.json());
            if (body && typeof body.error === "string") {
                detail = body.error;
            }
        }
        catch {
            // non-JSON error body; keep the status text
        }
        throw new ApiError(response.status, detail);
    }
    return response.json();
}
export class ApiClient {
    baseUrl;
    fetchFn;
    constructor(baseUrl = "", fetchFn = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async searchJobs(query, signal) {
        const url = `${this.baseUrl}/api/jobs?q=${encodeURIComponent(query)}`;
        const payload = (await parseJson(await this.fetchFn(url, { signal })));
        return payload.jobs;
    }
    async weights() {
        const url = `${this.baseUrl}/api/weights`;
        return (await parseJson(await this.fetchFn(url)));
    }
    async plan(request, signal) {
        const url = `${this.baseUrl}/api/plan`;
        const response = await this.fetchFn(url, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(request),
            signal,
        });
        return (await parseJson(response));
    }
    async neighbors(jobId) {
        const url = `${this.baseUrl}/api/graph/neighbors/${jobId}`;
        return parseJson(await this.fetchFn(url));
    }
    async benchmark() {
        return parseJson(await this.fetchFn(`${this.baseUrl}/api/benchmark`));
    }
}
