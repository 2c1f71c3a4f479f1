// Mock fetch plumbing shared by the test files.
export function jsonResponse(payload, status = 200) {
    return new Response(JSON.stringify(payload), {
        status,
        headers: { "Content-Type": "application/json" },
    });
}
export function mockFetch(routes) {
    const requests = [];
    const fn = (async (url, init) => {
        requests.push({
            url,
            method: init?.method ?? "GET",
            body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
            signal: init?.signal ?? undefined,
        });
        for (const route of routes) {
            if (route.match(url, init)) {
                return route.respond(url, init);
            }
        }
        throw new Error(`no mock route for ${url}`);
    });
    fn.requests = requests;
    return fn;
}
export function weightsPayload(h = 4) {
    const entries = [];
    for (let i = 0; i <= h; i += 1) {
        for (let j = 0; j <= h - i; j += 1) {
            const k = h - i - j;
            entries.push({
                weights: [i / h, j / h, k / h],
                pim: i * 1.5 + j * 0.5 + k,
                is_star: false,
            });
        }
    }
    let best = 0;
    entries.forEach((entry, index) => {
        if (entry.pim > entries[best].pim) {
            best = index;
        }
    });
    entries[best].is_star = true;
    return {
        schema_version: 1,
        lambda_star: entries[best].weights,
        entries,
    };
}
export const JOB = {
    id: 0,
    industry: "ind01",
    company_size: "[11-50]",
    title: "role 0010",
    level: 12.5,
    pagerank: 0.011,
    out_degree: 4,
};
