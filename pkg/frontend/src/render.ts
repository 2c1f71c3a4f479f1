// Pure HTML-string renderers. Numbers shown here are copied from API
// payloads verbatim (only formatted); there is no client-side criteria
// math in this module.

import { JobSummary, PathResponse, WeightsResponse } from "./api.js";
import { ALL_METHODS } from "./store.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const fmt = (value: number): string => value.toFixed(2);

export function renderJobCard(job: JobSummary): string {
  return [
    `<button class="job-card" data-job-id="${job.id}">`,
    `<span class="job-title">${escapeHtml(job.title)}</span>`,
    `<span class="job-tuple">#${job.id} · ${escapeHtml(job.industry)} · ${escapeHtml(job.company_size)}</span>`,
    `<span class="badge">level ${fmt(job.level)}</span>`,
    `<span class="badge">rank ${job.pagerank.toExponential(2)}</span>`,
    `</button>`,
  ].join("");
}

export function renderSearchResults(jobs: JobSummary[]): string {
  if (jobs.length === 0) {
    return `<p class="hint">no matches</p>`;
  }
  return jobs.map(renderJobCard).join("\n");
}

export function renderError(error: string | null): string {
  if (error === null) {
    return "";
  }
  return `<div class="banner error">${escapeHtml(error)}</div>`;
}

export function renderPath(path: PathResponse | null): string {
  if (path === null) {
    return `<p class="hint">pick an origin job to plan a path</p>`;
  }
  if (path.hops.length === 0) {
    return `<p class="notice">no outgoing transitions from ${escapeHtml(path.origin.title)}</p>`;
  }
  const rows = path.hops
    .map(
      (hop) => `
  <tr>
    <td>${escapeHtml(hop.from.title)}</td>
    <td>${escapeHtml(hop.to.title)}</td>
    <td class="num">${fmt(hop.D)}</td>
    <td class="num">${fmt(hop.L)}</td>
    <td class="num">${fmt(hop.R)}</td>
  </tr>`,
    )
    .join("");
  return `
<table class="path" data-method="${escapeHtml(path.method)}">
  <thead><tr><th>from</th><th>to</th><th>D</th><th>L</th><th>R</th></tr></thead>
  <tbody>${rows}</tbody>
  <tfoot>
    <tr class="totals">
      <td colspan="2">totals (${path.hops.length} hops)</td>
      <td class="num">${fmt(path.totals.D)}</td>
      <td class="num">${fmt(path.totals.L)}</td>
      <td class="num">${fmt(path.totals.R)}</td>
    </tr>
  </tfoot>
</table>`;
}

export function renderCompare(paths: PathResponse[]): string {
  if (paths.length === 0) {
    return "";
  }
  const columns = paths
    .map(
      (path) => `
<div class="compare-column">
  <h3>${escapeHtml(path.method)}</h3>
  ${renderPath(path)}
</div>`,
    )
    .join("");
  let deltas = "";
  if (paths.length > 1) {
    const base = paths[0]!;
    const rows = paths
      .slice(1)
      .map((path) => {
        const dD = base.totals.D - path.totals.D;
        const dL = path.totals.L - base.totals.L;
        const dR = path.totals.R - base.totals.R;
        return `<tr><td>${escapeHtml(path.method)} vs ${escapeHtml(base.method)}</td>
<td class="num">${fmt(dD)}</td><td class="num">${fmt(dL)}</td><td class="num">${fmt(dR)}</td></tr>`;
      })
      .join("");
    deltas = `
<table class="deltas">
  <thead><tr><th>improvement</th><th>D saved</th><th>L gained</th><th>R gained</th></tr></thead>
  <tbody>${rows}</tbody>
</table>`;
  }
  return `<div class="compare">${columns}</div>${deltas}`;
}

export function renderMethodPicker(selected: string[]): string {
  return ALL_METHODS.map((method) => {
    const checked = selected.includes(method) ? " checked" : "";
    return `<label><input type="checkbox" name="method" value="${method}"${checked}> ${method}</label>`;
  }).join("\n");
}

/**
 * PIM overlay of the learned grid. For three criteria the entries live on
 * a 2-simplex and render as an SVG triangle heatmap; any other dimension
 * falls back to a sortable table.
 */
export function renderWeightOverlay(
  grid: WeightsResponse | null,
  snapped: number[] | null,
): string {
  if (grid === null) {
    return `<p class="hint">weight grid not loaded</p>`;
  }
  const m = grid.lambda_star.length;
  if (m !== 3) {
    const rows = [...grid.entries]
      .sort((a, b) => (b.pim ?? -Infinity) - (a.pim ?? -Infinity))
      .map(
        (entry) =>
          `<tr${entry.is_star ? ' class="star"' : ""}><td>${entry.weights
            .map(fmt)
            .join(" / ")}</td><td class="num">${entry.pim === null ? "-" : fmt(entry.pim)}</td></tr>`,
      )
      .join("");
    return `<table class="grid-table"><thead><tr><th>weights</th><th>PIM</th></tr></thead><tbody>${rows}</tbody></table>`;
  }

  const pims = grid.entries.map((e) => e.pim ?? 0);
  const lo = Math.min(...pims);
  const hi = Math.max(...pims);
  const size = 280;
  const pad = 20;
  const h = (size - 2 * pad) * (Math.sqrt(3) / 2);
  const project = (weights: number[]): [number, number] => {
    const [, l = 0, r = 0] = weights;
    const x = pad + (l + r / 2) * (size - 2 * pad);
    const y = pad + h - r * h;
    return [x, y];
  };
  const snappedKey = snapped === null ? null : snapped.map((w) => w.toPrecision(12)).join(",");
  const points = grid.entries
    .map((entry) => {
      const [x, y] = project(entry.weights);
      const t = hi > lo ? ((entry.pim ?? lo) - lo) / (hi - lo) : 0.5;
      const hue = Math.round(220 - 180 * t);
      const key = entry.weights.map((w) => w.toPrecision(12)).join(",");
      const classes = ["cell"];
      if (entry.is_star) {
        classes.push("star");
      }
      if (snappedKey !== null && key === snappedKey) {
        classes.push("snapped");
      }
      const radius = classes.length > 1 ? 7 : 4.5;
      const title = `λ=(${entry.weights.map(fmt).join(", ")}) PIM=${
        entry.pim === null ? "-" : fmt(entry.pim)
      }`;
      return `<circle class="${classes.join(" ")}" cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="${radius}" fill="hsl(${hue} 70% 50%)"><title>${title}</title></circle>`;
    })
    .join("\n");
  return `
<svg class="simplex" viewBox="0 0 ${size} ${pad + h + pad}" role="img" aria-label="PIM heatmap">
  <polygon points="${pad},${pad + h} ${size - pad},${pad + h} ${size / 2},${pad}"
           fill="none" stroke="#999"/>
  <text x="${pad}" y="${pad + h + 14}" class="axis">duration</text>
  <text x="${size - pad}" y="${pad + h + 14}" class="axis" text-anchor="end">level</text>
  <text x="${size / 2}" y="${pad - 6}" class="axis" text-anchor="middle">desirability</text>
  ${points}
</svg>`;
}
