// DOM wiring: connects the store to the page. Kept free of business
// logic so the store and renderers stay testable without a browser.

import { ApiClient, JobSummary } from "./api.js";
import { debounce } from "./debounce.js";
import {
  renderCompare,
  renderError,
  renderMethodPicker,
  renderPath,
  renderSearchResults,
  renderWeightOverlay,
} from "./render.js";
import { formatWeights } from "./simplex.js";
import { ALL_METHODS, ExplorerStore, MethodName } from "./store.js";

const store = new ExplorerStore(new ApiClient(""));

const el = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node;
};

const searchInput = el("search") as HTMLInputElement;
const sliders = ["w-duration", "w-level", "w-desirability"].map(
  (id) => el(id) as HTMLInputElement,
);

function sliderValues(): number[] {
  return sliders.map((slider) => Number(slider.value));
}

store.subscribe((state) => {
  el("error").innerHTML = renderError(state.error);
  el("results").innerHTML = renderSearchResults(state.searchResults);
  el("origin").textContent =
    state.origin === null ? "none selected" : `#${state.origin.id} ${state.origin.title}`;
  el("weights-display").textContent = formatWeights(state.weights);
  el("snapped-display").textContent =
    state.snapped === null ? "" : `snapped to ${formatWeights(state.snapped)}`;
  el("path").innerHTML = renderPath(state.lastPath);
  el("compare").innerHTML = renderCompare(state.comparePaths);
  el("heatmap").innerHTML = renderWeightOverlay(state.weightGrid, state.snapped);
  el("plan-status").textContent = state.planInFlight ? "planning..." : "";
});

const debouncedSearch = debounce((query: string) => {
  void store.search(query);
}, 250);

searchInput.addEventListener("input", () => debouncedSearch(searchInput.value));

el("results").addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest(".job-card");
  if (target === null) {
    return;
  }
  const jobId = Number(target.getAttribute("data-job-id"));
  const job = store.state.searchResults.find((j: JobSummary) => j.id === jobId);
  if (job !== undefined) {
    void store.selectOrigin(job);
  }
});

for (const slider of sliders) {
  slider.addEventListener("input", () => store.setWeights(sliderValues()));
  slider.addEventListener("change", () => {
    void store.releaseWeights();
  });
}

el("apply-star").addEventListener("click", () => {
  void store.applyLambdaStar();
});

(el("method") as HTMLSelectElement).addEventListener("change", (event) => {
  const method = (event.target as HTMLSelectElement).value as MethodName;
  void store.setMethod(method);
});

el("method-picker").innerHTML = renderMethodPicker(["multicriteria_utility", "greedy_most_common"]);
el("compare-run").addEventListener("click", () => {
  const chosen = Array.from(
    document.querySelectorAll<HTMLInputElement>('input[name="method"]:checked'),
  ).map((input) => input.value as MethodName);
  void store.compare(chosen);
});

const methodSelect = el("method") as HTMLSelectElement;
for (const method of ALL_METHODS) {
  const option = document.createElement("option");
  option.value = method;
  option.textContent = method;
  methodSelect.appendChild(option);
}

void store.loadWeightGrid();
