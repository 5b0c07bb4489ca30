/** Wires the session store to the static page shell. */

import { ApiClient, FetchLike, SearchMode } from "./api.js";
import { render } from "./render.js";
import { SessionStore } from "./state.js";
import { GROUP_SPECS } from "./weights.js";

function buildSliders(doc: Document): void {
  const container = doc.getElementById("weights");
  if (!container) throw new Error("missing element #weights");
  container.innerHTML = GROUP_SPECS.map(
    (group) => `
    <fieldset>
      <legend>${group.name}</legend>
      ${group.sliders
        .map(
          (s) => `
        <label class="slider">
          <span class="slider-label">${s.label}</span>
          <input type="range" min="0" max="1" step="0.01" data-index="${s.index}" />
          <span class="weight-value" data-index="${s.index}"></span>
        </label>`,
        )
        .join("")}
    </fieldset>`,
  ).join("");
}

export interface App {
  store: SessionStore;
}

export function init(doc: Document, fetchImpl?: FetchLike, baseUrl = ""): App {
  const api = fetchImpl ? new ApiClient(baseUrl, fetchImpl) : new ApiClient(baseUrl);
  const store = new SessionStore(api);

  buildSliders(doc);
  store.subscribe(() => render(store.state, doc));

  const form = doc.getElementById("search-form") as HTMLFormElement;
  const query = doc.getElementById("query") as HTMLInputElement;
  const mode = doc.getElementById("mode") as HTMLSelectElement;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void store.search(query.value, mode.value as SearchMode);
  });

  doc.getElementById("matches")?.addEventListener("click", (event) => {
    const button = (event.target as Element).closest<HTMLElement>("button.match");
    if (button?.dataset.id) void store.select(button.dataset.id);
  });

  doc.getElementById("weights")?.addEventListener("input", (event) => {
    const input = event.target as HTMLInputElement;
    if (input.matches("input[data-index]")) {
      void store.updateWeight(Number(input.dataset.index), Number(input.value));
    }
  });

  for (const paneId of ["reference-results", "citation-results"]) {
    doc.getElementById(paneId)?.addEventListener("click", (event) => {
      const button = (event.target as Element).closest<HTMLElement>("button.pivot");
      if (button?.dataset.id) void store.select(button.dataset.id);
    });
  }

  doc.getElementById("back-btn")?.addEventListener("click", () => store.back());
  doc.getElementById("retry-btn")?.addEventListener("click", () => void store.retry());

  const badge = doc.getElementById("backend-badge");
  if (badge) {
    void api
      .health()
      .then((h) => {
        badge.textContent = h.ready
          ? `${h.articles} articles · ${h.edges} edges · ${h.kernel_backend} kernels`
          : "service loading…";
      })
      .catch(() => {
        badge.textContent = "service unreachable";
      });
  }

  render(store.state, doc);
  return { store };
}
