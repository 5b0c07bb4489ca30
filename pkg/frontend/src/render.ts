/** DOM rendering: state in, markup out. No client-side re-sorting —
 * every list is rendered in exactly the order the service returned. */

import { ListPanes, ResultRow } from "./api.js";
import { SessionState } from "./state.js";

function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

function fmt(value: number | null): string {
  return value === null ? "—" : value.toFixed(3);
}

function rowsTable(rows: ResultRow[]): string {
  const body = rows
    .map(
      (r) => `
      <tr data-id="${esc(r.id)}">
        <td class="rank">${r.rank}</td>
        <td class="title"><button type="button" class="pivot" data-id="${esc(r.id)}">${esc(r.title)}</button>
            <span class="year">${r.year}</span></td>
        <td class="num${r.abstract_imputed ? " imputed" : ""}"
            ${r.abstract_imputed ? 'title="imputed: no abstract embedding for this pair"' : ""}>
            ${fmt(r.abstract_sim)}${r.abstract_imputed ? "*" : ""}</td>
        <td class="num">${fmt(r.title_sim)}</td>
        <td class="num">${fmt(r.node_sim)}</td>
        <td class="num strong">${fmt(r.weighted_sim)}</td>
        <td class="num">${fmt(r.fundamental_score)}</td>
      </tr>`,
    )
    .join("");
  return `
    <table>
      <thead><tr>
        <th>#</th><th>article</th><th>abstract</th><th>title</th>
        <th>co-cite</th><th>weighted</th><th>fundamental</th>
      </tr></thead>
      <tbody>${body}</tbody>
    </table>`;
}

function sideHtml(panes: ListPanes, sideLabel: string, emptyText: string): string {
  if (panes.overall.length === 0) {
    return `<h2>${esc(sideLabel)}</h2><p class="empty">${esc(emptyText)}</p>`;
  }
  const periods = Object.entries(panes.per_period)
    .map(([label, rows]) => `<h4>${esc(label)}</h4>${rowsTable(rows)}`)
    .join("");
  return `
    <h2>${esc(sideLabel)}</h2>
    <div class="pane" data-pane="overall"><h3>Overall</h3>${rowsTable(panes.overall)}</div>
    <div class="pane" data-pane="per-period"><h3>By period</h3>${periods}</div>
    <div class="pane" data-pane="fundamental"><h3>Fundamental</h3>${rowsTable(panes.fundamental)}</div>`;
}

function must(doc: Document, id: string): HTMLElement {
  const el = doc.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

export function render(state: SessionState, doc: Document): void {
  const hint = must(doc, "search-hint");
  hint.textContent = state.hint ?? "";
  hint.hidden = state.hint === null;

  const matches = must(doc, "matches");
  if (state.searched && state.matches.length === 0) {
    matches.innerHTML = `<li class="empty">no matches — try keyword mode or a fuller title</li>`;
  } else {
    matches.innerHTML = state.matches
      .map(
        (m) => `
        <li>
          <button type="button" class="match" data-id="${esc(m.id)}">
            <span class="score">${m.score.toFixed(3)}</span>
            <span class="title">${esc(m.title)}</span>
            <span class="meta">${m.year}${m.publisher ? " · " + esc(m.publisher) : ""}</span>
          </button>
        </li>`,
      )
      .join("");
  }

  const selected = must(doc, "selected-article");
  if (state.selected) {
    const art = state.selected;
    selected.innerHTML = `
      <h2>${esc(art.title)}</h2>
      <p class="meta">${esc(art.authors.join(", "))}${art.authors.length ? " · " : ""}${art.year}${
        art.publisher ? " · " + esc(art.publisher) : ""
      }</p>
      <p class="meta">${art.references_in_corpus} references in corpus · cited by ${art.cited_by_in_corpus}${
        art.citation_count !== null ? ` · ${art.citation_count} citations reported` : ""
      }</p>
      ${art.abstract ? `<p class="abstract">${esc(art.abstract)}</p>` : `<p class="empty">no abstract on record</p>`}`;
  } else {
    selected.innerHTML = `<p class="empty">search, then pick an article to see recommendations</p>`;
  }

  for (const input of doc.querySelectorAll<HTMLInputElement>("#weights input[data-index]")) {
    const idx = Number(input.dataset.index);
    const w = state.weights[idx] ?? 0;
    input.value = String(w);
    const readout = doc.querySelector(`#weights .weight-value[data-index="${idx}"]`);
    if (readout) readout.textContent = w.toFixed(2);
  }

  const historyList = must(doc, "history-list");
  historyList.innerHTML = state.history
    .map(
      (snap, i) =>
        `<li${i === state.history.length - 1 ? ' class="current"' : ""}>${esc(snap.detail.title)}</li>`,
    )
    .join("");
  (must(doc, "back-btn") as HTMLButtonElement).disabled = state.history.length < 2;

  const banner = must(doc, "error-banner");
  banner.hidden = state.status !== "error";
  must(doc, "error-text").textContent = state.error ?? "";

  const reference = must(doc, "reference-results");
  const citation = must(doc, "citation-results");
  const busy = state.status === "recommending";
  reference.toggleAttribute("data-busy", busy);
  citation.toggleAttribute("data-busy", busy);
  if (state.result) {
    reference.innerHTML = sideHtml(
      state.result.reference,
      "Reference list",
      "no references in corpus",
    );
    citation.innerHTML = sideHtml(
      state.result.citation,
      "Citation list",
      "no citers yet in this corpus",
    );
  } else if (!busy) {
    reference.innerHTML = "";
    citation.innerHTML = "";
  }
}
