/** Full round trip of the rendered UI against the recorded service. */

import { beforeEach, describe, expect, it } from "vitest";

import { init } from "../src/app.js";
import {
  ABSTRACT_ONLY_FLAT,
  exchange,
  flush,
  mockService,
  mountShell,
  overallIds,
} from "./helpers.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

function overallPaneIds(sideId: string): string[] {
  return [...document.querySelectorAll(`#${sideId} .pane[data-pane="overall"] tbody tr`)].map(
    (tr) => tr.getAttribute("data-id") ?? "",
  );
}

async function searchFor(query: string, mode: "title" | "keyword"): Promise<void> {
  el<HTMLInputElement>("query").value = query;
  el<HTMLSelectElement>("mode").value = mode;
  el<HTMLFormElement>("search-form").dispatchEvent(
    new Event("submit", { bubbles: true, cancelable: true }),
  );
  await flush();
}

describe("explorer round trip against the recorded service", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("search, select, tune, pivot, and back — all without a reload", async () => {
    mountShell(document);
    const mock = mockService();
    init(document, mock.fetchImpl);
    await flush();
    const formBefore = el("search-form");

    // -- search: match list rendered in response order -----------------
    await searchFor("adaptive lasso", "keyword");
    const want = exchange("search_keyword_adaptive").response as {
      results: { id: string; title: string }[];
    };
    const buttons = [...document.querySelectorAll("#matches button.match")];
    expect(buttons.map((b) => b.getAttribute("data-id"))).toEqual(
      want.results.map((r) => r.id),
    );
    expect(buttons[0]?.textContent).toContain("The adaptive lasso and its oracle properties");

    // -- select: three panes per list, rows in response order ----------
    (buttons[0] as HTMLElement).click();
    await flush();

    expect(document.querySelectorAll("#reference-results .pane").length).toBe(3);
    expect(document.querySelectorAll("#citation-results .pane").length).toBe(3);
    const defaultResponse = exchange("recommend_p01_default").response;
    expect(overallPaneIds("reference-results")).toEqual(
      overallIds(defaultResponse, "reference"),
    );
    expect(overallPaneIds("citation-results")).toEqual(
      overallIds(defaultResponse, "citation"),
    );
    // a result row carries the three raw similarities plus both scores
    const firstRow = document.querySelector("#reference-results tbody tr");
    expect(firstRow?.querySelectorAll("td").length).toBe(7);
    // per-period pane shows the recorded period labels
    const periodPane = document.querySelector(
      '#reference-results .pane[data-pane="per-period"]',
    );
    const labels = Object.keys(
      (defaultResponse as { reference: { per_period: Record<string, unknown> } }).reference
        .per_period,
    );
    for (const label of labels) {
      expect(periodPane?.textContent).toContain(label);
    }
    expect(
      document.querySelectorAll('#reference-results .pane[data-pane="fundamental"] tbody tr')
        .length,
    ).toBeGreaterThan(0);

    // -- slider: exactly one renormalized request, re-render in place --
    const recommendsBefore = mock.recommendCalls().length;
    const slider = document.querySelector(
      '#weights input[data-index="0"]',
    ) as HTMLInputElement;
    slider.value = "1";
    slider.dispatchEvent(new Event("input", { bubbles: true }));
    await flush();

    const recommends = mock.recommendCalls();
    expect(recommends.length).toBe(recommendsBefore + 1);
    expect(recommends[recommends.length - 1]?.body).toMatchObject({
      weights: ABSTRACT_ONLY_FLAT,
    });
    expect(overallPaneIds("reference-results")).toEqual(
      overallIds(exchange("recommend_p01_abstract_only").response, "reference"),
    );
    expect(el("search-form")).toBe(formBefore); // same document, no reload

    // -- pivot: recommended article becomes the selection --------------
    const pivot = document.querySelector(
      '#reference-results button.pivot[data-id="p04"]',
    ) as HTMLElement;
    pivot.click();
    await flush();

    const historyItems = [...document.querySelectorAll("#history-list li")];
    expect(historyItems.length).toBe(2);
    expect(historyItems[0]?.textContent).toContain("The adaptive lasso");
    expect(historyItems[1]?.textContent).toContain("Regression shrinkage");
    expect(historyItems[1]?.classList.contains("current")).toBe(true);
    expect(overallPaneIds("reference-results")).toEqual(
      overallIds(exchange("recommend_p04_abstract_only").response, "reference"),
    );
    expect(el("selected-article").textContent).toContain(
      "Regression shrinkage and selection via the lasso",
    );

    // -- back: prior panes restored with no new request -----------------
    const callsBefore = mock.calls.length;
    el<HTMLButtonElement>("back-btn").click();
    await flush();
    expect(mock.calls.length).toBe(callsBefore);
    expect(overallPaneIds("reference-results")).toEqual(
      overallIds(exchange("recommend_p01_abstract_only").response, "reference"),
    );
    expect(el("selected-article").textContent).toContain("The adaptive lasso");
  });

  it("an empty query renders a hint and sends no request", async () => {
    mountShell(document);
    const mock = mockService();
    init(document, mock.fetchImpl);
    await flush();
    const healthCalls = mock.calls.length;

    await searchFor("   ", "keyword");
    expect(el("search-hint").hidden).toBe(false);
    expect(el("search-hint").textContent).toContain("enter");
    expect(mock.calls.length).toBe(healthCalls);
  });

  it("a below-threshold title query renders the honest empty state", async () => {
    mountShell(document);
    init(document, mockService().fetchImpl);
    await flush();

    await searchFor("adaptive lasso", "title");
    expect(document.querySelector("#matches .empty")?.textContent).toContain("no matches");
  });

  it("an article nobody cites renders the explicit no-citers state", async () => {
    mountShell(document);
    init(document, mockService().fetchImpl);
    await flush();

    await searchFor("group lasso", "keyword");
    (document.querySelector('#matches button.match[data-id="p10"]') as HTMLElement).click();
    await flush();

    expect(el("citation-results").textContent).toContain("no citers yet");
    expect(overallPaneIds("reference-results").length).toBeGreaterThan(0);
  });

  it("a service failure shows the error banner and retry recovers", async () => {
    mountShell(document);
    const mock = mockService({ failOn: new Set([1]) }); // health is call 0
    init(document, mock.fetchImpl);
    await flush();

    await searchFor("adaptive lasso", "keyword");
    expect(el("error-banner").hidden).toBe(false);
    expect(el("error-text").textContent).toContain("network");

    el<HTMLButtonElement>("retry-btn").click();
    await flush();
    expect(el("error-banner").hidden).toBe(true);
    expect(document.querySelectorAll("#matches button.match").length).toBeGreaterThan(0);
  });
});
