/** Session state and actions for the explorer.
 *
 * One store owns the whole decision loop: query -> matches -> selection ->
 * tuned weights -> result panes -> pivot. Recommendation requests are
 * single-flight: a newer slider move or pivot aborts the stale in-flight
 * request, so the rendered panes always correspond to the newest input.
 */

import {
  ApiClient,
  ArticleDetail,
  RecommendResponse,
  SearchHit,
  SearchMode,
} from "./api.js";
import { defaultWeights, groupSumsValid, setWeight } from "./weights.js";

export interface Snapshot {
  detail: ArticleDetail;
  weights: number[];
  result: RecommendResponse;
}

export type Status = "idle" | "searching" | "recommending" | "error";

export interface SessionState {
  query: string;
  mode: SearchMode;
  matches: SearchHit[];
  searched: boolean;
  hint: string | null;
  selected: ArticleDetail | null;
  weights: number[];
  result: RecommendResponse | null;
  /** Visited selections, oldest first; the last entry is the current one. */
  history: Snapshot[];
  status: Status;
  error: string | null;
}

function isAbort(err: unknown): boolean {
  return err instanceof Error && err.name === "AbortError";
}

export class SessionStore {
  state: SessionState = {
    query: "",
    mode: "keyword",
    matches: [],
    searched: false,
    hint: null,
    selected: null,
    weights: defaultWeights(),
    result: null,
    history: [],
    status: "idle",
    error: null,
  };

  private listeners: Array<() => void> = [];
  private inflight: AbortController | null = null;
  private lastAction: (() => Promise<void>) | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly k = 10,
    private readonly periodLen = 5,
  ) {}

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  private fail(err: unknown): void {
    this.state.status = "error";
    this.state.error = err instanceof Error ? err.message : String(err);
    this.emit();
  }

  async retry(): Promise<void> {
    this.state.error = null;
    this.state.status = "idle";
    this.emit();
    await this.lastAction?.();
  }

  async search(query: string, mode: SearchMode): Promise<void> {
    this.state.query = query;
    this.state.mode = mode;
    if (!query.trim()) {
      this.state.hint = "enter a title or keyword phrase first";
      this.state.matches = [];
      this.state.searched = false;
      this.emit();
      return;
    }
    this.lastAction = () => this.search(query, mode);
    this.state.hint = null;
    this.state.status = "searching";
    this.emit();
    try {
      const resp = await this.api.search(query, mode);
      this.state.matches = resp.results;
      this.state.searched = true;
      this.state.status = "idle";
      this.state.error = null;
      this.emit();
    } catch (err) {
      this.fail(err);
    }
  }

  /** Select an article (from matches or by pivoting) and fetch its panes. */
  async select(id: string): Promise<void> {
    this.lastAction = () => this.select(id);
    this.state.status = "recommending";
    this.emit();
    try {
      const detail = await this.api.article(id);
      const result = await this.recommendCurrent(id);
      if (result === null) return; // superseded by a newer request
      this.state.selected = detail;
      this.state.result = result;
      this.state.history.push({ detail, weights: this.state.weights.slice(), result });
      this.state.status = "idle";
      this.state.error = null;
      this.emit();
    } catch (err) {
      if (!isAbort(err)) this.fail(err);
    }
  }

  /**
   * Move one slider: renormalize its group and issue exactly one new
   * recommendation request for the current selection.
   */
  async updateWeight(index: number, value: number): Promise<void> {
    this.state.weights = setWeight(this.state.weights, index, value);
    const current = this.state.history[this.state.history.length - 1];
    if (current) current.weights = this.state.weights.slice();
    if (!this.state.selected) {
      this.emit();
      return;
    }
    const id = this.state.selected.id;
    this.lastAction = () => this.updateWeight(index, this.state.weights[index] ?? value);
    this.state.status = "recommending";
    this.emit();
    try {
      const result = await this.recommendCurrent(id);
      if (result === null) return; // superseded by a newer request
      this.state.result = result;
      if (current) current.result = result;
      this.state.status = "idle";
      this.state.error = null;
      this.emit();
    } catch (err) {
      if (!isAbort(err)) this.fail(err);
    }
  }

  /** Step back to the previous selection without re-requesting. */
  back(): void {
    if (this.state.history.length < 2) return;
    this.state.history.pop();
    const prior = this.state.history[this.state.history.length - 1];
    if (!prior) return;
    this.state.selected = prior.detail;
    this.state.weights = prior.weights.slice();
    this.state.result = prior.result;
    this.state.status = "idle";
    this.state.error = null;
    this.emit();
  }

  /** One in-flight recommend at a time; returns null when superseded. */
  private async recommendCurrent(id: string): Promise<RecommendResponse | null> {
    if (!groupSumsValid(this.state.weights)) {
      throw new Error("weights failed simplex validation; not sending");
    }
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const result = await this.api.recommend(
        {
          matched_id: id,
          weights: this.state.weights.slice(),
          k: this.k,
          period_len: this.periodLen,
          lists: ["reference", "citation"],
        },
        controller.signal,
      );
      if (this.inflight !== controller) return null;
      this.inflight = null;
      return result;
    } catch (err) {
      if (this.inflight === controller) this.inflight = null;
      if (isAbort(err)) return null;
      throw err;
    }
  }
}
