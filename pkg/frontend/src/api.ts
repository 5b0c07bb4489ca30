/** Typed client for the recommendation service's /v1 endpoints. */

export interface SearchHit {
  id: string;
  score: number;
  title: string;
  year: number;
  publisher: string | null;
}

export interface SearchResponse {
  query: string;
  mode: string;
  results: SearchHit[];
}

export interface ArticleDetail {
  id: string;
  title: string;
  authors: string[];
  publisher: string | null;
  year: number;
  abstract: string | null;
  keywords: string[];
  citation_count: number | null;
  references_in_corpus: number;
  cited_by_in_corpus: number;
}

export interface ResultRow {
  rank: number;
  id: string;
  title: string;
  year: number;
  abstract_sim: number;
  abstract_imputed: boolean;
  title_sim: number;
  node_sim: number;
  weighted_sim: number;
  fundamental_score: number | null;
}

export interface ListPanes {
  overall: ResultRow[];
  per_period: Record<string, ResultRow[]>;
  fundamental: ResultRow[];
}

export interface RecommendResponse {
  matched: string;
  reference: ListPanes;
  citation: ListPanes;
  weights: number[];
  k: number;
  period_len: number;
}

export interface RecommendRequest {
  matched_id: string;
  weights: number[];
  k: number;
  period_len: number;
  lists: string[];
}

export interface HealthResponse {
  status: string;
  ready: boolean;
  kernel_backend: string;
  articles: number;
  edges: number;
}

export type SearchMode = "title" | "keyword";

/** The slice of a fetch Response the client relies on (mock-friendly). */
export interface HttpResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string; signal?: AbortSignal },
) => Promise<HttpResponse>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function errorDetail(resp: HttpResponse): Promise<string> {
  try {
    const payload = (await resp.json()) as { detail?: unknown };
    if (typeof payload?.detail === "string") return payload.detail;
    return JSON.stringify(payload);
  } catch {
    return `request failed with status ${resp.status}`;
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path);
    if (!resp.ok) throw new ApiError(resp.status, await errorDetail(resp));
    return (await resp.json()) as T;
  }

  async health(): Promise<HealthResponse> {
    return this.get("/v1/healthz");
  }

  async search(query: string, mode: SearchMode, m = 10): Promise<SearchResponse> {
    const params = `q=${encodeURIComponent(query)}&mode=${mode}&m=${m}`;
    return this.get(`/v1/search?${params}`);
  }

  async article(id: string): Promise<ArticleDetail> {
    return this.get(`/v1/article/${encodeURIComponent(id)}`);
  }

  async recommend(body: RecommendRequest, signal?: AbortSignal): Promise<RecommendResponse> {
    const resp = await this.fetchImpl(`${this.baseUrl}/v1/recommend`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    if (!resp.ok) throw new ApiError(resp.status, await errorDetail(resp));
    return (await resp.json()) as RecommendResponse;
  }
}
