"""Record real /v1 service responses into the frontend's mock fixture.

Builds a small deterministic corpus with offline embeddings, mounts the
actual FastAPI app, replays the exchanges the explorer UI performs, and
writes frontend/tests/fixtures/recorded.json. The frontend test suite
replays these exchanges through a mocked fetch, so UI tests exercise the
same payload shapes the live service produces without needing a backend.

Regenerate after changing any /v1 response shape:
    python3 tools/record_frontend_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from citerec.config import EngineConfig
from citerec.corpus import Corpus, load_corpus
from citerec.embedding import EmbeddingClient, OfflineProvider
from citerec.graph import build_graph
from citerec.service import Engine, create_app

FIXTURE_PATH = (
    Path(__file__).resolve().parent.parent
    / "frontend"
    / "tests"
    / "fixtures"
    / "recorded.json"
)

ARTICLES = [
    {
        "id": "p01",
        "title": "The adaptive lasso and its oracle properties",
        "authors": ["H. Zou"],
        "publisher": "Journal of the American Statistical Association",
        "year": 2006,
        "abstract": "A weighted l1 penalty yields consistent variable selection "
        "and asymptotic normality for the selected coefficients.",
        "keywords": ["adaptive lasso", "oracle property", "variable selection"],
        "citation_count": 3630,
        "references": ["p04", "p05", "p06"],
    },
    {
        "id": "p02",
        "title": "Adaptive lasso for sparse high-dimensional regression models",
        "authors": ["J. Huang", "S. Ma", "C.-H. Zhang"],
        "publisher": "Statistica Sinica",
        "year": 2008,
        "abstract": "Weighted l1 penalties remain selection consistent when the "
        "number of covariates grows with the sample size.",
        "keywords": ["adaptive lasso", "high-dimensional regression"],
        "citation_count": 810,
        "references": ["p01", "p05"],
    },
    {
        "id": "p03",
        "title": "On model selection consistency of penalized regression",
        "authors": ["P. Zhao", "B. Yu"],
        "publisher": "Journal of Machine Learning Research",
        "year": 2006,
        "abstract": "An irrepresentable condition characterizes when the l1 path "
        "recovers the true sparse support.",
        "keywords": ["model selection", "lasso"],
        "citation_count": 1550,
        "references": ["p01", "p06"],
    },
    {
        "id": "p04",
        "title": "Regression shrinkage and selection via the lasso",
        "authors": ["R. Tibshirani"],
        "publisher": "Journal of the Royal Statistical Society Series B",
        "year": 1996,
        "abstract": "An l1 constraint on regression coefficients shrinks some "
        "estimates exactly to zero, combining subset selection with ridge "
        "stability.",
        "keywords": ["lasso", "shrinkage", "regression"],
        "citation_count": 21000,
        "references": ["p08"],
    },
    {
        "id": "p05",
        "title": "Variable selection via nonconcave penalized likelihood and its oracle properties",
        "authors": ["J. Fan", "R. Li"],
        "publisher": "Journal of the American Statistical Association",
        "year": 2001,
        "abstract": "A smoothly clipped absolute deviation penalty selects "
        "variables and estimates coefficients simultaneously with oracle "
        "behavior.",
        "keywords": ["penalized likelihood", "oracle property"],
        "citation_count": 7400,
        "references": ["p04", "p08", "p09"],
    },
    {
        "id": "p06",
        "title": "Regularization and variable selection via the elastic net",
        "authors": ["H. Zou", "T. Hastie"],
        "publisher": "Journal of the Royal Statistical Society Series B",
        "year": 2005,
        "abstract": "A convex blend of l1 and l2 penalties selects grouped "
        "correlated predictors that the plain l1 penalty splits arbitrarily.",
        "keywords": ["elastic net", "regularization"],
        "citation_count": 9800,
        "references": ["p04", "p05"],
    },
    {
        "id": "p07",
        "title": "High-dimensional graphical model selection using l1-regularized logistic regression",
        "authors": ["P. Ravikumar", "M. Wainwright", "J. Lafferty"],
        "publisher": "Annals of Statistics",
        "year": 2010,
        "abstract": "Neighborhood-wise sparse logistic regression consistently "
        "recovers the edge set of a discrete graphical model.",
        "keywords": ["graphical model", "logistic regression"],
        "citation_count": 1200,
        "references": ["p01", "p04"],
    },
    {
        "id": "p08",
        "title": "Linear model selection by cross-validation",
        "authors": ["J. Shao"],
        "publisher": "Journal of the American Statistical Association",
        "year": 1993,
        "abstract": "Leave-n_v-out cross-validation is selection consistent when "
        "the validation fraction grows with the sample.",
        "keywords": ["cross-validation", "model selection"],
        "citation_count": 1900,
        "references": [],
    },
    {
        "id": "p09",
        "title": "Asymptotics for lasso-type estimators",
        "authors": ["K. Knight", "W. Fu"],
        "publisher": "Annals of Statistics",
        "year": 2000,
        "abstract": "Limit distributions of l1-penalized estimators under local "
        "alternatives reveal the shrinkage-induced bias.",
        "keywords": ["lasso", "asymptotics"],
        "citation_count": 2100,
        "references": ["p04", "p08"],
    },
    {
        "id": "p10",
        "title": "A note on the group lasso and a sparse group lasso",
        "authors": ["J. Friedman", "T. Hastie", "R. Tibshirani"],
        "publisher": "Statistics and Computing",
        "year": 2010,
        "abstract": "A penalty mixing group-wise and within-group l1 terms "
        "yields sparsity at both levels.",
        "keywords": ["group lasso", "sparsity"],
        "citation_count": 1600,
        "references": ["p01", "p04", "p06"],
    },
]

DEFAULT_FLAT = [1 / 3, 1 / 3, 1 / 3, 0.5, 0.5, 1 / 3, 1 / 3, 1 / 3, 0.5, 0.5]
# one slider move projects a single group; the citation side keeps defaults
ABSTRACT_ONLY_FLAT = [1.0, 0.0, 0.0, 0.5, 0.5, 1 / 3, 1 / 3, 1 / 3, 0.5, 0.5]
ABSTRACT_BOTH_FLAT = [1.0, 0.0, 0.0, 0.5, 0.5, 1.0, 0.0, 0.0, 0.5, 0.5]


def build_engine(tmp_dir: Path) -> Engine:
    articles_path = tmp_dir / "articles.jsonl"
    articles_path.write_text(
        "\n".join(json.dumps(a) for a in ARTICLES) + "\n", encoding="utf-8"
    )
    corpus, report = load_corpus(articles_path)
    graph = build_graph(corpus)
    client = EmbeddingClient(
        provider=OfflineProvider(dim=32), model_tag="offline-fixture", dim=32
    )
    store = client.embed_corpus(corpus)
    config = EngineConfig(articles_path=str(articles_path))
    return Engine(corpus=corpus, graph=graph, store=store, config=config, load_report=report)


def recommend_body(matched_id: str, flat: list[float]) -> dict:
    return {
        "matched_id": matched_id,
        "weights": flat,
        "k": 10,
        "period_len": 5,
        "lists": ["reference", "citation"],
    }


def main() -> None:
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        engine = build_engine(Path(tmp))
        app = create_app(engine)
        http = TestClient(app)

        exchanges = []

        def record(name: str, method: str, path: str, body: dict | None = None):
            if method == "GET":
                resp = http.get(path)
            else:
                resp = http.post(path, json=body)
            assert resp.status_code == 200, f"{name}: {resp.status_code} {resp.text}"
            exchanges.append(
                {
                    "name": name,
                    "request": {"method": method, "path": path, "body": body},
                    "status": resp.status_code,
                    "response": resp.json(),
                }
            )

        record("healthz", "GET", "/v1/healthz")
        record("stats", "GET", "/v1/stats")
        # full-ish title with a typo: exercises the fuzzy matcher
        record(
            "search_title_near",
            "GET",
            "/v1/search?q=The%20adaptive%20lasso%20and%20its%20oracle%20property&mode=title&m=10",
        )
        # a short fragment scores below the fuzzy threshold: honest empty result
        record("search_title_fragment_empty", "GET", "/v1/search?q=adaptive%20lasso&mode=title&m=10")
        record("search_keyword_adaptive", "GET", "/v1/search?q=adaptive%20lasso&mode=keyword&m=10")
        record("search_keyword_group", "GET", "/v1/search?q=group%20lasso&mode=keyword&m=10")
        record("article_p01", "GET", "/v1/article/p01")
        record("article_p04", "GET", "/v1/article/p04")
        record("article_p10", "GET", "/v1/article/p10")
        record(
            "recommend_p01_default",
            "POST",
            "/v1/recommend",
            recommend_body("p01", DEFAULT_FLAT),
        )
        record(
            "recommend_p01_abstract_only",
            "POST",
            "/v1/recommend",
            recommend_body("p01", ABSTRACT_ONLY_FLAT),
        )
        record(
            "recommend_p01_abstract_both",
            "POST",
            "/v1/recommend",
            recommend_body("p01", ABSTRACT_BOTH_FLAT),
        )
        record(
            "recommend_p04_default",
            "POST",
            "/v1/recommend",
            recommend_body("p04", DEFAULT_FLAT),
        )
        record(
            "recommend_p04_abstract_only",
            "POST",
            "/v1/recommend",
            recommend_body("p04", ABSTRACT_ONLY_FLAT),
        )
        record(
            "recommend_p10_default",
            "POST",
            "/v1/recommend",
            recommend_body("p10", DEFAULT_FLAT),
        )

        # sanity on the recorded payloads before they become the mock
        by_name = {ex["name"]: ex["response"] for ex in exchanges}
        assert by_name["search_title_near"]["results"][0]["id"] == "p01"
        assert by_name["search_title_fragment_empty"]["results"] == []
        assert by_name["search_keyword_adaptive"]["results"][0]["id"] == "p01"
        assert by_name["search_keyword_group"]["results"][0]["id"] == "p10"

        # the abstract-only ranking really is the abstract-sim order,
        # and the no-citers case really has an empty citation side
        abstract_only = by_name["recommend_p01_abstract_only"]["reference"]["overall"]
        resorted = sorted(
            abstract_only,
            key=lambda r: (-r["abstract_sim"], -r["year"], r["id"]),
        )
        assert [r["id"] for r in abstract_only] == [r["id"] for r in resorted]
        assert by_name["recommend_p10_default"]["citation"]["overall"] == []

        FIXTURE_PATH.parent.mkdir(parents=True, exist_ok=True)
        FIXTURE_PATH.write_text(
            json.dumps({"exchanges": exchanges}, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print(f"recorded {len(exchanges)} exchanges -> {FIXTURE_PATH}")


if __name__ == "__main__":
    main()
