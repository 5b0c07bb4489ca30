"""Shared fixtures plus an acceptance summary printed after every run."""

from __future__ import annotations

import json

import numpy as np
import pytest

from synth import corpus_from_records, offline_store, random_records


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion, independent of verbosity flags."""
    rows = []
    for outcome, label in (("passed", "PASS"), ("failed", "FAIL"), ("skipped", "SKIP")):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if rep.when == "call" or (rep.when == "setup" and outcome == "skipped"):
                name = nodeid.split("::")[-1]
                note = ""
                if outcome == "skipped" and isinstance(rep.longrepr, tuple):
                    note = f" ({rep.longrepr[2]})"
                rows.append((name, label, note))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, label, note in sorted(rows):
        terminalreporter.write_line(f"{label}: {name}{note}")


@pytest.fixture(scope="session")
def small_world(tmp_path_factory):
    """A 120-article corpus + graph + offline embeddings, shared per session."""
    rng = np.random.default_rng(7)
    records = random_records(rng, 120, p=0.06)
    tmp = tmp_path_factory.mktemp("small_world")
    corpus, report, graph = corpus_from_records(tmp, records)
    store = offline_store(corpus)
    return {
        "corpus": corpus,
        "report": report,
        "graph": graph,
        "store": store,
        "records": records,
        "dir": tmp,
    }


@pytest.fixture()
def lasso_corpus(tmp_path):
    """Hand-built five-article corpus with known structure for exact checks."""
    records = [
        dict(
            id="a",
            title="The adaptive lasso and its oracle properties",
            authors=["Z"],
            publisher="JASA",
            year=2006,
            abstract="Penalized regression with adaptive weights.",
            keywords=["lasso", "oracle"],
            citation_count=3630,
            references=["b", "c"],
        ),
        dict(
            id="b",
            title="Adaptive lasso for sparse high-dimensional regression models",
            authors=["H"],
            publisher="Stat Sinica",
            year=2008,
            abstract="Sparse high dimensional regression.",
            keywords=["lasso"],
            citation_count=900,
            references=["c", "d"],
        ),
        dict(
            id="c",
            title="Regression shrinkage and selection via the lasso",
            authors=["T"],
            publisher="JRSS-B",
            year=1996,
            abstract="Coefficient shrinkage for linear models.",
            keywords=["lasso", "shrinkage"],
            citation_count=20000,
            references=["d"],
        ),
        dict(
            id="d",
            title="Ridge regression biased estimation for nonorthogonal problems",
            authors=["H", "K"],
            publisher="Technometrics",
            year=1970,
            abstract=None,
            keywords=["ridge"],
            citation_count=8000,
            references=[],
        ),
        dict(
            id="e",
            title="A survey of sparse methods",
            authors=["S"],
            publisher="Stat Surveys",
            year=2015,
            abstract="Survey of sparsity inducing penalties.",
            keywords=["sparse"],
            citation_count=50,
            references=["a", "c"],
        ),
    ]
    corpus, report, graph = corpus_from_records(tmp_path, records)
    return {"corpus": corpus, "report": report, "graph": graph, "records": records}


def write_jsonl(path, records):
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")
    return path
