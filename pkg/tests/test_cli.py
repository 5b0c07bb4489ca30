"""Command-line behavior: subcommands, exit codes, output modes."""

from __future__ import annotations

import json

import numpy as np
import pytest
from click.testing import CliRunner

from citerec.cli import main
from synth import random_records, write_corpus


@pytest.fixture(scope="module")
def world(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli_world")
    rng = np.random.default_rng(21)
    records = random_records(rng, 60, p=0.08)
    # give one article a known searchable title
    records[0]["title"] = "The adaptive lasso and its oracle properties"
    records[0]["keywords"] = ["adaptive lasso"]
    path = write_corpus(tmp, records)
    return {"dir": tmp, "articles": str(path), "records": records}


def run(*args, **kw):
    return CliRunner().invoke(main, list(args), **kw)


class TestIngestValidateStats:
    def test_ingest_prints_report(self, world):
        res = run("ingest", "--articles", world["articles"])
        assert res.exit_code == 0
        assert "records parsed" in res.output
        assert "articles loaded" in res.output

    def test_validate_acyclic_corpus(self, world):
        res = run("validate", "--articles", world["articles"])
        assert res.exit_code == 0
        assert "acyclic: yes" in res.output

    def test_validate_cyclic_corpus_exits_one(self, tmp_path):
        records = [
            dict(id="a", title="A", year=2000, references=["b"]),
            dict(id="b", title="B", year=2001, references=["a"]),
        ]
        path = write_corpus(tmp_path, records)
        res = run("validate", "--articles", str(path))
        assert res.exit_code == 1
        assert "acyclic: no" in res.output
        assert "cycle" in res.output

    def test_stats_text_block(self, world):
        res = run("stats", "--articles", world["articles"], "--years")
        assert res.exit_code == 0
        assert "nodes:" in res.output
        assert "density:" in res.output
        assert "year\tarticles" in res.output

    def test_stats_out_file(self, world, tmp_path):
        out = tmp_path / "stats.txt"
        res = run("stats", "--articles", world["articles"], "--out", str(out))
        assert res.exit_code == 0
        assert "nodes:" in out.read_text()

    def test_missing_articles_is_usage_error(self):
        res = run("stats")
        assert res.exit_code == 2
        assert "articles" in res.output

    def test_unreadable_corpus_is_data_error(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text("{not json\n")
        res = run("ingest", "--articles", str(bad))
        assert res.exit_code == 1


class TestSearch:
    def test_title_search(self, world):
        res = run("search", "--articles", world["articles"],
                  "--mode", "title", "the adaptive lasso and its oracle properties")
        assert res.exit_code == 0
        assert "n0000" in res.output

    def test_keyword_search_json_with_subgraph(self, world):
        res = run("search", "--articles", world["articles"], "--mode", "keyword",
                  "--subgraph", "--json", "adaptive lasso")
        assert res.exit_code == 0
        doc = json.loads(res.output)
        assert doc["mode"] == "keyword"
        assert doc["results"]
        assert set(doc["subgraph"]) == {"articles", "edges", "largest_component"}

    def test_empty_query_usage_error(self, world):
        res = run("search", "--articles", world["articles"], "--mode", "keyword", " , ")
        assert res.exit_code == 2


class TestRecommend:
    def test_by_id_table(self, world):
        rid = world["records"][5]["id"]
        res = run("recommend", "--articles", world["articles"], "--id", rid, "-k", "3")
        assert res.exit_code == 0
        assert "== reference list ==" in res.output
        assert "== citation list ==" in res.output

    def test_by_title_resolves(self, world):
        res = run("recommend", "--articles", world["articles"],
                  "--title", "the adaptve lasso and its oracle properties", "--json")
        assert res.exit_code == 0
        body = res.output[res.output.index("{"):]
        doc = json.loads(body)
        assert doc["matched"] == "n0000"

    def test_json_out_file(self, world, tmp_path):
        rid = world["records"][5]["id"]
        out = tmp_path / "rec.json"
        res = run("recommend", "--articles", world["articles"], "--id", rid,
                  "--json", "--out", str(out))
        assert res.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["matched"] == rid

    def test_both_id_and_title_usage_error(self, world):
        res = run("recommend", "--articles", world["articles"],
                  "--id", "x", "--title", "y")
        assert res.exit_code == 2

    def test_unknown_id_data_error(self, world):
        res = run("recommend", "--articles", world["articles"], "--id", "nope")
        assert res.exit_code == 1
        assert "unknown article id" in res.output

    def test_bad_weights_usage_error(self, world):
        res = run("recommend", "--articles", world["articles"], "--id", "n0001",
                  "--weights", "0.5,0.7,0,0.5,0.5,0.3,0.3,0.4,0.5,0.5")
        assert res.exit_code == 2
        assert "w1+w2+w3 must sum to 1" in res.output

    def test_weights_preset_accepted(self, world):
        rid = world["records"][5]["id"]
        res = run("recommend", "--articles", world["articles"], "--id", rid,
                  "--weights", "network")
        assert res.exit_code == 0

    def test_gibberish_weights_usage_error(self, world):
        res = run("recommend", "--articles", world["articles"], "--id", "n0001",
                  "--weights", "lots,of,nonsense")
        assert res.exit_code == 2


class TestEvaluateCommand:
    def test_sample_table(self, world):
        res = run("evaluate", "--articles", world["articles"], "--sample", "5", "--seed", "3")
        assert res.exit_code == 0
        assert "hit@1" in res.output
        assert "published" in res.output

    def test_case_json(self, world):
        rid = next(r["id"] for r in world["records"] if r["references"])
        res = run("evaluate", "--articles", world["articles"], "--case", rid, "--json")
        assert res.exit_code == 0
        doc = json.loads(res.output)
        assert doc["cases"][0]["article"] == rid

    def test_selector_required(self, world):
        res = run("evaluate", "--articles", world["articles"])
        assert res.exit_code == 2

    def test_review_against_synthetic_corpus_fails_cleanly(self, world):
        res = run("evaluate", "--articles", world["articles"], "--review")
        assert res.exit_code == 1
        assert "no review case resolved" in res.output


class TestEmbedCommand:
    def test_offline_embed_writes_store(self, world, tmp_path):
        out = tmp_path / "store.bin"
        res = run("embed", "--articles", world["articles"], "--offline",
                  "--out", str(out))
        assert res.exit_code == 0
        assert out.exists()
        from citerec.textsim import EmbeddingStore

        store = EmbeddingStore.load_binary(out)
        n_abstracts = sum(1 for r in world["records"] if r.get("abstract"))
        assert len(store.ids()) == n_abstracts

    def test_text_store_roundtrip_via_recommend(self, world, tmp_path):
        out = tmp_path / "store.txt"
        res = run("embed", "--articles", world["articles"], "--offline", "--out", str(out))
        assert res.exit_code == 0
        rid = world["records"][5]["id"]
        res = run("recommend", "--articles", world["articles"],
                  "--embeddings", str(out), "--id", rid, "--json")
        assert res.exit_code == 0

    def test_embed_without_provider_usage_error(self, world, tmp_path):
        res = run("embed", "--articles", world["articles"],
                  "--out", str(tmp_path / "s.txt"))
        assert res.exit_code == 2

    def test_embed_uses_cache_dir(self, world, tmp_path):
        cache = tmp_path / "cache"
        out = tmp_path / "s.bin"
        res = run("embed", "--articles", world["articles"], "--offline",
                  "--cache-dir", str(cache), "--out", str(out))
        assert res.exit_code == 0
        assert any(cache.rglob("*.npy"))


class TestConfigFile:
    def test_config_file_supplies_paths(self, world, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"articles_path": world["articles"], "top_k": 5}))
        res = run("stats", "--config", str(cfg))
        assert res.exit_code == 0

    def test_unknown_config_key_rejected(self, world, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"articles_path": world["articles"], "topk": 5}))
        res = run("stats", "--config", str(cfg))
        assert res.exit_code == 1
        assert "unknown config keys" in res.output

    def test_cli_flag_overrides_config(self, world, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"articles_path": "/nonexistent.jsonl"}))
        res = run("ingest", "--config", str(cfg), "--articles", world["articles"])
        assert res.exit_code == 0
