"""embed-export command line behaviour."""

import json
from pathlib import Path

from embed_export.cli import main

FIXTURES = Path(__file__).resolve().parents[2] / "tests" / "fixtures"


def test_token_export(tmp_path, capsys):
    out = tmp_path / "tokens.emb"
    rc = main(["--corpus", str(FIXTURES / "documents.jsonl"),
               "--model", "hash-8", "--kind", "token", "--out", str(out)])
    assert rc == 0
    assert "wrote" in capsys.readouterr().out
    header = json.loads(out.read_text().splitlines()[0])
    assert header["dim"] == 8 and header["kind"] == "token"


def test_sentence_export(tmp_path):
    out = tmp_path / "sents.emb"
    rc = main(["--corpus", str(FIXTURES / "documents.jsonl"),
               "--model", "hash-8", "--kind", "sentence",
               "--pooling", "first", "--out", str(out)])
    assert rc == 0
    assert out.exists()


def test_unknown_model_exits_nonzero(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HF_HUB_OFFLINE", "1")  # fail fast, no retries
    rc = main(["--corpus", str(FIXTURES / "documents.jsonl"),
               "--model", "no-such-model-anywhere-xyz", "--kind", "token",
               "--out", str(tmp_path / "x.emb")])
    assert rc == 2
    assert "error[MODEL_LOAD]:" in capsys.readouterr().err


def test_missing_corpus_exits_nonzero(tmp_path, capsys):
    rc = main(["--corpus", str(tmp_path / "missing.jsonl"),
               "--model", "hash-8", "--kind", "token",
               "--out", str(tmp_path / "x.emb")])
    assert rc == 2
    assert capsys.readouterr().err.startswith("error[")


def test_malformed_corpus_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "a"}\n')
    rc = main(["--corpus", str(bad), "--model", "hash-8", "--kind", "token",
               "--out", str(tmp_path / "x.emb")])
    assert rc == 2
    assert capsys.readouterr().err.startswith("error[MALFORMED_CORPUS]:")
