import json

import pytest

from claimlens.cli import CliError, main, parse_sweep
from claimlens.datasets import bundled_mini_dir


def test_parse_sweep_grid():
    grids = parse_sweep("t1=0.1..0.5:0.2,t4=0.0..0.1:0.1")
    assert grids["t1"] == [0.1, 0.3, 0.5]
    assert grids["t4"] == [0.0, 0.1]


def test_parse_sweep_rejects_bad_terms():
    with pytest.raises(CliError):
        parse_sweep("t3=0..1:0.1")
    with pytest.raises(CliError):
        parse_sweep("t1=0..1")
    with pytest.raises(CliError):
        parse_sweep("t1=1..0:0.1")


@pytest.fixture
def mini_paths():
    mini = bundled_mini_dir()
    return {
        "claims": str(mini / "claims.jsonl"),
        "perspectives": str(mini / "perspectives.jsonl"),
        "evidence": str(mini / "evidence.jsonl"),
        "gold": str(mini / "gold.jsonl"),
    }


def test_ingest_command(tmp_path, mini_paths, capsys):
    rc = main([
        "ingest",
        "--data-dir", str(tmp_path / "store"),
        "--claims", mini_paths["claims"],
        "--perspectives", mini_paths["perspectives"],
        "--evidence", mini_paths["evidence"],
        "--gold", mini_paths["gold"],
    ])
    assert rc == 0
    out = capsys.readouterr().out
    assert "perspectives: 62 ingested" in out
    assert "gold: 54 ingested" in out


def test_ingest_duplicate_errors(tmp_path, mini_paths, capsys):
    data_dir = str(tmp_path / "store")
    assert main(["ingest", "--data-dir", data_dir,
                 "--perspectives", mini_paths["perspectives"]]) == 0
    rc = main(["ingest", "--data-dir", data_dir,
               "--perspectives", mini_paths["perspectives"]])
    assert rc == 2
    assert "duplicate id" in capsys.readouterr().err


def write_config(tmp_path, mini_paths, extra="") -> str:
    path = tmp_path / "app.conf"
    path.write_text(
        f"data_dir = {tmp_path / 'store'}\n"
        f"claims_path = {mini_paths['claims']}\n"
        f"perspectives_path = {mini_paths['perspectives']}\n"
        f"evidence_path = {mini_paths['evidence']}\n"
        f"gold_path = {mini_paths['gold']}\n"
        + extra,
        encoding="utf-8",
    )
    return str(path)


def test_query_json_output(tmp_path, mini_paths, capsys):
    config = write_config(tmp_path, mini_paths,
                          "scorer_backend = gold\neps = 0.5\n")
    rc = main(["query", "--claim",
               "Social media platforms improve everyday communication",
               "--config", config, "--json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["supporting"] and payload["opposing"]
    assert payload["supporting"][0]["evidence_resolved"] is True  # CLI is eager


def test_query_human_output_lazy_flagless(tmp_path, mini_paths, capsys):
    config = write_config(tmp_path, mini_paths,
                          "scorer_backend = gold\neps = 0.5\nevidence_mode = lazy\n")
    rc = main(["query", "--claim",
               "Zoos protect endangered animal species",
               "--config", config])
    assert rc == 0
    out = capsys.readouterr().out
    assert "supporting" in out and "opposing" in out
    assert "query_id:" in out


def test_query_eager_flag_overrides_lazy_config(tmp_path, mini_paths, capsys):
    config = write_config(tmp_path, mini_paths,
                          "scorer_backend = gold\neps = 0.5\nevidence_mode = lazy\n")
    rc = main(["query", "--claim",
               "Zoos protect endangered animal species",
               "--config", config, "--eager-evidence", "--json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["supporting"][0]["evidence_resolved"] is True


def test_query_logs_to_feedback_store(tmp_path, mini_paths, capsys):
    config = write_config(tmp_path, mini_paths, "scorer_backend = gold\n")
    main(["query", "--claim", "Daily homework helps children learn more",
          "--config", config, "--json"])
    capsys.readouterr()
    queries = (tmp_path / "store" / "feedback" / "queries.jsonl").read_text()
    assert "Daily homework helps children learn more" in queries


def test_eval_gold_backend_perfect_scores(tmp_path, mini_paths, capsys):
    config = write_config(tmp_path, mini_paths, "scorer_backend = gold\n")
    rc = main(["eval", "--claims", mini_paths["claims"],
               "--gold", mini_paths["gold"], "--config", config,
               "--sweep", "t1=0.2..0.8:0.3", "--json"])
    assert rc == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 3
    for row in rows:
        assert row["perspective_precision"] == 1.0
        assert row["perspective_recall"] == 1.0
        assert row["evidence_precision"] == 1.0
        assert row["evidence_recall"] == 1.0


def test_eval_baseline_table_output(tmp_path, mini_paths, capsys):
    config = write_config(tmp_path, mini_paths, "")
    rc = main(["eval", "--claims", mini_paths["claims"],
               "--gold", mini_paths["gold"], "--config", config,
               "--sweep", "t1=0.1..0.3:0.1"])
    assert rc == 0
    out = capsys.readouterr().out
    lines = [l for l in out.splitlines() if l.strip()]
    assert lines[0].split() == ["t1", "t2", "t4", "p_prec", "p_rec", "e_prec", "e_rec"]
    assert len(lines) == 4


def test_eval_requires_corpus_paths(tmp_path, mini_paths, capsys):
    rc = main(["eval", "--claims", mini_paths["claims"], "--gold", mini_paths["gold"]])
    assert rc == 2
    assert "perspectives_path" in capsys.readouterr().err
