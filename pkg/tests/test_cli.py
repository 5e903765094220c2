import json

import pytest
from typer.testing import CliRunner

from superpattern_tools.cli import app
from superpattern_tools.emitters.nanopub import reparse_trig

from .conftest import fixture_path, read_fixture

runner = CliRunner()

KOA = fixture_path("koa.claims")
CORPUS = fixture_path("corpus.claims")
MARKS = fixture_path("marks_stage2.csv")


@pytest.fixture(autouse=True)
def no_config_file(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("BIOPORTAL_API_KEY", raising=False)


def run(*args):
    return runner.invoke(app, [str(a) for a in args])


def test_validate():
    result = run("validate", KOA, CORPUS)
    assert result.exit_code == 0
    assert f"{KOA}: 1 claims, 1 expressible" in result.output
    assert f"{CORPUS}: 28 claims, 26 expressible" in result.output


def test_validate_reports_location(tmp_path):
    bad = tmp_path / "bad.claims"
    bad.write_text("ID: b1\nSUBJECT: a\nQUALIFIER: often\nRELATION: causes\nOBJECT: b\n")
    result = run("validate", bad)
    assert result.exit_code == 1
    assert f"{bad}:3:" in result.output
    assert "generally" in result.output or "often" in result.output


def test_validate_missing_file(tmp_path):
    result = run("validate", tmp_path / "nope.claims")
    assert result.exit_code == 2


@pytest.fixture
def latin1_file(tmp_path):
    path = tmp_path / "latin1.txt"
    path.write_bytes(b"ID: c1\nSUBJECT: caf\xe9\n")
    return path


def test_validate_not_utf8(latin1_file):
    result = run("validate", latin1_file)
    assert result.exit_code == 2
    assert "not valid UTF-8" in result.output


def test_eval_model_not_utf8(latin1_file):
    assert run("eval", KOA, "--model", latin1_file).exit_code == 2


def test_agreement_marks_not_utf8(latin1_file):
    assert run("agreement", "--marks", latin1_file).exit_code == 2


def test_stats_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"claims": [{"id": "a", "expressible": "no"}]}')
    result = run("stats", bad)
    assert result.exit_code == 2
    assert "'expressible' must be a boolean" in result.output


def test_formula():
    result = run("formula", KOA)
    assert result.exit_code == 0
    assert result.output.startswith("koa: P(")
    assert "≥ 0.9" in result.output


def test_formula_styles_and_implication():
    ascii_result = run("formula", KOA, "--style", "ascii")
    assert ascii_result.exit_code == 0
    assert "≥" not in ascii_result.output

    result = run("formula", CORPUS, "--id", "a03", "--implication")
    assert result.exit_code == 0
    assert result.output.startswith("a03: ∀x ∀y(")

    result = run("formula", KOA, "--implication")
    assert result.exit_code == 2


def test_formula_unknown_id():
    result = run("formula", KOA, "--id", "nope")
    assert result.exit_code == 2
    assert "nope" in result.output


def test_gloss():
    result = run("gloss", KOA)
    assert result.exit_code == 0
    assert result.output.startswith("koa: ")
    assert "knee osteoarthritis" in result.output


def test_eval_holds():
    result = run("eval", fixture_path("mostly.claims"), "--model", fixture_path("three_person.model"))
    assert result.exit_code == 0
    assert result.output.strip() == "m1: holds, ratio 2/3"


def test_eval_fails():
    result = run("eval", KOA, "--model", fixture_path("three_person.model"))
    assert result.exit_code == 1
    assert "koa: fails, ratio 2/3" in result.output


def test_eval_structured():
    result = run(
        "--format", "structured",
        "eval", fixture_path("mostly.claims"), "--model", fixture_path("three_person.model"),
    )
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data == [
        {"id": "m1", "status": "holds", "ratio": "2/3", "condition_count": 3, "event_count": 2}
    ]


def test_eval_bad_model(tmp_path):
    model = tmp_path / "bad.model"
    model.write_text("WORLDS: w0\nACTUAL: w9\n")
    result = run("eval", KOA, "--model", model)
    assert result.exit_code == 2


def test_check_contradiction():
    result = run("check", fixture_path("contradiction.claims"))
    assert result.exit_code == 1
    lines = result.output.strip().splitlines()
    assert lines[0].startswith("k1 k2: contradicts")
    assert "non-empty-condition" in lines[0]
    assert lines[-1] == "1 findings, 1 contradictions"


def test_check_structured():
    result = run("--format", "structured", "check", fixture_path("contradiction.claims"))
    assert result.exit_code == 1
    (finding,) = json.loads(result.stdout)
    assert finding["verdict"] == "contradicts"
    assert finding["assumptions"] == ["non-empty-condition"]


def test_check_without_findings():
    result = run("check", KOA)
    assert result.exit_code == 0
    assert result.output.strip() == "0 findings, 0 contradictions"


def test_stats():
    result = run("stats", CORPUS)
    assert result.exit_code == 0
    assert "Expressible claims: 26 of 28" in result.output

    data = json.loads(run("--format", "structured", "stats", CORPUS).stdout)
    assert data["total_claims"] == 28
    assert data["expressible"] == 26
    assert sum(data["relation_groups"].values()) == 26


def test_coverage():
    result = run("coverage", CORPUS)
    assert result.exit_code == 0
    assert "Total top-level classes" in result.output
    assert "Coverage:" in result.output

    data = json.loads(run("--format", "structured", "coverage", CORPUS).stdout)
    assert data["total"] == sum(s["total"] for s in data["slots"].values())
    assert data["slots"]["subject"]["total"] == 26


def test_agreement():
    result = run("agreement", "--marks", MARKS, "--marks", MARKS)
    assert result.exit_code == 0
    assert "before-discussion" in result.output
    assert "after-discussion" in result.output
    assert "with a mistake mark: 50%" in result.output


def test_agreement_structured():
    result = run("--format", "structured", "agreement", "--marks", MARKS, "--stage", "after-discussion")
    assert result.exit_code == 0
    (study,) = json.loads(result.stdout)
    assert study["stage"] == "after-discussion"
    assert study["levels"]["A"] == {"count": 1, "fraction": "1/3"}
    assert study["levels"]["C"] == {"count": 0, "fraction": "0"}
    assert study["pairwise"]["p1 p4"] == "7/12"


def test_agreement_too_many_files():
    result = run("agreement", "--marks", MARKS, "--marks", MARKS, "--marks", MARKS)
    assert result.exit_code == 2


def test_resolve_offline(tmp_path):
    result = run(
        "resolve", "knee osteoarthritis",
        "--source", "wikidata", "--offline", "--cache-dir", tmp_path / "cache",
    )
    assert result.exit_code == 0
    assert "knee osteoarthritis:" in result.output
    assert "not cached (offline)" in result.output


def test_resolve_needs_input():
    assert run("resolve").exit_code == 2
    assert run("resolve", "--interactive").exit_code == 2


def test_resolve_output_needs_interactive(tmp_path):
    out = tmp_path / "bound.claims"
    result = run("resolve", "--claims", KOA, "--offline", "--output", out)
    assert result.exit_code == 2
    assert "--output needs --interactive" in result.output
    assert not out.exists()


def test_export(tmp_path):
    result = run(
        "export", KOA,
        "--base-iri", "https://example.org/np/",
        "--created", "2024-05-01T12:00:00",
        "--creator", "https://orcid.org/0000-0002-1825-0097",
    )
    assert result.exit_code == 0
    graphs = reparse_trig(result.stdout)
    assert sorted(graphs) == [
        "https://example.org/np/koa/assertion",
        "https://example.org/np/koa/provenance",
        "https://example.org/np/koa/pubinfo",
    ]

    out = tmp_path / "koa.trig"
    result = run("export", KOA, "--base-iri", "https://example.org/np/", "--output", out)
    assert result.exit_code == 0
    assert len(reparse_trig(out.read_text(encoding="utf-8"))) == 3


def test_export_free_text_id(tmp_path):
    claims = tmp_path / "spaced.claims"
    text = read_fixture("koa.claims").replace("ID: koa", "ID: claim 1")
    claims.write_text(text, encoding="utf-8")
    result = run("export", claims, "--base-iri", "https://example.org/np/")
    assert result.exit_code == 0
    assert "https://example.org/np/claim%201/assertion" in reparse_trig(result.stdout)


def test_export_needs_base_iri():
    assert run("export", KOA).exit_code == 2


def test_bad_format_option():
    assert run("--format", "yaml", "stats", CORPUS).exit_code == 2


def test_config_file(tmp_path):
    config = tmp_path / "sp.toml"
    config.write_text('output_format = "structured"\nbase_iri = "https://example.org/np/"\n')
    result = run("--config", config, "stats", CORPUS)
    assert json.loads(result.stdout)["expressible"] == 26
    assert run("--config", config, "export", KOA).exit_code == 0
