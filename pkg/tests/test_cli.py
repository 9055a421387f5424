"""Tests for the command-line client."""

import csv
import json

import pytest
from click.testing import CliRunner

from bernoulli_audit.cli import main

SEED = "12345678901234567890"

CONFIG = {
    "audit_id": "city-2026",
    "alpha": 0.05,
    "contests": [
        {
            "contest_id": "mayor",
            "candidates": ["alice", "bob"],
            "winners": ["alice"],
            "reported": {"alice": 900, "bob": 100},
            "n_total_reported": 1000,
        }
    ],
    "round_rates": [0.1],
}


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


def test_plan_emits_json(runner):
    result = invoke(
        runner,
        ["plan", "--alpha", "0.05", "--margin", "0.1", "--n-total", "100000",
         "--trials", "200"],
    )
    plan = json.loads(result.output)
    assert set(plan) == {
        "alpha", "margin", "invalid_fraction", "asn", "recommended_rate",
        "method", "power_estimate", "trials",
    }
    assert 597 <= plan["asn"] <= 601


def test_full_cli_pipeline(runner, tmp_path):
    audit_file = str(tmp_path / "audit.json")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(CONFIG))

    invoke(runner, ["create", "--audit-file", audit_file, "--config", str(config_path)])
    invoke(
        runner,
        ["bundle", "add", "--audit-file", audit_file, "--bundle-id", "b1",
         "--site-id", "s1", "--seed", SEED, "--count", "1000"],
    )
    worksheet = tmp_path / "worksheet.csv"
    sequence = json.loads(
        invoke(
            runner,
            ["sequence", "--audit-file", audit_file, "--bundle-id", "b1",
             "--round", "0", "--csv", str(worksheet)],
        ).output
    )
    assert sequence["positions"][:3] == [1, 13, 17]

    with open(worksheet) as handle:
        rows = list(csv.DictReader(handle))
    assert list(rows[0]) == ["bundle_id", "round", "draw_index", "y", "position"]
    assert [int(r["position"]) for r in rows] == sequence["positions"]

    interpretations = tmp_path / "interpretations.csv"
    with open(interpretations, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["audit_id", "bundle_id", "round", "position", "contest_id", "interpretation"]
        )
        for position in sequence["positions"]:
            writer.writerow(["city-2026", "b1", 0, position, "mayor", "alice"])
    ingest_report = json.loads(
        invoke(runner, ["ingest", str(interpretations), "--audit-file", audit_file]).output
    )
    assert ingest_report["applied"] == len(sequence["positions"])

    report = json.loads(invoke(runner, ["risk", "--audit-file", audit_file]).output)
    assert report["contests"][0]["status"] == "CONFIRMED"

    escalation = json.loads(
        invoke(runner, ["escalate", "--audit-file", audit_file, "--rate", "0.2"]).output
    )
    assert escalation["status"] == "noop"  # already confirmed


def test_ingest_rejects_wrong_header(runner, tmp_path):
    audit_file = str(tmp_path / "audit.json")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(CONFIG))
    invoke(runner, ["create", "--audit-file", audit_file, "--config", str(config_path)])
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    result = CliRunner().invoke(main, ["ingest", str(bad), "--audit-file", audit_file])
    assert result.exit_code != 0
    assert "header" in result.output


def test_ingest_skips_foreign_audit_rows(runner, tmp_path):
    audit_file = str(tmp_path / "audit.json")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(CONFIG))
    invoke(runner, ["create", "--audit-file", audit_file, "--config", str(config_path)])
    invoke(
        runner,
        ["bundle", "add", "--audit-file", audit_file, "--bundle-id", "b1",
         "--site-id", "s1", "--seed", SEED, "--count", "100"],
    )
    invoke(runner, ["sequence", "--audit-file", audit_file, "--bundle-id", "b1"])
    rows = tmp_path / "rows.csv"
    rows.write_text(
        "audit_id,bundle_id,round,position,contest_id,interpretation\n"
        "other-audit,b1,0,1,mayor,alice\n"
    )
    report = json.loads(invoke(runner, ["ingest", str(rows), "--audit-file", audit_file]).output)
    assert report["applied"] == 0
    assert report["skipped_rows"][0]["line"] == 2


def test_global_audit_file_flag(runner, tmp_path):
    audit_file = str(tmp_path / "audit.json")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(CONFIG))
    invoke(runner, ["--audit-file", audit_file, "create", "--config", str(config_path)])
    invoke(
        runner,
        ["--audit-file", audit_file, "--seed", SEED, "bundle", "add",
         "--bundle-id", "b1", "--site-id", "s1"],
    )
    sequence = json.loads(
        invoke(
            runner,
            ["--audit-file", audit_file, "sequence", "--bundle-id", "b1",
             "--size", "100"],
        ).output
    )
    assert sequence["positions"][0] == 1


def test_create_refuses_overwrite(runner, tmp_path):
    audit_file = tmp_path / "audit.json"
    audit_file.write_text("{}")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(CONFIG))
    result = CliRunner().invoke(
        main, ["create", "--audit-file", str(audit_file), "--config", str(config_path)]
    )
    assert result.exit_code != 0
    assert "exists" in result.output


def test_simulate_writes_csv_and_plot(runner, tmp_path):
    out = tmp_path / "workload.csv"
    svg = tmp_path / "workload.svg"
    invoke(
        runner,
        ["simulate", "--n-total", "2000", "--shares", "0.7,0.99", "--alphas", "0.05",
         "--trials", "60", "--sim-seed", "5", "--out", str(out), "--plot", str(svg)],
    )
    with open(out) as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 4
    assert {r["method"] for r in rows} == {"BBP", "BRAVO"}
    assert svg.read_text().lstrip().startswith("<?xml")


def test_simulate_deterministic_output(runner, tmp_path):
    args = ["simulate", "--n-total", "2000", "--shares", "0.7", "--alphas", "0.05",
            "--trials", "60", "--sim-seed", "5"]
    first = invoke(runner, args).output
    second = invoke(runner, args).output
    assert first == second
