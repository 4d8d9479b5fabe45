"""Command-line interface behavior."""

import json

import pytest

from shuttervlc.cli import main
from shuttervlc.scenario import bundled_scenario


def test_geometry_json(capsys):
    assert main(["geometry", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["h_m"] == pytest.approx(0.1488, abs=5e-5)
    assert out["alpha_deg"] == pytest.approx(51.2, abs=0.1)


def test_geometry_placement_mapping(capsys):
    # a leading space keeps argparse from reading the negative x as a flag
    assert main(["geometry", "--placement", " -0.0744,0", "0.0744,0",
                 "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["feasible"] is True
    assert out["mapping"] == [0, 1]


def test_tables_all_pass(capsys):
    assert main(["tables", "ALL", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"GEOMETRY", "T3_PACKETS", "T5_LATENCY", "GOODPUT"}
    assert all(cell["pass"] for cells in out.values() for cell in cells)


def test_latency_defaults(capsys):
    assert main(["latency", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["step1_ms"] == pytest.approx(10.0)
    assert out["total_ms"] == pytest.approx(219.6)


@pytest.mark.parametrize("rate,expected", [("500e3", 477), ("1e6", 954),
                                           ("2e6", 1908)])
def test_packets_per_slot_cmd(capsys, rate, expected):
    assert main(["packets-per-slot", "--symbol-rate", rate, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["packets_per_slot"] == expected


def test_list_scenarios(capsys):
    assert main(["list-scenarios"]) == 0
    names = capsys.readouterr().out.split()
    assert "protocol_clean" in names


def test_run_and_replay_roundtrip(tmp_path, capsys):
    scenario = bundled_scenario("table1_type1_case2")
    src = tmp_path / "scenario.json"
    src.write_text(json.dumps(scenario.source_dict))
    assert main(["run", str(src), "--out", str(tmp_path)]) == 0
    trace = tmp_path / "table1_type1_case2_trace.json"
    assert trace.is_file()
    capsys.readouterr()
    assert main(["replay", str(trace)]) == 0


def test_replay_flags_tampered_trace(tmp_path, capsys):
    assert main(["run", "table1_type1_case2", "--bundled",
                 "--out", str(tmp_path)]) == 0
    trace = tmp_path / "table1_type1_case2_trace.json"
    d = json.loads(trace.read_text())
    d["reports"]["1"]["ber"] = 0.4999
    trace.write_text(json.dumps(d))
    capsys.readouterr()
    assert main(["replay", str(trace)]) == 1
