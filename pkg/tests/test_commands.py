from __future__ import annotations

import io
import json
from pathlib import Path

import pandas as pd
import pytest

from beilab.commands.common import load_graph
from beilab.main import main
from beilab.schema import Verdict
from beilab.services.harness import SELECTORS, Selector
from beilab.settings import settings

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture(autouse=True)
def restore_overrides(monkeypatch):
    # --field/--seed write through to the settings singleton and the environment
    monkeypatch.setattr(settings, "field", settings.field)
    monkeypatch.setattr(settings, "seed", settings.seed)
    monkeypatch.setenv("BEILAB_FIELD", settings.field)
    monkeypatch.setenv("BEILAB_SEED", str(settings.seed))


def _json_lines(out: str):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


# ---------------------------------------------------------------------------
# graph sources
# ---------------------------------------------------------------------------


def test_inline_edge_list():
    G = load_graph("1 2; 2 3")
    assert G.n == 3
    assert G.edges() == [(1, 2), (2, 3)]


def test_graph_files():
    net = load_graph(str(SAMPLES / "net.edges"))
    assert net.edge_count() == 6
    c5 = load_graph(str(SAMPLES / "c5.g6"))
    assert c5.n == 5 and c5.edge_count() == 5


def test_graph_from_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1 2\n2 3\n3 4\n"))
    assert load_graph("-").edge_count() == 3


def test_named_graph_wins():
    assert load_graph("K4").is_complete()


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def test_analyze_complete_graph(capsys):
    assert main(["analyze", "K4", "--k-max", "3", "--format", "json"]) == 0
    (report,) = _json_lines(capsys.readouterr().out)
    assert report["flags"]["closed"] and report["flags"]["cm"]
    rows = report["rows"]
    assert [r["predicted_depth"] for r in rows] == [5, 3, 3]
    assert [r["predicted_reg"] for r in rows] == [1, 3, 5]
    assert [r["cm_prediction"] for r in rows] == [True, False, False]
    # k = 3 is past symbolic_max_k and left unanswered
    assert [r["symbolic_equals_ordinary"] for r in rows] == [True, True, None]
    assert report["depth_limit"] == 3
    assert report["field"] == "qq"


def test_analyze_block_graph_text(capsys):
    assert main(["analyze", "claw", "--k-max", "1"]) == 0
    out = capsys.readouterr().out
    assert "closed=False block=True" in out
    assert "cm=False" in out
    assert "dimension: 6" in out


def test_analyze_with_oracle(capsys):
    assert main(["analyze", "K3", "--k-max", "1", "--with-betti", "--format", "json"]) == 0
    (report,) = _json_lines(capsys.readouterr().out)
    (row,) = report["rows"]
    assert (row["oracle_depth"], row["oracle_reg"], row["probe_depth"]) == (4, 1, 4)
    assert (row["initial_depth"], row["initial_reg"]) == (4, 1)
    assert set(report["betti"]) == {"J^1", "in(J)^1"}
    assert report["oracle_field"] == "gf32003"


def test_analyze_csv_has_one_row_per_power(capsys):
    assert main(["analyze", "P3", "K3", "--k-max", "2", "--format", "csv"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert len(frame) == 4
    assert list(frame["predicted_reg"]) == [2, 4, 1, 3]


def test_analyze_export(tmp_path, capsys):
    assert main(["analyze", "P3", "--k-max", "1", "--export", str(tmp_path)]) == 0
    capsys.readouterr()
    assert (tmp_path / "analysis.csv").is_file()
    frame = pd.read_excel(tmp_path / "analysis.xlsx", sheet_name="reports")
    assert list(frame["graph"]) == ["1 2,2 3"]


def test_field_override_is_recorded(capsys):
    assert main(["analyze", "P2", "--k-max", "1", "--field", "7", "--seed", "5", "--format", "json"]) == 0
    (report,) = _json_lines(capsys.readouterr().out)
    assert (report["field"], report["seed"]) == ("gf7", 5)


def test_parse_error_exits_one(capsys):
    assert main(["analyze", "1 x"]) == 1
    assert "malformed vertex" in capsys.readouterr().err


def test_capacity_exits_three(monkeypatch, capsys):
    monkeypatch.setattr(settings, "cut_set_max_n", 2)
    assert main(["analyze", "P4", "--k-max", "1"]) == 3
    assert "[cut_point_sets]" in capsys.readouterr().err


def test_unknown_verb_exits_one(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 1


# ---------------------------------------------------------------------------
# witness
# ---------------------------------------------------------------------------


def test_witness_without_net(capsys):
    assert main(["witness", "K4"]) == 0
    assert capsys.readouterr().out.strip() == "none"


def test_witness_needs_k_two(capsys):
    assert main(["witness", "net", "-k", "1"]) == 1
    assert "k = 2" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# betti
# ---------------------------------------------------------------------------


def test_betti_of_complete_graph(capsys):
    assert main(["betti", "K3"]) == 0
    out = capsys.readouterr().out
    assert "pd=2 depth=4 reg=1 field=gf32003 grading=vertex" in out
    assert "total:" in out


def test_betti_of_ideal_file(capsys):
    assert main(["betti", "--ideal", str(SAMPLES / "k3_ideal.json"), "--format", "json"]) == 0
    (table,) = _json_lines(capsys.readouterr().out)
    assert table["entries"] == {"0": {"0": 1}, "1": {"2": 3}, "2": {"3": 2}}


def test_betti_of_initial_ideal(capsys):
    assert main(["betti", "P3", "--initial", "--format", "json"]) == 0
    (table,) = _json_lines(capsys.readouterr().out)
    assert table["grading"] == "fine"
    assert (table["depth"], table["reg"]) == (4, 2)


def test_truncated_betti_table(capsys):
    assert main(["betti", "K3", "--degree-bound", "2"]) == 0
    assert "truncated at degree 2" in capsys.readouterr().out


def test_betti_needs_a_source(capsys):
    assert main(["betti"]) == 1


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def test_enumerate_classification(capsys):
    assert main(["enumerate", "classification", "closed_gb", "--n-max", "4"]) == 0
    out = capsys.readouterr().out
    assert "graphs checked: 10" in out
    assert "COUNTEREXAMPLE" not in out


def test_enumerate_json(capsys):
    assert main(["enumerate", "depth_decreasing", "--n-max", "4", "--format", "json"]) == 0
    run = json.loads(capsys.readouterr().out)
    assert run["counterexamples"] == []
    assert sum(run["evidence"]["depth_decreasing"].values()) == 1


def test_counterexample_exits_two(monkeypatch, tmp_path, capsys):
    def broken(G, k_max):
        return [Verdict(selector="broken", graph=str(G), kind="theorem", ok=False)]

    monkeypatch.setitem(SELECTORS, "broken", Selector("broken", "theorem", "classification_max_n", broken))
    assert main(["enumerate", "broken", "--n-max", "2", "--export", str(tmp_path)]) == 2
    assert capsys.readouterr().out.count("COUNTEREXAMPLE broken") == 2
    frame = pd.read_excel(tmp_path / "enumeration.xlsx", sheet_name="counterexamples")
    assert len(frame) == 2
    assert pd.read_csv(tmp_path / "enumeration.csv")["counterexamples"].tolist() == [2]


def test_enumerate_rejects_unknown_selector(capsys):
    assert main(["enumerate", "nope", "--n-max", "3"]) == 1
