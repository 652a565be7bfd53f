"""End-to-end runs at the sizes the tool is documented for. Minutes, not seconds."""
from __future__ import annotations

from itertools import permutations

import pytest

from beilab.commands.analyze import cmd_analyze
from beilab.commands.witness import cmd_witness
from beilab.services.catalog import connected_graphs
from beilab.services.graph import is_closed_labeling, recognize_closed
from beilab.services.harness import check_graph, run_enumeration, verdict_kinds

from .conftest import graph

pytestmark = pytest.mark.slow


def test_net_report(net):
    report = cmd_analyze(net, k_max=2)
    assert not report.flags.closed
    assert report.flags.block and report.flags.cm
    assert [r.symbolic_equals_ordinary for r in report.rows] == [True, False]


def test_path_report_has_flat_depths():
    report = cmd_analyze(graph("P5"), k_max=3, with_oracle=True)
    assert report.flags.cm
    assert [r.predicted_depth for r in report.rows] == [6, 6, 6]
    assert [r.oracle_depth for r in report.rows] == [6, 6, 6]


@pytest.mark.parametrize("k", [2, 3])
def test_net_witness(net, k):
    cert = cmd_witness(net, k)
    assert (cert.symbolic, cert.ordinary) == (True, False)


def test_initial_powers_up_to_six_vertices():
    run = run_enumeration(["eq3"], n_max=6, k_max=2)
    assert run.counterexamples == []


def test_net_free_iff_symbolic_square_up_to_six_vertices():
    run = run_enumeration(["q4"], n_max=6, k_max=2)
    assert run.counterexamples == []
    assert run.evidence.get("q4", {}).get("disagree", 0) == 0


def test_betti_tables_of_initial_powers_up_to_five_vertices():
    run = run_enumeration(["conj52"], n_max=5, k_max=2)
    assert run.counterexamples == []
    assert run.evidence.get("conj52", {}).get("disagree", 0) == 0


def test_isomorphism_reduction_spot_check_at_five():
    names = ["classification", "closed_gb", "dimension"]
    reduced, labelled = [], []
    for G in connected_graphs(5):
        reduced += check_graph(G, names, 1)[0]
    for G in connected_graphs(5, reduce_isomorphism=False):
        labelled += check_graph(G, names, 1)[0]
    assert verdict_kinds(reduced) == verdict_kinds(labelled)


# connected graphs on 1..5 vertices, up to isomorphism
UP_TO_FIVE = 1 + 1 + 2 + 6 + 21


@pytest.mark.parametrize(
    "names, n_max, k_max",
    [
        (["depth"], 5, 3),
        (["regularity"], 5, 2),
        (["symbolic_closed"], 5, 2),
        (["persistence"], 5, 2),
        (["decomposition"], 5, 1),
        (["dimension"], 6, 1),
        (["closed_gb"], 7, 1),
    ],
    ids=["depth", "regularity", "symbolic_closed", "persistence", "decomposition", "dimension", "closed_gb"],
)
def test_theorem_selectors_at_documented_sizes(names, n_max, k_max):
    run = run_enumeration(names, n_max=n_max, k_max=k_max)
    assert run.counterexamples == []
    assert run.verdicts > 0
    if n_max == 5:
        assert run.graphs_checked == UP_TO_FIVE


@pytest.mark.parametrize("name", ["K3", "K4"])
def test_complete_graph_depth_up_to_the_cube(name):
    verdicts, skipped = check_graph(graph(name), ["complete_depth"], 3)
    assert skipped == []
    (verdict,) = verdicts
    assert verdict.ok
    assert verdict.details["oracle"] == {2: 3, 3: 3}


def test_closed_recognition_against_every_labeling():
    for n in range(1, 7):
        for G in connected_graphs(n):
            some_closed = any(is_closed_labeling(G.relabel(list(p))) for p in permutations(range(1, n + 1)))
            assert (recognize_closed(G) is not None) == some_closed, str(G)
