from __future__ import annotations

import pytest

from beilab.errors import CapacityError, DomainError
from beilab.services.formulas import (
    clique_dimensions,
    component_path_lengths,
    depth_limit_closed,
    depth_monotone_initial,
    depth_powers_cm_closed,
    depth_powers_disjoint_cliques,
    persistence_check,
    reg_powers_closed,
    regularity_profile,
)
from beilab.services.graph import Graph
from beilab.settings import settings

from .conftest import graph


@pytest.mark.parametrize(
    "name, d, c",
    [
        ("P4", [1, 1, 1], 1),
        ("K4", [3], 1),
        ("K1", [], 1),
    ],
)
def test_clique_dimensions(name, d, c):
    assert clique_dimensions(graph(name)) == (d, c)


def test_clique_dimensions_of_disjoint_cliques(k3_plus_k2):
    assert clique_dimensions(k3_plus_k2) == ([2, 1], 2)


def test_clique_dimensions_relabel_first():
    assert clique_dimensions(Graph.from_edges(3, [(1, 3), (2, 3)])) == ([1, 1], 1)


def test_depth_profile_of_complete_graph():
    profile = depth_powers_cm_closed(graph("K4"), 3)
    assert profile.values == {1: 5, 2: 3, 3: 3}
    assert profile.limit == 3
    assert (profile.r, profile.c) == (1, 1)


def test_depth_profile_of_path_is_flat():
    profile = depth_powers_cm_closed(graph("P5"))
    assert set(profile.values) == {1, 2, 3, 4, 5}
    assert set(profile.values.values()) == {6}


def test_depth_profile_matches_disjoint_clique_formula(k3_plus_k2):
    profile = depth_powers_cm_closed(k3_plus_k2, 3)
    assert profile.values == {1: 7, 2: 6, 3: 6}
    for k in (1, 2, 3):
        assert profile.values[k] == depth_powers_disjoint_cliques([2, 1], k)


def test_depth_profile_is_non_increasing():
    for name in ("P6", "K5", "P3"):
        values = depth_powers_cm_closed(graph(name), 6).values
        assert all(values[k] >= values[k + 1] for k in range(1, 6)), name


def test_depth_needs_cm_closed(closed_not_cm):
    with pytest.raises(DomainError):
        depth_powers_cm_closed(closed_not_cm)
    with pytest.raises(DomainError):
        depth_powers_cm_closed(graph("claw"))


def test_disjoint_clique_formula_edges():
    assert depth_powers_disjoint_cliques([1], 1) == 3
    assert depth_powers_disjoint_cliques([3, 3], 5) == 6
    with pytest.raises(ValueError):
        depth_powers_disjoint_cliques([1], 0)
    with pytest.raises(DomainError):
        depth_powers_disjoint_cliques([2, 0], 1)


@pytest.mark.parametrize("name, limit", [("K4", 3), ("P4", 5), ("K1", 2)])
def test_depth_limit(name, limit):
    assert depth_limit_closed(graph(name)) == limit


def test_depth_limit_of_disconnected_graph(k3_plus_k2):
    assert depth_limit_closed(k3_plus_k2) == 2 + 4


@pytest.mark.parametrize("k, reg", [(1, 1), (2, 3), (3, 5)])
def test_regularity_of_complete_graph(k, reg):
    assert reg_powers_closed(graph("K4"), k) == reg


def test_regularity_adds_component_paths(k3_plus_k2):
    assert component_path_lengths(k3_plus_k2) == [1, 1]
    assert reg_powers_closed(k3_plus_k2, 2) == 4
    assert reg_powers_closed(graph("E3"), 3) == 0


def test_regularity_profile():
    profile = regularity_profile(graph("P4"), 2)
    assert profile.ell == [3]
    assert profile.values == {1: 3, 2: 5}


def test_regularity_needs_closed_graph():
    with pytest.raises(DomainError):
        reg_powers_closed(graph("claw"), 1)
    with pytest.raises(ValueError):
        reg_powers_closed(graph("P3"), 0)


@pytest.mark.parametrize("name", ["P3", "K3"])
def test_persistence(name):
    assert persistence_check(graph(name), 1)


def test_persistence_of_edgeless_graph():
    assert persistence_check(graph("E2"), 1)


def test_persistence_budget(monkeypatch):
    monkeypatch.setattr(settings, "persistence_max_n", 2)
    with pytest.raises(CapacityError) as err:
        persistence_check(graph("P3"), 1)
    assert err.value.stage == "persistence"


def test_initial_ideal_depths_do_not_increase():
    assert depth_monotone_initial(graph("P3"), 2)
    assert depth_monotone_initial(graph("K3"), 2)
