import pytest

from ihamilton.basetable import WALK_5_4_3
from ihamilton.constructive import witness_from_walk
from ihamilton.euler import (
    GoodTour,
    admissible_from_edges,
    check_good_tour,
    count_good_eulerian,
    enumerate_admissible,
    find_good_eulerian,
    grid_transitions,
    lift_tour,
    project_two_factor,
    tour_components,
)
from ihamilton.families import IParams, XParams, all_i_params, i_graph, is_connected_i, spoke_factor, x_graph
from ihamilton.multigraph import cycle_decomposition
from ihamilton.oracle import enumerate_two_factors, verify_cycle
from ihamilton.quotient import classify_transitions, contract_factor

SMALL = [p for p in all_i_params(10) if is_connected_i(p)]


def _contract(p):
    return contract_factor(i_graph(p), spoke_factor(p))


@pytest.mark.parametrize("params", SMALL, ids=str)
def test_two_factors_biject_with_admissible_subgraphs(params):
    c = _contract(params)
    ts = classify_transitions(c)
    factors = enumerate_two_factors(c.source)
    projected = {project_two_factor(c, t).edges for t in factors}
    admissible = enumerate_admissible(c.quotient, ts) if c.quotient.vertex_count <= 12 else None
    assert len(projected) == len(factors)
    if admissible is not None:
        assert projected == {w.edges for w in admissible}


@pytest.mark.parametrize("params", SMALL, ids=str)
def test_hamiltonian_cycles_match_good_subgraphs(params):
    c = _contract(params)
    ts = classify_transitions(c)
    hamiltonian = 0
    for t in enumerate_two_factors(c.source):
        single = len(cycle_decomposition(c.source, t)) == 1
        hamiltonian += single
        assert (tour_components(project_two_factor(c, t)) == 1) == single
    assert count_good_eulerian(c.quotient, ts) == hamiltonian


def test_petersen_has_no_good_subgraph():
    c = _contract(IParams(5, 1, 2))
    out = find_good_eulerian(c.quotient, classify_transitions(c))
    assert out.completed and not out.found


def test_found_tour_lifts_to_hamiltonian_cycle():
    c = _contract(IParams(12, 2, 3))
    out = find_good_eulerian(c.quotient, classify_transitions(c))
    assert out.found
    assert verify_cycle(c.source, lift_tour(c, out.tour))


def test_worked_tour_on_x_5_4_3_passes_checker():
    p = XParams(5, 4, 3)
    w = witness_from_walk(p, WALK_5_4_3)
    assert check_good_tour(x_graph(p), grid_transitions(p), w.edges, w.tour) == []


def test_checker_rejects_tampered_tours():
    p = XParams(5, 4, 3)
    x, ts = x_graph(p), grid_transitions(p)
    w = witness_from_walk(p, WALK_5_4_3)
    steps = list(w.tour.steps)
    assert check_good_tour(x, ts, w.edges, GoodTour(tuple(steps[:-1])))
    swapped = steps[:]
    swapped[3], swapped[4] = swapped[4], swapped[3]
    assert check_good_tour(x, ts, w.edges, GoodTour(tuple(swapped)))
    flipped = [(e, 1 - d) for e, d in reversed(steps)]
    assert check_good_tour(x, ts, w.edges, GoodTour(tuple(flipped))) == []
    extra = list(w.edges)
    extra[extra.index(False)] = True
    assert check_good_tour(x, ts, extra, w.tour)


def test_admissible_rejects_non_traversing_two_valent():
    p = XParams(3, 1, 0)
    x, ts = x_graph(p), grid_transitions(p)
    # horizontal cycle only: every vertex keeps its two red slots
    with pytest.raises(ValueError):
        admissible_from_edges(x, ts, [True] * 3 + [False] * 3)


def test_fixed_edges_are_honoured():
    p = XParams(5, 4, 3)
    x, ts = x_graph(p), grid_transitions(p)
    fixed = [-1] * x.edge_count
    fixed[0] = 0
    fixed[25] = 1
    out = find_good_eulerian(x, ts, fixed)
    assert out.found
    assert not out.subgraph.edges[0] and out.subgraph.edges[25]


def test_node_limit_aborts():
    p = XParams(6, 4, 2)
    out = find_good_eulerian(x_graph(p), grid_transitions(p), accept=lambda _: False, node_limit=50)
    assert not out.completed
