import pytest

from ihamilton.families import IParams, XParams, all_i_params, i_graph, is_connected_i, sgi_graph, sgi_spokes, spoke_factor, x_graph
from ihamilton.multigraph import Multigraph, edge_subset
from ihamilton.oracle import brute_isomorphic, enumerate_perfect_matchings
from ihamilton.quotient import (
    NotSpecialError,
    blue_red_coloring,
    check_coloring,
    classify_transitions,
    coloring_transitions,
    contract_factor,
    is_special,
    split_quartic,
)

K4 = Multigraph(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)])


def _contract_i(n, p, q):
    params = IParams(n, p, q)
    return contract_factor(i_graph(params), spoke_factor(params))


def test_petersen_quotient_is_k5():
    q = _contract_i(5, 1, 2).quotient
    assert (q.vertex_count, q.edge_count) == (5, 10)
    assert all(q.multiplicity(u, v) == 1 for u in range(5) for v in range(5) if u != v)


def test_prism_quotient_is_doubled_triangle():
    q = _contract_i(3, 1, 1).quotient
    assert q.edge_count == 6
    assert all(q.multiplicity(u, v) == 2 for u, v in ((0, 1), (1, 2), (0, 2)))


def test_k4_perfect_matching_gives_two_loops_and_is_not_special():
    f = edge_subset(K4, [0, 1])
    c = contract_factor(K4, f)
    assert c.quotient.vertex_count == 2
    assert sum(1 for a, b in c.quotient.edges if a == b) == 0
    assert not is_special(K4, f)
    with pytest.raises(NotSpecialError):
        blue_red_coloring(c)


def test_parallel_to_factor_edge_becomes_loop():
    # theta-like cubic multigraph: a factor edge with a parallel twin
    g = Multigraph(4, [(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)])
    c = contract_factor(g, edge_subset(g, [0, 2]))
    assert c.quotient.has_loop()
    assert c.flags


def test_contract_rejects_non_matching():
    with pytest.raises(ValueError):
        contract_factor(K4, edge_subset(K4, [0, 2]))


def test_transitions_split_two_plus_two():
    c = _contract_i(7, 1, 2)
    ts = classify_transitions(c)
    for v in range(c.quotient.vertex_count):
        slots = ts.slots(v)
        assert len(set(slots)) == 4
        assert len(ts.traversing_pairs(v)) == 4
        a, b = ts.pairs[v][0]
        assert not ts.is_traversing(v, a, b)


def test_special_factor_colouring_of_i_graph():
    c = _contract_i(12, 2, 3)
    col = blue_red_coloring(c)
    check_coloring(c.quotient, col)
    # outer rim red, inner rim blue
    assert col.blue == tuple([False] * 12 + [True] * 12)
    assert coloring_transitions(c.quotient, col) == classify_transitions(c)


def test_split_of_x_4_2_2_is_sgi():
    p = XParams(4, 2, 2)
    c = contract_factor(sgi_graph(p), sgi_spokes(p))
    g, f = split_quartic(c.quotient, blue_red_coloring(c))
    assert brute_isomorphic(g, sgi_graph(p)) is not None
    assert contract_factor(g, f).quotient.edges == x_graph(p).edges


@pytest.mark.parametrize("params", [p for p in all_i_params(12) if is_connected_i(p)])
def test_split_inverts_contraction(params):
    c = contract_factor(i_graph(params), spoke_factor(params))
    g, f = split_quartic(c.quotient, blue_red_coloring(c))
    assert brute_isomorphic(g, i_graph(params)) is not None
    assert contract_factor(g, f).quotient.edges == c.quotient.edges


def test_petersen_matchings_all_special():
    # every complement is two 5-cycles joined by the matching
    g = i_graph(IParams(5, 1, 2))
    matchings = enumerate_perfect_matchings(g)
    assert len(matchings) == 6
    assert all(is_special(g, m) for m in matchings)
