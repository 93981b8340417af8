from itertools import combinations

import pytest

from ihamilton.cayley import (
    adam_isomorphic,
    adam_isomorphism,
    canonical_form,
    cayley_params,
    check_cayley_map,
    coprime_lift,
    find_k,
    find_k_by_lift,
    fundamental_factor_counts,
    i_graph_from_x,
    isomorphic_x,
    measured_factor_counts,
    sgi_from_x,
    swap_candidates,
    swap_form,
    x_from_i,
)
from ihamilton.families import IParams, XParams, all_x_params, circulant, i_graph, sgi_graph, sgi_spokes, spoke_factor, x_graph
from ihamilton.oracle import brute_isomorphic, is_isomorphism
from ihamilton.quotient import contract_factor


@pytest.mark.parametrize("a,b,c,h", [(12, 4, 1, 1), (12, 4, 3, 7), (30, 6, 5, 11)])
def test_coprime_lift_examples(a, b, c, h):
    assert coprime_lift(a, b, c) == h


def test_coprime_lift_rejects_non_coprime_residue():
    with pytest.raises(ValueError):
        coprime_lift(12, 4, 2)


def test_find_k_examples():
    assert find_k(XParams(4, 3, 2)).k == 2
    assert find_k(XParams(6, 4, 2)).k == 1
    assert all(find_k(XParams(s, 1, r)).k == r for s in range(3, 12) for r in range(1, s))


def test_k_witness_invariants():
    for s in range(1, 21):
        for t in range(1, 13):
            for r in range(1, s):
                p = XParams(s, t, r)
                try:
                    kw = find_k(p)
                except ValueError:
                    continue
                assert kw.valid()
                lifted = find_k_by_lift(p)
                assert lifted is None or lifted.valid()


def test_cayley_examples():
    cp = cayley_params(XParams(4, 3, 2))
    assert (cp.m, cp.d1) == (12, 1)
    assert {cp.gamma1[0], cp.gamma2[0]} == {3, 2}
    phi = brute_isomorphic(x_graph(XParams(4, 3, 2)), circulant(12, 3, 2))
    assert phi is not None


@pytest.mark.parametrize("params", [p for p in all_x_params(30) if p.order >= 3], ids=str)
def test_cayley_map_is_adjacency_preserving(params):
    assert check_cayley_map(params)


def test_swap_examples():
    assert swap_form(XParams(5, 3, 0)) == XParams(3, 5, 0)
    a, b = swap_candidates(XParams(4, 3, 2))
    assert a.s == 6 and a.t == 2
    assert brute_isomorphic(x_graph(XParams(4, 3, 2)), x_graph(a)) is not None
    assert swap_form(XParams(5, 3, 2)).t == 1


@pytest.mark.parametrize("params", [p for p in all_x_params(24) if p.order >= 2], ids=str)
def test_swap_form_is_isomorphic(params):
    assert brute_isomorphic(x_graph(params), x_graph(swap_form(params))) is not None


def test_adam_examples():
    assert adam_isomorphic(XParams(8, 1, 3), XParams(8, 1, 5))
    assert not adam_isomorphic(XParams(8, 1, 3), XParams(4, 2, 2))
    assert adam_isomorphic(XParams(6, 4, 2), XParams(6, 4, 2))


def test_isomorphic_examples():
    assert isomorphic_x(XParams(8, 1, 3), XParams(4, 2, 2))
    assert not isomorphic_x(XParams(8, 1, 3), XParams(8, 1, 1))
    for n in range(1, 4):
        assert isomorphic_x(XParams(4 * n, 1, 2 * n - 1), XParams(4 * n, 1, 2 * n + 1))


def test_isomorphic_agrees_with_oracle_small():
    by_order = {}
    for p in all_x_params(12):
        by_order.setdefault(p.order, []).append(p)
    for group in by_order.values():
        for a, b in combinations(group, 2):
            expected = brute_isomorphic(x_graph(a), x_graph(b)) is not None
            assert isomorphic_x(a, b) == expected, (a, b)
            assert (canonical_form(a) == canonical_form(b)) == expected


def test_canonical_examples():
    assert canonical_form(XParams(8, 1, 5)) == canonical_form(XParams(8, 1, 3))
    assert canonical_form(XParams(4, 2, 2)) == canonical_form(XParams(8, 1, 3))
    for p in all_x_params(16):
        assert canonical_form(canonical_form(p)) == canonical_form(p)


def test_adam_maps_send_fundamental_factorization_to_itself():
    for a in all_x_params(20):
        if a.order < 3:
            continue
        red = set(range(a.order))
        for b in (swap_form(a), XParams(a.s, a.t, (a.s - a.r) % a.s)):
            iso = adam_isomorphism(a, b)
            assert iso is not None
            assert is_isomorphism(x_graph(b), x_graph(a), iso.vertex_map)
            image = {iso.edge_map[e] for e in range(b.order)}
            assert image in (red, set(range(a.order, 2 * a.order)))


def test_i_graph_from_x_examples():
    assert i_graph_from_x(XParams(8, 1, 3)) == IParams(8, 3, 1)
    assert i_graph_from_x(XParams(4, 2, 2)) is None
    assert i_graph_from_x(XParams(4, 3, 2)) == IParams(12, 2, 3)


def test_i_graph_round_trip():
    for p in all_x_params(24):
        ip = i_graph_from_x(p)
        if ip is None:
            continue
        back = x_from_i(ip)
        assert isomorphic_x(back, p), (p, ip, back)
        c = contract_factor(i_graph(ip), spoke_factor(ip))
        assert brute_isomorphic(c.quotient, x_graph(p)) is not None


def test_sgi_examples():
    assert str(sgi_from_x(XParams(4, 2, 2))) == "SGI(8,4,2,2)"
    assert str(sgi_from_x(XParams(5, 3, 0))) == "SGI(15,5,3,5)"
    p = XParams(6, 4, 2)
    q = sgi_from_x(p).x_params()
    assert contract_factor(sgi_graph(q), sgi_spokes(q)).quotient.edges == x_graph(p).edges


def test_fundamental_factor_counts():
    assert fundamental_factor_counts(XParams(6, 4, 2)) == ((4, 6), (2, 12))
    for n in range(1, 5):
        p = XParams(4 * n, 1, 2 * n - 1)
        assert fundamental_factor_counts(p) == ((1, 4 * n), (1, 4 * n))
    assert fundamental_factor_counts(XParams(5, 3, 0)) == ((3, 5), (5, 3))
    for p in all_x_params(30):
        assert fundamental_factor_counts(p) == measured_factor_counts(p)
