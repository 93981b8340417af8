import pytest

from ihamilton.basetable import BASE_SPECS, WALK_5_4_3, generate, has_caps, load_table
from ihamilton.constructive import (
    ExpansionError,
    check_witness,
    concatenate,
    construct_witness,
    excluded,
    expand_horizontal,
    expand_vertical,
    expansion_sites,
    grow,
    transpose,
    witness_from_walk,
)
from ihamilton.euler import find_good_eulerian, grid_transitions
from ihamilton.families import XParams, all_x_params, x_graph

W543 = witness_from_walk(XParams(5, 4, 3), WALK_5_4_3)
BASES = {entry.spec.name: entry for entry in load_table()}


def _base(name):
    return BASES[name].witness


def test_worked_expansions():
    assert expand_horizontal(W543, 0).params == XParams(7, 4, 3)
    assert expand_horizontal(W543, 2).params == XParams(7, 4, 5)
    for w in (expand_horizontal(W543, 0), expand_horizontal(W543, 2)):
        assert check_witness(w) == []


def test_vertical_expansion_adds_two_rows():
    site = expansion_sites(W543)["V"][0]
    w = expand_vertical(W543, site)
    assert w.params == XParams(5, 6, 3)
    assert check_witness(w) == []


def test_expansion_rejects_bad_sites():
    sites = expansion_sites(W543)
    bad_rows = [i for i in range(4) if i not in sites["V"]]
    bad_cols = [j for j in range(5) if j not in sites["HC"] + sites["HN"]]
    for i in bad_rows:
        with pytest.raises(ExpansionError):
            expand_vertical(W543, i)
    for j in bad_cols:
        with pytest.raises(ExpansionError):
            expand_horizontal(W543, j)


def test_diagonal_free_base_expands_vertically():
    w = _base("W'(6,5)")
    row = expansion_sites(w)["V"][0]
    assert expand_vertical(w, row).params.t == 7


def test_repeated_expansion_at_fresh_gap():
    w, site = W543, expansion_sites(W543)["HN"][0]
    for _ in range(3):
        w = expand_horizontal(w, site)
        site += 1
    assert w.params == XParams(11, 4, 3) and check_witness(w) == []


def _expansions(w, kind):
    out = []
    for site in expansion_sites(w)[kind]:
        try:
            out.append(expand_vertical(w, site) if kind == "V" else expand_horizontal(w, site))
        except ExpansionError:
            pass
    return out


@pytest.mark.parametrize("name", sorted(BASES))
def test_base_capabilities_hold(name):
    entry = BASES[name]
    assert check_witness(entry.witness) == []
    for kind in entry.caps:
        grown = _expansions(entry.witness, kind)
        assert grown and all(check_witness(w) == [] for w in grown)
    if entry.spec.name != "W(5,4,3)":
        assert has_caps(entry.witness, entry.caps)


def test_base_table_matches_specs():
    assert [spec.name for spec in BASE_SPECS] == [entry.spec.name for entry in load_table()]


def test_small_base_regenerates_with_same_capabilities():
    spec = next(spec for spec in BASE_SPECS if spec.name == "W(3,3,0)")
    w, caps = generate(spec)
    assert check_witness(w) == [] and set(caps) >= set(spec.caps)


@pytest.mark.parametrize("params", [
    XParams(1, 4, 0), XParams(7, 1, 0), XParams(2, 5, 0), XParams(2, 4, 1),
    XParams(5, 2, 0), XParams(11, 1, 2), XParams(11, 1, 9), XParams(17, 1, 9),
])
def test_excluded_families(params):
    assert excluded(params)
    assert construct_witness(params) is None


def test_odd_t_with_s_2_and_r_1_is_not_excluded():
    assert construct_witness(XParams(2, 5, 1)) is not None


@pytest.mark.parametrize("r", range(6))
def test_six_by_eight_present(r):
    w = construct_witness(XParams(6, 8, r))
    assert w is not None and check_witness(w) == []


def test_growth_from_base():
    w = grow(_base("W(7,5,3)"), XParams(11, 9, 3))
    assert w is not None and w.params == XParams(11, 9, 3) and check_witness(w) == []


def test_transpose_of_diagonal_free_witness():
    w = transpose(_base("W''(4,4)"))
    assert w.params == XParams(4, 4, 0) and check_witness(w) == []


def test_concatenate_even_width():
    w = concatenate(_base("W(4,3,0)"), _base("W(4,3,0)"))
    assert w is not None and w.params == XParams(8, 3, 0) and check_witness(w) == []


def test_construct_agrees_with_exact_search():
    for p in all_x_params(16):
        exact = find_good_eulerian(x_graph(p), grid_transitions(p)).found
        assert (construct_witness(p) is not None) == exact, p


def test_provenance_recorded():
    w = construct_witness(XParams(9, 5, 3))
    assert w.provenance and check_witness(w) == []
