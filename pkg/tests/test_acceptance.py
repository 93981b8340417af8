"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

from collections import Counter, defaultdict
from itertools import combinations

import pytest

from ihamilton.basetable import WALK_5_4_3, load_table
from ihamilton.cayley import (
    fundamental_factor_counts,
    i_graph_from_x,
    isomorphic_x,
    measured_factor_counts,
    x_from_i,
)
from ihamilton.certify import solve, verify
from ihamilton.constructive import (
    ExpansionError,
    check_witness,
    expand_horizontal,
    expand_vertical,
    expansion_sites,
    witness_from_walk,
)
from ihamilton.euler import (
    check_good_tour,
    enumerate_admissible,
    find_good_eulerian,
    fundamental_coloring,
    grid_transitions,
    project_two_factor,
    tour_components,
)
from ihamilton.families import (
    IParams,
    XParams,
    all_i_params,
    all_x_params,
    gpg,
    i_graph,
    is_connected_i,
    sgi_graph,
    spoke_factor,
    x_graph,
)
from ihamilton.io import InstanceSpec
from ihamilton.multigraph import cycle_decomposition, girth
from ihamilton.oracle import brute_hamiltonian, brute_isomorphic, enumerate_two_factors
from ihamilton.quotient import blue_red_coloring, classify_transitions, contract_factor, split_quartic


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def test_criterion_1_i_graph_corpus(report):
    disagreements, non_hamiltonian, instances = [], [], 0
    for p in all_i_params(24):
        if not is_connected_i(p):
            continue
        instances += 1
        spec = InstanceSpec("i_graph", (p.n, p.p, p.q))
        constructive = solve(spec, "constructive")
        exact = brute_hamiltonian(i_graph(p)) is not None
        if constructive.positive != exact or (exact and not verify(constructive)[0]):
            disagreements.append(p)
        if not exact:
            non_hamiltonian.append(p)
    petersen_like = [
        p for p in all_i_params(24)
        if p.n in (5, 11, 17, 23) and is_connected_i(p) and brute_isomorphic(i_graph(p), gpg(p.n, 2)) is not None
    ]
    ok = not disagreements and set(non_hamiltonian) == set(petersen_like)
    report(1, ok, f"{instances} connected I-graphs, {len(disagreements)} disagreements, "
                  f"{len(non_hamiltonian)} non-Hamiltonian, all isomorphic to G(n,2) with n in 5,11,17,23")


def test_criterion_2_small_petersen_quotients(report):
    results = []
    for n in (5, 11):
        p = XParams(n, 1, 2)
        out = find_good_eulerian(x_graph(p), grid_transitions(p))
        results.append(out.completed and not out.found and brute_hamiltonian(gpg(n, 2)) is None)
    report(2, all(results), "X(5,1,2), X(11,1,2) have no good subgraph; G(5,2), G(11,2) not Hamiltonian")


def test_criterion_3_worked_tour(report):
    p = XParams(5, 4, 3)
    w = witness_from_walk(p, WALK_5_4_3)
    problems = check_good_tour(x_graph(p), grid_transitions(p), w.edges, w.tour)
    report(3, not problems, "X(5,4,3) tour " + ("accepted" if not problems else problems[0]))


def test_criterion_4_two_factor_bijection(report):
    mismatches, graphs = [], 0
    for p in all_i_params(8):
        if not is_connected_i(p):
            continue
        graphs += 1
        c = contract_factor(i_graph(p), spoke_factor(p))
        factors = enumerate_two_factors(c.source)
        admissible = enumerate_admissible(c.quotient, classify_transitions(c))
        cycles = Counter(len(cycle_decomposition(c.source, t)) for t in factors)
        components = Counter(tour_components(w) for w in admissible)
        projected = {project_two_factor(c, t).edges for t in factors}
        if len(factors) != len(admissible) or cycles != components or projected != {w.edges for w in admissible}:
            mismatches.append(p)
    report(4, not mismatches, f"{graphs} I-graphs with n <= 8, {len(mismatches)} mismatches")


def test_criterion_5_expansion_soundness(report):
    applied, failures = 0, []
    frontier = [entry.witness for entry in load_table()]
    for _ in range(2):
        grown = []
        for w in frontier:
            sites = expansion_sites(w)
            for kind in ("V", "HC", "HN"):
                for site in sites[kind]:
                    applied += 1
                    try:
                        out = expand_vertical(w, site) if kind == "V" else expand_horizontal(w, site)
                    except ExpansionError as exc:
                        failures.append((w.params, kind, site, str(exc)))
                        continue
                    if check_witness(out):
                        failures.append((w.params, kind, site, "checker rejects"))
                    else:
                        grown.append(out)
        frontier = grown
    report(5, applied >= 200 and not failures, f"{applied} expansions, {len(failures)} failures")


def test_criterion_6_factor_counts(report):
    wrong = [
        XParams(s, t, r)
        for s in range(1, 11) for t in range(1, 7) for r in range(s)
        if fundamental_factor_counts(XParams(s, t, r)) != measured_factor_counts(XParams(s, t, r))
    ]
    report(6, not wrong, f"{len(wrong)} mismatches over s <= 10, t <= 6")


def test_criterion_7_isomorphism_layer(report):
    by_order = defaultdict(list)
    for p in all_x_params(24):
        by_order[p.order].append(p)
    wrong, pairs = [], 0
    for group in by_order.values():
        for a, b in combinations(group, 2):
            pairs += 1
            if isomorphic_x(a, b) != (brute_isomorphic(x_graph(a), x_graph(b)) is not None):
                wrong.append((a, b))
    ok = (
        not wrong
        and isomorphic_x(XParams(8, 1, 3), XParams(4, 2, 2))
        and girth(i_graph(IParams(8, 3, 1))) == 6
        and girth(sgi_graph(XParams(4, 2, 2))) == 4
    )
    report(7, ok, f"{pairs} pairs with st <= 24, {len(wrong)} disagreements; girths 6 and 4")


def test_criterion_8_round_trips(report):
    failures, checked = [], 0
    for p in all_x_params(24):
        x = x_graph(p)
        col = fundamental_coloring(p)
        g, f = split_quartic(x, col)
        c = contract_factor(g, f)
        if c.quotient.edges != x.edges or blue_red_coloring(c) != col:
            failures.append(("split", p))
        ip = i_graph_from_x(p)
        if ip is None:
            continue
        checked += 1
        back = x_from_i(ip)
        if not isomorphic_x(back, p) or brute_isomorphic(x_graph(back), x) is None:
            failures.append(("i-graph", p))
    report(8, not failures, f"split/contract on all st <= 24, {checked} I-graph round trips, {len(failures)} failures")
