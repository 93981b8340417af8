"""Solve instances into certificates and re-verify certificates independently."""

from __future__ import annotations

import time
from typing import Any

from .cayley import isomorphic_x
from .constructive import construct_witness, excluded, hamiltonian_i_graph
from .euler import GoodTour, check_good_tour, find_good_eulerian, grid_transitions, lift_tour
from .families import XParams, is_connected_i, sgi_spokes, x_graph
from .io import InstanceSpec
from .oracle import (
    Certificate,
    SizeGuardError,
    brute_isomorphic,
    hamiltonian_search,
    is_isomorphism,
    verify_cycle,
)
from .quotient import contract_factor

METHODS = ("constructive", "exact")


def _ms(start: float) -> int:
    return round((time.perf_counter() - start) * 1000)


def _exact_hamiltonian(spec: InstanceSpec) -> Certificate:
    start = time.perf_counter()
    res = hamiltonian_search(spec.graph())
    if not res.completed:
        raise RuntimeError(f"Hamiltonian search on {spec} aborted")
    stats = {"method": "exact", "nodes": res.nodes, "millis": _ms(start)}
    if res.cycle is None:
        return Certificate("no_hamiltonian", spec.to_json(), stats)
    return Certificate("hamiltonian_cycle", spec.to_json(), {**stats, "cycle": res.cycle})


def _constructive_hamiltonian(spec: InstanceSpec) -> Certificate:
    start = time.perf_counter()
    typed = spec.typed()
    if spec.family in ("i_graph", "gpg"):
        if not is_connected_i(typed):
            return Certificate("no_hamiltonian", spec.to_json(), {"method": "constructive", "reason": "disconnected"})
        cycle = hamiltonian_i_graph(typed)
        if cycle is None:
            reason = "no good Eulerian subgraph in the spoke quotient"
            return Certificate("no_hamiltonian", spec.to_json(),
                               {"method": "constructive", "reason": reason, "millis": _ms(start)})
        return Certificate("hamiltonian_cycle", spec.to_json(),
                           {"method": "constructive", "cycle": cycle, "millis": _ms(start)})
    # SGI(st,s,t,r): its spokes contract onto X(s,t,r) edge for edge
    w = construct_witness(typed)
    if w is None:
        reason = excluded(typed) or "no good Eulerian subgraph"
        return Certificate("no_hamiltonian", spec.to_json(),
                           {"method": "constructive", "reason": reason, "millis": _ms(start)})
    c = contract_factor(spec.graph(), sgi_spokes(typed))
    cycle = lift_tour(c, w.tour)
    if not verify_cycle(c.source, cycle):
        raise AssertionError(f"lifted cycle of {spec} is not Hamiltonian")
    return Certificate("hamiltonian_cycle", spec.to_json(),
                       {"method": "constructive", "cycle": cycle, "millis": _ms(start)})


def _good_subgraph(spec: InstanceSpec, method: str) -> Certificate:
    start = time.perf_counter()
    p: XParams = spec.typed()
    if method == "constructive":
        w = construct_witness(p)
        if w is None:
            return Certificate("no_good_subgraph", spec.to_json(),
                               {"method": method, "reason": excluded(p) or "", "millis": _ms(start)})
        edges, tour, extra = w.edges, w.tour, {"provenance": list(w.provenance)}
    else:
        out = find_good_eulerian(x_graph(p), grid_transitions(p))
        if not out.found:
            return Certificate("no_good_subgraph", spec.to_json(),
                               {"method": method, "nodes": out.nodes, "millis": _ms(start)})
        edges, tour, extra = out.subgraph.edges, out.tour, {"nodes": out.nodes}
    payload = {
        "method": method,
        "edges": [e for e, used in enumerate(edges) if used],
        "tour": [list(step) for step in tour.steps],
        "millis": _ms(start),
        **extra,
    }
    return Certificate("good_subgraph", spec.to_json(), payload)


def solve(spec: InstanceSpec, method: str = "constructive") -> Certificate:
    """Decide Hamiltonicity (or good-subgraph existence for ``x_graph``)."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if spec.family == "x_graph":
        return _good_subgraph(spec, method)
    if method == "exact" or spec.family in ("circulant", "cayley"):
        return _exact_hamiltonian(spec)
    return _constructive_hamiltonian(spec)


def iso_certificate(a: XParams, b: XParams, oracle: bool = False) -> tuple[Certificate, dict[str, Any]]:
    """Isomorphism decision for two X-parameter sets, optionally with the brute-force map."""
    spec_a = InstanceSpec("x_graph", (a.s, a.t, a.r))
    spec_b = InstanceSpec("x_graph", (b.s, b.t, b.r))
    predicate = isomorphic_x(a, b)
    info: dict[str, Any] = {"predicate": predicate}
    phi = None
    if oracle:
        phi = brute_isomorphic(x_graph(a), x_graph(b))
        info["oracle"] = phi is not None
    if phi is not None:
        return Certificate("isomorphism", spec_a.to_json(),
                           {"other": spec_b.to_json(), "vertex_map": phi}), info
    kind = "isomorphism" if predicate else "non_isomorphism"
    payload: dict[str, Any] = {"other": spec_b.to_json(), "method": "oracle" if oracle else "predicate"}
    if kind == "isomorphism":
        phi = brute_isomorphic(x_graph(a), x_graph(b))
        if phi is None:
            raise AssertionError(f"predicate says {a} ≅ {b} but no map was found")
        payload["vertex_map"] = phi
    return Certificate(kind, spec_a.to_json(), payload), info


def verify(cert: Certificate) -> tuple[bool, str]:
    """Re-check a certificate with the brute-force oracle; ``(ok, message)``."""
    try:
        spec = InstanceSpec.from_json(cert.instance)
        g = spec.graph()
    except (KeyError, ValueError) as exc:
        return False, f"invalid instance: {exc}"
    p = cert.payload
    try:
        if cert.kind == "hamiltonian_cycle":
            ok = verify_cycle(g, p["cycle"])
            return ok, "cycle verified" if ok else "cycle is not Hamiltonian"
        if cert.kind == "no_hamiltonian":
            res = hamiltonian_search(g)
            ok = res.completed and res.cycle is None
            return ok, "exhaustive search finds no cycle" if ok else "a Hamiltonian cycle exists"
        if spec.family != "x_graph" and cert.kind in ("good_subgraph", "no_good_subgraph"):
            return False, "good-subgraph certificates need an x_graph instance"
        if cert.kind == "good_subgraph":
            x = spec.typed()
            edges = [False] * g.edge_count
            for e in p["edges"]:
                if not 0 <= e < g.edge_count:
                    return False, f"edge id {e} out of range"
                edges[e] = True
            tour = GoodTour(tuple((int(e), int(d)) for e, d in p["tour"]))
            problems = check_good_tour(g, grid_transitions(x), edges, tour)
            return not problems, "tour verified" if not problems else problems[0]
        if cert.kind == "no_good_subgraph":
            out = find_good_eulerian(g, grid_transitions(spec.typed()))
            ok = out.completed and not out.found
            return ok, "exhaustive search finds no good subgraph" if ok else "a good subgraph exists"
        other = InstanceSpec.from_json(p["other"]).graph()
        if cert.kind == "isomorphism":
            ok = is_isomorphism(g, other, p["vertex_map"])
            return ok, "isomorphism verified" if ok else "map is not an isomorphism"
        ok = brute_isomorphic(g, other) is None
        return ok, "brute force finds no isomorphism" if ok else "the graphs are isomorphic"
    except SizeGuardError as exc:
        return False, f"cannot re-verify: {exc}"
