"""Good Eulerian subgraphs with allowed transitions, and the lift to Hamiltonian cycles.

A subgraph ``W`` of a quartic graph is *admissible* when it is spanning,
every vertex has degree 2 or 4 in it, and every 2-valent vertex carries a
traversing transition.  The tour of ``W`` is forced: at a 4-valent vertex
it pairs the two non-traversing transitions, at a 2-valent vertex it uses
the traversing one.  ``W`` is *good* when that tour is one closed walk.

Tours are sequences of ``(edge_id, direction)``.  Direction 0 runs from
slot ``2e`` to slot ``2e+1`` (first endpoint to second), direction 1 back.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import kernels
from .families import XParams, x_graph
from .multigraph import Multigraph, check_subset
from .quotient import (
    Coloring,
    Contraction,
    TransitionSystem,
    classify_transitions,
    coloring_transitions,
    slot_vertex_in,
)


@dataclass(frozen=True)
class AdmissibleSubgraph:
    host: Multigraph
    ts: TransitionSystem
    edges: tuple[bool, ...]
    # 2-valent vertex -> its (traversing) slot pair
    transitions: dict[int, tuple[int, int]] = field(compare=False)

    def degree(self, v: int) -> int:
        return 2 if v in self.transitions else 4

    def edge_ids(self) -> list[int]:
        return [e for e, used in enumerate(self.edges) if used]


@dataclass(frozen=True)
class GoodTour:
    steps: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass
class EulerOutcome:
    subgraph: AdmissibleSubgraph | None
    tour: GoodTour | None
    nodes: int
    completed: bool
    seconds: float
    solutions: int = 0

    @property
    def found(self) -> bool:
        return self.subgraph is not None


def departure_slot(e: int, direction: int) -> int:
    return 2 * e + direction


def arrival_slot(e: int, direction: int) -> int:
    return 2 * e + 1 - direction


def admissible_from_edges(x: Multigraph, ts: TransitionSystem, edges: Sequence[bool]) -> AdmissibleSubgraph:
    """Wrap an edge subset, deriving the 2-valent transitions; ValueError if not admissible."""
    check_subset(x, edges)
    transitions = {}
    for v in range(x.vertex_count):
        used = [s for s in ts.slots(v) if edges[s // 2]]
        if len(used) == 4:
            continue
        if len(used) != 2:
            raise ValueError(f"vertex {v} has degree {len(used)} in the subgraph")
        if not ts.is_traversing(v, used[0], used[1]):
            raise ValueError(f"2-valent vertex {v} carries a non-traversing transition")
        transitions[v] = (used[0], used[1])
    return AdmissibleSubgraph(x, ts, tuple(bool(u) for u in edges), transitions)


def _slot_partner(w: AdmissibleSubgraph) -> dict[int, int]:
    """Slot -> the slot the tour continues with at the same vertex."""
    partner = {}
    for v in range(w.host.vertex_count):
        pairs = [w.transitions[v]] if v in w.transitions else w.ts.non_traversing_pairs(v)
        for a, b in pairs:
            partner[a] = b
            partner[b] = a
    return partner


def tour_components(w: AdmissibleSubgraph) -> int:
    """Closed walks in the forced tour decomposition of ``w``."""
    partner = _slot_partner(w)
    seen = set()
    count = 0
    for e in w.edge_ids():
        if 2 * e in seen:
            continue
        count += 1
        s = 2 * e
        while s not in seen:
            seen.add(s)
            seen.add(s ^ 1)
            s = partner[s ^ 1]
    return count


def tour_from_subgraph(w: AdmissibleSubgraph) -> GoodTour | None:
    """The forced tour from the lowest edge in direction 0, or None if it is not one walk."""
    ids = w.edge_ids()
    if not ids:
        return None
    partner = _slot_partner(w)
    steps = []
    s = 2 * ids[0]
    while True:
        e, direction = divmod(s, 2)
        steps.append((e, direction))
        s = partner[s ^ 1]
        if s == 2 * ids[0]:
            break
    if len(steps) != len(ids):
        return None
    return GoodTour(tuple(steps))


def check_good_tour(x: Multigraph, ts: TransitionSystem, edges: Sequence[bool], tour: GoodTour) -> list[str]:
    """Re-validate a tour step by step; returns the list of violations (empty when good)."""
    problems = []
    if len(edges) != x.edge_count:
        return [f"edge subset has length {len(edges)}, host has {x.edge_count} edges"]
    wanted = [e for e, u in enumerate(edges) if u]
    seen = [e for e, _ in tour.steps]
    if sorted(seen) != wanted:
        problems.append("tour does not use every subgraph edge exactly once")
    deg = [0] * x.vertex_count
    for e in wanted:
        a, b = x.edges[e]
        deg[a] += 1
        deg[b] += 1
    for v, d in enumerate(deg):
        if d not in (2, 4):
            problems.append(f"vertex {v} has degree {d}")
    steps = tour.steps
    for k, (e, direction) in enumerate(steps):
        if direction not in (0, 1) or not 0 <= e < x.edge_count:
            problems.append(f"step {k} is malformed")
            continue
        ne, nd = steps[(k + 1) % len(steps)]
        arrive = arrival_slot(e, direction)
        leave = departure_slot(ne, nd)
        v = slot_vertex_in(x, arrive)
        if slot_vertex_in(x, leave) != v or arrive == leave:
            problems.append(f"steps {k} and {k + 1} do not meet at a vertex")
            continue
        traversing = ts.is_traversing(v, arrive, leave)
        if deg[v] == 4 and traversing:
            problems.append(f"traversing transition at 4-valent vertex {v}")
        if deg[v] == 2 and not traversing:
            problems.append(f"non-traversing transition at 2-valent vertex {v}")
    return problems


def is_good_tour(x: Multigraph, ts: TransitionSystem, edges: Sequence[bool], tour: GoodTour) -> bool:
    return not check_good_tour(x, ts, edges, tour)


def _kernel_inputs(x: Multigraph, ts: TransitionSystem):
    slot_vertex = [v for a, b in x.edges for v in (a, b)]
    vslots = [s for v in range(x.vertex_count) for s in ts.slots(v)]
    return slot_vertex, vslots


def find_good_eulerian(
    x: Multigraph,
    ts: TransitionSystem,
    fixed: Sequence[int] | None = None,
    accept: Callable[[tuple[bool, ...]], bool] | None = None,
    node_limit: int = -1,
) -> EulerOutcome:
    """Exhaustive search for a good Eulerian subgraph.

    ``fixed[e]`` is -1 (free), 0 (forbidden) or 1 (required).  ``accept``
    filters solutions; the first accepted one is returned.
    """
    start = time.perf_counter()
    fixed = list(fixed) if fixed is not None else [-1] * x.edge_count
    if len(fixed) != x.edge_count:
        raise ValueError("fixed has the wrong length")
    for v in range(x.vertex_count):
        if len(x.incidence[v]) != 4:
            raise ValueError(f"host is not quartic at vertex {v}")
    slot_vertex, vslots = _kernel_inputs(x, ts)
    chosen = []

    def callback(state):
        edges = tuple(bool(u) for u in state)
        if accept is None or accept(edges):
            chosen.append(edges)
            return True
        return False

    _, nodes, completed, count = kernels.euler_search(
        x.vertex_count, slot_vertex, vslots, fixed, callback, node_limit)
    seconds = time.perf_counter() - start
    if not chosen:
        return EulerOutcome(None, None, nodes, completed, seconds, count)
    w = admissible_from_edges(x, ts, chosen[0])
    return EulerOutcome(w, tour_from_subgraph(w), nodes, completed, seconds, count)


def count_good_eulerian(x: Multigraph, ts: TransitionSystem) -> int:
    slot_vertex, vslots = _kernel_inputs(x, ts)
    _, _, _, count = kernels.euler_search(
        x.vertex_count, slot_vertex, vslots, [-1] * x.edge_count, lambda _: False)
    return count


def enumerate_admissible(x: Multigraph, ts: TransitionSystem) -> list[AdmissibleSubgraph]:
    """Every admissible subgraph, good or not (small hosts only)."""
    n = x.vertex_count
    if n > 12:
        raise ValueError("admissible enumeration is limited to 12 vertices")
    state = [-1] * x.edge_count
    out = []

    def rec(v):
        if v == n:
            out.append(admissible_from_edges(x, ts, [u == 1 for u in state]))
            return
        a, b, c, d = ts.slots(v)
        for used in ((a, b, c, d), (a, c), (a, d), (b, c), (b, d)):
            changed = []
            ok = True
            for s in (a, b, c, d):
                e = s >> 1
                u = 1 if s in used else 0
                if state[e] < 0:
                    state[e] = u
                    changed.append(e)
                elif state[e] != u:
                    ok = False
                    break
            if ok:
                rec(v + 1)
            for e in changed:
                state[e] = -1

    rec(0)
    return out


def project_two_factor(c: Contraction, t: Sequence[bool]) -> AdmissibleSubgraph:
    """Image of a 2-factor of the cubic source in the quotient."""
    g = c.source
    check_subset(g, t)
    deg = [0] * g.vertex_count
    for e, used in enumerate(t):
        if used:
            a, b = g.edges[e]
            deg[a] += 1
            deg[b] += 1
    if any(d != 2 for d in deg):
        raise ValueError("edge subset is not a 2-factor")
    edges = [bool(t[ye]) for ye in c.y_edges]
    return admissible_from_edges(c.quotient, classify_transitions(c), edges)


def lift_tour(c: Contraction, tour: GoodTour) -> list[int]:
    """Hamiltonian cycle of the cubic source traced by a single-component good tour.

    Each quotient step walks its Y-edge; a traversing transition between
    steps additionally walks the factor edge joining the two ends.
    """
    seq = []
    for e, direction in tour.steps:
        seq.append(c.slot_vertex(departure_slot(e, direction)))
        seq.append(c.slot_vertex(arrival_slot(e, direction)))
    out = []
    for k, v in enumerate(seq):
        if k % 2 == 0 and out and out[-1] == v:
            continue
        out.append(v)
    if len(out) > 1 and out[-1] == out[0]:
        out.pop()
    return out


def fundamental_coloring(params: XParams) -> Coloring:
    """Horizontal edges red, vertical and diagonal edges blue."""
    s, t = params.s, params.t
    return Coloring(tuple([False] * (s * t) + [True] * (s * t)))


def grid_transitions(params: XParams) -> TransitionSystem:
    return coloring_transitions(x_graph(params), fundamental_coloring(params))
