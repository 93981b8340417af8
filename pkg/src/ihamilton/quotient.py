"""Contraction of a 1-factor of a cubic graph and the structure it induces.

An edge end of the quotient is called a *slot* and encoded as ``2*e + end``
where ``end`` is 0 for the first endpoint of quotient edge ``e`` and 1 for
the second.  Slots are the unit transitions are defined on, which keeps
loops and parallel edges unambiguous.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .multigraph import Multigraph, check_subset, cycle_decomposition, degree


class NotSpecialError(ValueError):
    """The 1-factor is not special, so no blue/red 2-factorization exists."""


@dataclass(frozen=True)
class Contraction:
    source: Multigraph
    factor: tuple[bool, ...]
    quotient: Multigraph
    # source vertex -> quotient vertex x_e
    vertex_map: tuple[int, ...]
    # quotient vertex -> the factor edge it came from
    factor_edges: tuple[int, ...]
    # quotient edge a' -> source edge a of Y (edge_map restricted to Y, inverted)
    y_edges: tuple[int, ...]
    # source edge -> quotient edge, -1 for factor edges
    edge_map: tuple[int, ...]
    flags: tuple[str, ...] = field(default=())

    def slot_vertex(self, slot: int) -> int:
        """Source vertex an edge end of the quotient comes from."""
        e, end = divmod(slot, 2)
        return self.source.edges[self.y_edges[e]][end]


@dataclass(frozen=True)
class TransitionSystem:
    """Per quotient vertex, the two non-traversing slot pairs.

    ``pairs[v] = ((a, b), (c, d))``: slots a, b come from the first end of
    the factor edge, c, d from the second.  Every other pairing of slots at
    ``v`` is traversing.
    """

    pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def slots(self, v: int) -> tuple[int, int, int, int]:
        (a, b), (c, d) = self.pairs[v]
        return a, b, c, d

    def side(self, v: int, slot: int) -> int:
        (a, b), (c, d) = self.pairs[v]
        if slot in (a, b):
            return 0
        if slot in (c, d):
            return 1
        raise ValueError(f"slot {slot} is not at vertex {v}")

    def is_traversing(self, v: int, s1: int, s2: int) -> bool:
        return self.side(v, s1) != self.side(v, s2)

    def traversing_pairs(self, v: int) -> list[tuple[int, int]]:
        (a, b), (c, d) = self.pairs[v]
        return [(a, c), (a, d), (b, c), (b, d)]

    def non_traversing_pairs(self, v: int) -> list[tuple[int, int]]:
        return list(self.pairs[v])


@dataclass(frozen=True)
class Coloring:
    """``blue[e]`` is True for blue quotient edges, False for red ones."""

    blue: tuple[bool, ...]

    def color(self, e: int) -> str:
        return "blue" if self.blue[e] else "red"

    def red(self) -> tuple[bool, ...]:
        return tuple(not b for b in self.blue)


def slot_of(e: int, end: int) -> int:
    return 2 * e + end


def slot_vertex_in(g: Multigraph, slot: int) -> int:
    e, end = divmod(slot, 2)
    return g.edges[e][end]


def vertex_slots(g: Multigraph, v: int) -> list[int]:
    """Slots at vertex v in incidence order (a loop contributes both ends)."""
    out = []
    for e, _ in g.incidence[v]:
        a, b = g.edges[e]
        if a == b:
            s = 2 * e if 2 * e not in out else 2 * e + 1
        else:
            s = 2 * e if a == v else 2 * e + 1
        out.append(s)
    return out


def _check_cubic_matching(g: Multigraph, f: Sequence[bool]) -> None:
    check_subset(g, f)
    for v in range(g.vertex_count):
        if degree(g, v) != 3:
            raise ValueError(f"source graph is not cubic at vertex {v}")
    hits = [0] * g.vertex_count
    for e, (a, b) in enumerate(g.edges):
        if f[e]:
            if a == b:
                raise ValueError(f"factor edge {e} is a loop")
            hits[a] += 1
            hits[b] += 1
    if any(h != 1 for h in hits):
        raise ValueError("edge subset is not a perfect matching")


def contract_factor(g: Multigraph, f: Sequence[bool]) -> Contraction:
    """Contract every edge of the perfect matching ``f`` of the cubic graph ``g``.

    Quotient vertices follow the factor edges in id order; quotient edges
    follow the remaining edges in id order.  Parallel edges are never merged.
    """
    _check_cubic_matching(g, f)
    f = tuple(bool(x) for x in f)
    vertex_map = [-1] * g.vertex_count
    factor_edges = []
    for e, (a, b) in enumerate(g.edges):
        if f[e]:
            vertex_map[a] = vertex_map[b] = len(factor_edges)
            factor_edges.append(e)
    y_edges = [e for e in range(g.edge_count) if not f[e]]
    edge_map = [-1] * g.edge_count
    q_edges = []
    labels = [] if g.labels is not None else None
    flags = []
    for qe, e in enumerate(y_edges):
        edge_map[e] = qe
        a, b = g.edges[e]
        q_edges.append((vertex_map[a], vertex_map[b]))
        if labels is not None:
            labels.append(g.labels[e])
        if a != b and vertex_map[a] == vertex_map[b]:
            flags.append(f"edge {e} is parallel to factor edge {factor_edges[vertex_map[a]]}; quotient loop {qe}")
    quotient = Multigraph(len(factor_edges), q_edges, labels)
    return Contraction(g, f, quotient, tuple(vertex_map), tuple(factor_edges),
                       tuple(y_edges), tuple(edge_map), tuple(flags))


def classify_transitions(c: Contraction) -> TransitionSystem:
    pairs = []
    for v, fe in enumerate(c.factor_edges):
        u_end, w_end = c.source.edges[fe]
        side_u, side_w = [], []
        for slot in vertex_slots(c.quotient, v):
            src = c.slot_vertex(slot)
            if src == u_end:
                side_u.append(slot)
            elif src == w_end:
                side_w.append(slot)
            else:
                raise AssertionError("slot does not come from the factor edge ends")
        if len(side_u) != 2 or len(side_w) != 2:
            raise AssertionError(f"vertex {v} does not split 2+2")
        pairs.append((tuple(sorted(side_u)), tuple(sorted(side_w))))
    return TransitionSystem(tuple(pairs))


def _y_cycles(g: Multigraph, f: Sequence[bool]) -> tuple[list[list[int]], list[int]]:
    y = tuple(not x for x in f)
    cycles = cycle_decomposition(g, y)
    cycle_of = [-1] * g.vertex_count
    for k, cyc in enumerate(cycles):
        for e in cyc:
            a, b = g.edges[e]
            cycle_of[a] = cycle_of[b] = k
    return cycles, cycle_of


def auxiliary_graph(g: Multigraph, f: Sequence[bool]) -> Multigraph:
    """Y(G,F): one vertex per cycle of G - F, one edge per factor edge."""
    _check_cubic_matching(g, f)
    cycles, cycle_of = _y_cycles(g, f)
    edges = [(cycle_of[a], cycle_of[b]) for e, (a, b) in enumerate(g.edges) if f[e]]
    return Multigraph(len(cycles), edges)


def _bipartition(aux: Multigraph, roots_order: Sequence[int]) -> list[int] | None:
    side = [-1] * aux.vertex_count
    for root in roots_order:
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for _, w in aux.incidence[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return side


def is_special(g: Multigraph, f: Sequence[bool]) -> bool:
    aux = auxiliary_graph(g, f)
    return _bipartition(aux, range(aux.vertex_count)) is not None


def blue_red_coloring(c: Contraction) -> Coloring:
    """Colour Y-cycles by the bipartition of Y(G,F) and carry it to the quotient.

    In every component of Y(G,F) the cycle through the smallest source
    vertex is red; for I-graphs this makes the outer rim red and the inner
    rim blue, and for SGI graphs the horizontal edges red.
    """
    g = c.source
    cycles, cycle_of = _y_cycles(g, c.factor)
    aux = Multigraph(len(cycles), [(cycle_of[a], cycle_of[b]) for e, (a, b) in enumerate(g.edges) if c.factor[e]])
    roots = []
    for v in range(g.vertex_count):
        if cycle_of[v] not in roots:
            roots.append(cycle_of[v])
    side = _bipartition(aux, roots)
    if side is None:
        raise NotSpecialError("the auxiliary graph Y(G,F) is not bipartite")
    blue = []
    for e in c.y_edges:
        a, _ = g.edges[e]
        blue.append(side[cycle_of[a]] == 1)
    return Coloring(tuple(blue))


def check_coloring(x: Multigraph, col: Coloring) -> None:
    if len(col.blue) != x.edge_count:
        raise ValueError("coloring length does not match the edge count")
    for v in range(x.vertex_count):
        nb = sum(1 for e, _ in x.incidence[v] if col.blue[e])
        nr = len(x.incidence[v]) - nb
        if nb != 2 or nr != 2:
            raise ValueError(f"colour classes are not 2-factors at vertex {v} (blue {nb}, red {nr})")


def split_quartic(x: Multigraph, col: Coloring) -> tuple[Multigraph, tuple[bool, ...]]:
    """Colour-preserving vertex splitting; returns the cubic graph and its matching.

    Vertex ``w`` of ``x`` becomes the red copy ``w`` and the blue copy
    ``N + w``.  Cubic edges reuse the quotient edge order and the joining
    matching comes last, so contracting it gives back ``x`` edge for edge.
    """
    check_coloring(x, col)
    n = x.vertex_count
    edges = []
    labels = []
    for e, (a, b) in enumerate(x.edges):
        if col.blue[e]:
            edges.append((n + a, n + b))
            labels.append("blue")
        else:
            edges.append((a, b))
            labels.append("red")
    for w in range(n):
        edges.append((w, n + w))
        labels.append("spoke")
    g = Multigraph(2 * n, edges, labels)
    factor = tuple([False] * x.edge_count + [True] * n)
    return g, factor


def coloring_transitions(x: Multigraph, col: Coloring) -> TransitionSystem:
    """Transition system in which non-traversing means colour-preserving."""
    check_coloring(x, col)
    pairs = []
    for v in range(x.vertex_count):
        slots = vertex_slots(x, v)
        red = sorted(s for s in slots if not col.blue[s // 2])
        blue = sorted(s for s in slots if col.blue[s // 2])
        pairs.append((tuple(red), tuple(blue)))
    return TransitionSystem(tuple(pairs))
