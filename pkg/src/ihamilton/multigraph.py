"""Multigraph with loops and parallel edges, addressed by stable edge ids.

Loops are stored once with equal endpoints and count twice towards the
degree.  Parallel edges are told apart only by their edge id, so every
consumer of this module works on edge ids, never on endpoint pairs.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

INFINITY = float("inf")


class Multigraph:
    """Immutable undirected multigraph on vertices ``0..vertex_count-1``.

    Edge ``e`` joins ``edges[e][0]`` and ``edges[e][1]``; the orientation is
    kept because several modules give meaning to "the first end" of an edge.
    ``labels`` is an optional parallel array of per-edge annotations.
    """

    __slots__ = ("vertex_count", "edges", "labels", "incidence")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        self.vertex_count = vertex_count
        self.edges: tuple[tuple[int, int], ...] = tuple((int(a), int(b)) for a, b in edges)
        for e, (a, b) in enumerate(self.edges):
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise ValueError(f"edge {e} has an endpoint out of range: {(a, b)}")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(self.edges):
                raise ValueError("labels must have one entry per edge")
        self.labels: tuple[str, ...] | None = labels
        self.incidence = _build_incidence(vertex_count, self.edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Multigraph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbours of ``v`` (``v`` itself when it carries a loop)."""
        seen: dict[int, None] = {}
        for _, w in self.incidence[v]:
            seen.setdefault(w, None)
        return list(seen)

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for _, w in self.incidence[u] if w == v) // (2 if u == v else 1)

    def has_loop(self) -> bool:
        return any(a == b for a, b in self.edges)

    def has_parallel_edges(self) -> bool:
        seen = set()
        for a, b in self.edges:
            key = (min(a, b), max(a, b))
            if key in seen:
                return True
            seen.add(key)
        return False

    def is_simple(self) -> bool:
        return not self.has_loop() and not self.has_parallel_edges()

    def audit(self) -> bool:
        """Rebuild the incidence lists from the edge list and compare."""
        return _build_incidence(self.vertex_count, self.edges) == self.incidence

    def subgraph(self, subset: Sequence[bool]) -> "Multigraph":
        """Spanning subgraph on the selected edges (edge ids are renumbered)."""
        check_subset(self, subset)
        kept = [e for e in range(self.edge_count) if subset[e]]
        labels = None if self.labels is None else [self.labels[e] for e in kept]
        return Multigraph(self.vertex_count, [self.edges[e] for e in kept], labels)


def _build_incidence(n: int, edges: Sequence[tuple[int, int]]) -> tuple[tuple[tuple[int, int], ...], ...]:
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e, (a, b) in enumerate(edges):
        inc[a].append((e, b))
        # a loop shows up twice at its vertex, once per end
        inc[b].append((e, a))
    return tuple(tuple(x) for x in inc)


def edge_subset(g: Multigraph, ids: Iterable[int]) -> tuple[bool, ...]:
    chosen = [False] * g.edge_count
    for e in ids:
        chosen[e] = True
    return tuple(chosen)


def subset_ids(subset: Sequence[bool]) -> list[int]:
    return [e for e, x in enumerate(subset) if x]


def check_subset(g: Multigraph, subset: Sequence[bool]) -> None:
    if len(subset) != g.edge_count:
        raise ValueError(f"edge subset has length {len(subset)}, host has {g.edge_count} edges")


def degree(g: Multigraph, v: int) -> int:
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range")
    return len(g.incidence[v])


def subset_degree(g: Multigraph, subset: Sequence[bool], v: int) -> int:
    return sum(1 for e, _ in g.incidence[v] if subset[e])


def connected_components(g: Multigraph) -> list[list[int]]:
    seen = [False] * g.vertex_count
    parts = []
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        part = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for _, w in g.incidence[v]:
                if not seen[w]:
                    seen[w] = True
                    part.append(w)
                    queue.append(w)
        parts.append(sorted(part))
    return parts


def is_connected(g: Multigraph) -> bool:
    return len(connected_components(g)) <= 1


def girth(g: Multigraph) -> float:
    """Length of a shortest cycle; loops give 1, parallel pairs give 2."""
    if g.has_loop():
        return 1
    if g.has_parallel_edges():
        return 2
    best = INFINITY
    # BFS from every vertex; a non-tree edge closes a cycle of length
    # dist[u] + dist[w] + 1, and the minimum over all roots is exact.
    for root in range(g.vertex_count):
        dist = [-1] * g.vertex_count
        via = [-1] * g.vertex_count
        dist[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for e, w in g.incidence[v]:
                if e == via[v]:
                    continue
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    via[w] = e
                    queue.append(w)
                else:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def cycle_decomposition(g: Multigraph, subset: Sequence[bool]) -> list[list[int]]:
    """Split a 2-regular edge subset into its cycles.

    Each cycle is returned as a list of edge ids in traversal order, starting
    from its lowest edge id.  A loop is a cycle of length one and a parallel
    pair a cycle of length two.
    """
    check_subset(g, subset)
    for v in range(g.vertex_count):
        d = subset_degree(g, subset, v)
        if d not in (0, 2):
            raise ValueError(f"edge subset is not 2-regular at vertex {v} (degree {d})")
    used = [False] * g.edge_count
    cycles = []
    for start in range(g.edge_count):
        if not subset[start] or used[start]:
            continue
        cycle = [start]
        used[start] = True
        a, b = g.edges[start]
        v = b
        e = start
        while v != a:
            nxt = next(f for f, _ in g.incidence[v] if subset[f] and f != e and not used[f])
            used[nxt] = True
            cycle.append(nxt)
            v = g.other_end(nxt, v)
            e = nxt
        cycles.append(cycle)
    return cycles


def cycle_vertices(g: Multigraph, cycle: Sequence[int]) -> list[int]:
    """Vertex sequence visited by a cycle given as consecutive edge ids."""
    if len(cycle) == 1:
        return [g.edges[cycle[0]][0]]
    first, second = g.edges[cycle[0]], g.edges[cycle[1]]
    start = first[0] if first[0] not in second else first[1]
    if len(cycle) == 2:
        start = first[0]
    out = [start]
    v = start
    for e in cycle[:-1]:
        v = g.other_end(e, v)
        out.append(v)
    return out
