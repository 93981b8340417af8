"""Brute-force ground truth: Hamiltonicity, 2-factors, isomorphism, cycle checks.

Nothing here depends on the quotient machinery, so every result elsewhere
in the package can be validated against it.
"""

from __future__ import annotations

import os
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import kernels
from .multigraph import Multigraph, degree, is_connected

DEFAULT_MAX_HAM_VERTICES = 60
DEFAULT_MAX_ISO_VERTICES = 48
MAX_TWO_FACTOR_VERTICES = 20

CERTIFICATE_KINDS = (
    "hamiltonian_cycle",
    "no_hamiltonian",
    "good_subgraph",
    "no_good_subgraph",
    "isomorphism",
    "non_isomorphism",
)


class SizeGuardError(ValueError):
    """The instance exceeds a configured brute-force size limit."""


def _guard(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


def max_ham_vertices() -> int:
    return _guard("IHAMILTON_MAX_HAM_VERTICES", DEFAULT_MAX_HAM_VERTICES)


def max_iso_vertices() -> int:
    return _guard("IHAMILTON_MAX_ISO_VERTICES", DEFAULT_MAX_ISO_VERTICES)


@dataclass
class Certificate:
    kind: str
    instance: dict[str, Any]
    payload: dict[str, Any] = field(default_factory=dict)
    tool_version: str = ""

    def __post_init__(self):
        if self.kind not in CERTIFICATE_KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if not self.tool_version:
            from . import __version__

            self.tool_version = f"ihamilton {__version__}"

    @property
    def positive(self) -> bool:
        return self.kind in ("hamiltonian_cycle", "good_subgraph", "isomorphism")


@dataclass
class SearchResult:
    cycle: list[int] | None
    nodes: int
    completed: bool
    seconds: float


def hamiltonian_search(g: Multigraph, max_vertices: int | None = None, node_limit: int = -1) -> SearchResult:
    limit = max_ham_vertices() if max_vertices is None else max_vertices
    if g.vertex_count > limit:
        raise SizeGuardError(f"{g.vertex_count} vertices exceeds the Hamiltonicity guard of {limit}")
    start = time.perf_counter()
    n = g.vertex_count
    if n == 0 or not is_connected(g):
        return SearchResult(None, 0, True, 0.0)
    if n == 1:
        return SearchResult([0] if g.has_loop() else None, 1, True, time.perf_counter() - start)
    if n == 2:
        ok = g.multiplicity(0, 1) >= 2
        return SearchResult([0, 1] if ok else None, 1, True, time.perf_counter() - start)
    ptr = [0]
    adj: list[int] = []
    for v in range(n):
        adj.extend(w for w in g.neighbors(v) if w != v)
        ptr.append(len(adj))
    cycle, nodes, completed = kernels.ham_search(n, ptr, adj, node_limit)
    return SearchResult(cycle, nodes, completed, time.perf_counter() - start)


def brute_hamiltonian(g: Multigraph, max_vertices: int | None = None) -> list[int] | None:
    """A Hamiltonian cycle as a vertex sequence, or None after full exhaustion."""
    res = hamiltonian_search(g, max_vertices)
    if not res.completed:
        raise RuntimeError("Hamiltonian search aborted before exhaustion")
    return res.cycle


def verify_cycle(g: Multigraph, cycle: Sequence[int]) -> bool:
    n = g.vertex_count
    if len(cycle) != n or n == 0:
        return False
    if sorted(cycle) != list(range(n)):
        return False
    if n == 1:
        return g.multiplicity(cycle[0], cycle[0]) >= 1
    if n == 2:
        return g.multiplicity(cycle[0], cycle[1]) >= 2
    return all(g.multiplicity(cycle[k], cycle[(k + 1) % n]) >= 1 for k in range(n))


def enumerate_perfect_matchings(g: Multigraph) -> list[tuple[bool, ...]]:
    n = g.vertex_count
    if n > MAX_TWO_FACTOR_VERTICES:
        raise SizeGuardError(f"{n} vertices exceeds the 2-factor guard of {MAX_TWO_FACTOR_VERTICES}")
    matched = [False] * n
    chosen = [False] * g.edge_count
    out = []

    def rec():
        v = next((u for u in range(n) if not matched[u]), None)
        if v is None:
            out.append(tuple(chosen))
            return
        matched[v] = True
        for e, w in g.incidence[v]:
            if w == v or matched[w]:
                continue
            matched[w] = True
            chosen[e] = True
            rec()
            chosen[e] = False
            matched[w] = False
        matched[v] = False

    rec()
    return out


def enumerate_two_factors(g: Multigraph) -> list[tuple[bool, ...]]:
    """All 2-factors of a cubic multigraph, as complements of perfect matchings."""
    for v in range(g.vertex_count):
        if degree(g, v) != 3:
            raise ValueError(f"graph is not cubic at vertex {v}")
    return [tuple(not x for x in m) for m in enumerate_perfect_matchings(g)]


def count_two_regular_subsets(g: Multigraph) -> int:
    """Spanning 2-regular edge subsets by plain subset enumeration (tiny graphs only)."""
    m = g.edge_count
    if m > 24:
        raise SizeGuardError("subset enumeration limited to 24 edges")
    total = 0
    for mask in range(1 << m):
        deg = [0] * g.vertex_count
        for e in range(m):
            if mask >> e & 1:
                a, b = g.edges[e]
                deg[a] += 1
                deg[b] += 1
        if all(d == 2 for d in deg):
            total += 1
    return total


def _multiplicity_rows(g: Multigraph) -> list[dict[int, int]]:
    rows = []
    for v in range(g.vertex_count):
        c = Counter(w for _, w in g.incidence[v])
        if v in c:
            c[v] //= 2
        rows.append(dict(c))
    return rows


def _refine(rows_g, rows_h) -> tuple[list[int], list[int]]:
    """Joint colour refinement of two graphs so colour names are comparable."""
    col_g = [(sum(r.values()) + r.get(v, 0), r.get(v, 0)) for v, r in enumerate(rows_g)]
    col_h = [(sum(r.values()) + r.get(v, 0), r.get(v, 0)) for v, r in enumerate(rows_h)]
    palette = {c: k for k, c in enumerate(sorted(set(col_g) | set(col_h)))}
    col_g = [palette[c] for c in col_g]
    col_h = [palette[c] for c in col_h]
    while True:
        sig_g = [(col_g[v], tuple(sorted((col_g[w], m) for w, m in r.items()))) for v, r in enumerate(rows_g)]
        sig_h = [(col_h[v], tuple(sorted((col_h[w], m) for w, m in r.items()))) for v, r in enumerate(rows_h)]
        palette = {c: k for k, c in enumerate(sorted(set(sig_g) | set(sig_h)))}
        new_g = [palette[c] for c in sig_g]
        new_h = [palette[c] for c in sig_h]
        if len(set(new_g) | set(new_h)) == len(set(col_g) | set(col_h)):
            return new_g, new_h
        col_g, col_h = new_g, new_h


def brute_isomorphic(g: Multigraph, h: Multigraph, max_vertices: int | None = None) -> list[int] | None:
    """A vertex bijection g -> h preserving edge multiplicities, or None.

    Colour refinement prunes, then backtracking extends the map along a BFS
    order so each new vertex has an already mapped neighbour.
    """
    limit = max_iso_vertices() if max_vertices is None else max_vertices
    n = g.vertex_count
    if max(n, h.vertex_count) > limit:
        raise SizeGuardError(f"isomorphism guard of {limit} vertices exceeded")
    if n != h.vertex_count or g.edge_count != h.edge_count:
        return None
    if n == 0:
        return []
    rows_g, rows_h = _multiplicity_rows(g), _multiplicity_rows(h)
    col_g, col_h = _refine(rows_g, rows_h)
    if Counter(col_g) != Counter(col_h):
        return None
    class_size = Counter(col_g)
    order: list[int] = []
    placed = [False] * n
    while len(order) < n:
        root = min((v for v in range(n) if not placed[v]), key=lambda v: (class_size[col_g[v]], v))
        placed[root] = True
        frontier = [root]
        while frontier:
            v = frontier.pop(0)
            order.append(v)
            for w in sorted(rows_g[v]):
                if not placed[w]:
                    placed[w] = True
                    frontier.append(w)
    anchor = {}
    for k, v in enumerate(order):
        anchor[v] = next((u for u in order[:k] if u in rows_g[v]), None)
    phi = [-1] * n
    used = [False] * n

    def consistent(v: int, c: int) -> bool:
        if rows_g[v].get(v, 0) != rows_h[c].get(c, 0):
            return False
        for w, m in rows_g[v].items():
            if w != v and phi[w] >= 0 and rows_h[c].get(phi[w], 0) != m:
                return False
        # mapped neighbours of c must come from mapped neighbours of v
        mapped_nbrs_h = sum(1 for x in rows_h[c] if x != c and used[x])
        mapped_nbrs_g = sum(1 for w in rows_g[v] if w != v and phi[w] >= 0)
        return mapped_nbrs_h == mapped_nbrs_g

    def rec(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        a = anchor[v]
        pool = sorted(rows_h[phi[a]]) if a is not None else range(n)
        for c in pool:
            if used[c] or col_h[c] != col_g[v] or not consistent(v, c):
                continue
            phi[v] = c
            used[c] = True
            if rec(k + 1):
                return True
            phi[v] = -1
            used[c] = False
        return False

    return list(phi) if rec(0) else None


def is_isomorphism(g: Multigraph, h: Multigraph, phi: Sequence[int]) -> bool:
    if g.vertex_count != h.vertex_count or sorted(phi) != list(range(h.vertex_count)):
        return False
    rows_g, rows_h = _multiplicity_rows(g), _multiplicity_rows(h)
    return all({phi[w]: m for w, m in rows_g[v].items()} == rows_h[phi[v]] for v in range(g.vertex_count))
