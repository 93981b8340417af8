"""Grid witnesses W(s,t,r): expansions, the base table and the case dispatcher.

Edges of X(s,t,r) are addressed by keys ``("h", i, j)`` for the horizontal
edge leaving x^i_j to the right and ``("d", i, j)`` for the edge leaving
x^i_j downwards (vertical, or diagonal from the last row).  The row gap
``i`` is the set of down edges of row ``i``; the column gap ``l`` is the set
of horizontal edges of column ``l``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .cayley import adam_isomorphism, adam_partners, i_vertex_map, transport_edges, x_from_i_exact
from .euler import (
    GoodTour,
    admissible_from_edges,
    check_good_tour,
    find_good_eulerian,
    grid_transitions,
    lift_tour,
    tour_from_subgraph,
)
from .families import (
    IParams,
    XParams,
    down_id,
    horizontal_id,
    i_graph,
    is_connected_i,
    spoke_factor,
    x_graph,
)
from .oracle import verify_cycle
from .quotient import classify_transitions, contract_factor

Key = tuple[str, int, int]


class ExpansionError(ValueError):
    """The requested expansion site does not satisfy the preconditions."""


@dataclass(frozen=True)
class GridWitness:
    params: XParams
    edges: tuple[bool, ...]
    tour: GoodTour
    provenance: tuple[str, ...] = field(default=(), compare=False)

    # --- edge bookkeeping ---------------------------------------------------

    def keys(self) -> set[Key]:
        return edge_keys(self.params, self.edges)

    def has(self, key: Key) -> bool:
        return self.edges[key_id(self.params, key)]

    def diagonal_free(self) -> bool:
        p = self.params
        return not any(self.has(("d", p.t - 1, j)) for j in range(p.s))

    def empty_columns(self) -> list[int]:
        p = self.params
        return [j for j in range(p.s) if not any(self.has(("h", i, j)) for i in range(p.t))]

    def is_double_prime(self) -> bool:
        """No diagonal edges and one column gap without horizontal edges."""
        return self.diagonal_free() and bool(self.empty_columns())

    def with_note(self, note: str) -> GridWitness:
        return GridWitness(self.params, self.edges, self.tour, self.provenance + (note,))

    def rehost(self, r: int) -> GridWitness:
        """A diagonal-free witness is a witness of X(s,t,r) for every r."""
        if not self.diagonal_free():
            raise ValueError("only diagonal-free witnesses can change r")
        p = XParams(self.params.s, self.params.t, r)
        return make_witness(p, self.keys(), self.provenance + (f"rehosted at r={r}",))


@dataclass(frozen=True)
class RowProfile:
    counts: tuple[int, ...]


@dataclass(frozen=True)
class ColProfile:
    counts: tuple[int, ...]
    # per column gap: (used diagonals crossing it, used diagonals not crossing it)
    crossing: tuple[tuple[int, int], ...]


def key_id(p: XParams, key: Key) -> int:
    kind, i, j = key
    return horizontal_id(p, i, j) if kind == "h" else down_id(p, i, j)


def edge_keys(p: XParams, edges: Sequence[bool]) -> set[Key]:
    st = p.order
    out = set()
    for e, used in enumerate(edges):
        if used:
            kind = "h" if e < st else "d"
            i, j = divmod(e % st, p.s)
            out.add((kind, i, j))
    return out


def keys_to_edges(p: XParams, keys: Iterable[Key]) -> tuple[bool, ...]:
    edges = [False] * (2 * p.order)
    for key in keys:
        edges[key_id(p, key)] = True
    return tuple(edges)


def check_witness(w: GridWitness) -> list[str]:
    x = x_graph(w.params)
    return check_good_tour(x, grid_transitions(w.params), w.edges, w.tour)


def make_witness(p: XParams, keys: Iterable[Key], provenance: tuple[str, ...] = ()) -> GridWitness:
    """Build and verify a witness from its edge set; ValueError if it is not good."""
    edges = keys_to_edges(p, keys)
    return witness_from_edges(p, edges, provenance)


def witness_from_edges(p: XParams, edges: Sequence[bool], provenance: tuple[str, ...] = ()) -> GridWitness:
    x = x_graph(p)
    w = admissible_from_edges(x, grid_transitions(p), edges)
    tour = tour_from_subgraph(w)
    if tour is None:
        raise ValueError(f"edge set is admissible but its tour has several components in {p}")
    out = GridWitness(p, tuple(edges), tour, provenance)
    problems = check_witness(out)
    if problems:
        raise ValueError(f"witness check failed: {problems[0]}")
    return out


def try_witness(p: XParams, keys: Iterable[Key], provenance: tuple[str, ...] = ()) -> GridWitness | None:
    try:
        return make_witness(p, keys, provenance)
    except ValueError:
        return None


# --- profiles ------------------------------------------------------------------


def crosses(p: XParams, j: int, gap: int) -> bool:
    """Whether the diagonal leaving column j passes column gap ``gap``."""
    return (gap - j) % p.s < p.r


def row_profile(w: GridWitness) -> RowProfile:
    p = w.params
    return RowProfile(tuple(sum(w.has(("d", i, j)) for j in range(p.s)) for i in range(p.t)))


def col_profile(w: GridWitness) -> ColProfile:
    p = w.params
    counts = tuple(sum(w.has(("h", i, j)) for i in range(p.t)) for j in range(p.s))
    used = [j for j in range(p.s) if w.has(("d", p.t - 1, j))]
    crossing = []
    for gap in range(p.s):
        c = sum(1 for j in used if crosses(p, j, gap))
        crossing.append((c, len(used) - c))
    return ColProfile(counts, tuple(crossing))


def _count_ok(count: int, size: int) -> bool:
    if size == 3:
        return count == 2
    return count == size - 1 or (size - 2 > 0 and count == size - 2)


def can_expand_vertical(w: GridWitness, i: int) -> bool:
    return _count_ok(row_profile(w).counts[i], w.params.s)


def can_expand_horizontal(w: GridWitness, j: int) -> bool:
    prof = col_profile(w)
    crossing, straight = prof.crossing[j]
    return _count_ok(prof.counts[j], w.params.t) and not (crossing and straight)


def crossing_kind(w: GridWitness, j: int) -> str:
    """``"cross"`` if every used diagonal crosses gap j, ``"none"`` if none does."""
    crossing, straight = col_profile(w).crossing[j]
    if crossing and straight:
        return "mixed"
    return "cross" if crossing else "none"


# --- arc layouts ---------------------------------------------------------------


def _arc_layouts(size: int, missing: Sequence[int], cyclic: bool) -> list[list[list[int]]]:
    """Ways to cover positions 0..size-1 by arcs, each walking from a missing position to a present one."""
    missing = sorted(missing)
    mset = set(missing)
    layouts = []

    def arc_from(piece: list[int]) -> list[int] | None:
        if len(piece) < 2:
            return None
        inside = [q for q in piece if q in mset]
        if len(inside) != 1:
            return None
        if piece[0] in mset:
            return piece
        if piece[-1] in mset:
            return piece[::-1]
        return None

    if cyclic:
        if len(missing) == 1:
            a = missing[0]
            layouts.append([[(a + k) % size for k in range(size)]])
            layouts.append([[(a - k) % size for k in range(size)]])
        else:
            for c1, c2 in itertools.combinations(range(size), 2):
                # cut after position c1 and after c2
                first = list(range(c1 + 1, c2 + 1))
                second = [(c2 + 1 + k) % size for k in range(size - len(first))]
                arcs = [arc_from(first), arc_from(second)]
                if all(arcs):
                    layouts.append(arcs)
    else:
        if len(missing) == 1:
            arc = arc_from(list(range(size)))
            if arc:
                layouts.append([arc])
        else:
            for c in range(size - 1):
                arcs = [arc_from(list(range(c + 1))), arc_from(list(range(c + 1, size)))]
                if all(arcs):
                    layouts.append(arcs)
    return layouts


# --- expansions ------------------------------------------------------------------


def expand_vertical(w: GridWitness, i: int) -> GridWitness:
    """Insert two rows after row i; returns a verified witness of X(s, t+2, r)."""
    p = w.params
    if not 0 <= i < p.t:
        raise ExpansionError(f"row {i} outside 0..{p.t - 1}")
    if not can_expand_vertical(w, i):
        raise ExpansionError(f"row gap {i} has {row_profile(w).counts[i]} of {p.s} down edges")
    q = XParams(p.s, p.t + 2, p.r)
    a_row, b_row = i + 1, i + 2

    def g(row):
        return row if row <= i else row + 2

    keys = w.keys()
    present = {j for j in range(p.s) if ("d", i, j) in keys}
    missing = [j for j in range(p.s) if j not in present]
    base = set()
    for kind, row, j in keys:
        if kind == "h":
            base.add(("h", g(row), j))
        elif row != i:
            base.add(("d", g(row), j))
    for j in present:
        base.add(("d", i, j))
        base.add(("d", b_row, j))
    for layout in _arc_layouts(p.s, missing, cyclic=True):
        new = set(base)
        for arc in layout:
            for a, b in zip(arc, arc[1:]):
                col = a if (a + 1) % p.s == b else b
                new.add(("h", a_row, col))
                new.add(("h", b_row, col))
            for c in arc[:-1]:
                new.add(("d", a_row, c))
        out = try_witness(q, new, w.provenance + (f"vertical expansion at row {i}",))
        if out is not None:
            return out
    raise ExpansionError(f"no arc layout at row {i} gives a good subgraph")


def expand_horizontal(w: GridWitness, l: int) -> GridWitness:
    """Insert two columns after column l; shifts r by 2 when every used diagonal crosses l."""
    p = w.params
    if not 0 <= l < p.s:
        raise ExpansionError(f"column {l} outside 0..{p.s - 1}")
    prof = col_profile(w)
    if not _count_ok(prof.counts[l], p.t):
        raise ExpansionError(f"column gap {l} has {prof.counts[l]} of {p.t} horizontal edges")
    crossing, straight = prof.crossing[l]
    if crossing and straight:
        raise ExpansionError(f"diagonals cross column gap {l} only partly")
    r2 = p.r + 2 if crossing else p.r
    q = XParams(p.s + 2, p.t, r2)
    left, right = l + 1, l + 2

    def f(j):
        return j if j <= l else j + 2

    keys = w.keys()
    present = {i for i in range(p.t) if ("h", i, l) in keys}
    missing = [i for i in range(p.t) if i not in present]
    base = set()
    for kind, row, j in keys:
        if kind == "h":
            if j != l:
                base.add(("h", row, f(j)))
        else:
            base.add(("d", row, f(j)))
            if row == p.t - 1 and (f(j) + r2) % q.s != f((j + p.r) % p.s):
                raise AssertionError("diagonal landed off target after expansion")
    for i in present:
        base.add(("h", i, l))
        base.add(("h", i, right))
    kind_note = "crossing" if crossing else "non-crossing"
    # the seam edges of the new columns stay inside them only when r2 = 0
    for layout in _arc_layouts(p.t, missing, cyclic=r2 == 0):
        new = set(base)
        for arc in layout:
            for a, b in zip(arc, arc[1:]):
                row = a if (a + 1) % p.t == b else b
                new.add(("d", row, left))
                new.add(("d", row, right))
            for c in arc[:-1]:
                new.add(("h", c, left))
        out = try_witness(q, new, w.provenance + (f"{kind_note} horizontal expansion at column {l}",))
        if out is not None:
            return out
    raise ExpansionError(f"no arc layout at column {l} gives a good subgraph")


def expansion_sites(w: GridWitness) -> dict[str, list[int]]:
    """Rows and columns admitting each kind of expansion."""
    p = w.params
    rows = [i for i in range(p.t) if can_expand_vertical(w, i)]
    cross, straight = [], []
    for j in range(p.s):
        if can_expand_horizontal(w, j):
            (cross if crossing_kind(w, j) == "cross" else straight).append(j)
    return {"V": rows, "HC": cross, "HN": straight}


def transpose(w: GridWitness, r: int = 0) -> GridWitness:
    """Rotate a witness without diagonals and with an empty column gap by a quarter turn.

    Rows become columns; the empty gap becomes the seam, so the result is
    again diagonal-free with an empty column gap, in X(t, s, r).
    """
    if not w.is_double_prime():
        raise ValueError("transpose needs a diagonal-free witness with an empty column gap")
    p = w.params
    gap = w.empty_columns()[0]
    q = XParams(p.t, p.s, r)
    order = [(gap + 1 + k) % p.s for k in range(p.s)]
    pos = {c: k for k, c in enumerate(order)}
    keys = set()
    for kind, i, j in w.keys():
        if kind == "h":
            # horizontal (i,j)-(i,j+1) becomes vertical between new rows pos[j], pos[j]+1
            keys.add(("d", pos[j], i))
        else:
            keys.add(("h", pos[j], i))
    return make_witness(q, keys, w.provenance + ("transposed",))


def transport(w: GridWitness, target: XParams, note: str) -> GridWitness:
    """Carry a witness along an isomorphism that preserves the fundamental factorization."""
    iso = adam_isomorphism(target, w.params)
    if iso is None:
        raise ValueError(f"no generator-preserving isomorphism {w.params} -> {target}")
    edges = transport_edges(iso, w.edges)
    return witness_from_edges(target, edges, w.provenance + (note,))


# --- exclusions --------------------------------------------------------------


def excluded(p: XParams) -> str | None:
    """Reason no good Eulerian subgraph exists, or None."""
    s, t, r = p.s, p.t, p.r
    if s == 1:
        return "s = 1: every diagonal is a loop"
    if t == 1 and r == 0:
        return "t = 1, r = 0: every diagonal is a loop"
    if s == 2 and t % 2 == 1 and r == 0:
        return "s = 2, t odd, r = 0: parallel horizontal edges"
    if s == 2 and t % 2 == 0 and t > 2 and r == 1:
        return "s = 2, t even > 2, r = 1: parallel horizontal edges"
    if s % 2 == 1 and (t, r) == (2, 0):
        return "s odd, (t, r) = (2, 0): parallel vertical edges"
    if t == 1 and s % 6 == 5 and r in (2, s - 2, (s + 1) // 2, (s - 1) // 2):
        return "isomorphic to X(6m+5, 1, 2)"
    return None


def step_key(p: XParams, a: tuple[int, int], b: tuple[int, int]) -> Key:
    """Edge key joining grid vertices a and b, given as (row, column)."""
    s, t, r = p.s, p.t, p.r
    (i1, j1), (i2, j2) = a, b
    for (u, v) in ((a, b), (b, a)):
        (iu, ju), (iv, jv) = u, v
        if iu == iv and (ju + 1) % s == jv:
            return ("h", iu, ju)
        if iu < t - 1 and iv == iu + 1 and ju == jv:
            return ("d", iu, ju)
        if iu == t - 1 and iv == 0 and (ju + r) % s == jv:
            return ("d", iu, ju)
    raise ValueError(f"x^{i1}_{j1} and x^{i2}_{j2} are not adjacent in {p}")


def witness_from_walk(p: XParams, walk: Sequence[tuple[int, int]]) -> GridWitness:
    """Witness from a closed vertex walk (first vertex repeated at the end)."""
    keys = [step_key(p, a, b) for a, b in zip(walk, walk[1:])]
    if len(set(keys)) != len(keys):
        raise ValueError("walk repeats an edge")
    return make_witness(p, keys, ("explicit walk",))


# --- growth planner ------------------------------------------------------------

_KINDS = ("V", "HC", "HN")


def _apply(w: GridWitness, kind: str, site: int) -> GridWitness:
    return expand_vertical(w, site) if kind == "V" else expand_horizontal(w, site)


def _run(w: GridWitness, kind: str, site: int, times: int) -> GridWitness | None:
    """Expand ``times`` times, starting at ``site`` and then at the freshly inserted gap."""
    for _ in range(times):
        try:
            w = _apply(w, kind, site)
        except ExpansionError:
            return None
        site += 1
    return w


def _grow(w: GridWitness, need: dict[str, int]) -> GridWitness | None:
    pending = [k for k in _KINDS if need[k]]
    if not pending:
        return w
    for kind in pending:
        for site in expansion_sites(w)[kind]:
            grown = _run(w, kind, site, need[kind])
            if grown is None:
                continue
            out = _grow(grown, {**need, kind: 0})
            if out is not None:
                return out
    return None


def grow(w: GridWitness, target: XParams) -> GridWitness | None:
    """Reach a witness of ``target`` from ``w`` by expansions, or None."""
    p = w.params
    ds, dt = target.s - p.s, target.t - p.t
    if ds < 0 or dt < 0 or ds % 2 or dt % 2:
        return None
    h, v = ds // 2, dt // 2
    if w.diagonal_free():
        out = _grow(w, {"V": v, "HC": 0, "HN": h})
        if out is None or not out.diagonal_free():
            return None
        return out if out.params == target else out.rehost(target.r)
    dr = target.r - p.r
    if dr < 0 or dr % 2 or dr // 2 > h:
        return None
    return _grow(w, {"V": v, "HC": dr // 2, "HN": h - dr // 2})


def concatenate(w1: GridWitness, w2: GridWitness) -> GridWitness | None:
    """Join two witnesses of X(s1,t,0) and X(s2,t,0) side by side into X(s1+s2,t,0).

    Each is cut at a column gap; the gaps must carry horizontal edges in the
    same rows so that every degree is kept.  Tries every gap pair.
    """
    p1, p2 = w1.params, w2.params
    if p1.r or p2.r or p1.t != p2.t:
        raise ValueError("concatenation needs two witnesses with r = 0 and equal t")
    s1, s2, t = p1.s, p2.s, p1.t
    q = XParams(s1 + s2, t, 0)
    k1, k2 = w1.keys(), w2.keys()

    def rows(keys, gap):
        return frozenset(i for i in range(t) if ("h", i, gap) in keys)

    for a in range(s1):
        for b in range(s2):
            if rows(k1, a) != rows(k2, b):
                continue
            keys = set()
            for kind, i, c in k1:
                keys.add((kind, i, (c - a - 1) % s1))
            for kind, i, c in k2:
                col = s1 + (c - b - 1) % s2
                keys.add((kind, i, col))
            out = try_witness(q, keys, w1.provenance + w2.provenance + (f"joined at columns {a} and {b}",))
            if out is not None:
                return out
    return None


# --- dispatcher --------------------------------------------------------------


@lru_cache(maxsize=None)
def adam_orbit(p: XParams) -> tuple[XParams, ...]:
    """Parameters reachable through generator-preserving isomorphisms, ``p`` first."""
    seen = {p}
    queue = deque([p])
    while queue:
        q = queue.popleft()
        for c in adam_partners(q):
            if c not in seen:
                seen.add(c)
                queue.append(c)
    rest = sorted(seen - {p}, key=lambda q: (q.t, q.s, q.r))
    return (p,) + tuple(rest)


def _from_bases(p: XParams) -> GridWitness | None:
    from .basetable import load_table

    table = load_table()
    ranked = sorted(range(len(table)), key=lambda k: (abs(p.s - table[k].spec.s) + abs(p.t - table[k].spec.t), k))
    for k in ranked:
        out = grow(table[k].witness, p)
        if out is not None:
            return out
    # quarter turn of a grown witness with an empty column gap
    flipped = XParams(p.t, p.s, 0)
    for k in ranked:
        base = table[k].witness
        if not base.is_double_prime():
            continue
        out = grow(base, flipped)
        if out is not None and out.is_double_prime():
            return transpose(out, p.r)
    return None


def _exact(p: XParams, note: str) -> GridWitness | None:
    out = find_good_eulerian(x_graph(p), grid_transitions(p))
    if not out.completed:
        raise RuntimeError(f"exact search on {p} aborted")
    if not out.found:
        return None
    return witness_from_edges(p, out.subgraph.edges, (note,))


@lru_cache(maxsize=None)
def _flat(p: XParams) -> GridWitness | None:
    """Witness of X(s,t,0) from the bases, possibly joined from narrower pieces."""
    w = _from_bases(p)
    return w if w is not None else _joined(p)


def _joined(p: XParams) -> GridWitness | None:
    """X(s,t,0) from two narrower witnesses side by side."""
    for a in range(2, p.s // 2 + 1):
        b = p.s - a
        w1 = _flat(XParams(a, p.t, 0))
        w2 = _flat(XParams(b, p.t, 0)) if w1 is not None else None
        if w2 is None:
            continue
        out = concatenate(w1, w2)
        if out is not None:
            return out
    return None


def _construct(p: XParams) -> GridWitness | None:
    for q in adam_orbit(p):
        if excluded(q):
            continue
        w = _flat(q) if q.r == 0 else _from_bases(q)
        if w is not None:
            return w if q == p else transport(w, p, f"carried from {q} to {p}")
    for q in adam_orbit(p):
        if q.t == 1 and not excluded(q):
            w = _exact(q, f"exact search on {q}")
            if w is None:
                return None
            return w if q == p else transport(w, p, f"carried from {q} to {p}")
    return _exact(p, f"exact fallback on {p}")


@lru_cache(maxsize=4096)
def construct_witness(p: XParams) -> GridWitness | None:
    """A checked good Eulerian subgraph of X(s,t,r) with its fundamental transitions, or None."""
    if excluded(p) is not None:
        return None
    w = _construct(p)
    if w is None:
        return None
    problems = check_witness(w)
    if w.params != p or problems:
        raise AssertionError(f"constructed witness for {p} fails its check: {problems[:1]}")
    return w


# --- I-graphs ------------------------------------------------------------------


def i_edge_map(params: IParams) -> list[int]:
    """Grid edge of the exact X-params -> edge of the spoke quotient of I(n,p,q).

    Horizontal steps add q and land on the inner rim; down steps add p and
    land on the outer rim.  Both keep the tail, so directions carry over.
    """
    x = x_from_i_exact(params)
    vmap = i_vertex_map(params)
    n = params.n
    out = [0] * (2 * x.order)
    for i in range(x.t):
        for j in range(x.s):
            k = vmap[i * x.s + j]
            out[horizontal_id(x, i, j)] = n + k
            out[down_id(x, i, j)] = k
    return out


def hamiltonian_i_graph(params: IParams) -> list[int] | None:
    """Hamiltonian cycle of a connected I-graph built from a grid witness, or None."""
    if not is_connected_i(params):
        raise ValueError(f"{params} is disconnected")
    x = x_from_i_exact(params)
    w = construct_witness(x)
    if w is None:
        return None
    g = i_graph(params)
    c = contract_factor(g, spoke_factor(params))
    emap = i_edge_map(params)
    edges = [False] * c.quotient.edge_count
    for e, used in enumerate(w.edges):
        if used:
            edges[emap[e]] = True
    tour = GoodTour(tuple((emap[e], d) for e, d in w.tour.steps))
    problems = check_good_tour(c.quotient, classify_transitions(c), edges, tour)
    if problems:
        raise AssertionError(f"transported tour fails on {params}: {problems[0]}")
    cycle = lift_tour(c, tour)
    if not verify_cycle(g, cycle):
        raise AssertionError(f"lifted cycle of {params} is not Hamiltonian")
    return cycle
