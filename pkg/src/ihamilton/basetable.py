"""Frozen base witnesses that the constructive dispatcher grows by expansions.

Each base is regenerated by a constrained exact search and filtered so the
required expansion kinds (``V`` vertical, ``HN`` non-crossing horizontal,
``HC`` crossing horizontal) actually succeed on it.  Run
``python -m ihamilton.basetable`` to rebuild ``data/base_witnesses.json``.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .constructive import (
    ExpansionError,
    crosses,
    GridWitness,
    expand_horizontal,
    expand_vertical,
    expansion_sites,
    key_id,
    witness_from_edges,
    witness_from_walk,
)
from .euler import find_good_eulerian, grid_transitions
from .families import XParams, x_graph

TABLE_VERSION = 1
TABLE_FILE = "base_witnesses.json"


@dataclass(frozen=True)
class BaseSpec:
    name: str
    s: int
    t: int
    r: int
    kind: str  # "W", "W'" (no diagonals) or "W''" (no diagonals, empty column gap)
    caps: tuple[str, ...]  # expansion kinds that must succeed
    wanted: tuple[str, ...] = ()  # kinds tried first, dropped if unattainable
    # horizontal sites (kind, column) whose crossing kind restricts the diagonals searched
    hints: tuple[tuple[str, int], ...] = ()

    @property
    def params(self) -> XParams:
        return XParams(self.s, self.t, self.r)


# walk of the worked X(5,4,3) example, closing at its start
WALK_5_4_3 = [
    (0, 0), (1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (0, 4), (3, 1), (2, 1), (1, 1),
    (0, 1), (0, 2), (1, 2), (2, 2), (3, 2), (3, 1), (3, 0), (2, 0), (2, 1), (2, 2),
    (2, 3), (2, 4), (3, 4), (3, 3), (2, 3), (1, 3), (0, 3), (0, 4), (0, 0),
]

BASE_SPECS: tuple[BaseSpec, ...] = (
    BaseSpec("W(3,3,0)", 3, 3, 0, "W", ("V", "HN")),
    BaseSpec("W(4,3,0)", 4, 3, 0, "W", ("V",), ("HN",)),
    BaseSpec("W(6,3,0)", 6, 3, 0, "W", (), ("HN",)),
    BaseSpec("W(4,3,2)", 4, 3, 2, "W", ("HN",), ("HC",)),
    BaseSpec("W(6,3,3)", 6, 3, 3, "W", (), ("HN",)),
    BaseSpec("W(8,3,3)", 8, 3, 3, "W", ("HN",)),
    BaseSpec("W(10,3,5)", 10, 3, 5, "W", ("HN", "HC")),
    BaseSpec("W(5,3,2)", 5, 3, 2, "W", ("HN",), ("HC",)),
    BaseSpec("W(9,3,4)", 9, 3, 4, "W", ("HN",), ("HC",)),
    BaseSpec("W(13,3,6)", 13, 3, 6, "W", ("HC",), ("HN",)),
    BaseSpec("W(7,3,3)", 7, 3, 3, "W", ("HN",), ("HC",)),
    BaseSpec("W(11,3,5)", 11, 3, 5, "W", ("HN",), ("HC",)),
    BaseSpec("W'(2,2)", 2, 2, 0, "W'", ("HN",)),
    BaseSpec("W''(4,4)", 4, 4, 0, "W''", ("HN",)),
    BaseSpec("W'(6,6)", 6, 6, 0, "W'", ("HN",)),
    BaseSpec("W''(6,8)", 6, 8, 0, "W''", ("V", "HN")),
    BaseSpec("W'(6,5)", 6, 5, 0, "W'", ("V", "HN")),
    BaseSpec("W(7,5,3)", 7, 5, 3, "W", ("V", "HN", "HC")),
    BaseSpec("W(5,4,3)", 5, 4, 3, "W", ("V", "HN", "HC")),
)


def _expand(w: GridWitness, cap: str, site: int) -> GridWitness:
    return expand_vertical(w, site) if cap == "V" else expand_horizontal(w, site)


def has_caps(w: GridWitness, caps: tuple[str, ...]) -> bool:
    """Every kind in ``caps`` succeeds at some site and leaves the other kinds available."""
    sites = expansion_sites(w)
    for cap in caps:
        ok = False
        for site in sites[cap]:
            try:
                grown = _expand(w, cap, site)
            except ExpansionError:
                continue
            after = expansion_sites(grown)
            if all(after[c] for c in caps):
                ok = True
                break
        if not ok:
            return False
    return True


def _fixed(spec: BaseSpec) -> list[int]:
    p = spec.params
    fixed = [-1] * (2 * p.order)
    if spec.kind in ("W'", "W''"):
        for j in range(p.s):
            fixed[key_id(p, ("d", p.t - 1, j))] = 0
    if spec.kind == "W''":
        for i in range(p.t):
            fixed[key_id(p, ("h", i, p.s - 1))] = 0
    for cap, gap in spec.hints:
        for j in range(p.s):
            if crosses(p, j, gap) != (cap == "HC"):
                fixed[key_id(p, ("d", p.t - 1, j))] = 0
    return fixed


def generate(spec: BaseSpec, node_limit: int = 50_000_000) -> tuple[GridWitness, tuple[str, ...]]:
    """Search a base witness with the strongest attainable capability set."""
    p = spec.params
    if spec.name == "W(5,4,3)":
        w = witness_from_walk(p, WALK_5_4_3)
        # the walk is fixed, so its kinds are checked one at a time
        caps = tuple(c for c in spec.caps + spec.wanted if has_caps(w, (c,)))
        return w.with_note("base W(5,4,3) (worked example)"), caps
    x = x_graph(p)
    ts = grid_transitions(p)
    for caps in (spec.caps + spec.wanted, spec.caps):

        def accept(edges, caps=caps):
            w = witness_from_edges(p, edges)
            return has_caps(w, caps)

        out = find_good_eulerian(x, ts, fixed=_fixed(spec), accept=accept, node_limit=node_limit)
        if out.found:
            w = witness_from_edges(p, out.subgraph.edges, (f"base {spec.name} (search)",))
            return w, caps
        if not spec.wanted:
            break
    raise RuntimeError(f"no base witness {spec.name} with capabilities {spec.caps}")


@dataclass(frozen=True)
class BaseEntry:
    spec: BaseSpec
    witness: GridWitness
    caps: tuple[str, ...]


def _table_path() -> Path:
    return Path(str(resources.files("ihamilton") / "data" / TABLE_FILE))


def write_table(path: Path | None = None) -> None:
    rows = []
    for spec in BASE_SPECS:
        w, caps = generate(spec)
        rows.append({
            "name": spec.name, "s": spec.s, "t": spec.t, "r": spec.r, "kind": spec.kind,
            "caps": list(caps),
            "edges": [e for e, used in enumerate(w.edges) if used],
        })
        print(f"{spec.name}: {sum(w.edges)} edges, caps {caps}", file=sys.stderr)
    path = path or _table_path()
    path.write_text(json.dumps({"version": TABLE_VERSION, "bases": rows}, indent=1) + "\n")


@lru_cache(maxsize=1)
def load_table() -> tuple[BaseEntry, ...]:
    data = json.loads(_table_path().read_text())
    if data.get("version") != TABLE_VERSION:
        raise ValueError("base witness table has an unexpected version")
    specs = {spec.name: spec for spec in BASE_SPECS}
    out = []
    for row in data["bases"]:
        spec = specs[row["name"]]
        p = spec.params
        edges = [False] * (2 * p.order)
        for e in row["edges"]:
            edges[e] = True
        w = witness_from_edges(p, edges, (f"base {spec.name}",))
        out.append(BaseEntry(spec, w, tuple(row["caps"])))
    return tuple(out)


if __name__ == "__main__":
    write_table()
