"""Instance specs, graph formats and certificate (de)serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence

import jsonschema
import networkx as nx

from .families import (
    IParams,
    XParams,
    circulant,
    cayley_graph,
    CayleyParams,
    gpg,
    i_graph,
    sgi_graph,
    x_graph,
)
from .multigraph import Multigraph
from .oracle import Certificate

GRAPH_SCHEMA_TAG = "ihamilton.multigraph/1"
CERTIFICATE_SCHEMA_TAG = "ihamilton.certificate/1"
WITNESS_SCHEMA_TAG = "ihamilton.witness/1"

FAMILY_ARITY = {
    "i_graph": 3,  # n p q
    "gpg": 2,  # n k
    "x_graph": 3,  # s t r
    "sgi": 3,  # s t r, the cubic split SGI(st,s,t,r)
    "circulant": 3,  # n a b
    "cayley": 6,  # m d1 g1a g1b g2a g2b
}
FAMILY_ALIASES = {"i": "i_graph", "g": "gpg", "x": "x_graph", "cir": "circulant"}


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILY_ARITY:
            raise ValueError(f"unknown family {self.family!r}")
        if len(self.params) != FAMILY_ARITY[self.family]:
            raise ValueError(f"{self.family} takes {FAMILY_ARITY[self.family]} parameters, got {len(self.params)}")
        self.typed()  # validate

    def typed(self):
        """The validated parameter object of the family."""
        p = self.params
        if self.family == "i_graph":
            return IParams(*p)
        if self.family == "gpg":
            return IParams(p[0], 1, p[1])
        if self.family in ("x_graph", "sgi"):
            return XParams(*p)
        if self.family == "circulant":
            if p[0] < 1:
                raise ValueError("circulant needs n >= 1")
            return p
        m, d1, a1, b1, a2, b2 = p
        if m < 1 or d1 < 1:
            raise ValueError("cayley needs m, d1 >= 1")
        return CayleyParams(m, d1, (a1 % m, b1 % d1), (a2 % m, b2 % d1))

    def graph(self) -> Multigraph:
        p = self.params
        if self.family == "i_graph":
            return i_graph(IParams(*p))
        if self.family == "gpg":
            return gpg(*p)
        if self.family == "x_graph":
            return x_graph(XParams(*p))
        if self.family == "sgi":
            return sgi_graph(XParams(*p))
        if self.family == "circulant":
            return circulant(*p)
        return cayley_graph(self.typed())

    def to_json(self) -> dict[str, Any]:
        return {"family": self.family, "params": list(self.params)}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> InstanceSpec:
        return cls(data["family"], tuple(int(v) for v in data["params"]))

    def __str__(self) -> str:
        return f"{self.family}({','.join(map(str, self.params))})"


def parse_instance(tokens: Sequence[str]) -> InstanceSpec:
    """``["i", "5", "1", "2"]`` -> InstanceSpec("i_graph", (5, 1, 2))."""
    if not tokens:
        raise ValueError("missing instance family")
    family = FAMILY_ALIASES.get(tokens[0], tokens[0])
    try:
        params = tuple(int(v) for v in tokens[1:])
    except ValueError as exc:
        raise ValueError(f"parameters must be integers: {' '.join(tokens[1:])}") from exc
    return InstanceSpec(family, params)


# --- graph formats -------------------------------------------------------------


def graph_to_json(g: Multigraph) -> dict[str, Any]:
    """Edge-list format that keeps loops, parallel edges and edge ids."""
    out: dict[str, Any] = {
        "schema": GRAPH_SCHEMA_TAG,
        "vertex_count": g.vertex_count,
        "edges": [list(e) for e in g.edges],
    }
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def graph_from_json(data: dict[str, Any]) -> Multigraph:
    _validate(data, GRAPH_SCHEMA)
    labels = data.get("labels")
    return Multigraph(data["vertex_count"], [tuple(e) for e in data["edges"]], labels)


def is_simple(g: Multigraph) -> bool:
    seen = set()
    for a, b in g.edges:
        key = (min(a, b), max(a, b))
        if a == b or key in seen:
            return False
        seen.add(key)
    return True


def to_networkx(g: Multigraph) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.vertex_count))
    for e, (a, b) in enumerate(g.edges):
        h.add_edge(a, b, key=e)
    return h


def to_graph6(g: Multigraph) -> str:
    if not is_simple(g):
        raise ValueError("graph6 cannot represent loops or parallel edges; use the JSON edge-list format")
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return nx.to_graph6_bytes(h, header=False).decode().strip()


def from_graph6(text: str) -> Multigraph:
    h = nx.from_graph6_bytes(text.strip().encode())
    return Multigraph(h.number_of_nodes(), sorted(tuple(sorted(e)) for e in h.edges()))


def to_dot(g: Multigraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.vertex_count)]
    for e, (a, b) in enumerate(g.edges):
        attrs = [f'id="{e}"']
        if g.labels is not None:
            attrs.append(f'label="{g.labels[e]}"')
        lines.append(f"  {a} -- {b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- schemas -----------------------------------------------------------------

_INT_ARRAY = {"type": "array", "items": {"type": "integer"}}

INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["family", "params"],
    "properties": {
        "family": {"enum": sorted(FAMILY_ARITY)},
        "params": _INT_ARRAY,
    },
}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["schema", "vertex_count", "edges"],
    "properties": {
        "schema": {"const": GRAPH_SCHEMA_TAG},
        "vertex_count": {"type": "integer", "minimum": 0},
        "edges": {"type": "array", "items": {**_INT_ARRAY, "minItems": 2, "maxItems": 2}},
        "labels": {"type": "array", "items": {"type": "string"}},
    },
}

_PAYLOAD_SCHEMAS = {
    "hamiltonian_cycle": {"type": "object", "required": ["cycle"], "properties": {"cycle": _INT_ARRAY}},
    "good_subgraph": {
        "type": "object",
        "required": ["edges", "tour"],
        "properties": {
            "edges": _INT_ARRAY,
            "tour": {"type": "array", "items": {**_INT_ARRAY, "minItems": 2, "maxItems": 2}},
        },
    },
    "isomorphism": {
        "type": "object",
        "required": ["other", "vertex_map"],
        "properties": {"other": INSTANCE_SCHEMA, "vertex_map": _INT_ARRAY},
    },
    "non_isomorphism": {"type": "object", "required": ["other"], "properties": {"other": INSTANCE_SCHEMA}},
    "no_hamiltonian": {"type": "object"},
    "no_good_subgraph": {"type": "object"},
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["schema", "kind", "instance", "payload", "tool_version"],
    "properties": {
        "schema": {"const": CERTIFICATE_SCHEMA_TAG},
        "kind": {"enum": sorted(_PAYLOAD_SCHEMAS)},
        "instance": INSTANCE_SCHEMA,
        "payload": {"type": "object"},
        "tool_version": {"type": "string"},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": kind}}}, "then": {"properties": {"payload": schema}}}
        for kind, schema in _PAYLOAD_SCHEMAS.items()
    ],
}


class SchemaError(ValueError):
    """JSON document does not match its schema; the message names the field path."""


def _validate(data: Any, schema: dict[str, Any]) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {exc.message}") from None


def certificate_to_json(cert: Certificate) -> dict[str, Any]:
    data = {
        "schema": CERTIFICATE_SCHEMA_TAG,
        "kind": cert.kind,
        "instance": cert.instance,
        "payload": cert.payload,
        "tool_version": cert.tool_version,
    }
    _validate(data, CERTIFICATE_SCHEMA)
    return data


def certificate_from_json(data: dict[str, Any]) -> Certificate:
    _validate(data, CERTIFICATE_SCHEMA)
    return Certificate(data["kind"], data["instance"], data["payload"], data["tool_version"])


def dumps_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_to_json(cert), indent=1, sort_keys=True)


def loads_certificate(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"<root>: not JSON ({exc.msg})") from None
    return certificate_from_json(data)
