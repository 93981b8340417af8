"""Graph families: I-graphs, X(s,t,r) grids, SGI graphs and abelian Cayley multigraphs.

Vertex numbering is fixed once and used everywhere else:

* I(n,p,q): vertex ``k`` is the outer vertex v_k for ``k < n`` and the
  inner vertex u_{k-n} otherwise.
* X(s,t,r): vertex x^i_j (row ``i``, column ``j``) has index ``i*s + j``.
* SGI(st,s,t,r): outer u_{i,j} is ``i*s + j``, inner u'_{i,j} is
  ``s*t + i*s + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .multigraph import Multigraph, connected_components


@dataclass(frozen=True)
class IParams:
    n: int
    p: int
    q: int

    def __post_init__(self):
        n, p, q = self.n, self.p, self.q
        if n < 3:
            raise ValueError(f"I-graph needs n >= 3, got {n}")
        for name, v in (("p", p), ("q", q)):
            if not 1 <= v <= n - 1:
                raise ValueError(f"{name}={v} outside 1..{n - 1}")
            if 2 * v == n:
                raise ValueError(f"{name}={v} equals n/2")

    @property
    def t(self) -> int:
        return gcd(self.n, self.q)

    @property
    def s(self) -> int:
        return self.n // self.t

    def __str__(self) -> str:
        return f"I({self.n},{self.p},{self.q})"


@dataclass(frozen=True)
class XParams:
    s: int
    t: int
    r: int

    def __post_init__(self):
        if self.s < 1 or self.t < 1:
            raise ValueError(f"X(s,t,r) needs s,t >= 1, got s={self.s}, t={self.t}")
        if not 0 <= self.r <= self.s - 1:
            raise ValueError(f"r={self.r} outside 0..{self.s - 1}")

    @property
    def d(self) -> int:
        return gcd(self.s, self.t)

    @property
    def d1(self) -> int:
        return gcd(gcd(self.s, self.t), self.r)

    @property
    def order(self) -> int:
        return self.s * self.t

    def __str__(self) -> str:
        return f"X({self.s},{self.t},{self.r})"


@dataclass(frozen=True)
class CayleyParams:
    """Group Z_m x Z_d1 with generator list {±gamma1, ±gamma2}.

    Elements are pairs ``(a, b)``; vertex index of ``(a, b)`` is ``a*d1 + b``.
    """

    m: int
    d1: int
    gamma1: tuple[int, int]
    gamma2: tuple[int, int]
    # vertex index of the group element mapped onto x^i_j, when built from X
    x_map: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return self.m * self.d1

    def add(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        return ((x[0] + y[0]) % self.m, (x[1] + y[1]) % self.d1)

    def index(self, x: tuple[int, int]) -> int:
        return (x[0] % self.m) * self.d1 + x[1] % self.d1

    def element(self, v: int) -> tuple[int, int]:
        return divmod(v, self.d1)


def i_graph(params: IParams) -> Multigraph:
    n, p, q = params.n, params.p, params.q
    edges = [(i, (i + p) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, n + (i + q) % n) for i in range(n)]
    labels = ["outer"] * n + ["spoke"] * n + ["inner"] * n
    return Multigraph(2 * n, edges, labels)


def gpg(n: int, k: int) -> Multigraph:
    """Generalized Petersen graph G(n,k) = I(n,1,k)."""
    return i_graph(IParams(n, 1, k))


def spoke_factor(params: IParams) -> tuple[bool, ...]:
    n = params.n
    return tuple([False] * n + [True] * n + [False] * n)


def horizontal_id(x: XParams, i: int, j: int) -> int:
    """Edge id of [x^i_j, x^i_{j+1}]."""
    return (i % x.t) * x.s + j % x.s


def down_id(x: XParams, i: int, j: int) -> int:
    """Edge id of the vertical (or, from the last row, diagonal) edge leaving x^i_j downwards."""
    return x.t * x.s + (i % x.t) * x.s + j % x.s


def x_vertex(x: XParams, i: int, j: int) -> int:
    return (i % x.t) * x.s + j % x.s


def x_graph(params: XParams) -> Multigraph:
    """X(s,t,r): horizontal edges first, then vertical, then diagonal.

    Every edge runs from its tail x to x + generator, so the horizontal edge
    of (i, j) starts at x^i_j and ends at x^i_{j+1}, and the down edge of
    (i, j) ends at x^{i+1}_j (or at x^0_{j+r} from the last row).
    """
    s, t, r = params.s, params.t, params.r
    edges = []
    labels = []
    for i in range(t):
        for j in range(s):
            edges.append((i * s + j, i * s + (j + 1) % s))
            labels.append("horizontal")
    for i in range(t - 1):
        for j in range(s):
            edges.append((i * s + j, (i + 1) * s + j))
            labels.append("vertical")
    for j in range(s):
        edges.append(((t - 1) * s + j, (j + r) % s))
        labels.append("diagonal")
    return Multigraph(s * t, edges, labels)


def sgi_graph(params: XParams) -> Multigraph:
    """SGI(st,s,t,r): cubic split of X(s,t,r) along its fundamental 2-factorization.

    Edge order is outer rim, spokes, inner rim, so contracting the spokes
    reproduces :func:`x_graph` edge for edge.
    """
    s, t, r = params.s, params.t, params.r
    st = s * t
    edges = []
    labels = []
    for i in range(t):
        for j in range(s):
            edges.append((i * s + j, i * s + (j + 1) % s))
            labels.append("outer")
    for v in range(st):
        edges.append((v, st + v))
        labels.append("spoke")
    for i in range(t - 1):
        for j in range(s):
            edges.append((st + i * s + j, st + (i + 1) * s + j))
            labels.append("inner")
    for j in range(s):
        edges.append((st + (t - 1) * s + j, st + (j + r) % s))
        labels.append("inner")
    return Multigraph(2 * st, edges, labels)


def sgi_spokes(params: XParams) -> tuple[bool, ...]:
    st = params.s * params.t
    return tuple([False] * st + [True] * st + [False] * st)


def cayley_graph(params: CayleyParams) -> Multigraph:
    """One edge [x, x + gamma] per group element and per generator.

    Because the list is {±gamma1, ±gamma2}, this gives a loop at every
    vertex when gamma = 0 and a doubled edge when gamma is an involution.
    Edges of gamma1 come first, labelled ``gamma1``.
    """
    edges = []
    labels = []
    for name, gamma in (("gamma1", params.gamma1), ("gamma2", params.gamma2)):
        for v in range(params.order):
            edges.append((v, params.index(params.add(params.element(v), gamma))))
            labels.append(name)
    return Multigraph(params.order, edges, labels)


def circulant(n: int, a: int, b: int) -> Multigraph:
    """Cir(n; ±a, ±b)."""
    return cayley_graph(CayleyParams(n, 1, (a % n, 0), (b % n, 0)))


def is_connected_i(params: IParams) -> bool:
    """Connectivity through the (s, t) conditions; cross-checked against gcd(n,p,q) = 1."""
    s, t, p, q = params.s, params.t, params.p, params.q
    by_st = gcd(t, p) == 1 and gcd(gcd(s, p), q) == 1
    by_gcd = gcd(gcd(params.n, p), q) == 1
    if by_st != by_gcd:
        raise AssertionError(f"connectivity criteria disagree on {params}")
    return by_st


def is_proper_i(params: IParams) -> bool:
    if not is_connected_i(params):
        raise ValueError(f"{params} is disconnected")
    return params.t != 1 and gcd(params.s, params.p) != 1


def i_components(params: IParams) -> int:
    return len(connected_components(i_graph(params)))


def all_i_params(n_max: int, n_min: int = 3):
    """Every valid (n, p, q) with n_min <= n <= n_max in lexicographic order."""
    for n in range(n_min, n_max + 1):
        for p in range(1, n):
            if 2 * p == n:
                continue
            for q in range(1, n):
                if 2 * q == n:
                    continue
                yield IParams(n, p, q)


def all_x_params(max_order: int):
    for st in range(1, max_order + 1):
        for s in range(1, st + 1):
            if st % s:
                continue
            for r in range(s):
                yield XParams(s, st // s, r)
