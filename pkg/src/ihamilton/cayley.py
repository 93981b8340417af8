"""Number theory of X(s,t,r): Cayley representations, parameter swaps, isomorphism.

Group arithmetic uses grid coordinates.  The element ``i*gamma2 + j*gamma1``
is the vertex x^i_j, where gamma1 is the horizontal step and gamma2 the
vertical one; the only relations are ``s*gamma1 = 0`` and
``t*gamma2 = r*gamma1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .families import CayleyParams, IParams, XParams, cayley_graph, down_id, horizontal_id, x_graph, x_vertex
from .multigraph import cycle_decomposition

Element = tuple[int, int]


@dataclass(frozen=True)
class KWitness:
    s: int
    t: int
    r: int
    d1: int
    k: int

    def valid(self) -> bool:
        return is_valid_k(XParams(self.s, self.t, self.r), self.k)


@dataclass(frozen=True)
class SGIParams:
    order: int
    s: int
    t: int
    k: int

    def x_params(self) -> XParams:
        return XParams(self.s, self.t, self.k % self.s)

    def __str__(self) -> str:
        return f"SGI({self.order},{self.s},{self.t},{self.k})"


def _prime_factors(n: int) -> set[int]:
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def coprime_lift(a: int, b: int, c: int) -> int:
    """An h in 1..a-1 with h = c (mod b) and gcd(h, a) = 1.

    Either c itself, or c + omega*b where omega multiplies the primes of
    ``a`` dividing neither ``b`` nor ``c``.
    """
    if a <= 1 or b < 1 or a % b:
        raise ValueError(f"need a > 1 and b dividing a, got a={a}, b={b}")
    if gcd(c, b) != 1:
        raise ValueError(f"c={c} is not coprime to b={b}")
    if gcd(c, a) == 1 and 1 <= c <= a - 1:
        return c
    primes = _prime_factors(a)
    omega = 1
    for p in primes:
        if b % p and c % p:
            omega *= p
    h = c + omega * b
    if not (1 <= h <= a - 1 and gcd(h, a) == 1):
        raise AssertionError(f"coprime lift failed for ({a},{b},{c})")
    return h


def is_valid_k(params: XParams, k: int) -> bool:
    s, t, r, d1 = params.s, params.t, params.r, params.d1
    m = s * t // d1
    return (
        1 <= k <= m - 1
        and gcd(k, t) == 1
        and (k - r // d1) % (s // d1) == 0
        and (t * k - r * t // d1) % m == 0
    )


def find_k(params: XParams) -> KWitness:
    """The smallest k in 1..st/d1-1 satisfying the coprimality and congruence conditions."""
    m = params.order // params.d1
    for k in range(1, m):
        if is_valid_k(params, k):
            return KWitness(params.s, params.t, params.r, params.d1, k)
    raise ValueError(f"no k exists for {params}")


def find_k_by_lift(params: XParams) -> KWitness | None:
    """k built from a coprime lift of r/d1 and the coset shift of t/d1.

    Returns None when the coset contains no valid k.
    """
    s, t, r, d1 = params.s, params.t, params.r, params.d1
    if r == 0:
        return None
    if t == 1:
        return KWitness(s, t, r, d1, r)
    d = params.d
    h = coprime_lift(t, d // d1, (r // d1) % (d // d1))
    m = s * t // d1
    for mu in range(s):
        k = (h + mu * t // d1) % m
        if is_valid_k(params, k):
            return KWitness(s, t, r, d1, k)
    return None


# --- group arithmetic in grid coordinates -------------------------------------


def normalize(params: XParams, i: int, j: int) -> Element:
    wraps, row = divmod(i, params.t)
    return row, (j + wraps * params.r) % params.s


def add(params: XParams, x: Element, y: Element) -> Element:
    return normalize(params, x[0] + y[0], x[1] + y[1])


def scale(params: XParams, n: int, x: Element) -> Element:
    return normalize(params, n * x[0], n * x[1])


def element_order(params: XParams, x: Element) -> int:
    n, y = 1, normalize(params, *x)
    while y != (0, 0):
        y = add(params, y, x)
        n += 1
    return n


GAMMA1: Element = (0, 1)
GAMMA2: Element = (1, 0)


def _images(base: CayleyParams, g1, g2, s: int, t: int) -> list[int]:
    out = []
    for i in range(t):
        for j in range(s):
            e = ((i * g2[0] + j * g1[0]) % base.m, (i * g2[1] + j * g1[1]) % base.d1)
            out.append(base.index(e))
    return out


def _search_second_generator(params: XParams, m: int, d1: int, g1):
    """A gamma2 = (a, c) making x^i_j -> i*gamma2 + j*gamma1 a bijection."""
    base = CayleyParams(m, d1, g1, g1)
    for a in range(m):
        for c in range(d1):
            g2 = (a, c)
            images = _images(base, g1, g2, params.s, params.t)
            if len(set(images)) == base.order and base.index(
                ((params.t * a) % m, (params.t * c) % d1)
            ) == base.index(((params.r * g1[0]) % m, (params.r * g1[1]) % d1)):
                return g2
    raise AssertionError(f"no second generator for {params}")


def cayley_params(params: XParams) -> CayleyParams:
    """Cayley representation with the explicit vertex map x^i_j -> i*gamma2 + j*gamma1.

    The group is Z_{st/d1} x Z_{d1} with gamma1 = (t/d1, 1) and
    gamma2 = (k, 0).  When no admissible k exists, gamma2 = (k, c) is
    searched instead; for r = 0 the group is Z_s x Z_t.
    """
    s, t, r = params.s, params.t, params.r
    if r == 0:
        m, d1 = s, t
        g1, g2 = (1 % s, 0), (0, 1 % t)
    else:
        d1 = params.d1
        m = s * t // d1
        g1 = ((t // d1) % m, 1 % d1)
        try:
            g2 = (find_k(params).k % m, 0)
        except ValueError:
            g2 = _search_second_generator(params, m, d1, g1)
    base = CayleyParams(m, d1, g1, g2)
    return CayleyParams(m, d1, g1, g2, tuple(_images(base, g1, g2, s, t)))


def has_k(params: XParams) -> bool:
    try:
        find_k(params)
    except ValueError:
        return False
    return True


def check_cayley_map(params: XParams) -> bool:
    cp = cayley_params(params)
    from .oracle import is_isomorphism

    return is_isomorphism(x_graph(params), cayley_graph(cp), cp.x_map)


# --- swaps, mirrors and Adám isomorphism --------------------------------------


def mirror(params: XParams) -> XParams:
    return XParams(params.s, params.t, (params.s - params.r) % params.s)


def swap_candidates(params: XParams) -> tuple[XParams, XParams]:
    """Both sign choices of the swap formula (equal up to mirroring)."""
    s, t, r = params.s, params.t, params.r
    if r == 0:
        return XParams(t, s, 0), XParams(t, s, 0)
    if not has_k(params):
        direct = swap_direct(params)
        return direct, mirror(direct)
    kw = find_k(params)
    g = gcd(s, r)
    s2 = s * t // g
    unit = (kw.k * params.d1 // g) % s2
    inv = pow(unit, -1, s2) if s2 > 1 else 0
    r2 = (t * inv) % s2
    return XParams(s2, g, r2), XParams(s2, g, (-r2) % s2)


def swap_form(params: XParams) -> XParams:
    """Representation with the roles of horizontal and vertical steps exchanged.

    The sign in the formula is resolved towards the smaller r.
    """
    a, b = swap_candidates(params)
    return a if a.r <= b.r else b


def swap_direct(params: XParams) -> XParams:
    """Swap computed from the group itself: the vertical step becomes horizontal."""
    s2 = element_order(params, GAMMA2)
    t2 = params.order // s2
    target = scale(params, t2, GAMMA1)
    for r2 in range(s2):
        if scale(params, r2, GAMMA2) == target:
            return XParams(s2, t2, r2)
    raise AssertionError(f"no swap shift for {params}")


def _assignments(a: XParams):
    """(image of gamma1_b, image of gamma2_b), each as (generator of a, sign)."""
    for sign1 in (1, -1):
        for sign2 in (1, -1):
            yield (GAMMA1, sign1), (GAMMA2, sign2)
            yield (GAMMA2, sign2), (GAMMA1, sign1)


@dataclass(frozen=True)
class AdamIsomorphism:
    """Vertex and edge maps from X(b) onto X(a) induced by a group isomorphism."""

    a: XParams
    b: XParams
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]
    # True when horizontal edges of b land on vertical/diagonal edges of a
    swaps_colours: bool


def adam_isomorphism(a: XParams, b: XParams) -> AdamIsomorphism | None:
    """An isomorphism sending gamma1_b, gamma2_b to signed generators of a, or None.

    The homomorphism fixed by those images exists exactly when b's
    relations hold in a's group; it is onto because the images generate,
    so equal orders make it an isomorphism.  Edges follow their tails.
    """
    if a.order != b.order:
        return None
    for (h1, e1), (h2, e2) in _assignments(a):
        g1, g2 = scale(a, e1, h1), scale(a, e2, h2)
        if scale(a, b.s, g1) != (0, 0) or scale(a, b.t, g2) != scale(a, b.r, g1):
            continue
        phi = []
        for i in range(b.t):
            for j in range(b.s):
                phi.append(add(a, scale(a, i, g2), scale(a, j, g1)))
        edge_map = [0] * (2 * b.order)
        for gen, sign, offset in ((h1, e1, 0), (h2, e2, b.order)):
            for v, image in enumerate(phi):
                tail = image if sign > 0 else add(a, image, scale(a, -1, gen))
                ident = horizontal_id if gen == GAMMA1 else down_id
                edge_map[offset + v] = ident(a, *tail)
        vertex_map = tuple(x_vertex(a, *e) for e in phi)
        return AdamIsomorphism(a, b, vertex_map, tuple(edge_map), h1 == GAMMA2)
    return None


def adam_map(a: XParams, b: XParams) -> list[int] | None:
    iso = adam_isomorphism(a, b)
    return list(iso.vertex_map) if iso else None


def adam_isomorphic(a: XParams, b: XParams) -> bool:
    return adam_isomorphism(a, b) is not None


def adam_partners(params: XParams) -> set[XParams]:
    """Parameters listed by the closed-form characterisation of Adám partners."""
    out = {params, mirror(params)}
    for c in swap_candidates(params):
        out.add(c)
        out.add(mirror(c))
    return out


def _exceptional_partners(params: XParams) -> set[XParams]:
    s, t, r = params.s, params.t, params.r
    out = set()
    if t == 1 and s % 4 == 0 and s >= 4:
        n = s // 4
        if r in ((2 * n - 1) % s, (2 * n + 1) % s):
            out |= {XParams(2 * n, 2, 2 % (2 * n)), XParams(2 * n, 2, (2 * n - 2) % (2 * n))}
    if t == 2 and s % 2 == 0:
        n = s // 2
        if r in (2 % s, (2 * n - 2) % s):
            out |= {XParams(4 * n, 1, 2 * n - 1), XParams(4 * n, 1, 2 * n + 1)}
    return out


def is_exceptional_pair(a: XParams, b: XParams) -> bool:
    return b in _exceptional_partners(a)


def isomorphic_x(a: XParams, b: XParams) -> bool:
    if adam_isomorphic(a, b):
        return True
    return any(adam_isomorphic(c, b) for c in _exceptional_partners(a))


@lru_cache(maxsize=None)
def isomorphism_orbit(params: XParams) -> frozenset[XParams]:
    seen = {params}
    queue = deque([params])
    while queue:
        p = queue.popleft()
        for q in adam_partners(p) | _exceptional_partners(p):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return frozenset(seen)


def canonical_form(params: XParams) -> XParams:
    return min(isomorphism_orbit(params), key=lambda p: (p.s, p.t, p.r))


# --- correspondences with I-graphs and SGI graphs ----------------------------


def x_from_i(params: IParams) -> XParams:
    """Parameters of the spoke quotient of I(n,p,q), sign chosen towards the smaller r."""
    t, s = params.t, params.s
    inv = pow(params.q // t, -1, s) if s > 1 else 0
    r = (params.p * inv) % s
    return XParams(s, t, min(r, (s - r) % s))


def x_from_i_exact(params: IParams) -> XParams:
    """As :func:`x_from_i`, keeping the + sign so the grid map is literal."""
    t, s = params.t, params.s
    inv = pow(params.q // t, -1, s) if s > 1 else 0
    return XParams(s, t, (params.p * inv) % s)


def i_vertex_map(params: IParams) -> list[int]:
    """Grid vertex x^i_j of the exact X-params -> quotient vertex (i*p + j*q mod n)."""
    x = x_from_i_exact(params)
    n, p, q = params.n, params.p, params.q
    return [(i * p + j * q) % n for i in range(x.t) for j in range(x.s)]


def i_graph_from_x(params: XParams) -> IParams | None:
    """The connected I-graph whose spoke quotient is X(s,t,r), if any."""
    s, t, r = params.s, params.t, params.r
    if params.d1 != 1 or s < 3 or (s % 2 == 1 and (t, r) == (2, 0)):
        return None
    n = s * t
    if r == 0:
        candidates = [s]
    else:
        candidates = [k for k in range(1, n) if is_valid_k(params, k)]
    for k in candidates:
        if 1 <= k <= n - 1 and 1 <= t <= n - 1 and 2 * k != n and 2 * t != n:
            return IParams(n, k, t)
    return None


def sgi_from_x(params: XParams) -> SGIParams:
    """SGI parameters whose spoke quotient is X(s,t,r) with its fundamental factorization.

    The last parameter is congruent to r modulo s, so it is the diagonal shift.
    """
    s, t, r = params.s, params.t, params.r
    if r == 0:
        k = s
    elif params.d1 == 1:
        k = find_k(params).k
    else:
        k = r
    return SGIParams(s * t, s, t, k)


def fundamental_factor_counts(params: XParams) -> tuple[tuple[int, int], tuple[int, int]]:
    """((red cycles, red length), (blue cycles, blue length))."""
    s, t, r = params.s, params.t, params.r
    g = gcd(s, r)
    return (t, s), (g, s * t // g)


def measured_factor_counts(params: XParams) -> tuple[tuple[int, int], tuple[int, int]]:
    x = x_graph(params)
    st = params.order
    red = cycle_decomposition(x, [e < st for e in range(2 * st)])
    blue = cycle_decomposition(x, [e >= st for e in range(2 * st)])

    def summary(cycles):
        lengths = {len(c) for c in cycles}
        if len(lengths) != 1:
            raise AssertionError("cycle lengths differ within a colour class")
        return len(cycles), lengths.pop()

    return summary(red), summary(blue)


def transport_edges(iso: AdamIsomorphism, edges_b) -> tuple[bool, ...]:
    """Carry an edge subset of X(b) onto X(a)."""
    image = [False] * len(edges_b)
    for e, used in enumerate(edges_b):
        image[iso.edge_map[e]] = bool(used)
    return tuple(image)
