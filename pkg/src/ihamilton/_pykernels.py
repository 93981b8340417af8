"""Pure-Python search kernels; the reference for ``_ckernels.pyx``.

Both modules expose the same two functions with identical results and
node counts, so either can back :mod:`ihamilton.kernels`.
"""

import sys


def ham_search(n, adj_ptr, adj, node_limit=-1):
    """Hamiltonian cycle through vertex 0 by path extension.

    ``adj_ptr``/``adj`` is a CSR list of distinct neighbours without
    self-loops.  Returns ``(cycle or None, nodes, completed)``.
    """
    if n < 3:
        raise ValueError("ham_search needs at least 3 vertices")
    visited = [False] * n
    avail = [adj_ptr[v + 1] - adj_ptr[v] for v in range(n)]
    path = [0] * n
    visited[0] = True
    nodes = 0
    aborted = False
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))

    def dfs(depth, end):
        # depth = number of vertices on the path; end = its last vertex
        nonlocal nodes, aborted
        if depth == n:
            for k in range(adj_ptr[end], adj_ptr[end + 1]):
                if adj[k] == 0:
                    return True
            return False
        for k in range(adj_ptr[end], adj_ptr[end + 1]):
            w = adj[k]
            if visited[w]:
                continue
            nodes += 1
            if 0 <= node_limit < nodes:
                aborted = True
                return False
            visited[w] = True
            path[depth] = w
            touched = []
            ok = True
            if end != 0:
                for kk in range(adj_ptr[end], adj_ptr[end + 1]):
                    u = adj[kk]
                    if not visited[u]:
                        avail[u] -= 1
                        touched.append(u)
                        if avail[u] < 2:
                            ok = False
            if ok and dfs(depth + 1, w):
                return True
            for u in touched:
                avail[u] += 1
            visited[w] = False
            if aborted:
                return False
        return False

    found = dfs(1, 0)
    return (list(path) if found else None), nodes, not aborted


def euler_search(nv, slot_vertex, vslots, fixed, callback=None, node_limit=-1):
    """Admissible subgraphs of a quartic graph whose allowed-transition tour is one closed walk.

    ``slot_vertex`` has one entry per slot (2 per edge), ``vslots`` four
    slots per vertex: the first two form one non-traversing pair, the last
    two the other.  ``fixed[e]`` is -1 (free), 0 (excluded) or 1 (required).

    Vertices are configured in index order; each takes all four slots or
    one slot from each side.  ``callback(edge_state)`` is invoked for every
    solution and stops the search by returning True; without a callback
    the first solution stops it.  Returns ``(last solution or None, nodes,
    completed, solutions)``.
    """
    ne = len(fixed)
    state = list(fixed)
    linked = [False] * ne
    other = list(range(2 * ne))
    deg = [0] * (2 * ne)
    undo = []
    nodes = 0
    count = 0
    last = None
    stop = False
    aborted = False
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * nv + 100))

    def add_link(x, y):
        ex = other[x] if deg[x] else x
        ey = other[y] if deg[y] else y
        undo.append((deg, x, deg[x]))
        undo.append((deg, y, deg[y]))
        deg[x] += 1
        deg[y] += 1
        if ex == y:
            return True
        undo.append((other, ex, other[ex]))
        undo.append((other, ey, other[ey]))
        other[ex] = ey
        other[ey] = ex
        return False

    def rollback(mark):
        while len(undo) > mark:
            arr, i, old = undo.pop()
            arr[i] = old

    def apply(v, used, pairs):
        for s in vslots[4 * v:4 * v + 4]:
            e = s >> 1
            u = 1 if s in used else 0
            if state[e] < 0:
                undo.append((state, e, -1))
                state[e] = u
            elif state[e] != u:
                return False
        links = []
        for s in used:
            e = s >> 1
            if not linked[e]:
                undo.append((linked, e, False))
                linked[e] = True
                links.append((2 * e, 2 * e + 1))
        links.extend(pairs)
        last_vertex = v == nv - 1
        for k, (x, y) in enumerate(links):
            if add_link(x, y):
                return last_vertex and k == len(links) - 1
        return not last_vertex

    def dfs(v):
        nonlocal nodes, count, last, stop, aborted
        a, b, c, d = vslots[4 * v:4 * v + 4]
        for used, pairs in (
            ((a, b, c, d), ((a, b), (c, d))),
            ((a, c), ((a, c),)),
            ((a, d), ((a, d),)),
            ((b, c), ((b, c),)),
            ((b, d), ((b, d),)),
        ):
            nodes += 1
            if 0 <= node_limit < nodes:
                aborted = stop = True
                return
            mark = len(undo)
            if apply(v, used, pairs):
                if v == nv - 1:
                    count += 1
                    last = list(state)
                    if callback is None or callback(last):
                        stop = True
                else:
                    dfs(v + 1)
            rollback(mark)
            if stop:
                return

    if nv:
        dfs(0)
    return last, nodes, not aborted, count
