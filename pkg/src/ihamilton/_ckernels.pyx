# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract as ``_pykernels``."""

from libc.stdlib cimport malloc, free


cdef struct HamState:
    int n
    int *ptr
    int *adj
    char *visited
    int *avail
    int *path
    int *touched
    long long nodes
    long long limit
    int aborted


cdef int _ham_dfs(HamState *st, int depth, int end, int tpos):
    cdef int k, kk, w, u, ntouch, i
    cdef int ok
    if depth == st.n:
        for k in range(st.ptr[end], st.ptr[end + 1]):
            if st.adj[k] == 0:
                return 1
        return 0
    for k in range(st.ptr[end], st.ptr[end + 1]):
        w = st.adj[k]
        if st.visited[w]:
            continue
        st.nodes += 1
        if st.limit >= 0 and st.nodes > st.limit:
            st.aborted = 1
            return 0
        st.visited[w] = 1
        st.path[depth] = w
        ntouch = 0
        ok = 1
        if end != 0:
            for kk in range(st.ptr[end], st.ptr[end + 1]):
                u = st.adj[kk]
                if not st.visited[u]:
                    st.avail[u] -= 1
                    st.touched[tpos + ntouch] = u
                    ntouch += 1
                    if st.avail[u] < 2:
                        ok = 0
        if ok and _ham_dfs(st, depth + 1, w, tpos + ntouch):
            return 1
        for i in range(ntouch):
            st.avail[st.touched[tpos + i]] += 1
        st.visited[w] = 0
        if st.aborted:
            return 0
    return 0


def ham_search(int n, adj_ptr, adj, long long node_limit=-1):
    if n < 3:
        raise ValueError("ham_search needs at least 3 vertices")
    cdef HamState st
    cdef int m = len(adj)
    cdef int v, found
    st.n = n
    st.ptr = <int *> malloc((n + 1) * sizeof(int))
    st.adj = <int *> malloc((m + 1) * sizeof(int))
    st.visited = <char *> malloc(n * sizeof(char))
    st.avail = <int *> malloc(n * sizeof(int))
    st.path = <int *> malloc(n * sizeof(int))
    st.touched = <int *> malloc((m + 1) * sizeof(int))
    try:
        for v in range(n + 1):
            st.ptr[v] = adj_ptr[v]
        for v in range(m):
            st.adj[v] = adj[v]
        for v in range(n):
            st.visited[v] = 0
            st.avail[v] = st.ptr[v + 1] - st.ptr[v]
            st.path[v] = 0
        st.visited[0] = 1
        st.nodes = 0
        st.limit = node_limit
        st.aborted = 0
        found = _ham_dfs(&st, 1, 0, 0)
        cycle = [st.path[v] for v in range(n)] if found else None
        return cycle, st.nodes, not st.aborted
    finally:
        free(st.ptr)
        free(st.adj)
        free(st.visited)
        free(st.avail)
        free(st.path)
        free(st.touched)


cdef struct EulerState:
    int nv
    int ne
    int *vslots
    int *state
    char *linked
    int *other
    int *deg
    # undo log: kind (0 state, 1 linked, 2 other, 3 deg), index, old value
    int *ukind
    int *uidx
    int *uold
    int utop
    long long nodes
    long long limit
    long long count
    int aborted
    int stop


cdef inline void _push(EulerState *st, int kind, int idx, int old):
    st.ukind[st.utop] = kind
    st.uidx[st.utop] = idx
    st.uold[st.utop] = old
    st.utop += 1


cdef void _rollback(EulerState *st, int mark):
    cdef int k, i
    while st.utop > mark:
        st.utop -= 1
        k = st.ukind[st.utop]
        i = st.uidx[st.utop]
        if k == 0:
            st.state[i] = st.uold[st.utop]
        elif k == 1:
            st.linked[i] = <char> st.uold[st.utop]
        elif k == 2:
            st.other[i] = st.uold[st.utop]
        else:
            st.deg[i] = st.uold[st.utop]


cdef int _add_link(EulerState *st, int x, int y):
    cdef int ex = st.other[x] if st.deg[x] else x
    cdef int ey = st.other[y] if st.deg[y] else y
    _push(st, 3, x, st.deg[x])
    _push(st, 3, y, st.deg[y])
    st.deg[x] += 1
    st.deg[y] += 1
    if ex == y:
        return 1
    _push(st, 2, ex, st.other[ex])
    _push(st, 2, ey, st.other[ey])
    st.other[ex] = ey
    st.other[ey] = ex
    return 0


cdef int _apply(EulerState *st, int v, int *used, int nused, int *pairs, int npairs):
    cdef int i, j, s, e, u, k, nlinks, last_vertex
    cdef int links[16]
    for i in range(4):
        s = st.vslots[4 * v + i]
        e = s >> 1
        u = 0
        for j in range(nused):
            if used[j] == s:
                u = 1
        if st.state[e] < 0:
            _push(st, 0, e, -1)
            st.state[e] = u
        elif st.state[e] != u:
            return 0
    nlinks = 0
    for j in range(nused):
        e = used[j] >> 1
        if not st.linked[e]:
            _push(st, 1, e, 0)
            st.linked[e] = 1
            links[2 * nlinks] = 2 * e
            links[2 * nlinks + 1] = 2 * e + 1
            nlinks += 1
    for j in range(npairs):
        links[2 * nlinks] = pairs[2 * j]
        links[2 * nlinks + 1] = pairs[2 * j + 1]
        nlinks += 1
    last_vertex = v == st.nv - 1
    for k in range(nlinks):
        if _add_link(st, links[2 * k], links[2 * k + 1]):
            return last_vertex and k == nlinks - 1
    return not last_vertex


cdef object _euler_dfs(EulerState *st, int v, object callback, list result):
    cdef int a = st.vslots[4 * v]
    cdef int b = st.vslots[4 * v + 1]
    cdef int c = st.vslots[4 * v + 2]
    cdef int d = st.vslots[4 * v + 3]
    cdef int used[4]
    cdef int pairs[4]
    cdef int cfg, nused, npairs, mark, e
    for cfg in range(5):
        if cfg == 0:
            used[0] = a; used[1] = b; used[2] = c; used[3] = d
            nused = 4
            pairs[0] = a; pairs[1] = b; pairs[2] = c; pairs[3] = d
            npairs = 2
        else:
            used[0] = a if cfg <= 2 else b
            used[1] = c if cfg % 2 == 1 else d
            nused = 2
            pairs[0] = used[0]; pairs[1] = used[1]
            npairs = 1
        st.nodes += 1
        if st.limit >= 0 and st.nodes > st.limit:
            st.aborted = 1
            st.stop = 1
            return
        mark = st.utop
        if _apply(st, v, used, nused, pairs, npairs):
            if v == st.nv - 1:
                st.count += 1
                sol = [st.state[e] for e in range(st.ne)]
                result[0] = sol
                if callback is None or callback(sol):
                    st.stop = 1
            else:
                _euler_dfs(st, v + 1, callback, result)
        _rollback(st, mark)
        if st.stop:
            return


def euler_search(int nv, slot_vertex, vslots, fixed, callback=None, long long node_limit=-1):
    cdef EulerState st
    cdef int ne = len(fixed)
    cdef int i
    cdef int cap = 40 * nv + 64
    st.nv = nv
    st.ne = ne
    st.vslots = <int *> malloc((4 * nv + 1) * sizeof(int))
    st.state = <int *> malloc((ne + 1) * sizeof(int))
    st.linked = <char *> malloc((ne + 1) * sizeof(char))
    st.other = <int *> malloc((2 * ne + 1) * sizeof(int))
    st.deg = <int *> malloc((2 * ne + 1) * sizeof(int))
    st.ukind = <int *> malloc(cap * sizeof(int))
    st.uidx = <int *> malloc(cap * sizeof(int))
    st.uold = <int *> malloc(cap * sizeof(int))
    result = [None]
    try:
        for i in range(4 * nv):
            st.vslots[i] = vslots[i]
        for i in range(ne):
            st.state[i] = fixed[i]
            st.linked[i] = 0
        for i in range(2 * ne):
            st.other[i] = i
            st.deg[i] = 0
        st.utop = 0
        st.nodes = 0
        st.limit = node_limit
        st.count = 0
        st.aborted = 0
        st.stop = 0
        if nv:
            _euler_dfs(&st, 0, callback, result)
        return result[0], st.nodes, not st.aborted, st.count
    finally:
        free(st.vslots)
        free(st.state)
        free(st.linked)
        free(st.other)
        free(st.deg)
        free(st.ukind)
        free(st.uidx)
        free(st.uold)
