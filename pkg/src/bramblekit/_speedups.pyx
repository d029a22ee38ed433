# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pure``; same signatures, same results."""

from libc.stdlib cimport malloc, free, calloc

FOUND = 0
INFEASIBLE = 1
CAP_EXCEEDED = 2


cdef int* _ints(seq, Py_ssize_t size) except NULL:
    cdef int* buf = <int*> malloc((size if size > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(size):
        buf[i] = seq[i]
    return buf


def max_flow(int num_nodes, tails, heads, caps, int s, int t, long limit=-1):
    cdef Py_ssize_t m = len(tails)
    cdef int* to = <int*> malloc((2 * m + 1) * sizeof(int))
    cdef long* res = <long*> calloc(2 * m + 1, sizeof(long))
    cdef int* deg = <int*> calloc(num_nodes + 1, sizeof(int))
    cdef int* ptr = <int*> calloc(num_nodes + 1, sizeof(int))
    cdef int* arcs = <int*> malloc((2 * m + 1) * sizeof(int))
    cdef int* via = <int*> malloc(num_nodes * sizeof(int))
    cdef char* seen = <char*> malloc(num_nodes * sizeof(char))
    cdef int* queue = <int*> malloc(num_nodes * sizeof(int))
    cdef long* cap0 = <long*> malloc((m + 1) * sizeof(long))
    cdef Py_ssize_t e
    cdef int u, v, x, y, a, p, qh, qt
    cdef long value = 0, push
    if not (to and res and deg and ptr and arcs and via and seen and queue and cap0):
        raise MemoryError()
    try:
        for e in range(m):
            u = tails[e]
            v = heads[e]
            cap0[e] = caps[e]
            to[2 * e] = v
            res[2 * e] = cap0[e]
            to[2 * e + 1] = u
            deg[u] += 1
            deg[v] += 1
        # CSR over residual arcs, preserving insertion order per node
        for x in range(num_nodes):
            ptr[x + 1] = ptr[x] + deg[x]
            deg[x] = ptr[x]
        for e in range(m):
            u = to[2 * e + 1]
            v = to[2 * e]
            arcs[deg[u]] = 2 * e
            deg[u] += 1
            arcs[deg[v]] = 2 * e + 1
            deg[v] += 1

        while limit < 0 or value < limit:
            for x in range(num_nodes):
                seen[x] = 0
                via[x] = -1
            seen[s] = 1
            qh = 0
            qt = 0
            queue[qt] = s
            qt += 1
            while qh < qt and not seen[t]:
                x = queue[qh]
                qh += 1
                for p in range(ptr[x], ptr[x + 1]):
                    a = arcs[p]
                    y = to[a]
                    if res[a] > 0 and not seen[y]:
                        seen[y] = 1
                        via[y] = a
                        queue[qt] = y
                        qt += 1
            if not seen[t]:
                break
            push = -1
            y = t
            while y != s:
                a = via[y]
                if push < 0 or res[a] < push:
                    push = res[a]
                y = to[a ^ 1]
            if limit >= 0 and push > limit - value:
                push = limit - value
            y = t
            while y != s:
                a = via[y]
                res[a] -= push
                res[a ^ 1] += push
                y = to[a ^ 1]
            value += push

        flows = [cap0[e] - res[2 * e] for e in range(m)]
        for x in range(num_nodes):
            seen[x] = 0
        seen[s] = 1
        qh = 0
        qt = 0
        queue[qt] = s
        qt += 1
        while qh < qt:
            x = queue[qh]
            qh += 1
            for p in range(ptr[x], ptr[x + 1]):
                a = arcs[p]
                y = to[a]
                if res[a] > 0 and not seen[y]:
                    seen[y] = 1
                    queue[qt] = y
                    qt += 1
        reach = [seen[x] != 0 for x in range(num_nodes)]
        return value, flows, reach
    finally:
        free(to); free(res); free(deg); free(ptr); free(arcs)
        free(via); free(seen); free(queue); free(cap0)


cdef struct Search:
    int n
    int k
    int budget
    long nodes
    long node_cap
    int* out_ptr
    int* out_idx
    int* in_ptr
    int* in_idx
    int* sources
    int* sinks
    int* load
    int* reserve
    char* on_path
    int* dist
    int* queue
    int* paths      # k rows of n entries
    int* path_len


cdef inline bint _usable(Search* st, int w) noexcept nogil:
    return not st.on_path[w] and st.load[w] + st.reserve[w] < st.budget


cdef void _distances_to(Search* st, int t) noexcept nogil:
    cdef int x, w, p, qh = 0, qt = 0
    for x in range(st.n):
        st.dist[x] = -1
    if not _usable(st, t):
        return
    st.dist[t] = 0
    st.queue[qt] = t
    qt += 1
    while qh < qt:
        x = st.queue[qh]
        qh += 1
        for p in range(st.in_ptr[x], st.in_ptr[x + 1]):
            w = st.in_idx[p]
            if st.dist[w] < 0 and _usable(st, w):
                st.dist[w] = st.dist[x] + 1
                st.queue[qt] = w
                qt += 1


cdef inline void _push(Search* st, int i, int w) noexcept nogil:
    st.on_path[w] = 1
    st.load[w] += 1
    st.paths[i * st.n + st.path_len[i]] = w
    st.path_len[i] += 1


cdef inline void _pop(Search* st, int i, int w) noexcept nogil:
    st.path_len[i] -= 1
    st.load[w] -= 1
    st.on_path[w] = 0



cdef int _extend(Search* st, int i, int head) noexcept nogil:
    # 1 = found, 0 = dead end, -1 = node cap hit, -2 = out of memory
    cdef int t, w, p, deg, cnt, j, r
    cdef long key
    cdef long* keys
    st.nodes += 1
    if st.nodes > st.node_cap:
        return -1
    t = st.sinks[i]
    if head == t:
        for j in range(st.path_len[i]):
            st.on_path[st.paths[i * st.n + j]] = 0
        r = _start(st, i + 1)
        if r != 0:
            return r
        for j in range(st.path_len[i]):
            st.on_path[st.paths[i * st.n + j]] = 1
        return 0
    _distances_to(st, t)
    deg = st.out_ptr[head + 1] - st.out_ptr[head]
    keys = <long*> malloc((deg if deg > 0 else 1) * sizeof(long))
    if keys == NULL:
        return -2
    cnt = 0
    for p in range(st.out_ptr[head], st.out_ptr[head + 1]):
        w = st.out_idx[p]
        if st.dist[w] >= 0:
            key = <long> st.dist[w] * (st.n + 1) + w
            j = cnt
            while j > 0 and keys[j - 1] > key:
                keys[j] = keys[j - 1]
                j -= 1
            keys[j] = key
            cnt += 1
    r = 0
    for j in range(cnt):
        w = <int> (keys[j] % (st.n + 1))
        _push(st, i, w)
        r = _extend(st, i, w)
        if r != 0:
            break
        _pop(st, i, w)
    free(keys)
    return r


cdef int _start(Search* st, int i) noexcept nogil:
    cdef int s, t, r
    if i == st.k:
        return 1
    s = st.sources[i]
    t = st.sinks[i]
    st.reserve[s] -= 1
    st.reserve[t] -= 1
    if st.load[s] + st.reserve[s] < st.budget:
        _push(st, i, s)
        r = _extend(st, i, s)
        if r != 0:
            return r
        _pop(st, i, s)
    st.reserve[s] += 1
    st.reserve[t] += 1
    return 0


def ddp_search(int n, out_ptr, out_idx, in_ptr, in_idx, sources, sinks, int budget, long node_cap):
    cdef Search st
    cdef int j, r
    st.n = n
    st.k = len(sources)
    st.budget = budget
    st.nodes = 0
    st.node_cap = node_cap
    st.out_ptr = _ints(out_ptr, n + 1)
    st.out_idx = _ints(out_idx, len(out_idx))
    st.in_ptr = _ints(in_ptr, n + 1)
    st.in_idx = _ints(in_idx, len(in_idx))
    st.sources = _ints(sources, st.k)
    st.sinks = _ints(sinks, st.k)
    st.load = <int*> calloc(n + 1, sizeof(int))
    st.reserve = <int*> calloc(n + 1, sizeof(int))
    st.on_path = <char*> calloc(n + 1, sizeof(char))
    st.dist = <int*> malloc((n + 1) * sizeof(int))
    st.queue = <int*> malloc((n + 1) * sizeof(int))
    st.paths = <int*> malloc((st.k * n + 1) * sizeof(int))
    st.path_len = <int*> calloc(st.k + 1, sizeof(int))
    try:
        if not (st.load and st.reserve and st.on_path and st.dist and st.queue
                and st.paths and st.path_len):
            raise MemoryError()
        for j in range(st.k):
            st.reserve[st.sources[j]] += 1
            st.reserve[st.sinks[j]] += 1
        with nogil:
            r = _start(&st, 0)
        if r == -2:
            raise MemoryError()
        if r == -1:
            return CAP_EXCEEDED, None, st.nodes
        if r == 1:
            paths = [[st.paths[j * n + p] for p in range(st.path_len[j])] for j in range(st.k)]
            return FOUND, paths, st.nodes
        return INFEASIBLE, None, st.nodes
    finally:
        free(st.out_ptr); free(st.out_idx); free(st.in_ptr); free(st.in_idx)
        free(st.sources); free(st.sinks); free(st.load); free(st.reserve)
        free(st.on_path); free(st.dist); free(st.queue); free(st.paths); free(st.path_len)
