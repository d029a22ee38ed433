"""Pure-Python hot kernels.

These are the reference implementations of the two inner loops that dominate
runtime: augmenting-path max flow and the backtracking congestion-bounded
path search.  ``_speedups.pyx`` implements the same functions with the same
signatures and must produce identical results.
"""

from collections import deque

FOUND = 0
INFEASIBLE = 1
CAP_EXCEEDED = 2


def max_flow(num_nodes, tails, heads, caps, s, t, limit=-1):
    """Edmonds-Karp max flow from ``s`` to ``t``.

    Stops early once the flow value reaches ``limit`` (when ``limit >= 0``).
    Returns ``(value, flows, reach)`` where ``flows[e]`` is the flow on input
    arc ``e`` and ``reach[x]`` tells whether node ``x`` is reachable from
    ``s`` in the final residual graph.
    """
    m = len(tails)
    to = [0] * (2 * m)
    res = [0] * (2 * m)
    adj = [[] for _ in range(num_nodes)]
    for e in range(m):
        u = tails[e]
        v = heads[e]
        to[2 * e] = v
        res[2 * e] = caps[e]
        adj[u].append(2 * e)
        to[2 * e + 1] = u
        adj[v].append(2 * e + 1)

    value = 0
    while limit < 0 or value < limit:
        via = [-1] * num_nodes
        seen = [False] * num_nodes
        seen[s] = True
        queue = deque([s])
        while queue and not seen[t]:
            x = queue.popleft()
            for a in adj[x]:
                y = to[a]
                if res[a] > 0 and not seen[y]:
                    seen[y] = True
                    via[y] = a
                    queue.append(y)
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

    flows = [caps[e] - res[2 * e] for e in range(m)]
    reach = [False] * num_nodes
    reach[s] = True
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for a in adj[x]:
            y = to[a]
            if res[a] > 0 and not reach[y]:
                reach[y] = True
                queue.append(y)
    return value, flows, reach


class _CapHit(Exception):
    pass


def ddp_search(n, out_ptr, out_idx, in_ptr, in_idx, sources, sinks, budget, node_cap):
    """Exhaustive search for paths s_i -> t_i with per-vertex load <= budget.

    Pairs are routed in the given order, one path at a time.  A vertex is
    usable for the current path when it is not already on it and its load
    plus the terminal slots reserved by later pairs stays below ``budget``.
    Before each extension a reverse BFS from t_i over usable vertices prunes
    dead branches and orders candidates by distance, then index.

    Returns ``(status, paths, nodes)``.
    """
    k = len(sources)
    load = [0] * n
    reserve = [0] * n
    on_path = [False] * n
    for j in range(k):
        reserve[sources[j]] += 1
        reserve[sinks[j]] += 1
    paths = [[] for _ in range(k)]
    nodes = 0

    def usable(w):
        return not on_path[w] and load[w] + reserve[w] < budget

    def distances_to(t):
        dist = [-1] * n
        if not usable(t):
            return dist
        dist[t] = 0
        queue = deque([t])
        while queue:
            x = queue.popleft()
            for p in range(in_ptr[x], in_ptr[x + 1]):
                w = in_idx[p]
                if dist[w] < 0 and usable(w):
                    dist[w] = dist[x] + 1
                    queue.append(w)
        return dist

    def extend(i, head):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise _CapHit
        t = sinks[i]
        if head == t:
            for w in paths[i]:
                on_path[w] = False
            if start(i + 1):
                return True
            for w in paths[i]:
                on_path[w] = True
            return False
        dist = distances_to(t)
        cands = sorted(
            (dist[w], w) for w in out_idx[out_ptr[head]:out_ptr[head + 1]] if dist[w] >= 0
        )
        for _, w in cands:
            on_path[w] = True
            load[w] += 1
            paths[i].append(w)
            if extend(i, w):
                return True
            paths[i].pop()
            load[w] -= 1
            on_path[w] = False
        return False

    def start(i):
        if i == k:
            return True
        s = sources[i]
        t = sinks[i]
        reserve[s] -= 1
        reserve[t] -= 1
        if load[s] + reserve[s] < budget:
            on_path[s] = True
            load[s] += 1
            paths[i].append(s)
            if extend(i, s):
                return True
            paths[i].pop()
            load[s] -= 1
            on_path[s] = False
        reserve[s] += 1
        reserve[t] += 1
        return False

    try:
        found = start(0)
    except _CapHit:
        return CAP_EXCEEDED, None, nodes
    if found:
        return FOUND, [list(p) for p in paths], nodes
    return INFEASIBLE, None, nodes
