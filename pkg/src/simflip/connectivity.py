"""Vertex connectivity checks by exhaustive cut search (small graphs)."""

from __future__ import annotations

from itertools import combinations

from .core.triangulation import Triangulation


def _articulation_free(adj, alive: list[bool]) -> bool:
    """True when the alive part is connected and has no cut vertex."""
    verts = [v for v in range(len(adj)) if alive[v]]
    if len(verts) <= 2:
        return True
    root = verts[0]
    disc = {root: 0}
    low = {root: 0}
    t = 1
    root_children = 0
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, p, it = stack[-1]
        advanced = False
        for w in it:
            if not alive[w] or w == p:
                continue
            if w not in disc:
                disc[w] = low[w] = t
                t += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(adj[w])))
                advanced = True
                break
            low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if u != root and low[v] >= disc[u]:
                return False
    return len(disc) == len(verts) and root_children <= 1


def is_k_connected(T: Triangulation, k: int) -> bool:
    """Exhaustive check: no set of ``k - 1`` vertices disconnects the graph."""
    n = T.n
    if n <= k:
        return False
    adj = T.rotation
    if min(len(r) for r in adj) < k:
        return False
    if k <= 1:
        return _articulation_free(adj, [True] * n) or n <= 2
    for cut in combinations(range(n), k - 2):
        alive = [True] * n
        for v in cut:
            alive[v] = False
        if not _articulation_free(adj, alive):
            return False
    return True


def is_four_connected(T: Triangulation) -> bool:
    return is_k_connected(T, 4)


def is_five_connected(T: Triangulation) -> bool:
    return is_k_connected(T, 5)
