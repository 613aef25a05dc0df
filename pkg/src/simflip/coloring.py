"""Proper vertex 4-colourings of planar graphs and the derived Tait colouring."""

from __future__ import annotations

from typing import Sequence

from .core.triangulation import Triangulation, edge_key, require_valid


def _smallest_last(adj: Sequence[Sequence[int]]) -> list[int]:
    n = len(adj)
    d = [len(a) for a in adj]
    buckets: dict[int, set[int]] = {}
    for v in range(n):
        buckets.setdefault(d[v], set()).add(v)
    gone = [False] * n
    out = []
    k = 0
    for _ in range(n):
        while not buckets.get(k):
            k += 1
        v = min(buckets[k])
        buckets[k].discard(v)
        gone[v] = True
        out.append(v)
        for u in adj[v]:
            if not gone[u]:
                buckets[d[u]].discard(u)
                d[u] -= 1
                buckets.setdefault(d[u], set()).add(u)
        k = max(0, k - 1)
    out.reverse()
    return out


def _kempe_chain(adj, col, start: int, c1: int, c2: int) -> set[int]:
    chain = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in chain and col[y] in (c1, c2):
                chain.add(y)
                stack.append(y)
    return chain


def _free_a_colour(adj, col, v: int) -> int | None:
    nbs = [u for u in adj[v] if col[u] >= 0]
    for c1 in range(4):
        for c2 in range(4):
            if c1 == c2:
                continue
            for u in nbs:
                if col[u] != c1:
                    continue
                chain = _kempe_chain(adj, col, u, c1, c2)
                if any(col[w] == c2 and w in chain for w in nbs):
                    continue
                # swapping this chain is not enough if another c1 neighbour
                # lies outside it; try the swap and check
                for w in chain:
                    col[w] = c2 if col[w] == c1 else c1
                used = {col[w] for w in nbs}
                free = [c for c in range(4) if c not in used]
                if free:
                    return free[0]
                for w in chain:
                    col[w] = c2 if col[w] == c1 else c1
    return None


def _dsatur_backtrack(adj, k: int = 4, budget: int = 2_000_000) -> list[int] | None:
    n = len(adj)
    col = [-1] * n
    steps = [0]

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if col[v] < 0:
                sat = len({col[u] for u in adj[v] if col[u] >= 0})
                kk = (sat, len(adj[v]), -v)
                if key is None or kk > key:
                    best, key = v, kk
        return best

    def rec(left: int) -> bool:
        if left == 0:
            return True
        steps[0] += 1
        if steps[0] > budget:
            return False
        v = pick()
        used = {col[u] for u in adj[v]}
        for c in range(k):
            if c not in used:
                col[v] = c
                if rec(left - 1):
                    return True
        col[v] = -1
        return False

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        return col if rec(n) else None
    finally:
        sys.setrecursionlimit(old)


def four_colouring(adj: Sequence[Sequence[int]]) -> list[int]:
    """Colours ``0..3`` for a planar graph given by adjacency lists."""
    col = [-1] * len(adj)
    for v in _smallest_last(adj):
        used = {col[u] for u in adj[v] if col[u] >= 0}
        free = [c for c in range(4) if c not in used]
        if free:
            col[v] = free[0]
            continue
        c = _free_a_colour(adj, col, v)
        if c is None:
            exact = _dsatur_backtrack(adj)
            if exact is None:
                raise RuntimeError("4-colouring search exhausted its budget")
            return exact
        col[v] = c
    return col


def is_proper(adj, col, k: int = 4) -> bool:
    return all(0 <= col[v] < k for v in range(len(adj))) and all(
        col[v] != col[u] for v in range(len(adj)) for u in adj[v])


def tait_colouring(T: Triangulation, col: Sequence[int] | None = None) -> dict[tuple[int, int], int]:
    """Edge classes 1..3 such that every triangle uses each class once.

    An edge gets the class ``col[u] ^ col[v]``, which pairs colour classes
    {0,1}/{2,3}, {0,2}/{1,3} and {0,3}/{1,2}.
    """
    require_valid(T)
    if col is None:
        col = four_colouring(T.rotation)
    return {(u, v): col[u] ^ col[v] for u, v in T.edge_list}


def tait_classes(tc: dict[tuple[int, int], int]) -> tuple[list, list, list]:
    out: tuple[list, list, list] = ([], [], [])
    for e, c in sorted(tc.items()):
        out[c - 1].append(edge_key(*e))
    return out
