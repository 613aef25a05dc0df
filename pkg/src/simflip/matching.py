"""Maximum cardinality matching in general graphs (Edmonds' blossom method)."""

from __future__ import annotations

from collections import deque
from typing import Sequence


def _greedy(adj: Sequence[Sequence[int]], mate: list[int]) -> None:
    # match low-degree vertices first; leaves fewer augmentations to do
    order = sorted(range(len(adj)), key=lambda v: len(adj[v]))
    for v in order:
        if mate[v] != -1:
            continue
        for w in adj[v]:
            if mate[w] == -1 and w != v:
                mate[v] = w
                mate[w] = v
                break


def _augment_from(root: int, adj, mate: list[int]) -> bool:
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, inb: set) -> None:
        while base[v] != b:
            inb.add(base[v])
            inb.add(base[mate[v]])
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                inb: set[int] = set()
                mark(v, cur, to, inb)
                mark(to, cur, v, inb)
                for i in range(n):
                    if base[i] in inb:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    # flip the alternating path back to the root
                    while to != -1:
                        pv = parent[to]
                        nx = mate[pv]
                        mate[to] = pv
                        mate[pv] = to
                        to = nx
                    return True
                used[mate[to]] = True
                q.append(mate[to])
    return False


def max_matching(adj: Sequence[Sequence[int]], active: Sequence[bool] | None = None) -> list[int]:
    """``mate[v]`` for a maximum matching (``-1`` when unmatched).

    Vertices with ``active[v]`` false are ignored together with their edges.
    """
    n = len(adj)
    if active is not None:
        adj = [[w for w in adj[v] if active[w]] if active[v] else [] for v in range(n)]
    mate = [-1] * n
    _greedy(adj, mate)
    for v in range(n):
        if mate[v] == -1 and adj[v] and (active is None or active[v]):
            _augment_from(v, adj, mate)
    return mate


def matching_edges(mate: Sequence[int]) -> list[tuple[int, int]]:
    return [(v, w) for v, w in enumerate(mate) if w > v]
