"""Dual graph of a triangulation."""

from __future__ import annotations

from dataclasses import dataclass

from .triangulation import Edge, Face, Triangulation, edge_key, require_valid


@dataclass(frozen=True)
class DualGraph:
    """One node per face; two nodes adjacent when their faces share an edge.

    ``adjacency[f]`` lists ``(g, edge)`` pairs: the neighbouring face and the
    primal edge crossed.  ``edge_to_dual`` maps each primal edge to the pair
    of face indices on its two sides.
    """

    faces: tuple[Face, ...]
    adjacency: tuple[tuple[tuple[int, Edge], ...], ...]
    edge_to_dual: dict[Edge, tuple[int, int]]

    @property
    def num_nodes(self) -> int:
        return len(self.faces)

    def neighbors(self, f: int) -> list[int]:
        return [g for g, _ in self.adjacency[f]]

    def edges(self) -> list[tuple[int, int]]:
        return sorted(edge_key(*fg) for fg in self.edge_to_dual.values())

    def is_cubic(self) -> bool:
        return all(len(a) == 3 for a in self.adjacency)


def face_index(T: Triangulation) -> dict[tuple[int, int], int]:
    """Map each directed edge ``(u, v)`` to the index of the face on its left."""
    idx: dict[tuple[int, int], int] = {}
    for i, (a, b, c) in enumerate(T.face_list):
        idx[(a, b)] = i
        idx[(b, c)] = i
        idx[(c, a)] = i
    return idx


def dual(T: Triangulation) -> DualGraph:
    require_valid(T)
    faces = T.face_list
    left = face_index(T)
    adj: list[list[tuple[int, Edge]]] = [[] for _ in faces]
    e2d: dict[Edge, tuple[int, int]] = {}
    for u, v in T.edge_list:
        f, g = left[(u, v)], left[(v, u)]
        e2d[(u, v)] = (f, g)
        adj[f].append((g, (u, v)))
        adj[g].append((f, (u, v)))
    return DualGraph(faces, tuple(tuple(a) for a in adj), e2d)


def dual_bridges(D: DualGraph) -> list[tuple[int, int]]:
    """Bridges of the dual (as node pairs), by iterative lowpoint DFS."""
    n = D.num_nodes
    disc = [-1] * n
    low = [0] * n
    out = []
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        # stack of (node, parent edge key, iterator index)
        stack = [(root, None, 0)]
        while stack:
            v, pe, i = stack[-1]
            adj = D.adjacency[v]
            if i < len(adj):
                stack[-1] = (v, pe, i + 1)
                w, e = adj[i]
                if e == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.append(edge_key(p, v))
    return out
