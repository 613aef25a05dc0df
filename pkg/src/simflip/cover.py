"""Triangle covers and flips into 4-connected triangulations.

A triangle cover is an edge set meeting every triangle (faces and separating
triangles alike) in exactly one edge.  Flipping the cover edges that lie on
separating triangles destroys all separating triangles at once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .coloring import four_colouring, tait_colouring
from .core.dual import dual
from .core.triangulation import (
    Edge,
    PostconditionError,
    Triangulation,
    TriangulationError,
    edge_key,
    require_valid,
)
from .flips import apply_flipset, check_flipset
from .hamiltonian import is_hamiltonian_cycle, require_hamiltonian_cycle  # noqa: F401
from .matching import max_matching
from .separating import (
    SeparatingTriangle,
    all_triangles,
    canonical_ordering,
    containment_order,
    separating_triangles,
)


@dataclass(frozen=True)
class TriangleCover:
    edges: frozenset[Edge]
    host: str


@dataclass(frozen=True)
class TaitColoring:
    classes: tuple[frozenset[Edge], frozenset[Edge], frozenset[Edge]]

    def colour(self, e) -> int:
        e = edge_key(*e)
        for i, c in enumerate(self.classes):
            if e in c:
                return i + 1
        raise KeyError(e)


def face_set(T: Triangulation, forced_edge=None) -> list[Edge]:
    """One edge per face, from a perfect matching of the dual graph.

    A forced edge is put in first and its two faces removed from the
    matching problem.
    """
    require_valid(T)
    D = dual(T)
    m = D.num_nodes
    adj = [[] for _ in range(m)]
    crossing: dict[tuple[int, int], Edge] = {}
    for e, (f, g) in D.edge_to_dual.items():
        adj[f].append(g)
        adj[g].append(f)
        crossing[(f, g)] = crossing[(g, f)] = e
    active = [True] * m
    S = []
    if forced_edge is not None:
        fe = edge_key(*forced_edge)
        if fe not in D.edge_to_dual:
            raise TriangulationError(f"{forced_edge} is not an edge")
        f, g = D.edge_to_dual[fe]
        active[f] = active[g] = False
        S.append(fe)
    mate = max_matching(adj, active)
    for f in range(m):
        if not active[f]:
            continue
        g = mate[f]
        if g < 0:
            raise PostconditionError("dual graph has no perfect matching with this edge")
        if f < g:
            S.append(crossing[(f, g)])
    if len(S) != T.n - 2:
        raise PostconditionError(f"face set has {len(S)} edges, expected {T.n - 2}")
    return sorted(S)


def is_triangle_cover(T: Triangulation, S) -> bool:
    S = {edge_key(*e) for e in S}
    for a, b, c in all_triangles(T):
        if ((a, b) in S) + ((a, c) in S) + ((b, c) in S) != 1:
            return False
    return True


def _pieces(T: Triangulation, R: list[SeparatingTriangle]):
    """Split along separating triangles.

    Piece ``j`` is triangle ``R[j]`` plus the vertices whose innermost
    enclosing triangle is ``R[j]``; piece ``-1`` holds the vertices enclosed
    by nothing.  Pieces sharing a triangle are adjacent in a tree.
    """
    owner = [None] * T.n
    for j, t in enumerate(R):
        for v in t.icom:
            if owner[v] is None:
                owner[v] = j
    owner = [-1 if o is None else o for o in owner]
    verts: dict[int, list[int]] = {-1: []}
    for j, t in enumerate(R):
        verts[j] = list(t.vertices)
    for v, o in enumerate(owner):
        verts[o].append(v)
    parent = {}
    for j, t in enumerate(R):
        cands = [owner[v] for v in t.vertices if owner[v] != -1]
        parent[j] = min(cands, key=lambda k: len(R[k].icom)) if cands else -1
    return owner, verts, parent


def triangle_set(T: Triangulation, R: list[SeparatingTriangle] | None = None,
                 forced_edge=None) -> TriangleCover:
    """Edge set with exactly one edge in every triangle of ``T``.

    Each piece (see ``_pieces``) is a triangulation in which the shared
    triangles are faces; the pieces are solved by face matchings in
    breadth-first order over the piece tree, each forced to agree with its
    already solved neighbour on their common triangle.
    """
    require_valid(T)
    if R is None:
        R = containment_order(T)
    owner, verts, parent = _pieces(T, R)
    nbrs: dict[int, list[int]] = {k: [] for k in verts}
    for j, p in parent.items():
        nbrs[j].append(p)
        nbrs[p].append(j)
    start = -1
    first_force = None
    if forced_edge is not None:
        u, v = edge_key(*forced_edge)
        if not T.has_edge(u, v):
            raise TriangulationError(f"{forced_edge} is not an edge")
        for k in (owner[u], owner[v]):
            vs = set(verts[k])
            if u in vs and v in vs:
                start = k
                break
        first_force = (u, v)
    S: set[Edge] = set()
    done = {start}
    queue = deque([(start, first_force)])
    while queue:
        k, force = queue.popleft()
        sub, old = T.induced(verts[k])
        new = {o: i for i, o in enumerate(old)}
        fe = None if force is None else (new[force[0]], new[force[1]])
        for a, b in face_set(sub, fe):
            S.add(edge_key(old[a], old[b]))
        for nb in nbrs[k]:
            if nb in done:
                continue
            done.add(nb)
            shared = R[nb].vertices if parent.get(nb) == k else R[k].vertices
            chosen = [e for e in SeparatingTriangle.edges_of(shared) if e in S]
            queue.append((nb, chosen[0]))
    return TriangleCover(frozenset(S), T.digest())


def _separating_edges(R: list[SeparatingTriangle]) -> set[Edge]:
    out: set[Edge] = set()
    for t in R:
        out.update(t.edges())
    return out


def four_connectify(T: Triangulation) -> tuple[list[Edge], Triangulation]:
    """One simultaneous flip that leaves no separating triangle."""
    require_valid(T)
    if T.n < 6:
        raise TriangulationError("triangulations with at most five vertices are never 4-connected")
    co = canonical_ordering(T)
    R = containment_order(T, co=co)
    if not R:
        return [], T
    cover = triangle_set(T, R)
    sep = _separating_edges(R)
    S = sorted(e for e in cover.edges if e in sep)
    U, _ = apply_flipset(T, S)
    if has_separating_triangle(U):
        raise PostconditionError("flip left a separating triangle behind")
    return S, U


def has_separating_triangle(T: Triangulation) -> bool:
    for a, b, c in all_triangles(T):
        if not (T.is_face((a, b, c)) or T.is_face((a, c, b))):
            return True
    return False


def tait_coloring(T: Triangulation) -> TaitColoring:
    tc = tait_colouring(T, four_colouring(T.rotation))
    classes = tuple(frozenset(e for e, c in tc.items() if c == i) for i in (1, 2, 3))
    col = TaitColoring(classes)  # type: ignore[arg-type]
    for a, b, c in all_triangles(T):
        if {tc[(a, b)], tc[(a, c)], tc[(b, c)]} != {1, 2, 3}:
            raise PostconditionError(f"triangle {(a, b, c)} is not trichromatic")
    return col


def three_disjoint_flips(T: Triangulation) -> tuple[list[Edge], list[Edge], list[Edge]]:
    """Three pairwise disjoint flip sets, each making ``T`` 4-connected."""
    require_valid(T)
    if T.n < 6:
        raise TriangulationError("triangulations with at most five vertices are never 4-connected")
    R = separating_triangles(T)
    sep = _separating_edges(R)
    tc = tait_coloring(T)
    out = tuple(sorted(e for e in tc.classes[i] if e in sep) for i in range(3))
    for S in out:
        rep = check_flipset(T, S)
        if not rep.ok:
            raise PostconditionError(f"colour class is not flippable: {rep}")
    return out  # type: ignore[return-value]


def hamiltonize(T: Triangulation):
    """Flip into a 4-connected triangulation and find a Hamiltonian cycle."""
    if T.n <= 5:
        return [], T, require_hamiltonian_cycle(T)
    S, U = four_connectify(T)
    return S, U, require_hamiltonian_cycle(U)
