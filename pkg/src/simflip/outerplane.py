"""Maximal outerplane graphs, their dual trees and simultaneous flips on them."""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .core.triangulation import Edge, PostconditionError, TriangulationError, edge_key

C1 = 2 / math.log2(6 / 5)


class OuterplaneError(TriangulationError):
    pass


@dataclass(frozen=True, eq=False)
class OuterplaneGraph:
    """A polygon triangulated by non-crossing chords.

    ``boundary`` is the cyclic vertex order around the outerface; vertex
    labels are arbitrary distinct integers.
    """

    boundary: tuple[int, ...]
    chords: frozenset[Edge]

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "chords", frozenset(edge_key(*e) for e in self.chords))

    @classmethod
    def from_edges(cls, boundary: Sequence[int], chords: Iterable[Sequence[int]]) -> "OuterplaneGraph":
        O = cls(tuple(boundary), frozenset(edge_key(*c) for c in chords))
        require_valid_outer(O)
        return O

    @property
    def n(self) -> int:
        return len(self.boundary)

    @cached_property
    def pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.boundary)}

    @cached_property
    def boundary_edges(self) -> frozenset[Edge]:
        b = self.boundary
        return frozenset(edge_key(b[i], b[(i + 1) % len(b)]) for i in range(len(b)))

    @cached_property
    def adj(self) -> dict[int, list[int]]:
        """Neighbours of each vertex sorted by boundary position after it."""
        n = self.n
        nb: dict[int, list[int]] = {v: [] for v in self.boundary}
        for u, v in self.boundary_edges | self.chords:
            nb[u].append(v)
            nb[v].append(u)
        p = self.pos
        for v, lst in nb.items():
            lst.sort(key=lambda u: (p[u] - p[v]) % n)
        return nb

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[Edge]:
        return sorted(self.boundary_edges | self.chords)

    def has_edge(self, u: int, v: int) -> bool:
        e = edge_key(u, v)
        return e in self.chords or e in self.boundary_edges

    @cached_property
    def faces(self) -> tuple[tuple[int, int, int], ...]:
        """Internal faces, each listed in boundary order."""
        if self.n < 3:
            return ()
        p = self.pos
        out = set()
        for v, lst in self.adj.items():
            for a, b in zip(lst, lst[1:]):
                out.add(tuple(sorted((v, a, b), key=p.__getitem__)))
        return tuple(sorted(out, key=lambda f: tuple(p[x] for x in f)))

    @cached_property
    def edge_faces(self) -> dict[Edge, list[int]]:
        ef: dict[Edge, list[int]] = {}
        for i, (a, b, c) in enumerate(self.faces):
            for e in (edge_key(a, b), edge_key(b, c), edge_key(a, c)):
                ef.setdefault(e, []).append(i)
        return ef

    def apexes(self, e) -> tuple[int, int]:
        """The two vertices seeing the chord ``e``."""
        e = edge_key(*e)
        if e not in self.chords:
            raise OuterplaneError(f"{e} is not an internal edge")
        f, g = self.edge_faces[e]
        (x,) = set(self.faces[f]) - set(e)
        (y,) = set(self.faces[g]) - set(e)
        return x, y

    def relabel(self, mapping) -> "OuterplaneGraph":
        return OuterplaneGraph(tuple(mapping[v] for v in self.boundary),
                               frozenset(edge_key(mapping[u], mapping[v]) for u, v in self.chords))

    def delete_ears(self, vs: Iterable[int]) -> "OuterplaneGraph":
        """Remove degree-two vertices; their two neighbours become boundary-adjacent."""
        vs = set(vs)
        chords = set(self.chords)
        for v in vs:
            if self.degree(v) != 2:
                raise OuterplaneError(f"vertex {v} does not have degree two")
            a, b = self.adj[v]
            chords.discard(edge_key(a, b))
        return OuterplaneGraph(tuple(v for v in self.boundary if v not in vs), frozenset(chords))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OuterplaneGraph):
            return NotImplemented
        return _cyclic_equal(self.boundary, other.boundary) and self.chords == other.chords

    def __hash__(self) -> int:
        return hash(self.chords)

    def __repr__(self) -> str:
        return f"OuterplaneGraph(n={self.n})"


def _cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = b.index(a[0])
    except ValueError:
        return False
    return all(a[i] == b[(k + i) % len(b)] for i in range(len(a)))


def validate_outer(O: OuterplaneGraph) -> list[str]:
    errs = []
    n = O.n
    if n < 3:
        return ["fewer than three vertices"]
    if len(set(O.boundary)) != n:
        return ["boundary repeats a vertex"]
    p = O.pos
    iv = []
    for u, v in O.chords:
        if u not in p or v not in p:
            errs.append(f"chord {u}-{v} leaves the boundary")
            continue
        if edge_key(u, v) in O.boundary_edges:
            errs.append(f"chord {u}-{v} duplicates a boundary edge")
            continue
        iv.append(tuple(sorted((p[u], p[v]))))
    if errs:
        return errs
    if len(iv) != n - 3:
        errs.append(f"{len(iv)} chords, expected {n - 3}")
    stack: list[int] = []
    for i, j in sorted(iv, key=lambda t: (t[0], -t[1])):
        while stack and stack[-1] <= i:
            stack.pop()
        if stack and j > stack[-1]:
            errs.append(f"chords cross at positions {i}-{j}")
            break
        stack.append(j)
    return errs


def require_valid_outer(O: OuterplaneGraph) -> OuterplaneGraph:
    errs = validate_outer(O)
    if errs:
        raise OuterplaneError("; ".join(errs))
    return O


# -- dual tree --------------------------------------------------------------


@dataclass
class DualTree:
    """One node per internal face; ``label[(i, j)]`` is the chord between them."""

    faces: tuple[tuple[int, int, int], ...]
    adj: list[list[int]]
    label: dict[tuple[int, int], Edge] = field(repr=False)

    @property
    def num_nodes(self) -> int:
        return len(self.faces)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self.adj)) for j in self.adj[i] if i < j]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def distances(self, sources: Iterable[int]) -> list[int]:
        dist = [-1] * len(self.adj)
        q = deque()
        for s in sources:
            dist[s] = 0
            q.append(s)
        while q:
            u = q.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def diameter(self) -> int:
        if not self.adj:
            return 0
        d = self.distances([0])
        far = max(range(len(d)), key=d.__getitem__)
        return max(self.distances([far]))

    def is_tree(self) -> bool:
        k = len(self.adj)
        return k > 0 and len(self.edges()) == k - 1 and min(self.distances([0])) >= 0


def dual_tree(O: OuterplaneGraph) -> DualTree:
    k = len(O.faces)
    adj: list[list[int]] = [[] for _ in range(k)]
    label = {}
    for e in sorted(O.chords):
        f, g = O.edge_faces[e]
        adj[f].append(g)
        adj[g].append(f)
        label[(f, g)] = label[(g, f)] = e
    return DualTree(O.faces, adj, label)


# -- flips ------------------------------------------------------------------


@dataclass
class OuterFlipCheck:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def check_outer_flipset(O: OuterplaneGraph, S: Iterable[Sequence[int]]) -> OuterFlipCheck:
    """A set of internal edges is flippable iff its dual edges form a matching.

    Boundary edges and non-edges raise OuterplaneError.
    """
    S = sorted({edge_key(*e) for e in S})
    owner: dict[int, Edge] = {}
    bad = []
    for e in S:
        if e in O.boundary_edges:
            raise OuterplaneError(f"{e} is a boundary edge")
        if e not in O.chords:
            raise OuterplaneError(f"{e} is not an edge")
        for f in O.edge_faces[e]:
            if f in owner:
                bad.append(f"{owner[f]} and {e} share face {O.faces[f]}")
            else:
                owner[f] = e
    return OuterFlipCheck(bad)


def apply_outer_flipset(O: OuterplaneGraph, S: Iterable[Sequence[int]]
                        ) -> tuple[OuterplaneGraph, tuple[tuple[int, int, int, int], ...]]:
    S = sorted({edge_key(*e) for e in S})
    rep = check_outer_flipset(O, S)
    if not rep.ok:
        raise OuterplaneError("not a flippable set: " + "; ".join(rep.violations))
    chords = set(O.chords)
    quads = []
    for e in S:
        x, y = O.apexes(e)
        chords.discard(e)
        chords.add(edge_key(x, y))
        quads.append((*e, *edge_key(x, y)))
    U = OuterplaneGraph(O.boundary, frozenset(chords))
    errs = validate_outer(U)
    if errs:
        raise PostconditionError("outer flip produced an invalid graph: " + "; ".join(errs))
    return U, tuple(quads)


@dataclass
class OuterSequence:
    start: OuterplaneGraph
    steps: list[tuple[tuple[int, int, int, int], ...]] = field(default_factory=list)
    end: OuterplaneGraph | None = None

    def __post_init__(self) -> None:
        if self.end is None:
            self.end = self.start

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def total_flipped(self) -> int:
        return sum(len(s) for s in self.steps)

    def step(self, S) -> None:
        S = list(S)
        if not S:
            return
        self.end, quads = apply_outer_flipset(self.end, S)
        self.steps.append(quads)

    def flipsets(self) -> list[list[Edge]]:
        return [[edge_key(v, w) for v, w, _, _ in q] for q in self.steps]

    def replay(self) -> OuterplaneGraph:
        O = self.start
        for S in self.flipsets():
            O, _ = apply_outer_flipset(O, S)
        return O

    def to_jsonl(self) -> str:
        lines = []
        for k, q in enumerate(self.steps):
            for v, w, x, y in q:
                lines.append(json.dumps({"step": k, "removed": [v, w], "inserted": [x, y]}))
        return "\n".join(lines) + ("\n" if lines else "")


def edge_colouring(D: DualTree) -> dict[tuple[int, int], int]:
    """Proper colouring of the dual tree's edges with colours 0, 1, 2."""
    col: dict[tuple[int, int], int] = {}
    if not D.adj:
        return col
    seen = [False] * len(D.adj)
    seen[0] = True
    q = deque([(0, -1)])
    while q:
        u, up = q.popleft()
        free = (c for c in range(3) if c != up)
        for w in D.adj[u]:
            if seen[w]:
                continue
            seen[w] = True
            c = next(free)
            col[(u, w)] = col[(w, u)] = c
            q.append((w, c))
    return col


def max_outer_flip(O: OuterplaneGraph) -> list[Edge]:
    """Largest colour class of a proper 3-edge-colouring of the dual tree."""
    require_valid_outer(O)
    if O.n < 4:
        raise OuterplaneError("needs at least four vertices")
    D = dual_tree(O)
    col = edge_colouring(D)
    classes: list[list[Edge]] = [[], [], []]
    for (i, j), c in col.items():
        if i < j:
            classes[c].append(D.label[(i, j)])
    best = sorted(max(classes, key=len))
    if 3 * len(best) < O.n - 3 or not check_outer_flipset(O, best).ok:
        raise PostconditionError("colour class too small or not a matching")
    return best


# -- independent sets -------------------------------------------------------


@dataclass
class LowDegreeIndependentSet:
    I: frozenset[int]
    by_degree: dict[int, frozenset[int]]

    @property
    def I2(self) -> frozenset[int]:
        return self.by_degree[2]

    @property
    def I3(self) -> frozenset[int]:
        return self.by_degree[3]

    @property
    def I4(self) -> frozenset[int]:
        return self.by_degree[4]


def low_degree_independent_set(O: OuterplaneGraph) -> LowDegreeIndependentSet:
    """Maximum independent set among vertices of degree at most four.

    Exact dynamic programme: every edge ``(i, j)`` of the polygon (as
    boundary positions, ``i < j``) cuts off the vertices strictly between
    ``i`` and ``j``; its table holds the best count there for each choice at
    ``i`` and ``j``.
    """
    n = O.n
    if n < 4:
        raise OuterplaneError("needs at least four vertices")
    b = O.boundary
    p = O.pos
    ok = [2 <= O.degree(v) <= 4 for v in b]
    apex: dict[tuple[int, int], int] = {}
    for f in O.faces:
        i, k, j = (p[x] for x in f)
        apex[(i, j)] = k
    table: dict[tuple[int, int], list[tuple[int, int]]] = {}

    def val(i: int, j: int, si: int, sj: int) -> int:
        return 0 if j - i == 1 else table[(i, j)][2 * si + sj][0]

    for i, j in sorted(apex, key=lambda t: t[1] - t[0]):
        k = apex[(i, j)]
        row = []
        for si in (0, 1):
            for sj in (0, 1):
                best = (val(i, k, si, 0) + val(k, j, 0, sj), 0)
                if ok[k] and not si and not sj:
                    alt = 1 + val(i, k, 0, 1) + val(k, j, 1, 0)
                    if alt > best[0]:
                        best = (alt, 1)
                row.append(best)
        table[(i, j)] = row
    best = None
    for s0 in (0, 1):
        for s1 in (0, 1):
            if (s0 and not ok[0]) or (s1 and not ok[n - 1]) or (s0 and s1):
                continue
            v = s0 + s1 + val(0, n - 1, s0, s1)
            if best is None or v > best[0]:
                best = (v, s0, s1)
    assert best is not None
    chosen = set()
    if best[1]:
        chosen.add(0)
    if best[2]:
        chosen.add(n - 1)
    todo = [(0, n - 1, best[1], best[2])]
    while todo:
        i, j, si, sj = todo.pop()
        if j - i == 1:
            continue
        k = apex[(i, j)]
        sk = table[(i, j)][2 * si + sj][1]
        if sk:
            chosen.add(k)
        todo.append((i, k, si, sk))
        todo.append((k, j, sk, sj))
    I = frozenset(b[i] for i in chosen)
    by = {d: frozenset(v for v in I if O.degree(v) == d) for d in (2, 3, 4)}
    if 6 * len(I) < n:
        raise PostconditionError(f"independent set of size {len(I)} is below n/6 for n={n}")
    for v in I:
        if any(u in I for u in O.adj[v]):
            raise PostconditionError("independent set is not independent")
    return LowDegreeIndependentSet(I, by)


# -- diameter reduction and the dominant sweep ------------------------------


def _internal_chord(O: OuterplaneGraph, v: int) -> Edge:
    a = O.adj[v]
    return edge_key(v, a[1])


def reduce_diameter(O: OuterplaneGraph) -> tuple[OuterSequence, OuterplaneGraph]:
    """Flip until the dual tree diameter is at most ``C1 * log2 n``.

    Each round turns a large low-degree independent set into degree-two
    vertices with at most two flips, then continues on the graph with those
    ears cut off.  Flips of the smaller graph are flips of the original
    because its internal chords keep both of their faces.
    """
    require_valid_outer(O)
    seq = OuterSequence(O)
    sub = O
    rounds: list[tuple[int, int]] = []
    while sub.n > 3:
        ind = low_degree_independent_set(sub)
        S = sorted(_internal_chord(sub, v) for v in ind.I3 | ind.I4)
        sub, _ = apply_outer_flipset(sub, S)
        seq.step(S)
        S2 = sorted(_internal_chord(sub, v) for v in ind.I4)
        sub, _ = apply_outer_flipset(sub, S2)
        seq.step(S2)
        ears = [v for v in sub.boundary if v in ind.I]
        if any(sub.degree(v) != 2 for v in ears):
            raise PostconditionError("independent vertices did not reach degree two")
        ears = ears[:sub.n - 3]
        rounds.append((sub.n, (len(S) > 0) + (len(S2) > 0)))
        sub = sub.delete_ears(ears)
    # the step bound holds level by level: 2 + C1 log2 m' <= C1 log2 m when m' <= 5m/6
    used = 0
    for m, k in reversed(rounds):
        used += k
        if used > C1 * math.log2(m) + 1e-9:
            raise PostconditionError(f"{used} steps exceed the bound at {m} vertices")
    X = seq.end
    if dual_tree(X).diameter() > C1 * math.log2(O.n) + 1e-9:
        raise PostconditionError("dual diameter above the bound")
    return seq, X


def star_distances(O: OuterplaneGraph, v: int) -> dict[tuple[int, int, int], int]:
    """Dual distance of every face from the faces incident to ``v``."""
    D = dual_tree(O)
    dist = D.distances([i for i, f in enumerate(D.faces) if v in f])
    return {f: dist[i] for i, f in enumerate(D.faces)}


def seen_chords(O: OuterplaneGraph, v: int) -> list[Edge]:
    out = []
    for f in O.faces:
        if v in f:
            a, b = (x for x in f if x != v)
            e = edge_key(a, b)
            if e in O.chords:
                out.append(e)
    return sorted(out)


def make_dominant(O: OuterplaneGraph, v: int) -> tuple[OuterSequence, OuterplaneGraph]:
    """Repeatedly flip every chord seen by ``v`` until ``v`` sees everything."""
    require_valid_outer(O)
    k = dual_tree(O).diameter()
    seq = OuterSequence(O)
    while seq.end.degree(v) < O.n - 1:
        S = seen_chords(seq.end, v)
        if not S:
            raise PostconditionError("no chord seen by the target vertex")
        seq.step(S)
        if len(seq) > k:
            raise PostconditionError(f"dominant sweep exceeded {k} steps")
    return seq, seq.end


def sweep_length(O: OuterplaneGraph, v: int) -> int:
    return max(star_distances(O, v).values(), default=0)


def best_dominant_vertex(O: OuterplaneGraph) -> int:
    """Vertex of a central face whose sweep is shortest (ties by label)."""
    D = dual_tree(O)
    if not D.adj:
        return O.boundary[0]
    d = D.distances([0])
    a = max(range(len(d)), key=d.__getitem__)
    da = D.distances([a])
    b = max(range(len(da)), key=da.__getitem__)
    db = D.distances([b])
    centre = min(range(len(d)), key=lambda i: (max(da[i], db[i]), i))
    return min(D.faces[centre], key=lambda v: (sweep_length(O, v), v))


def to_fan(O: OuterplaneGraph) -> tuple[OuterSequence, int]:
    """Reduce the diameter, then make a central vertex dominant."""
    seq, X = reduce_diameter(O)
    v = best_dominant_vertex(X)
    seq2, _ = make_dominant(X, v)
    for q in seq2.steps:
        seq.step([edge_key(a, b) for a, b, _, _ in q])
    return seq, v


def fan_map(A: OuterplaneGraph, va: int, B: OuterplaneGraph, vb: int) -> dict[int, int]:
    """Boundary-preserving map from a fan at ``va`` onto a fan at ``vb``."""
    ia = A.boundary.index(va)
    ib = B.boundary.index(vb)
    n = A.n
    return {A.boundary[(ia + i) % n]: B.boundary[(ib + i) % n] for i in range(n)}


def outer_morph(O1: OuterplaneGraph, O2: OuterplaneGraph) -> OuterSequence:
    """Flip ``O1`` into a graph isomorphic to ``O2`` through a fan."""
    require_valid_outer(O1)
    require_valid_outer(O2)
    if O1.n != O2.n:
        raise OuterplaneError("graphs have different sizes")
    seq1, v1 = to_fan(O1)
    seq2, v2 = to_fan(O2)
    phi = fan_map(seq2.end, v2, seq1.end, v1)
    if seq2.end.relabel(phi) != seq1.end:
        raise PostconditionError("fans do not match")
    for q in reversed(seq2.steps):
        seq1.step([edge_key(phi[x], phi[y]) for _, _, x, y in q])
    if seq1.end != O2.relabel(phi):
        raise PostconditionError("reversed sequence did not reach the target")
    bound = 4 * C1 * math.log2(O1.n)
    if len(seq1) > bound + 1e-9:
        raise PostconditionError(f"{len(seq1)} steps exceed {bound:.1f}")
    return seq1


# -- isomorphism ------------------------------------------------------------


def outer_isomorphism(O1: OuterplaneGraph, O2: OuterplaneGraph) -> dict[int, int] | None:
    """Boundary-preserving isomorphism (rotation or reflection), if any."""
    if O1.n != O2.n or len(O1.chords) != len(O2.chords):
        return None
    n = O1.n
    d1 = [O1.degree(v) for v in O1.boundary]
    b2 = O2.boundary
    for rev in (False, True):
        seq = list(reversed(b2)) if rev else list(b2)
        d2 = [O2.degree(v) for v in seq]
        for s in range(n):
            if any(d1[i] != d2[(s + i) % n] for i in range(n)):
                continue
            phi = {O1.boundary[i]: seq[(s + i) % n] for i in range(n)}
            if all(edge_key(phi[u], phi[v]) in O2.chords for u, v in O1.chords):
                return phi
    return None


# -- generators -------------------------------------------------------------


def fan(n: int) -> OuterplaneGraph:
    """The graph with vertex 0 dominant, boundary ``0, 1, ..., n-1``."""
    if n < 3:
        raise OuterplaneError("needs at least three vertices")
    return OuterplaneGraph(tuple(range(n)), frozenset((0, i) for i in range(2, n - 1)))


def zigzag(n: int) -> OuterplaneGraph:
    """Triangulated strip whose dual tree is a path alternating sides."""
    if n < 3:
        raise OuterplaneError("needs at least three vertices")
    lo, hi = 0, n - 1
    chords = []
    side = 0
    while hi - lo > 2:
        if side == 0:
            chords.append((lo + 1, hi))
            lo += 1
        else:
            chords.append((lo, hi - 1))
            hi -= 1
        side ^= 1
    return OuterplaneGraph.from_edges(range(n), chords)


def random_outerplane(n: int, seed: int = 0) -> OuterplaneGraph:
    """Random polygon triangulation by recursive random apex choice."""
    if n < 3:
        raise OuterplaneError("needs at least three vertices")
    rng = random.Random(seed)
    chords = []
    todo = [(0, n - 1)]
    while todo:
        i, j = todo.pop()
        if j - i < 2:
            continue
        k = rng.randrange(i + 1, j)
        for a, b in ((i, k), (k, j)):
            if b - a >= 2:
                chords.append((a, b))
                todo.append((a, b))
    return OuterplaneGraph.from_edges(range(n), chords)


def from_dual_tree(adj: Sequence[Sequence[int]], root: int = 0) -> OuterplaneGraph:
    """Outerplane graph whose dual tree is the given tree (max degree 3).

    The root becomes triangle ``(0, 1, 2)``; every other tree node becomes a
    new vertex glued onto the edge its parent hands down.
    """
    if any(len(a) > 3 for a in adj):
        raise OuterplaneError("dual trees have maximum degree three")
    faces = [(0, 1, 2)]
    nxt = 3
    work = [(a, b, kid, root) for (a, b), kid in zip(((0, 1), (1, 2), (2, 0)), adj[root])]
    while work:
        a, b, node, parent = work.pop()
        c = nxt
        nxt += 1
        faces.append((a, c, b))
        kids = [w for w in adj[node] if w != parent]
        for (x, y), w in zip(((a, c), (c, b)), kids):
            work.append((x, y, w, node))
    count: dict[Edge, int] = {}
    for f in faces:
        for u, v in ((f[0], f[1]), (f[1], f[2]), (f[0], f[2])):
            e = edge_key(u, v)
            count[e] = count.get(e, 0) + 1
    ring: dict[int, list[int]] = {}
    for (u, v), k in count.items():
        if k == 1:
            ring.setdefault(u, []).append(v)
            ring.setdefault(v, []).append(u)
    boundary = [0]
    prev = None
    while True:
        a, b = ring[boundary[-1]]
        w = b if a == prev else a
        if w == 0:
            break
        prev = boundary[-1]
        boundary.append(w)
    return OuterplaneGraph.from_edges(boundary, [e for e, k in count.items() if k == 2])


def tight_tree(depth: int) -> list[list[int]]:
    """Tree with all inner nodes of degree three and leaves at odd depth.

    Built along a spine: the root has one inner child, every node at even
    depth has two inner children, and one child at each odd depth below the
    first continues the spine until ``depth`` is reached.
    """
    if depth < 1 or depth % 2 == 0:
        raise OuterplaneError("depth must be odd and positive")
    adj: list[list[int]] = [[]]

    def add(parent: int) -> int:
        adj.append([parent])
        adj[parent].append(len(adj) - 1)
        return len(adj) - 1

    root = 0
    kids = [add(root) for _ in range(3)]
    spine = kids[0] if depth > 1 else None
    while spine is not None:
        d = _depth(adj, spine)
        evens = [add(spine), add(spine)]
        nxt = None
        for e in evens:
            leaves = [add(e), add(e)]
            if nxt is None and d + 2 < depth:
                nxt = leaves[0]
        spine = nxt
    return adj


def _depth(adj, v: int) -> int:
    dist = {0: 0}
    q = deque([0])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist[v]


def tight_tree_family(depth: int) -> OuterplaneGraph:
    """Outerplane graph whose largest flippable set has exactly (n-3)/3 edges."""
    return from_dual_tree(tight_tree(depth))


# -- text format ------------------------------------------------------------


def parse_outer(text: str) -> OuterplaneGraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0].split()[0] != "n":
        raise OuterplaneError("first line must be 'n <count>'")
    n = int(lines[0].split()[1])
    if len(lines) < 2:
        raise OuterplaneError("missing boundary line")
    boundary = [int(x) for x in lines[1].split()]
    if len(boundary) != n:
        raise OuterplaneError(f"boundary has {len(boundary)} vertices, header says {n}")
    chords = []
    for ln in lines[2:]:
        parts = ln.split()
        if len(parts) != 2:
            raise OuterplaneError(f"bad chord line: {ln!r}")
        chords.append((int(parts[0]), int(parts[1])))
    return OuterplaneGraph.from_edges(boundary, chords)


def serialize_outer(O: OuterplaneGraph) -> str:
    out = [f"n {O.n}", " ".join(map(str, O.boundary))]
    out += [f"{u} {v}" for u, v in sorted(O.chords)]
    return "\n".join(out) + "\n"


def read_outer(path) -> OuterplaneGraph:
    with open(path) as fh:
        return parse_outer(fh.read())


def write_outer(O: OuterplaneGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_outer(O))
