"""Morphing one triangulation into another through the standard triangulation.

Pipeline for each side: one flip to a 4-connected triangulation, a
Hamiltonian cycle ``H``, shrinking the dual diameter of the outerplane graph
inside ``H``, sweeping a vertex into a dominant one, and finally sweeping the
outerplane graph around it.  The second side is replayed backwards.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core.generate import standard
from .core.iso import is_isomorphic
from .core.triangulation import (
    Edge,
    PostconditionError,
    Triangulation,
    TriangulationError,
    edge_key,
    require_valid,
)
from .cover import four_connectify, has_separating_triangle
from .flips import FlipSequence, apply_flipset, blocking_edge, check_flipset, is_individually_flippable
from .hamiltonian import require_hamiltonian_cycle
from .outerplane import (
    C1,
    OuterplaneGraph,
    dual_tree,
    low_degree_independent_set,
    require_valid_outer,
    seen_chords,
    sweep_length,
    to_fan,
)

C2 = 2 / math.log2(54 / 53)


@dataclass(frozen=True)
class MorphConstants:
    c1: float = C1
    c2: float = C2


def part_one_bound(n: int) -> float:
    return 2 * C2 * math.log2(n)


def double_dominant_bound(n: int) -> float:
    return 1 + 2 * (C1 + C2) * math.log2(n)


def morph_bound(n: int) -> float:
    return 2 + 4 * (C1 + C2) * math.log2(n)


# -- empty cycles -----------------------------------------------------------


def _left_arc(T: Triangulation, prev: int, v: int, nxt: int) -> list[int]:
    """Neighbours of ``v`` strictly left of the path ``prev -> v -> nxt``."""
    out = []
    u = T.succ(v, nxt)
    while u != prev:
        out.append(u)
        u = T.succ(v, u)
    return out


@dataclass
class EmptyCycle:
    """Cycle oriented so that its interior lies on the left; the interior holds no vertex."""

    cycle: tuple[int, ...]
    chords: dict[Edge, str] = field(repr=False)

    @property
    def edges(self) -> set[Edge]:
        c = self.cycle
        return {edge_key(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}

    def internal(self) -> list[Edge]:
        return sorted(e for e, k in self.chords.items() if k == "internal")

    def external(self) -> list[Edge]:
        return sorted(e for e, k in self.chords.items() if k == "external")


def _region(T: Triangulation, cyc: Sequence[int]) -> tuple[set[int], list[list[int]]]:
    """Vertices strictly left of the cycle, and the left arc at each cycle vertex."""
    k = len(cyc)
    on = set(cyc)
    arcs = [_left_arc(T, cyc[i - 1], cyc[i], cyc[(i + 1) % k]) for i in range(k)]
    seen: set[int] = set()
    todo = [u for arc in arcs for u in arc if u not in on]
    seen.update(todo)
    while todo:
        u = todo.pop()
        for w in T.rotation[u]:
            if w not in on and w not in seen:
                seen.add(w)
                todo.append(w)
    return seen, arcs


def _check_cycle(T: Triangulation, cyc: Sequence[int]) -> None:
    k = len(cyc)
    if k < 3 or len(set(cyc)) != k:
        raise TriangulationError("not a simple cycle")
    for i in range(k):
        if not T.has_edge(cyc[i], cyc[(i + 1) % k]):
            raise TriangulationError(f"{cyc[i]}-{cyc[(i + 1) % k]} is not an edge")


def orient_cycle(T: Triangulation, cyc: Sequence[int]) -> tuple[int, ...]:
    """Orientation of ``cyc`` that leaves the outerface on the right."""
    cyc = tuple(cyc)
    _check_cycle(T, cyc)
    left, arcs = _region(T, cyc)
    a, b, c = T.outerface
    off = [x for x in (a, b, c) if x not in set(cyc)]
    if off:
        outer_left = off[0] in left
    else:
        i = cyc.index(a)
        k = len(cyc)
        if cyc[(i + 1) % k] == b:
            outer_left = True
        elif cyc[i - 1] == b:
            outer_left = False
        else:
            outer_left = b in arcs[i]
    if outer_left:
        cyc = (cyc[0],) + tuple(reversed(cyc[1:]))
    return cyc


def classify_chords(T: Triangulation, cyc: Sequence[int], oriented: bool = False) -> EmptyCycle:
    """Label every chord of an empty cycle internal or external.

    Unless ``oriented`` is set the cycle is first turned so that the
    outerface of ``T`` is outside.
    """
    cyc = tuple(cyc) if oriented else orient_cycle(T, cyc)
    _check_cycle(T, cyc)
    left, arcs = _region(T, cyc)
    if left:
        raise TriangulationError(f"cycle is not empty: {len(left)} vertices inside")
    on = set(cyc)
    k = len(cyc)
    chords: dict[Edge, str] = {}
    for i, v in enumerate(cyc):
        inner = set(arcs[i])
        for u in T.rotation[v]:
            if u == cyc[i - 1] or u == cyc[(i + 1) % k] or u not in on:
                continue
            chords[edge_key(u, v)] = "internal" if u in inner else "external"
    return EmptyCycle(cyc, chords)


def inner_subgraph(T: Triangulation, C: EmptyCycle) -> OuterplaneGraph:
    """The cycle with its internal chords, as a maximal outerplane graph."""
    return require_valid_outer(OuterplaneGraph(C.cycle, frozenset(C.internal())))


# -- flipping a set of internal chords --------------------------------------


def _face_of(T: Triangulation, u: int, v: int) -> frozenset[int]:
    return frozenset((u, v, T.third(u, v)))


def _colour_blockers(T: Triangulation, B: list[Edge]) -> list[int]:
    """Colours 0..2 for external chords so that no face holds two of one colour.

    The chords, as edges between their two faces, form a forest of maximum
    degree three; a breadth-first edge colouring of that forest does it.
    """
    ends = []
    inc: dict[frozenset[int], list[int]] = {}
    for i, (u, v) in enumerate(B):
        f, g = _face_of(T, u, v), _face_of(T, v, u)
        ends.append((f, g))
        inc.setdefault(f, []).append(i)
        inc.setdefault(g, []).append(i)
    col = [-1] * len(B)
    visited: set[frozenset[int]] = set()
    for root in inc:
        if root in visited:
            continue
        visited.add(root)
        q = deque([root])
        while q:
            f = q.popleft()
            used = {col[i] for i in inc[f] if col[i] >= 0}
            free = [c for c in range(3) if c not in used]
            for i in inc[f]:
                if col[i] >= 0:
                    continue
                if not free:
                    raise PostconditionError("blocking chords need more than three colours")
                col[i] = free.pop(0)
                g = ends[i][1] if ends[i][0] == f else ends[i][0]
                if g in visited:
                    raise PostconditionError("blocking chords do not form a forest")
                visited.add(g)
                q.append(g)
    return col


def flip_internal_matching(T: Triangulation, C: EmptyCycle, S: Iterable[Sequence[int]]
                           ) -> list[Edge]:
    """A flippable set keeping at least a third of ``S`` plus some external chords.

    ``S`` holds internal chords of ``C``, no two on a common face.  Chords
    that are blocked bring their blocking external chord along; only one
    colour class of blockers (and the chords they block) is kept so that no
    two kept blockers share a face.
    """
    S = sorted({edge_key(*e) for e in S})
    for e in S:
        if C.chords.get(e) != "internal":
            raise TriangulationError(f"{e} is not an internal chord")
    free = [e for e in S if is_individually_flippable(T, e)]
    stuck = [e for e in S if e not in set(free)]
    blocker = {}
    for e in stuck:
        b = blocking_edge(T, e)
        if b is None or C.chords.get(b) != "external":
            raise PostconditionError(f"blocker of {e} is not an external chord")
        blocker[e] = b
    B = sorted(set(blocker.values()))
    if len(B) != len(stuck):
        raise PostconditionError("two internal chords share a blocker")
    P: list[Edge] = []
    if B:
        col = _colour_blockers(T, B)
        classes = [[b for b, c in zip(B, col) if c == k] for k in range(3)]
        P = max(classes, key=len)
    Pset = set(P)
    Q = [e for e in stuck if blocker[e] in Pset]
    out = sorted(set(free) | Pset | set(Q))
    rep = check_flipset(T, out)
    if not rep.ok:
        raise PostconditionError(f"internal matching flip is not flippable: {rep}")
    kept = set(out) & set(S)
    if out and (set(out) & C.edges or 3 * len(kept) < len(S) or len(Pset) > len(kept)):
        raise PostconditionError("internal matching flip breaks its guarantees")
    return out


def _chord_at(O: OuterplaneGraph, v: int) -> Edge:
    return edge_key(v, O.adj[v][1])


# -- diameter reduction inside a Hamiltonian cycle --------------------------


@dataclass
class ReductionTrace:
    sizes: list[int] = field(default_factory=list)
    steps: list[int] = field(default_factory=list)
    removed: list[int] = field(default_factory=list)


def internal_diameter_reduce(T: Triangulation, H: Sequence[int], oriented: bool = False
                             ) -> tuple[FlipSequence, Triangulation, ReductionTrace]:
    """Shrink the dual diameter of the outerplane graph inside the cycle ``H``.

    Each round flips two sets produced by :func:`flip_internal_matching` so
    that a sizeable independent set of the inner outerplane graph drops to
    degree two, then cuts those ears off the cycle and continues with the
    shorter empty cycle.  Edges at vertices already cut off never change and
    the edges of ``H`` are never flipped.
    """
    require_valid(T)
    C = classify_chords(T, H, oriented)
    H = C.cycle
    Hedges = C.edges
    seq = FlipSequence(T)
    D = list(H)
    trace = ReductionTrace()
    frozen: set[Edge] = set()
    while len(D) > 3:
        cur = seq.end
        E = classify_chords(cur, D, oriented=True)
        O = inner_subgraph(cur, E)
        ind = low_degree_independent_set(O)
        S = [_chord_at(O, v) for v in sorted(ind.I3 | ind.I4)]
        Tset = flip_internal_matching(cur, E, S)
        done = set(Tset) & set(S)
        I3p = {v for v in ind.I3 if any(v in e for e in done)}
        I4p = {v for v in ind.I4 if any(v in e for e in done)}
        k = 0
        if Tset:
            seq.step(Tset)
            k += 1
        cur = seq.end
        E = classify_chords(cur, D, oriented=True)
        O = inner_subgraph(cur, E)
        S2 = [_chord_at(O, v) for v in sorted(I4p)]
        Tset2 = flip_internal_matching(cur, E, S2)
        done2 = set(Tset2) & set(S2)
        I4pp = {v for v in I4p if any(v in e for e in done2)}
        if Tset2:
            seq.step(Tset2)
            k += 1
        for St in (Tset, Tset2):
            if set(St) & Hedges:
                raise PostconditionError("a cycle edge was flipped")
        cur = seq.end
        if any(not cur.has_edge(*e) for e in frozen):
            raise PostconditionError("an edge at a removed vertex changed")
        E = classify_chords(cur, D, oriented=True)
        O = inner_subgraph(cur, E)
        L = [v for v in D if v in ind.I2 or v in I3p or v in I4pp]
        if not L or any(O.degree(v) != 2 for v in L):
            raise PostconditionError("no progress in the diameter reduction")
        L = L[:len(D) - 3]
        trace.sizes.append(len(D))
        trace.steps.append(k)
        trace.removed.append(len(L))
        for v in L:
            for u in O.adj[v]:
                frozen.add(edge_key(u, v))
        gone = set(L)
        D = [v for v in D if v not in gone]
    used = 0
    for m, k in zip(reversed(trace.sizes), reversed(trace.steps)):
        used += k
        if used > C2 * math.log2(m) + 1e-9:
            raise PostconditionError(f"{used} steps exceed the bound at cycle length {m}")
    X = seq.end
    diam = dual_tree(inner_subgraph(X, classify_chords(X, H, oriented=True))).diameter()
    if diam > C2 * math.log2(len(H)) + 1e-9:
        raise PostconditionError("inner dual diameter above the bound")
    return seq, X, trace


# -- making a vertex dominant -----------------------------------------------


def star_candidates(T: Triangulation, C: EmptyCycle) -> list[int]:
    """Vertices of the cycle with no external chord."""
    bad = {v for e in C.external() for v in e}
    return [v for v in C.cycle if v not in bad]


def choose_star_vertex(T: Triangulation, C: EmptyCycle) -> int:
    """Candidate whose sweep is shortest (ties by label)."""
    O = inner_subgraph(T, C)
    cands = star_candidates(T, C)
    if not cands:
        raise PostconditionError("every vertex has an external chord")
    return min(cands, key=lambda v: (sweep_length(O, v), v))


def star(T: Triangulation, H: Sequence[int], v: int | None = None, oriented: bool = False
         ) -> tuple[FlipSequence, Triangulation, int]:
    """Flip until ``v`` is adjacent to every vertex, all its edges inside ``H``."""
    require_valid(T)
    C = classify_chords(T, H, oriented)
    if v is None:
        v = choose_star_vertex(T, C)
    elif any(v in e for e in C.external()):
        raise TriangulationError(f"vertex {v} is incident to an external chord")
    k = dual_tree(inner_subgraph(T, C)).diameter()
    seq = FlipSequence(T)
    Hedges = C.edges
    while seq.end.degree(v) < T.n - 1:
        E = classify_chords(seq.end, C.cycle, oriented=True)
        S = seen_chords(inner_subgraph(seq.end, E), v)
        if not S or set(S) & Hedges:
            raise PostconditionError("star sweep is stuck")
        seq.step(S)
        if len(seq) > k:
            raise PostconditionError(f"star sweep exceeded {k} steps")
    E = classify_chords(seq.end, C.cycle, oriented=True)
    if any(v in e for e in E.external()):
        raise PostconditionError("dominant vertex has an external edge")
    return seq, seq.end, v


def dominant_vertices(T: Triangulation) -> list[int]:
    return [v for v in range(T.n) if T.degree(v) == T.n - 1]


def link_outerplane(T: Triangulation, v: int) -> OuterplaneGraph:
    """``T`` minus a dominant vertex ``v``, bounded by ``v``'s rotation."""
    if T.degree(v) != T.n - 1:
        raise TriangulationError(f"vertex {v} is not dominant")
    ring = T.rotation[v]
    bd = {edge_key(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))}
    chords = [e for e in T.edges() if v not in e and e not in bd]
    return require_valid_outer(OuterplaneGraph(ring, frozenset(chords)))


def part_two(T: Triangulation, v: int) -> FlipSequence:
    """Sweep the outerplane graph around a dominant vertex into a fan."""
    O = link_outerplane(T, v)
    oseq, _ = to_fan(O)
    seq = FlipSequence(T)
    for quads in oseq.steps:
        rec = seq.step([edge_key(a, b) for a, b, _, _ in quads])
        if rec is not None and sorted(rec.inserted) != sorted(edge_key(x, y) for _, _, x, y in quads):
            raise PostconditionError("outerplane flip differs inside the triangulation")
    if len(dominant_vertices(seq.end)) < 2:
        raise PostconditionError("sweep did not produce a second dominant vertex")
    return seq


@dataclass
class PipelineReport:
    connect_steps: int = 0
    reduce_steps: int = 0
    star_steps: int = 0
    sweep_steps: int = 0
    cycle: tuple[int, ...] = ()
    star_vertex: int = -1


def make_double_dominant(T: Triangulation) -> tuple[FlipSequence, PipelineReport]:
    """Flip ``T`` into a triangulation with two dominant vertices."""
    require_valid(T)
    n = T.n
    if n < 4:
        raise TriangulationError("needs at least four vertices")
    seq = FlipSequence(T)
    rep = PipelineReport()
    if len(dominant_vertices(T)) >= 2:
        return seq, rep
    if has_separating_triangle(T):
        S, _ = four_connectify(T)
        seq.step(S)
        rep.connect_steps = 1
    H = require_hamiltonian_cycle(seq.end)
    C = classify_chords(seq.end, H)
    rep.cycle = C.cycle
    s1, _, _ = internal_diameter_reduce(seq.end, C.cycle, oriented=True)
    seq.extend(s1)
    rep.reduce_steps = len(s1)
    s2, _, v = star(seq.end, C.cycle, oriented=True)
    seq.extend(s2)
    rep.star_steps = len(s2)
    rep.star_vertex = v
    s3 = part_two(seq.end, v)
    seq.extend(s3)
    rep.sweep_steps = len(s3)
    if len(seq) > double_dominant_bound(n) + 1e-9:
        raise PostconditionError(f"{len(seq)} steps exceed the bound")
    if is_isomorphic(seq.end, standard(n)) is None:
        raise PostconditionError("endpoint is not the standard triangulation")
    return seq, rep


def _small_morph(G1: Triangulation, G2: Triangulation, depth: int = 6) -> FlipSequence:
    """Breadth-first search over single flips, for the tiny cases."""
    start = G1
    prev: dict[Triangulation, tuple[Triangulation, Edge] | None] = {start: None}
    q = deque([(start, 0)])
    while q:
        T, d = q.popleft()
        if is_isomorphic(T, G2) is not None:
            path = []
            while prev[T] is not None:
                P, e = prev[T]
                path.append(e)
                T = P
            seq = FlipSequence(start)
            for e in reversed(path):
                seq.step([e])
            return seq
        if d == depth:
            continue
        for e in T.edges():
            if check_flipset(T, [e]).ok:
                U, _ = apply_flipset(T, [e])
                if U not in prev:
                    prev[U] = (T, e)
                    q.append((U, d + 1))
    raise PostconditionError("no flip path found")


def morph(G1: Triangulation, G2: Triangulation, reflect: bool = False) -> FlipSequence:
    """Flip sequence from ``G1`` to a relabelled copy of ``G2``."""
    require_valid(G1)
    require_valid(G2)
    if G1.n != G2.n:
        raise TriangulationError("triangulations have different sizes")
    n = G1.n
    if is_isomorphic(G1, G2, reflect) is not None:
        return FlipSequence(G1)
    if n <= 5:
        return _small_morph(G1, G2)
    seq, _ = make_double_dominant(G1)
    back, _ = make_double_dominant(G2)
    phi = is_isomorphic(back.end, seq.end)
    if phi is None:
        raise PostconditionError("the two standard triangulations do not match")
    for rec in reversed(back.records):
        seq.step(sorted(edge_key(phi[x], phi[y]) for x, y in rec.inserted))
    if seq.end != G2.relabel(phi):
        raise PostconditionError("reversed sequence did not reach the target")
    if len(seq) > morph_bound(n) + 1e-9:
        raise PostconditionError(f"{len(seq)} steps exceed the bound")
    return seq


__all__ = [
    "C1",
    "C2",
    "EmptyCycle",
    "MorphConstants",
    "PipelineReport",
    "classify_chords",
    "choose_star_vertex",
    "double_dominant_bound",
    "flip_internal_matching",
    "inner_subgraph",
    "internal_diameter_reduce",
    "link_outerplane",
    "make_double_dominant",
    "morph",
    "morph_bound",
    "orient_cycle",
    "part_two",
    "star",
    "star_candidates",
]
