"""Large simultaneous flips: a constructive (n-2)/3 bound and an exact search."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .connectivity import is_five_connected
from .core.triangulation import (
    Edge,
    PostconditionError,
    Triangulation,
    TriangulationError,
    edge_key,
    require_valid,
    validate,
)
from .cover import TaitColoring, tait_coloring, triangle_set
from .flips import bad_pair_partners, blocking_edge, check_flipset, scan_flipset, seers
from .separating import all_triangles


# -- good and bad edges -----------------------------------------------------


@dataclass
class EdgeClassification:
    good: frozenset[Edge]
    bad: dict[Edge, list[Edge]]

    def is_bad(self, e) -> bool:
        return edge_key(*e) in self.bad


def classify_edges(T: Triangulation) -> EdgeClassification:
    """Split edges by whether they belong to a bad pair.

    Also checks that a face whose three edges are all bad has a vertex of
    degree three or four.
    """
    require_valid(T)
    bad = {}
    good = set()
    for e in T.edges():
        p = bad_pair_partners(T, e)
        if p:
            bad[e] = p
        else:
            good.add(e)
    for f in T.face_list:
        a, b, c = f
        if all(edge_key(x, y) in bad for x, y in ((a, b), (b, c), (a, c))):
            if not any(T.degree(x) in (3, 4) for x in f):
                raise PostconditionError(f"face {f} has three bad edges and no vertex of degree 3 or 4")
    return EdgeClassification(frozenset(good), bad)


@dataclass
class SiSets:
    sets: tuple[list[Edge], list[Edge], list[Edge]]

    def largest(self) -> list[Edge]:
        return max(self.sets, key=len)


def si_sets(T: Triangulation, coloring: TaitColoring | None = None) -> SiSets:
    """Per colour class, the edges with no bad-pair partner in the same class."""
    require_valid(T)
    if coloring is None:
        coloring = tait_coloring(T)
    for a, b, c in all_triangles(T):
        if {coloring.colour((a, b)), coloring.colour((b, c)), coloring.colour((a, c))} != {1, 2, 3}:
            raise TriangulationError(f"colouring is not trichromatic on {(a, b, c)}")
    out = []
    for cls in coloring.classes:
        S = sorted(e for e in cls if not any(p in cls for p in bad_pair_partners(T, e)))
        rep = check_flipset(T, S)
        if not rep.ok:
            raise PostconditionError(f"colour class subset is not flippable: {rep}")
        out.append(S)
    union = set().union(*out)
    for a, b, c in all_triangles(T):
        if T.is_face((a, b, c)) or T.is_face((a, c, b)):
            continue
        for e in (edge_key(a, b), edge_key(b, c), edge_key(a, c)):
            if e not in union:
                raise PostconditionError(f"separating triangle edge {e} missed by every class")
    return SiSets(tuple(out))  # type: ignore[arg-type]


# -- exact maximum ----------------------------------------------------------


@dataclass
class MsfResult:
    value: int
    witness: list[Edge]
    exact: bool
    nodes: int = 0

    @property
    def timed_out(self) -> bool:
        return not self.exact


def exact_max_flip(T: Triangulation, time_limit: float | None = 60.0,
                   lower: int = 0) -> MsfResult:
    """Largest flippable set by branch and bound over faces.

    Each face either gets one of its edges or stays empty.  Choosing an edge
    uses up both of its faces, rules out its bad-pair partners, and pulls in
    its blocking edge when it has one.  The bound counts faces that can
    still be covered, two per edge.
    """
    require_valid(T)
    if T.n == 3:
        return MsfResult(0, [], True)
    faces = list(T.face_list)
    fid = {}
    for i, (a, b, c) in enumerate(faces):
        fid[(a, b)] = fid[(b, c)] = fid[(c, a)] = i
    edges = list(T.edges())
    eid = {e: i for i, e in enumerate(edges)}
    ef = [(fid[(u, v)], fid[(v, u)]) for u, v in edges]
    partners = [[eid[p] for p in bad_pair_partners(T, e)] for e in edges]
    block = []
    for e in edges:
        b = blocking_edge(T, e)
        block.append(-1 if b is None else eid[b])
    face_edges = [[eid[edge_key(a, b)], eid[edge_key(b, c)], eid[edge_key(a, c)]]
                  for a, b, c in faces]
    # visit faces in breadth-first dual order so decisions stay local
    order = []
    seen = [False] * len(faces)
    for s in range(len(faces)):
        if seen[s]:
            continue
        seen[s] = True
        q = [s]
        while q:
            f = q.pop(0)
            order.append(f)
            for e in face_edges[f]:
                for g in ef[e]:
                    if not seen[g]:
                        seen[g] = True
                        q.append(g)
    F = len(faces)
    used = [False] * F
    chosen = [False] * len(edges)
    state = {"best": max(lower - 1, -1), "wit": [], "nodes": 0, "timeout": False}
    deadline = None if time_limit is None else time.monotonic() + time_limit

    def admissible(e: int) -> bool:
        f, g = ef[e]
        if chosen[e] or used[f] or used[g]:
            return False
        return not any(chosen[p] for p in partners[e])

    def take(e: int) -> list[int] | None:
        """Choose ``e`` and its chain of blockers; returns what was set, or None."""
        group = [e]
        while True:
            b = block[group[-1]]
            if b < 0 or chosen[b] or b in group:
                break
            group.append(b)
        done = []
        for x in group:
            if not admissible(x):
                undo(done)
                return None
            chosen[x] = True
            used[ef[x][0]] = used[ef[x][1]] = True
            done.append(x)
        return group

    def undo(group: list[int]) -> None:
        for x in group:
            chosen[x] = False
            used[ef[x][0]] = used[ef[x][1]] = False

    def rec(pos: int, size: int, empty: int) -> None:
        state["nodes"] += 1
        if deadline is not None and state["nodes"] % 512 == 0 and time.monotonic() > deadline:
            state["timeout"] = True
        if state["timeout"]:
            return
        if (F - empty) // 2 <= state["best"]:
            return
        while pos < F and used[order[pos]]:
            pos += 1
        if pos == F:
            if size > state["best"]:
                state["best"] = size
                state["wit"] = [edges[i] for i in range(len(edges)) if chosen[i]]
            return
        f = order[pos]
        for e in face_edges[f]:
            if not admissible(e):
                continue
            g = take(e)
            if g is None:
                continue
            rec(pos + 1, size + len(g), empty)
            undo(g)
            if state["timeout"]:
                return
        rec(pos + 1, size, empty + 1)

    rec(0, 0, 0)
    wit = sorted(state["wit"])
    if wit and not check_flipset(T, wit).ok:
        raise PostconditionError("exact search produced a set that is not flippable")
    if len(wit) > T.n - 2:
        raise PostconditionError("flippable set larger than n-2")
    return MsfResult(len(wit), wit, not state["timeout"], state["nodes"])


# -- graph surgery with label maps ------------------------------------------


def _compress(rot: dict[int, list[int]]) -> tuple[Triangulation, list[int]]:
    old = sorted(rot)
    new = {o: i for i, o in enumerate(old)}
    T = Triangulation.from_rotation([[new[u] for u in rot[o]] for o in old])
    return T, old


def _rot_dict(T: Triangulation) -> dict[int, list[int]]:
    return {v: list(T.rotation[v]) for v in range(T.n)}


def _valid_or_none(T: Triangulation) -> Triangulation | None:
    return T if validate(T).ok else None


def _find_three_four(T: Triangulation):
    for v in range(T.n):
        if T.degree(v) != 3:
            continue
        for w in T.rotation[v]:
            if T.degree(w) == 4:
                x, y = (u for u in T.rotation[v] if u != w)
                (z,) = [u for u in T.rotation[w] if u not in (v, x, y)]
                return v, w, x, y, z
    return None


def _find_four_four(T: Triangulation):
    for v in range(T.n):
        if T.degree(v) != 4:
            continue
        for w in T.rotation[v]:
            if T.degree(w) == 4 and v < w:
                b, d = seers(T, v, w)
                (a,) = [u for u in T.rotation[v] if u not in (w, b, d)]
                (c,) = [u for u in T.rotation[w] if u not in (v, b, d)]
                if a == c:
                    continue
                return v, w, a, b, c, d
    return None


def _find_boundary(T: Triangulation):
    for v in range(T.n):
        if T.degree(v) != 4:
            continue
        r = T.rotation[v]
        for k in range(2):
            a, b, c, d = (r[(k + i) % 4] for i in range(4))
            ad, bc = edge_key(a, d), edge_key(b, c)
            if bc not in bad_pair_partners(T, ad):
                continue
            xs = set(seers(T, a, d)) - {v}
            if len(xs) != 1:
                continue
            (x,) = xs
            if x not in seers(T, b, c):
                continue
            return v, a, b, c, d, x
    return None


@dataclass
class _Frame:
    kind: str
    G: Triangulation
    old: list[int]
    data: tuple


def _reduce_three_four(T: Triangulation, cfg):
    v, w = cfg[:2]
    rot = _rot_dict(T)
    for u in (v, w):
        del rot[u]
    for u in rot:
        rot[u] = [z for z in rot[u] if z not in (v, w)]
    return _compress(rot)


def _reduce_four_four(T: Triangulation, cfg):
    v, w, a, b, c, d = cfg
    rot = _rot_dict(T)
    use_ac = not T.has_edge(a, c)
    del rot[v], rot[w]
    if use_ac:
        rot[a] = [c if z == v else z for z in rot[a]]
        rot[c] = [a if z == w else z for z in rot[c]]
    else:
        rot[b] = [d if z == v else z for z in rot[b] if z != w]
        rot[d] = [b if z == v else z for z in rot[d] if z != w]
    for u in rot:
        rot[u] = [z for z in rot[u] if z not in (v, w)]
    G, old = _compress(rot)
    return G, old, use_ac


def _reduce_boundary(T: Triangulation, cfg):
    v, a, b, c, d, x = cfg
    drop = {frozenset((a, d, x)), frozenset((b, c, x))}
    merge = {d: a, c: b}
    faces = []
    for f in T.face_list:
        if v in f or frozenset(f) in drop:
            continue
        faces.append(tuple(merge.get(u, u) for u in f))
    old = sorted(set(range(T.n)) - {v, c, d})
    new = {o: i for i, o in enumerate(old)}
    try:
        G = Triangulation.from_faces([tuple(new[u] for u in f) for f in faces], n=len(old))
    except TriangulationError:
        return None
    if not validate(G).ok:
        return None
    return G, old


def _lift_three_four(T: Triangulation, cfg, S: set[Edge]) -> set[Edge]:
    v, w, x, y, z = cfg
    add = edge_key(y, w) if edge_key(x, z) in S else edge_key(x, w)
    return S | {add}


def _lift_four_four(T: Triangulation, cfg, use_ac: bool, S: set[Edge]) -> set[Edge]:
    v, w, a, b, c, d = cfg
    E = edge_key
    S = set(S)
    S.discard(E(a, c) if use_ac else E(b, d))
    added: list[Edge] = []
    if use_ac:
        table = [((a, b), (w, b)), ((b, c), (v, b)), ((c, d), (v, d)), ((a, d), (w, d))]
    else:
        table = [((a, b), (v, d)), ((a, d), (v, b)), ((c, d), (w, b)), ((b, c), (w, d))]
    for cond, new in table:
        if E(*cond) in S:
            added.append(E(*new))
    if not added:
        added = [E(v, b), E(w, d)]
    for p, q in ((E(v, b), E(v, d)), (E(w, b), E(w, d))):
        if p in added and q in added:
            added.remove(q)
    return S | set(added)


def _lift_boundary(T: Triangulation, cfg, S: set[Edge]) -> list[set[Edge]]:
    """Candidate lifts: each ambiguous merged edge may come from either copy."""
    v, a, b, c, d, x = cfg
    alt = {a: (a, d), b: (b, c)}
    options = []
    for u, w in sorted(S):
        cands = [edge_key(p, q) for p in alt.get(u, (u,)) for q in alt.get(w, (w,))
                 if p != q and T.has_edge(p, q)]
        options.append(cands)
    out = []
    for pick in itertools.product(*options):
        out.append(set(pick) | {edge_key(v, d)})
        if len(out) >= 16:
            break
    return out


def _compatible(T: Triangulation, base: set[Edge], sub: Sequence[Edge]) -> bool:
    """Whether ``base | sub`` is flippable, given ``base`` already is."""
    rep = scan_flipset(T, sorted(sub))
    return all(v.kind == "blocked-without-blocker" and v.witness[1] in base
               for v in rep.violations)


def _repair(T: Triangulation, base: set[Edge], core: Iterable[int], need: int) -> set[Edge] | None:
    """Add ``need`` edges near ``core`` to the flippable set ``base``."""
    core = set(core)
    for ring in (core, core | {w for u in core for w in T.rotation[u]}):
        faces = set()
        keys = set()
        for u, w in base:
            x, y = seers(T, u, w)
            faces |= {frozenset((u, w, x)), frozenset((u, w, y))}
            keys.add(edge_key(x, y))
        extras = []
        for e in sorted({edge_key(u, w) for u in ring for w in T.rotation[u]}):
            if e in base:
                continue
            x, y = seers(T, *e)
            if {frozenset((*e, x)), frozenset((*e, y))} & faces or edge_key(x, y) in keys:
                continue
            extras.append(e)
        for sub in itertools.combinations(extras, need):
            if _compatible(T, base, sub):
                return base | set(sub)
    return None


def _unambiguous(fr: _Frame, S: set[Edge]) -> set[Edge]:
    """The lifted edges that have a single preimage, pruned to a flippable set."""
    G = fr.G
    if fr.kind == "merge":
        v, a, b, c, d, x = fr.data
        alt = {a: (a, d), b: (b, c)}
        base = set()
        for u, w in S:
            cands = [edge_key(p, q) for p in alt.get(u, (u,)) for q in alt.get(w, (w,))
                     if p != q and G.has_edge(p, q)]
            if len(cands) == 1:
                base.add(cands[0])
    else:
        base = {e for e in S if G.has_edge(*e)}
    while True:
        rep = check_flipset(G, sorted(base))
        if rep.ok:
            return base
        for viol in rep.violations:
            base -= set(viol.witness[:1] if viol.kind == "blocked-without-blocker" else viol.witness)


def _base(T: Triangulation) -> list[Edge]:
    res = exact_max_flip(T, time_limit=None)
    return res.witness


def large_flip(T: Triangulation, trace: list | None = None) -> list[Edge]:
    """Flippable set of at least ceil((n-2)/3) edges.

    Repeatedly deletes a degree-3/degree-4 pair, a degree-4/degree-4 pair
    (adding one edge across the hole), or merges a degree-4 vertex whose two
    opposite seen edges form a bad pair, in that priority.  Small graphs are
    solved exactly; otherwise the largest bad-pair-free colour class of a
    trichromatic edge colouring is taken.  Sets are lifted back one level at
    a time and rechecked there.
    """
    require_valid(T)
    n0 = T.n
    if n0 < 4:
        raise TriangulationError("needs at least four vertices")
    frames: list[_Frame] = []
    G = T
    while True:
        if G.n <= 6:
            S = set(_base(G))
            break
        cfg = _find_three_four(G)
        if cfg is not None:
            H, old = _reduce_three_four(G, cfg)
            frames.append(_Frame("three-four", G, old, cfg))
            G = H
            continue
        cfg = _find_four_four(G)
        if cfg is not None:
            H, old, use_ac = _reduce_four_four(G, cfg)
            frames.append(_Frame("four-four", G, old, (*cfg, use_ac)))
            G = H
            continue
        cfg = _find_boundary(G)
        red = _reduce_boundary(G, cfg) if cfg is not None else None
        if red is not None:
            H, old = red
            frames.append(_Frame("merge", G, old, cfg))
            G = H
            continue
        S = set(si_sets(G).largest())
        if 3 * len(S) < G.n - 2:
            raise PostconditionError(f"terminal graph on {G.n} vertices only has {len(S)} edges")
        break
    if trace is not None:
        trace.extend(f.kind for f in frames)
    for fr in reversed(frames):
        prev = len(S)
        S = {edge_key(fr.old[u], fr.old[w]) for u, w in S}
        if fr.kind == "three-four":
            cands = [_lift_three_four(fr.G, fr.data, S)]
        elif fr.kind == "four-four":
            cands = [_lift_four_four(fr.G, fr.data[:6], fr.data[6], S)]
        else:
            cands = _lift_boundary(fr.G, fr.data, S)
        for C in cands:
            if len(C) >= prev + 1 and scan_flipset(fr.G, sorted(C)).ok:
                S = C
                break
        else:
            base = _unambiguous(fr, S)
            C = _repair(fr.G, base, fr.data[:6], prev + 1 - len(base))
            if C is None or not scan_flipset(fr.G, sorted(C)).ok:
                raise PostconditionError(f"{fr.kind} lift on {fr.G.n} vertices failed")
            if trace is not None:
                trace.append(f"{fr.kind}-repair")
            S = C
    out = sorted(S)
    if 3 * len(out) < n0 - 2 or not check_flipset(T, out).ok:
        raise PostconditionError("large flip below (n-2)/3 or not flippable")
    return out


def big_flip_bound(n: int) -> int:
    return math.ceil((n - 2) / 3)


# -- families ---------------------------------------------------------------


def seven_family(G0: Triangulation) -> tuple[Triangulation, list[Edge]]:
    """Put a triangle inside every face, each corner joined to two face vertices.

    Returns the new triangulation and a flippable set covering six of the
    seven small faces in every old face.
    """
    require_valid(G0)
    n0 = G0.n
    faces = []
    wit = []
    k = n0
    for u, v, w in G0.face_list:
        x, y, z = k, k + 1, k + 2
        k += 3
        faces += [(u, v, z), (v, w, x), (w, u, y), (u, z, y), (v, x, z), (w, y, x), (x, y, z)]
        wit += [edge_key(x, v), edge_key(y, w), edge_key(z, u)]
    G = Triangulation.from_faces(faces, n=k, outerface=faces[0])
    require_valid(G)
    if G.n - 2 != 7 * (n0 - 2) or 7 * len(wit) != 6 * (G.n - 2):
        raise PostconditionError("seven family has the wrong size")
    rep = check_flipset(G, wit)
    if not rep.ok:
        raise PostconditionError(f"seven family witness is not flippable: {rep}")
    return G, sorted(wit)


def five_connected_max_flip(T: Triangulation, check_connectivity: bool = True) -> list[Edge]:
    """One edge in every face: n-2 edges, flippable in a 5-connected triangulation."""
    require_valid(T)
    if check_connectivity and not is_five_connected(T):
        raise TriangulationError("triangulation is not 5-connected")
    S = sorted(triangle_set(T).edges)
    if len(S) != T.n - 2 or not check_flipset(T, S).ok:
        raise PostconditionError("face cover is not a flippable set of n-2 edges")
    return S


def flippable_count_bounds(T: Triangulation) -> tuple[int, int]:
    """Guaranteed lower bound and universal upper bound on the maximum."""
    return big_flip_bound(T.n), T.n - 2
