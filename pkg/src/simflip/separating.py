"""Canonical orderings, separating triangles and their containment order."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property

from .core.triangulation import PostconditionError, Triangulation, require_valid


@dataclass(frozen=True)
class CanonicalOrdering:
    """Vertex order ``v1 = a, v2 = b, ..., vn = c`` for outerface ``(a, b, c)``.

    ``interval[v]`` lists the neighbours of ``v`` that come earlier in the
    order, as they appear along the contour just before ``v`` is added
    (from the ``a`` side to the ``b`` side).
    """

    order: tuple[int, ...]
    interval: dict[int, tuple[int, ...]]

    @cached_property
    def index(self) -> dict[int, int]:
        """1-based position of every vertex."""
        return {v: i + 1 for i, v in enumerate(self.order)}


def canonical_ordering(T: Triangulation) -> CanonicalOrdering:
    """Reverse-removal construction.

    Start with the whole graph and contour ``a, c, b``; repeatedly remove the
    smallest-id contour vertex other than ``a``, ``b`` that has no chord,
    splicing its remaining neighbours into the contour.
    """
    require_valid(T)
    a, b, c = T.outerface
    n = T.n
    if n == 3:
        return CanonicalOrdering((a, b, c), {a: (), b: (a,), c: (a, b)})
    nxt = {a: c, c: b}
    prv = {c: a, b: c}
    on = [False] * n
    gone = [False] * n
    on[a] = on[b] = on[c] = True
    chords = [0] * n
    # ab is an edge of the contour cycle, never a chord
    heap = [c]
    rev = []
    interval: dict[int, tuple[int, ...]] = {}
    while len(rev) < n - 2:
        while True:
            if not heap:
                raise PostconditionError("canonical ordering got stuck")
            v = heapq.heappop(heap)
            if on[v] and not gone[v] and chords[v] == 0 and v not in (a, b):
                break
        l, r = prv[v], nxt[v]
        seg = []
        u = T.pred(v, l)
        while u != r:
            seg.append(u)
            u = T.pred(v, u)
        gone[v] = True
        on[v] = False
        rev.append(v)
        interval[v] = (l, *seg, r)
        del prv[v], nxt[v]
        if not seg:
            nxt[l] = r
            prv[r] = l
            chords[l] -= 1
            chords[r] -= 1
            for z in (l, r):
                if chords[z] == 0:
                    heapq.heappush(heap, z)
            continue
        chain = [l, *seg, r]
        for p, q in zip(chain, chain[1:]):
            nxt[p] = q
            prv[q] = p
        for p in seg:
            on[p] = True
        newset = set(seg)
        for p in seg:
            for q in T.rotation[p]:
                if gone[q] or not on[q] or q == prv[p] or q == nxt[p]:
                    continue
                chords[p] += 1
                if q not in newset:
                    chords[q] += 1
        for p in seg:
            if chords[p] == 0:
                heapq.heappush(heap, p)
    order = (a, b, *reversed(rev))
    interval[a] = ()
    interval[b] = (a,)
    return CanonicalOrdering(order, interval)


def verify_canonical_ordering(T: Triangulation, co: CanonicalOrdering) -> list[str]:
    """Check the ordering by forward insertion; returns a list of problems."""
    a, b, c = T.outerface
    order = co.order
    errs = []
    if sorted(order) != list(range(T.n)):
        return ["not a permutation"]
    if order[0] != a or order[1] != b or order[-1] != c:
        errs.append("order does not start a, b and end c")
    pos = {v: i for i, v in enumerate(order)}
    contour = [a, b]
    for i in range(2, len(order)):
        v = order[i]
        earlier = {u for u in T.rotation[v] if pos[u] < i}
        if len(earlier) < 2:
            errs.append(f"v{i + 1}={v} has fewer than two earlier neighbours")
            break
        idx = sorted(contour.index(u) if u in contour else -1 for u in earlier)
        if idx[0] < 0 or idx[-1] - idx[0] + 1 != len(idx):
            errs.append(f"earlier neighbours of v{i + 1}={v} are not a contour interval")
            break
        seg = contour[idx[0]:idx[-1] + 1]
        # the rotation at v must list the interval as a contiguous block
        r = T.rotation[v]
        d = len(r)
        k = r.index(seg[0])
        if [r[(k - j) % d] for j in range(len(seg))] != seg:
            errs.append(f"interval of v{i + 1}={v} disagrees with its rotation")
            break
        contour = contour[:idx[0] + 1] + [v] + contour[idx[-1]:]
    return errs


# -- separating triangles ---------------------------------------------------


def all_triangles(T: Triangulation) -> list[tuple[int, int, int]]:
    """Every 3-cycle, as a sorted triple, via a low out-degree orientation."""
    n = T.n
    deg = [len(r) for r in T.rotation]
    buckets: dict[int, set[int]] = {}
    for v in range(n):
        buckets.setdefault(deg[v], set()).add(v)
    removed = [False] * n
    rank = [0] * n
    d = deg[:]
    k = 0
    for i in range(n):
        while not buckets.get(k):
            k += 1
        v = min(buckets[k])
        buckets[k].discard(v)
        removed[v] = True
        rank[v] = i
        for u in T.rotation[v]:
            if not removed[u]:
                buckets[d[u]].discard(u)
                d[u] -= 1
                buckets.setdefault(d[u], set()).add(u)
        k = max(0, k - 1)
    out_nb = [[u for u in T.rotation[v] if rank[u] > rank[v]] for v in range(n)]
    tris = []
    for v in range(n):
        o = out_nb[v]
        for i in range(len(o)):
            for j in range(i + 1, len(o)):
                if T.has_edge(o[i], o[j]):
                    tris.append(tuple(sorted((v, o[i], o[j]))))
    return sorted(tris)


@dataclass
class SeparatingTriangle:
    vertices: tuple[int, int, int]
    level: int
    icom: frozenset[int]
    n: int = field(repr=False)

    @cached_property
    def ocom(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.icom - set(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        return self.edges_of(self.vertices)

    @staticmethod
    def edges_of(t) -> list[tuple[int, int]]:
        a, b, c = sorted(t)
        return [(a, b), (a, c), (b, c)]


def _is_face_triple(T: Triangulation, t) -> bool:
    a, b, c = t
    return T.is_face((a, b, c)) or T.is_face((a, c, b))


def _sides(T: Triangulation, t) -> tuple[set[int], bool]:
    """Smaller component of G - t, and whether it is the inner one."""
    a, b, c = t
    blocked = {a, b, c}
    x, y = T.third(a, b), T.third(b, a)
    outer = set(T.outerface)
    seen = [{x}, {y}]
    frontier = [[x], [y]]
    while True:
        for s in (0, 1):
            if not frontier[s]:
                comp = seen[s]
                inner = not (comp & outer)
                return comp, inner
            nf = []
            for u in frontier[s]:
                for w in T.rotation[u]:
                    if w not in blocked and w not in seen[s]:
                        seen[s].add(w)
                        nf.append(w)
            frontier[s] = nf


def separating_triangles(T: Triangulation, co: CanonicalOrdering | None = None
                         ) -> list[SeparatingTriangle]:
    """All 3-cycles that are not faces, with their inner components."""
    require_valid(T)
    if co is None:
        co = canonical_ordering(T)
    idx = co.index
    out = []
    full = frozenset(range(T.n))
    for t in all_triangles(T):
        if _is_face_triple(T, t):
            continue
        side, inner = _sides(T, t)
        icom = frozenset(side) if inner else full - side - set(t)
        out.append(SeparatingTriangle(t, max(idx[v] for v in t), icom, T.n))
    return out


def _span(co: CanonicalOrdering, st: SeparatingTriangle) -> int:
    top = co.order[st.level - 1]
    P = co.interval[top]
    i, j = sorted(P.index(v) for v in st.vertices if v != top)
    return j - i


def containment_order(T: Triangulation, tris: list[SeparatingTriangle] | None = None,
                      co: CanonicalOrdering | None = None) -> list[SeparatingTriangle]:
    """Separating triangles listed so that inner ones come first.

    Sorted by level, and at equal level by how wide an interval of the top
    vertex's earlier neighbours the triangle spans.
    """
    if co is None:
        co = canonical_ordering(T)
    if tris is None:
        tris = separating_triangles(T, co)
    return sorted(tris, key=lambda s: (s.level, _span(co, s), s.vertices))


def is_linear_extension(R: list[SeparatingTriangle]) -> bool:
    for i in range(len(R)):
        for j in range(i + 1, len(R)):
            if R[j].icom <= R[i].icom:
                return False
    return True


def nesting_depth(tris: list[SeparatingTriangle]) -> int:
    """Length of the longest chain under inner-component inclusion."""
    tris = sorted(tris, key=lambda s: len(s.icom))
    depth = [1] * len(tris)
    for j, t in enumerate(tris):
        for i in range(j):
            if tris[i].icom < t.icom:
                depth[j] = max(depth[j], depth[i] + 1)
    return max(depth, default=0)
