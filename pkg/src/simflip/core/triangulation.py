"""Plane triangulations stored as combinatorial rotation systems.

A triangulation on ``n`` vertices is described by, for every vertex, the
counterclockwise cyclic list of its neighbours.  The face to the left of the
directed edge ``u -> v`` is ``(u, v, pred_v(u))`` where ``pred_v`` is the
clockwise neighbour in the rotation at ``v``.  Faces are therefore oriented
triples, listed counterclockwise.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]
Face = tuple[int, int, int]


class TriangulationError(ValueError):
    """The input is not a valid plane triangulation."""


class PostconditionError(AssertionError):
    """An algorithm produced output violating its guaranteed contract."""


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _rotate_min(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    m = min(seq)
    if seq[0] == m:
        return seq if isinstance(seq, tuple) else tuple(seq)
    i = seq.index(m)
    return tuple(seq[i:]) + tuple(seq[:i])


def normalize_face(face: Sequence[int]) -> Face:
    """Rotate an oriented triple so that its smallest vertex comes first."""
    a, b, c = face
    if a <= b and a <= c:
        return (a, b, c)
    if b <= c:
        return (b, c, a)
    return (c, a, b)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(self.violations)


@dataclass(frozen=True, eq=False)
class Triangulation:
    """A plane triangulation as a rotation system with a designated outerface.

    ``rotation[v]`` is the counterclockwise cyclic order of the neighbours of
    ``v``; each list is stored starting at its smallest entry so two equal
    embeddings compare equal.  Equality and hashing only look at the rotation
    system: the outerface is a designation, not part of the labelled
    embedding.
    """

    rotation: tuple[tuple[int, ...], ...]
    outerface: Face

    def __post_init__(self) -> None:
        rot = tuple(_rotate_min(r) for r in self.rotation)
        object.__setattr__(self, "rotation", rot)
        if len(self.outerface) == 3:
            object.__setattr__(self, "outerface", normalize_face(self.outerface))
        else:
            object.__setattr__(self, "outerface", tuple(self.outerface))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rotation(
        cls, rotation: Sequence[Sequence[int]], outerface: Sequence[int] | None = None
    ) -> "Triangulation":
        rot = tuple(tuple(r) for r in rotation)
        if outerface is None:
            outerface = _default_outerface(rot)
        return cls(rot, tuple(outerface))

    @classmethod
    def from_faces(
        cls,
        faces: Iterable[Sequence[int]],
        n: int | None = None,
        outerface: Sequence[int] | None = None,
    ) -> "Triangulation":
        """Build the rotation system from consistently oriented triangles.

        Raises TriangulationError when the triangles do not glue into a
        sphere (a directed edge used twice, or a vertex link that is not a
        single cycle).
        """
        faces = [tuple(f) for f in faces]
        if n is None:
            n = 1 + max(max(f) for f in faces)
        succ: list[dict[int, int]] = [dict() for _ in range(n)]
        for x, y, z in faces:
            for v, a, b in ((x, y, z), (y, z, x), (z, x, y)):
                if a in succ[v]:
                    raise TriangulationError(f"directed edge {v}->{a} used by two faces")
                succ[v][a] = b
        rotation = []
        for v in range(n):
            s = succ[v]
            if not s:
                raise TriangulationError(f"vertex {v} lies on no face")
            start = min(s)
            cyc = [start]
            u = s[start]
            while u != start:
                cyc.append(u)
                if u not in s or len(cyc) > len(s):
                    raise TriangulationError(f"link of vertex {v} is not a cycle")
                u = s[u]
            if len(cyc) != len(s):
                raise TriangulationError(f"link of vertex {v} is not a single cycle")
            rotation.append(tuple(cyc))
        if outerface is None:
            outerface = faces[0]
        return cls(tuple(rotation), tuple(outerface))

    # -- basic accessors --------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rotation)

    @cached_property
    def _pos(self) -> list[dict[int, int]]:
        return [{u: i for i, u in enumerate(r)} for r in self.rotation]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def succ(self, v: int, u: int) -> int:
        """Neighbour of ``v`` following ``u`` counterclockwise."""
        r = self.rotation[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        """Neighbour of ``v`` preceding ``u`` counterclockwise."""
        r = self.rotation[v]
        return r[self._pos[v][u] - 1]

    def third(self, u: int, v: int) -> int:
        """The vertex ``x`` such that ``(u, v, x)`` is a face."""
        r = self.rotation[v]
        return r[self._pos[v][u] - 1]

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u, r in enumerate(self.rotation) for v in r if u < v)

    def edges(self) -> tuple[Edge, ...]:
        return self.edge_list

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    @cached_property
    def face_list(self) -> tuple[Face, ...]:
        out = []
        for u, r in enumerate(self.rotation):
            for v in r:
                w = self.third(u, v)
                # report each face once, from its smallest vertex
                if u < v and u < w:
                    out.append((u, v, w))
        return tuple(out)

    def faces(self) -> tuple[Face, ...]:
        return self.face_list

    def is_face(self, face: Sequence[int]) -> bool:
        a, b, c = face
        return self.has_edge(a, b) and self.has_edge(b, c) and self.third(a, b) == c

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.rotation == other.rotation

    def __hash__(self) -> int:
        return hash(self.rotation)

    def __repr__(self) -> str:
        return f"Triangulation(n={self.n}, outerface={self.outerface})"

    def digest(self) -> str:
        """Labelled fingerprint of the rotation system."""
        h = hashlib.sha1()
        for r in self.rotation:
            h.update(",".join(map(str, r)).encode())
            h.update(b";")
        return h.hexdigest()

    # -- derived triangulations -------------------------------------------

    def with_outerface(self, face: Sequence[int]) -> "Triangulation":
        if not self.is_face(face):
            raise TriangulationError(f"{tuple(face)} is not a face")
        return Triangulation(self.rotation, tuple(face))

    def relabel(self, mapping: Mapping[int, int] | Sequence[int]) -> "Triangulation":
        """Image under the vertex permutation ``v -> mapping[v]``."""
        n = self.n
        rot: list[tuple[int, ...]] = [()] * n
        for v, r in enumerate(self.rotation):
            rot[mapping[v]] = tuple(mapping[u] for u in r)
        return Triangulation(tuple(rot), tuple(mapping[x] for x in self.outerface))

    def mirror(self) -> "Triangulation":
        """The reflected embedding (every rotation reversed)."""
        a, b, c = self.outerface
        return Triangulation(tuple(tuple(reversed(r)) for r in self.rotation), (a, c, b))

    def induced(self, vertices: Iterable[int], outerface: Sequence[int] | None = None
                ) -> tuple["Triangulation", list[int]]:
        """Induced sub-embedding on ``vertices``, relabelled to ``0..k-1``.

        Only meaningful when the induced subgraph is itself a triangulation,
        e.g. after cutting along separating triangles.  Returns the new
        triangulation and the list mapping new ids to old ids.
        """
        old = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(old)}
        rot = [tuple(new_id[u] for u in self.rotation[v] if u in new_id) for v in old]
        of = None if outerface is None else tuple(new_id[x] for x in outerface)
        return Triangulation.from_rotation(rot, of), old


def _default_outerface(rot: Sequence[Sequence[int]]) -> tuple[int, ...]:
    if not rot or not rot[0]:
        return ()
    u, v = 0, rot[0][0]
    try:
        r = rot[v]
        w = r[list(r).index(u) - 1]
    except (ValueError, IndexError):
        return ()
    return (u, v, w)


def validate(T: Triangulation) -> ValidationReport:
    """Check every triangulation invariant and list all violations."""
    rep = ValidationReport()
    v_ = rep.violations
    n = T.n
    rot = T.rotation
    if n < 3:
        v_.append(f"vertex count: n={n} < 3")
        return rep
    structural = True
    for v, r in enumerate(rot):
        for u in r:
            if not (isinstance(u, int) and 0 <= u < n):
                v_.append(f"neighbour out of range: {u} at vertex {v}")
                structural = False
        if v in r:
            v_.append(f"self loop at vertex {v}")
            structural = False
        if len(set(r)) != len(r):
            v_.append(f"parallel edge at vertex {v}")
            structural = False
        if len(r) < 2:
            v_.append(f"degree {len(r)} at vertex {v}")
            structural = False
    if not structural:
        return rep
    pos = T._pos
    for v, r in enumerate(rot):
        for u in r:
            if v not in pos[u]:
                v_.append(f"asymmetric adjacency: {u} in rotation({v}) but not {v} in rotation({u})")
                structural = False
    if not structural:
        return rep
    m = sum(len(r) for r in rot) // 2
    if m != 3 * n - 6:
        v_.append(f"edge count: {m} != 3n-6 = {3 * n - 6}")
    # face traversal over darts
    seen: set[tuple[int, int]] = set()
    faces = 0
    bad_faces = 0
    for u, r in enumerate(rot):
        for v in r:
            if (u, v) in seen:
                continue
            length = 0
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                length += 1
                c = rot[b][pos[b][a] - 1]
                a, b = b, c
            faces += 1
            if length != 3 or (a, b) != (u, v):
                bad_faces += 1
    if bad_faces:
        v_.append(f"non-triangular faces: {bad_faces}")
    if faces != 2 * n - 4:
        v_.append(f"face count: {faces} != 2n-4 = {2 * n - 4}")
    # connectivity
    stack, reached = [0], {0}
    while stack:
        x = stack.pop()
        for y in rot[x]:
            if y not in reached:
                reached.add(y)
                stack.append(y)
    if len(reached) != n:
        v_.append(f"disconnected: {n - len(reached)} vertices unreachable from 0")
    of = T.outerface
    if len(of) != 3 or not all(isinstance(x, int) and 0 <= x < n for x in of):
        v_.append(f"bad outerface {of}")
    elif not (T.has_edge(of[0], of[1]) and T.has_edge(of[1], of[2]) and T.has_edge(of[2], of[0])
              and T.third(of[0], of[1]) == of[2]):
        v_.append(f"outerface {of} is not a face")
    return rep


def is_valid(T: Triangulation) -> bool:
    return validate(T).ok


def require_valid(T: Triangulation) -> Triangulation:
    if T.__dict__.get("_checked"):
        return T
    rep = validate(T)
    if not rep.ok:
        raise TriangulationError(str(rep))
    T.__dict__["_checked"] = True
    return T
