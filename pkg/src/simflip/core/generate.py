"""Triangulation generators: standard, random, and a few named polyhedra."""

from __future__ import annotations

import random
from collections import deque

from .triangulation import Triangulation, TriangulationError


def standard(n: int) -> Triangulation:
    """The standard triangulation with dominant vertices 0 and 1.

    Vertices ``2, ..., n-1`` form a path; both 0 and 1 are adjacent to every
    path vertex and to each other.  Outerface is ``(0, 1, 2)``.
    """
    if n < 4:
        raise TriangulationError(f"standard triangulation needs n >= 4, got {n}")
    a, b = 0, 1
    path = list(range(2, n))
    faces = [(a, b, path[0]), (b, a, path[-1])]
    for p, q in zip(path, path[1:]):
        faces.append((a, p, q))
        faces.append((b, q, p))
    return Triangulation.from_faces(faces, n, outerface=(a, b, path[0]))


def k4() -> Triangulation:
    return standard(4)


def octahedron() -> Triangulation:
    # 0/5 poles, 1-2-3-4 equator
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
             (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4)]
    return Triangulation.from_faces(faces, 6)


def icosahedron() -> Triangulation:
    # 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    up = [1, 2, 3, 4, 5]
    lo = [6, 7, 8, 9, 10]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces.append((0, up[i], up[j]))
        faces.append((up[i], lo[i], up[j]))
        faces.append((up[j], lo[i], lo[j]))
        faces.append((11, lo[j], lo[i]))
    return Triangulation.from_faces(faces, 12)


def stack(T: Triangulation, face) -> Triangulation:
    """Insert a new degree-3 vertex into ``face``."""
    a, b, c = face
    if not T.is_face(face):
        raise TriangulationError(f"{face} is not a face")
    x = T.n
    faces = [f for f in T.face_list if not _same_oriented(f, (a, b, c))]
    faces += [(a, b, x), (b, c, x), (c, a, x)]
    of = T.outerface
    if _same_oriented(of, (a, b, c)):
        of = (a, b, x)
    return Triangulation.from_faces(faces, x + 1, outerface=of)


def _same_oriented(f, g) -> bool:
    a, b, c = g
    return tuple(f) in ((a, b, c), (b, c, a), (c, a, b))


def subdivide(T: Triangulation) -> Triangulation:
    """Split every face into four by adding a vertex on every edge."""
    mid: dict[tuple[int, int], int] = {}
    nxt = T.n
    for u, v in T.edge_list:
        mid[(u, v)] = mid[(v, u)] = nxt
        nxt += 1
    faces = []
    for a, b, c in T.face_list:
        ab, bc, ca = mid[(a, b)], mid[(b, c)], mid[(c, a)]
        faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
    return Triangulation.from_faces(faces, nxt)


class _Mutable:
    """Mutable rotation lists used while generating random instances."""

    def __init__(self, T: Triangulation):
        self.rot = [list(r) for r in T.rotation]

    def third(self, u: int, v: int) -> int:
        r = self.rot[v]
        return r[r.index(u) - 1]

    def insert_after(self, v: int, after: int, new: int) -> None:
        r = self.rot[v]
        r.insert(r.index(after) + 1, new)

    def stack(self, a: int, b: int, c: int) -> int:
        x = len(self.rot)
        self.rot.append([a, b, c])
        self.insert_after(a, b, x)
        self.insert_after(b, c, x)
        self.insert_after(c, a, x)
        return x

    def try_flip(self, v: int, w: int) -> bool:
        x = self.third(v, w)
        y = self.third(w, v)
        if x == y or y in self.rot[x]:
            return False
        self.rot[v].remove(w)
        self.rot[w].remove(v)
        self.insert_after(x, v, y)
        self.insert_after(y, w, x)
        return True

    def freeze(self) -> Triangulation:
        return Triangulation.from_rotation(self.rot)


def random_triangulation(n: int, seed: int = 0, mix: int | None = None) -> Triangulation:
    """Random triangulation on ``n`` vertices, deterministic in ``seed``.

    Starts from K4, stacks degree-3 vertices into uniformly chosen faces,
    then performs ``mix`` (default ``10 n``) random individual flips.
    """
    if n < 4:
        raise TriangulationError(f"random triangulation needs n >= 4, got {n}")
    rng = random.Random(seed)
    M = _Mutable(k4())
    faces = list(k4().face_list)
    while len(M.rot) < n:
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        x = M.stack(a, b, c)
        faces[i] = (a, b, x)
        faces.append((b, c, x))
        faces.append((c, a, x))
    if n > 4:
        for _ in range(10 * n if mix is None else mix):
            v = rng.randrange(n)
            r = M.rot[v]
            M.try_flip(v, r[rng.randrange(len(r))])
    return M.freeze()


def enumerate_triangulations(n: int, reflect: bool = False) -> list[Triangulation]:
    """All triangulations on ``n`` vertices up to embedding isomorphism.

    Explores the flip graph from the standard triangulation (which is
    connected) and keeps one representative per canonical code.
    """
    from .iso import canonical_code

    if n == 3:
        return [Triangulation.from_faces([(0, 1, 2), (0, 2, 1)], 3)]
    start = standard(n)
    seen = {canonical_code(start, reflect=reflect): start}
    queue = deque([start])
    while queue:
        T = queue.popleft()
        for v, w in T.edge_list:
            M = _Mutable(T)
            if M.try_flip(v, w):
                U = M.freeze()
                code = canonical_code(U, reflect=reflect)
                if code not in seen:
                    seen[code] = U
                    queue.append(U)
    return [seen[c] for c in sorted(seen)]
