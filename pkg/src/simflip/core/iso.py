"""Canonical codes and embedding isomorphism.

The code is a breadth-first encoding of the rotation system from a root
directed edge.  Because triangulations are 3-connected, the rotation system
is recovered from the code, so two embeddings get equal codes exactly when
they are isomorphic.  Only roots in the rarest class of ``(deg u, deg v)``
are tried; that class is an isomorphism invariant so the result stays exact.
"""

from __future__ import annotations

import struct
from collections import Counter

from .triangulation import Triangulation, require_valid


def _bfs(rot, pos, u, v):
    n = len(rot)
    label = [-1] * n
    start = [0] * n
    label[u] = 0
    start[u] = v
    order = [u]
    code = []
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        r = rot[x]
        d = len(r)
        s = pos[x][start[x]]
        code.append(d)
        for k in range(d):
            y = r[(s + k) % d]
            if label[y] < 0:
                label[y] = len(order)
                start[y] = x
                order.append(y)
            code.append(label[y])
    return code, order


def _roots(rot):
    deg = [len(r) for r in rot]
    cls = Counter((deg[u], deg[v]) for u, r in enumerate(rot) for v in r)
    key = min(cls, key=lambda k: (cls[k], k))
    return [(u, v) for u, r in enumerate(rot) for v in r if (deg[u], deg[v]) == key]


def _best(T: Triangulation, reflect: bool):
    """Minimum code with the vertex order realising it."""
    variants = [T.rotation]
    if reflect:
        variants.append(tuple(tuple(reversed(r)) for r in T.rotation))
    best = None
    for rot in variants:
        pos = [{w: i for i, w in enumerate(r)} for r in rot]
        for u, v in _roots(rot):
            code, order = _bfs(rot, pos, u, v)
            if best is None or code < best[0]:
                best = (code, order)
    return best


def canonical_code(T: Triangulation, reflect: bool = False) -> bytes:
    """Byte string equal for two triangulations iff they are isomorphic.

    With ``reflect`` an embedding and its mirror image get the same code.
    """
    require_valid(T)
    code, _ = _best(T, reflect)
    return struct.pack(f">{len(code) + 1}I", T.n, *code)


def is_isomorphic(T1: Triangulation, T2: Triangulation, reflect: bool = False
                  ) -> dict[int, int] | None:
    """Vertex map ``T1 -> T2`` preserving rotations (or all reversing them
    when ``reflect`` is set and that is what it takes), else None."""
    require_valid(T1)
    require_valid(T2)
    if T1.n != T2.n:
        return None
    if sorted(map(len, T1.rotation)) != sorted(map(len, T2.rotation)):
        return None
    c1, o1 = _best(T1, reflect)
    c2, o2 = _best(T2, reflect)
    if c1 != c2:
        return None
    return {a: b for a, b in zip(o1, o2)}


def is_embedding_map(T1: Triangulation, T2: Triangulation, phi) -> bool:
    """True when ``phi`` maps every rotation of T1 onto the corresponding
    rotation of T2, either all in the same orientation or all reversed."""
    if T1.n != T2.n or len(set(phi[v] for v in range(T1.n))) != T1.n:
        return False
    img = T1.relabel(phi)
    return img == T2 or img.mirror() == T2
