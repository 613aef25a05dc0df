"""Text format for triangulations.

::

    n 4
    0: 1 2 3
    ...
    outer: 0 1 2

Rotations are counterclockwise; ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path

from .triangulation import Triangulation, TriangulationError, require_valid


def parse_tri(text: str) -> Triangulation:
    n = None
    rot: dict[int, tuple[int, ...]] = {}
    outer = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if n is None:
                key, val = line.split()
                if key != "n":
                    raise ValueError
                n = int(val)
            elif line.startswith("outer:"):
                outer = tuple(int(t) for t in line[6:].split())
                if len(outer) != 3:
                    raise ValueError
            else:
                head, tail = line.split(":", 1)
                v = int(head)
                if v in rot:
                    raise TriangulationError(f"line {lineno}: vertex {v} listed twice")
                rot[v] = tuple(int(t) for t in tail.split())
        except TriangulationError:
            raise
        except ValueError:
            raise TriangulationError(f"line {lineno}: malformed line {raw!r}") from None
    if n is None:
        raise TriangulationError("missing 'n <count>' header")
    if sorted(rot) != list(range(n)):
        raise TriangulationError(f"expected rotations for vertices 0..{n - 1}")
    if outer is None:
        raise TriangulationError("missing 'outer:' line")
    T = Triangulation.from_rotation([rot[v] for v in range(n)], outer)
    return require_valid(T)


def serialize_tri(T: Triangulation) -> str:
    lines = [f"n {T.n}"]
    lines += [f"{v}: " + " ".join(map(str, r)) for v, r in enumerate(T.rotation)]
    lines.append("outer: " + " ".join(map(str, T.outerface)))
    return "\n".join(lines) + "\n"


def read_tri(path) -> Triangulation:
    return parse_tri(Path(path).read_text())


def write_tri(T: Triangulation, path) -> None:
    require_valid(T)
    Path(path).write_text(serialize_tri(T))
