"""Individual and simultaneous diagonal flips.

Flipping ``vw`` with incident faces ``(v, w, x)`` and ``(w, v, y)`` replaces
it by ``xy``.  A set of edges is flipped simultaneously by doing every
replacement at once; the result is a triangulation exactly when no two
members share a face, no two members are seen by the same pair of vertices,
and every member whose seers are already adjacent has that blocking edge in
the set as well.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .core.triangulation import (
    Edge,
    Face,
    PostconditionError,
    Triangulation,
    TriangulationError,
    edge_key,
    require_valid,
    validate,
)


@dataclass(frozen=True)
class EdgeView:
    edge: Edge
    seers: tuple[int, int]
    faces: tuple[Face, Face]


def _require_edge(T: Triangulation, e) -> Edge:
    u, v = e
    if not (0 <= u < T.n and 0 <= v < T.n) or not T.has_edge(u, v):
        raise TriangulationError(f"({u}, {v}) is not an edge")
    return edge_key(u, v)


def _reject_k3(T: Triangulation) -> None:
    if T.n == 3:
        raise TriangulationError("K3 has no flippable edges")


def seers(T: Triangulation, v: int, w: int) -> tuple[int, int]:
    """``(x, y)`` with faces ``(v, w, x)`` and ``(w, v, y)``."""
    return T.third(v, w), T.third(w, v)


def edge_view(T: Triangulation, e) -> EdgeView:
    _reject_k3(T)
    v, w = _require_edge(T, e)
    x, y = seers(T, v, w)
    return EdgeView((v, w), (x, y), ((v, w, x), (w, v, y)))


def blocking_edge(T: Triangulation, e) -> Edge | None:
    """The edge joining the two seers of ``e``, if present."""
    _reject_k3(T)
    v, w = _require_edge(T, e)
    x, y = seers(T, v, w)
    return edge_key(x, y) if T.has_edge(x, y) else None


def is_individually_flippable(T: Triangulation, e) -> bool:
    return blocking_edge(T, e) is None


def bad_pair_partners(T: Triangulation, e) -> list[Edge]:
    """Edges other than ``e`` seen by the same two vertices as ``e``."""
    require_valid(T)
    v, w = _require_edge(T, e)
    x, y = seers(T, v, w)
    out = []
    # an edge seen by x has x as the third vertex of a face; scan x's faces
    for a in T.rotation[x]:
        b = T.succ(x, a)
        f = edge_key(a, b)
        if f == (v, w):
            continue
        if T.third(b, a) == y:
            out.append(f)
    return sorted(out)


bad_pair_partner = bad_pair_partners


@dataclass(frozen=True)
class Violation:
    kind: str  # consecutive | bad-pair | blocked-without-blocker
    witness: tuple[Edge, ...]

    def __str__(self) -> str:
        return f"{self.kind}: " + " ".join(f"{u}-{v}" for u, v in self.witness)


@dataclass
class FlipCheck:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(map(str, self.violations))


def normalize_flipset(T: Triangulation, S: Iterable[Sequence[int]]) -> list[Edge]:
    return sorted({_require_edge(T, e) for e in S})


def check_flipset(T: Triangulation, S: Iterable[Sequence[int]]) -> FlipCheck:
    """Report every way in which ``S`` fails to be simultaneously flippable."""
    require_valid(T)
    _reject_k3(T)
    return scan_flipset(T, normalize_flipset(T, S))


def scan_flipset(T: Triangulation, S: Sequence[Edge]) -> FlipCheck:
    """Violation scan for normalised edges of a triangulation known to be valid."""
    Sset = set(S)
    rep = FlipCheck()
    # a face's vertex set identifies it once K3 is excluded
    by_face: dict[frozenset, list[Edge]] = {}
    by_seers: dict[Edge, list[Edge]] = {}
    for v, w in S:
        x, y = seers(T, v, w)
        by_face.setdefault(frozenset((v, w, x)), []).append((v, w))
        by_face.setdefault(frozenset((v, w, y)), []).append((v, w))
        by_seers.setdefault(edge_key(x, y), []).append((v, w))
        if T.has_edge(x, y) and edge_key(x, y) not in Sset:
            rep.violations.append(Violation("blocked-without-blocker", ((v, w), edge_key(x, y))))
    for es in by_face.values():
        if len(es) > 1:
            rep.violations.append(Violation("consecutive", tuple(es)))
    for es in by_seers.values():
        if len(es) > 1:
            rep.violations.append(Violation("bad-pair", tuple(es)))
    return rep


def _replace(T: Triangulation, quads) -> list[list[int]]:
    """Perform the replacements literally, with no precondition.

    Entries are tagged so that an edge inserted by one flip is never
    mistaken for an equal edge removed by another.
    """
    touched: dict[int, list[tuple[int, bool]]] = {}

    def row(z):
        if z not in touched:
            touched[z] = [(a, False) for a in T.rotation[z]]
        return touched[z]

    for v, w, x, y in quads:
        for p, after, q in ((x, v, y), (y, w, x)):
            r = row(p)
            r.insert(r.index((after, False)) + 1, (q, True))
    for v, w, x, y in quads:
        row(v).remove((w, False))
        row(w).remove((v, False))
    rot = [list(r) for r in T.rotation]
    for z, r in touched.items():
        rot[z] = [a for a, _ in r]
    return rot


def _quads(T: Triangulation, S) -> list[tuple[int, int, int, int]]:
    return [(v, w, *seers(T, v, w)) for v, w in S]


def brute_force_check(T: Triangulation, S: Iterable[Sequence[int]]) -> bool:
    """Flip ``S`` literally and ask whether a valid triangulation results."""
    S = normalize_flipset(T, S)
    rot = _replace(T, _quads(T, S))
    return validate(Triangulation.from_rotation(rot)).ok


@dataclass(frozen=True)
class FlipRecord:
    """One simultaneous flip: ``(v, w, x, y)`` means ``vw`` was replaced by ``xy``.

    ``host`` and ``result`` are labelled digests of the two triangulations.
    """

    flips: tuple[tuple[int, int, int, int], ...]
    host: str
    result: str

    def __len__(self) -> int:
        return len(self.flips)

    @property
    def removed(self) -> list[Edge]:
        return [edge_key(v, w) for v, w, _, _ in self.flips]

    @property
    def inserted(self) -> list[Edge]:
        return [edge_key(x, y) for _, _, x, y in self.flips]


def _carry_outerface(T: Triangulation, rot, removed: set[Edge]) -> tuple[int, ...]:
    a, b, c = T.outerface
    if not ({edge_key(a, b), edge_key(b, c), edge_key(c, a)} & removed):
        return T.outerface
    U = Triangulation.from_rotation(rot)
    return U.face_list[0]


def apply_flipset(T: Triangulation, S: Iterable[Sequence[int]]) -> tuple[Triangulation, FlipRecord]:
    """Flip every edge of ``S`` at once.  Refuses sets that are not flippable."""
    S = normalize_flipset(T, S)
    rep = check_flipset(T, S)
    if not rep.ok:
        raise TriangulationError(f"not a flippable set: {rep}")
    quads = _quads(T, S)
    rot = _replace(T, quads)
    outer = _carry_outerface(T, rot, set(S))
    U = Triangulation.from_rotation(rot, outer)
    rv = validate(U)
    if not rv.ok:
        raise PostconditionError(f"flip produced an invalid triangulation: {rv}")
    U.__dict__["_checked"] = True
    return U, FlipRecord(tuple(quads), T.digest(), U.digest())


def flip(T: Triangulation, S: Iterable[Sequence[int]]) -> Triangulation:
    return apply_flipset(T, S)[0]


def invert(record: FlipRecord, result: Triangulation | None = None) -> list[Edge]:
    """Flip set on the result that restores the host."""
    if result is not None and result.digest() != record.result:
        raise TriangulationError("record does not belong to this triangulation")
    return sorted(record.inserted)


# -- sequences --------------------------------------------------------------


@dataclass
class FlipSequence:
    """Ordered simultaneous flips starting from ``start``."""

    start: Triangulation
    records: list[FlipRecord] = field(default_factory=list)
    end: Triangulation | None = None

    def __post_init__(self) -> None:
        if self.end is None:
            self.end = self.start

    def __len__(self) -> int:
        return len(self.records)

    @property
    def total_flipped(self) -> int:
        return sum(len(r) for r in self.records)

    def step(self, S) -> FlipRecord | None:
        """Apply ``S`` to the current end; empty sets are not recorded."""
        S = list(S)
        if not S:
            return None
        self.end, rec = apply_flipset(self.end, S)
        self.records.append(rec)
        return rec

    def extend(self, other: "FlipSequence") -> None:
        if other.start != self.end:
            raise TriangulationError("sequences do not chain")
        self.records.extend(other.records)
        self.end = other.end

    def flipsets(self) -> list[list[Edge]]:
        return [r.removed for r in self.records]

    def replay(self, verify: bool = True) -> Triangulation:
        T = self.start
        for k, r in enumerate(self.records):
            if verify and T.digest() != r.host:
                raise PostconditionError(f"step {k}: host mismatch")
            T, rec = apply_flipset(T, r.removed)
            if verify and rec.flips != r.flips:
                raise PostconditionError(f"step {k}: different replacement edges")
        return T

    def to_jsonl(self) -> str:
        lines = []
        for k, r in enumerate(self.records):
            for v, w, x, y in r.flips:
                lines.append(json.dumps({"step": k, "removed": [v, w], "inserted": [x, y]}))
        return "\n".join(lines) + ("\n" if lines else "")


def parse_jsonl(text: str) -> list[list[Edge]]:
    """Flip sets per step from a JSON-lines sequence."""
    steps: dict[int, list[Edge]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            k = int(obj.get("step", 0))
            u, v = obj["removed"]
        except (ValueError, KeyError, TypeError):
            raise TriangulationError(f"line {lineno}: malformed flip record") from None
        steps.setdefault(k, []).append(edge_key(int(u), int(v)))
    return [steps[k] for k in sorted(steps)]


def sequence_from_steps(T: Triangulation, steps: Iterable[Iterable[Sequence[int]]]) -> FlipSequence:
    seq = FlipSequence(T)
    for S in steps:
        seq.step(S)
    return seq


def parse_flipset(text: str) -> list[Edge]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TriangulationError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            out.append(edge_key(int(parts[0]), int(parts[1])))
        except ValueError:
            raise TriangulationError(f"line {lineno}: expected 'u v', got {raw!r}") from None
    return out


def serialize_flipset(S: Iterable[Sequence[int]]) -> str:
    return "".join(f"{u} {v}\n" for u, v in sorted(edge_key(*e) for e in S))


def read_flipset(path) -> list[Edge]:
    return parse_flipset(Path(path).read_text())
