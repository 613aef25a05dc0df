"""Hamiltonian cycles in triangulations.

Each edge gets a boolean variable and every vertex must meet exactly two
chosen edges, so a model of the formula is a 2-factor.  While the 2-factor
splits into several cycles, a clause demanding an edge across each cycle's
cut is added and the incremental solver is asked again.
"""

from __future__ import annotations

from pysat.card import CardEnc, EncType
from pysat.formula import IDPool
from pysat.solvers import Solver

from .core.triangulation import PostconditionError, Triangulation, require_valid

SOLVER = "cadical153"


def is_hamiltonian_cycle(T: Triangulation, cyc) -> bool:
    cyc = list(cyc)
    if len(cyc) != T.n or len(set(cyc)) != T.n:
        return False
    return all(T.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def _components(n: int, adj: list[list[int]]) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for r in range(n):
        if seen[r]:
            continue
        seen[r] = True
        comp = [r]
        i = 0
        while i < len(comp):
            for w in adj[comp[i]]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
            i += 1
        comps.append(comp)
    return comps


def _walk(adj: list[list[int]], start: int) -> list[int]:
    cyc = [start]
    prev = -1
    while True:
        a, b = adj[cyc[-1]]
        nxt = b if a == prev else a
        if nxt == start:
            return cyc
        prev = cyc[-1]
        cyc.append(nxt)


def hamiltonian_cycle(T: Triangulation, max_rounds: int = 100_000) -> list[int] | None:
    """A Hamiltonian cycle of ``T`` starting at vertex 0, or None if none exists.

    The search is exact: None means the graph has no Hamiltonian cycle.
    """
    require_valid(T)
    n = T.n
    if n == 3:
        return [0, 1, 2]
    edges = sorted({(min(u, v), max(u, v)) for u in range(n) for v in T.rotation[u]})
    pool = IDPool()
    var = {e: pool.id(e) for e in edges}
    inc: list[list[int]] = [[] for _ in range(n)]
    for (u, v), x in var.items():
        inc[u].append(x)
        inc[v].append(x)
    with Solver(name=SOLVER) as s:
        for v in range(n):
            enc = CardEnc.equals(lits=inc[v], bound=2, vpool=pool, encoding=EncType.seqcounter)
            s.append_formula(enc.clauses)
        for _ in range(max_rounds):
            if not s.solve():
                return None
            chosen = {x for x in s.get_model() if x > 0}
            adj: list[list[int]] = [[] for _ in range(n)]
            for (u, v), x in var.items():
                if x in chosen:
                    adj[u].append(v)
                    adj[v].append(u)
            comps = _components(n, adj)
            if len(comps) == 1:
                cyc = _walk(adj, 0)
                if not is_hamiltonian_cycle(T, cyc):
                    raise PostconditionError("solver returned a bad cycle")
                return cyc
            for comp in comps:
                side = set(comp)
                s.add_clause([x for (u, v), x in var.items() if (u in side) != (v in side)])
    raise PostconditionError("Hamiltonian search exceeded its round limit")


def require_hamiltonian_cycle(T: Triangulation) -> list[int]:
    cyc = hamiltonian_cycle(T)
    if cyc is None:
        raise PostconditionError("triangulation has no Hamiltonian cycle")
    return cyc
