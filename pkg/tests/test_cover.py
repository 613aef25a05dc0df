import random

import networkx as nx
import pytest

from oracles import brute_hamiltonian, brute_separating, connectivity, to_nx
from simflip.coloring import four_colouring, is_proper, tait_classes, tait_colouring
from simflip.core import (
    TriangulationError,
    dual,
    edge_key,
    k4,
    octahedron,
    random_triangulation,
    stack,
    standard,
    validate,
)
from simflip.cover import (
    face_set,
    four_connectify,
    hamiltonize,
    is_triangle_cover,
    tait_coloring,
    three_disjoint_flips,
    triangle_set,
)
from simflip.bigflip import seven_family
from simflip.flips import check_flipset, flip
from simflip.hamiltonian import hamiltonian_cycle, is_hamiltonian_cycle
from simflip.matching import matching_edges, max_matching
from simflip.separating import separating_triangles


def _k5e():
    return stack(k4(), k4().face_list[0])


def _nested_double():
    T = k4()
    f = T.face_list[1]
    T = stack(T, f)
    return stack(T, (f[0], f[1], T.n - 1))


def _goldner_harary():
    T = _k5e()
    for f in list(T.face_list):
        T = stack(T, f)
    return T


def _one_per_triangle(T, S):
    S = {edge_key(*e) for e in S}
    tris = [f for f in T.face_list] + [tuple(t) for t in brute_separating(T)]
    for a, b, c in tris:
        if len(S & {edge_key(a, b), edge_key(b, c), edge_key(a, c)}) != 1:
            return False
    return True


# -- matching and colouring helpers ------------------------------------------


@pytest.mark.parametrize("seed", range(15))
def test_matching_size_against_networkx(seed):
    rng = random.Random(seed)
    G = nx.gnp_random_graph(rng.randint(5, 60), rng.uniform(0.05, 0.3), seed=seed)
    adj = [sorted(G[v]) for v in range(G.number_of_nodes())]
    mate = max_matching(adj)
    M = matching_edges(mate)
    assert all(G.has_edge(u, v) for u, v in M)
    assert len({v for e in M for v in e}) == 2 * len(M)
    assert len(M) == len(nx.max_weight_matching(G, maxcardinality=True))


def test_matching_respects_inactive_vertices():
    G = nx.cycle_graph(6)
    adj = [sorted(G[v]) for v in range(6)]
    active = [True] * 6
    active[0] = False
    mate = max_matching(adj, active)
    assert mate[0] == -1 and len(matching_edges(mate)) == 2


@pytest.mark.parametrize("seed", range(6))
def test_four_colouring_proper(seed):
    T = random_triangulation(20 + 60 * seed, seed)
    col = four_colouring(T.rotation)
    assert is_proper(T.rotation, col)


def test_tait_classes_partition_edges():
    T = random_triangulation(40, 1)
    tc = tait_colouring(T)
    classes = tait_classes(tc)
    assert sum(map(len, classes)) == T.num_edges


# -- face and triangle sets ---------------------------------------------------


def test_k4_face_set():
    S = face_set(k4())
    assert len(S) == 2


@pytest.mark.parametrize("T", [k4(), octahedron(), standard(9), random_triangulation(50, 2)])
def test_face_set_one_per_face(T):
    S = face_set(T)
    assert len(S) == T.n - 2
    for a, b, c in T.face_list:
        assert len({edge_key(a, b), edge_key(b, c), edge_key(a, c)} & set(S)) == 1


def test_face_set_forced_edge():
    T = octahedron()
    for e in T.edges():
        S = face_set(T, e)
        assert e in S and len(S) == 4


def test_face_set_matches_dual_matching():
    T = random_triangulation(40, 6)
    D = nx.Graph(dual(T).edges())
    assert len(nx.max_weight_matching(D, maxcardinality=True)) == T.n - 2 == len(face_set(T))


@pytest.mark.parametrize("T", [_k5e(), _nested_double(), standard(10), random_triangulation(80, 5)])
def test_triangle_set_hits_every_triangle_once(T):
    cover = triangle_set(T)
    assert _one_per_triangle(T, cover.edges)
    assert is_triangle_cover(T, cover.edges)


def test_triangle_set_four_connected_is_face_set():
    T = octahedron()
    S = triangle_set(T).edges
    assert len(S) == T.n - 2 and _one_per_triangle(T, S)


def test_triangle_set_forced_edge():
    T = random_triangulation(60, 9)
    for e in list(T.edges())[::7]:
        S = triangle_set(T, forced_edge=e).edges
        assert e in S and _one_per_triangle(T, S)


# -- one flip to 4-connected ---------------------------------------------------


def test_four_connected_unchanged():
    S, U = four_connectify(octahedron())
    assert S == [] and U == octahedron()


@pytest.mark.parametrize("T", [standard(8), seven_family(k4())[0], random_triangulation(40, 1),
                               random_triangulation(60, 8)])
def test_four_connectify_small(T):
    S, U = four_connectify(T)
    assert validate(U).ok and check_flipset(T, S).ok
    assert not brute_separating(U)
    assert connectivity(U) >= 4
    assert min(U.degree(v) for v in range(U.n)) >= 4


def test_four_connectify_rejects_tiny():
    with pytest.raises(TriangulationError):
        four_connectify(_k5e())


def test_tait_k4_classes_are_perfect_matchings():
    tc = tait_coloring(k4())
    for cls in tc.classes:
        assert len(cls) == 2 and len({v for e in cls for v in e}) == 4


@pytest.mark.parametrize("T", [octahedron(), random_triangulation(60, 3)])
def test_tait_trichromatic(T):
    tc = tait_coloring(T)
    tris = list(T.face_list) + [tuple(t) for t in brute_separating(T)]
    for a, b, c in tris:
        assert {tc.colour((a, b)), tc.colour((b, c)), tc.colour((a, c))} == {1, 2, 3}


def test_three_disjoint_on_four_connected():
    assert three_disjoint_flips(octahedron()) == ([], [], [])


def test_three_disjoint_rejects_tiny():
    with pytest.raises(TriangulationError):
        three_disjoint_flips(_k5e())


@pytest.mark.parametrize("seed", range(4))
def test_three_disjoint(seed):
    T = random_triangulation(30, 40 + seed)
    assert separating_triangles(T)
    sets = three_disjoint_flips(T)
    for i in range(3):
        for j in range(i + 1, 3):
            assert not set(sets[i]) & set(sets[j])
    for S in sets:
        U = flip(T, S)
        assert connectivity(U) >= 4


# -- Hamiltonian cycles ------------------------------------------------------------


@pytest.mark.parametrize("T", [k4(), octahedron()])
def test_small_hamiltonian(T):
    cyc = hamiltonian_cycle(T)
    assert len(cyc) == T.n and is_hamiltonian_cycle(T, cyc)


def test_non_hamiltonian_detected():
    T = _goldner_harary()
    assert T.n == 11
    assert not brute_hamiltonian(T)
    assert hamiltonian_cycle(T) is None


@pytest.mark.parametrize("seed", range(10))
def test_hamiltonian_agrees_with_brute_force(seed):
    T = random_triangulation(12, seed)
    assert (hamiltonian_cycle(T) is not None) == brute_hamiltonian(T)


@pytest.mark.parametrize("seed", range(3))
def test_hamiltonize(seed):
    T = random_triangulation(50, seed)
    S, U, cyc = hamiltonize(T)
    assert check_flipset(T, S).ok and flip(T, S) == U
    assert is_hamiltonian_cycle(U, cyc)
    G = to_nx(U)
    assert all(G.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
