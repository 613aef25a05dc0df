import itertools
import random

import networkx as nx
import pytest

from oracles import brute_embedding_iso, to_nx
from simflip.core import (
    Triangulation,
    TriangulationError,
    canonical_code,
    dual,
    dual_bridges,
    enumerate_triangulations,
    faces,
    icosahedron,
    is_embedding_map,
    is_isomorphic,
    k4,
    octahedron,
    parse_tri,
    random_triangulation,
    serialize_tri,
    stack,
    standard,
    validate,
)


def test_k4_valid():
    assert validate(k4()).ok


def test_asymmetric_rotation_reported():
    T = k4()
    rot = [list(r) for r in T.rotation]
    rot[0] = [1, 2]
    rep = validate(Triangulation.from_rotation(rot, T.outerface))
    assert not rep.ok
    assert any("asymmetric" in v or "degree" in v for v in rep.violations)


def test_parallel_edge_reported():
    T = k4()
    rot = [list(r) for r in T.rotation]
    rot[0] = [1, 2, 1]
    rep = validate(Triangulation.from_rotation(rot, T.outerface))
    assert any("parallel" in v for v in rep.violations)


@pytest.mark.parametrize("T,n,m,f", [(k4(), 4, 6, 4), (octahedron(), 6, 12, 8),
                                     (standard(10), 10, 24, 16), (icosahedron(), 12, 30, 20)])
def test_euler_counts(T, n, m, f):
    assert validate(T).ok
    assert (T.n, T.num_edges, len(faces(T))) == (n, m, f)


def test_dual_of_k4_is_k4():
    D = dual(k4())
    G = nx.Graph(D.edges())
    assert nx.is_isomorphic(G, nx.complete_graph(4))


def test_dual_of_octahedron_is_cube():
    D = dual(octahedron())
    assert nx.is_isomorphic(nx.Graph(D.edges()), nx.hypercube_graph(3))


@pytest.mark.parametrize("n", [6, 9, 20])
def test_dual_cubic_bridgeless(n):
    D = dual(standard(n))
    assert D.num_nodes == 2 * n - 4 and D.is_cubic()
    G = nx.Graph(D.edges())
    assert not list(nx.bridges(G))
    assert dual_bridges(D) == []


def test_standard_degrees():
    assert sorted(standard(6).degree(v) for v in range(6)) == [3, 3, 4, 4, 5, 5]
    T = standard(10)
    assert [T.degree(0), T.degree(1)] == [9, 9]
    assert T.outerface == (0, 1, 2)


def test_random_deterministic():
    a, b = random_triangulation(50, 7), random_triangulation(50, 7)
    assert a == b
    assert validate(a).ok
    assert random_triangulation(4, 3) == k4() or is_isomorphic(random_triangulation(4, 3), k4())


def test_random_seeds_differ():
    assert canonical_code(random_triangulation(50, 7)) != canonical_code(random_triangulation(50, 8))


def test_relabel_isomorphic():
    T = standard(8)
    perm = list(range(8))
    random.Random(1).shuffle(perm)
    U = T.relabel(perm)
    phi = is_isomorphic(T, U)
    assert phi is not None and is_embedding_map(T, U, phi)


def test_degree_sequence_obstruction():
    T = standard(8)
    U = random_triangulation(8, 3)
    if sorted(map(len, T.rotation)) != sorted(map(len, U.rotation)):
        assert is_isomorphic(T, U) is None


def test_octahedron_vs_other_six():
    assert is_isomorphic(octahedron(), standard(6)) is None


def test_enumeration_counts():
    # one and one triangulation at n=4,5 and two at n=6
    assert [len(enumerate_triangulations(n, reflect=True)) for n in (4, 5, 6)] == [1, 1, 2]


@pytest.mark.parametrize("n", [7, 8])
def test_enumeration_matches_graph_isomorphism(n):
    # 3-connected planar graphs embed uniquely up to mirror image
    Ts = enumerate_triangulations(n, reflect=True)
    Gs = [to_nx(T) for T in Ts]
    for a, b in itertools.combinations(Gs, 2):
        assert not nx.is_isomorphic(a, b)
    rng = random.Random(n)
    for _ in range(40):
        G = to_nx(random_triangulation(n, rng.randrange(10**6)))
        assert any(nx.is_isomorphic(G, H) for H in Gs)


def test_canonical_code_against_brute_force():
    Ts = enumerate_triangulations(6) + enumerate_triangulations(5)
    rng = random.Random(0)
    for T in Ts:
        perm = list(range(T.n))
        rng.shuffle(perm)
        U = T.relabel(perm)
        for V in Ts:
            if V.n != T.n:
                continue
            for reflect in (False, True):
                assert (is_isomorphic(U, V, reflect) is not None) == brute_embedding_iso(U, V, reflect)


def test_mirror_needs_reflect_mode():
    # an asymmetric embedding differs from its mirror only in oriented mode
    for T in enumerate_triangulations(8):
        M = T.mirror()
        if is_isomorphic(T, M) is None:
            assert is_isomorphic(T, M, reflect=True) is not None
            return
    pytest.fail("no chiral triangulation on 8 vertices found")


def test_round_trip_text():
    for T in (k4(), octahedron(), random_triangulation(30, 2)):
        text = serialize_tri(T)
        U = parse_tri(text)
        assert U == T and U.outerface == T.outerface
        assert serialize_tri(U) == text


def test_parse_rejects_bad_outerface():
    body = [l for l in serialize_tri(octahedron()).splitlines() if not l.startswith("outer")]
    with pytest.raises(TriangulationError):
        parse_tri("\n".join(body + ["outer: 0 2 4"]))
    with pytest.raises(TriangulationError):
        parse_tri("\n".join(body))


def test_parse_rejects_duplicate_neighbour():
    lines = serialize_tri(k4()).splitlines()
    lines[1] = lines[1] + " " + lines[1].split()[1]
    with pytest.raises(TriangulationError):
        parse_tri("\n".join(lines))


def test_parse_comments_and_errors():
    text = "# comment\n" + serialize_tri(k4())
    assert parse_tri(text) == k4()
    with pytest.raises(TriangulationError):
        parse_tri("n 4\n0: 1 x\n")
    with pytest.raises(TriangulationError):
        parse_tri("")


def test_stack_adds_degree_three_vertex():
    T = stack(k4(), k4().face_list[0])
    assert T.n == 5 and validate(T).ok and T.degree(4) == 3
