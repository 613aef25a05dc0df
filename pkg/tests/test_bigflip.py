import math
import random

import pytest

from oracles import brute_msf, connectivity, face_flip
from simflip.bigflip import (
    classify_edges,
    exact_max_flip,
    five_connected_max_flip,
    large_flip,
    seven_family,
    si_sets,
)
from simflip.core import (
    TriangulationError,
    edge_key,
    enumerate_triangulations,
    icosahedron,
    k4,
    octahedron,
    random_triangulation,
    standard,
    subdivide,
)
from simflip.cover import tait_coloring
from simflip.flips import bad_pair_partners, check_flipset, flip, seers
from simflip.separating import separating_triangles


def _five_connected(seed, flips=30):
    """Random flips on a subdivided icosahedron, kept only while 5-connected."""
    rng = random.Random(seed)
    T = subdivide(icosahedron())
    for _ in range(flips):
        e = rng.choice(list(T.edges()))
        if not check_flipset(T, [e]).ok:
            continue
        U = flip(T, [e])
        if min(U.degree(v) for v in range(U.n)) >= 5 and connectivity(U) >= 5:
            T = U
    return T


def test_classification_consistent():
    for T in (octahedron(), standard(8), random_triangulation(50, 1)):
        C = classify_edges(T)
        for e in T.edges():
            assert C.is_bad(e) == bool(bad_pair_partners(T, e))


def test_five_connected_all_good():
    C = classify_edges(icosahedron())
    assert not C.bad


def test_standard_path_edges_bad():
    T = standard(8)
    C = classify_edges(T)
    for i in range(2, 7):
        x, y = seers(T, i, i + 1)
        assert {x, y} == {0, 1}
    for i in range(3, 6):
        assert C.is_bad((i, i + 1))


def test_all_bad_face_has_low_degree_vertex():
    found = 0
    for n in range(6, 10):
        for T in enumerate_triangulations(n):
            C = classify_edges(T)
            for a, b, c in T.face_list:
                if all(C.is_bad(e) for e in ((a, b), (b, c), (a, c))):
                    found += 1
                    assert any(T.degree(v) in (3, 4) for v in (a, b, c))
    assert found > 0


def test_si_sets_five_connected_are_classes():
    T = icosahedron()
    col = tait_coloring(T)
    S = si_sets(T, col)
    assert [sorted(s) for s in S.sets] == [sorted(c) for c in col.classes]


@pytest.mark.parametrize("T", [octahedron(), standard(8), random_triangulation(70, 4)])
def test_si_sets_flippable_and_cover_separating(T):
    S = si_sets(T)
    for s in S.sets:
        assert face_flip(T, s) is not None or not s
    union = set().union(*S.sets)
    for st in separating_triangles(T):
        assert set(st.edges()) <= union


def test_large_flip_small_named():
    assert len(large_flip(k4())) == 2
    assert len(large_flip(octahedron())) == 3
    with pytest.raises(TriangulationError):
        large_flip(k4().__class__.from_faces([(0, 1, 2), (0, 2, 1)], 3))


@pytest.mark.parametrize("n", range(4, 10))
def test_large_flip_exhaustive(n):
    for T in enumerate_triangulations(n):
        S = large_flip(T)
        assert 3 * len(S) >= n - 2
        assert face_flip(T, S) is not None


@pytest.mark.parametrize("seed", range(20))
def test_large_flip_random_against_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(7, 20)
    T = random_triangulation(n, seed)
    S = large_flip(T)
    res = exact_max_flip(T, time_limit=30)
    assert math.ceil((n - 2) / 3) <= len(S)
    if res.exact:
        assert len(S) <= res.value <= n - 2


def test_large_flip_random_medium():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(20, 200)
        T = random_triangulation(n, rng.randrange(10**6))
        S = large_flip(T)
        assert 3 * len(S) >= n - 2 and check_flipset(T, S).ok


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_exact_against_brute_force(n):
    for T in enumerate_triangulations(n):
        res = exact_max_flip(T)
        assert res.exact and res.value == brute_msf(T)
        assert len(res.witness) == res.value and face_flip(T, res.witness) is not None


def test_exact_icosahedron():
    res = exact_max_flip(icosahedron())
    assert res.exact and res.value == 10


def test_exact_timeout_reported():
    res = exact_max_flip(random_triangulation(200, 3), time_limit=0.01)
    assert not res.exact and res.timed_out
    assert check_flipset(random_triangulation(200, 3), res.witness).ok or not res.witness


def test_seven_family_k4():
    G, S = seven_family(k4())
    assert G.n == 16 and len(S) == 12
    assert face_flip(G, S) is not None
    res = exact_max_flip(G)
    assert res.exact and res.value == 12 == 6 * (G.n - 2) // 7


def test_seven_family_octahedron():
    G, S = seven_family(octahedron())
    assert G.n == 30 and len(S) == 24 and check_flipset(G, S).ok


def test_five_connected_icosahedron():
    S = five_connected_max_flip(icosahedron())
    assert len(S) == 10 and face_flip(icosahedron(), S) is not None


def test_five_connected_rejects_standard():
    with pytest.raises(TriangulationError):
        five_connected_max_flip(standard(10))


@pytest.mark.parametrize("seed", range(3))
def test_five_connected_random(seed):
    T = _five_connected(seed)
    assert connectivity(T) >= 5
    S = five_connected_max_flip(T)
    assert len(S) == T.n - 2 and check_flipset(T, S).ok
    for a, b, c in T.face_list:
        assert len({edge_key(a, b), edge_key(b, c), edge_key(a, c)} & set(S)) == 1
