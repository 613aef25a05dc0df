import math
import random

import networkx as nx
import pytest

from oracles import brute_max_matching
from simflip.outerplane import (
    C1,
    OuterplaneError,
    OuterplaneGraph,
    apply_outer_flipset,
    check_outer_flipset,
    dual_tree,
    fan,
    low_degree_independent_set,
    make_dominant,
    max_outer_flip,
    outer_isomorphism,
    outer_morph,
    parse_outer,
    random_outerplane,
    reduce_diameter,
    serialize_outer,
    tight_tree,
    tight_tree_family,
    validate_outer,
    zigzag,
)


def _nx_dual(O):
    D = dual_tree(O)
    G = nx.Graph()
    G.add_nodes_from(range(D.num_nodes))
    G.add_edges_from(D.edges())
    return G


def _polygon_ok(O):
    """Chords pairwise non-crossing on the boundary circle, 2n-3 edges total."""
    pos = O.pos
    chords = [tuple(sorted((pos[u], pos[v]))) for u, v in O.chords]
    for a, b in chords:
        for c, d in chords:
            if a < c < b < d:
                return False
    return len(O.chords) == O.n - 3


def test_triangle_dual_single_node():
    O = OuterplaneGraph.from_edges([0, 1, 2], [])
    assert dual_tree(O).num_nodes == 1


def test_fan_dual_is_path():
    G = _nx_dual(fan(6))
    assert G.number_of_nodes() == 4
    assert nx.is_isomorphic(G, nx.path_graph(4))


@pytest.mark.parametrize("seed", range(8))
def test_dual_tree_is_tree(seed):
    O = random_outerplane(8 + 13 * seed, seed)
    G = _nx_dual(O)
    assert nx.is_tree(G) and G.number_of_nodes() == O.n - 2
    assert max(d for _, d in G.degree()) <= 3
    assert dual_tree(O).diameter() == nx.diameter(G)
    assert _polygon_ok(O)


def test_invalid_chords_rejected():
    with pytest.raises(OuterplaneError):
        OuterplaneGraph.from_edges(range(6), [(0, 3), (1, 4), (0, 2)])


def test_every_chord_flippable():
    O = random_outerplane(20, 3)
    for e in O.chords:
        assert check_outer_flipset(O, [e]).ok
        P, _ = apply_outer_flipset(O, [e])
        assert validate_outer(P) == [] and _polygon_ok(P)


def test_two_chords_of_one_face_rejected():
    O = fan(8)
    a, b, c = next(f for f in O.faces if sum(O.has_edge(*e) and tuple(sorted(e)) in O.chords
                                            for e in ((f[0], f[1]), (f[1], f[2]), (f[0], f[2]))) == 2)
    chords = [tuple(sorted(e)) for e in ((a, b), (b, c), (a, c)) if tuple(sorted(e)) in O.chords]
    assert not check_outer_flipset(O, chords).ok


def test_boundary_edge_rejected():
    O = fan(6)
    with pytest.raises(OuterplaneError):
        check_outer_flipset(O, [(O.boundary[0], O.boundary[1])])


def test_fan_alternate_chords():
    O = fan(8)
    v = O.boundary[0]
    chords = sorted((tuple(sorted(c)) for c in O.chords), key=lambda e: O.pos[e[0] if e[1] == v else e[1]])
    assert check_outer_flipset(O, chords[::2]).ok


@pytest.mark.parametrize("seed", range(10))
def test_flippable_iff_dual_matching(seed):
    rng = random.Random(seed)
    O = random_outerplane(rng.randint(6, 30), seed)
    D = dual_tree(O)
    chords = sorted(O.chords)
    for _ in range(20):
        S = rng.sample(chords, rng.randint(1, len(chords)))
        faces = [f for e in S for f in O.edge_faces[tuple(sorted(e))]]
        assert check_outer_flipset(O, S).ok == (len(faces) == len(set(faces)))
    assert D.is_tree()


@pytest.mark.parametrize("n", [6, 10, 25])
def test_max_outer_flip_bound(n):
    for seed in range(5):
        O = random_outerplane(n, seed)
        S = max_outer_flip(O)
        assert 3 * len(S) >= n - 3 and check_outer_flipset(O, S).ok
    assert len(max_outer_flip(fan(10))) >= 3


def test_tight_tree_small():
    adj = tight_tree(1)
    assert len(adj) == 4 and sorted(map(len, adj)) == [1, 1, 1, 3]


@pytest.mark.parametrize("depth", [3, 5])
def test_tight_family_matching(depth):
    O = tight_tree_family(depth)
    G = _nx_dual(O)
    m = G.number_of_edges()
    assert brute_max_matching(G.edges()) * 3 == m
    assert 3 * len(max_outer_flip(O)) == m == O.n - 3
    if depth == 3:
        assert G.number_of_nodes() == 10


def test_independent_set_fan():
    for n in (6, 12, 30):
        L = low_degree_independent_set(fan(n))
        assert 6 * len(L.I) >= n
        v = fan(n).boundary[0]
        assert v not in L.I


@pytest.mark.parametrize("seed", range(5))
def test_independent_set_random(seed):
    O = random_outerplane(60, seed)
    L = low_degree_independent_set(O)
    assert len(L.I) >= 10
    for u in L.I:
        assert O.degree(u) <= 4
        for w in L.I:
            assert u == w or not O.has_edge(u, w)


@pytest.mark.parametrize("n", [3, 20, 200])
def test_reduce_diameter(n):
    O = fan(n) if n > 3 else OuterplaneGraph.from_edges([0, 1, 2], [])
    seq, X = reduce_diameter(O)
    if n == 3:
        assert len(seq) == 0
    assert dual_tree(X).diameter() <= C1 * math.log2(n) + 1e-9
    assert len(seq) <= C1 * math.log2(n) + 1e-9
    assert seq.replay() == X


def test_make_dominant_fan_end_and_zigzag():
    O = fan(12)
    v = O.boundary[0]
    seq, X = make_dominant(O, v)
    assert len(seq) == 0
    w = O.boundary[1]
    seq, X = make_dominant(O, w)
    assert X.degree(w) == O.n - 1 and len(seq) <= dual_tree(O).diameter()
    Z = zigzag(12)
    mid = Z.boundary[6]
    seq, X = make_dominant(Z, mid)
    assert X.degree(mid) == 11


def test_outer_morph_fan_to_zigzag():
    seq = outer_morph(fan(20), zigzag(20))
    assert outer_isomorphism(seq.end, zigzag(20)) is not None
    assert len(seq) <= 4 * C1 * math.log2(20)


def test_outer_morph_identical():
    seq = outer_morph(fan(10), fan(10))
    assert len(seq) <= 4 * C1 * math.log2(10)
    assert outer_isomorphism(seq.end, fan(10)) is not None


@pytest.mark.parametrize("seed", range(3))
def test_outer_morph_random(seed):
    A, B = random_outerplane(100, seed), random_outerplane(100, seed + 50)
    seq = outer_morph(A, B)
    assert len(seq) <= 4 * C1 * math.log2(100)
    end = seq.replay()
    assert end == seq.end and outer_isomorphism(end, B) is not None


def test_isomorphism_handles_rotation_and_reflection():
    O = random_outerplane(15, 1)
    k = 4
    rot = {v: O.boundary[(i + k) % 15] for i, v in enumerate(O.boundary)}
    assert outer_isomorphism(O, O.relabel(rot)) is not None
    ref = {v: O.boundary[-i % 15] for i, v in enumerate(O.boundary)}
    assert outer_isomorphism(O, O.relabel(ref)) is not None
    assert outer_isomorphism(fan(15), zigzag(15)) is None


def test_text_round_trip():
    O = random_outerplane(25, 4)
    assert parse_outer(serialize_outer(O)) == O
    with pytest.raises(OuterplaneError):
        parse_outer("n 4\n0 1 2 3\n0 2\n1 3\n")
