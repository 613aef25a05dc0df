"""Key pipelines must not depend on which face is marked as outer."""

import random

import pytest

from oracles import brute_separating, connectivity
from simflip.bigflip import large_flip
from simflip.core import is_isomorphic, random_triangulation, standard, validate
from simflip.cover import four_connectify, hamiltonize, three_disjoint_flips
from simflip.flips import check_flipset, flip
from simflip.morph import morph, morph_bound
from simflip.separating import containment_order, is_linear_extension, separating_triangles


def _rerooted(T, k, seed):
    rng = random.Random(seed)
    return [T.with_outerface(f) for f in rng.sample(list(T.face_list), k)]


@pytest.mark.parametrize("seed", range(4))
def test_separating_triangles_same_for_every_root(seed):
    T = random_triangulation(40, seed)
    want = {frozenset(t) for t in brute_separating(T)}
    for U in _rerooted(T, 6, seed):
        got = separating_triangles(U)
        assert {frozenset(s.vertices) for s in got} == want
        assert is_linear_extension(containment_order(U))


@pytest.mark.parametrize("seed", range(4))
def test_four_connectify_any_root(seed):
    T = random_triangulation(35, 10 + seed)
    for U in _rerooted(T, 5, seed):
        S, V = four_connectify(U)
        assert check_flipset(U, S).ok and validate(V).ok
        assert connectivity(V) >= 4
        for A in three_disjoint_flips(U):
            assert connectivity(flip(U, A)) >= 4


@pytest.mark.parametrize("seed", range(3))
def test_hamiltonize_and_large_flip_any_root(seed):
    T = random_triangulation(50, 20 + seed)
    for U in _rerooted(T, 4, seed):
        S, V, cyc = hamiltonize(U)
        assert check_flipset(U, S).ok
        assert all(V.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
        B = large_flip(U)
        assert 3 * len(B) >= U.n - 2 and check_flipset(U, B).ok


def test_morph_any_root():
    A, B = random_triangulation(60, 1), random_triangulation(60, 2)
    for U in _rerooted(A, 3, 0):
        for W in _rerooted(B, 2, 1) + [standard(60).with_outerface((0, 5, 6))]:
            seq = morph(U, W)
            assert len(seq) <= morph_bound(60)
            assert is_isomorphic(seq.replay(), W) is not None
