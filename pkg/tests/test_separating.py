import random

import networkx as nx
import pytest

from oracles import brute_separating, to_nx
from simflip.core import k4, octahedron, random_triangulation, stack, standard
from simflip.bigflip import seven_family
from simflip.separating import (
    all_triangles,
    canonical_ordering,
    containment_order,
    is_linear_extension,
    nesting_depth,
    separating_triangles,
    verify_canonical_ordering,
)


def _inside(T, t):
    """Vertices cut off from the outerface by removing ``t``."""
    G = to_nx(T)
    G.remove_nodes_from(t)
    anchor = next(v for v in T.outerface if v not in t)
    return frozenset(G.nodes) - nx.node_connected_component(G, anchor)


def _nested(times):
    T = k4()
    f = T.face_list[1]
    for _ in range(times):
        T = stack(T, f)
        x = T.n - 1
        f = (f[0], f[1], x)
    return T


@pytest.mark.parametrize("T", [k4(), standard(8), octahedron(), random_triangulation(100, 3),
                               random_triangulation(300, 11)])
def test_canonical_ordering_verified(T):
    co = canonical_ordering(T)
    assert verify_canonical_ordering(T, co) == []
    a, b, c = T.outerface
    assert co.order[0] == a and co.order[1] == b and co.order[-1] == c


def test_canonical_ordering_detects_tampering():
    T = random_triangulation(30, 2)
    co = canonical_ordering(T)
    order = list(co.order)
    order[2], order[-2] = order[-2], order[2]
    from simflip.separating import CanonicalOrdering
    bad = CanonicalOrdering(tuple(order), co.interval)
    assert verify_canonical_ordering(T, bad) != []


def test_octahedron_has_none():
    assert separating_triangles(octahedron()) == []


def test_k5_minus_edge_has_one():
    T = stack(k4(), k4().face_list[0])
    (st,) = separating_triangles(T)
    assert set(st.vertices) == set(k4().face_list[0])


def test_seven_family_over_k4():
    G, _ = seven_family(k4())
    assert len(separating_triangles(G)) >= 4


@pytest.mark.parametrize("seed", range(12))
def test_against_brute_force(seed):
    rng = random.Random(seed)
    T = random_triangulation(rng.randint(5, 80), seed)
    found = separating_triangles(T)
    assert {frozenset(s.vertices) for s in found} == brute_separating(T)
    for s in found:
        assert s.icom == _inside(T, s.vertices)
        assert s.level == max(canonical_ordering(T).index[v] for v in s.vertices)


def test_all_triangles_count():
    T = random_triangulation(60, 4)
    G = to_nx(T)
    assert len(all_triangles(T)) == sum(nx.triangles(G).values()) // 3


def test_nested_order_innermost_first():
    T = _nested(3)
    R = containment_order(T)
    assert len(R) >= 2
    sizes = [len(s.icom) for s in R]
    assert sizes == sorted(sizes)
    assert is_linear_extension(R)
    assert nesting_depth(R) == len(R)


@pytest.mark.parametrize("seed", range(10))
def test_order_extends_inclusion(seed):
    T = random_triangulation(50 + 10 * seed, 100 + seed)
    R = containment_order(T)
    # brute force: whenever one inner side contains another, it comes later
    for i, s in enumerate(R):
        for t in R[i + 1:]:
            assert not (t.icom < s.icom)
            assert t.icom >= s.icom or not (t.icom & s.icom) or t.icom == s.icom
    assert is_linear_extension(R)


def test_is_linear_extension_rejects_reverse():
    T = _nested(3)
    R = containment_order(T)
    assert not is_linear_extension(list(reversed(R)))
