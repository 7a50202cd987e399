import itertools

import numpy as np
import pytest

from instances import TWELVE_PI, SIX_PI, BOXES, BOXES_TIED
from mimsweep import (
    EdgeList,
    InvalidTrapezoid,
    Match,
    NotAPermutation,
    NotNormalized,
    edges_from_model,
    is_match,
    make_permutation,
    match_less,
    normalize_trapezoids,
    point_model,
)
from mimsweep.models import raw_trapezoids
from mimsweep.testing import InstanceSpec, diagonal_edges, generate


def test_make_permutation_inverse():
    m = make_permutation(TWELVE_PI)
    assert m.n == 12
    assert m.position(5) == 1 and m.position(9) == 12
    assert all(m.position(m.value(a)) == a for a in range(1, 13))


def test_inverse_of_small_instance():
    assert make_permutation(SIX_PI).pi_inv.tolist() == [3, 1, 2, 4, 6, 5]
    assert make_permutation([1]).pi_inv.tolist() == [1]


@pytest.mark.parametrize("bad", [[], [1, 1], [0, 1], [1, 3], [2, 3, 1, 5]])
def test_rejects_non_permutations(bad):
    with pytest.raises(NotAPermutation):
        make_permutation(bad)


def test_models_are_read_only():
    m = make_permutation(SIX_PI)
    with pytest.raises(ValueError):
        m.pi[0] = 9


def test_is_match_permutation():
    m = make_permutation(SIX_PI)
    assert is_match(m, 1, 3)
    assert not is_match(m, 2, 3)
    assert not is_match(m, 3, 1)
    ident = make_permutation(range(1, 6))
    assert not any(is_match(ident, a, b) for a in range(1, 6) for b in range(1, 6) if a != b)


def test_is_match_trapezoid_disjoint_boxes():
    t = normalize_trapezoids([(1, 2, 1, 2), (3, 4, 3, 4)])
    assert not is_match(t, 1, 2) and not is_match(t, 2, 1)


def test_match_less():
    m = make_permutation(SIX_PI)
    assert match_less(m, Match(1, 3), Match(5, 6))
    assert not match_less(m, Match(5, 6), Match(1, 3))
    t = normalize_trapezoids(BOXES)
    assert match_less(t, Match(2, 3), Match(5, 6))
    for e in [Match(1, 3), Match(1, 2), Match(5, 6)]:
        assert not match_less(m, e, e)


def _matches(model):
    return [Match(a, b) for a in range(1, model.n + 1) for b in range(1, model.n + 1) if a != b and is_match(model, a, b)]


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("kind", ["permutation", "trapezoid"])
def test_match_less_is_strict_order_with_no_cross_edges(kind, seed):
    model = generate(InstanceSpec(kind, 4 + seed % 7, seed))
    ms = _matches(model)
    es = edges_from_model(model).edge_set()
    for e, f in itertools.product(ms, repeat=2):
        if match_less(model, e, f):
            assert not match_less(model, f, e)
            for u in e:
                for v in f:
                    assert (min(u, v), max(u, v)) not in es
            for g in ms:
                if match_less(model, f, g):
                    assert match_less(model, e, g)


def test_edges_from_permutation():
    assert edges_from_model(make_permutation(SIX_PI)).edge_set() == {(1, 2), (1, 3), (5, 6)}
    assert edges_from_model(make_permutation(range(1, 6))).m == 0


@pytest.mark.parametrize("seed", range(40))
def test_permutation_edges_are_inversions(seed):
    model = generate(InstanceSpec("permutation", 1 + seed % 12, seed))
    pos = model.pi_inv
    expected = {
        (u, v) for u in range(1, model.n + 1) for v in range(u + 1, model.n + 1)
        if (u - v) * (pos[u - 1] - pos[v - 1]) < 0
    }
    assert edges_from_model(model).edge_set() == expected
    assert {(e.left, e.right) for e in _matches(model)} == expected


@pytest.mark.parametrize("seed", range(40))
def test_trapezoid_edges_match_diagonal_geometry(seed):
    model = generate(InstanceSpec("trapezoid", 1 + seed % 6, seed))
    assert edges_from_model(model).edge_set() == diagonal_edges(model).edge_set()


def test_edges_need_normalized_model():
    with pytest.raises(NotNormalized):
        edges_from_model(raw_trapezoids(BOXES_TIED))


def test_normalize_splits_ties_and_keeps_the_graph():
    t = normalize_trapezoids(BOXES_TIED)
    assert t.coords() == BOXES
    assert edges_from_model(t).edge_set() == diagonal_edges(BOXES_TIED).edge_set()


def test_normalize_identical_trapezoids():
    t = normalize_trapezoids([(1, 1, 1, 1), (1, 1, 1, 1)])
    assert sorted(t.x1.tolist() + t.x2.tolist()) == [1, 2, 3, 4]
    assert edges_from_model(t).edge_set() == diagonal_edges([(1, 1, 1, 1), (1, 1, 1, 1)]).edge_set() == {(1, 2)}


def test_normalize_is_idempotent_and_identity_on_normalized():
    rng = np.random.default_rng(1)
    for _ in range(50):
        raw = np.sort(rng.integers(-5, 5, size=(6, 2, 2)), axis=2).reshape(6, 4)
        once = normalize_trapezoids(raw)
        for lo, hi in ((once.x1, once.x2), (once.y1, once.y2)):
            assert sorted(lo.tolist() + hi.tolist()) == list(range(1, 13))
        assert normalize_trapezoids(once) is once
        assert normalize_trapezoids(once.coords()) == once
        assert edges_from_model(once).edge_set() == diagonal_edges(raw.tolist()).edge_set()


def test_normalize_accepts_wide_coordinates():
    big = 2**62
    t = normalize_trapezoids([(-big, big, -big, big), (0, 1, 0, 1)])
    assert t.coords() == [(1, 4, 1, 4), (2, 3, 2, 3)]


@pytest.mark.parametrize("bad", [[(2, 1, 1, 2)], [(1, 2, 3, 1)], [], [(1, 2, 3)]])
def test_normalize_rejects_bad_trapezoids(bad):
    with pytest.raises(InvalidTrapezoid):
        normalize_trapezoids(bad)


def test_point_model_reproduces_permutation_graph():
    for seed in range(20):
        perm = generate(InstanceSpec("permutation", 9, seed))
        assert edges_from_model(point_model(perm)).edge_set() == edges_from_model(perm).edge_set()


@pytest.mark.parametrize("edges", [[(1, 1)], [(1, 2), (2, 1)], [(0, 1)], [(1, 4)]])
def test_edge_list_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        EdgeList(3, tuple(edges))
