from collections import Counter

import numpy as np
import pytest

from instances import SEVEN_MIM, SEVEN, BOXES_MATCHES, BOXES, BOXES_TIED
from mimsweep import (
    Match,
    ModelCorrupt,
    NotNormalized,
    build_all_matches,
    build_all_matches_trap,
    calculate_f_and_link_trap,
    edges_from_model,
    is_match,
    make_permutation,
    match_less,
    mim_permutation,
    mim_trapezoid,
    normalize_trapezoids,
    point_model,
)
from mimsweep.chain import NO_LINK, build_mim
from mimsweep.models import raw_trapezoids
from mimsweep.testing import InstanceSpec, generate, oracle_mim, validate_induced_matching
from mimsweep.trapezoid import CornerIndex, build_corner_index, build_rev_match_lists


def _pairs(ml):
    return [(e.left, e.right) for e in ml]


def test_corner_index():
    t = normalize_trapezoids(BOXES)
    c = build_corner_index(t)
    assert c.x_corner(1) == (2, "x1")
    assert c.y_corner(12) == (6, "y2")


def test_corner_index_needs_normalized():
    with pytest.raises(NotNormalized):
        build_corner_index(raw_trapezoids(BOXES))


def test_fixture_matches():
    t = normalize_trapezoids(BOXES_TIED)
    ml = build_all_matches_trap(t)
    assert set(_pairs(ml)) == BOXES_MATCHES and ml.m == 4
    assert all(is_match(t, a, b) for a, b in BOXES_MATCHES)


def test_fixture_duplicate_bound_is_reached():
    rev = build_rev_match_lists(normalize_trapezoids(BOXES))
    assert max(Counter(rev[a]).most_common(1)[0][1] for a in range(1, 7) if rev[a]) == 4


def test_fixture_chain():
    t = normalize_trapezoids(BOXES)
    dp = calculate_f_and_link_trap(t, build_all_matches_trap(t))
    assert dp.max_f == 2
    assert dp.link_of(Match(2, 3)) == Match(5, 6)
    assert mim_trapezoid(t).size == 2


def test_reconstructed_seven_trapezoids():
    t = normalize_trapezoids(SEVEN)
    edges = edges_from_model(t)
    assert validate_induced_matching(edges, SEVEN_MIM).ok
    assert oracle_mim(edges).size == 2
    mim = mim_trapezoid(t)
    assert mim.size == 2 and validate_induced_matching(edges, mim).ok


def test_separated_has_no_matches():
    t = generate(InstanceSpec("trapezoid", 30, 0, "separated"))
    ml = build_all_matches_trap(t)
    assert ml.m == 0
    assert mim_trapezoid(t).size == 0


def test_single_trapezoid():
    assert mim_trapezoid(normalize_trapezoids([(3, 9, 1, 1)])).size == 0


def test_raw_model_is_normalized_first():
    assert mim_trapezoid(raw_trapezoids(BOXES_TIED)).size == 2


@pytest.mark.parametrize("seed", range(40))
def test_match_lists_exact(seed):
    family = ("uniform-random", "nested", "identity-plus-k-swaps", "reversal")[seed % 4]
    t = generate(InstanceSpec("trapezoid", 1 + seed % 25, seed, family))
    ml = build_all_matches_trap(t)
    got = _pairs(ml)
    assert len(got) == len(set(got))
    want = {(a, b) for a in range(1, t.n + 1) for b in range(1, t.n + 1) if a != b and is_match(t, a, b)}
    assert set(got) == want
    assert want == {(a, b) if t[a].x2 < t[b].x2 else (b, a) for a, b in edges_from_model(t).edges}
    y2 = t.y2
    for x in range(1, t.n + 1):
        keys = [y2[b - 1] for b in ml[x]]
        assert keys == sorted(keys, reverse=True)
    rev = ml.rev
    for a in range(1, t.n + 1):
        for b, k in Counter(rev[a]).items():
            assert k <= 4
            assert is_match(t, a, b) or is_match(t, b, a)
    assert rev.total <= 4 * ml.m


@pytest.mark.parametrize("seed", range(60))
def test_against_oracle(seed):
    t = generate(InstanceSpec("trapezoid", 1 + seed % 6, seed))
    edges = edges_from_model(t)
    dp = calculate_f_and_link_trap(t, build_all_matches_trap(t))
    ml = dp.matches
    for i in range(ml.m):
        j = int(dp.link[i])
        if j != NO_LINK:
            assert match_less(t, ml.match(i), ml.match(j)) and dp.f[i] == dp.f[j] + 1
    mim = build_mim(dp)
    assert all(match_less(t, a, b) for a, b in zip(mim.chain, mim.chain[1:]))
    assert validate_induced_matching(edges, mim).ok
    assert mim.size == oracle_mim(edges).size


@pytest.mark.parametrize("seed", range(30))
def test_point_model_matches_permutation(seed):
    perm = generate(InstanceSpec("permutation", 1 + seed * 3, seed))
    pm = point_model(perm)
    # vertex v of the permutation is trapezoid v of the point model
    assert sorted(_pairs(build_all_matches_trap(pm))) == sorted(_pairs(build_all_matches(perm)))
    assert mim_trapezoid(pm).size == mim_permutation(perm).size


def test_work_counter_bound():
    for family in ("uniform-random", "nested", "reversal", "identity-plus-k-swaps", "separated"):
        t = generate(InstanceSpec("trapezoid", 1500, 2, family))
        ml = build_all_matches_trap(t)
        dp = calculate_f_and_link_trap(t, ml)
        assert dp.stats["work"] <= 16 * (ml.m + t.n), family


def test_missing_diagonal_partner_is_reported():
    t = normalize_trapezoids([(1, 2, 1, 2), (3, 4, 3, 4)])
    good = build_corner_index(t)
    # hand every y corner to trapezoid 1: its diagonal partners run out
    y_owner = np.ones_like(good.y_owner)
    bad = CornerIndex(t.n, good.x_owner, good.x_role, y_owner, good.y_role)
    with pytest.raises(ModelCorrupt):
        build_rev_match_lists(t, bad)
