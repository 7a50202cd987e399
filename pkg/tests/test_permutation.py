import itertools

import numpy as np
import pytest

from instances import TWELVE_PI, SIX_PI
from mimsweep import (
    Match,
    build_all_matches,
    build_mim,
    calculate_f_and_link_linear,
    calculate_f_and_link_quadratic,
    edges_from_model,
    make_permutation,
    match_less,
    mim_permutation,
)
from mimsweep.chain import NO_LINK
from mimsweep.testing import InstanceSpec, generate, oracle_mim, validate_induced_matching

ENGINES = [calculate_f_and_link_quadratic, calculate_f_and_link_linear]


def test_match_lists_small():
    ml = build_all_matches(make_permutation(SIX_PI))
    assert [ml[x] for x in range(1, 7)] == [[], [1], [1], [], [], [5]]
    assert ml.m == 3


def test_identity_has_no_matches():
    ml = build_all_matches(make_permutation(range(1, 50)))
    assert ml.m == 0 and all(ml[x] == [] for x in range(1, 50))


def test_reversal_lists():
    model = make_permutation([4, 3, 2, 1])
    ml = build_all_matches(model)
    assert ml.m == 6
    for x in range(1, 5):
        assert sorted(ml[x]) == list(range(1, x))
        assert [model.position(y) for y in ml[x]] == sorted((model.position(y) for y in ml[x]), reverse=True)


@pytest.mark.parametrize("seed", range(25))
def test_match_lists_are_exact_and_ordered(seed):
    model = generate(InstanceSpec("permutation", 1 + seed * 3, seed))
    ml = build_all_matches(model)
    pos = model.pi_inv.tolist()
    inversions = 0
    for x in range(1, model.n + 1):
        want = {y for y in range(1, x) if pos[y - 1] > pos[x - 1]}
        got = ml[x]
        assert set(got) == want and len(got) == len(want)
        keys = [pos[y - 1] for y in got]
        assert all(a > b for a, b in zip(keys, keys[1:]))
        inversions += len(want)
    assert ml.m == inversions
    assert all(e.right == x for x in range(1, model.n + 1) for e in map(ml.match, ml.ids(x)))


@pytest.mark.parametrize("engine", ENGINES)
def test_small_instance_chain(engine):
    model = make_permutation(SIX_PI)
    dp = engine(model, build_all_matches(model))
    assert dp.max_f == 2
    assert dp.f_of(Match(1, 3)) == 2 and dp.f_of(Match(1, 2)) == 2
    assert dp.link_of(Match(1, 3)) == Match(5, 6)
    assert dp.link_of(Match(5, 6)) is None


@pytest.mark.parametrize("engine", ENGINES)
def test_larger_instance_chain(engine):
    model = make_permutation(TWELVE_PI)
    dp = engine(model, build_all_matches(model))
    assert dp.max_f == 3
    mim = build_mim(dp)
    assert mim.size == 3
    assert validate_induced_matching(edges_from_model(model), mim).ok


@pytest.mark.parametrize("engine", ENGINES)
def test_no_matches(engine):
    model = make_permutation(range(1, 9))
    dp = engine(model, build_all_matches(model))
    assert dp.f.size == 0 and dp.max_f == 0
    assert build_mim(dp).size == 0


def test_two_swaps():
    mim = mim_permutation(make_permutation([2, 1, 4, 3]))
    assert mim.sorted_edges() == [(1, 2), (3, 4)]


def test_identity_large():
    assert mim_permutation(make_permutation(range(1, 1001))).size == 0


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        mim_permutation(make_permutation([1]), "cubic")


def _check_dp(model, dp):
    ml = dp.matches
    assert (dp.f >= 1).all()
    for i in range(ml.m):
        j = int(dp.link[i])
        if j != NO_LINK:
            assert match_less(model, ml.match(i), ml.match(j))
            assert dp.f[i] == dp.f[j] + 1
        else:
            assert dp.f[i] == 1


@pytest.mark.parametrize("seed", range(60))
def test_engines_agree_and_chains_are_sound(seed):
    n = 1 + (seed * 37) % 200
    family = ("uniform-random", "nested", "identity-plus-k-swaps", "reversal")[seed % 4]
    model = generate(InstanceSpec("permutation", n, seed, family))
    ml = build_all_matches(model)
    dps = [engine(model, ml) for engine in ENGINES]
    assert dps[0].max_f == dps[1].max_f
    edges = edges_from_model(model)
    for dp in dps:
        _check_dp(model, dp)
        mim = build_mim(dp)
        assert mim.size == dp.max_f
        assert all(match_less(model, a, b) for a, b in zip(mim.chain, mim.chain[1:]))
        assert validate_induced_matching(edges, mim).ok


def test_exhaustive_small_against_oracle():
    for n in range(1, 6):
        for perm in itertools.permutations(range(1, n + 1)):
            model = make_permutation(perm)
            best = oracle_mim(edges_from_model(model)).size
            assert mim_permutation(model, "linear").size == best
            assert mim_permutation(model, "quadratic").size == best


def test_linear_engine_work_stays_linear():
    for seed in range(5):
        model = generate(InstanceSpec("permutation", 3000, seed))
        ml = build_all_matches(model)
        dp = calculate_f_and_link_linear(model, ml)
        assert dp.stats["work"] <= 8 * (ml.m + model.n)
        # every visited row belongs to a match, so visits never exceed m
        assert dp.stats["cell_visits"] <= ml.m


def test_dtypes_are_narrow():
    model = generate(InstanceSpec("permutation", 500, 1))
    ml = build_all_matches(model)
    dp = calculate_f_and_link_linear(model, ml)
    assert ml.left.dtype == np.int16 and dp.f.dtype == np.int16
