import itertools
from fractions import Fraction
from math import comb

import pytest

from lmlab import (
    BallParams,
    CapExceededError,
    HypothesesUnmetError,
    IntVector,
    InvalidParameterError,
    ball_volume,
    pair_weight_matrix,
    enumerate_ball,
    iter_ball_coords,
    volume_ratio_bound,
)


def brute_ball(n, e, kplus, kminus):
    """Independent enumeration oracle: filter the whole coordinate box."""
    out = []
    for v in itertools.product(range(-kminus, kplus + 1), repeat=n):
        if sum(1 for c in v if c) <= e:
            out.append(v)
    return out


class TestBallParams:
    def test_symmetric_constructor(self):
        p = BallParams.symmetric(3, 1, 2)
        assert (p.n, p.e, p.kplus, p.kminus) == (3, 1, 2, 2)
        assert p.is_symmetric and p.s == 2 and p.span == 4

    def test_asymmetric(self):
        p = BallParams(n=3, e=2, kplus=2, kminus=0)
        assert not p.is_symmetric
        with pytest.raises(InvalidParameterError):
            p.s  # noqa: B018

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=0, e=0, kplus=1, kminus=1),
            dict(n=3, e=4, kplus=1, kminus=1),
            dict(n=3, e=-1, kplus=1, kminus=1),
            dict(n=3, e=1, kplus=1, kminus=2),
            dict(n=3, e=1, kplus=0, kminus=0),
            dict(n=3, e=1, kplus=-1, kminus=-1),
        ],
    )
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(InvalidParameterError):
            BallParams(**kwargs)

    def test_zero_magnitude_allowed_when_e_is_zero(self):
        assert ball_volume(BallParams(n=2, e=0, kplus=0, kminus=0)) == 1

    def test_symmetric_needs_positive_s(self):
        with pytest.raises(InvalidParameterError):
            BallParams.symmetric(3, 1, 0)


class TestIntVector:
    def test_weight_and_support(self):
        v = IntVector((0, -2, 0, 3))
        assert v.weight == 2
        assert v.support == (1, 3)
        assert len(v) == 4 and v[3] == 3

    def test_arithmetic(self):
        v = IntVector((1, 2))
        assert (-v).coords == (-1, -2)
        assert (v + (1, 1)).coords == (2, 3)
        assert (v - IntVector((1, 1))).coords == (0, 1)


class TestBallVolume:
    def test_worked_values(self):
        assert ball_volume(BallParams.symmetric(3, 1, 1)) == 7
        assert ball_volume(BallParams.symmetric(2, 2, 1)) == 9  # full box
        assert ball_volume(BallParams.symmetric(10, 2, 1)) == 201

    def test_closed_form_matches_enumeration(self):
        for n in (1, 2, 3):
            for e in range(n + 1):
                for kplus in (1, 2):
                    for kminus in range(kplus + 1):
                        p = BallParams(n=n, e=e, kplus=kplus, kminus=kminus)
                        assert ball_volume(p) == len(brute_ball(n, e, kplus, kminus))

    def test_general_formula(self):
        p = BallParams(n=10, e=3, kplus=3, kminus=1)
        assert ball_volume(p) == sum(comb(10, i) * 4**i for i in range(4))


class TestEnumerateBall:
    def test_interval(self):
        got = [v.coords for v in enumerate_ball(BallParams.symmetric(1, 1, 2))]
        assert got == [(-2,), (-1,), (0,), (1,), (2,)]

    def test_cross_order(self):
        got = [v.coords for v in enumerate_ball(BallParams.symmetric(2, 1, 1))]
        assert got == [(-1, 0), (0, -1), (0, 0), (0, 1), (1, 0)]

    def test_lexicographic_and_unique(self):
        for n, e, s in [(3, 1, 1), (3, 2, 2), (4, 2, 1)]:
            got = [v.coords for v in enumerate_ball(BallParams.symmetric(n, e, s))]
            assert got == sorted(got)
            assert len(set(got)) == len(got)

    def test_count_matches_volume(self):
        for n in (1, 2, 3):
            for e in range(n + 1):
                for s in (1, 2):
                    p = BallParams.symmetric(n, e, s)
                    assert sum(1 for _ in enumerate_ball(p)) == ball_volume(p)

    def test_asymmetric_range(self):
        got = set(iter_ball_coords(BallParams(n=2, e=1, kplus=2, kminus=0)))
        assert got == set(brute_ball(2, 1, 2, 0))

    def test_negation_symmetry(self):
        p = BallParams.symmetric(3, 2, 2)
        cells = set(iter_ball_coords(p))
        assert all(tuple(-c for c in v) in cells for v in cells)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            list(enumerate_ball(BallParams.symmetric(3, 1, 1), cap=5))

    def test_streams_restart_independently(self):
        p = BallParams.symmetric(2, 1, 1)
        first = list(enumerate_ball(p))
        second = list(enumerate_ball(p))
        assert first == second


class TestPairWeightMatrix:
    def test_s1_rows(self):
        m = pair_weight_matrix(1)
        assert m.entries == ((0, 1, 2), (1, 0, 1), (2, 1, 0))

    def test_s2_entry(self):
        assert pair_weight_matrix(2).entry(-2, 1) == 2

    @pytest.mark.parametrize("s", [1, 2, 3, 4])
    def test_structure(self, s):
        m = pair_weight_matrix(s)
        for x in range(-s, s + 1):
            for y in range(-s, s + 1):
                expected = 0 if x == y else (1 if abs(x - y) <= s else 2)
                assert m.entry(x, y) == expected
                assert m.entry(x, y) == m.entry(y, x)

    def test_rejects_bad_s(self):
        with pytest.raises(InvalidParameterError):
            pair_weight_matrix(0)


class TestVolumeRatioBound:
    def test_worked_values(self):
        assert volume_ratio_bound(10, 2, 1, 1) == Fraction(16, 3)
        assert volume_ratio_bound(10, 2, 2, 1) == Fraction(49, 4)
        assert volume_ratio_bound(5, 3, 1, 2) == 2

    def test_domain_error(self):
        with pytest.raises(HypothesesUnmetError):
            volume_ratio_bound(5, 3, 2, 2)
        with pytest.raises(InvalidParameterError):
            volume_ratio_bound(5, 2, 0, 1)

    def test_true_ratio_dominates_bound_small_grid(self):
        # The full acceptance grid lives in test_acceptance; spot the corner here.
        for s in (1, 3):
            for n in range(2, 13):
                vols = [ball_volume(BallParams.symmetric(n, e, s)) for e in range(n + 1)]
                for e in range(n):
                    for r in range(1, n - e):
                        bound = volume_ratio_bound(n, e, r, s)
                        assert Fraction(vols[e + r], vols[e]) >= bound

    def test_single_step_chain_dominates_multi_step(self):
        # r applications of the one-step bound are at least the r-step bound.
        n, s = 20, 2
        for e in range(0, 10):
            for r in range(2, 6):
                chain = Fraction(1)
                for j in range(r):
                    chain *= volume_ratio_bound(n, e + j, 1, s)
                assert chain >= volume_ratio_bound(n, e, r, s)
