import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ces_demand import (
    DomainError,
    Exponent,
    PositiveVector,
    ValidationError,
    WeightVector,
    lr_norm,
    weighted_norm,
)

finite_r = st.floats(min_value=-5.0, max_value=0.99).filter(lambda r: abs(r) > 1e-3)
entries = st.lists(st.floats(min_value=1e-2, max_value=1e2), min_size=1, max_size=8)


class TestPositiveVector:
    def test_basic(self):
        v = PositiveVector.quantities([1.0, 2.0])
        assert len(v) == 2 and v.role == "quantity"
        assert not v.values.flags.writeable

    def test_rejects_nonpositive(self):
        for bad in ([0.0, 1.0], [-1.0], [math.nan, 1.0], [math.inf]):
            with pytest.raises(ValidationError):
                PositiveVector.prices(bad)

    def test_rejects_empty_and_2d(self):
        with pytest.raises(ValidationError):
            PositiveVector.quantities([])
        with pytest.raises(ValidationError):
            PositiveVector.quantities([[1.0, 2.0]])

    def test_role_mismatch(self):
        q = PositiveVector.quantities([1.0])
        with pytest.raises(DomainError):
            PositiveVector.prices(q)


class TestWeightVector:
    def test_renormalizes(self):
        w = WeightVector((0.5, 0.5 + 5e-10))
        assert math.fsum(w.theta) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_bad_sum(self):
        with pytest.raises(ValidationError):
            WeightVector((0.5, 0.6))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            WeightVector((1.0, 0.0))
        with pytest.raises(ValidationError):
            WeightVector(())

    def test_single_weight_is_exactly_one(self):
        assert WeightVector((1.0,)).theta == (1.0,)


class TestLrNorm:
    def test_euclidean(self):
        assert lr_norm([3.0, 4.0], Exponent.finite(2.0)) == 5.0

    def test_half(self):
        assert lr_norm([1.0, 1.0], Exponent.finite(0.5)) == 4.0

    def test_min_max(self):
        assert lr_norm([2.0, 5.0], Exponent.neg_inf()) == 2.0
        assert lr_norm([2.0, 5.0], Exponent.pos_inf()) == 5.0

    def test_cobb_douglas_needs_weights(self):
        with pytest.raises(DomainError):
            lr_norm([1.0, 2.0], Exponent.cobb_douglas())

    def test_singleton_is_identity(self):
        assert lr_norm([0.37], Exponent.finite(-3.0)) == 0.37

    def test_extreme_values_stay_finite(self):
        v = lr_norm([1e200, 1e-200], Exponent.finite(-5.0))
        assert v > 0.0 and math.isfinite(v)
        v = lr_norm([1e200, 1e-200], Exponent.finite(0.5))
        assert v > 0.0 and math.isfinite(v)

    def test_true_overflow_saturates(self):
        # the genuine value 2^(1e8) exceeds the double range
        assert lr_norm([2.0, 2.0], Exponent.finite(1e-8)) == math.inf


class TestWeightedNorm:
    def test_geometric_mean(self):
        w = WeightVector((0.5, 0.5))
        assert weighted_norm([4.0, 9.0], w, Exponent.cobb_douglas()) == pytest.approx(
            6.0, rel=1e-12
        )

    def test_weighted_sum(self):
        w = WeightVector((0.5, 0.5))
        assert weighted_norm([2.0, 4.0], w, Exponent.finite(1.0)) == 3.0

    @pytest.mark.parametrize(
        "e",
        [
            Exponent.finite(0.5),
            Exponent.finite(-3.0),
            Exponent.finite(1.0),
            Exponent.cobb_douglas(),
            Exponent.neg_inf(),
            Exponent.pos_inf(),
        ],
    )
    def test_constant_vector(self, e):
        w = WeightVector((0.2, 0.3, 0.5))
        c = 1.7
        assert weighted_norm([c, c, c], w, e) == pytest.approx(c, rel=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            weighted_norm([1.0, 2.0], WeightVector((0.5, 0.25, 0.25)), Exponent.finite(0.5))


@given(
    entries,
    st.floats(min_value=1e-3, max_value=1e3),
    st.one_of(
        finite_r.map(Exponent.finite),
        st.just(Exponent.finite(-40.0)),
        st.just(Exponent.neg_inf()),
        st.just(Exponent.pos_inf()),
    ),
)
def test_homogeneity(x, alpha, e):
    x = np.asarray(x)
    assert lr_norm(alpha * x, e) == pytest.approx(alpha * lr_norm(x, e), rel=1e-12)


@given(entries, st.floats(min_value=1e-3, max_value=1e3), st.data())
def test_weighted_homogeneity(x, alpha, data):
    x = np.asarray(x)
    raw = data.draw(
        st.lists(
            st.floats(min_value=0.05, max_value=1.0), min_size=len(x), max_size=len(x)
        )
    )
    total = sum(raw)
    w = WeightVector(tuple(v / total for v in raw))
    for e in (Exponent.finite(0.5), Exponent.finite(-2.0), Exponent.cobb_douglas()):
        assert weighted_norm(alpha * x, w, e) == pytest.approx(
            alpha * weighted_norm(x, w, e), rel=1e-12
        )


class TestLimits:
    # entries in [0.5, 2] separated enough that the slowest-decaying term
    # (second-smallest / smallest)^(-40) is far below the 1e-6 target
    separated = [
        [0.5, 0.8, 1.3, 2.0],
        [0.5, 2.0],
        [0.6, 0.9, 1.4, 2.0],
    ]

    @pytest.mark.parametrize("x", separated)
    def test_leontief_limit(self, x):
        e40 = lr_norm(x, Exponent.finite(-40.0))
        assert abs(e40 - min(x)) < 1e-6 * min(x)

    @pytest.mark.parametrize("x", separated)
    def test_leontief_limit_monotone_from_below(self, x):
        values = [lr_norm(x, Exponent.finite(r)) for r in (-5.0, -10.0, -20.0, -40.0)]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert all(v <= min(x) for v in values)

    def test_cobb_douglas_limit_first_order(self, rng):
        # on [0.5, 2] the deviation is (|r|/2) * Var_theta(ln x) * CD + O(r^2):
        # linear in r, a few 1e-5 at |r| = 1e-4
        for _ in range(50):
            n = int(rng.integers(2, 7))
            x = rng.uniform(0.5, 2.0, n)
            w = WeightVector(tuple(rng.dirichlet(np.ones(n)).tolist()))
            cd = weighted_norm(x, w, Exponent.cobb_douglas())
            d4 = abs(weighted_norm(x, w, Exponent.finite(1e-4)) - cd)
            d5 = abs(weighted_norm(x, w, Exponent.finite(1e-5)) - cd)
            d6 = abs(weighted_norm(x, w, Exponent.finite(1e-6)) - cd)
            if d5 > 1e-12:  # ratio is meaningful only above round-off
                assert 5.0 < d4 / d5 < 20.0
            assert d6 < 1e-6

    def test_cobb_douglas_limit_small_spread(self, rng):
        # with ln-spread below ~0.2 the first-order term stays under 1e-6
        for _ in range(100):
            n = int(rng.integers(2, 7))
            x = rng.uniform(0.9, 1.1, n)
            w = WeightVector(tuple(rng.dirichlet(np.ones(n)).tolist()))
            cd = weighted_norm(x, w, Exponent.cobb_douglas())
            for r in (1e-4, -1e-4):
                assert abs(weighted_norm(x, w, Exponent.finite(r)) - cd) < 1e-6
