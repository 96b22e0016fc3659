import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ces_demand import (
    DomainError,
    Exponent,
    Leaf,
    Node,
    ValidationError,
    WeightVector,
    direct_sum_holder_gap,
    l0_holder_gap,
    reverse_holder_gap,
    young_gap,
)

finite_r = st.floats(min_value=-5.0, max_value=0.99).filter(lambda r: abs(r) > 1e-3)
positive = st.floats(min_value=1e-4, max_value=10.0)


class TestYoung:
    @pytest.mark.parametrize("r", [-3.0, -1.0, -0.2, 0.3, 0.5, 0.9])
    def test_equality_at_one(self, r):
        rep = young_gap(1.0, 1.0, r)
        assert rep.lhs == 1.0
        assert abs(rep.gap) <= 1e-12

    def test_worked_example(self):
        rep = young_gap(2.0, 1.0, -1.0)
        assert rep.lhs == 2.0
        assert rep.rhs == 1.5
        assert rep.gap == 0.5

    def test_equality_case(self):
        # equality at a = b^(s-1): r = 0.5 gives s = -1, so a = 4^(-2)
        rep = young_gap(1.0 / 16.0, 4.0, 0.5)
        assert rep.gap == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            young_gap(0.0, 1.0, 0.5)
        with pytest.raises(DomainError):
            young_gap(1.0, -2.0, 0.5)
        with pytest.raises(DomainError):
            young_gap(1.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            young_gap(1.0, 1.0, 1.0)

    @given(positive, positive, finite_r)
    def test_positivity(self, a, b, r):
        assert young_gap(a, b, r).gap >= -1e-12

    def test_saturated_side_is_not_a_violation(self):
        # b^s overflows for s = -99; rhs collapses to -inf, the bound holds
        rep = young_gap(1.0, 1e-8, 0.99)
        assert rep.rhs == -math.inf
        assert rep.gap == math.inf
        assert rep.relative_gap == 1.0


class TestReverseHolder:
    def test_equality_example(self):
        rep = reverse_holder_gap([1.0, 1.0], [1.0, 1.0], 0.5)
        assert rep.lhs == 2.0
        assert rep.rhs == pytest.approx(2.0, rel=1e-12)
        assert abs(rep.gap) <= 1e-12

    def test_strict_example(self):
        rep = reverse_holder_gap([1.0, 2.0], [1.0, 1.0], -1.0)
        assert rep.lhs == 3.0
        assert rep.rhs == pytest.approx(8.0 / 3.0, rel=1e-12)
        assert rep.gap > 0.0

    @given(
        st.lists(positive, min_size=2, max_size=8),
        finite_r,
        st.floats(min_value=0.1, max_value=10.0),
    )
    def test_equality_condition(self, x, r, c):
        x = np.asarray(x)
        y = c * x ** (r - 1.0)
        rep = reverse_holder_gap(x, y, r)
        assert rep.gap / rep.lhs < 1e-9

    @given(st.data(), st.integers(min_value=2, max_value=8), finite_r)
    def test_positivity(self, data, n, r):
        x = data.draw(st.lists(positive, min_size=n, max_size=n))
        y = data.draw(st.lists(positive, min_size=n, max_size=n))
        rep = reverse_holder_gap(x, y, r)
        assert rep.gap >= -1e-10 * rep.lhs

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            reverse_holder_gap([1.0], [1.0, 2.0], 0.5)

    @pytest.mark.parametrize("bad", [0.0, 1.0, 2.0])
    def test_exponent_domain(self, bad):
        with pytest.raises(DomainError):
            reverse_holder_gap([1.0, 2.0], [1.0, 2.0], bad)

    def test_near_zero_r_stays_finite(self):
        # just outside the sampler's exclusion band the two norms leave the
        # double range individually; the log-domain product must not
        x = np.linspace(0.5, 9.5, 8)
        y = np.linspace(9.5, 0.5, 8)
        for r in (1.1e-3, -1.1e-3, 2.9e-3, -2.9e-3):
            rep = reverse_holder_gap(x, y, r)
            assert math.isfinite(rep.rhs)
            assert rep.gap >= -1e-10 * rep.lhs


class TestL0Holder:
    def test_equality_example(self):
        w = WeightVector((0.5, 0.5))
        rep = l0_holder_gap([1.0, 1.0], [1.0, 1.0], w)
        assert rep.lhs == 2.0
        assert rep.rhs == pytest.approx(2.0, rel=1e-12)
        assert abs(rep.gap) <= 1e-12

    def test_y_equals_theta(self):
        w = WeightVector((0.3, 0.7))
        rep = l0_holder_gap([1.0, 1.0], [0.3, 0.7], w)
        assert rep.lhs == pytest.approx(1.0, rel=1e-15)
        assert abs(rep.gap) <= 1e-12

    @given(st.data(), st.integers(min_value=2, max_value=6))
    def test_positivity(self, data, n):
        x = data.draw(st.lists(positive, min_size=n, max_size=n))
        y = data.draw(st.lists(positive, min_size=n, max_size=n))
        raw = data.draw(st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=n, max_size=n))
        w = WeightVector(tuple(v / sum(raw) for v in raw))
        rep = l0_holder_gap(x, y, w)
        assert rep.gap >= -1e-10 * rep.lhs

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            l0_holder_gap([1.0, 2.0], [1.0, 2.0], WeightVector((1.0,)))


class TestDirectSumGap:
    def test_singleton_tree(self):
        tree = Node(Exponent.finite(0.5), (Leaf(0),))
        rep = direct_sum_holder_gap(tree, [3.0], [2.0])
        assert rep.lhs == 6.0
        assert rep.relative_gap == pytest.approx(0.0, abs=1e-15)

    def test_sharpness_bundle(self, flat05):
        rep = direct_sum_holder_gap(flat05, [0.64, 0.04], [1.0, 4.0])
        assert rep.lhs == pytest.approx(0.8, rel=1e-15)
        assert abs(rep.relative_gap) <= 1e-12

    def test_near_zero_r_tree_stays_finite(self):
        # regression: an unweighted node with r just outside the exclusion
        # band used to produce rhs = 0 * inf = NaN before the log-domain fix
        sub = Node(Exponent.finite(-1.2207728846549415e-3), (Leaf(0), Leaf(1), Leaf(2), Leaf(3)))
        tree = Node(Exponent.finite(-2.0), (sub, Leaf(4)))
        rep = direct_sum_holder_gap(tree, [0.6, 4.1, 1.5, 1.1, 5.9], [1.7, 1.5, 6.5, 0.15, 9.4])
        assert math.isfinite(rep.rhs)
        assert rep.gap >= -1e-10 * rep.lhs

    def test_random_trees(self, rng):
        from ces_demand.oracle import OracleConfig, random_tree

        cfg = OracleConfig(seed=5, n_samples=1)
        for _ in range(300):
            tree, n = random_tree(rng, cfg)
            x = rng.uniform(0.05, 10.0, n)
            p = rng.uniform(0.05, 10.0, n)
            rep = direct_sum_holder_gap(tree, x, p)
            assert rep.gap >= -1e-10 * rep.lhs
