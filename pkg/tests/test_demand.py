import math

import numpy as np
import pytest

from ces_demand import (
    DomainError,
    Exponent,
    Leaf,
    Node,
    ValidationError,
    WeightVector,
    aggregate_quantity,
    budget_shares,
    expenditure,
    flat_tree,
    hicksian_demand,
    indirect_utility,
    konus_index,
    marshallian_demand,
)
from ces_demand.oracle import finite_diff_gradient

P14 = [1.0, 4.0]


def cd_tree(weights):
    return flat_tree(Exponent.cobb_douglas(), len(weights), WeightVector(weights))


class TestExpenditure:
    def test_flat_worked_example(self, flat05):
        assert expenditure(flat05, 1.0, P14) == pytest.approx(0.8, rel=1e-15)

    def test_linear_in_u(self, flat05):
        assert expenditure(flat05, 2.0, P14) == 2.0 * expenditure(flat05, 1.0, P14)

    def test_flat_cobb_douglas(self):
        # prod (p_i/theta_i)^theta_i at p = (1,1); value checked against the
        # simplex-ray minimizer and a direct Lagrange solution
        tree = cd_tree((0.3, 0.7))
        assert expenditure(tree, 1.0, [1.0, 1.0]) == pytest.approx(
            1.8420227750373133, rel=1e-12
        )

    def test_rejects_bad_utility(self, flat05):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(DomainError):
                expenditure(flat05, bad, P14)

    def test_rejects_nondualizable_trees(self):
        for e in (Exponent.finite(1.0), Exponent.neg_inf()):
            with pytest.raises(DomainError):
                expenditure(Node(e, (Leaf(0), Leaf(1))), 1.0, P14)


class TestHicksian:
    def test_flat_worked_example(self, flat05):
        rep = hicksian_demand(flat05, 1.0, P14)
        assert rep.quantities.values == pytest.approx([0.64, 0.04], rel=1e-12)
        assert rep.expenditure == pytest.approx(0.8, rel=1e-12)
        assert rep.utility == 1.0
        assert rep.quantities.role == "quantity"

    def test_attains_utility_and_cost(self, flat05):
        rep = hicksian_demand(flat05, 1.0, P14)
        assert aggregate_quantity(flat05, rep.quantities).value == pytest.approx(1.0, rel=1e-9)
        assert float(np.dot(P14, rep.quantities.values)) == pytest.approx(
            rep.expenditure, rel=1e-9
        )

    def test_single_good(self):
        tree = Node(Exponent.finite(-2.0), (Leaf(0),))
        rep = hicksian_demand(tree, 3.0, [5.0])
        assert rep.quantities.values[0] == pytest.approx(3.0, rel=1e-12)
        assert rep.expenditure == pytest.approx(15.0, rel=1e-12)

    def test_uniform_prices_symmetric(self):
        # all coordinates u * n^(-1/r)
        for r, n, u in ((0.5, 2, 1.0), (0.5, 4, 2.0), (-1.5, 3, 0.7)):
            rep = hicksian_demand(flat_tree(Exponent.finite(r), n), u, [1.3] * n)
            expected = u * n ** (-1.0 / r)
            assert rep.quantities.values == pytest.approx([expected] * n, rel=1e-12)

    def test_mixed_tree_consistency(self, mixed_tree, rng):
        for _ in range(20):
            p = rng.uniform(0.5, 2.0, 5)
            u = float(rng.uniform(0.5, 2.0))
            rep = hicksian_demand(mixed_tree, u, p)
            assert aggregate_quantity(mixed_tree, rep.quantities).value == pytest.approx(
                u, rel=1e-9
            )
            assert float(np.dot(p, rep.quantities.values)) == pytest.approx(
                expenditure(mixed_tree, u, p), rel=1e-9
            )


class TestIndirectUtility:
    def test_flat_example(self, flat05):
        assert indirect_utility(flat05, 0.8, P14) == pytest.approx(1.0, rel=1e-12)

    def test_duality_roundtrip(self, flat05):
        e = expenditure(flat05, 1.7, P14)
        assert indirect_utility(flat05, e, P14) == pytest.approx(1.7, rel=1e-12)

    def test_linear_in_income(self, flat05):
        assert indirect_utility(flat05, 2.0, P14) == 2.0 * indirect_utility(flat05, 1.0, P14)

    def test_rejects_bad_income(self, flat05):
        with pytest.raises(DomainError):
            indirect_utility(flat05, 0.0, P14)


class TestMarshallian:
    def test_flat_worked_example(self, flat05):
        rep = marshallian_demand(flat05, 0.8, P14)
        assert rep.quantities.values == pytest.approx([0.64, 0.04], rel=1e-12)
        assert rep.utility == pytest.approx(1.0, rel=1e-12)

    def test_cobb_douglas_shares(self):
        rep = marshallian_demand(cd_tree((0.3, 0.7)), 10.0, [1.0, 1.0])
        assert rep.quantities.values == pytest.approx([3.0, 7.0], rel=1e-12)

    def test_two_singleton_nests_under_cd_root(self):
        tree = Node(
            Exponent.cobb_douglas(),
            (
                Node(Exponent.finite(0.5), (Leaf(0),)),
                Node(Exponent.finite(-1.0), (Leaf(1),)),
            ),
            WeightVector((0.5, 0.5)),
        )
        rep = marshallian_demand(tree, 8.0, P14)
        assert rep.quantities.values == pytest.approx([4.0, 1.0], rel=1e-12)

    def test_adding_up(self, mixed_tree, rng):
        for _ in range(25):
            p = rng.uniform(0.5, 2.0, 5)
            m = float(rng.uniform(0.5, 2.0))
            rep = marshallian_demand(mixed_tree, m, p)
            assert float(np.dot(p, rep.quantities.values)) == pytest.approx(m, rel=1e-12)

    def test_equals_hicksian_at_indirect_utility(self, mixed_tree, rng):
        for _ in range(10):
            p = rng.uniform(0.5, 2.0, 5)
            m = float(rng.uniform(0.5, 2.0))
            marsh = marshallian_demand(mixed_tree, m, p)
            hick = hicksian_demand(mixed_tree, indirect_utility(mixed_tree, m, p), p)
            assert marsh.quantities.values == pytest.approx(
                hick.quantities.values, rel=1e-9
            )

    def test_degree_zero_homogeneity(self, mixed_tree, rng):
        p = rng.uniform(0.5, 2.0, 5)
        for a in (0.1, 3.0, 250.0):
            base = marshallian_demand(mixed_tree, 1.3, p)
            scaled = marshallian_demand(mixed_tree, a * 1.3, a * p)
            assert scaled.quantities.values == pytest.approx(
                base.quantities.values, rel=1e-12
            )


class TestBudgetShares:
    def test_flat_worked_example(self, flat05):
        shares = budget_shares(flat05, P14)
        assert shares.leaf_shares[0] == pytest.approx(0.8, rel=1e-12)
        assert shares.leaf_shares[1] == pytest.approx(0.2, rel=1e-12)
        assert shares.node_shares[0] == 1.0

    def test_cobb_douglas_price_free(self):
        tree = cd_tree((0.3, 0.7))
        for p in ([1.0, 1.0], [5.0, 0.2], [0.7, 9.0]):
            shares = budget_shares(tree, p)
            assert shares.leaf_shares[0] == pytest.approx(0.3, rel=1e-12)
            assert shares.leaf_shares[1] == pytest.approx(0.7, rel=1e-12)

    def test_uniform_prices_symmetric(self):
        shares = budget_shares(flat_tree(Exponent.finite(-2.0), 5), [2.0] * 5)
        for g in range(5):
            assert shares.leaf_shares[g] == pytest.approx(0.2, rel=1e-12)

    def test_share_identities(self, mixed_tree, rng):
        from ces_demand import validate_tree

        idx = validate_tree(mixed_tree, 5)
        for _ in range(20):
            p = rng.uniform(0.5, 2.0, 5)
            shares = budget_shares(mixed_tree, p, indexing=idx)
            assert math.fsum(shares.leaf_shares.values()) == pytest.approx(1.0, abs=1e-10)
            for i, kids in enumerate(idx.children_ids):
                if kids:
                    total = math.fsum(shares.node_shares[c] for c in kids)
                    assert total == pytest.approx(1.0, abs=1e-10)

    def test_independent_of_income(self, mixed_tree, rng):
        p = rng.uniform(0.5, 2.0, 5)
        shares = budget_shares(mixed_tree, p)
        for m in (0.1, 1.0, 1e6):
            rep = marshallian_demand(mixed_tree, m, p)
            for g, share in shares.leaf_shares.items():
                assert rep.leaf_budget_shares[g] == share


class TestKonus:
    def test_doubled_prices(self, mixed_tree, rng):
        p = rng.uniform(0.5, 2.0, 5)
        res = konus_index(mixed_tree, 2.0 * p, p)
        assert res.index == pytest.approx(2.0, rel=1e-12)

    def test_identity(self, mixed_tree, rng):
        p = rng.uniform(0.5, 2.0, 5)
        res = konus_index(mixed_tree, p, p)
        assert res.index == 1.0
        assert res.numerator_cost == res.denominator_cost

    def test_harmonic_symmetry(self, flat05):
        res = konus_index(flat05, [4.0, 1.0], [1.0, 4.0])
        assert res.index == pytest.approx(1.0, rel=1e-12)
        assert res.index == res.numerator_cost / res.denominator_cost

    def test_dimension_mismatch(self, flat05):
        with pytest.raises(ValidationError):
            konus_index(flat05, [1.0, 2.0, 3.0], [1.0, 2.0])


class TestWeightedNodes:
    """Weighted finite-r nodes get no coverage from the random tree
    generator, so pin their dual/demand math here."""

    def test_weighted_flat_gradient(self):
        tree = flat_tree(Exponent.finite(-1.0), 3, WeightVector((0.2, 0.5, 0.3)))
        p = np.array([1.5, 0.8, 2.2])
        u = 1.4
        fd = finite_diff_gradient(lambda q: expenditure(tree, u, q), p, 1e-6)
        rep = hicksian_demand(tree, u, p)
        assert fd == pytest.approx(rep.quantities.values, rel=1e-6)

    def test_weighted_nested_gradient(self, mixed_tree):
        p = np.array([1.1, 0.6, 1.9, 0.9, 1.4])
        u = 0.8
        fd = finite_diff_gradient(lambda q: expenditure(mixed_tree, u, q), p, 1e-6)
        rep = hicksian_demand(mixed_tree, u, p)
        assert np.max(np.abs(fd - rep.quantities.values)) / np.max(
            rep.quantities.values
        ) < 1e-6

    def test_weighted_flat_utility_attained(self, rng):
        tree = flat_tree(Exponent.finite(0.6), 4, WeightVector((0.1, 0.2, 0.3, 0.4)))
        for _ in range(10):
            p = rng.uniform(0.5, 2.0, 4)
            u = float(rng.uniform(0.5, 2.0))
            rep = hicksian_demand(tree, u, p)
            assert aggregate_quantity(tree, rep.quantities).value == pytest.approx(
                u, rel=1e-9
            )
