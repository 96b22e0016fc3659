import numpy as np
import pytest

from ces_demand import Exponent, Leaf, Node, WeightVector


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def flat05():
    """Two goods under a flat r = 0.5 aggregator: the worked example with
    prices (1, 4), unit cost 0.8, demand (0.64, 0.04), shares (0.8, 0.2)."""
    return Node(Exponent.finite(0.5), (Leaf(0), Leaf(1)))


def make_two_level(root_r, nest_rs, sizes):
    """Unweighted two-stage tree: nests of the given sizes over consecutive
    good ids, aggregated at the root."""
    nests = []
    offset = 0
    for r_i, k in zip(nest_rs, sizes):
        nests.append(Node(Exponent.finite(r_i), tuple(Leaf(offset + j) for j in range(k))))
        offset += k
    return Node(Exponent.finite(root_r), tuple(nests)), offset


@pytest.fixture
def mixed_tree():
    """Depth-3 tree mixing unweighted CES, weighted CES and Cobb-Douglas."""
    inner = Node(Exponent.finite(-2.0), (Leaf(2), Leaf(3)))
    weighted = Node(
        Exponent.finite(0.4), (Leaf(0), Leaf(1)), WeightVector((0.25, 0.75))
    )
    cd = Node(Exponent.cobb_douglas(), (Leaf(4), inner), WeightVector((0.6, 0.4)))
    return Node(Exponent.finite(-0.5), (weighted, cd))
