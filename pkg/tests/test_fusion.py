from collections import Counter

import numpy as np
import pytest

from sl3mtc.alcove import THETA, Weight, alcove_weights, root_lattice_weights, weight_diagram
from sl3mtc.fusion import (
    FusionTable,
    adjoint_closure,
    check_table_axioms,
    corner_tensor,
    dual,
    enumerate_fusion_subcategories,
    fusion_coeff,
    fusion_product,
    fusion_subcategories,
    fusion_table,
    is_simple_category,
    subcategory_closure,
)
from sl3mtc.modular import qdim_sine


def classical_tensor(lam, gam):
    """Decompose lam (x) gam by peeling highest weights off the product character.

    A weight of maximal height m1 + m2 is always dominant and a highest weight.
    """
    char = Counter()
    for mu, a in weight_diagram(tuple(lam)).items():
        for nu, b in weight_diagram(tuple(gam)).items():
            char[mu + nu] += a * b
    out = {}
    while char:
        top = max(char, key=lambda w: (w.m1 + w.m2, w.m1))
        n = char[top]
        assert top.is_dominant() and n > 0
        out[top] = n
        for mu, m in weight_diagram(tuple(top)).items():
            char[mu] -= n * m
        char = Counter({w: c for w, c in char.items() if c})
    return out


def test_level_one_is_z3():
    assert fusion_product((1, 0), (1, 0), 1) == {(0, 1): 1}
    assert fusion_product((1, 0), (0, 1), 1) == {(0, 0): 1}
    assert fusion_product((0, 1), (0, 1), 1) == {(1, 0): 1}


def test_level_two_examples():
    assert fusion_product((1, 0), (0, 1), 2) == {(0, 0): 1, (1, 1): 1}
    assert fusion_product((1, 1), (1, 1), 2) == {(0, 0): 1, (1, 1): 1}


@pytest.mark.parametrize("pair", [((1, 0), (0, 1)), ((1, 1), (1, 1)), ((2, 1), (1, 2)), ((2, 0), (1, 1)), ((3, 1), (2, 2))])
def test_large_level_matches_classical_tensor_product(pair):
    lam, gam = pair
    k = sum(lam) + sum(gam) + 1
    assert fusion_product(lam, gam, k) == classical_tensor(lam, gam)


@pytest.mark.parametrize("m", range(1, 9))
def test_central_multiplicity(m):
    nu = (m, m)
    assert fusion_coeff(nu, nu, nu, 3 * m) == m + 1


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_axioms_exhaustive(k):
    assert all(check_table_axioms(fusion_table(k)).values())


@pytest.mark.parametrize("k", [8, 10])
def test_axioms_sampled(k):
    assert all(check_table_axioms(fusion_table(k), samples=150, seed=k).values())


@pytest.mark.parametrize("k", [2, 3, 5])
def test_dimension_is_multiplicative(k):
    for a in alcove_weights(k):
        for b in alcove_weights(k):
            lhs = sum(n * qdim_sine(c, k) for c, n in fusion_product(a, b, k).items())
            assert abs(lhs - qdim_sine(a, k) * qdim_sine(b, k)) < 1e-9


@pytest.mark.parametrize("k", [1, 2, 4, 6, 9])
def test_corner_tensor_matches_folding(k):
    for lam in alcove_weights(k):
        for c in [(k, 0), (0, k)]:
            assert fusion_product(c, lam, k) == {corner_tensor(c, lam, k): 1}


def test_corner_examples_and_errors():
    assert corner_tensor((0, 6), (2, 2), 6) == (2, 2)
    with pytest.raises(ValueError, match="not a corner weight"):
        corner_tensor((1, 1), (0, 0), 3)
    with pytest.raises(ValueError, match="weight outside alcove"):
        fusion_coeff((3, 0), (0, 0), (0, 0), 2)


def test_dual_and_dense_table():
    table = FusionTable(3)
    assert dual((2, 1)) == (1, 2)
    N = table.array
    assert N.shape == (10, 10, 10)
    with pytest.raises(ValueError):
        N[0, 0, 0] = 5
    assert np.array_equal(table.matrix((0, 0)), np.eye(10, dtype=np.int64))


def test_dense_limit():
    with pytest.raises(ValueError):
        FusionTable(13).array


@pytest.mark.parametrize(("k", "sizes"), [(1, [1, 3]), (2, [1, 2, 3, 6]), (3, [1, 3, 4, 10]), (6, [1, 3, 10, 28])])
def test_subcategory_lattice(k, sizes):
    assert [len(s) for s in fusion_subcategories(k)] == sizes


@pytest.mark.parametrize("k", range(2, 9))
def test_adjoint_generates_root_lattice(k):
    assert adjoint_closure(k) == frozenset(root_lattice_weights(k))


def test_closure_of_unit_and_simplicity():
    table = FusionTable(1)
    assert subcategory_closure([], table) == frozenset([Weight(0, 0)])
    assert is_simple_category(table)
    assert not is_simple_category(FusionTable(2))
    assert len(enumerate_fusion_subcategories(table)) == 2


def test_theta_in_dual_square_away_from_corners():
    k = 6
    for lam in root_lattice_weights(k):
        if lam not in [(0, 0), (k, 0), (0, k)]:
            assert fusion_coeff(lam, dual(lam), THETA, k) > 0


def test_sparse_path_above_dense_limit():
    table = FusionTable(13)
    assert all(check_table_axioms(table, samples=40, seed=1).values())
    M = table.matrix((1, 0))
    assert M.shape == (len(table), len(table))
    assert M.sum() == sum(sum(table.product((1, 0), b).values()) for b in table.labels)
