"""Set algebra: products, powers, Hadamard means, symmetrizations, and
canonical forms."""

import numpy as np
import pytest

from hadamard_jsr import (CONVEX, SUPER, CapExceeded, DimensionMismatch,
                          MatrixSet, RegimeError, WeightVector, canonicalize,
                          cyclic_factor, dedupe, matrix_set, set_adjoint,
                          set_hadamard_mean, set_hadamard_power, set_power,
                          set_product, set_sum, sets_equal, symmetrize,
                          symmetrize_ab, uniform_weights)


def two_sets():
    a = matrix_set([np.array([[1.0, 2.0], [0.5, 1.0]]),
                    np.array([[0.0, 1.0], [1.0, 1.0]])], name="psi")
    b = matrix_set([np.array([[2.0, 0.0], [1.0, 3.0]])], name="sigma")
    return a, b


def test_weight_vector_regimes():
    assert WeightVector((0.5, 0.5)).regime == CONVEX
    assert WeightVector((1.0, 1.0), SUPER).regime == SUPER
    with pytest.raises(RegimeError):
        WeightVector((0.2, 0.2))  # sums below 1
    with pytest.raises(ValueError):
        WeightVector((0.5, -0.1), SUPER)


def test_uniform_weights():
    w = uniform_weights(4)
    assert w.regime == CONVEX
    assert np.allclose(w.weights, 0.25)


def test_matrix_set_validation():
    with pytest.raises(ValueError):
        matrix_set([np.array([[-1.0]])])
    with pytest.raises(DimensionMismatch):
        matrix_set([np.ones((2, 2)), np.ones((3, 3))])


def test_set_product_members():
    a, b = two_sets()
    p = set_product(a, b)
    assert len(p) == 2
    assert np.allclose(p.members[0], a.members[0] @ b.members[0])


def test_set_power_counts():
    a, _ = two_sets()
    assert len(set_power(a, 3)) == 8


def test_set_power_singleton_is_matrix_power():
    _, b = two_sets()
    p = set_power(b, 3)
    want = np.linalg.matrix_power(b.members[0], 3)
    assert len(p) == 1 and np.allclose(p.members[0], want)


def test_set_sum_members():
    a, b = two_sets()
    s = set_sum(a, b)
    assert len(s) == 2
    assert np.allclose(s.members[1], a.members[1] + b.members[0])


def test_hadamard_mean_convex_pair():
    a, b = two_sets()
    m = set_hadamard_mean([a, b], WeightVector((0.5, 0.5)))
    assert len(m) == 2
    want = a.members[0] ** 0.5 * b.members[0] ** 0.5
    assert np.allclose(m.members[0], want)


def test_hadamard_mean_weight_count_mismatch():
    a, b = two_sets()
    with pytest.raises(DimensionMismatch):
        set_hadamard_mean([a, b], uniform_weights(3))


def test_adjoint_is_involution():
    a, _ = two_sets()
    assert sets_equal(set_adjoint(set_adjoint(a)), a)


def test_cyclic_factor_shares_radius_with_full_product():
    # all cyclic rotations of a product have the same spectral radius
    from hadamard_jsr import spectral_radius_bracket
    rng = np.random.default_rng(3)
    sets = [matrix_set([rng.random((3, 3))]) for _ in range(3)]
    radii = []
    for j in (1, 2, 3):
        phi = cyclic_factor(sets, j)
        radii.append(spectral_radius_bracket(phi.members[0]).hi)
    assert max(radii) - min(radii) <= 1e-8 * max(radii)


def test_cyclic_factor_bad_index():
    a, b = two_sets()
    with pytest.raises(ValueError):
        cyclic_factor([a, b], 0)
    with pytest.raises(ValueError):
        cyclic_factor([a, b], 3)


def test_symmetrize_endpoints():
    a, _ = two_sets()
    assert sets_equal(symmetrize(a, 1.0), a)
    assert sets_equal(symmetrize(a, 0.0), set_adjoint(a))


def test_symmetrize_half_is_symmetric_for_singletons():
    _, b = two_sets()
    s = symmetrize(b, 0.5)
    m = s.members[0]
    assert np.allclose(m, m.T)


def test_symmetrize_ab_regime_guard():
    a, _ = two_sets()
    with pytest.raises(RegimeError):
        symmetrize_ab(a, 0.3, 0.3)


def test_symmetrize_ab_super_regime_entries():
    _, b = two_sets()
    s = symmetrize_ab(b, 1.0, 1.0)
    m = b.members[0]
    assert np.allclose(s.members[0], m * m.T)


def test_canonicalize_sorts_and_dedupe_removes():
    x = np.array([[1.0, 0.0], [0.0, 1.0]])
    y = np.array([[0.0, 1.0], [1.0, 0.0]])
    s = matrix_set([y, x, y])
    d = dedupe(s)
    assert len(d) == 2
    assert sets_equal(canonicalize(matrix_set([x, y])), d)


def test_dedupe_with_tolerance():
    x = np.eye(2)
    s = matrix_set([x, x + 1e-12])
    assert len(dedupe(s, tol=1e-9)) == 1
    assert len(dedupe(s)) == 2


def test_cap_enforced():
    a = matrix_set([np.eye(2)] * 20)
    with pytest.raises(CapExceeded):
        set_power(a, 5, cap=1000)


def test_sets_equal_ignores_order_and_duplicates():
    x, y = np.eye(2), np.ones((2, 2))
    assert sets_equal(matrix_set([x, y, x]), matrix_set([y, x]))
    assert not sets_equal(matrix_set([x]), matrix_set([y]))
