import math

import numpy as np
import pytest

from munorm import (
    CyclicAction,
    Endomorphism,
    OperatorMatrix,
    Partition,
    cyclic_projector,
    finest_partition,
    identity,
    m_chi,
    make_space,
    mu_dim,
    mu_norm,
    mu_norm_sq,
    projector,
    trivial_partition,
    weighted_gram_schmidt,
)
from munorm.verify import (
    homogeneity,
    left_subadditivity,
    left_unitary,
    lipschitz,
    partition_monotone,
    projector_product,
    right_additivity,
    right_koopman,
    right_unitary_uniform,
    submultiplicative,
    triangle,
    weighted_additivity,
)

W3 = make_space([0.2, 0.3, 0.5])
U2 = make_space([0.5, 0.5])


def test_m_chi_projector_two_block():
    chi = Partition(3, [[0], [1, 2]])
    assert m_chi(projector(W3, [0]), chi) == pytest.approx(0.2, abs=1e-14)


def test_m_chi_identity_and_zero():
    chi = Partition(3, [[0, 1], [2]])
    assert m_chi(identity(W3), chi) == pytest.approx(1.0, abs=1e-12)
    assert m_chi(OperatorMatrix(W3, np.zeros((3, 3))), chi) == 0.0


def test_m_chi_rejects_mismatched_partition():
    with pytest.raises(ValueError, match="does not match"):
        m_chi(identity(W3), Partition(2, [[0], [1]]))


def test_mu_norm_sq_projector_law():
    assert mu_norm_sq(projector(W3, [1, 2])) == pytest.approx(0.8, abs=1e-15)


def test_mu_norm_sq_all_ones_uniform():
    # four unit-modulus entries averaged over J=2 gives 2
    w = OperatorMatrix(U2, np.ones((2, 2)))
    assert mu_norm_sq(w) == pytest.approx(2.0, abs=1e-15)


def test_mu_norm_sq_identity():
    assert mu_norm_sq(identity(W3)) == pytest.approx(1.0, abs=1e-15)
    assert mu_norm(identity(W3)) == pytest.approx(1.0, abs=1e-15)


def test_closed_form_verified_against_finest_partition():
    # the design contract: the row-weighted entry mass must equal the
    # partition functional at the singleton partition
    rng = np.random.default_rng(17)
    for _ in range(20):
        j = int(rng.integers(2, 9))
        raw = rng.uniform(0.2, 1.0, j)
        sp = make_space(raw / raw.sum())
        w = OperatorMatrix(sp, rng.standard_normal((j, j)) + 1j * rng.standard_normal((j, j)))
        assert mu_norm_sq(w) == pytest.approx(m_chi(w, finest_partition(sp)), abs=1e-10)


def test_mu_norm_between_zero_and_operator_norm_for_projectors():
    chi = trivial_partition(W3)
    p = projector(W3, [0, 1])
    assert mu_norm_sq(p) <= m_chi(p, chi) + 1e-12


def test_mu_dim_projector_range():
    # orthonormal basis of the range of a coordinate projector
    vecs = [np.array([1 / math.sqrt(0.2), 0, 0]), np.array([0, 0, 1 / math.sqrt(0.5)])]
    assert mu_dim(W3, vecs) == pytest.approx(0.7, abs=1e-12)


def test_mu_dim_full_basis_is_one():
    vecs = np.eye(3) / np.sqrt(np.array([0.2, 0.3, 0.5]))[None, :]
    assert mu_dim(W3, list(vecs.T)) == pytest.approx(1.0, abs=1e-12)


def test_mu_dim_uniform_equals_relative_dimension():
    rng = np.random.default_rng(11)
    j, d = 6, 3
    sp = make_space([1 / j] * j)
    span = rng.standard_normal((d, j)) + 1j * rng.standard_normal((d, j))
    assert mu_dim(sp, list(span), orthonormalize=True) == pytest.approx(d / j, abs=1e-10)


def test_mu_dim_rejects_non_orthonormal():
    with pytest.raises(ValueError, match="not orthonormal"):
        mu_dim(W3, [np.array([2.0, 0.0, 0.0])])


def test_weighted_gram_schmidt_drops_dependent_vectors():
    v = np.array([1.0, 2.0, 3.0])
    basis = weighted_gram_schmidt(W3, [v, 2 * v, np.array([1.0, 0.0, 0.0])])
    assert basis.shape == (3, 2)
    gram = (basis.conj().T * W3.weights[None, :]) @ basis
    np.testing.assert_allclose(gram, np.eye(2), atol=1e-12)


def test_cyclic_projector_order_one_is_identity():
    sp = make_space([0.2, 0.3, 0.5])
    action = CyclicAction(sp, Endomorphism(sp, [0, 1, 2]), 1)
    np.testing.assert_allclose(cyclic_projector(sp, action, 0).entries, np.eye(3), atol=1e-15)


def test_cyclic_projector_swap():
    action = CyclicAction(U2, Endomorphism(U2, [1, 0]), 2)
    p0 = cyclic_projector(U2, action, 0)
    np.testing.assert_allclose(p0.entries, np.full((2, 2), 0.5), atol=1e-15)
    assert mu_norm_sq(p0) == pytest.approx(0.5, abs=1e-12)
    p1 = cyclic_projector(U2, action, 1)
    np.testing.assert_allclose(p1.entries, np.array([[0.5, -0.5], [-0.5, 0.5]]), atol=1e-15)
    assert mu_norm_sq(p1) == pytest.approx(0.5, abs=1e-12)


def test_cyclic_projector_idempotent_self_adjoint():
    from munorm import adjoint, compose
    from munorm.verify import random_cyclic_setup

    sp, action = random_cyclic_setup(np.random.default_rng(2), 3, 2)
    p = cyclic_projector(sp, action, 1)
    np.testing.assert_allclose(compose(p, p).entries, p.entries, atol=1e-12)
    np.testing.assert_allclose(adjoint(p).entries, p.entries, atol=1e-12)


def test_cyclic_action_rejects_wrong_orbit_size():
    sp = make_space([0.25] * 4)
    swap_two = Endomorphism(sp, [1, 0, 2, 3])  # one 2-orbit, two fixed points
    with pytest.raises(ValueError, match="not almost free"):
        CyclicAction(sp, swap_two, 2)


@pytest.mark.parametrize("suite", [
    partition_monotone, triangle, homogeneity, left_unitary, right_koopman,
    right_unitary_uniform, right_additivity, left_subadditivity,
    weighted_additivity, lipschitz, submultiplicative, projector_product,
])
def test_invariance_properties(suite):
    rng = np.random.default_rng(99)
    for check in suite(rng, 40):
        assert check.passed, f"{check.name}: {check.max_violation} > {check.tolerance}"
