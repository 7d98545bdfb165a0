import math

import numpy as np
import pytest

from munorm import (
    CapExceeded,
    Endomorphism,
    OperatorMatrix,
    Partition,
    finest_partition,
    identity,
    koopman,
    ks_entropy_at,
    ks_path_measure_table,
    make_space,
    markov_entropy_rate,
    mu_norm_sq,
    path_mass_table,
    path_mass_total,
    path_operator,
    projector,
    quantum_entropy_at,
    quantum_entropy_closed,
    quantum_entropy_rate,
    trivial_partition,
)
from munorm.verify import random_partition, random_standard_unitary, uniform_space

U2 = uniform_space(2)
U3 = uniform_space(3)
U4 = uniform_space(4)

HADAMARD = OperatorMatrix(U2, np.array([[1, 1], [1, -1]]) / math.sqrt(2.0))


def test_path_operator_single_digit_is_projector():
    chi = Partition(3, [[0, 1], [2]])
    np.testing.assert_array_equal(
        path_operator(identity(U3), chi, [1]).entries, projector(U3, [2]).entries
    )


def test_path_operator_identity_disjoint_blocks_vanishes():
    chi = Partition(3, [[0, 1], [2]])
    op = path_operator(identity(U3), chi, [0, 1])
    np.testing.assert_array_equal(op.entries, np.zeros((3, 3)))


def test_path_operator_digit_out_of_range():
    chi = Partition(3, [[0, 1], [2]])
    with pytest.raises(ValueError, match="out of range"):
        path_operator(identity(U3), chi, [0, 2])


def test_path_operator_koopman_mass_is_itinerary_measure():
    cycle = Endomorphism(U3, [1, 2, 0])
    u = koopman(U3, cycle)
    chi = finest_partition(U3)
    # digits (a, b): mass = mu({b} cap F^{-1}({a}))
    for a in range(3):
        for b in range(3):
            got = mu_norm_sq(path_operator(u, chi, [a, b]))
            expected = 1 / 3 if cycle(b) == a else 0.0
            assert got == pytest.approx(expected, abs=1e-15)


def test_quantum_entropy_identity_finest():
    for j in (2, 3, 4):
        sp = uniform_space(j)
        chi = finest_partition(sp)
        assert quantum_entropy_at(identity(sp), chi, 1) == pytest.approx(
            math.log(j), abs=1e-12
        )


def test_quantum_entropy_permutation_constant_log_j():
    rng = np.random.default_rng(0)
    for j in (2, 3, 5):
        sp = uniform_space(j)
        u = koopman(sp, Endomorphism(sp, rng.permutation(j)))
        chi = finest_partition(sp)
        for n in range(4):
            assert quantum_entropy_at(u, chi, n) == pytest.approx(math.log(j), abs=1e-12)


def test_term_cap_reports_required_count():
    sp = uniform_space(10)
    chi = finest_partition(sp)
    with pytest.raises(CapExceeded, match="100000000"):
        quantum_entropy_at(identity(sp), chi, 7)
    with pytest.raises(CapExceeded):
        ks_entropy_at(Endomorphism(sp, list(range(10))), chi, 7)


def test_rate_report_permutation():
    u = koopman(U3, Endomorphism(U3, [1, 2, 0]))
    rep = quantum_entropy_rate(u, finest_partition(U3), 4)
    assert rep.lengths == (1, 2, 3, 4, 5)
    assert all(abs(d) <= 1e-12 for d in rep.differences)
    assert rep.rates[-1] == pytest.approx(math.log(3) / 5, abs=1e-12)
    assert rep.closed_form == pytest.approx(0.0, abs=1e-15)
    assert all(v >= 0.0 for v in rep.values)


def test_rate_report_hadamard_differences_log2():
    rep = quantum_entropy_rate(HADAMARD, finest_partition(U2), 5)
    for d in rep.differences:
        assert d == pytest.approx(math.log(2.0), abs=1e-10)
    assert rep.closed_form == pytest.approx(math.log(2.0), abs=1e-12)


def test_rate_report_requires_n_max_two():
    with pytest.raises(ValueError, match="at least 2"):
        quantum_entropy_rate(HADAMARD, finest_partition(U2), 1)


def test_closed_entropy_values():
    perm = koopman(U3, Endomorphism(U3, [2, 0, 1]))
    assert quantum_entropy_closed(perm) == 0.0
    assert quantum_entropy_closed(HADAMARD) == pytest.approx(math.log(2.0), abs=1e-12)
    assert quantum_entropy_closed(identity(U4)) == 0.0


def test_closed_entropy_rejects_nonuniform_and_non_unitary():
    with pytest.raises(ValueError, match="uniform"):
        quantum_entropy_closed(identity(make_space([0.2, 0.3, 0.5])))
    with pytest.raises(ValueError, match="not unitary"):
        quantum_entropy_closed(OperatorMatrix(U2, np.ones((2, 2))))


def test_ks_identity_finest_is_log_j():
    ident = Endomorphism(U4, [0, 1, 2, 3])
    chi = finest_partition(U4)
    for n in range(4):
        assert ks_entropy_at(ident, chi, n) == pytest.approx(math.log(4), abs=1e-12)


def test_ks_trivial_partition_vanishes():
    cycle = Endomorphism(U3, [1, 2, 0])
    assert ks_entropy_at(cycle, trivial_partition(U3), 3) == 0.0


def test_ks_cycle_three_atoms():
    cycle = Endomorphism(U3, [1, 2, 0])
    assert ks_entropy_at(cycle, finest_partition(U3), 2) == pytest.approx(
        math.log(3), abs=1e-12
    )


def test_ks_subadditive_in_path_length():
    rng = np.random.default_rng(8)
    sp = uniform_space(5)
    endo = Endomorphism(sp, rng.permutation(5))
    chi = Partition(5, [[0, 1], [2, 3], [4]])
    # path-length subadditivity: h(n+m) <= h(n) + h(m), lengths >= 1
    h = {length: ks_entropy_at(endo, chi, length - 1) for length in range(1, 7)}
    for n in range(1, 4):
        for m in range(1, 4):
            assert h[n + m] <= h[n] + h[m] + 1e-12


def test_koopman_bridge_term_by_term():
    rng = np.random.default_rng(21)
    for _ in range(10):
        j = int(rng.integers(2, 7))
        sp = uniform_space(j)
        endo = Endomorphism(sp, rng.permutation(j))
        u = koopman(sp, endo)
        chi = random_partition(rng, j)
        n = int(rng.integers(1, 4))
        q = path_mass_table(u, chi, n)
        k = ks_path_measure_table(endo, chi, n)
        keys = set(q) | {tuple(reversed(key)) for key in k}
        for key in keys:
            assert q.get(key, 0.0) == pytest.approx(
                k.get(tuple(reversed(key)), 0.0), abs=1e-12
            )
        assert quantum_entropy_at(u, chi, n) == pytest.approx(
            ks_entropy_at(endo, chi, n), abs=1e-12
        )


def test_path_masses_total_one_for_unitaries_any_partition():
    # enumeration-verified resolution of the normalization question:
    # the total is 1 at every partition and horizon, not just the finest
    rng = np.random.default_rng(42)
    sp = U4
    u = OperatorMatrix(sp, random_standard_unitary(rng, 4))
    for chi in (finest_partition(sp), Partition(4, [[0, 1], [2, 3]]), trivial_partition(sp)):
        for n in (1, 2, 3):
            assert path_mass_total(u, chi, n) == pytest.approx(1.0, abs=1e-10)


def test_markov_rate_examples():
    assert markov_entropy_rate(np.eye(3)[[1, 2, 0]], [1 / 3] * 3) == 0.0
    j = 4
    assert markov_entropy_rate(np.full((j, j), 1 / j), [1 / j] * j) == pytest.approx(
        math.log(j), abs=1e-12
    )


def test_markov_rate_matches_closed_entropy():
    rng = np.random.default_rng(33)
    for _ in range(10):
        j = int(rng.integers(2, 7))
        sp = uniform_space(j)
        u = OperatorMatrix(sp, random_standard_unitary(rng, j))
        rate = markov_entropy_rate(np.abs(u.entries) ** 2, np.full(j, 1 / j))
        assert rate == pytest.approx(quantum_entropy_closed(u), abs=1e-12)


def test_markov_rate_validation():
    with pytest.raises(ValueError, match="sum to 1"):
        markov_entropy_rate([[0.5, 0.4], [0.5, 0.5]], [0.5, 0.5])
    with pytest.raises(ValueError, match="negative"):
        markov_entropy_rate([[1.5, -0.5], [0.0, 1.0]], [0.5, 0.5])
    with pytest.raises(ValueError, match="distribution"):
        markov_entropy_rate([[1.0, 0.0], [0.0, 1.0]], [0.9, 0.5])


def test_weighted_permutation_entropy_is_weight_entropy():
    sp = make_space([0.5, 0.25, 0.25])
    endo = Endomorphism(sp, [0, 2, 1])  # swaps the two equal-weight atoms
    u = koopman(sp, endo)
    chi = finest_partition(sp)
    expected = -(0.5 * math.log(0.5) + 2 * 0.25 * math.log(0.25))
    for n in (0, 1, 2):
        assert quantum_entropy_at(u, chi, n) == pytest.approx(expected, abs=1e-12)
        assert ks_entropy_at(endo, chi, n) == pytest.approx(expected, abs=1e-12)
