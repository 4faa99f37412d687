import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chanspoof import chanrep

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def reshuffle_by_formula(m):
    """Index-by-index oracle for the reshuffling permutation."""
    d = int(round(np.sqrt(m.shape[0])))
    out = np.zeros_like(m)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    out[i * d + j, k * d + l] = m[i * d + k, j * d + l]
    return out


class TestKrausToSuperop:
    def test_identity(self):
        s = chanrep.kraus_to_superop([np.eye(2)])
        assert np.allclose(s, np.eye(4))

    def test_dephasing(self):
        s = chanrep.kraus_to_superop([np.eye(2) / np.sqrt(2), Z / np.sqrt(2)])
        assert np.allclose(s, np.diag([1, 0, 0, 1]))

    def test_bit_flip(self):
        s = chanrep.kraus_to_superop([X])
        assert np.allclose(s, np.kron(X, X))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            chanrep.kraus_to_superop([np.eye(2), np.eye(3)])


class TestReshuffle:
    def test_matches_index_formula(self):
        rng = np.random.default_rng(3)
        for d in (2, 3):
            m = rng.standard_normal((d * d, d * d)) + 1j * rng.standard_normal((d * d, d * d))
            assert np.array_equal(chanrep.reshuffle(m), reshuffle_by_formula(m))

    def test_involution(self):
        rng = np.random.default_rng(4)
        m = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
        assert np.array_equal(chanrep.reshuffle(chanrep.reshuffle(m)), m)

    def test_dephasing_fixed_point(self):
        m = np.diag([1.0, 0, 0, 1.0]).astype(complex)
        assert np.allclose(chanrep.reshuffle(m), m)

    def test_identity_superop_maps_to_max_entangled(self):
        out = chanrep.reshuffle(np.eye(4, dtype=complex))
        expected = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for k in range(2):
                expected[i * 2 + i, k * 2 + k] = 1.0
        assert np.allclose(out, expected)

    def test_rejects_non_square_dimension(self):
        with pytest.raises(ValueError):
            chanrep.reshuffle(np.eye(5))


class TestKrausToChoi:
    def test_identity(self):
        j = chanrep.kraus_to_choi([np.eye(2)])
        v = np.eye(2).reshape(-1)
        assert np.allclose(j, np.outer(v, v))

    def test_pauli_example_structure(self, example_pauli_choi):
        assert np.allclose(np.diag(example_pauli_choi), [0.8, 0.2, 0.2, 0.8])
        assert example_pauli_choi[0, 3] == pytest.approx(-0.6)
        assert example_pauli_choi[3, 0] == pytest.approx(-0.6)
        assert example_pauli_choi[1, 2] == pytest.approx(0.0)

    @pytest.mark.parametrize("seed", range(100))
    def test_agrees_with_reshuffled_superop(self, seed):
        ops = chanrep.random_channel(3, 9, seed)
        direct = chanrep.kraus_to_choi(ops)
        via_superop = chanrep.reshuffle(chanrep.kraus_to_superop(ops))
        assert np.abs(direct - via_superop).max() < 1e-12


class TestChoiToKraus:
    def test_identity_round_trip(self):
        v = np.eye(2).reshape(-1)
        ops = chanrep.choi_to_kraus(np.outer(v, v))
        assert len(ops) == 1
        # equal to I up to a global phase
        phase = ops[0][0, 0] / abs(ops[0][0, 0])
        assert np.allclose(ops[0] / phase, np.eye(2))

    def test_dephasing_two_operators(self):
        j = np.diag([1.0, 0, 0, 1.0]).astype(complex)
        ops = chanrep.choi_to_kraus(j)
        assert len(ops) == 2
        assert np.abs(chanrep.kraus_to_choi(ops) - j).max() < 1e-12

    def test_full_support_pauli_gives_four(self, example_pauli_choi):
        assert len(chanrep.choi_to_kraus(example_pauli_choi)) == 4

    def test_rejects_negative_eigenvalue(self):
        j = np.diag([1.0, 1.0, -0.01, 1.0]).astype(complex)
        with pytest.raises(ValueError):
            chanrep.choi_to_kraus(j, tol=1e-6)

    @pytest.mark.parametrize("seed", range(100))
    def test_round_trip_choi(self, seed):
        d = 2 + seed % 3
        ops = chanrep.random_channel(d, d * d, seed)
        j = chanrep.kraus_to_choi(ops)
        back = chanrep.kraus_to_choi(chanrep.choi_to_kraus(j))
        assert np.abs(back - j).max() < 1e-10


class TestApplyChannel:
    def test_identity_preserves_state(self):
        rho = chanrep.random_density(3, 0)
        out = chanrep.apply_channel([np.eye(3)], rho)
        assert np.allclose(out, rho)

    def test_bit_flip_permutes(self):
        rho = np.diag([0.3, 0.7]).astype(complex)
        out = chanrep.apply_channel([X], rho)
        assert np.allclose(out, np.diag([0.7, 0.3]))

    def test_pauli_coherence(self, example_pauli_channel):
        plus = np.ones((2, 2), dtype=complex) / 2
        out = chanrep.apply_channel(example_pauli_channel.kraus_ops(), plus)
        assert out[0, 1] == pytest.approx(-0.3)

    def test_agrees_with_superop_route(self):
        ops = chanrep.random_channel(3, 5, seed=11)
        rho = chanrep.random_density(3, 1)
        s = chanrep.kraus_to_superop(ops)
        via_superop = chanrep.devec(s @ chanrep.vec(rho))
        assert np.abs(chanrep.apply_channel(ops, rho) - via_superop).max() < 1e-12


class TestOutcomeDistribution:
    def test_identity(self):
        p = chanrep.outcome_distribution([np.eye(2)], np.diag([0.3, 0.7]))
        assert np.allclose(p, [0.3, 0.7])

    def test_pauli_on_zero_state(self, example_pauli_channel):
        rho = np.diag([1.0, 0.0]).astype(complex)
        p = chanrep.outcome_distribution(example_pauli_channel.kraus_ops(), rho)
        assert np.allclose(p, [0.8, 0.2])

    @pytest.mark.parametrize("seed", range(100))
    def test_block_bilinear_form_agrees(self, seed):
        d = 2 + seed % 3
        ops = chanrep.random_channel(d, d * d, seed)
        rho = chanrep.random_density(d, seed + 1)
        p_kraus = chanrep.outcome_distribution(ops, rho)
        p_blocks = chanrep.outcome_distribution_choi(chanrep.kraus_to_choi(ops), rho)
        assert np.abs(p_kraus - p_blocks).max() < 1e-12
        assert abs(p_kraus.sum() - 1.0) < 1e-12


class TestDiagonalBlocks:
    def test_identity_channel(self):
        blocks = chanrep.diagonal_blocks(chanrep.kraus_to_choi([np.eye(2)]))
        for q, b in enumerate(blocks):
            expected = np.zeros((2, 2))
            expected[q, q] = 1.0
            assert np.allclose(b, expected)

    def test_pauli_blocks(self, example_pauli_choi):
        b = chanrep.diagonal_blocks(example_pauli_choi)
        assert np.allclose(b[0], np.diag([0.8, 0.2]))
        assert np.allclose(b[1], np.diag([0.2, 0.8]))

    def test_depolarizing(self):
        d = 3
        j = np.eye(d * d, dtype=complex) / d
        for b in chanrep.diagonal_blocks(j):
            assert np.allclose(b, np.eye(d) / d)

    def test_blocks_sum_to_identity(self):
        for seed in range(20):
            d = 2 + seed % 4
            j = chanrep.kraus_to_choi(chanrep.random_channel(d, d * d, seed))
            s = sum(chanrep.diagonal_blocks(j))
            assert np.abs(s - np.eye(d)).max() < 1e-10


class TestKrausRank:
    def test_identity(self):
        assert chanrep.kraus_rank(chanrep.kraus_to_choi([np.eye(2)])) == 1

    def test_generic_full_rank(self):
        j = chanrep.kraus_to_choi(chanrep.random_channel(4, 16, seed=7))
        assert chanrep.kraus_rank(j) == 16

    def test_dephasing(self):
        assert chanrep.kraus_rank(np.diag([1.0, 0, 0, 1.0])) == 2


class TestValidateCPTP:
    def test_identity_valid(self):
        rep = chanrep.validate_cptp(chanrep.kraus_to_choi([np.eye(2)]))
        assert rep.valid

    def test_unnormalized_identity_invalid(self):
        rep = chanrep.validate_cptp(np.eye(4, dtype=complex))
        assert not rep.valid
        assert rep.block_sum_deviation == pytest.approx(1.0)

    def test_negative_eigenvalue_reported(self):
        j = chanrep.kraus_to_choi([np.eye(2)])
        w, v = np.linalg.eigh(j)
        w[0] = -0.01
        bad = (v * w) @ v.conj().T
        rep = chanrep.validate_cptp(bad)
        assert not rep.valid
        assert rep.min_eigenvalue == pytest.approx(-0.01, abs=1e-9)


class TestRandomChannel:
    def test_rank_one_is_unitary(self):
        (k,) = chanrep.random_channel(3, 1, seed=0)
        assert np.abs(k.conj().T @ k - np.eye(3)).max() < 1e-12

    def test_generic_valid_and_full_rank(self):
        ops = chanrep.random_channel(4, 16, seed=7)
        j = chanrep.kraus_to_choi(ops)
        assert chanrep.validate_cptp(j).valid
        assert chanrep.kraus_rank(j) == 16

    def test_deterministic(self):
        a = chanrep.random_channel(3, 4, seed=9)
        b = chanrep.random_channel(3, 4, seed=9)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)

    def test_invalid_rank(self):
        with pytest.raises(ValueError):
            chanrep.random_channel(2, 5, seed=0)


class TestRandomDensity:
    def test_invariants(self):
        rho = chanrep.random_density(4, seed=3)
        chanrep.validate_density(rho)

    def test_deterministic(self):
        assert np.array_equal(chanrep.random_density(2, 5), chanrep.random_density(2, 5))

    def test_mean_is_maximally_mixed(self):
        d = 2
        mean = sum(chanrep.random_density(d, s) for s in range(10_000)) / 10_000
        assert np.abs(mean - np.eye(d) / d).max() < 0.05


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=2, max_value=4), st.integers(min_value=0, max_value=10**6))
def test_property_reshuffle_involution(d, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((d * d, d * d)) + 1j * rng.standard_normal((d * d, d * d))
    assert np.array_equal(chanrep.reshuffle(chanrep.reshuffle(m)), m)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=2, max_value=4), st.integers(min_value=0, max_value=10**6))
def test_property_conversion_consistency(d, seed):
    rank = 1 + seed % (d * d)
    ops = chanrep.random_channel(d, rank, seed)
    j = chanrep.kraus_to_choi(ops)
    assert np.abs(j - chanrep.reshuffle(chanrep.kraus_to_superop(ops))).max() < 1e-12
    assert np.abs(chanrep.kraus_to_choi(chanrep.choi_to_kraus(j)) - j).max() < 1e-10
