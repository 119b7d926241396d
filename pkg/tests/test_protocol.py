import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ensemble_teleport import (
    BELL_INDICES,
    ClassicalMessage,
    CoefficientVector,
    PreparationTensor,
    alice_prepare,
    automatic_preparation,
    bell_projector,
    bob_correct,
    coefficients_of,
    correction_unitary,
    decompose_total_state,
    effective_transformation,
    matrix_from_coefficients,
    matrix_unit,
    partial_trace,
    pauli,
    preparation_from_bell,
    renormalize,
    resolve_preparation,
    run_session,
    total_state,
    transformation_matrix,
    LAYOUT_CAB,
)
from conftest import random_coefficients

BELL1_COEFFICIENT_MAP = np.array(
    [
        [0.0, 0.0, 0.0, 0.5],
        [0.0, 0.0, -0.5, 0.0],
        [0.0, -0.5, 0.0, 0.0],
        [0.5, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)


def bloch_coefficient_strategy():
    """Valid coefficient vectors via Bloch-ball coordinates."""
    unit = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
    radius = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)

    def build(raw):
        x, y, z, r = raw
        length = np.sqrt(x * x + y * y + z * z)
        if length < 1e-9:
            return CoefficientVector.from_components(0.5)
        scale = r / length
        return CoefficientVector.from_bloch(x * scale, y * scale, z * scale)

    return st.tuples(unit, unit, unit, radius).map(build)


class TestCoefficientVector:
    def test_trace_violation(self):
        with pytest.raises(ValueError, match="trace constraint"):
            CoefficientVector(0.5, 0.0, 0.0, 0.6)

    def test_negative_diagonal(self):
        with pytest.raises(ValueError, match="nonnegativity"):
            CoefficientVector(-0.1, 0.0, 0.0, 1.1)

    def test_hermiticity_violation(self):
        with pytest.raises(ValueError, match="hermiticity"):
            CoefficientVector(0.5, 0.2j, 0.2j, 0.5)

    def test_positivity_violation(self):
        with pytest.raises(ValueError, match="positivity"):
            CoefficientVector.from_components(0.5, 0.6)

    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="NaN or Inf"):
            CoefficientVector(np.nan, 0.0, 0.0, 1.0)

    def test_basis_state_matrix(self):
        c = CoefficientVector.from_components(1.0)
        assert np.array_equal(c.matrix(), matrix_unit(1, 1))

    def test_maximally_mixed_matrix(self):
        c = CoefficientVector.from_components(0.5)
        assert np.array_equal(c.matrix(), np.eye(2, dtype=complex) / 2)

    def test_pure_boundary_is_projector(self):
        c = CoefficientVector(0.5, 0.5, 0.5, 0.5)
        m = c.matrix()
        assert np.max(np.abs(m @ m - m)) < 1e-12
        plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
        assert np.max(np.abs(m - np.outer(plus, plus))) < 1e-12
        assert c.is_pure()

    def test_from_bloch_round_trip(self):
        c = CoefficientVector.from_bloch(0.3, -0.4, 0.5)
        m = c.matrix()
        assert abs(np.trace(m) - 1.0) < 1e-15
        assert np.max(np.abs(m - m.conj().T)) == 0.0

    def test_from_bloch_rejects_long_vectors(self):
        with pytest.raises(ValueError, match="exceeds 1"):
            CoefficientVector.from_bloch(1.0, 1.0, 0.0)

    def test_as_vector_order(self):
        c = CoefficientVector.from_components(0.75, 0.125 + 0.25j)
        assert np.array_equal(c.as_vector(), [0.75, 0.125 + 0.25j, 0.125 - 0.25j, 0.25])


class TestTotalState:
    def test_trace_one(self, coefficient_samples):
        for c in coefficient_samples[:20]:
            assert abs(np.trace(total_state(c)) - 1.0) < 1e-12

    def test_sixteen_term_expansion(self, rng):
        c = random_coefficients(rng, 1)[0]
        cs = {(1, 1): c.c11, (1, 2): c.c12, (2, 1): c.c21, (2, 2): c.c22}
        shared = {
            (1, 1, 2, 2): 0.5,
            (1, 2, 2, 1): -0.5,
            (2, 1, 1, 2): -0.5,
            (2, 2, 1, 1): 0.5,
        }
        expected = np.zeros((8, 8), dtype=complex)
        for (k, l), ckl in cs.items():
            for (ar, ac, br, bc), weight in shared.items():
                expected += ckl * weight * np.kron(
                    matrix_unit(k, l), np.kron(matrix_unit(ar, ac), matrix_unit(br, bc))
                )
        assert np.max(np.abs(total_state(c) - expected)) < 1e-14

    def test_marginal_is_shared_pair(self, rng):
        c = random_coefficients(rng, 1)[0]
        marginal = partial_trace(total_state(c), LAYOUT_CAB, {"C"})
        assert np.max(np.abs(marginal - bell_projector(4))) < 1e-12


class TestDecomposition:
    def test_reconstructs_twice_the_total_state(self, coefficient_samples):
        for c in coefficient_samples:
            decomposition = decompose_total_state(c)
            residual = np.max(np.abs(decomposition.reconstruction() - 2 * total_state(c)))
            assert residual < 1e-12

    def test_fourth_receiver_factor_is_input(self, rng):
        c = random_coefficients(rng, 1)[0]
        decomposition = decompose_total_state(c)
        assert np.array_equal(decomposition.receiver_factors[3], c.matrix())

    def test_offdiagonal_residual_coefficients(self, rng):
        c = random_coefficients(rng, 1)[0]
        block = decompose_total_state(c).residual_terms[(1, 2)]
        # the (1,2) residual is C12 ⊗ [c12 A11⊗B22 + c21 A12⊗B12 + c21 A21⊗B21 + c12 A22⊗B11]
        expected = np.kron(
            matrix_unit(1, 2),
            c.c12 * np.kron(matrix_unit(1, 1), matrix_unit(2, 2))
            + c.c21 * np.kron(matrix_unit(1, 2), matrix_unit(1, 2))
            + c.c21 * np.kron(matrix_unit(2, 1), matrix_unit(2, 1))
            + c.c12 * np.kron(matrix_unit(2, 2), matrix_unit(1, 1)),
        )
        assert np.max(np.abs(block - expected)) < 1e-14


class TestPreparations:
    def test_bell_one_weights(self):
        u = preparation_from_bell(1).u
        expected = np.zeros((2, 2, 2, 2), dtype=complex)
        expected[0, 0, 0, 0] = 0.5
        expected[1, 1, 1, 1] = 0.5
        expected[0, 1, 0, 1] = 0.5
        expected[1, 0, 1, 0] = 0.5
        assert np.array_equal(u, expected)

    @pytest.mark.parametrize("i", BELL_INDICES)
    def test_diagonal_weight_one(self, i):
        assert preparation_from_bell(i).diagonal_weight() == 1.0

    @pytest.mark.parametrize("i", BELL_INDICES)
    def test_matrix_round_trip(self, i):
        u = preparation_from_bell(i)
        assert np.array_equal(u.matrix(), bell_projector(i, ("C", "A")))

    def test_automatic_matrix_is_twice_fourth_projector(self):
        p = automatic_preparation().matrix()
        assert np.array_equal(p, 2 * bell_projector(4, ("C", "A")))

    def test_automatic_squares_to_twice_itself(self):
        p = automatic_preparation().matrix()
        assert np.array_equal(p @ p, 2 * p)

    def test_automatic_diagonal_weight_two(self):
        u = automatic_preparation()
        assert u.diagonal_weight() == 2.0
        assert u.normalized is False

    def test_normalized_flag_enforced(self):
        bad = np.zeros((2, 2, 2, 2), dtype=complex)
        bad[0, 0, 1, 1] = 1.0
        bad[1, 1, 0, 0] = 1.0  # sums to 2
        with pytest.raises(ValueError, match="sum of u_kkmm"):
            PreparationTensor(u=bad, normalized=True)
        PreparationTensor(u=bad, normalized=False)  # explicit opt-out is fine

    def test_negative_diagonal_rejected_when_normalized(self):
        bad = np.zeros((2, 2, 2, 2), dtype=complex)
        bad[0, 0, 0, 0] = 1.5
        bad[0, 0, 1, 1] = -0.5
        with pytest.raises(ValueError, match="nonnegative diagonal"):
            PreparationTensor(u=bad, normalized=True)

    def test_resolve_classifies(self):
        resolved = resolve_preparation(2)
        assert resolved.bell_index == 2 and not resolved.automatic
        resolved = resolve_preparation(automatic_preparation())
        assert resolved.bell_index is None and resolved.automatic
        resolved = resolve_preparation(preparation_from_bell(3))
        assert resolved.bell_index == 3

    def test_resolve_rejects_bad_index(self):
        with pytest.raises(ValueError, match="Bell index"):
            resolve_preparation(7)


class TestAlicePrepare:
    def test_bell_one_gives_conjugated_quarter(self, coefficient_samples):
        s1, s3 = pauli(1), pauli(3)
        u = preparation_from_bell(1)
        for c in coefficient_samples[:25]:
            raw = alice_prepare(u, c)
            expected = 0.25 * (s3 @ s1 @ c.matrix() @ s1 @ s3)
            assert np.max(np.abs(raw - expected)) < 1e-13

    def test_bell_four_gives_quarter_input(self, rng):
        u = preparation_from_bell(4)
        for c in random_coefficients(rng, 10):
            raw = alice_prepare(u, c)
            assert np.max(np.abs(raw - 0.25 * c.matrix())) < 1e-13

    def test_automatic_gives_half_input(self, rng):
        u = automatic_preparation()
        for c in random_coefficients(rng, 10):
            raw = alice_prepare(u, c)
            assert np.max(np.abs(raw - 0.5 * c.matrix())) < 1e-13

    @pytest.mark.parametrize("i", BELL_INDICES)
    def test_projective_trace_quarter(self, i, rng):
        u = preparation_from_bell(i)
        for c in random_coefficients(rng, 25):
            assert abs(np.trace(alice_prepare(u, c)).real - 0.25) < 1e-12


class TestRenormalize:
    def test_quarter_conjugated_input(self, rng):
        c = random_coefficients(rng, 1)[0]
        s1, s3 = pauli(1), pauli(3)
        conjugated = s3 @ s1 @ c.matrix() @ s1 @ s3
        assert np.max(np.abs(renormalize(0.25 * conjugated) - conjugated)) < 1e-13

    def test_unit_trace_unchanged(self, rng):
        c = random_coefficients(rng, 1)[0]
        assert np.array_equal(renormalize(c.matrix()), c.matrix())

    def test_zero_matrix_rejected(self):
        with pytest.raises(ValueError, match="annihilated"):
            renormalize(np.zeros((2, 2)))


class TestTransformationMatrix:
    def test_bell_one_equals_antidiagonal_half(self):
        t = transformation_matrix(preparation_from_bell(1)).matrix
        assert np.array_equal(t, BELL1_COEFFICIENT_MAP)

    def test_automatic_is_identity(self):
        t = transformation_matrix(automatic_preparation()).matrix
        assert np.array_equal(t, np.eye(4, dtype=complex))

    @pytest.mark.parametrize("prep", [1, 2, 3, 4, "aut"])
    def test_operator_path_matches_vector_path(self, prep, rng):
        u = automatic_preparation() if prep == "aut" else preparation_from_bell(prep)
        t = transformation_matrix(u).matrix
        for c in random_coefficients(rng, 20):
            via_operator = coefficients_of(alice_prepare(u, c))
            via_vector = 0.5 * t @ c.as_vector()
            assert np.max(np.abs(via_operator - via_vector)) < 1e-12

    def test_trace_norm_of_transformed_vector_is_half(self, coefficient_samples):
        t = transformation_matrix(preparation_from_bell(1)).matrix
        for c in coefficient_samples:
            tc = t @ c.as_vector()
            assert abs((tc[0] + tc[3]).real - 0.5) < 1e-12
            assert abs((tc[0] + tc[3]).imag) < 1e-12

    def test_coefficient_round_trip(self, rng):
        c = random_coefficients(rng, 1)[0]
        assert np.array_equal(matrix_from_coefficients(coefficients_of(c.matrix())), c.matrix())


class TestBobCorrect:
    def test_inverts_first_preparation(self, rng):
        s1, s3 = pauli(1), pauli(3)
        for c in random_coefficients(rng, 10):
            conjugated = s3 @ s1 @ c.matrix() @ s1 @ s3
            assert np.max(np.abs(bob_correct(1, conjugated) - c.matrix())) < 1e-13

    def test_identity_correction(self, rng):
        c = random_coefficients(rng, 1)[0]
        assert np.array_equal(bob_correct(4, c.matrix()), c.matrix())

    def test_inverts_second_preparation(self, rng):
        s1 = pauli(1)
        c = random_coefficients(rng, 1)[0]
        assert np.max(np.abs(bob_correct(2, s1 @ c.matrix() @ s1) - c.matrix())) < 1e-13

    @pytest.mark.parametrize("i", BELL_INDICES)
    def test_round_trip_all_indices(self, i, rng):
        u = preparation_from_bell(i)
        for c in random_coefficients(rng, 15):
            fixed = bob_correct(i, renormalize(alice_prepare(u, c)))
            assert np.max(np.abs(fixed - c.matrix())) < 1e-12

    def test_rejects_non_unit_trace(self):
        with pytest.raises(ValueError, match="unit-trace"):
            bob_correct(1, 0.25 * np.eye(2))

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            bob_correct(1, np.array([[1.0, 0.5], [0.0, 0.0]]))

    def test_correction_unitary_is_unitary(self):
        for i in BELL_INDICES:
            un = correction_unitary(i)
            assert np.max(np.abs(un @ un.conj().T - np.eye(2))) < 1e-15


class TestEffectiveTransformation:
    @pytest.mark.parametrize("i", BELL_INDICES)
    def test_corrected_map_is_half_identity(self, i):
        t = effective_transformation(preparation_from_bell(i), i).matrix
        assert np.max(np.abs(t - 0.5 * np.eye(4))) < 1e-12

    def test_no_correction_returns_preparation_map(self):
        u = preparation_from_bell(1)
        assert np.array_equal(
            effective_transformation(u, None).matrix, transformation_matrix(u).matrix
        )


class TestClassicalMessage:
    def test_bits(self):
        assert ClassicalMessage.two_bits(1).bits == 2
        assert ClassicalMessage.ping().bits == 1
        assert ClassicalMessage.pre_agreed().bits == 0

    def test_two_bits_requires_index(self):
        with pytest.raises(ValueError, match="Bell index"):
            ClassicalMessage("two_bits")

    def test_others_carry_no_index(self):
        with pytest.raises(ValueError, match="no index"):
            ClassicalMessage("pre_agreed", 1)

    def test_unknown_variant(self):
        with pytest.raises(ValueError, match="variant"):
            ClassicalMessage("smoke_signal")


class TestRunSession:
    def test_corrected_two_bit_session_is_exact(self, rng):
        for c in random_coefficients(rng, 10, kind="pure"):
            record = run_session(c, 1, ClassicalMessage.two_bits(1), bob_acts=True)
            assert abs(record.fidelity - 1.0) < 1e-12
            assert record.bits_sent == 2

    def test_automatic_session_without_receiver_action(self, rng):
        for c in random_coefficients(rng, 10):
            record = run_session(
                c, automatic_preparation(), ClassicalMessage.pre_agreed(), bob_acts=False
            )
            assert record.bits_sent == 0
            assert np.max(np.abs(record.bob_state - c.matrix())) < 1e-12
            if c.is_pure(tol=1e-9):
                assert abs(record.fidelity - 1.0) < 1e-12

    def test_lazy_mixed_session_is_half(self):
        c = CoefficientVector.from_components(0.5)
        record = run_session(c, 1, ClassicalMessage.ping(), bob_acts=False)
        assert abs(record.fidelity - 0.5) < 1e-12
        assert record.bits_sent == 1

    def test_two_bit_message_must_match_preparation(self):
        c = CoefficientVector.from_components(0.5)
        with pytest.raises(ValueError, match="does not match"):
            run_session(c, 1, ClassicalMessage.two_bits(2), bob_acts=True)
        with pytest.raises(ValueError, match="does not match"):
            run_session(c, automatic_preparation(), ClassicalMessage.two_bits(1), bob_acts=True)

    def test_unknown_preparation_cannot_be_corrected(self):
        u = PreparationTensor(
            u=0.5 * preparation_from_bell(1).u + 0.5 * preparation_from_bell(4).u,
            normalized=True,
        )
        c = CoefficientVector.from_components(0.6, 0.1)
        with pytest.raises(ValueError, match="no correction rule"):
            run_session(c, u, ClassicalMessage.ping(), bob_acts=True)
        record = run_session(c, u, ClassicalMessage.ping(), bob_acts=False)
        assert record.bits_sent == 1

    def test_deterministic_and_pure(self, rng):
        c = random_coefficients(rng, 1)[0]
        first = run_session(c, 3, ClassicalMessage.two_bits(3), bob_acts=True)
        second = run_session(c, 3, ClassicalMessage.two_bits(3), bob_acts=True)
        assert np.array_equal(first.bob_state, second.bob_state)
        assert first.fidelity == second.fidelity
        assert first.bits_sent == second.bits_sent

    def test_does_not_mutate_inputs(self):
        u = preparation_from_bell(2)
        before = u.u.copy()
        c = CoefficientVector.from_components(0.4, 0.2j)
        run_session(c, u, ClassicalMessage.two_bits(2), bob_acts=True)
        assert np.array_equal(u.u, before)

    def test_record_state_is_readonly(self):
        c = CoefficientVector.from_components(0.5)
        record = run_session(c, 4, ClassicalMessage.two_bits(4), bob_acts=True)
        with pytest.raises(ValueError):
            record.bob_state[0, 0] = 9.0


class TestPipelineInvariants:
    @given(c=bloch_coefficient_strategy(), i=st.sampled_from(BELL_INDICES))
    def test_correction_round_trip(self, c, i):
        fixed = bob_correct(i, renormalize(alice_prepare(preparation_from_bell(i), c)))
        assert np.max(np.abs(fixed - c.matrix())) < 1e-12

    @given(c=bloch_coefficient_strategy())
    def test_automatic_path_restores_input(self, c):
        out = renormalize(alice_prepare(automatic_preparation(), c))
        assert np.max(np.abs(out - c.matrix())) < 1e-12

    @given(c=bloch_coefficient_strategy(), i=st.sampled_from(BELL_INDICES))
    def test_operator_and_vector_paths_agree(self, c, i):
        u = preparation_from_bell(i)
        lhs = coefficients_of(alice_prepare(u, c))
        rhs = 0.5 * transformation_matrix(u).matrix @ c.as_vector()
        assert np.max(np.abs(lhs - rhs)) < 1e-12
