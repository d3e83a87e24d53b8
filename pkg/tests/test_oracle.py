"""Dense clock-and-shift matrix checks against the symbolic algebra."""

import numpy as np
import pytest

from cvghz.oracle import (DimensionCeilingError, check_set, clock_shift,
                          ghz_comb_eigenvalues, joint_eigenvector, represent)
from cvghz.paradox import OperatorSet, builtin, set_from_rows
from cvghz.weyl import (LatticeParams, RationalPhase, WeylWord,
                        commutation_phase, dagger, identity_word, multiply)


def random_word(rng, params, n_parties, max_exp=4):
    exps = tuple((int(rng.integers(-max_exp, max_exp + 1)),
                  int(rng.integers(-max_exp, max_exp + 1)))
                 for _ in range(n_parties))
    phase = RationalPhase(int(rng.integers(0, 2 * params.d)), 2 * params.d)
    return WeylWord(params, exps, phase)


class TestClockShift:
    def test_d2_anticommutes(self):
        x, y = clock_shift(2)
        assert np.linalg.norm(x @ y + y @ x) < 1e-15

    def test_d4_quarter_phase(self):
        x, y = clock_shift(4)
        assert np.linalg.norm(x @ y - 1j * y @ x) < 1e-15

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 7])
    def test_commutation_and_order(self, d):
        x, y = clock_shift(d)
        omega = np.exp(2j * np.pi / d)
        assert np.linalg.norm(x @ y - omega * y @ x) < 1e-12
        assert np.linalg.norm(np.linalg.matrix_power(x, d) - np.eye(d)) < 1e-12
        assert np.linalg.norm(np.linalg.matrix_power(y, d) - np.eye(d)) < 1e-12

    def test_d_below_two_rejected(self):
        with pytest.raises(ValueError):
            clock_shift(1)

    def test_matches_represent_convention(self):
        # (m, n) -> X^m Y^n must agree with the generator matrices
        x, y = clock_shift(3)
        p = LatticeParams(3)
        w = WeylWord(p, ((2, 1),))
        expected = np.linalg.matrix_power(x, 2) @ y
        assert np.linalg.norm(represent(w) - expected) < 1e-12


class TestRepresent:
    def test_identity(self):
        m = represent(identity_word(LatticeParams(3), 2))
        assert np.linalg.norm(m - np.eye(9)) < 1e-15

    def test_global_phase(self):
        w = WeylWord(LatticeParams(2), ((0, 0),), RationalPhase(1, 2))
        assert np.linalg.norm(represent(w) + np.eye(2)) < 1e-15

    def test_v4_product_is_minus_identity(self):
        mats = [represent(w) for w in builtin("v4").operators]
        prod = mats[0] @ mats[1] @ mats[2] @ mats[3]
        assert np.linalg.norm(prod + np.eye(8)) < 1e-10

    def test_unitarity(self):
        rng = np.random.default_rng(3)
        p = LatticeParams(4)
        for _ in range(20):
            m = represent(random_word(rng, p, 2))
            assert np.linalg.norm(m @ m.conj().T - np.eye(16)) < 1e-10

    def test_ceiling(self):
        with pytest.raises(DimensionCeilingError):
            represent(identity_word(LatticeParams(4), 7))

    def test_homomorphism_random_pairs(self):
        rng = np.random.default_rng(5)
        for d in (2, 3, 4):
            p = LatticeParams(d)
            for _ in range(40):
                n = int(rng.integers(1, 4))
                a = random_word(rng, p, n)
                b = random_word(rng, p, n)
                lhs = represent(multiply(a, b))
                rhs = represent(a) @ represent(b)
                assert np.linalg.norm(lhs - rhs) < 1e-10

    def test_dagger_is_conjugate_transpose(self):
        rng = np.random.default_rng(9)
        for d in (2, 3, 4):
            p = LatticeParams(d)
            for _ in range(20):
                a = random_word(rng, p, 2)
                assert np.linalg.norm(
                    represent(dagger(a)) - represent(a).conj().T) < 1e-12

    def test_commutation_phase_matches_matrices(self):
        rng = np.random.default_rng(13)
        for d in (2, 3, 5):
            p = LatticeParams(d)
            for _ in range(20):
                a = random_word(rng, p, 2)
                b = random_word(rng, p, 2)
                phi = commutation_phase(a, b).to_complex()
                ma, mb = represent(a), represent(b)
                assert np.linalg.norm(ma @ mb - phi * mb @ ma) < 1e-10


class TestCheckSet:
    def test_v4(self):
        report = check_set(builtin("v4"))
        assert report.dimension == 8
        assert report.max_commutator_norm < 1e-10
        assert report.product_deviation < 1e-10
        assert report.max_unitarity_defect < 1e-10
        assert report.product_is_scalar
        assert report.product_phase_turns == 0.5

    def test_noncommuting_pair_reported(self):
        # {X_A, Y_A} at d=2: Frobenius norm of [X, Y] = 2*sqrt(2),
        # cross-checked against the direct 2x2 computation
        rows = [((1, 0),), ((0, 1),)]
        report = check_set(set_from_rows(2, rows))
        x, y = clock_shift(2)
        direct = np.linalg.norm(x @ y - y @ x)
        assert abs(report.max_commutator_norm - direct) < 1e-12
        assert abs(direct - 2 * np.sqrt(2)) < 1e-12

    def test_identity_set(self):
        s = set_from_rows(2, [((0, 0), (0, 0))])
        report = check_set(s)
        assert report.product_deviation < 1e-15
        assert report.product_phase_turns == 0.0


class TestJointEigenvector:
    def test_v4_eigenvalue_product(self):
        _, vals = joint_eigenvector(builtin("v4"), seed=0)
        assert len(vals) == 4
        for v in vals:
            assert abs(abs(v) - 1) < 1e-8
        prod = np.prod(vals)
        assert abs(prod + 1) < 1e-8

    def test_w6_eigenvalue_product(self):
        _, vals = joint_eigenvector(builtin("w6"), seed=0)
        assert len(vals) == 6
        for v in vals:
            assert abs(abs(v) - 1) < 1e-8
        assert abs(np.prod(vals) + 1) < 1e-8

    def test_identity_set(self):
        s = set_from_rows(2, [((0, 0),)])
        _, vals = joint_eigenvector(s, seed=1)
        assert abs(vals[0] - 1) < 1e-10

    def test_residual_is_small(self):
        s = builtin("v4")
        v, vals = joint_eigenvector(s, seed=2)
        for w, lam in zip(s.operators, vals):
            m = represent(w)
            assert np.linalg.norm(m @ v - lam * v) < 1e-8

    def test_noncommuting_rejected(self):
        s = set_from_rows(2, [((1, 0),), ((0, 1),)])
        with pytest.raises(ValueError):
            joint_eigenvector(s)


class TestGhzCombEigenvalues:
    def test_v4_values(self):
        vals = ghz_comb_eigenvalues(builtin("v4"))
        assert abs(vals[0] + 1) < 1e-12
        for v in vals[1:]:
            assert abs(v - 1) < 1e-12
        assert abs(np.prod(vals) + 1) < 1e-12

    def test_requires_d2(self):
        with pytest.raises(ValueError):
            ghz_comb_eigenvalues(builtin("w6"))
