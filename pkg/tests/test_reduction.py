import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import gaussian_scenario, scenarios
from spinchsh import (
    RankDeficiencyError,
    bell_operator,
    canonical_operator,
    canonical_reduction,
    correlation_matrix,
    coupling_operator,
    reduced_bell,
    spin_generators,
    spin_representation,
    svd3,
)


def random_rank2(rng):
    return np.outer(rng.standard_normal(3), rng.standard_normal(3)) + np.outer(
        rng.standard_normal(3), rng.standard_normal(3)
    )


class TestSvd3:
    def test_already_diagonal(self):
        O1, O2, sigma = svd3(np.diag([2.0, 1.0, 0.0]))
        assert np.array_equal(sigma, [2.0, 1.0, 0.0])
        assert np.allclose(O1, np.eye(3), atol=1e-14)
        assert np.allclose(O2, np.eye(3), atol=1e-14)

    def test_zero_matrix(self):
        _, _, sigma = svd3(np.zeros((3, 3)))
        assert np.array_equal(sigma, [0.0, 0.0, 0.0])

    @settings(max_examples=60)
    @given(st.integers(0, 2**32 - 1))
    def test_reconstruction_and_gram_oracle(self, seed):
        rng = np.random.default_rng(seed)
        M = rng.standard_normal((3, 3))
        O1, O2, sigma = svd3(M)
        assert sigma[0] >= sigma[1] >= sigma[2] >= 0.0
        assert np.linalg.norm(O1 @ M @ O2.T - np.diag(sigma)) < 1e-11
        assert np.linalg.norm(O1.T @ np.diag(sigma) @ O2 - M) < 1e-10
        for O in (O1, O2):
            assert np.linalg.norm(O.T @ O - np.eye(3)) < 1e-12
            assert abs(abs(np.linalg.det(O)) - 1.0) < 1e-12
        # independent oracle: singular values from the Gram matrix spectrum
        gram = np.sort(np.linalg.eigvalsh(M.T @ M))[::-1]
        assert np.allclose(sigma**2, gram, atol=1e-10)

    def test_deterministic_sign_convention(self):
        rng = np.random.default_rng(77)
        for _ in range(50):
            M = rng.standard_normal((3, 3))
            O1a, O2a, sa = svd3(M)
            O1b, O2b, sb = svd3(M.copy())
            assert np.array_equal(O1a, O1b) and np.array_equal(O2a, O2b)
            # left singular vectors (rows of O1) lead with a positive entry
            for row in O1a:
                assert row[np.argmax(np.abs(row))] > 0.0


class TestCanonicalReduction:
    def test_permutes_trailing_diagonal(self):
        M = np.diag([0.0, 0.0, 2.0])
        red = canonical_reduction(M)
        assert (red.s, red.t) == (2.0, 0.0)
        assert np.linalg.norm(red.R @ M @ red.Q.T - np.diag([2.0, 0.0, 0.0])) < 1e-12

    def test_tight_scenario(self, tight_scenario):
        M = correlation_matrix(tight_scenario)
        red = canonical_reduction(M)
        assert (red.s, red.t) == (2.0, 0.0)
        assert red.s**2 + red.t**2 == 4.0

    @given(scenarios())
    def test_certificate_properties(self, sc):
        M = correlation_matrix(sc)
        red = canonical_reduction(M)
        assert red.s >= red.t >= 0.0
        assert abs(np.linalg.det(red.R) - 1.0) < 1e-10
        assert abs(np.linalg.det(red.Q) - 1.0) < 1e-10
        assert np.linalg.norm(red.R @ M @ red.Q.T - red.diagonal_form()) < 1e-10
        assert abs(red.s**2 + red.t**2 - 4.0) < 1e-9
        # the certificate preserves the singular-value multiset
        _, _, sigma = svd3(M)
        assert np.allclose(sorted([red.s, red.t, 0.0], reverse=True), sigma, atol=1e-10)

    def test_bulk_random_rank_two(self):
        rng = np.random.default_rng(101)
        worst_recon, worst_det = 0.0, 0.0
        for _ in range(10_000):
            M = random_rank2(rng)
            red = canonical_reduction(M)
            worst_recon = max(
                worst_recon, np.linalg.norm(red.R @ M @ red.Q.T - red.diagonal_form())
            )
            worst_det = max(
                worst_det,
                abs(np.linalg.det(red.R) - 1.0),
                abs(np.linalg.det(red.Q) - 1.0),
            )
        assert worst_recon < 1e-10
        assert worst_det < 1e-10

    def test_rank3_rejected_naming_sigma3(self):
        with pytest.raises(RankDeficiencyError) as excinfo:
            canonical_reduction(np.eye(3))
        assert abs(excinfo.value.sigma3 - 1.0) < 1e-12
        assert "1.000e+00" in str(excinfo.value)

    def test_rank_tolerance_boundary(self):
        canonical_reduction(np.diag([1.0, 1.0, 5e-9]))
        with pytest.raises(RankDeficiencyError):
            canonical_reduction(np.diag([1.0, 1.0, 2e-8]))

    def test_certificate_dict(self, tight_scenario):
        M = correlation_matrix(tight_scenario)
        cert = canonical_reduction(M).certificate(M)
        assert cert["s"] == 2.0 and cert["t"] == 0.0
        assert cert["sum_of_squares"] == 4.0
        for key in (
            "reconstruction_residual",
            "det_R_residual",
            "det_Q_residual",
            "orthogonality_R_residual",
            "orthogonality_Q_residual",
        ):
            assert cert[key] < 1e-10


class TestReducedBell:
    def test_tight_scenario(self, tight_scenario):
        Sx, _, Sz = spin_generators()
        s, t, H = reduced_bell(tight_scenario)
        assert (s, t) == (2.0, 0.0)
        assert np.linalg.norm(H - 2.0 * np.kron(Sx, Sx)) < 1e-14
        # two eigensolver runs: the reduced operator and the original one
        eig_h = np.linalg.eigvalsh(H)
        eig_b = np.linalg.eigvalsh(2.0 * np.kron(Sz, Sz))
        assert np.allclose(eig_h, eig_b, atol=1e-12)

    def test_planar_degenerate_scenario(self):
        from spinchsh import MeasurementScenario

        sc = MeasurementScenario((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 1))
        s, t, H = reduced_bell(sc)
        assert abs(s**2 + t**2 - 4.0) < 1e-9
        assert np.allclose(
            np.linalg.eigvalsh(H), np.linalg.eigvalsh(bell_operator(sc)), atol=1e-9
        )

    @given(scenarios())
    def test_spectra_agree(self, sc):
        _, _, H = reduced_bell(sc)
        assert np.allclose(
            np.linalg.eigvalsh(H), np.linalg.eigvalsh(bell_operator(sc)), atol=1e-9
        )

    def test_explicit_unitary_chain(self):
        # the full conjugation chain, end to end: the spin representations of
        # the certificate rotations map the coupling operator to canonical form
        rng = np.random.default_rng(13)
        worst = 0.0
        for _ in range(100):
            sc = gaussian_scenario(rng)
            M = correlation_matrix(sc)
            red = canonical_reduction(M)
            W = np.kron(spin_representation(red.R), spin_representation(red.Q))
            conjugated = W @ coupling_operator(M) @ W.conj().T
            worst = max(
                worst, np.linalg.norm(conjugated - canonical_operator(red.s, red.t))
            )
        assert worst < 1e-9
