import math

import numpy as np
import pytest

from qwalklab import (
    BlochAngles,
    CoinMoments,
    DomainError,
    Spinor,
    binary_entropy,
    delta_from_moments,
    entropy_from_delta,
    entropy_from_moments,
    fourier_coin,
    hadamard_coin,
    spin_from_angles,
)

SQRT2 = math.sqrt(2.0)


class TestBlochAngles:
    def test_alpha_range_enforced(self):
        with pytest.raises(DomainError):
            BlochAngles(-0.1, 0.0)
        with pytest.raises(DomainError):
            BlochAngles(math.pi + 0.1, 0.0)

    def test_beta_canonicalized_to_signed_range(self):
        assert BlochAngles(1.0, 3 * math.pi / 2).beta == pytest.approx(-math.pi / 2)
        assert BlochAngles(1.0, 2 * math.pi + 0.25).beta == pytest.approx(0.25)
        a = BlochAngles(1.0, -7.0)
        assert -math.pi <= a.beta < math.pi

    def test_endpoints_accepted(self):
        assert BlochAngles(0.0, 0.0).alpha == 0.0
        assert BlochAngles(math.pi, 0.0).alpha == math.pi


class TestSpinFromAngles:
    def test_pure_up(self):
        s = spin_from_angles(BlochAngles(0.0, 1.23))
        assert s.up == pytest.approx(1.0)
        assert s.down == pytest.approx(0.0)

    def test_pure_down(self):
        s = spin_from_angles(BlochAngles(math.pi, 0.0))
        assert abs(s.up) == pytest.approx(0.0, abs=1e-15)
        assert s.down == pytest.approx(1.0)

    def test_equator_phase(self):
        s = spin_from_angles(BlochAngles(math.pi / 2, math.pi / 2))
        assert s.up == pytest.approx(1 / SQRT2)
        assert s.down == pytest.approx(1j / SQRT2)

    def test_always_normalized(self):
        for alpha in np.linspace(0.0, math.pi, 101):
            for beta in np.linspace(-math.pi, math.pi, 101, endpoint=False):
                s = spin_from_angles(BlochAngles(float(alpha), float(beta)))
                assert abs(s.norm_sq() - 1.0) < 1e-15


class TestCoins:
    def test_hadamard_entries(self):
        h = hadamard_coin()
        assert np.allclose(np.abs(h), 1 / SQRT2)
        assert h[1, 1].real < 0

    def test_fourier_entries(self):
        f = fourier_coin()
        assert f[0, 1] == pytest.approx(1j / SQRT2)
        assert f[1, 0] == pytest.approx(1j / SQRT2)

    @pytest.mark.parametrize("coin", [hadamard_coin(), fourier_coin()])
    def test_unitary(self, coin):
        assert np.max(np.abs(coin.conj().T @ coin - np.eye(2))) < 1e-15

    def test_hadamard_involution(self):
        h = hadamard_coin()
        v = h @ (h @ np.array([1.0, 0.0]))
        assert np.allclose(v, [1.0, 0.0], atol=1e-15)

    def test_fourier_on_spin_up(self):
        v = fourier_coin() @ np.array([1.0, 0.0])
        assert v[0] == pytest.approx(1 / SQRT2)
        assert v[1] == pytest.approx(1j / SQRT2)


class TestEntropyFromMoments:
    def test_maximally_mixed(self):
        assert entropy_from_moments(CoinMoments(0.5, 0.0)) == pytest.approx(1.0)

    def test_pure_coin(self):
        assert entropy_from_moments(CoinMoments(1.0, 0.0)) == pytest.approx(0.0)

    def test_two_step_walk_value(self):
        # eigenvalues {3/4, 1/4}
        s = entropy_from_moments(CoinMoments(0.5, 0.25))
        assert s == pytest.approx(binary_entropy(0.75), abs=1e-15)
        assert s == pytest.approx(0.8113, abs=5e-5)

    def test_inconsistent_moments_rejected(self):
        with pytest.raises(DomainError):
            entropy_from_moments(CoinMoments(1.0, 0.5))
        with pytest.raises(DomainError):
            entropy_from_moments(CoinMoments(1.5, 0.0))

    def test_marginal_roundoff_clamped(self):
        s = entropy_from_moments(CoinMoments(1.0 + 1e-12, 0.0))
        assert s == 0.0


class TestEntropyFromDelta:
    def test_zero_is_maximal(self):
        assert entropy_from_delta(0.0) == pytest.approx(1.0)

    def test_one_is_separable(self):
        assert entropy_from_delta(1.0) == pytest.approx(0.0)

    def test_local_minimum_value(self):
        assert entropy_from_delta(2 * (3 - 2 * SQRT2)) == pytest.approx(0.736, abs=1e-3)

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            entropy_from_delta(1.1)
        with pytest.raises(DomainError):
            entropy_from_delta(-1e-6)

    def test_marginal_negative_clamped(self):
        assert entropy_from_delta(-1e-12) == pytest.approx(1.0)


def _random_valid_moments(rng):
    a = rng.uniform(0.0, 1.0)
    r = math.sqrt(a * (1 - a)) * math.sqrt(rng.uniform(0.0, 1.0))
    phi = rng.uniform(-math.pi, math.pi)
    return CoinMoments(a, r * complex(math.cos(phi), math.sin(phi)))


class TestConsistencyProperties:
    def test_moments_and_delta_paths_agree(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            m = _random_valid_moments(rng)
            assert entropy_from_moments(m) == pytest.approx(
                entropy_from_delta(delta_from_moments(m)), abs=1e-12
            )

    def test_entropy_depends_only_on_coherence_magnitude(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            m = _random_valid_moments(rng)
            phase = complex(math.cos(1.1), math.sin(1.1))
            rotated = CoinMoments(m.A, m.B * phase)
            assert entropy_from_moments(m) == pytest.approx(
                entropy_from_moments(rotated), abs=1e-13
            )

    def test_entropy_symmetric_under_population_swap(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            m = _random_valid_moments(rng)
            swapped = CoinMoments(1.0 - m.A, m.B)
            assert entropy_from_moments(m) == pytest.approx(
                entropy_from_moments(swapped), abs=1e-13
            )


class TestSpinor:
    def test_norm_and_array(self):
        s = Spinor(0.6, 0.8j)
        assert s.norm_sq() == pytest.approx(1.0)
        assert s.is_normalized()
        assert np.allclose(s.as_array(), [0.6, 0.8j])

    def test_not_normalized(self):
        assert not Spinor(1.0, 1.0).is_normalized()
