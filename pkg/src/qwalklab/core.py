"""Spin states, coin operators, and the coin-position entanglement entropy kernel.

The reduced coin state of a walker is fully determined by two moments:
A = sum_j |a_j|^2 (up population) and B = sum_j a_j b_j* (coherence).  Its
eigenvalues are lambda_pm = 1/2 +- sqrt((A - 1/2)^2 + |B|^2), and the
entanglement entropy is the binary entropy of lambda_plus.  The characteristic
function delta = (lambda_plus - lambda_minus)^2 carries the same information;
delta = 0 means maximal entanglement, delta = 1 a separable (pure-coin) state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import DomainError

TWO_PI = 2.0 * math.pi

#: Tolerance for eigenvalue clamping: violations beyond this signal a real bug.
CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class BlochAngles:
    """Polar (alpha) and azimuthal (beta) angles of a pure spin state.

    alpha must lie in [0, pi]; beta is canonicalized into [-pi, pi), so inputs
    in [0, 2pi) or any real value are accepted and reduced mod 2pi.
    """

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= math.pi:
            raise DomainError(f"alpha must be in [0, pi], got {self.alpha}")
        beta = (float(self.beta) + math.pi) % TWO_PI - math.pi
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class Spinor:
    """A two-component complex amplitude (up, down)."""

    up: complex
    down: complex

    def norm_sq(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm_sq() - 1.0) <= tol

    def as_array(self) -> NDArray[np.complex128]:
        return np.array([self.up, self.down], dtype=np.complex128)


#: A coin operator is a 2x2 complex unitary matrix.
CoinOperator = NDArray[np.complex128]


@dataclass(frozen=True)
class CoinMoments:
    """The two moments (A, B) that determine the reduced coin state.

    Physical moments satisfy 0 <= A <= 1 and |B|^2 <= A(1-A) (positivity and
    trace-1 of the reduced density operator).
    """

    A: float
    B: complex


def spin_from_angles(angles: BlochAngles) -> Spinor:
    """Spin state (cos(alpha/2), e^{i beta} sin(alpha/2)) on the Bloch sphere."""
    half = angles.alpha / 2.0
    return Spinor(
        up=complex(math.cos(half)),
        down=complex(math.cos(angles.beta), math.sin(angles.beta)) * math.sin(half),
    )


def hadamard_coin() -> CoinOperator:
    """The Hadamard coin (1/sqrt2) [[1, 1], [1, -1]]."""
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


def fourier_coin() -> CoinOperator:
    """The Fourier (Kempe) coin (1/sqrt2) [[1, i], [i, 1]]."""
    return np.array([[1.0, 1j], [1j, 1.0]], dtype=np.complex128) / math.sqrt(2.0)


def binary_entropy(lam):
    """Binary entropy -p log2 p - (1-p) log2 (1-p) in bits, with 0 log 0 = 0.

    Accepts a float or an ndarray of eigenvalues in [0, 1].
    """
    lam = np.asarray(lam, dtype=float)
    lam = np.clip(lam, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(lam > 0.0, lam * np.log2(lam, where=lam > 0.0), 0.0)
        q = 1.0 - lam
        h -= np.where(q > 0.0, q * np.log2(q, where=q > 0.0), 0.0)
    h = h + 0.0  # normalize -0.0 to 0.0
    if h.ndim == 0:
        return float(h)
    return h


def entropy_from_moments(m: CoinMoments) -> float:
    """Entanglement entropy of the reduced coin state with moments (A, B).

    The eigenvalues lambda_pm = 1/2 +- sqrt((A - 1/2)^2 + |B|^2) are clamped
    to [0, 1]; a pre-clamp violation above CLAMP_TOL (inconsistent moments,
    i.e. |B|^2 exceeding A(1-A)) raises DomainError.
    """
    a = float(m.A)
    disc = (a - 0.5) ** 2 + abs(m.B) ** 2
    root = math.sqrt(disc)
    lam_plus = 0.5 + root
    if lam_plus > 1.0 + CLAMP_TOL or a < -CLAMP_TOL or a > 1.0 + CLAMP_TOL:
        raise DomainError(
            f"inconsistent coin moments: A={a}, |B|={abs(m.B)} "
            f"(lambda_plus={lam_plus})"
        )
    return binary_entropy(min(lam_plus, 1.0))


def entropy_from_delta(delta: float) -> float:
    """Asymptotic entanglement entropy from the characteristic function delta.

    lambda_pm = (1 +- sqrt(delta))/2; delta marginally below 0 (above 1) is
    clamped, beyond CLAMP_TOL it raises DomainError.
    """
    if delta < -CLAMP_TOL or delta > 1.0 + CLAMP_TOL:
        raise DomainError(f"delta must lie in [0, 1], got {delta}")
    delta = min(max(float(delta), 0.0), 1.0)
    return binary_entropy((1.0 + math.sqrt(delta)) / 2.0)


def delta_from_moments(m: CoinMoments) -> float:
    """Characteristic function delta = (lambda_plus - lambda_minus)^2.

    Algebraically 1 - 4[A(1-A) - |B|^2]; always >= 0 for physical moments.
    """
    return 4.0 * ((float(m.A) - 0.5) ** 2 + abs(m.B) ** 2)
