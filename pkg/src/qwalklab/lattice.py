"""Position-space evolution of the discrete-time quantum walk on a 1D lattice.

Each step applies the coin to every site spinor and then shifts up-amplitudes
one site right and down-amplitudes one site left.  Amplitudes are stored as two
complex arrays indexed by lattice site; the window keeps a one-site zero guard
band on each side and grows by one site per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .core import CoinMoments, CoinOperator, Spinor, entropy_from_moments
from .errors import CapacityError, DomainError

#: Gaussian profiles are truncated at |j| <= max(GAUSS_TRUNC, ceil(8 sigma0)).
GAUSS_TRUNC = 1000

#: Default ceiling on the number of lattice sites in a walker window.
DEFAULT_MAX_SITES = 2_000_000


@dataclass(frozen=True)
class Local:
    """A single-site initial profile at j = 0."""


@dataclass(frozen=True)
class Gaussian:
    """A discrete Gaussian profile with initial dispersion sigma0 > 0."""

    sigma0: float

    def __post_init__(self) -> None:
        if not self.sigma0 > 0.0:
            raise DomainError(f"Gaussian sigma0 must be > 0, got {self.sigma0}")


@dataclass(frozen=True)
class Rectangular:
    """A flat profile 1/sqrt(2a+1) on sites [-a, a]; a is a non-negative integer."""

    a: int

    def __post_init__(self) -> None:
        if int(self.a) != self.a or self.a < 0:
            raise DomainError(f"Rectangular a must be an integer >= 0, got {self.a}")
        object.__setattr__(self, "a", int(self.a))


InitialProfile = Local | Gaussian | Rectangular


@dataclass
class WalkerState:
    """Walker amplitudes a[j], b[j] on the window [j_min, j_min + len - 1]."""

    j_min: int
    a: NDArray[np.complex128]
    b: NDArray[np.complex128]
    t: int = 0

    @property
    def n_sites(self) -> int:
        return self.a.shape[0]

    @property
    def j_max(self) -> int:
        return self.j_min + self.n_sites - 1

    def positions(self) -> NDArray[np.int64]:
        return self.j_min + np.arange(self.n_sites)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2 + np.abs(self.b) ** 2))

    def spinor_at(self, j: int) -> Spinor:
        i = j - self.j_min
        if not 0 <= i < self.n_sites:
            return Spinor(0.0, 0.0)
        return Spinor(complex(self.a[i]), complex(self.b[i]))


@dataclass(frozen=True)
class EntanglementRecord:
    """Per-step coin moments and the entropy they imply."""

    t: int
    moments: CoinMoments
    entropy: float


def sigma_to_a(sigma0: float) -> int:
    """Half-width of the rectangular profile with dispersion sigma0.

    Rounds (sqrt(12 sigma0^2 + 1) - 1)/2 to the nearest integer (the lattice
    sum needs an integer half-width; the real-valued map only serves to compare
    profiles at equal dispersion).
    """
    if not sigma0 > 0.0:
        raise DomainError(f"sigma0 must be > 0, got {sigma0}")
    return max(0, round((math.sqrt(12.0 * sigma0**2 + 1.0) - 1.0) / 2.0))


def profile_weights(profile: InitialProfile) -> tuple[int, NDArray[np.float64]]:
    """Real position weights (j_min, w) of a profile, normalized to sum(w^2) = 1."""
    if isinstance(profile, Local):
        return 0, np.array([1.0])
    if isinstance(profile, Gaussian):
        jmax = max(GAUSS_TRUNC, math.ceil(8.0 * profile.sigma0))
        j = np.arange(-jmax, jmax + 1, dtype=float)
        w = np.exp(-(j**2) / (4.0 * profile.sigma0**2))
        return -jmax, w / math.sqrt(float(np.sum(w**2)))
    if isinstance(profile, Rectangular):
        n = 2 * profile.a + 1
        return -profile.a, np.full(n, 1.0 / math.sqrt(n))
    raise DomainError(f"unknown profile {profile!r}")


def build_initial(profile: InitialProfile, spin: Spinor) -> WalkerState:
    """Product state (position profile) x (spin), with a one-site guard band."""
    if not spin.is_normalized():
        raise DomainError(f"spin must be normalized, |spin|^2 = {spin.norm_sq()}")
    j_min, w = profile_weights(profile)
    n = w.shape[0] + 2
    a = np.zeros(n, dtype=np.complex128)
    b = np.zeros(n, dtype=np.complex128)
    a[1:-1] = w * spin.up
    b[1:-1] = w * spin.down
    return WalkerState(j_min=j_min - 1, a=a, b=b, t=0)


def step(
    state: WalkerState, coin: CoinOperator, max_sites: int = DEFAULT_MAX_SITES
) -> WalkerState:
    """One walk step: coin on every site spinor, then the conditional shift.

    The window grows by one site on each side.  Raises CapacityError if it
    would exceed max_sites.
    """
    n = state.n_sites
    if n + 2 > max_sites:
        raise CapacityError(f"window of {n + 2} sites exceeds max_sites={max_sites}")
    ca = coin[0, 0] * state.a + coin[0, 1] * state.b
    cb = coin[1, 0] * state.a + coin[1, 1] * state.b
    a = np.zeros(n + 2, dtype=np.complex128)
    b = np.zeros(n + 2, dtype=np.complex128)
    a[2:] = ca  # up-amplitude moves j -> j+1
    b[:-2] = cb  # down-amplitude moves j -> j-1
    return WalkerState(j_min=state.j_min - 1, a=a, b=b, t=state.t + 1)


def coin_moments(state: WalkerState) -> CoinMoments:
    """Moments A = sum |a_j|^2 and B = sum a_j b_j* of the current state."""
    return CoinMoments(
        A=float(np.sum(np.abs(state.a) ** 2)),
        B=complex(np.vdot(state.b, state.a)),
    )


def evolve(
    profile: InitialProfile,
    spin: Spinor,
    coin: CoinOperator,
    steps: int,
    max_sites: int | None = None,
) -> list[EntanglementRecord]:
    """Walk for `steps` steps, recording moments and entropy at every t."""
    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    state = build_initial(profile, spin)
    if max_sites is None:
        max_sites = max(DEFAULT_MAX_SITES, state.n_sites + 2 * steps + 2)
    records = []
    for _ in range(steps + 1):
        m = coin_moments(state)
        records.append(EntanglementRecord(t=state.t, moments=m, entropy=entropy_from_moments(m)))
        if state.t < steps:
            state = step(state, coin, max_sites=max_sites)
    return records


def position_distribution(state: WalkerState) -> list[tuple[int, float]]:
    """Site probabilities P(j) = |a_j|^2 + |b_j|^2, omitting exact zeros."""
    p = np.abs(state.a) ** 2 + np.abs(state.b) ** 2
    j = state.positions()
    keep = p > 0.0
    return [(int(jj), float(pp)) for jj, pp in zip(j[keep], p[keep])]


@dataclass
class BasisEvolution:
    """Per-step cross moments of the two spin-basis evolutions of one profile.

    The walk is linear in the initial spin, so the state from spin (cu, cd) is
    cu * (state from spin up) + cd * (state from spin down).  Storing the seven
    quadratic cross sums per step lets the moments of every initial spin state
    be recovered without re-simulating.
    """

    steps: int
    auu: NDArray[np.float64] = field(repr=False, default=None)
    add: NDArray[np.float64] = field(repr=False, default=None)
    aud: NDArray[np.complex128] = field(repr=False, default=None)
    buu: NDArray[np.complex128] = field(repr=False, default=None)
    bud: NDArray[np.complex128] = field(repr=False, default=None)
    bdu: NDArray[np.complex128] = field(repr=False, default=None)
    bdd: NDArray[np.complex128] = field(repr=False, default=None)

    def moments_arrays(self, up, down):
        """Moments (A, B) for spin amplitudes `up`, `down` (scalars or arrays).

        Broadcast shape is spin_shape + (steps + 1,); A is real, B complex.
        """
        cu = np.asarray(up, dtype=np.complex128)[..., None]
        cd = np.asarray(down, dtype=np.complex128)[..., None]
        pu = np.abs(cu) ** 2
        pd = np.abs(cd) ** 2
        cross = cu * np.conj(cd)
        A = pu * self.auu + pd * self.add + 2.0 * np.real(cross * self.aud)
        B = pu * self.buu + pd * self.bdd + cross * self.bud + np.conj(cross) * self.bdu
        return A, B


def evolve_basis(
    profile: InitialProfile,
    coin: CoinOperator,
    steps: int,
    max_sites: int | None = None,
) -> BasisEvolution:
    """Evolve the spin-up and spin-down basis states of a profile together.

    Records the quadratic cross sums needed by BasisEvolution.moments_arrays.
    """
    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    su = build_initial(profile, Spinor(1.0, 0.0))
    sd = build_initial(profile, Spinor(0.0, 1.0))
    if max_sites is None:
        max_sites = max(DEFAULT_MAX_SITES, su.n_sites + 2 * steps + 2)
    out = BasisEvolution(steps=steps)
    out.auu = np.empty(steps + 1)
    out.add = np.empty(steps + 1)
    for name in ("aud", "buu", "bud", "bdu", "bdd"):
        setattr(out, name, np.empty(steps + 1, dtype=np.complex128))
    for i in range(steps + 1):
        out.auu[i] = np.sum(np.abs(su.a) ** 2)
        out.add[i] = np.sum(np.abs(sd.a) ** 2)
        out.aud[i] = np.vdot(sd.a, su.a)
        out.buu[i] = np.vdot(su.b, su.a)
        out.bud[i] = np.vdot(sd.b, su.a)
        out.bdu[i] = np.vdot(su.b, sd.a)
        out.bdd[i] = np.vdot(sd.b, sd.a)
        if i < steps:
            su = step(su, coin, max_sites=max_sites)
            sd = step(sd, coin, max_sites=max_sites)
    return out
