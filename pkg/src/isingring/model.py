"""Static structure of the periodic quantum Ising chain.

Momentum grids for the two fermion-parity sectors, the single-mode
dispersion and Bogoliubov angle, sub-ground-state energies and the parity
gap, the chord-length diagnostic behind the gap inequality, and the
frustration-free factorization formulas of the open XYZ chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .wick import EVEN, ODD, ModeIndex

__all__ = [
    "MomentumGrid",
    "dispersion",
    "bogoliubov_angle",
    "mode_hamiltonian_even",
    "special_mode_energies",
    "sgs_energies",
    "gap_delta",
    "chord_excess",
    "delta_l",
    "cat_norm_identity",
    "xyz_factorization",
]


@dataclass(frozen=True)
class MomentumGrid:
    """Ring of ``n_sites`` spins with the two sector momentum grids.

    The even sector uses the half-integer grid ``-pi + (2j - 1) pi / N``
    (j = 1..N), symmetric under k -> -k.  The odd sector uses the integer
    grid ``-pi + 2 j pi / N`` (j = 0..N-1), which contains the two
    self-conjugate momenta -pi and 0.
    """

    n_sites: int

    def __post_init__(self):
        n = self.n_sites
        if n < 4 or n % 2 != 0:
            raise ValueError(f"n_sites must be even and >= 4, got {n}")

    @property
    def k_plus(self) -> np.ndarray:
        n = self.n_sites
        return np.pi * np.arange(-n + 1, n, 2) / n

    @property
    def k_minus(self) -> np.ndarray:
        n = self.n_sites
        return np.pi * np.arange(-n, n, 2) / n

    def positive_plus(self) -> list:
        """Positive even-sector modes, ascending (N/2 of them)."""
        n = self.n_sites
        return [ModeIndex(EVEN, m, n) for m in range(1, n, 2)]

    def positive_minus(self) -> list:
        """Positive odd-sector normal modes, ascending (N/2 - 1 of them)."""
        n = self.n_sites
        return [ModeIndex(ODD, m, n) for m in range(2, n, 2)]

    def special_pi(self) -> ModeIndex:
        return ModeIndex(ODD, -self.n_sites, self.n_sites)

    def special_zero(self) -> ModeIndex:
        return ModeIndex(ODD, 0, self.n_sites)


def dispersion(k: float, g: float) -> float:
    """Single-mode excitation energy ``2 sqrt(g^2 + 2 g cos k + 1)``."""
    return 2.0 * np.sqrt(max(g * g + 2.0 * g * np.cos(k) + 1.0, 0.0))


def bogoliubov_angle(k: float, g: float):
    """Half-angle pair ``(sin(theta_k/2), cos(theta_k/2))`` of a normal mode.

    Uses the closed form that fixes the sign/branch convention on which the
    cat-state identities rely.  The special modes k = 0 and k = -pi have
    diagonal two-level Hamiltonians and no angle; they raise ``ValueError``.
    """
    if abs(np.sin(k)) < 1e-12:
        raise ValueError(f"no Bogoliubov angle for special mode k={k}")
    lam = dispersion(k, g)
    num_s = 2.0 * np.sin(k)
    num_c = lam - 2.0 * np.cos(k) - 2.0 * g
    norm = np.hypot(num_s, num_c)
    return num_s / norm, num_c / norm


def mode_hamiltonian_even(k: float, g: float) -> np.ndarray:
    """Mode Hamiltonian in the even basis ``{|vac>, c^dag_k c^dag_-k |vac>}``."""
    return 2.0 * np.array(
        [[np.cos(k) + g, -np.sin(k)], [-np.sin(k), -np.cos(k) - g]], dtype=complex
    )


def special_mode_energies(g: float):
    """Diagonal entries of the two special-mode Hamiltonians.

    Returned as ``(h1_pi, h2_pi, h1_0, h2_0)`` in the bases
    ``{|vac>_{-pi}, |-pi>}`` and ``{|vac>_0, |0>}``.
    """
    return (-2.0 * (1.0 - g), 2.0 * (1.0 - g), 2.0 * (1.0 + g), -2.0 * (1.0 + g))


def sgs_energies(grid: MomentumGrid, g: float):
    """Energies of the even and odd sub-ground states ``(e_plus, e_minus)``."""
    e_plus = -sum(dispersion(m.momentum, g) for m in grid.positive_plus())
    e_minus = -sum(dispersion(m.momentum, g) for m in grid.positive_minus()) - 2.0
    return e_plus, e_minus


#: below this value the parity gap is recomputed in arbitrary precision,
#: because deep in the ordered phase it is exponentially small in N and the
#: double-precision energy difference cancels to roundoff
_GAP_PRECISE_THRESHOLD = 1e-6


def _gap_precise(x: float, n_sites: int) -> float:
    """Parity gap via the alternating chord sum in arbitrary precision.

    The gap scales roughly like x^N for x < 1, far below the double-precision
    cancellation floor of the O(N) energy sums, so the alternating sum minus
    one is evaluated with enough digits to resolve it before rounding back.
    """
    import mpmath

    if x == 0.0:
        return 0.0
    digits = 40
    if x < 1.0:
        digits += int(-n_sites * np.log10(x)) + 10
    with mpmath.workdps(digits):
        xm = mpmath.mpf(x)
        total = -mpmath.mpf(1)
        for j in range(1, n_sites):
            chord = mpmath.sqrt(
                xm * xm - 2 * xm * mpmath.cospi(mpmath.mpf(j) / n_sites) + 1
            )
            total += chord if j % 2 else -chord
        return float(total)


def gap_delta(grid: MomentumGrid, g: float) -> float:
    """Half the energy splitting between the two parity sub-ground states."""
    e_plus, e_minus = sgs_energies(grid, g)
    delta = 0.5 * (e_minus - e_plus)
    if abs(delta) < _GAP_PRECISE_THRESHOLD:
        return _gap_precise(g, grid.n_sites)
    return delta


def chord_excess(x: float, n_sites: int) -> float:
    """Chord-length difference minus one, ``delta_l(x) - 1``.

    Exposed separately because deep inside the unit circle the excess is
    exponentially small in N: adding it to 1 rounds away, while the excess
    itself stays strictly positive (via the arbitrary-precision fallback).
    Coincides with the parity gap of the ring at field ``x``.
    """
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if n_sites < 4 or n_sites % 2 != 0:
        raise ValueError(f"n_sites must be even and >= 4, got {n_sites}")
    alpha = np.pi / n_sites
    j_odd = np.arange(1, n_sites, 2)
    j_even = np.arange(2, n_sites - 1, 2)

    def chord(j):
        return np.sqrt(x * x - 2.0 * x * np.cos(j * alpha) + 1.0)

    result = float(chord(j_odd).sum() - chord(j_even).sum()) - 1.0
    if abs(result) < _GAP_PRECISE_THRESHOLD:
        return _gap_precise(x, n_sites)
    return result


def delta_l(x: float, n_sites: int) -> float:
    """Chord-length difference on the upper unit semicircle.

    For a point P = (x, 0), x >= 0, with the semicircle cut into N equal
    sectors, returns the sum of the odd-index chords minus the even-index
    ones.  Satisfies ``delta_l(x) = gap_delta(x) + 1``.
    """
    return 1.0 + chord_excess(x, n_sites)


def cat_norm_identity(n_sites: int) -> float:
    """Product of ``sin(k/2)`` over positive even-sector momenta.

    Equals ``(1/sqrt(2))^(N-1)`` for every even N; this normalization fixes
    the phase relating the even cat state to the momentum-space sub-ground
    state of the classical ring.
    """
    grid = MomentumGrid(n_sites)
    return float(np.prod([np.sin(m.momentum / 2.0) for m in grid.positive_plus()]))


def xyz_factorization(jx: float, jy: float, jz: float, n_sites: int):
    """Frustration-free point of the open XYZ chain.

    Returns ``(h_star, beta_star, overlap)``: the factorizing field, the
    product-state mixing amplitude, and the overlap of the two factorized
    ground states ``((1 - beta*) / (1 + beta*))^N``.
    Requires the ordering ``jx < jy <= 0 <= jz``.
    """
    if not (jx < jy <= 0.0 <= jz):
        raise ValueError(f"couplings must satisfy jx < jy <= 0 <= jz, got ({jx}, {jy}, {jz})")
    prod = (jz - jx) * (jz - jy)
    if prod < 0.0:
        raise ValueError("(jz - jx)(jz - jy) must be nonnegative")
    h_star = np.sqrt(prod)
    beta_star = -(jx - jy) / (np.sqrt((jx - jy) ** 2 + 4.0 * h_star**2) - 2.0 * h_star)
    overlap = ((1.0 - beta_star) / (1.0 + beta_star)) ** n_sites
    return float(h_star), float(beta_star), float(overlap)
