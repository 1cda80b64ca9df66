"""Pfaffians of complex skew-symmetric matrices.

The Pfaffian is computed by a Parlett-Reid style skew-symmetric
tridiagonalization with partial pivoting.  Each elimination step applies a
rank-2 antisymmetric update to the trailing block; the Pfaffian is the product
of the super-diagonal pivots times the sign of the accumulated row/column
permutation.  Pf(A)^2 = det(A) for every skew-symmetric A.
"""

from __future__ import annotations

import numpy as np

__all__ = ["SkewMatrix", "pfaffian", "PfaffianDimensionError", "SkewSymmetryError"]

#: relative tolerance for the antisymmetry check at construction
ASYMMETRY_RTOL = 1e-12
#: pivots below this fraction of the largest initial entry short-circuit to 0
PIVOT_RTOL = 1e-13


class PfaffianDimensionError(ValueError):
    """Matrix is not square with even dimension >= 2."""


class SkewSymmetryError(ValueError):
    """Matrix violates antisymmetry beyond tolerance."""


class SkewMatrix:
    """Even-dimensional complex antisymmetric matrix.

    Construction symmetrizes the input, i.e. stores ``(M - M.T) / 2`` (which
    zeroes the diagonal exactly), and records the largest asymmetry found.
    Asymmetry beyond ``ASYMMETRY_RTOL`` relative to the largest entry
    magnitude raises :class:`SkewSymmetryError`.
    """

    def __init__(self, entries):
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise PfaffianDimensionError(f"expected a square matrix, got shape {m.shape}")
        n = m.shape[0]
        if n < 2 or n % 2 != 0:
            raise PfaffianDimensionError(f"dimension must be even and >= 2, got {n}")
        scale = float(np.abs(m).max())
        asymmetry = float(np.abs(m + m.T).max())
        if scale > 0.0 and asymmetry > ASYMMETRY_RTOL * scale:
            raise SkewSymmetryError(
                f"antisymmetry violated: max |M + M.T| = {asymmetry:.3e} "
                f"(largest entry {scale:.3e})"
            )
        self.entries = 0.5 * (m - m.T)
        self.dim = n
        self.max_asymmetry = asymmetry

    def __repr__(self):
        return f"SkewMatrix(dim={self.dim}, max_asymmetry={self.max_asymmetry:.3e})"


def pfaffian(a) -> complex:
    """Pfaffian of a complex skew-symmetric matrix.

    Parameters
    ----------
    a : SkewMatrix or array_like
        Even-dimensional antisymmetric matrix.  Arrays are validated through
        :class:`SkewMatrix` first.

    Returns
    -------
    complex
        Pf(a), with the convention Pf([[0, x], [-x, 0]]) = x.

    Notes
    -----
    O(n^3).  If at any elimination step the largest available pivot falls
    below ``PIVOT_RTOL`` times the largest initial entry magnitude, the
    matrix is treated as structurally singular and exactly 0 is returned.
    """
    if not isinstance(a, SkewMatrix):
        a = SkewMatrix(a)
    m = a.entries.copy()
    n = a.dim
    scale = float(np.abs(m).max())
    if scale == 0.0:
        return 0.0 + 0.0j
    threshold = PIVOT_RTOL * scale

    pf = 1.0 + 0.0j
    for k in range(0, n - 2, 2):
        # largest pivot in column k below the diagonal
        col = np.abs(m[k + 1:, k])
        rel = int(np.argmax(col))
        if col[rel] < threshold:
            return 0.0 + 0.0j
        piv = k + 1 + rel
        if piv != k + 1:
            m[[k + 1, piv], :] = m[[piv, k + 1], :]
            m[:, [k + 1, piv]] = m[:, [piv, k + 1]]
            pf = -pf
        pf *= m[k, k + 1]
        # rank-2 update of the trailing block
        tau = m[k, k + 2:] / m[k, k + 1]
        w = m[k + 2:, k + 1]
        m[k + 2:, k + 2:] += np.outer(tau, w) - np.outer(w, tau)
    pf *= m[n - 2, n - 1]
    return complex(pf)
