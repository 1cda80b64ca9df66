"""Shared helpers for building BCS bra/ket operator words in tests."""

import numpy as np

from isingring.wick import LinearOperator


def bcs_amplitudes(rng, count, min_v=0.0):
    """Random normalized (u, v) pairs with |v| bounded away from zero."""
    pairs = []
    while len(pairs) < count:
        z = rng.standard_normal(4)
        u = z[0] + 1j * z[1]
        v = z[2] + 1j * z[3]
        norm = np.sqrt(abs(u) ** 2 + abs(v) ** 2)
        u, v = u / norm, v / norm
        if abs(v) > min_v:
            pairs.append((u, v))
    return pairs


def bra_word(pairs):
    """Bra-side operator list for a product of BCS mode factors."""
    ops = []
    for mode, u, v in reversed(pairs):
        neg = mode.negate()
        ops.append(LinearOperator(ann={neg: 1.0}))
        ops.append(LinearOperator(ann={mode: np.conj(v)}, cre={neg: np.conj(u)}))
    return ops


def ket_word(pairs):
    """Ket-side operator list for a product of BCS mode factors."""
    ops = []
    for mode, u, v in pairs:
        neg = mode.negate()
        ops.append(LinearOperator(ann={neg: u}, cre={mode: v}))
        ops.append(LinearOperator(cre={neg: 1.0}))
    return ops
