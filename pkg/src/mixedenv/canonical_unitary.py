"""The three-parameter canonical two-qubit interaction unitary.

Matrices are written in the product basis ``|00>, |01>, |10>, |11>`` with the
system qubit as the first tensor factor.

The canonical unitary is diagonal in the magic (special Bell) basis. With
``exp(-1j * lambda_j)`` as the eigenvalue on basis vector ``psi_j`` the
assignment that reproduces the product-basis matrix is::

    psi_1 = -i (|00> - |11>) / sqrt(2)
    psi_2 =    (|00> + |11>) / sqrt(2)
    psi_3 = -i (|01> + |10>) / sqrt(2)
    psi_4 =    (|01> - |10>) / sqrt(2)

i.e. the magic basis ``e_1..e_4`` taken in the order ``e_2, e_1, e_4, e_3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAGIC_BASIS",
    "BELL_PHASE_BASIS",
    "BellPhases",
    "CanonicalAngles",
    "phases_to_angles",
    "canonical_unitary",
    "bell_diagonal_unitary",
    "sandwich",
    "is_unitary",
    "global_phase_distance",
]

_S = 1.0 / math.sqrt(2.0)

# Columns are e_1..e_4 of the magic basis.
MAGIC_BASIS = np.array(
    [
        [_S, -1j * _S, 0, 0],
        [0, 0, _S, -1j * _S],
        [0, 0, -_S, -1j * _S],
        [_S, 1j * _S, 0, 0],
    ],
    dtype=complex,
)

# Columns are psi_1..psi_4, the eigenvectors carrying lambda_1..lambda_4.
BELL_PHASE_BASIS = MAGIC_BASIS[:, [1, 0, 3, 2]]


@dataclass(frozen=True)
class BellPhases:
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float

    def as_array(self) -> np.ndarray:
        return np.array([self.lambda1, self.lambda2, self.lambda3, self.lambda4], dtype=float)


@dataclass(frozen=True)
class CanonicalAngles:
    alpha: float
    beta: float
    gamma: float


def phases_to_angles(p: BellPhases) -> CanonicalAngles:
    """Convert Bell phases to (alpha, beta, gamma).

    The global phase is first fixed so that ``lambda3 + lambda4 = 0``; then

        alpha =  (l1 - l2 - l3 + l4) / 2
        beta  = -(l1 + l2 + l3 + l4) / 2
        gamma =  (l1 - l2 + l3 - l4) / 2

    Without the gauge fix, ``beta`` would move under a common shift of all four
    phases even though the Bell-diagonal unitary only picks up a global phase.
    In closed form the result is ``beta = (-l1 - l2 + l3 + l4) / 2``.
    """
    l1, l2, l3, l4 = p.as_array()
    shift = 0.5 * (l3 + l4)
    l1, l2, l3, l4 = l1 - shift, l2 - shift, l3 - shift, l4 - shift
    return CanonicalAngles(
        alpha=0.5 * (l1 - l2 - l3 + l4),
        beta=-0.5 * (l1 + l2 + l3 + l4),
        gamma=0.5 * (l1 - l2 + l3 - l4),
    )


def canonical_unitary(a: CanonicalAngles) -> np.ndarray:
    plus = 0.5 * (a.alpha + a.gamma)
    minus = 0.5 * (a.alpha - a.gamma)
    cp, sp = math.cos(plus), math.sin(plus)
    cm, sm = math.cos(minus), math.sin(minus)
    ph = np.exp(-1j * a.beta)
    return np.array(
        [
            [cp, 0, 0, 1j * sp],
            [0, cm * ph, 1j * sm * ph, 0],
            [0, 1j * sm * ph, cm * ph, 0],
            [1j * sp, 0, 0, cp],
        ],
        dtype=complex,
    )


def bell_diagonal_unitary(p: BellPhases) -> np.ndarray:
    """Build ``sum_j exp(-i lambda_j) |psi_j><psi_j|`` in the product basis."""
    phases = np.exp(-1j * p.as_array())
    B = BELL_PHASE_BASIS
    return (B * phases) @ B.conj().T


def is_unitary(m, tol: float = 1e-12) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def sandwich(u1, v1, core, u2, v2, tol: float = 1e-12) -> np.ndarray:
    """Return ``(u1 (x) v1) core (u2 (x) v2)``, system factor first."""
    for name, f in (("u1", u1), ("v1", v1), ("u2", u2), ("v2", v2)):
        if np.shape(f) != (2, 2) or not is_unitary(f, tol):
            raise ValueError(f"local factor {name} is not a 2x2 unitary")
    if np.shape(core) != (4, 4):
        raise ValueError("core must be a 4x4 matrix")
    return np.kron(u1, v1) @ np.asarray(core, dtype=complex) @ np.kron(u2, v2)


def global_phase_distance(a, b) -> float:
    """Max entrywise distance between ``a`` and ``b`` after removing a global phase.

    The phase is taken from the largest-magnitude entry of ``a``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    if abs(b[k]) == 0:
        return float("inf")
    phase = a[k] / b[k]
    phase /= abs(phase)
    return float(np.max(np.abs(a - phase * b)))
