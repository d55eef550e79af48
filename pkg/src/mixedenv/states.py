"""Single-qubit states: parameterized pure and mixed states, Bloch vectors.

Density matrices are plain ``(2, 2)`` complex numpy arrays and Bloch vectors
are ``(3,)`` real arrays. The parameter containers are frozen dataclasses that
normalize their angles on construction.

The phase convention puts ``exp(-1j * phi)`` on the ``|1>`` amplitude, for
both the system state and the pure part of the environment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TOL",
    "IDENTITY2",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "PAULIS",
    "PROBE_LABELS",
    "PureStateAngles",
    "EnvironmentParams",
    "pure_ket",
    "pure_state",
    "environment_state",
    "bloch_to_density",
    "density_to_bloch",
    "bloch_to_angles",
    "probe_states",
    "check_density",
]

# Default tolerance for physicality checks.
TOL = 1e-9

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

# Fixed probe order; tomography columns depend on it.
PROBE_LABELS = ("+x", "-x", "+y", "-y", "+z", "-z")

_TWO_PI = 2.0 * math.pi


def _normalize_polar(theta: float, phi: float) -> tuple[float, float]:
    """Fold (theta, phi) into theta in [0, pi], phi in [0, 2 pi).

    A polar angle past pi describes the same ray as ``2 pi - theta`` with the
    azimuth advanced by pi (the two kets differ by a global sign).
    """
    theta = math.fmod(float(theta), _TWO_PI)
    if theta < 0:
        theta += _TWO_PI
    phi = float(phi)
    if theta > math.pi:
        theta = _TWO_PI - theta
        phi += math.pi
    phi = math.fmod(phi, _TWO_PI)
    if phi < 0:
        phi += _TWO_PI
    # fmod of a tiny negative can round up to exactly 2 pi
    if phi >= _TWO_PI:
        phi = 0.0
    return theta, phi


@dataclass(frozen=True)
class PureStateAngles:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = _normalize_polar(self.theta, self.phi)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


@dataclass(frozen=True)
class EnvironmentParams:
    """Environment qubit: mixture of I/2 and a pure state.

    ``lambda_mix`` is the weight of the pure part (1 = pure, 0 = maximally
    mixed); ``xi`` and ``eta`` are the polar and azimuthal angles of the pure
    part.
    """

    lambda_mix: float
    xi: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        lam = float(self.lambda_mix)
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"lambda_mix must lie in [0, 1], got {lam}")
        xi, eta = _normalize_polar(self.xi, self.eta)
        object.__setattr__(self, "lambda_mix", lam)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eta", eta)

    @property
    def bloch(self) -> np.ndarray:
        """Bloch vector of the environment state; its norm is ``lambda_mix``."""
        return self.lambda_mix * density_to_bloch(pure_state(PureStateAngles(self.xi, self.eta)))


def pure_ket(theta: float, phi: float) -> np.ndarray:
    return np.array([math.cos(theta / 2), np.exp(-1j * phi) * math.sin(theta / 2)])


def pure_state(angles: PureStateAngles) -> np.ndarray:
    psi = pure_ket(angles.theta, angles.phi)
    return np.outer(psi, psi.conj())


def environment_state(env: EnvironmentParams) -> np.ndarray:
    lam = env.lambda_mix
    pure = pure_state(PureStateAngles(env.xi, env.eta))
    return (1.0 - lam) * IDENTITY2 / 2 + lam * pure


def bloch_to_density(n, tol: float = TOL) -> np.ndarray:
    """Return ``(I + n . sigma) / 2``; rejects vectors outside the unit ball."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise ValueError(f"Bloch vector must have shape (3,), got {n.shape}")
    norm = float(np.linalg.norm(n))
    if norm > 1.0 + tol:
        raise ValueError(f"unphysical Bloch vector with norm {norm}")
    return 0.5 * (IDENTITY2 + np.tensordot(n, PAULIS, axes=1))


def check_density(rho, tol: float = TOL, psd: bool = True) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Raises ``ValueError`` when the matrix is not square, not Hermitian, not of
    unit trace or (if ``psd``) has an eigenvalue below ``-tol``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real}, expected 1")
    if psd and np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def density_to_bloch(rho, tol: float = TOL) -> np.ndarray:
    rho = check_density(rho, tol, psd=False)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 density matrix, got {rho.shape}")
    # tr(rho sigma_i) for each Pauli
    return np.real(np.einsum("ij,kji->k", rho, PAULIS))


def bloch_to_angles(n) -> tuple[float, float]:
    """Spherical angles (xi, eta) of a nonzero Bloch vector in this package's
    phase convention, i.e. the inverse of ``pure_state`` on the unit sphere."""
    n = np.asarray(n, dtype=float)
    r = float(np.linalg.norm(n))
    if r == 0.0:
        return 0.0, 0.0
    xi = math.acos(max(-1.0, min(1.0, n[2] / r)))
    # exp(-i eta) on |1> puts -sin(xi) sin(eta) on the y component
    eta = math.atan2(-n[1], n[0]) % _TWO_PI
    return xi, eta


def probe_states() -> list[tuple[str, np.ndarray]]:
    """The six Pauli-axis eigenstates in the order +x, -x, +y, -y, +z, -z."""
    out = []
    for axis in range(3):
        for sign, label in ((1.0, PROBE_LABELS[2 * axis]), (-1.0, PROBE_LABELS[2 * axis + 1])):
            out.append((label, 0.5 * (IDENTITY2 + sign * PAULIS[axis])))
    return out
