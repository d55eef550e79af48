"""Qubit channels induced by the canonical unitary and a one-qubit mixed environment.

A channel instance is fixed by six numbers: the canonical angles
(alpha, beta, gamma) and the environment (lambda, xi, eta). Its action on
Bloch vectors is affine, ``n -> m @ n + c``. Two independent routes to
``(m, c)`` are provided:

* :func:`extract_affine` runs the channel on the six probe states and reads the
  map off the outputs (tomography).
* :func:`analytic_affine` evaluates the closed form.

With ``s``/``c`` for sine/cosine and ``l`` for lambda the closed form is::

    m = [[ cb cg,          l sb cg cxi,        -l cb sg sxi seta],
         [-l sb ca cxi,    ca cb,               l cb sa sxi ceta],
         [ l ca sg sxi seta, -l sa cg sxi ceta,  ca cg          ]]
    c = (-l sb sg sxi ceta, -l sa sb sxi seta, -l sa sg cxi)

:func:`analytic_affine_xy_swapped` gives the same map written in the frame
with Bloch x and y exchanged and the environment azimuth advanced by pi/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .canonical_unitary import CanonicalAngles, canonical_unitary
from .states import (
    IDENTITY2,
    PAULIS,
    EnvironmentParams,
    check_density,
    density_to_bloch,
    environment_state,
    probe_states,
)

__all__ = [
    "CP_TOL",
    "ChannelConsistencyError",
    "ChannelParams",
    "AffineMap",
    "SignedDiagonal",
    "channel_output",
    "apply_channel",
    "partial_trace_env",
    "affine_from_channel",
    "extract_affine",
    "analytic_affine",
    "analytic_affine_xy_swapped",
    "apply_affine",
    "canonical_diagonal",
    "choi_matrix",
    "choi_matrices",
    "is_completely_positive",
    "pauli_channel",
    "depolarizing_affine",
    "shift_vector",
    "is_zero_shift",
]

CP_TOL = 1e-10
# Tomographic shift estimates from the three axes must agree to this level.
SHIFT_CONSISTENCY_TOL = 1e-9


class ChannelConsistencyError(RuntimeError):
    """Two routes that must agree on a channel did not."""


@dataclass(frozen=True)
class ChannelParams:
    angles: CanonicalAngles
    env: EnvironmentParams

    @classmethod
    def from_values(cls, alpha, beta, gamma, xi=0.0, eta=0.0, lambda_mix=0.0) -> "ChannelParams":
        return cls(CanonicalAngles(alpha, beta, gamma), EnvironmentParams(lambda_mix, xi, eta))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "ChannelParams":
        """Uniform over alpha, beta, gamma, eta in [0, 2 pi), xi in [0, pi], lambda in [0, 1]."""
        a, b, g, eta = rng.uniform(0.0, 2 * math.pi, 4)
        xi = rng.uniform(0.0, math.pi)
        lam = rng.uniform(0.0, 1.0)
        return cls.from_values(a, b, g, xi, eta, lam)

    def as_tuple(self) -> tuple[float, ...]:
        a, e = self.angles, self.env
        return (a.alpha, a.beta, a.gamma, e.xi, e.eta, e.lambda_mix)


@dataclass(frozen=True, eq=False)
class AffineMap:
    m: np.ndarray
    c: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        c = np.array(self.c, dtype=float)
        if m.shape != (3, 3) or c.shape != (3,):
            raise ValueError(f"affine map needs m of shape (3, 3) and c of shape (3,), got {m.shape}, {c.shape}")
        m.flags.writeable = False
        c.flags.writeable = False
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "c", c)

    @classmethod
    def diagonal(cls, x, y, z) -> "AffineMap":
        return cls(np.diag([x, y, z]))

    def max_deviation(self, other: "AffineMap") -> float:
        return float(max(np.max(np.abs(self.m - other.m)), np.max(np.abs(self.c - other.c))))


@dataclass(frozen=True, eq=False)
class SignedDiagonal:
    """``r_post @ m @ r_pre == diag(d)`` with proper rotations on both sides."""

    d: np.ndarray
    r_post: np.ndarray
    r_pre: np.ndarray


def partial_trace_env(rho4, tol: float = 1e-9) -> np.ndarray:
    """Trace out the second (environment) tensor factor of a 4x4 matrix."""
    rho4 = check_density(rho4, tol, psd=False)
    if rho4.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {rho4.shape}")
    return np.einsum("ikjk->ij", rho4.reshape(2, 2, 2, 2))


def channel_output(rho_in, unitary, rho_env) -> np.ndarray:
    """``Tr_env[U (rho_in (x) rho_env) U^dagger]`` for an arbitrary 4x4 unitary."""
    joint = unitary @ np.kron(rho_in, rho_env) @ unitary.conj().T
    return partial_trace_env(joint)


def apply_channel(rho_in, params: ChannelParams) -> np.ndarray:
    rho_in = check_density(rho_in)
    return channel_output(rho_in, canonical_unitary(params.angles), environment_state(params.env))


def affine_from_channel(channel: Callable[[np.ndarray], np.ndarray]) -> AffineMap:
    """Probe-state tomography of a trace-preserving qubit channel.

    Column j of ``m`` is half the difference of the output Bloch vectors for the
    +j and -j probes; each axis also yields an estimate of ``c`` (half their
    sum). The three estimates must agree, and their mean is returned.
    """
    outs = [density_to_bloch(channel(rho)) for _, rho in probe_states()]
    m = np.empty((3, 3))
    shifts = np.empty((3, 3))
    for j in range(3):
        plus, minus = outs[2 * j], outs[2 * j + 1]
        m[:, j] = 0.5 * (plus - minus)
        shifts[j] = 0.5 * (plus + minus)
    spread = np.max(np.abs(shifts - shifts.mean(axis=0)))
    if spread > SHIFT_CONSISTENCY_TOL:
        raise ChannelConsistencyError(f"per-axis shift estimates disagree by {spread:.3e}; the channel is not affine")
    return AffineMap(m, shifts.mean(axis=0))


def extract_affine(params: ChannelParams) -> AffineMap:
    U = canonical_unitary(params.angles)
    rho_e = environment_state(params.env)
    return affine_from_channel(lambda rho: channel_output(rho, U, rho_e))


def _trig(params: ChannelParams):
    a, b, g, xi, eta, lam = params.as_tuple()
    return (
        math.sin(a), math.cos(a),
        math.sin(b), math.cos(b),
        math.sin(g), math.cos(g),
        math.sin(xi), math.cos(xi),
        math.sin(eta), math.cos(eta),
        lam,
    )  # fmt: skip


def analytic_affine(params: ChannelParams) -> AffineMap:
    sa, ca, sb, cb, sg, cg, sxi, cxi, seta, ceta, lam = _trig(params)
    m = np.array(
        [
            [cb * cg, lam * sb * cg * cxi, -lam * cb * sg * sxi * seta],
            [-lam * sb * ca * cxi, ca * cb, lam * cb * sa * sxi * ceta],
            [lam * ca * sg * sxi * seta, -lam * sa * cg * sxi * ceta, ca * cg],
        ]
    )
    return AffineMap(m, shift_vector(params))


def analytic_affine_xy_swapped(params: ChannelParams) -> AffineMap:
    """Closed form in the frame with Bloch x and y exchanged.

    Equal to ``P @ analytic_affine(p') @ P`` (and ``P @ c``) where ``P`` swaps
    x and y and ``p'`` is ``params`` with ``eta`` advanced by pi/2.
    """
    sa, ca, sb, cb, sg, cg, sxi, cxi, seta, ceta, lam = _trig(params)
    m = np.array(
        [
            [ca * cb, -lam * ca * sb * cxi, -lam * sa * cb * seta * sxi],
            [lam * sb * cg * cxi, cb * cg, -lam * cb * sg * ceta * sxi],
            [lam * sa * cg * sxi * seta, lam * ca * sg * sxi * ceta, cg * ca],
        ]
    )
    c = np.array(
        [
            -lam * sa * sb * sxi * ceta,
            lam * sb * sg * sxi * seta,
            -lam * sg * sa * cxi,
        ]
    )
    return AffineMap(m, c)


def shift_vector(params: ChannelParams) -> np.ndarray:
    sa, _, sb, _, sg, _, sxi, cxi, seta, ceta, lam = _trig(params)
    return np.array(
        [
            -lam * sb * sg * sxi * ceta,
            -lam * sa * sb * sxi * seta,
            -lam * sa * sg * cxi,
        ]
    )


def is_zero_shift(params: ChannelParams, tol: float = 1e-12) -> bool:
    return bool(np.all(np.abs(shift_vector(params)) <= tol))


def apply_affine(amap: AffineMap, n) -> np.ndarray:
    return amap.m @ np.asarray(n, dtype=float) + amap.c


def canonical_diagonal(m) -> SignedDiagonal:
    """Signed singular-value form of a real 3x3 matrix.

    ``d`` holds the singular values in descending order; the first two are
    nonnegative and the third carries the sign of ``det(m)``. Both rotations
    are proper.
    """
    m = np.asarray(m, dtype=float)
    u, s, vt = np.linalg.svd(m)
    v = vt.T
    d = s.copy()
    if np.linalg.det(u) < 0:
        u[:, 2] *= -1
        d[2] *= -1
    if np.linalg.det(v) < 0:
        v[:, 2] *= -1
        d[2] *= -1
    if d[2] == 0.0:
        d[2] = 0.0  # drop a negative zero
    return SignedDiagonal(d=d, r_post=u.T, r_pre=v)


def choi_matrices(m, c) -> np.ndarray:
    """Batched normalized Choi matrices of affine maps.

    ``m`` has shape ``(..., 3, 3)`` and ``c`` shape ``(..., 3)``. The channel acts
    on the first half of ``|Phi+>``, so the output factor comes first.
    """
    m = np.asarray(m, dtype=float)
    c = np.asarray(c, dtype=float)
    # tr(|i><j| sigma_l) = (sigma_l)_{ji}
    sig_ji = np.transpose(PAULIS, (0, 2, 1))  # [l, i, j]
    delta = np.eye(2)
    out_bloch = np.einsum("...kl,lij->...kij", m, sig_ji) + c[..., :, None, None] * delta
    # E(|i><j|)_{ab}, indices [..., i, j, a, b]
    images = 0.5 * (np.einsum("ij,ab->ijab", delta, IDENTITY2) + np.einsum("...kij,kab->...ijab", out_bloch, PAULIS))
    choi = 0.5 * np.einsum("...ijab->...aibj", images)
    return choi.reshape(choi.shape[:-4] + (4, 4))


def choi_matrix(amap: AffineMap) -> np.ndarray:
    return choi_matrices(amap.m, amap.c)


def is_completely_positive(amap: AffineMap, tol: float = CP_TOL) -> bool:
    return bool(np.linalg.eigvalsh(choi_matrix(amap)).min() >= -tol)


def _check_probabilities(eps, tol: float) -> np.ndarray:
    eps = np.asarray(eps, dtype=float)
    if eps.shape != (4,):
        raise ValueError(f"need four Pauli weights, got shape {eps.shape}")
    if np.any(eps < -tol) or abs(eps.sum() - 1.0) > tol:
        raise ValueError(f"Pauli weights must be nonnegative and sum to 1, got {eps.tolist()}")
    return eps


def pauli_channel(eps, tol: float = 1e-12) -> Callable[[np.ndarray], np.ndarray]:
    """Kraus form ``rho -> sum_j eps_j A_j rho A_j`` with ``A = (I, X, Y, Z)``."""
    eps = _check_probabilities(eps, tol)
    ops = np.concatenate([IDENTITY2[None], PAULIS])

    def channel(rho):
        return np.einsum("k,kij,jl,kml->im", eps, ops, rho, ops.conj())

    return channel


def depolarizing_affine(eps, tol: float = 1e-12) -> AffineMap:
    """Diagonal affine map of a Pauli channel, cross-checked against its Kraus form."""
    eps = _check_probabilities(eps, tol)
    e0, e1, e2, e3 = eps
    amap = AffineMap.diagonal(e0 + e1 - e2 - e3, e0 - e1 + e2 - e3, e0 - e1 - e2 + e3)
    kraus = affine_from_channel(pauli_channel(eps, tol))
    dev = amap.max_deviation(kraus)
    if dev > 1e-12:
        raise ChannelConsistencyError(f"Pauli-channel affine map disagrees with its Kraus form by {dev:.3e}")
    return amap
