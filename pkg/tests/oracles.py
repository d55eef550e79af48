"""Independent reference computations used by the tests.

Nothing here calls the routines it is used to check.
"""

import math

import numpy as np


def random_unitary(rng, n=2):
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, n=2):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def dense_channel_output(rho_in, unitary, rho_env):
    """Channel output by purifying both inputs into kets and summing.

    Each pair of eigenvectors gives a pure joint state ``U |a>|e>``; its system
    marginal is ``A A^dagger`` with ``A`` the 2x2 coefficient matrix.
    """
    out = np.zeros((2, 2), dtype=complex)
    pa, va = np.linalg.eigh(rho_in)
    pe, ve = np.linalg.eigh(rho_env)
    for i in range(2):
        for j in range(2):
            w = pa[i] * pe[j]
            if abs(w) < 1e-15:
                continue
            psi = unitary @ np.kron(va[:, i], ve[:, j])
            A = psi.reshape(2, 2)
            out += w * (A @ A.conj().T)
    return out


def singular_values_via_eig(m):
    """Singular values from the eigenvalues of m^T m, descending, with det sign on the last."""
    ev = np.clip(np.linalg.eigvalsh(m.T @ m), 0.0, None)
    s = np.sqrt(ev)[::-1]
    s[2] *= np.sign(np.linalg.det(m)) if np.linalg.det(m) != 0 else 1.0
    return s


def simulable_slice_area(z0):
    """Shaded area at height z0: twice the region between y = |z|x, y = x/|z| and xy = |z|.

    With u = xy and w = y/x the region is the box [0, |z|] x [|z|, 1/|z|] and
    dx dy = du dw / (2w), giving -|z| ln|z| per quadrant.
    """
    z = abs(z0)
    if z == 0.0:
        return 0.0
    return -2.0 * z * math.log(z)


def bloch_of(rho):
    """Bloch vector from matrix entries directly."""
    return np.array([2 * rho[0, 1].real, -2 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real])
