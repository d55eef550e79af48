"""Geometry of Pauli (generalized depolarizing) channels.

A Pauli channel has a diagonal affine map ``diag(x, y, z)`` and zero shift.
The valid triples form the tetrahedron with vertices (1,-1,-1), (-1,1,-1),
(-1,-1,1), (1,1,1). Channels reachable with a one-qubit mixed environment have
the diagonal form ``(cos a cos b, cos b cos c, cos c cos a)`` up to proper
local rotations. Those rotations act on a diagonal map by flipping the signs of
two coordinates at a time.

All point-valued functions accept a single point ``(x, y, z)`` or an array of
shape ``(..., 3)``. A single point returns a scalar; an array returns an array.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channel_map import ChannelParams

__all__ = [
    "GEOM_TOL",
    "TETRAHEDRON_VERTICES",
    "TETRAHEDRON_VOLUME",
    "DiagonalPoint",
    "SimAngles",
    "epsilons_from_point",
    "in_tetrahedron",
    "point_from_angles",
    "canonical_sign_representative",
    "is_simulable",
    "invert_to_angles",
    "VolumeEstimate",
    "mc_volume_fraction",
    "slice_area",
    "analytic_volume",
    "CrossSection",
    "cross_section",
    "two_pauli_epsilons",
    "two_pauli_point",
    "two_pauli_simulable",
    "ZERO_SHIFT_FAMILIES",
    "sample_zero_shift_params",
]

GEOM_TOL = 1e-12

TETRAHEDRON_VERTICES = np.array(
    [[1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0], [1.0, 1.0, 1.0]]
)
TETRAHEDRON_VOLUME = 8.0 / 3.0


class DiagonalPoint(NamedTuple):
    x: float
    y: float
    z: float


class SimAngles(NamedTuple):
    a: float
    b: float
    c: float


def _points(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if arr.shape[-1:] != (3,):
        raise ValueError(f"points must have a trailing axis of length 3, got shape {arr.shape}")
    return arr


def _out(value, single: bool):
    if single:
        return value.item() if isinstance(value, np.ndarray) else value
    return value


def epsilons_from_point(p) -> np.ndarray:
    """Pauli weights (eps_0..eps_3) of the diagonal map; they always sum to 1."""
    pts = _points(p)
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    return 0.25 * np.stack([1 + x + y + z, 1 + x - y - z, 1 - x + y - z, 1 - x - y + z], axis=-1)


def in_tetrahedron(p, tol: float = GEOM_TOL):
    pts = _points(p)
    inside = np.all(epsilons_from_point(pts) >= -tol, axis=-1)
    return _out(inside, pts.ndim == 1)


def point_from_angles(s) -> np.ndarray | DiagonalPoint:
    ang = np.asarray(s, dtype=float)
    ca, cb, cc = np.cos(ang[..., 0]), np.cos(ang[..., 1]), np.cos(ang[..., 2])
    pts = np.stack([ca * cb, cb * cc, cc * ca], axis=-1)
    if pts.ndim == 1:
        return DiagonalPoint(*pts.tolist())
    return pts


def _sign_representative(pts: np.ndarray, tol: float = 0.0):
    """Vectorized pair-sign-flip representative.

    Returns ``(rep, ok)``: ``rep`` is the all-nonnegative image and ``ok`` is False
    where no pair of flips reaches it (an odd number of negatives and no zero).
    """
    negatives = np.count_nonzero(pts < -tol, axis=-1)
    has_zero = np.any(np.abs(pts) <= tol, axis=-1)
    ok = (negatives % 2 == 0) | has_zero
    return np.abs(pts), ok


def canonical_sign_representative(p) -> DiagonalPoint | None:
    pts = _points(p)
    if pts.shape != (3,):
        raise ValueError("canonical_sign_representative takes a single point")
    rep, ok = _sign_representative(pts)
    if not ok:
        return None
    return DiagonalPoint(*(rep + 0.0).tolist())


def is_simulable(p, tol: float = GEOM_TOL):
    """Whether a diagonal Pauli map is reachable with a one-qubit mixed environment.

    The product constraints ``xy <= z, yz <= x, zx <= y`` are checked on the
    nonnegative sign representative; the point must also lie in the tetrahedron.
    """
    pts = _points(p)
    rep, ok = _sign_representative(pts, tol)
    x, y, z = rep[..., 0], rep[..., 1], rep[..., 2]
    sim = ok & (x * y <= z + tol) & (y * z <= x + tol) & (z * x <= y + tol)
    sim &= np.all(epsilons_from_point(pts) >= -tol, axis=-1)
    return _out(sim, pts.ndim == 1)


def invert_to_angles(p, tol: float = 1e-10) -> SimAngles | None:
    """Angles (a, b, c) in [0, pi/2] whose forward image is the sign representative.

    Uses ``cos^2 a = zx/y``, ``cos^2 b = xy/z``, ``cos^2 c = yz/x``. Exact zeros
    are handled separately: the angle shared by two vanishing coordinates is pi/2.
    """
    pts = _points(p)
    if pts.shape != (3,):
        raise ValueError("invert_to_angles takes a single point")
    rep, ok = _sign_representative(pts)
    if not ok:
        return None
    x, y, z = rep.tolist()
    zeros = [v == 0.0 for v in (x, y, z)]
    n_zero = sum(zeros)
    half_pi = 0.5 * math.pi

    def acos_sqrt(r):
        if r > 1.0 + tol:
            return None
        return math.acos(math.sqrt(min(max(r, 0.0), 1.0)))

    if n_zero == 3:
        return SimAngles(half_pi, half_pi, half_pi)
    if n_zero == 1:
        # a single zero forces a second one
        return None
    if n_zero == 2:
        if not zeros[2]:  # x = y = 0: cos b = 0, cos a cos c = z
            t = acos_sqrt(z)
            return None if t is None else SimAngles(t, half_pi, t)
        if not zeros[0]:  # y = z = 0: cos c = 0, cos a cos b = x
            t = acos_sqrt(x)
            return None if t is None else SimAngles(t, t, half_pi)
        t = acos_sqrt(y)  # z = x = 0: cos a = 0, cos b cos c = y
        return None if t is None else SimAngles(half_pi, t, t)
    a = acos_sqrt(z * x / y)
    b = acos_sqrt(x * y / z)
    c = acos_sqrt(y * z / x)
    if a is None or b is None or c is None:
        return None
    return SimAngles(a, b, c)


# -- Monte Carlo volume -------------------------------------------------------

MC_BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class VolumeEstimate:
    """Cube rejection-sampling result.

    ``fraction`` is the simulable share of tetrahedron points and ``acceptance``
    the tetrahedron share of cube points; each has a binomial standard error.
    """

    fraction: float
    stderr: float
    acceptance: float
    acceptance_stderr: float
    n_samples: int
    n_tetrahedron: int
    n_simulable: int

    @property
    def simulable_volume(self) -> float:
        return self.fraction * TETRAHEDRON_VOLUME


def _block_rng(seed: int, block: int) -> np.random.Generator:
    # Block index in the third counter word: blocks never share counter values.
    bitgen = np.random.Philox(key=seed % (1 << 64), counter=[0, 0, block, 0])
    return np.random.Generator(bitgen)


def _count_block(seed: int, block: int, size: int) -> tuple[int, int]:
    pts = _block_rng(seed, block).uniform(-1.0, 1.0, size=(size, 3))
    inside = in_tetrahedron(pts)
    sim = is_simulable(pts[inside])
    return int(np.count_nonzero(inside)), int(np.count_nonzero(sim))


def mc_volume_fraction(samples: int, seed: int, workers: int = 1) -> VolumeEstimate:
    """Fraction of the tetrahedron that is simulable, by cube rejection sampling.

    Samples are drawn in fixed blocks from a counter-based generator, so the
    result for a given seed does not depend on ``workers``.
    """
    samples = int(samples)
    if samples < 1:
        raise ValueError("samples must be positive")
    sizes = [min(MC_BLOCK_SIZE, samples - start) for start in range(0, samples, MC_BLOCK_SIZE)]
    jobs = [(seed, k, size) for k, size in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda job: _count_block(*job), jobs))
    else:
        counts = [_count_block(*job) for job in jobs]
    n_tet = sum(c[0] for c in counts)
    n_sim = sum(c[1] for c in counts)
    acc = n_tet / samples
    frac = n_sim / n_tet if n_tet else 0.0
    return VolumeEstimate(
        fraction=frac,
        stderr=math.sqrt(frac * (1 - frac) / n_tet) if n_tet else float("inf"),
        acceptance=acc,
        acceptance_stderr=math.sqrt(acc * (1 - acc) / samples),
        n_samples=samples,
        n_tetrahedron=n_tet,
        n_simulable=n_sim,
    )


# -- Cross sections and quadrature --------------------------------------------


def _chord_lengths(z0: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Length of the simulable set along lines of constant |x| = s in slice z = z0.

    ``z0`` has shape (Nz, 1) and ``s`` shape (Ns,). Each quadrant (sign of x,
    sign of y) is handled separately; the constraints are linear in t = |y|
    except ``st <= |z0|``, which is an upper bound for fixed s.
    """
    zabs = np.abs(z0)
    z_neg = z0 < 0
    total = np.zeros(np.broadcast_shapes(z0.shape, s.shape))
    with np.errstate(divide="ignore", invalid="ignore"):
        upper_wedge = np.where(zabs > 0, s / zabs, np.inf)
        upper_hyp = np.where(s > 0, zabs / s, np.inf)
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            n_neg = (sx < 0) + (sy < 0) + z_neg.astype(int)
            feasible = n_neg % 2 == 0
            lo = np.maximum(0.0, zabs * s)
            hi = np.minimum(upper_wedge, upper_hyp)
            # |x + y| <= 1 + z0 and |x - y| <= 1 - z0 as bounds on sy * t
            for bound_lo, bound_hi in (
                (-(1 + z0) - sx * s, (1 + z0) - sx * s),
                (sx * s - (1 - z0), sx * s + (1 - z0)),
            ):
                if sy > 0:
                    lo, hi = np.maximum(lo, bound_lo), np.minimum(hi, bound_hi)
                else:
                    lo, hi = np.maximum(lo, -bound_hi), np.minimum(hi, -bound_lo)
            total = total + np.where(feasible, np.clip(hi - lo, 0.0, None), 0.0)
    # at z0 = 0 the set is the coordinate axes: zero area, but the s = 0 column
    # would otherwise carry a full-length chord into the quadrature
    return np.where(zabs > 0, total, 0.0)


def slice_area(z0, chord_points: int = 2049) -> np.ndarray | float:
    """Area of the simulable set in the plane z = z0, by trapezoid rule over |x|."""
    z = np.atleast_1d(np.asarray(z0, dtype=float))[:, None]
    s = np.linspace(0.0, 1.0, chord_points)
    area = np.trapezoid(_chord_lengths(z, s), s, axis=-1)
    return float(area[0]) if np.ndim(z0) == 0 else area


def analytic_volume(quadrature_points: int = 10_000, chord_points: int = 2049, chunk: int = 512) -> float:
    """Volume of the simulable region: composite trapezoid over z of slice areas."""
    if quadrature_points < 16:
        raise ValueError("quadrature_points must be at least 16")
    z = np.linspace(-1.0, 1.0, quadrature_points)
    areas = np.concatenate([slice_area(z[i : i + chunk], chord_points) for i in range(0, z.size, chunk)])
    return float(np.trapezoid(areas, z))


@dataclass(frozen=True, eq=False)
class CrossSection:
    """Grid rendering of the slice z = z0 over the box [-1, 1]^2.

    ``mask[i, j]`` and ``in_slice[i, j]`` refer to the cell centred at
    ``(centers[j], centers[i])``, so rows run along increasing y.
    """

    z0: float
    grid_n: int
    area: float
    fraction: float
    mask: np.ndarray
    in_slice: np.ndarray
    centers: np.ndarray
    rect: tuple[tuple[float, float], ...]
    bbox: tuple[float, float, float, float] = (-1.0, 1.0, -1.0, 1.0)

    @property
    def cell_area(self) -> float:
        return (2.0 / self.grid_n) ** 2

    @property
    def slice_area(self) -> float:
        """Exact area of the tetrahedron slice, 2 (1 - z0^2)."""
        return 2.0 * (1.0 - self.z0**2)


def cross_section(z0: float, grid_n: int = 256, tol: float = GEOM_TOL) -> CrossSection:
    """Slice of the tetrahedron at z = z0 with its simulable cells marked.

    The slice is the rectangle ``|x + y| <= 1 + z0``, ``|x - y| <= 1 - z0``. The
    shaded area is the simulable cell count times the cell area; ``fraction`` is
    the simulable share of the in-slice cells.
    """
    z0 = float(z0)
    if not -1.0 <= z0 <= 1.0:
        raise ValueError(f"z0 must lie in [-1, 1], got {z0}")
    grid_n = int(grid_n)
    if grid_n < 1:
        raise ValueError("grid_n must be positive")
    centers = -1.0 + (np.arange(grid_n) + 0.5) * (2.0 / grid_n)
    yy, xx = np.meshgrid(centers, centers, indexing="ij")
    pts = np.stack([xx, yy, np.full_like(xx, z0)], axis=-1)
    in_slice = in_tetrahedron(pts, tol)
    mask = is_simulable(pts, tol)
    n_in = int(np.count_nonzero(in_slice))
    n_sim = int(np.count_nonzero(mask))
    rect = ((1.0, z0), (z0, 1.0), (-1.0, -z0), (-z0, -1.0))
    return CrossSection(
        z0=z0,
        grid_n=grid_n,
        area=n_sim * (2.0 / grid_n) ** 2,
        fraction=n_sim / n_in if n_in else 0.0,
        mask=mask,
        in_slice=in_slice,
        centers=centers,
        rect=rect,
    )


# -- Two-Pauli family ---------------------------------------------------------


def _check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not 0.0 <= kappa <= 1.0:
        raise ValueError(f"kappa must lie in [0, 1], got {kappa}")
    return kappa


def two_pauli_epsilons(kappa: float) -> np.ndarray:
    """Pauli weights (kappa, (1-kappa)/2, (1-kappa)/2, 0) giving diag(kappa, kappa, 2 kappa - 1)."""
    kappa = _check_kappa(kappa)
    return np.array([kappa, 0.5 * (1 - kappa), 0.5 * (1 - kappa), 0.0])


def two_pauli_point(kappa: float) -> DiagonalPoint:
    kappa = _check_kappa(kappa)
    return DiagonalPoint(kappa, kappa, 2 * kappa - 1)


def two_pauli_simulable(kappa: float, tol: float = GEOM_TOL) -> bool:
    return bool(is_simulable(two_pauli_point(kappa), tol))


# -- Zero-shift sampler -------------------------------------------------------

_PI = math.pi

# Each family pins enough factors of the shift vector to zero:
#   c_x ~ sin(beta) sin(gamma) sin(xi) cos(eta)
#   c_y ~ sin(alpha) sin(beta) sin(xi) sin(eta)
#   c_z ~ sin(alpha) sin(gamma) cos(xi)
# (all scaled by lambda).
ZERO_SHIFT_FAMILIES = (
    "lambda_zero",
    "alpha_gamma_pinned",
    "beta_alpha_pinned",
    "beta_gamma_pinned",
    "beta_xi_equator",
    "xi_pole_alpha_pinned",
    "xi_pole_gamma_pinned",
    "alpha_eta_quarter",
    "gamma_eta_half",
)


def sample_zero_shift_params(rng: np.random.Generator, family: str | None = None) -> tuple[str, ChannelParams]:
    """Draw channel parameters whose shift vector vanishes identically.

    A family is picked uniformly (unless given) and its free parameters are drawn
    uniformly. The families cover simple zeroing patterns of the shift; they are
    not claimed to be exhaustive.
    """
    if family is None:
        family = ZERO_SHIFT_FAMILIES[rng.integers(len(ZERO_SHIFT_FAMILIES))]
    a, b, g, eta = rng.uniform(0.0, 2 * _PI, 4)
    xi = rng.uniform(0.0, _PI)
    lam = rng.uniform(0.0, 1.0)

    def pick(*choices):
        return float(choices[rng.integers(len(choices))])

    if family == "lambda_zero":
        lam = 0.0
    elif family == "alpha_gamma_pinned":
        a, g = pick(0.0, _PI), pick(0.0, _PI)
    elif family == "beta_alpha_pinned":
        b, a = pick(0.0, _PI), pick(0.0, _PI)
    elif family == "beta_gamma_pinned":
        b, g = pick(0.0, _PI), pick(0.0, _PI)
    elif family == "beta_xi_equator":
        b, xi = pick(0.0, _PI), 0.5 * _PI
    elif family == "xi_pole_alpha_pinned":
        xi, a = pick(0.0, _PI), pick(0.0, _PI)
    elif family == "xi_pole_gamma_pinned":
        xi, g = pick(0.0, _PI), pick(0.0, _PI)
    elif family == "alpha_eta_quarter":
        a, eta = pick(0.0, _PI), pick(0.5 * _PI, 1.5 * _PI)
    elif family == "gamma_eta_half":
        g, eta = pick(0.0, _PI), pick(0.0, _PI)
    else:
        raise ValueError(f"unknown zero-shift family {family!r}")
    return family, ChannelParams.from_values(a, b, g, xi, eta, lam)
