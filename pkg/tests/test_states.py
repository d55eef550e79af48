import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedenv.states import (
    PROBE_LABELS,
    EnvironmentParams,
    PureStateAngles,
    bloch_to_angles,
    bloch_to_density,
    check_density,
    density_to_bloch,
    environment_state,
    probe_states,
    pure_state,
)

angle = st.floats(-10.0, 10.0, allow_nan=False)
unit = st.floats(0.0, 1.0)


@pytest.mark.parametrize(
    "theta, phi, expected",
    [
        (0.0, 0.0, np.diag([1, 0])),
        (math.pi, 0.0, np.diag([0, 1])),
        (math.pi / 2, 0.0, 0.5 * np.ones((2, 2))),
    ],
)
def test_pure_state_examples(theta, phi, expected):
    np.testing.assert_allclose(pure_state(PureStateAngles(theta, phi)), expected, atol=1e-15)


def test_pure_state_phase_sign():
    # exp(-i phi) on |1>: phi = pi/2 puts -i on the |1> amplitude, so <sigma_y> = -1
    rho = pure_state(PureStateAngles(math.pi / 2, math.pi / 2))
    np.testing.assert_allclose(density_to_bloch(rho), [0, -1, 0], atol=1e-15)


def test_angles_normalized():
    a = PureStateAngles(3 * math.pi / 2, 0.25)
    assert 0 <= a.theta <= math.pi and 0 <= a.phi < 2 * math.pi
    # same ray as the unnormalized input
    raw = np.array([math.cos(3 * math.pi / 4), np.exp(-0.25j) * math.sin(3 * math.pi / 4)])
    np.testing.assert_allclose(pure_state(a), np.outer(raw, raw.conj()), atol=1e-14)
    assert PureStateAngles(0.3, -0.1).phi == pytest.approx(2 * math.pi - 0.1)


@pytest.mark.parametrize(
    "lam, xi, eta, expected",
    [
        (0.0, 1.1, 2.2, np.eye(2) / 2),
        (1.0, 0.0, 0.0, np.diag([1, 0])),
        (0.5, 0.0, 0.0, np.diag([0.75, 0.25])),
    ],
)
def test_environment_examples(lam, xi, eta, expected):
    np.testing.assert_allclose(environment_state(EnvironmentParams(lam, xi, eta)), expected, atol=1e-15)


@pytest.mark.parametrize("lam", [-0.1, 1.5])
def test_environment_rejects_bad_lambda(lam):
    with pytest.raises(ValueError):
        EnvironmentParams(lam)


@pytest.mark.parametrize(
    "n, expected",
    [
        ((0, 0, 1), np.diag([1, 0])),
        ((0, 0, 0), np.eye(2) / 2),
        ((1, 0, 0), 0.5 * np.ones((2, 2))),
    ],
)
def test_bloch_to_density_examples(n, expected):
    np.testing.assert_allclose(bloch_to_density(n), expected, atol=1e-15)


def test_bloch_to_density_rejects_outside_ball():
    with pytest.raises(ValueError):
        bloch_to_density((0.8, 0.8, 0.0))


@pytest.mark.parametrize(
    "rho, expected",
    [
        (np.eye(2) / 2, (0, 0, 0)),
        (np.diag([1, 0]), (0, 0, 1)),
        (0.5 * np.array([[1, -1j], [1j, 1]]), (0, 1, 0)),
    ],
)
def test_density_to_bloch_examples(rho, expected):
    np.testing.assert_allclose(density_to_bloch(rho), expected, atol=1e-15)


@pytest.mark.parametrize(
    "bad",
    [
        np.array([[0.5, 1.0], [0.0, 0.5]]),  # not Hermitian
        np.diag([0.7, 0.7]),  # trace 1.4
    ],
)
def test_density_to_bloch_rejects(bad):
    with pytest.raises(ValueError):
        density_to_bloch(bad)


def test_check_density_rejects_negative_eigenvalue():
    with pytest.raises(ValueError):
        check_density(np.diag([1.5, -0.5]))


def test_probe_states():
    probes = probe_states()
    assert tuple(label for label, _ in probes) == PROBE_LABELS
    d = dict(probes)
    np.testing.assert_allclose(d["+z"], np.diag([1, 0]))
    np.testing.assert_allclose(d["+x"], 0.5 * np.ones((2, 2)))
    vecs = np.array([density_to_bloch(rho) for _, rho in probes])
    expected = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]])
    np.testing.assert_array_equal(vecs, expected)


@given(angle, angle)
def test_pure_state_is_rank_one(theta, phi):
    ev = np.linalg.eigvalsh(pure_state(PureStateAngles(theta, phi)))
    np.testing.assert_allclose(ev, [0.0, 1.0], atol=1e-12)


@given(unit, angle, angle)
def test_environment_spectrum_and_norm(lam, xi, eta):
    env = EnvironmentParams(lam, xi, eta)
    rho = environment_state(env)
    np.testing.assert_allclose(np.linalg.eigvalsh(rho), [(1 - lam) / 2, (1 + lam) / 2], atol=1e-12)
    assert abs(np.linalg.norm(density_to_bloch(rho)) - lam) <= 1e-12
    np.testing.assert_allclose(env.bloch, density_to_bloch(rho), atol=1e-12)


@settings(max_examples=200)
@given(st.floats(0, 1), st.floats(0, math.pi), st.floats(0, 2 * math.pi))
def test_bloch_round_trip(r, theta, phi):
    n = r * np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])
    np.testing.assert_allclose(density_to_bloch(bloch_to_density(n)), n, atol=1e-12)


@given(st.floats(0.01, math.pi - 0.01), st.floats(0, 2 * math.pi - 1e-9))
def test_bloch_to_angles_inverts_pure_state(theta, phi):
    n = density_to_bloch(pure_state(PureStateAngles(theta, phi)))
    xi, eta = bloch_to_angles(n)
    np.testing.assert_allclose(pure_state(PureStateAngles(xi, eta)), pure_state(PureStateAngles(theta, phi)), atol=1e-12)
