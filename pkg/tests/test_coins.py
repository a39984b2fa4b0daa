import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwdiffusion import (
    Accelerated,
    Homogeneous,
    SpatialDisorder,
    TemporalDisorder,
    ValidationError,
    accelerated_theta,
    coin_at,
    homogeneous_coin,
    sample_disorder_angles,
    su2_coin,
)

R2 = 1 / math.sqrt(2)
angles = st.floats(-10, 10, allow_nan=False)


def assert_unitary(c, tol=1e-12):
    assert np.allclose(c @ c.conj().T, np.eye(2), rtol=0, atol=tol)
    assert abs(abs(np.linalg.det(c)) - 1) < tol


def test_su2_identity():
    assert np.array_equal(su2_coin(0, 0, 0), np.eye(2))


def test_su2_symmetric_family():
    expected = np.array([[R2, 1j * R2], [1j * R2, R2]])
    assert np.allclose(su2_coin(0, math.pi / 2, math.pi / 4), expected, rtol=0, atol=1e-15)


def test_su2_hadamard_like():
    expected = np.array([[R2, R2], [-R2, R2]])
    assert np.allclose(su2_coin(0, 0, math.pi / 4), expected, rtol=0, atol=1e-15)


@given(angles, angles, angles)
def test_su2_always_unitary(xi, eta, theta):
    assert_unitary(su2_coin(xi, eta, theta))


@given(angles)
def test_homogeneous_matches_su2(theta):
    c = homogeneous_coin(theta)
    assert np.allclose(c, su2_coin(0, math.pi / 2, theta), rtol=0, atol=1e-15)
    # diagonal real cos, off-diagonals both +i sin
    assert c[0, 0] == c[1, 1] == math.cos(theta)
    assert c[0, 1] == c[1, 0] == 1j * math.sin(theta)
    assert_unitary(c)


@pytest.mark.parametrize(
    "theta, expected",
    [
        (0, [[1, 0], [0, 1]]),
        (math.pi / 4, [[R2, 1j * R2], [1j * R2, R2]]),
        (math.pi / 2, [[0, 1j], [1j, 0]]),
    ],
)
def test_homogeneous_examples(theta, expected):
    assert np.allclose(homogeneous_coin(theta), expected, rtol=0, atol=1e-15)


def test_accelerated_theta_no_acceleration():
    for step in (1, 7, 500):
        assert accelerated_theta(math.pi / 4, 0, step) == math.pi / 4


def test_accelerated_theta_value():
    # (pi/4) e^{-2}, evaluated at 30 digits with mpmath
    assert accelerated_theta(math.pi / 4, 0.02, 100) == pytest.approx(0.10629208289690908, rel=1e-14)


def test_accelerated_theta_first_step():
    assert accelerated_theta(1.0, 0.3, 1) == math.exp(-0.3)


def test_accelerated_coin_becomes_identity():
    theta = accelerated_theta(math.pi / 4, 0.2, 500)
    assert theta == pytest.approx(2.92174083926573e-44, rel=1e-12)
    assert np.allclose(homogeneous_coin(theta), np.eye(2), rtol=0, atol=1e-40)


@given(st.floats(0.001, 0.5), st.integers(1, 999))
def test_accelerated_theta_strictly_decreasing(a, step):
    assert accelerated_theta(1.0, a, step + 1) < accelerated_theta(1.0, a, step)


def test_accelerated_rejects_bad_arguments():
    with pytest.raises(ValidationError):
        accelerated_theta(1.0, -0.1, 3)
    with pytest.raises(ValidationError):
        accelerated_theta(1.0, 0.1, 0)
    with pytest.raises(ValidationError):
        Accelerated(math.pi / 4, -1)


def test_disorder_angles_range():
    a = sample_disorder_angles(12345, 1000)
    assert a.shape == (1000,)
    assert np.all(a >= 0) and np.all(a < math.pi)


def test_disorder_angles_deterministic():
    assert np.array_equal(sample_disorder_angles(7, 50), sample_disorder_angles(7, 50))
    assert not np.array_equal(sample_disorder_angles(7, 50), sample_disorder_angles(8, 50))


def test_disorder_angles_prefix_stable():
    assert np.array_equal(sample_disorder_angles(3, 10), sample_disorder_angles(3, 100)[:10])


def test_disorder_angles_mean():
    mean = sample_disorder_angles(2024, 10**6).mean()
    band = 3 * (math.pi / math.sqrt(12)) / 1e3
    assert abs(mean - math.pi / 2) < band


def test_disorder_angles_count_validated():
    for count in (0, -3):
        with pytest.raises(ValidationError):
            sample_disorder_angles(1, count)


def test_large_seeds_accepted():
    sample_disorder_angles(2**64 - 1, 3)
    sample_disorder_angles(-1, 3)


def test_homogeneous_schedule_uniform():
    sched = Homogeneous(math.pi / 4)
    ref = coin_at(sched, 1, 0)
    for step, pos in [(2, 5), (100, -40), (9, 0)]:
        assert np.array_equal(coin_at(sched, step, pos), ref)


def test_accelerated_zero_equals_homogeneous():
    h, a = Homogeneous(math.pi / 4), Accelerated(math.pi / 4, 0.0)
    for step in range(1, 50):
        assert np.array_equal(coin_at(a, step, 3), coin_at(h, step, 3))


def test_accelerated_schedule_position_independent():
    a = Accelerated(math.pi / 4, 0.02)
    assert np.array_equal(coin_at(a, 10, -5), coin_at(a, 10, 7))
    assert np.array_equal(coin_at(a, 10, 0), homogeneous_coin(accelerated_theta(math.pi / 4, 0.02, 10)))


def test_temporal_schedule():
    sched = TemporalDisorder(seed=11, horizon=20)
    assert sched.angles.shape == (20,)
    assert np.array_equal(sched.angles, sample_disorder_angles(11, 20))
    for step in (1, 20):
        c = coin_at(sched, step, 0)
        assert np.array_equal(c, coin_at(sched, step, 13))
        assert np.array_equal(c, homogeneous_coin(sched.angles[step - 1]))


def test_spatial_schedule():
    sched = SpatialDisorder(seed=11, horizon=20)
    assert sched.angles.shape == (41,)
    assert np.array_equal(coin_at(sched, 1, 4), coin_at(sched, 17, 4))
    assert np.array_equal(coin_at(sched, 3, -20), homogeneous_coin(sched.angles[0]))


def test_spatial_coin_field_subwindow():
    sched = SpatialDisorder(seed=5, horizon=10)
    field = sched.coin_field(1, 4)
    assert field.shape == (9, 2, 2)
    for x in range(-4, 5):
        assert np.array_equal(field[x + 4], coin_at(sched, 1, x))


def test_schedules_immutable():
    sched = SpatialDisorder(seed=5, horizon=4)
    with pytest.raises(ValueError):
        sched.angles[0] = 1.0
    with pytest.raises(AttributeError):
        sched.seed = 6


@pytest.mark.parametrize(
    "sched", [Homogeneous(0.3, horizon=5), TemporalDisorder(1, 5), SpatialDisorder(1, 5)]
)
def test_out_of_range_queries(sched):
    with pytest.raises(ValidationError):
        coin_at(sched, 0, 0)
    with pytest.raises(ValidationError):
        coin_at(sched, 6, 0)
    with pytest.raises(ValidationError):
        coin_at(sched, 1, 6)


@settings(max_examples=25)
@given(st.integers(0, 2**63), st.integers(1, 30))
def test_disorder_coins_unitary_and_repeatable(seed, horizon):
    for sched in (TemporalDisorder(seed, horizon), SpatialDisorder(seed, horizon)):
        assert np.all((sched.angles >= 0) & (sched.angles < math.pi))
        for step in (1, horizon):
            for x in (-horizon, 0, horizon):
                c = coin_at(sched, step, x)
                assert_unitary(c)
                assert np.array_equal(c, coin_at(sched, step, x))
