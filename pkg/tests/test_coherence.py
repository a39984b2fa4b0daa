import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dense_density, l1_materialized, von_neumann_dense
from qwdiffusion import (
    Accelerated,
    Homogeneous,
    SpatialDisorder,
    TemporalDisorder,
    ValidationError,
    WalkerState,
    coherence_series,
    evolve,
    gram_matrix,
    l1_coherence_normalized,
    measured_walk_distribution,
    new_localized_state,
    reduced_position_density,
    relative_entropy_coherence,
    step,
)
from qwdiffusion.coherence import (
    entropy_of_spectrum,
    hermitian_2x2_eigenvalues,
    l1_coherence_of_matrix,
    relative_entropy_of_matrix,
)
from qwdiffusion.errors import ConsistencyError

R2 = 1 / math.sqrt(2)
LN2 = math.log(2)


def walked(t, horizon=None, sched=None):
    s = new_localized_state((R2, R2), t if horizon is None else horizon)
    sched = sched or Homogeneous(math.pi / 4)
    for _ in range(t):
        step(s, sched)
    return s


def schedule(name, horizon, seed=0):
    return {
        "homogeneous": Homogeneous(math.pi / 4),
        "accelerated": Accelerated(math.pi / 4, 0.1),
        "temporal": TemporalDisorder(seed, horizon),
        "spatial": SpatialDisorder(seed, horizon),
    }[name]


def test_density_at_t0():
    rdm = reduced_position_density(walked(0, horizon=5))
    assert rdm.positions.tolist() == [0]
    assert np.allclose(rdm.matrix, [[1.0]], rtol=0, atol=1e-15)


def test_density_after_one_step():
    rho = reduced_position_density(walked(1)).matrix
    assert np.allclose(np.diag(rho), [0.5, 0, 0.5], rtol=0, atol=1e-15)
    off = rho - np.diag(np.diag(rho))
    assert np.all(off == 0)


def test_density_after_two_steps():
    rdm = reduced_position_density(walked(2))
    rho = rdm.matrix
    assert rdm.positions.tolist() == [-2, -1, 0, 1, 2]
    assert abs(rho[0, 2] - (-0.25j)) < 1e-15
    assert abs(rho[2, 4] - 0.25j) < 1e-15
    assert abs(rho[0, 4]) < 1e-15


def test_l1_examples(backend):
    assert l1_coherence_normalized(walked(0, horizon=3)) == 0.0
    assert l1_coherence_normalized(walked(1)) == 0.0
    assert l1_coherence_normalized(walked(2)) == pytest.approx(0.25, abs=1e-15)


@pytest.mark.parametrize("t", [1, 2, 5, 30])
def test_l1_saturates_for_uniform_state(backend, t):
    n = 2 * t + 1
    s = WalkerState(t, np.full(n, 1 / math.sqrt(n)), np.zeros(n), step=t)
    assert l1_coherence_normalized(s) == pytest.approx(1.0, abs=1e-12)


def test_gram_examples():
    g0 = gram_matrix(walked(0, horizon=2))
    assert np.allclose(g0, [[0.5, 0.5], [0.5, 0.5]], rtol=0, atol=1e-15)
    assert hermitian_2x2_eigenvalues(g0) == pytest.approx((1.0, 0.0), abs=1e-15)
    g2 = gram_matrix(walked(2))
    assert np.allclose(g2, [[0.5, 0.25], [0.25, 0.5]], rtol=0, atol=1e-15)
    assert hermitian_2x2_eigenvalues(g2) == pytest.approx((0.75, 0.25), abs=1e-15)


def test_relative_entropy_examples():
    assert relative_entropy_coherence(walked(0, horizon=3)) == 0.0
    assert relative_entropy_coherence(walked(1)) == pytest.approx(0.0, abs=1e-15)
    # H = 1.5 ln 2 = 1.0397207708, S(3/4, 1/4) = 0.5623351446 (mpmath, 30 digits)
    assert relative_entropy_coherence(walked(2)) == pytest.approx(0.4773856262211096, abs=1e-14)


def test_entropy_of_spectrum():
    assert entropy_of_spectrum([1.0, 0.0]) == 0.0
    assert entropy_of_spectrum([0.5, 0.5]) == pytest.approx(LN2, abs=1e-15)
    assert entropy_of_spectrum([1.0 + 1e-14, -1e-12]) == 0.0
    with pytest.raises(ConsistencyError):
        entropy_of_spectrum([1.1, -0.1])


@pytest.mark.parametrize("name", ["homogeneous", "accelerated", "temporal", "spatial"])
def test_against_materialized_density(backend, name):
    horizon = 20
    s = new_localized_state((0.6, 0.8j), horizon)
    sched = schedule(name, horizon, seed=9)
    for t in range(1, horizon + 1):
        step(s, sched)
        rho = dense_density(s.up, s.down)[s.horizon - t:s.horizon + t + 1, s.horizon - t:s.horizon + t + 1]
        lam = hermitian_2x2_eigenvalues(gram_matrix(s))
        assert entropy_of_spectrum(lam) == pytest.approx(von_neumann_dense(rho), abs=1e-10)
        assert l1_coherence_normalized(s) == pytest.approx(l1_materialized(rho, t), abs=1e-10)
        nonzero = np.sort(np.linalg.eigvalsh(rho))[-2:]
        assert np.allclose(sorted(lam), nonzero, rtol=0, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from(["homogeneous", "accelerated", "temporal", "spatial"]),
    st.integers(0, 2**32),
    st.integers(1, 25),
)
def test_density_invariants(name, seed, t):
    s = walked(t, sched=schedule(name, t, seed))
    rdm = reduced_position_density(s)
    rho = rdm.matrix
    assert rdm.dimension == 2 * t + 1
    assert np.allclose(rho, rho.conj().T, rtol=0, atol=1e-12)
    assert abs(np.trace(rho).real - 1) < 1e-10
    lam = np.linalg.eigvalsh(rho)
    assert lam.min() > -1e-12
    assert np.sum(lam > 1e-10) <= 2
    p = (np.abs(s.up) ** 2 + np.abs(s.down) ** 2)[s.horizon - t:s.horizon + t + 1]
    assert np.allclose(np.diag(rho).real, p, rtol=0, atol=1e-15)
    g = gram_matrix(s)
    assert abs(np.trace(g).real - 1) < 1e-10
    big, small = hermitian_2x2_eigenvalues(g)
    assert 0.5 - 1e-12 <= big <= 1 + 1e-12 and -1e-12 <= small
    assert entropy_of_spectrum((big, small)) <= LN2 + 1e-12
    c_l1 = l1_coherence_normalized(s)
    c_re = relative_entropy_coherence(s)
    assert 0 <= c_l1 <= 1 + 1e-12
    assert 0 <= c_re <= math.log(2 * t + 1) + 1e-12


def test_diagonal_density_has_no_coherence():
    rho = np.diag(measured_walk_distribution(20).p)
    assert l1_coherence_of_matrix(rho) == 0.0
    assert relative_entropy_of_matrix(rho) == 0.0


def test_matrix_measures_agree_with_state_measures():
    s = walked(12)
    rdm = reduced_position_density(s)
    assert l1_coherence_of_matrix(rdm) == pytest.approx(l1_coherence_normalized(s), abs=1e-12)
    assert relative_entropy_of_matrix(rdm) == pytest.approx(relative_entropy_coherence(s), abs=1e-10)


def test_coherence_series_records():
    tr = evolve(new_localized_state((R2, R2), 10), Homogeneous(math.pi / 4), 10, record=("l1", "re"))
    recs = coherence_series(tr)
    assert [r.step for r in recs] == list(range(1, 11))
    assert recs[1].c_l1 == pytest.approx(0.25, abs=1e-15)
    assert recs[1].c_re == pytest.approx(0.4773856262211096, abs=1e-14)
    for r in recs:
        assert 0 <= r.c_l1 <= 1 and 0 <= r.c_re <= math.log(2 * r.step + 1)


def test_coherence_series_requires_recording():
    tr = evolve(new_localized_state((R2, R2), 3), Homogeneous(math.pi / 4), 3, record=("l1",))
    with pytest.raises(ValidationError):
        coherence_series(tr)
