"""Marginal tables, the correlated joint distribution, and channel application."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quditmem.channels import (
    ChannelSpec,
    JointProbTable,
    MarginalTable,
    Model,
    apply_channel,
    apply_channel_naive,
    channel_marginal,
    eta_range,
    joint_probability,
    qcd_marginal,
    qd_marginal,
)
from quditmem.displacement import displacement
from quditmem.matrices import random_density


# ---------------------------------------------------------------- marginals


def test_qd_marginal_frozen_example():
    table = qd_marginal(2, 0.5)
    assert abs(table.q[0, 0] - 0.625) < 1e-15
    off = np.delete(table.q.ravel(), 0)
    assert np.abs(off - 0.125).max() < 1e-15


def test_qcd_marginal_frozen_example():
    table = qcd_marginal(3, 0.3)
    assert np.abs(table.q[0, :] - 16.0 / 90.0).max() < 1e-15
    assert np.abs(table.q[1:, :] - 7.0 / 90.0).max() < 1e-15


def test_marginal_extremes():
    # eta = 1: all weight on the no-error outcome (qd) / the m = 0 row (qcd)
    table = qd_marginal(4, 1.0)
    assert table.q[0, 0] == pytest.approx(1.0, abs=1e-15)
    assert np.abs(np.delete(table.q.ravel(), 0)).max() < 1e-15
    table = qcd_marginal(4, 1.0)
    assert np.abs(table.q[0, :] - 0.25).max() < 1e-15
    assert np.abs(table.q[1:, :]).max() < 1e-15
    # eta = 0: uniform over all d^2 indices in both families
    for build in (qd_marginal, qcd_marginal):
        assert np.abs(build(3, 0.0).q - 1.0 / 9.0).max() < 1e-15


def test_marginal_lower_boundary_hits_zero():
    lo_qd = eta_range(Model.QD, 3)[0]
    assert qd_marginal(3, lo_qd).q[0, 0] == pytest.approx(0.0, abs=1e-15)
    lo_qcd = eta_range(Model.QCD, 3)[0]
    assert np.abs(qcd_marginal(3, lo_qcd).q[0, :]).max() < 1e-15


def test_eta_range_values():
    assert eta_range(Model.QD, 2) == pytest.approx((-1.0 / 3.0, 1.0))
    assert eta_range(Model.QCD, 4) == pytest.approx((-1.0 / 3.0, 1.0))


@pytest.mark.parametrize("build", [qd_marginal, qcd_marginal])
def test_marginal_rejects_out_of_range_eta(build):
    with pytest.raises(ValueError, match="eta"):
        build(3, 1.0000001)
    with pytest.raises(ValueError, match="eta"):
        build(3, -0.9)


def test_marginal_table_validation():
    with pytest.raises(ValueError, match="shape"):
        MarginalTable(3, np.full((2, 2), 0.25))
    with pytest.raises(ValueError, match="negative"):
        MarginalTable(2, np.array([[0.75, 0.35], [-0.05, -0.05]]))
    with pytest.raises(ValueError, match="sums to"):
        MarginalTable(2, np.full((2, 2), 0.3))


@given(
    st.sampled_from([Model.QD, Model.QCD]),
    st.integers(min_value=2, max_value=6),
    st.floats(min_value=0.0, max_value=1.0),
)
def test_marginal_normalization_and_eta_recovery(model, d, frac):
    lo, hi = eta_range(model, d)
    eta = lo + frac * (hi - lo)
    table = channel_marginal(ChannelSpec(model, d, eta, 0.0, 0.0))
    assert abs(table.q.sum() - 1.0) < 1e-12
    assert table.q.min() >= 0.0
    if model is Model.QD:
        recovered = table.q[0, 0] - table.q[0, 1]
    else:
        recovered = d * (table.q[0, 0] - table.q[1, 0])
    assert abs(recovered - eta) < 1e-12


# ---------------------------------------------------------------- spec


def test_channel_spec_coerces_model_string():
    spec = ChannelSpec("qcd", 3, 0.2, 0.1, 0.9)
    assert spec.model is Model.QCD


def test_channel_spec_validation_messages():
    with pytest.raises(ValueError):
        ChannelSpec("bogus", 3, 0.2, 0.1, 0.9)
    with pytest.raises(ValueError, match="dimension"):
        ChannelSpec(Model.QD, 1, 0.2, 0.1, 0.9)
    with pytest.raises(ValueError, match="eta"):
        ChannelSpec(Model.QD, 3, -0.2, 0.1, 0.9)
    with pytest.raises(ValueError, match="mu"):
        ChannelSpec(Model.QD, 3, 0.2, 1.1, 0.9)
    with pytest.raises(ValueError, match="nu"):
        ChannelSpec(Model.QD, 3, 0.2, 0.1, -0.9)


# ---------------------------------------------------------------- joint table


def test_joint_mu_zero_is_outer_product():
    table = qcd_marginal(3, 0.4)
    joint = joint_probability(table, 0.0, 0.7)
    expected = np.einsum("ab,cd->abcd", table.q, table.q)
    assert np.abs(joint.p - expected).max() < 1e-15


def test_joint_mu_one_correlated_support():
    d = 3
    table = qd_marginal(d, 0.5)
    # nu = 0: all mass on exact repetition of (m, n)
    p = joint_probability(table, 1.0, 0.0).p
    for m1, n1, m2, n2 in np.ndindex(d, d, d, d):
        expected = table.q[m1, n1] if (m1, n1) == (m2, n2) else 0.0
        assert abs(p[m1, n1, m2, n2] - expected) < 1e-15
    # nu = 1: same shift, negated phase index
    p = joint_probability(table, 1.0, 1.0).p
    for m1, n1, m2, n2 in np.ndindex(d, d, d, d):
        expected = table.q[m1, n1] if m1 == m2 and n2 == (d - n1) % d else 0.0
        assert abs(p[m1, n1, m2, n2] - expected) < 1e-15


def test_joint_nu_is_inert_for_qubits():
    table = qd_marginal(2, 0.6)
    a = joint_probability(table, 0.7, 0.0).p
    b = joint_probability(table, 0.7, 1.0).p
    assert np.abs(a - b).max() == 0.0


@given(
    st.sampled_from([Model.QD, Model.QCD]),
    st.integers(min_value=2, max_value=4),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
)
def test_joint_marginalization(model, d, frac, mu, nu):
    lo, hi = eta_range(model, d)
    table = channel_marginal(ChannelSpec(model, d, lo + frac * (hi - lo), 0.0, 0.0))
    joint = joint_probability(table, mu, nu)
    assert abs(joint.p.sum() - 1.0) < 1e-12
    # both single-use marginals of the pair distribution recover q
    assert np.abs(joint.p.sum(axis=(2, 3)) - table.q).max() < 1e-12
    assert np.abs(joint.p.sum(axis=(0, 1)) - table.q).max() < 1e-12


def test_joint_probability_validation():
    table = qd_marginal(2, 0.5)
    with pytest.raises(ValueError, match="mu"):
        joint_probability(table, -0.1, 0.5)
    with pytest.raises(ValueError, match="nu"):
        joint_probability(table, 0.5, 1.5)
    with pytest.raises(ValueError, match="shape"):
        JointProbTable(2, np.zeros((2, 2, 2)))


# ---------------------------------------------------------------- application


def test_apply_channel_output_is_density():
    rng = np.random.default_rng(3)
    for model in (Model.QD, Model.QCD):
        for d in (2, 3):
            rho = random_density(d * d, rng)
            out = apply_channel(ChannelSpec(model, d, 0.45, 0.6, 0.3), rho)
            assert abs(np.trace(out) - 1.0) < 1e-12
            assert np.abs(out - out.conj().T).max() < 1e-12
            assert np.linalg.eigvalsh(out).min() > -1e-10


def test_qd_eta_one_is_identity_channel():
    rng = np.random.default_rng(5)
    rho = random_density(9, rng)
    out = apply_channel(ChannelSpec(Model.QD, 3, 1.0, 0.7, 0.2), rho)
    assert np.abs(out - rho).max() < 1e-12


def test_eta_zero_memoryless_fully_depolarizes():
    rng = np.random.default_rng(9)
    for model in (Model.QD, Model.QCD):
        rho = random_density(9, rng)
        out = apply_channel(ChannelSpec(model, 3, 0.0, 0.0, 0.0), rho)
        assert np.abs(out - np.eye(9) / 9.0).max() < 1e-12


def _single_use_dense(d: int, q: np.ndarray, rho: np.ndarray) -> np.ndarray:
    out = np.zeros_like(rho, dtype=complex)
    for m in range(d):
        for n in range(d):
            u = displacement(d, m, n)
            out += q[m, n] * (u @ rho @ u.conj().T)
    return out


def test_mu_zero_factorizes_over_the_two_uses():
    rng = np.random.default_rng(13)
    for model in (Model.QD, Model.QCD):
        for d in (2, 3):
            spec = ChannelSpec(model, d, 0.55, 0.0, 0.0)
            q = channel_marginal(spec).q
            rho_a = random_density(d, rng)
            rho_b = random_density(d, rng)
            got = apply_channel(spec, np.kron(rho_a, rho_b))
            want = np.kron(_single_use_dense(d, q, rho_a), _single_use_dense(d, q, rho_b))
            assert np.abs(got - want).max() < 1e-12


def test_apply_channel_matches_naive_sum():
    rng = np.random.default_rng(17)
    cases = [(0.0, 0.0), (0.3, 0.0), (0.3, 1.0), (0.8, 0.45), (1.0, 0.0), (1.0, 1.0)]
    for model in (Model.QD, Model.QCD):
        for d in (2, 3):
            rho = random_density(d * d, rng)
            for mu, nu in cases:
                spec = ChannelSpec(model, d, 0.62, mu, nu)
                diff = np.abs(apply_channel(spec, rho) - apply_channel_naive(spec, rho)).max()
                assert diff < 1e-12, (model, d, mu, nu, diff)
    # one larger case to exercise the d = 4 index arithmetic
    rho = random_density(16, rng)
    spec = ChannelSpec(Model.QCD, 4, 0.4, 0.6, 0.7)
    assert np.abs(apply_channel(spec, rho) - apply_channel_naive(spec, rho)).max() < 1e-12


def test_nu_is_inert_for_qubit_channels():
    rng = np.random.default_rng(19)
    rho = random_density(4, rng)
    for model in (Model.QD, Model.QCD):
        a = apply_channel(ChannelSpec(model, 2, 0.7, 0.6, 0.0), rho)
        b = apply_channel(ChannelSpec(model, 2, 0.7, 0.6, 0.77), rho)
        assert np.abs(a - b).max() < 1e-14


def test_apply_channel_input_validation():
    rng = np.random.default_rng(23)
    spec = ChannelSpec(Model.QD, 3, 0.5, 0.5, 0.5)
    with pytest.raises(ValueError, match="side"):
        apply_channel(spec, random_density(4, rng))
    bad = np.eye(9, dtype=complex) / 9.0
    bad[0, 1] = 0.2  # not Hermitian
    with pytest.raises(ValueError, match="Hermitian"):
        apply_channel(spec, bad)
    with pytest.raises(ValueError, match="trace"):
        apply_channel(spec, np.eye(9, dtype=complex))
