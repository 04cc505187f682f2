import math

import numpy as np
import pytest

import entwit


def reference_3(T=0.01):
    p = entwit.css_thermal_params_3(1.0 / T)
    h_i = entwit.build_xxz(3, p["J"], p["Jz"], p["B"])
    h_f = entwit.build_xxz(3, 1.0, 0.0, 0.5)
    return h_i, h_f, 1.0 / T


def test_states():
    w = entwit.build_w_state(3)
    assert w.shape == (8, 8)
    assert np.isclose(np.trace(w @ w).real, 1.0)
    css = entwit.build_css(3)
    assert math.isclose(entwit.relative_entropy(w, css), math.log(9 / 4), rel_tol=1e-12)
    assert np.isclose(entwit.build_sigma_prime_7()[0, 0].real, 496951 / 823543)


def test_thermal_reference_distance():
    h_i, _, beta = reference_3()
    s = entwit.thermal_relative_entropy(entwit.build_w_state(3), h_i, beta)
    assert math.isclose(s, math.log(9 / 4), rel_tol=1e-6)


def test_jarzynski_and_routes():
    h_i, h_f, beta = reference_3()
    u = entwit.exact_evolution(h_i, h_f)
    assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-10)
    z_ratio = math.exp(entwit.log_partition(h_f, beta) - entwit.log_partition(h_i, beta))
    assert math.isclose(entwit.jarzynski_average(beta, h_i, h_f, u), z_ratio, rel_tol=1e-9)
    q = entwit.transition_matrix(h_i, h_f, u)
    assert np.allclose(q.sum(axis=0), 1.0) and np.allclose(q.sum(axis=1), 1.0)
    direct = entwit.thermal_relative_entropy(entwit.thermal_state(h_f, beta), h_i, beta)
    via = entwit.relative_entropy_via_work(h_i, beta, h_f, beta, u)
    assert abs(direct - via) <= 1e-8


def test_tasaki_single_qubit():
    z = np.diag([-1.0, 1.0]).astype(complex)
    got = entwit.tasaki_average(1.0, 2.0, z, z, np.eye(2, dtype=complex))
    assert math.isclose(got, math.cosh(2) / math.cosh(1), rel_tol=1e-12)


def test_witness_and_sweep():
    r = entwit.witness_thermal(3, B=0.5, Jz=0.0, T=0.01)
    assert r["detected"] and r["route"] == "direct"
    assert not entwit.witness_thermal(3, B=0.5, Jz=0.0, T=1e6)["detected"]
    v = entwit.witness_thermal(3, B=0.5, Jz=0.0, T=0.01, route="via-work")
    assert abs(v["margin"] - r["margin"]) <= 1e-6
    s = entwit.sweep(3, B=(0.4, 0.6, 0.1), Jz=(0.0, 0.0, 1.0), T=(0.02, 2.0, 0.02), workers=2)
    assert s["shape"] == (3, 1, 100)
    assert s["detected"].reshape(s["shape"])[1, 0, 0]
    assert not s["detected"].reshape(s["shape"])[1, 0, -1]


def test_sampler():
    h_i, h_f, beta = reference_3()
    u = entwit.exact_evolution(h_i, h_f)
    a = entwit.sample_tpm(h_i, h_f, beta, u, count=20000, seed=3)
    b = entwit.sample_tpm(h_i, h_f, beta, u, count=20000, seed=3, workers=4)
    assert a == b
    assert abs(a["z_score"]) <= 3


def test_effective_hamiltonian_decoupled():
    h_s = entwit.build_xxz(2, 1.0, 0.3, 0.2, boundary="open")
    h_eff = entwit.effective_hamiltonian([1, 2], [3], h_s, np.zeros((8, 8), complex), np.diag([0.5, -0.5]).astype(complex), 1.0)
    assert np.allclose(h_eff, h_s, atol=1e-10)


def test_errors():
    with pytest.raises(ValueError):
        entwit.build_w_state(1)
    with pytest.raises(ValueError):
        entwit.relative_entropy(np.eye(3), np.eye(3))
    bad = np.diag([1.0, 2.0]).astype(complex)
    z = np.diag([-1.0, 1.0]).astype(complex)
    with pytest.raises(entwit.NumericalError, match="unitarity"):
        entwit.jarzynski_average(1.0, z, z, bad)
