import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qspring.dynamics import (
    SpringConfig,
    a_p_closed,
    a_p_series,
    amplitude_closed,
    p0,
    p_cl,
    poisson_weights,
)
from qspring.errors import NegativeOmegaWarning, NonPositiveOmega, TruncationCapHit, UnsupportedExtension, ValidationError
from qspring.nonlinearity import CustomSpectrum, Identity, ModulationProfile, PhotonAdded, QDeformed, RaiAgarwal
from qspring.verification import read_jsonl

FIXTURES = Path(__file__).parent / "fixtures"


def test_poisson_vacuum():
    sup = poisson_weights(0.0)
    assert list(sup) == [(0, 1.0)]
    assert sup.residual == 0.0


def test_poisson_first_weight():
    assert poisson_weights(1.0).weights[0] == pytest.approx(math.exp(-1), abs=1e-16)


@pytest.mark.parametrize("nbar", [1.0, 4.0, 9.0, 100.0])
@pytest.mark.parametrize("eps", [1e-6, 1e-12])
def test_poisson_mass(nbar, eps):
    sup = poisson_weights(nbar, eps)
    total = math.fsum(sup.weights)
    assert 1 - eps <= total <= 1 + 1e-14
    assert sup.residual <= eps
    # smallest such index: dropping the last weight breaks the bound
    assert math.fsum(sup.weights[:-1]) < 1 - eps


def test_poisson_large_nbar_does_not_underflow():
    sup = poisson_weights(900.0, 1e-10, 4096)
    assert 1 - 1e-10 <= math.fsum(sup.weights) <= 1 + 1e-12


def test_poisson_cap_is_reported():
    with pytest.warns(TruncationCapHit):
        sup = poisson_weights(50.0, 1e-12, 10)
    assert sup.cap_hit and sup.size == 10
    assert sup.residual > 0.9


def test_config_validation():
    for kw in ({"omega": 0}, {"nbar": -1}, {"eps_trunc": 0}, {"eps_trunc": 1}, {"p_max_cap": 0},
               {"omega_policy": "lenient"}):
        with pytest.raises(ValidationError):
            SpringConfig(**kw)


def test_a_p_closed_examples():
    assert a_p_closed(1.0, 1.0, 3.7).value == pytest.approx(1.0, abs=1e-15)
    for Om in (0.2, 0.5, 3.0, 9.0):
        assert a_p_closed(Om, 1.0, 0.0).value == pytest.approx(1.0, abs=1e-14)
    a = a_p_closed(4.0, 1.0, math.pi / 8).value
    assert a.real == pytest.approx(0.685994340570035350, abs=1e-14)
    assert abs(a.imag) < 1e-15


def test_a_p_series_examples():
    assert a_p_series(1.0, 1.0, 2.2).value == 1.0
    assert a_p_series(4.0, 1.0, 0.0).value == pytest.approx(1.0, abs=1e-14)
    assert abs(a_p_series(4.0, 1.0, 0.3).value - a_p_closed(4.0, 1.0, 0.3).value) < 1e-10


def test_nonpositive_amplitude():
    with pytest.raises(NonPositiveOmega):
        a_p_closed(-0.5, 1.0, 1.0)
    with pytest.raises(NonPositiveOmega):
        a_p_series(0.0, 1.0, 1.0)


@settings(max_examples=200)
@given(st.floats(min_value=0.2, max_value=5.0), st.floats(min_value=0.0, max_value=20.0))
def test_closed_matches_series(Om, wt):
    a = a_p_closed(Om, 1.0, wt).value
    b = a_p_series(Om, 1.0, wt).value
    assert abs(a - b) < 1e-8
    assert abs(a) <= 1 + 1e-12


@given(st.floats(min_value=0.05, max_value=20.0), st.floats(min_value=0.0, max_value=50.0),
       st.floats(min_value=0.1, max_value=3.0))
def test_amplitude_period(Om, t, omega):
    period = math.pi / (omega * Om)
    a = abs(a_p_closed(Om, omega, t).value)
    b = abs(a_p_closed(Om, omega, t + period).value)
    assert a == pytest.approx(b, abs=1e-12)


def test_principal_branch_continuous():
    t = np.linspace(0, 10, 20001)
    a = amplitude_closed(9.0, 1.0, t)
    assert np.max(np.abs(np.diff(a))) < 1e-2
    assert np.all(a.real > 0)


def test_p0_identity_and_initial():
    cfg = SpringConfig(nbar=4.0)
    t = np.linspace(0, 30, 301)
    assert np.all(np.abs(p0(cfg, Identity(), t) - 1) < 1e-11)
    for fam in (RaiAgarwal(0.5), QDeformed(0.3), PhotonAdded(1), PhotonAdded(-3)):
        assert abs(p0(cfg, fam, 0.0) - 1) < 1e-10


def test_p0_bounds():
    cfg = SpringConfig(nbar=9.0)
    t = np.linspace(0, 60, 2001)
    for fam in (RaiAgarwal(1.0), QDeformed(0.1), PhotonAdded(1)):
        y = p0(cfg, fam, t)
        assert np.all(y >= 0) and np.all(y <= 1 + 1e-12)


def test_p0_scalar_and_vector_agree_bitwise():
    cfg = SpringConfig(nbar=9.0)
    prof = ModulationProfile(QDeformed(0.1))
    t = np.linspace(0, 20, 41)
    vec = p0(cfg, prof, t)
    assert all(p0(cfg, prof, float(ti)) == vec[i] for i, ti in enumerate(t))


def test_p0_regression_fixture():
    rows = read_jsonl(FIXTURES / "rai_agarwal_mu1_nbar4.jsonl")
    cfg = SpringConfig(omega=1.0, nbar=4.0)
    t = np.array([2 * math.pi * r["tau"] for r in rows])
    got = p0(cfg, RaiAgarwal(1.0), t)
    want = np.array([r["p0"] for r in rows])
    assert np.max(np.abs(got - want)) < 1e-10


def test_p0_strict_policy_names_p():
    cfg = SpringConfig(nbar=1.0)
    with pytest.raises(NonPositiveOmega) as info:
        p0(cfg, PhotonAdded(2), 1.0)
    assert info.value.p == 0
    # m=3: Omega(0) = 0.25, Omega(1) = 2*(1/3)^2 - 1*(1/2)^2 = -1/36 < 0
    with pytest.raises(NonPositiveOmega) as info:
        p0(cfg, PhotonAdded(3), 1.0)
    assert info.value.p == 1


def test_p0_absolute_policy_uses_magnitude():
    cfg = SpringConfig(nbar=1.0, omega_policy="absolute")
    with pytest.warns(NegativeOmegaWarning):
        y = p0(cfg, PhotonAdded(3), np.linspace(0, 5, 11))
    assert abs(y[0] - 1) < 1e-10 and np.all(y <= 1 + 1e-12)


@pytest.mark.parametrize("fam", [RaiAgarwal(0.1), QDeformed(0.1)])
def test_monotone_truncation(fam):
    t = np.linspace(0, 20, 101)
    eps = 1e-8
    base = p0(SpringConfig(nbar=9.0, eps_trunc=eps, p_max_cap=1024), fam, t)
    tighter = p0(SpringConfig(nbar=9.0, eps_trunc=eps / 10, p_max_cap=1024), fam, t)
    bigger_cap = p0(SpringConfig(nbar=9.0, eps_trunc=eps, p_max_cap=2048), fam, t)
    assert np.max(np.abs(base - tighter)) < 10 * eps
    assert np.max(np.abs(base - bigger_cap)) < 10 * eps


def test_p_cl_examples():
    t = np.linspace(0, 20, 201)
    assert np.all(np.abs(p_cl(SpringConfig(nbar=3.3), Identity(), t) - 1) < 1e-15)
    for fam in (RaiAgarwal(0.7), QDeformed(0.2), PhotonAdded(1), PhotonAdded(-2)):
        assert abs(p_cl(SpringConfig(nbar=2.5), fam, 0.0) - 1) < 1e-12


@pytest.mark.parametrize("fam", [RaiAgarwal(1.0), QDeformed(0.1), PhotonAdded(-1)])
def test_p_cl_is_amplitude_at_integer_nbar(fam):
    nbar = 4
    prof = ModulationProfile(fam)
    t = np.linspace(0, 30, 500)
    ref = np.abs(amplitude_closed(prof.omega(nbar), 1.0, t)) ** 2
    assert np.max(np.abs(p_cl(SpringConfig(nbar=nbar), prof, t) - ref)) < 1e-12


@given(st.floats(min_value=0.0, max_value=30.0), st.floats(min_value=0.0, max_value=40.0))
def test_p_cl_period(nbar, t):
    cfg = SpringConfig(nbar=nbar)
    prof = ModulationProfile(QDeformed(0.1))
    w_a = cfg.omega * prof.omega_real(nbar)
    assert p_cl(cfg, prof, t + math.pi / w_a) == pytest.approx(p_cl(cfg, prof, t), abs=1e-12)


def test_p_cl_custom_unsupported():
    with pytest.raises(UnsupportedExtension):
        p_cl(SpringConfig(nbar=1.0), CustomSpectrum((0.0, 1.0, 2.5)), 1.0)


def test_negative_time_rejected():
    with pytest.raises(ValidationError):
        p0(SpringConfig(), Identity(), -1.0)
