import math

import pytest
from hypothesis import given, strategies as st

from qspring.errors import DomainError, UnsupportedExtension, ValidationError
from qspring.nonlinearity import (
    CustomSpectrum,
    Identity,
    ModulationProfile,
    PhotonAdded,
    QDeformed,
    RaiAgarwal,
    eval_f,
    make_family,
    omega_profile,
    omega_real,
    spectrum_to_family,
)

# frozen from mpmath at 30 digits
RA_F2_MU01 = 1.01212865984768743406
QD_OMEGA3_LAM02 = 1.24891920404577748153


def test_eval_f_examples():
    assert eval_f(Identity(), 7) == 1.0
    assert eval_f(PhotonAdded(1), 1) == 0.5
    assert eval_f(PhotonAdded(-1), 1) == 1.5
    assert eval_f(RaiAgarwal(0.1), 2) == pytest.approx(RA_F2_MU01, abs=1e-14)


def test_f_zero_convention():
    for fam in (QDeformed(0.3), RaiAgarwal(0.5), CustomSpectrum((0.0, 1.0))):
        assert eval_f(fam, 0) == 1.0
    assert eval_f(PhotonAdded(3), 0) == -2.0


@pytest.mark.parametrize("n", [1, 5, 40])
def test_q_deformed_small_lambda_limit(n):
    assert eval_f(QDeformed(1e-8), n) == pytest.approx(1.0, abs=1e-12)


def test_custom_out_of_range():
    fam = CustomSpectrum((0.0, 1.0, 3.0))
    with pytest.raises(DomainError):
        eval_f(fam, 3)
    with pytest.raises(DomainError):
        omega_profile(fam, 2)


def test_omega_profile_examples():
    assert omega_profile(Identity(), 5) == 1.0
    assert omega_profile(RaiAgarwal(0.1), 4) == pytest.approx(math.sqrt(1.4), abs=1e-13)
    assert omega_profile(QDeformed(0.2), 3) == pytest.approx(QD_OMEGA3_LAM02, abs=1e-13)
    assert omega_profile(PhotonAdded(1), 0) == 0.25
    assert omega_profile(PhotonAdded(2), 0) == 0.0


def test_identity_profile_exact():
    prof = ModulationProfile(Identity())
    assert all(prof.omega(p) == 1.0 for p in range(1001))


@pytest.mark.parametrize("mu", [0.01, 0.1, 1.0])
def test_rai_agarwal_telescoping(mu):
    prof = ModulationProfile(RaiAgarwal(mu))
    for p in range(51):
        assert abs(prof.omega(p) - math.sqrt(1 + mu * p)) < 1e-10


def test_rai_agarwal_cache_matches_direct_route():
    fam = RaiAgarwal(0.3)
    prof = ModulationProfile(fam)
    prof.omega(30)
    for p in range(30):
        direct = (p + 1) * eval_f(fam, p + 1) ** 2 - p * eval_f(fam, p) ** 2
        assert prof.omega(p) == pytest.approx(direct, rel=1e-13)


@pytest.mark.parametrize("lam", [0.05, 0.1, 0.5])
def test_q_deformed_closed_form(lam):
    for p in range(51):
        closed = math.cosh(lam * (2 * p + 1) / 2) / math.cosh(lam / 2)
        assert abs(omega_profile(QDeformed(lam), p) - closed) <= 1e-10 * max(1.0, closed)


@given(st.floats(min_value=1e-3, max_value=2.0), st.integers(min_value=0, max_value=60))
def test_q_deformed_increasing_and_at_least_one(lam, p):
    prof = ModulationProfile(QDeformed(lam))
    assert prof.omega(p) >= 1.0 - 1e-12
    assert prof.omega(p + 1) > prof.omega(p)


def test_custom_spectrum_gaps():
    e = [0.0, 0.7, 2.0, 2.5, 6.25]
    prof = ModulationProfile(spectrum_to_family(e))
    for p in range(len(e) - 1):
        assert prof.omega(p) == e[p + 1] - e[p]


def test_spectrum_examples():
    harmonic = ModulationProfile(spectrum_to_family(range(20)))
    assert all(harmonic.omega(p) == 1.0 for p in range(19))
    square = ModulationProfile(spectrum_to_family([n * n for n in range(20)]))
    assert all(square.omega(p) == 2 * p + 1 for p in range(19))
    assert omega_profile(spectrum_to_family([0, 1.5]), 0) == 1.5


@pytest.mark.parametrize("e", [[1.0, 2.0], [0.0, -1.0], [0.0, 1.0, 0.0], []])
def test_spectrum_validation(e):
    with pytest.raises(ValidationError):
        spectrum_to_family(e)


def test_family_validation():
    with pytest.raises(ValidationError):
        QDeformed(0.0)
    with pytest.raises(ValidationError):
        RaiAgarwal(-0.1)
    with pytest.raises(ValidationError):
        PhotonAdded(0)
    with pytest.raises(ValidationError):
        PhotonAdded(1.5)


def test_omega_real_examples():
    assert omega_real(Identity(), 2.7) == 1.0
    assert omega_real(RaiAgarwal(1.0), 3.0) == 2.0
    assert omega_real(QDeformed(0.2), 3.0) == pytest.approx(QD_OMEGA3_LAM02, abs=1e-13)
    with pytest.raises(UnsupportedExtension):
        omega_real(CustomSpectrum((0.0, 1.0)), 0.5)


@pytest.mark.parametrize(
    "fam", [RaiAgarwal(0.1), RaiAgarwal(1.0), QDeformed(0.1), QDeformed(0.2), PhotonAdded(1), PhotonAdded(-2)]
)
def test_omega_real_continuous_at_integers(fam):
    prof = ModulationProfile(fam)
    for p in range(21):
        ref = prof.omega(p)
        assert abs(omega_real(prof, p) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_make_family_names():
    assert make_family("identity") == Identity()
    assert make_family("q-deformed", lam=0.2) == QDeformed(0.2)
    assert make_family("photon_added", m="-2") == PhotonAdded(-2)
    assert make_family("rai_agarwal", mu=0.5) == RaiAgarwal(0.5)
    with pytest.raises(ValidationError):
        make_family("rai_agarwal")
    with pytest.raises(ValidationError):
        make_family("bogus")


def test_profiles_hash_by_family():
    assert ModulationProfile(QDeformed(0.1)) == ModulationProfile(QDeformed(0.1))
    assert hash(ModulationProfile(RaiAgarwal(1.0))) == hash(ModulationProfile(RaiAgarwal(1.0)))
