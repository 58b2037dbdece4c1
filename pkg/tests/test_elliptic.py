import cmath

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xyzchain.elliptic import (
    ThetaParams,
    sigma,
    sigma_prime,
    strip_real,
    theta,
    theta00,
    theta01,
    theta10,
    theta11,
    theta_derivative,
    zeta,
)
from xyzchain.errors import DomainError, PoleError, RealityError, TruncationError

TAUS = [0.5j, 1j, 2j]
CHARS = {"11": (0.5, 0.5), "10": (0.5, 0.0), "00": (0.0, 0.0), "01": (0.0, 0.5)}


def oracle(name, u, tau, dps=40):
    """Jacobi theta in nome form, at high precision."""
    mpmath.mp.dps = dps
    q = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tau))
    z = mpmath.pi * mpmath.mpc(u)
    n = {"11": 1, "10": 2, "00": 3, "01": 4}[name]
    val = mpmath.jtheta(n, z, q)
    if name == "11":
        val = -val
    return complex(val)


def brute_series(a, b, u, tau, m_max=200):
    mpmath.mp.dps = 40
    s = mpmath.mpc(0)
    for m in range(-m_max, m_max + 1):
        ma = m + mpmath.mpf(a)
        s += mpmath.exp(1j * mpmath.pi * ma**2 * tau + 2j * mpmath.pi * ma * (u + b))
    return complex(s)


complex_u = st.builds(
    complex,
    st.floats(-1, 1, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
)


def test_theta00_matches_brute_force_series():
    val = theta00(0.2, ThetaParams(0.5j))
    ref = brute_series(0.0, 0.0, 0.2, 0.5j)
    assert abs(val - ref) <= 1e-14 * abs(ref)


@pytest.mark.parametrize("name", list(CHARS))
@pytest.mark.parametrize("tau", TAUS)
def test_named_thetas_match_jtheta(name, tau):
    p = ThetaParams(tau)
    for u in [0.13, -0.4 + 0.2j, 0.77 + 0.3j * tau.imag]:
        a, b = CHARS[name]
        ref = oracle(name, u, tau)
        assert abs(theta(a, b, u, p) - ref) < 1e-13 * max(1, abs(ref))


def test_theta_shift_by_one():
    p = ThetaParams(0.5j)
    assert abs(theta10(1.3, p) + theta10(0.3, p)) < 1e-13
    assert abs(sigma(1.25, p) + sigma(0.25, p)) < 1e-13


def test_sigma_odd_and_zero():
    p = ThetaParams(0.5j)
    assert abs(sigma(0.0, p)) < 1e-15
    u = 0.4 + 0.1j
    assert abs(sigma(-u, p) + sigma(u, p)) < 1e-14


def test_derivative_parity_and_zero():
    p = ThetaParams(0.5j)
    assert abs(theta_derivative(0.5, 0.5, -0.17, p) - theta_derivative(0.5, 0.5, 0.17, p)) < 1e-13
    assert abs(theta_derivative(0.5, 0.0, 0.0, p)) < 1e-14


def test_derivative_central_difference():
    p = ThetaParams(0.5j)
    h = 1e-6
    fd = (theta11(0.3 + h, p) - theta11(0.3 - h, p)) / (2 * h)
    d = theta_derivative(0.5, 0.5, 0.3, p)
    assert abs(fd - d) < 1e-8 * abs(d)


@settings(max_examples=100, deadline=None)
@given(u=complex_u, tau=st.sampled_from(TAUS))
def test_quasi_periodicity(u, tau):
    p = ThetaParams(tau)
    u = u.real + 1j * u.imag * tau.imag
    q = cmath.exp(-1j * cmath.pi * tau - 2j * cmath.pi * u)
    s11, s10, s00, s01 = theta11(u, p), theta10(u, p), theta00(u, p), theta01(u, p)
    # shift by 1
    assert abs(theta11(u + 1, p) + s11) < 1e-12 * max(1, abs(s11))
    assert abs(theta10(u + 1, p) + s10) < 1e-12 * max(1, abs(s10))
    assert abs(theta00(u + 1, p) - s00) < 1e-12 * max(1, abs(s00))
    assert abs(theta01(u + 1, p) - s01) < 1e-12 * max(1, abs(s01))
    # shift by tau
    scale = max(1, abs(q))
    assert abs(theta11(u + tau, p) + q * s11) < 1e-12 * scale * max(1, abs(s11))
    assert abs(theta10(u + tau, p) - q * s10) < 1e-12 * scale * max(1, abs(s10))
    assert abs(theta00(u + tau, p) - q * s00) < 1e-12 * scale * max(1, abs(s00))
    assert abs(theta01(u + tau, p) + q * s01) < 1e-12 * scale * max(1, abs(s01))


@settings(max_examples=100, deadline=None)
@given(u=complex_u, tau=st.sampled_from(TAUS))
def test_parity(u, tau):
    p = ThetaParams(tau)
    u = u.real + 1j * u.imag * tau.imag
    assert abs(theta11(u, p) + theta11(-u, p)) < 1e-12 * max(1, abs(theta11(u, p)))
    for f in (theta10, theta00, theta01):
        assert abs(f(u, p) - f(-u, p)) < 1e-12 * max(1, abs(f(u, p)))


@settings(max_examples=50, deadline=None)
@given(u=complex_u, name=st.sampled_from(list(CHARS)))
def test_derivative_vs_finite_difference(u, name):
    p = ThetaParams(0.5j)
    u = u.real + 0.5j * u.imag
    a, b = CHARS[name]
    f0 = theta(a, b, u, p)
    d = theta_derivative(a, b, u, p)
    h = 1e-6
    fd = (theta(a, b, u + h, p) - theta(a, b, u - h, p)) / (2 * h)
    # relative to the function scale, since d may vanish at stationary points
    assert abs(fd - d) < 1e-7 * max(abs(d), abs(f0))


@settings(max_examples=50, deadline=None)
@given(x=st.floats(-2, 2, allow_nan=False), tau=st.sampled_from(TAUS))
def test_reality_for_real_u(x, tau):
    p = ThetaParams(tau)
    # with characteristic b = 1/2 the phase e^{i pi (m + 1/2)} pairs up into
    # -2 (-1)^m q^{(m+1/2)^2} sin, so theta11 is real too
    for f in (theta11, theta10, theta00, theta01):
        assert abs(f(x, p).imag) < 1e-12


def test_array_broadcast():
    p = ThetaParams(0.5j)
    u = np.linspace(-0.5, 0.5, 7)
    vals = sigma(u, p)
    assert vals.shape == (7,)
    assert np.allclose(vals, [sigma(x, p) for x in u], atol=1e-15)


def test_reduce_matches_direct():
    p = ThetaParams(0.5j)
    u = 0.3 + 1.3j
    for a, b in CHARS.values():
        d = theta(a, b, u, p)
        r = theta(a, b, u, p, reduce=True)
        assert abs(d - r) < 1e-11 * abs(d)
        dd = theta_derivative(a, b, u, p)
        dr = theta_derivative(a, b, u, p, reduce=True)
        assert abs(dd - dr) < 1e-10 * max(1, abs(dd))


def test_zeta_pole_guard():
    p = ThetaParams(0.5j)
    with pytest.raises(PoleError):
        zeta(0.0, p)
    u = 0.21 + 0.05j
    assert abs(zeta(u, p) - sigma_prime(u, p) / sigma(u, p)) < 1e-13 * abs(zeta(u, p))


def test_domain_and_truncation_errors():
    with pytest.raises(DomainError):
        ThetaParams(-1j)
    with pytest.raises(DomainError):
        ThetaParams(0.5j, m_max=4)
    with pytest.raises(TruncationError) as exc:
        theta00(0.1, ThetaParams(0.001j, m_max=8))
    assert exc.value.last_term > 0


def test_strip_real():
    assert strip_real(1.5 + 1e-13j) == 1.5
    with pytest.raises(RealityError):
        strip_real(1.0 + 1e-6j)


@pytest.mark.parametrize("name", list(CHARS))
def test_theta_real_ext_matches_jtheta(name):
    from xyzchain.elliptic import theta_real_ext
    a, b = CHARS[name]
    for t in (0.5, 2.0):
        for u in (0.0, 0.13, 0.4):
            got = theta_real_ext(a, b, u, t)
            assert isinstance(got, np.longdouble)
            mpmath.mp.dps = 40
            n = {"11": 1, "10": 2, "00": 3, "01": 4}[name]
            ref = mpmath.jtheta(n, mpmath.pi * mpmath.mpf(u), mpmath.exp(-mpmath.pi * t))
            ref = -ref if name == "11" else ref
            # extended digits beyond double
            assert abs(mpmath.mpf(str(got)) - ref) < 1e-18 * max(1, abs(ref))


def test_theta_real_ext_derivative():
    from xyzchain.elliptic import theta_real_ext
    d = theta_real_ext(0.5, 0.5, 0.3, 0.5, deriv=True)
    assert abs(float(d) - theta_derivative(0.5, 0.5, 0.3, ThetaParams(0.5j)).real) < 1e-13
    with pytest.raises(DomainError):
        theta_real_ext(0.0, 0.0, 0.1, 0.0)
