"""Thermodynamic-limit energies of the XYZ chain and its XXZ limit.

With ``tau = i t`` every prefactor ``i pi / tau`` equals ``pi / t`` and the
Fourier sums run over hyperbolic ratios that decay geometrically in ``k``.
The ratios are evaluated in an exponentially scaled form so that large
``k`` never overflows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .ed import normalize_boundary
from .elliptic import PI_EXT, ThetaParams, sigma, sigma_prime, strip_real, theta_real_ext
from .errors import ConvergenceError, DomainError, TruncationError

__all__ = [
    "ThermoParams",
    "e0",
    "eps_hole",
    "ground_energy",
    "excitation_gap",
    "xxz_e0",
    "xxz_eps_hole",
    "sinh_ratio",
    "ground_energy_ext",
]


@dataclass(frozen=True)
class ThermoParams:
    """Coupling, modulus and truncation policy.

    Parameters
    ----------
    eta : float
        Crossing parameter in ``(0, 1/2]``.
    tau : complex
        Purely imaginary modulus.
    k_max : int or None
        Fourier cutoff.  ``None`` picks the smallest cutoff whose analytic
        tail bound is below ``tol``.
    tol : float
        Accepted size of the last included term, relative to the sum.
    """

    eta: float
    tau: complex
    k_max: int | None = None
    tol: float = 1e-15

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "eta", float(self.eta))
        if not 0 < self.eta <= 0.5:
            raise DomainError(f"eta must lie in (0, 1/2], got {self.eta}")
        if tau.real != 0 or not tau.imag > 0:
            raise DomainError(f"tau must be purely imaginary with Im(tau) > 0, got {tau}")
        if self.k_max is not None and int(self.k_max) < 1:
            raise DomainError("k_max must be a positive integer")
        if not self.tol > 0:
            raise DomainError("tol must be positive")

    @property
    def t(self) -> float:
        return self.tau.imag

    @property
    def theta_params(self) -> ThetaParams:
        return ThetaParams(self.tau)

    def cutoff(self, rate: float) -> int:
        """Cutoff for terms decaying like ``exp(-rate * k)``."""
        if self.k_max is not None:
            return int(self.k_max)
        return max(16, math.ceil(math.log(4.0 / self.tol) / rate) + 1)


def sinh_ratio(a, eta: float, dtype=float):
    """``sinh(a(1-eta)) / (sinh(a) cosh(a eta))`` for ``a >= 0``, overflow free.

    The value at ``a = 0`` is the limit ``1 - eta``.  ``dtype`` selects the
    working precision (``np.longdouble`` for the extended path).
    """
    a = np.abs(np.asarray(a, dtype=dtype))
    eta = dtype(eta)
    with np.errstate(invalid="ignore", divide="ignore"):
        num = -np.expm1(-2 * a * (1 - eta))
        den = -np.expm1(-2 * a) * (1 + np.exp(-2 * a * eta))
        out = 2 * np.exp(-2 * a * eta) * num / den
    out = np.where(a == 0, 1 - eta, out)
    return out[()] if out.ndim == 0 else out


def _sech(y):
    y = np.abs(y)
    return 2 * np.exp(-y) / (1 + np.exp(-2 * y))


def _prefactor(p: ThermoParams) -> float:
    tp = p.theta_params
    ratio = sigma(p.eta, tp) / sigma_prime(0.0, tp)
    return strip_real(np.pi / p.t * ratio, "energy prefactor")


def _checked_sum(terms, p: ThermoParams, what: str):
    total = terms.sum()
    last = abs(terms[-1])
    if last > p.tol * max(1.0, abs(total)):
        raise TruncationError(
            f"{what}: last term {last:.3e} above tolerance with k_max={len(terms) - 1}",
            last_term=last,
        )
    return total


def e0(p: ThermoParams) -> float:
    """Ground-state energy per site.

    ``-(pi/t) sigma(eta)/sigma'(0) * sum_k R(k pi / t) + sigma'(eta) / (2 sigma'(0))``
    with ``R`` from :func:`sinh_ratio` and ``k`` running over all integers.
    """
    K = p.cutoff(2 * np.pi * p.eta / p.t)
    k = np.arange(0, K + 1)
    terms = sinh_ratio(k * np.pi / p.t, p.eta)
    terms[1:] *= 2
    s = _checked_sum(terms, p, "e0")
    tp = p.theta_params
    tail = strip_real(sigma_prime(p.eta, tp) / (2 * sigma_prime(0.0, tp)), "e0 constant")
    return float(-_prefactor(p) * s + tail)


def eps_hole(x_h, p: ThermoParams):
    """Energy of one hole at rapidity ``x_h`` (vectorized).

    ``(pi/t) sigma(eta)/sigma'(0) [1 + 2 sum_{k>=1} cos(k pi x/t) / cosh(k pi eta/t)]``;
    it is even in ``x_h`` and smallest at ``x_h = +-t``.
    """
    x = np.asarray(x_h, dtype=float)
    if np.any(np.abs(x) > p.t * (1 + 1e-12)):
        raise DomainError(f"x_h must lie in [-{p.t}, {p.t}]")
    K = p.cutoff(np.pi * p.eta / p.t)
    k = np.arange(1, K + 1)
    weights = _sech(k * np.pi * p.eta / p.t)
    _checked_sum(np.concatenate([[1.0], 2 * weights]), p, "eps_hole")
    s = 1 + 2 * np.cos(np.multiply.outer(x, k) * np.pi / p.t) @ weights
    out = _prefactor(p) * s
    return float(out) if np.ndim(out) == 0 else out


def ground_energy(N: int, p: ThermoParams, boundary: str = "antiperiodic") -> float:
    """Ground-state energy: ``e0 N`` for even ``N``, plus one hole at ``t`` for odd ``N``.

    The closed forms are identical for both boundary conditions.
    """
    normalize_boundary(boundary)
    if int(N) < 1:
        raise DomainError("N must be positive")
    E = e0(p) * int(N)
    if int(N) % 2:
        E += eps_hole(p.t, p)
    return E


def excitation_gap(p: ThermoParams, parity: str, boundary: str = "antiperiodic") -> float:
    """Gap above the ground state: ``0`` for odd chains, two holes at ``t`` for even."""
    normalize_boundary(boundary)
    if parity == "odd":
        return 0.0
    if parity == "even":
        return 2 * eps_hole(p.t, p)
    raise DomainError(f"parity must be 'odd' or 'even', got {parity!r}")


def ground_energy_ext(N: int, p: ThermoParams, boundary: str = "antiperiodic"):
    """:func:`ground_energy` accumulated in ``np.longdouble``.

    Same sums and cutoffs, with theta values from
    :func:`~xyzchain.elliptic.theta_real_ext`.
    """
    normalize_boundary(boundary)
    if int(N) < 1:
        raise DomainError("N must be positive")
    ld = np.longdouble
    eta, t = ld(p.eta), ld(p.t)
    s0 = theta_real_ext(0.5, 0.5, 0.0, p.t, deriv=True)
    pref = PI_EXT / t * theta_real_ext(0.5, 0.5, p.eta, p.t) / s0
    K = p.cutoff(2 * np.pi * p.eta / p.t)
    k = np.arange(0, K + 1).astype(ld)
    terms = sinh_ratio(k * PI_EXT / t, p.eta, dtype=ld)
    terms[1:] *= 2
    _checked_sum(terms.astype(float), p, "e0")
    e = -pref * np.sum(terms[::-1]) + theta_real_ext(0.5, 0.5, p.eta, p.t, deriv=True) / (2 * s0)
    E = e * int(N)
    if int(N) % 2:
        K = p.cutoff(np.pi * p.eta / p.t)
        k = np.arange(1, K + 1).astype(ld)
        y = k * PI_EXT * eta / t
        # cos(k pi) = (-1)^k at x_h = t
        w = np.where(k % 2 == 1, -1, 1) * 2 * np.exp(-y) / (1 + np.exp(-2 * y))
        E += pref * (1 + 2 * np.sum(w[::-1]))
    return E


def xxz_e0(eta: float, tol: float = 1e-13) -> float:
    """Ground-state energy per site of the XXZ chain with ``Jz = cos(pi eta)``.

    ``-(sin(pi eta)/pi) int_R sinh(w(1-eta))/(sinh w cosh(w eta)) dw + cos(pi eta)/2``.
    """
    eta = float(eta)
    if not 0 < eta <= 0.5:
        raise DomainError(f"eta must lie in (0, 1/2], got {eta}")
    # integrand < 2 exp(-2 w eta); choose W so the dropped tail is below tol
    W = math.log(1.0 / (tol * eta)) / (2 * eta)
    val, err = integrate.quad(sinh_ratio, 0.0, W, args=(eta,), epsabs=tol, epsrel=tol, limit=400)
    if err > 100 * tol * max(1.0, abs(val)):
        raise ConvergenceError(f"XXZ quadrature error estimate {err:.3e}", residual=err)
    return -np.sin(np.pi * eta) / np.pi * 2 * val + np.cos(np.pi * eta) / 2


def xxz_eps_hole(x_h, eta: float):
    """Hole energy ``sin(pi eta) / (eta cosh(pi x / (2 eta)))``; ``x = inf`` gives 0."""
    eta = float(eta)
    if not 0 < eta <= 0.5:
        raise DomainError(f"eta must lie in (0, 1/2], got {eta}")
    x = np.asarray(x_h, dtype=float)
    out = np.sin(np.pi * eta) / eta * _sech(np.pi * x / (2 * eta))
    return float(out) if out.ndim == 0 else out
