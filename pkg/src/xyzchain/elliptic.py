r"""Elliptic theta functions with rational characteristics.

.. math::

    \theta\begin{bmatrix} a \\ b \end{bmatrix}(u, \tau)
        = \sum_{m \in \mathbb{Z}} \exp\left(\pi i (m+a)^2 \tau
          + 2 \pi i (m+a)(u+b)\right)

The four named variants are ``theta11 = [1/2, 1/2]``, ``theta10 = [1/2, 0]``,
``theta00 = [0, 0]`` and ``theta01 = [0, 1/2]``.  The Weierstrass-like
``sigma`` used throughout the Bethe ansatz is ``theta11``.

All routines accept scalar or array ``u`` and broadcast.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, RealityError, TruncationError

__all__ = [
    "ThetaParams",
    "theta",
    "theta_derivative",
    "theta00",
    "theta01",
    "theta10",
    "theta11",
    "sigma",
    "sigma_prime",
    "zeta",
    "strip_real",
    "theta_real_ext",
    "PI_EXT",
]

# pi in the platform's extended type (80-bit on x86, otherwise float64)
PI_EXT = np.longdouble("3.14159265358979323846264338327950288")

CHARACTERISTICS = {
    "11": (0.5, 0.5),
    "10": (0.5, 0.0),
    "00": (0.0, 0.0),
    "01": (0.0, 0.5),
}


@dataclass(frozen=True)
class ThetaParams:
    """Modulus and truncation policy for the theta series.

    Parameters
    ----------
    tau : complex
        Modulus, ``Im(tau) > 0``.
    tol : float
        Summation stops once the outermost terms fall below ``tol`` times the
        absolute mass of the partial sum.
    m_max : int
        Hard cap on ``|m|``.
    """

    tau: complex
    tol: float = 1e-16
    m_max: int = 64

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        if not tau.imag > 0:
            raise DomainError(f"Im(tau) must be positive, got tau={tau}")
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.m_max < 8:
            raise DomainError("m_max must be at least 8")


def _as_params(p) -> ThetaParams:
    if isinstance(p, ThetaParams):
        return p
    return ThetaParams(complex(p))


def _quasi_shift(u, p: ThetaParams, reduce: bool):
    # u = u0 + n*tau with |Im u0| <= Im(tau)/2
    u = np.asarray(u, dtype=complex)
    if not reduce:
        return u, np.zeros(u.shape)
    n = np.rint(u.imag / p.tau.imag)
    return u - n * p.tau, n


def _series(a, b, u, p: ThetaParams, deriv: bool):
    a = float(a)
    b = float(b)
    u = np.asarray(u, dtype=complex)
    tau = p.tau
    M = min(8, p.m_max)
    while True:
        m = np.arange(-M, M + 1) + a
        expo = 1j * np.pi * m**2 * tau + 2j * np.pi * m * (u[..., None] + b)
        terms = np.exp(expo)
        if deriv:
            terms = terms * (2j * np.pi * m)
        mass = np.abs(terms).sum(axis=-1)
        edge = np.maximum(np.abs(terms[..., 0]), np.abs(terms[..., -1]))
        if np.all(edge <= p.tol * mass) or np.all(mass == 0):
            return terms.sum(axis=-1)
        if M >= p.m_max:
            last = float(np.max(edge))
            raise TruncationError(
                f"theta series not converged with m_max={p.m_max} "
                f"(last term {last:.3e})",
                last_term=last,
            )
        M = min(2 * M, p.m_max)


def theta(a, b, u, p, reduce: bool = False):
    """Theta function with characteristics ``[a, b]``.

    ``reduce=True`` first moves ``u`` by whole periods ``tau`` into the strip
    ``|Im u| <= Im(tau)/2`` and restores the quasi-periodicity factor; use it
    for large ``|Im u|`` where the direct series overflows.
    """
    p = _as_params(p)
    u0, n = _quasi_shift(u, p, reduce)
    val = _series(a, b, u0, p, deriv=False)
    if reduce:
        val = val * np.exp(-1j * np.pi * n**2 * p.tau - 2j * np.pi * n * (u0 + float(b)))
    return val[()] if np.ndim(val) == 0 else val


def theta_derivative(a, b, u, p, reduce: bool = False):
    """Derivative in ``u`` of :func:`theta`, summed term by term."""
    p = _as_params(p)
    u0, n = _quasi_shift(u, p, reduce)
    val = _series(a, b, u0, p, deriv=True)
    if reduce:
        base = _series(a, b, u0, p, deriv=False)
        factor = np.exp(-1j * np.pi * n**2 * p.tau - 2j * np.pi * n * (u0 + float(b)))
        val = factor * (val - 2j * np.pi * n * base)
    return val[()] if np.ndim(val) == 0 else val


def theta11(u, p):
    return theta(0.5, 0.5, u, p)


def theta10(u, p):
    return theta(0.5, 0.0, u, p)


def theta00(u, p):
    return theta(0.0, 0.0, u, p)


def theta01(u, p):
    return theta(0.0, 0.5, u, p)


def sigma(u, p):
    """``sigma(u) = theta11(u, tau)``; odd in ``u``."""
    return theta(0.5, 0.5, u, p)


def sigma_prime(u, p):
    return theta_derivative(0.5, 0.5, u, p)


def theta_real_ext(a, b, u, t: float, deriv: bool = False):
    """Theta (or its derivative) for real ``u`` and ``tau = i t`` in ``np.longdouble``.

    For these arguments every characteristic sum is real::

        theta[a, b](u) = sum_m exp(-pi t m^2) cos(2 pi m (u + b)),  m in Z + a

    The series is cut where ``exp(-pi t m^2)`` drops below ``1e-24``, so the
    result carries the full extended-precision mantissa.  Used where printed
    digits sit at the rounding level of double precision.
    """
    if not t > 0:
        raise DomainError("t must be positive")
    a = np.longdouble(a)
    u = np.longdouble(u) + np.longdouble(b)
    t = np.longdouble(t)
    M = int(np.sqrt(56.0 / (np.pi * float(t)))) + 2
    m = np.arange(-M, M + 1).astype(np.longdouble) + a
    w = np.exp(-PI_EXT * t * m * m)
    arg = 2 * PI_EXT * m * u
    if deriv:
        return np.sum(-2 * PI_EXT * m * w * np.sin(arg))
    return np.sum(w * np.cos(arg))


def zeta(u, p, pole_tol: float = 1e-13):
    """Logarithmic derivative ``sigma'(u) / sigma(u)``.

    Raises :class:`PoleError` when ``|sigma(u)|`` is below ``pole_tol`` times
    ``|sigma'(0)|`` (i.e. ``u`` sits on a lattice point).
    """
    p = _as_params(p)
    s = np.asarray(sigma(u, p))
    scale = abs(sigma_prime(0.0, p))
    if np.any(np.abs(s) < pole_tol * scale):
        raise PoleError(f"zeta evaluated at a zero of sigma (u={u})")
    out = np.asarray(sigma_prime(u, p)) / s
    return out[()] if out.ndim == 0 else out


def strip_real(z, what: str = "value", atol: float = 1e-10):
    """Return ``Re(z)`` after checking that ``|Im(z)|`` is negligible.

    The threshold is relative to ``max(1, |z|)``.
    """
    z = np.asarray(z, dtype=complex)
    bad = np.abs(z.imag) > atol * np.maximum(1.0, np.abs(z))
    if np.any(bad):
        worst = float(np.max(np.abs(z.imag)))
        raise RealityError(f"{what} has imaginary part {worst:.3e}")
    out = z.real
    return float(out) if out.ndim == 0 else out
