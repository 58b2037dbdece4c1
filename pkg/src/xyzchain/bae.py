"""Reduced Bethe ansatz equations at the degenerate points.

At ``eta_m = (tau + 2m)/N`` (antiperiodic) or ``eta_m = 2m/N`` (periodic)
the inhomogeneous term drops out and the ``N`` roots ``x_j`` together with a
phase ``phi`` satisfy product-form equations.  Root variables enter every
elliptic function as ``u = (i/2) x``, so the root lattice is
``2i Z + 2t Z`` with ``t = Im(tau)``.

Kernels and their Fourier transforms follow the string classification of
:mod:`xyzchain.strings`.  Every ``k = 0`` Fourier value is a closed-form
limit.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .ed import normalize_boundary
from .elliptic import ThetaParams, sigma, sigma_prime, theta10, theta_derivative, zeta
from .errors import ConvergenceError, DegenerateSeedError, DomainError, PoleError
from .strings import StringSpec, charge_for, string_coordinates, string_structure

__all__ = [
    "DegeneratePoint",
    "BetheState",
    "KernelValue",
    "g_func",
    "vartheta",
    "kernel_a",
    "kernel_A",
    "fourier_a",
    "fourier_A",
    "rho1_fourier",
    "bae_residual",
    "residual_norm",
    "refine_roots",
    "energy_from_roots",
    "configuration",
    "seed_state",
    "solve",
    "lattice_distinct",
]

POLE_TOL = 1e-12


@dataclass(frozen=True)
class DegeneratePoint:
    """Degenerate crossing parameter for a chain of ``N`` sites.

    Parameters
    ----------
    m : int
        ``0 < 2m/N <= 1/2``.
    N : int
    tau : complex
        Purely imaginary modulus.
    boundary : {"antiperiodic", "periodic"}
        Selects ``eta = (tau + 2m)/N`` or ``eta = 2m/N``.
    """

    m: int
    N: int
    tau: complex
    boundary: str = "antiperiodic"

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "boundary", normalize_boundary(self.boundary))
        if self.N < 1 or self.m < 1 or 4 * self.m > self.N:
            raise DomainError(f"need 0 < 2m/N <= 1/2, got m={self.m}, N={self.N}")
        if self.tau.real != 0 or not self.tau.imag > 0:
            raise DomainError("tau must be purely imaginary with positive imaginary part")

    @property
    def t(self) -> float:
        return self.tau.imag

    @property
    def ratio(self) -> Fraction:
        return Fraction(2 * self.m, self.N)

    @property
    def eta(self) -> complex:
        if self.boundary == "periodic":
            return complex(2 * self.m / self.N)
        return (self.tau + 2 * self.m) / self.N

    @property
    def theta_params(self) -> ThetaParams:
        return ThetaParams(self.tau)

    @property
    def strings(self) -> list:
        return string_structure(self.m, self.N)


@dataclass
class BetheState:
    """Roots, phase and selection integer of one eigenstate candidate."""

    roots: np.ndarray
    phi: complex
    k1: int
    residual: float = float("nan")
    iterations: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.roots = np.asarray(self.roots, dtype=complex)
        self.phi = complex(self.phi)
        self.k1 = int(self.k1)

    def to_dict(self) -> dict:
        return {
            "roots": [[float(z.real), float(z.imag)] for z in self.roots],
            "phi": [self.phi.real, self.phi.imag],
            "k1": self.k1,
            "residual": float(self.residual),
            "iterations": int(self.iterations),
        }


class KernelValue(NamedTuple):
    """Smooth part of a kernel plus the weight of its ``delta(x)`` term."""

    smooth: np.ndarray
    delta_weight: int


def _guarded_ratio(num, den, what):
    den = np.asarray(den)
    if np.any(np.abs(den) < POLE_TOL):
        raise PoleError(f"{what}: denominator at a zero of sigma")
    return np.asarray(num) / den


def g_func(x, n: int, v: int, dp: DegeneratePoint):
    """``sigma[(i/2)(x - n eta i + s)] / sigma[(i/2)(x + n eta i + s)]``, ``s = (1-v) i/2``."""
    p = dp.theta_params
    x = np.asarray(x, dtype=complex)
    s = (1 - v) / 2 * 1j
    eta = dp.eta
    out = _guarded_ratio(
        sigma(0.5j * (x - n * eta * 1j + s), p),
        sigma(0.5j * (x + n * eta * 1j + s), p),
        "g_func",
    )
    return out[()] if out.ndim == 0 else out


def _shift(n: int, q, dp: DegeneratePoint) -> complex:
    return float(q) * float(dp.ratio) * 1j + n / dp.N * dp.t


def _string_nq(spec):
    if isinstance(spec, StringSpec):
        return spec.n, spec.q
    n, q = spec
    return int(n), Fraction(q)


def _vartheta_raw(x, c, p):
    return theta10(0.5j * (x + c), p) / theta10(0.5j * (x - c), p)


def vartheta(x, spec, dp: DegeneratePoint, h: float = 2e-3):
    """Scattering phase of a string, ``-i ln[theta10((i/2)(x+c)) / theta10((i/2)(x-c))]``.

    ``c = q (2m/N) i + (n/N) t``.  The branch is fixed by continuity along
    a grid from ``x = 0`` (where the value is 0).  At complex ``eta_m`` the
    phase is complex; its real part is monotone with ``sign(q)``.

    Parameters
    ----------
    x : float or array
    spec : StringSpec or (n, q)
    dp : DegeneratePoint
    h : float
        Maximum grid step, in units of ``t``, for the continuation.
    """
    n, q = _string_nq(spec)
    p = dp.theta_params
    c = _shift(n, q, dp)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(xs.shape, dtype=complex)
    step = h * dp.t
    for i, xv in enumerate(xs):
        K = max(8, math.ceil(abs(xv) / step))
        grid = np.linspace(0.0, xv, K + 1)
        r = _vartheta_raw(grid, c, p)
        if np.any(np.abs(r) == 0) or not np.all(np.isfinite(r)):
            raise PoleError("vartheta path crosses a zero of theta10")
        arg = np.unwrap(np.angle(r))
        arg -= arg[0]
        out[i] = arg[-1] - 1j * np.log(np.abs(r[-1]) / np.abs(r[0]))
    return out[0] if np.ndim(x) == 0 else out.reshape(np.shape(x))


def kernel_a(x, spec, dp: DegeneratePoint):
    """``a(x) = (1/2 pi) d vartheta / dx`` as a difference of theta10 log-derivatives."""
    n, q = _string_nq(spec)
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=complex))[()]
    p = dp.theta_params
    c = _shift(n, q, dp)
    x = np.asarray(x, dtype=complex)
    um = 0.5j * (x - c)
    up = 0.5j * (x + c)
    tm = theta10(um, p)
    tp = theta10(up, p)
    if np.any(np.abs(tm) < POLE_TOL) or np.any(np.abs(tp) < POLE_TOL):
        raise PoleError("kernel_a at a zero of theta10")
    dm = theta_derivative(0.5, 0.0, um, p)
    dpl = theta_derivative(0.5, 0.0, up, p)
    out = -(dm / tm - dpl / tp) / (4 * np.pi)
    return out[()] if np.ndim(out) == 0 else out


def _components(specj: StringSpec, specr: StringSpec, dp: DegeneratePoint):
    """Constituent ``(weight, n, v)`` kernels of the string-string scattering kernel."""
    v = specj.v * specr.v
    d = abs(specr.n - specj.n)
    comps = [(1, specr.n + specj.n, v), (1, d, v)]
    comps += [(2, d + 2 * k, v) for k in range(1, min(specr.n, specj.n))]
    out = []
    for w, n, vv in comps:
        if n == 0:
            continue
        out.append((w, n, charge_for(n, vv, dp.m, dp.N)))
    return out


def _delta_weight(specj: StringSpec, specr: StringSpec) -> int:
    return specj.sign_q if specj.j == specr.j else 0


def kernel_A(x, specj: StringSpec, specr: StringSpec, dp: DegeneratePoint) -> KernelValue:
    """String-string kernel: sum of ``a`` kernels plus ``sign(q_j) delta(x)`` for ``j = r``.

    The internal sum over ``|n_r - n_j| + 2k`` runs to ``min(n_r, n_j) - 1``.
    The delta term is returned as a weight, never sampled.
    """
    x = np.asarray(x, dtype=float)
    smooth = np.zeros(x.shape, dtype=complex)
    for w, n, q in _components(specj, specr, dp):
        smooth = smooth + w * kernel_a(x, (n, q), dp)
    return KernelValue(smooth[()] if smooth.ndim == 0 else smooth, _delta_weight(specj, specr))


def _sinh_ratio(k, a, b):
    """``sinh(k a) / sinh(k b)`` for ``Re b > |Re a|``, overflow free; ``a/b`` at ``k = 0``."""
    a = complex(a)
    b = complex(b)
    k = abs(float(k))
    if k == 0:
        return a / b
    sgn = 1
    if a.real < 0:
        a, sgn = -a, -1
    return sgn * np.exp(k * (a - b)) * (-np.expm1(-2 * k * a)) / (-np.expm1(-2 * k * b))


def fourier_a(k: int, spec, dp: DegeneratePoint) -> complex:
    """``int_{-t}^{t} a(x) exp(-i k pi x / t) dx`` in closed form.

    Equals ``sinh[k pi (q 2m/N - n tau/N) / tau * i] / sinh(k pi / t)``; the
    ``k = 0`` value is ``q 2m/N - n tau/N``.  The kernel depends on
    ``q 2m/N`` only modulo 2, and the closed form needs it in ``[-1, 1]``, so
    it is reduced first (this matters for auxiliary lengths only; genuine
    string types already satisfy ``-2m/N <= q 2m/N <= 1 - 2m/N``).
    """
    n, q = _string_nq(spec)
    if n == 0:
        return 0j
    shift = float(q) * float(dp.ratio)
    shift -= 2 * round(shift / 2)
    num = shift - n * dp.tau / dp.N
    if k == 0:
        return complex(num)
    return complex(_sinh_ratio(k * np.pi, num / dp.t, 1.0 / dp.t))


def fourier_A(k: int, specj: StringSpec, specr: StringSpec, dp: DegeneratePoint) -> complex:
    """Fourier transform of :func:`kernel_A`, delta weight included.

    For ``j = 1`` (real roots) this is
    ``2 cosh(k pi eta/t) sinh[k pi (q_r 2m/N - n_r tau/N)/t ...] / sinh(k pi/t)``
    and at ``k = 0`` for ``j = r = 1`` it reduces to ``2(1 - eta_m)``.
    """
    total = sum(w * fourier_a(k, (n, q), dp) for w, n, q in _components(specj, specr, dp))
    return complex(total + _delta_weight(specj, specr))


def _cosh_k_eta(k, dp: DegeneratePoint):
    return np.cosh(k * np.pi * dp.eta / dp.t)


def rho1_fourier(k: int, hole_transform, string_content, dp: DegeneratePoint) -> complex:
    """Fourier transform of the real-root density.

    Parameters
    ----------
    k : int
    hole_transform : complex
        Fourier transform of the hole density at ``k``.
    string_content : list of (StringSpec, complex)
        Each string type with its density transform at ``k`` (at ``k = 0``
        this is ``M_r / N``).  The real-root type itself is skipped.
    dp : DegeneratePoint

    Notes
    -----
    The back-reaction ratio at ``k = 0`` is
    ``(q_r 2m/N - n_r tau/N) / (1 - eta_m)``.
    """
    structure = dp.strings
    s1 = structure[0]
    A11 = fourier_A(k, s1, s1, dp)
    eta = dp.eta
    out = 1 / (2 * _cosh_k_eta(k, dp)) - hole_transform / A11
    if k == 0:
        out -= dp.tau / (dp.N * A11)
    for spec, rho in string_content:
        if spec.j == s1.j:
            continue
        num = float(spec.q) * float(dp.ratio) - spec.n * dp.tau / dp.N
        ratio = _sinh_ratio(k * np.pi, num / dp.t, (1 - eta) / dp.t)
        out -= ratio * rho
    return complex(out)


# ---------------------------------------------------------------------------
# Reduced BAEs


def _sigma_pairs(x, dp: DegeneratePoint):
    p = dp.theta_params
    eta = dp.eta
    gm = sigma(0.5j * (x - eta * 1j), p)
    gp = sigma(0.5j * (x + eta * 1j), p)
    d = x[:, None] - x[None, :]
    num = sigma(0.5j * (d - 2j * eta), p)
    den = sigma(0.5j * (d + 2j * eta), p)
    return gm, gp, num, den


def _system(z, dp: DegeneratePoint, k1: int):
    N = dp.N
    x = z[:N]
    phi = z[N]
    gm, gp, num, den = _sigma_pairs(x, dp)
    off = ~np.eye(N, dtype=bool)
    if np.any(np.abs(gp) < POLE_TOL) or np.any(np.abs(den[off]) < POLE_TOL):
        raise PoleError("Bethe equation factor at a zero of sigma")
    g = gm / gp
    np.fill_diagonal(num, 1.0)
    np.fill_diagonal(den, 1.0)
    scat = np.prod(num / den, axis=1)
    if dp.boundary == "antiperiodic":
        lhs = np.exp(np.pi * x + 2j * phi) * g**N
        rhs = -scat
        target = np.exp(1j * np.pi * k1 / N)
    else:
        lhs = np.exp(2j * phi) * g**N
        rhs = scat
        target = np.exp(2j * np.pi * k1 / N)
    sel = np.exp(1j * phi) * np.prod(g) - target
    return lhs - rhs, sel


def _check_k1(k1: int, dp: DegeneratePoint):
    top = 2 * dp.N if dp.boundary == "antiperiodic" else dp.N
    if not 1 <= int(k1) <= top:
        raise DomainError(f"k1 must lie in 1..{top}, got {k1}")


def bae_residual(state: BetheState, dp: DegeneratePoint):
    """Per-root residuals and the selection-rule residual (LHS - RHS, product form).

    Antiperiodic::

        e^{pi x_j + 2 i phi} g_j^N + prod_{k != j} S_jk,     e^{i phi} prod g - e^{i pi k1 / N}

    Periodic::

        e^{2 i phi} g_j^N - prod_{k != j} S_jk,              e^{i phi} prod g - e^{2 i pi k1 / N}

    with ``g_j = sigma[(i/2)(x_j - eta i)] / sigma[(i/2)(x_j + eta i)]`` and
    ``S_jk = sigma[(i/2)(x_j - x_k - 2 eta i)] / sigma[(i/2)(x_j - x_k + 2 eta i)]``.
    """
    if len(state.roots) != dp.N:
        raise DomainError(f"expected {dp.N} roots, got {len(state.roots)}")
    _check_k1(state.k1, dp)
    z = np.append(state.roots, state.phi)
    return _system(z, dp, state.k1)


def residual_norm(state: BetheState, dp: DegeneratePoint) -> float:
    r, s = bae_residual(state, dp)
    return float(np.sqrt(np.sum(np.abs(r) ** 2) + abs(s) ** 2))


def _F(z, dp, k1):
    r, s = _system(z, dp, k1)
    return np.append(r, s)


def _F_cleared(z, dp, k1):
    # Bethe equations multiplied through by every denominator: free of poles,
    # same zeros wherever the ratio form is finite.
    N = dp.N
    x = z[:N]
    phi = z[N]
    gm, gp, num, den = _sigma_pairs(x, dp)
    np.fill_diagonal(num, 1.0)
    np.fill_diagonal(den, 1.0)
    A = np.prod(den, axis=1)
    B = np.prod(num, axis=1)
    if dp.boundary == "antiperiodic":
        r = np.exp(np.pi * x + 2j * phi) * gm**N * A + gp**N * B
        target = np.exp(1j * np.pi * k1 / N)
    else:
        r = np.exp(2j * phi) * gm**N * A - gp**N * B
        target = np.exp(2j * np.pi * k1 / N)
    sel = np.exp(1j * phi) * np.prod(gm) - target * np.prod(gp)
    return np.append(r, sel)


def _safe_norm(F, z, dp, k1):
    try:
        with np.errstate(all="ignore"):
            f = F(z, dp, k1)
    except PoleError:
        return None, np.inf
    n = np.linalg.norm(f)
    return f, (n if np.isfinite(n) else np.inf)


def _newton(F, z, dp, k1, max_iter, tol, h):
    """Damped Newton on ``F(z) = 0``; returns ``(z, norm, iterations)``."""
    n = len(z)
    f, norm = _safe_norm(F, z, dp, k1)
    if not np.isfinite(norm):
        raise DegenerateSeedError("residual is not finite at the starting point", residual=norm)
    for it in range(max_iter):
        if norm < tol:
            return z, norm, it
        J = np.empty((n, n), dtype=complex)
        with np.errstate(all="ignore"):
            for c in range(n):
                dz = np.zeros(n, dtype=complex)
                dz[c] = h
                J[:, c] = (F(z + dz, dp, k1) - F(z - dz, dp, k1)) / (2 * h)
        if not np.all(np.isfinite(J)) or np.linalg.cond(J) > 1e14:
            raise DegenerateSeedError("singular Jacobian", residual=float(norm),
                                      state=BetheState(z[:-1], z[-1], k1))
        step = np.linalg.solve(J, -f)
        lam = 1.0
        for _ in range(21):
            f_new, new = _safe_norm(F, z + lam * step, dp, k1)
            if new < norm:
                break
            lam /= 2
        else:
            raise DegenerateSeedError("no descent along the Newton direction", residual=float(norm),
                                      state=BetheState(z[:-1], z[-1], k1))
        z = z + lam * step
        f, norm = f_new, new
    return z, norm, max_iter


def refine_roots(seed: BetheState, dp: DegeneratePoint, max_iter: int = 60, tol: float = 1e-10,
                 h: float = 1e-7) -> BetheState:
    """Damped Newton iteration on roots and ``phi`` with ``k1`` held fixed.

    String seeds place equation factors next to zeros of ``sigma``, where
    the ratio form of :func:`bae_residual` is numerically singular.  The
    iteration therefore runs first on the denominator-cleared equations,
    then polishes on the ratio form; acceptance is always judged by the
    ratio-form residual norm.  Jacobians come from complex central
    differences (the system is holomorphic); each step is halved up to
    20 times until the residual decreases.

    Raises
    ------
    DegenerateSeedError
        Singular Jacobian, or no descent along the Newton direction.
    ConvergenceError
        Ratio-form residual still above ``tol`` after ``max_iter`` steps.
    """
    _check_k1(seed.k1, dp)
    if len(seed.roots) != dp.N:
        raise DomainError(f"expected {dp.N} roots, got {len(seed.roots)}")
    z = np.append(seed.roots, seed.phi).astype(complex)
    _, norm = _safe_norm(_F, z, dp, seed.k1)
    its = 0
    if not norm < tol:
        z, _, its = _newton(_F_cleared, z, dp, seed.k1, max_iter, 1e-3 * tol, h)
        _, norm = _safe_norm(_F, z, dp, seed.k1)
        if np.isfinite(norm) and not norm < tol:
            try:
                z, norm, more = _newton(_F, z, dp, seed.k1, 10, tol, h)
                its += more
            except DegenerateSeedError:
                pass
    if not norm < tol:
        raise ConvergenceError(f"Bethe residual {norm:.3e} above {tol:.1e}", residual=float(norm),
                               state=BetheState(z[:-1], z[-1], seed.k1))
    return BetheState(z[:-1], z[-1], seed.k1, residual=float(norm), iterations=its,
                      meta=dict(seed.meta))


def energy_from_roots(state: BetheState, dp: DegeneratePoint) -> complex:
    """Eigenvalue carried by a root set.

    ``sigma(eta)/sigma'(0) {sum_j [zeta((i/2)(x_j + eta i)) - zeta((i/2)(x_j - eta i))]
    + (N/2) zeta(eta) - i pi}``; the ``-i pi`` term is absent for periodic chains.
    """
    p = dp.theta_params
    eta = dp.eta
    x = np.asarray(state.roots, dtype=complex)
    tot = np.sum(zeta(0.5j * (x + eta * 1j), p) - zeta(0.5j * (x - eta * 1j), p))
    bracket = tot + dp.N / 2 * zeta(eta, p)
    if dp.boundary == "antiperiodic":
        bracket -= 1j * np.pi
    return complex(sigma(eta, p) / sigma_prime(0.0, p) * bracket)


# ---------------------------------------------------------------------------
# Seeds


def _string_combinations(types, total_n, total_q):
    """Multisets of string types with prescribed total length and charge."""
    types = [s for s in types if s.n <= total_n]
    best = None

    def rec(i, n_left, q_acc, picked):
        nonlocal best
        if n_left == 0:
            if q_acc == total_q and (best is None or len(picked) < len(best)):
                best = list(picked)
            return
        if i == len(types) or (best is not None and len(picked) >= len(best)):
            return
        s = types[i]
        for cnt in range(n_left // s.n, -1, -1):
            rec(i + 1, n_left - cnt * s.n, q_acc + cnt * s.q, picked + [s] * cnt)

    rec(0, total_n, Fraction(0), [])
    return best


def configuration(dp: DegeneratePoint, kind: str = "ground"):
    """Root content ``(M_1, [string specs])`` of the ground or lowest hole-excited state.

    Odd ``N``: ``(N-1)/2`` real roots, strings of total length ``(N+1)/2``
    and total charge ``-1/2``.  Even ``N``: ``N/2`` real roots, strings of
    length ``N/2`` and charge ``0``.  ``kind="excited"`` (even ``N``) trades one
    real root for the ``z_1``-string.
    """
    structure = dp.strings
    s1 = structure[0]
    others = structure[1:]
    N = dp.N
    if kind == "ground":
        if N % 2:
            M1, Ln, Lq = (N - 1) // 2, (N + 1) // 2, Fraction(-1, 2)
        else:
            M1, Ln, Lq = N // 2, N // 2, Fraction(0)
        strings = _string_combinations(others, Ln, Lq)
    elif kind == "excited":
        if N % 2:
            raise DomainError("the two-hole excitation is defined for even N")
        z1 = next(s for s in structure if s.n == 1 and s.v == -1)
        M1 = N // 2 - 1
        base = _string_combinations(others, N // 2, Fraction(0))
        strings = None if base is None else base + [z1]
    else:
        raise DomainError(f"unknown configuration kind {kind!r}")
    if strings is None:
        raise DomainError(f"no string content satisfies the {kind} constraints for N={N}, m={dp.m}")
    return M1, s1, strings


def seed_state(dp: DegeneratePoint, kind: str, k1: int, spread: float, center: float,
               deviation: float = 1e-3) -> BetheState:
    """String-hypothesis seed.

    Real roots sit symmetrically with uniform spacing ``spread * t``
    (consecutive quantum numbers); strings are centred at ``center * t``,
    successive strings displaced by ``t / len(strings)``.  Exact strings put
    Bethe-equation factors on zeros of ``sigma``, so string members get a
    small deterministic offset ``deviation * t`` in place of the dropped
    exponentially small correction.
    """
    M1, _, strings = configuration(dp, kind)
    t = dp.t
    reals = [(a - (M1 - 1) / 2) * spread * t for a in range(M1)]
    roots = list(reals)
    for i, spec in enumerate(strings):
        c = (center + i / max(1, len(strings))) * t
        c = (c + t) % (2 * t) - t
        members = string_coordinates(c, spec, dp.eta)
        roots += [z + deviation * t * (1 + 0.5j) * (a + 1) for a, z in enumerate(members)]
    roots = np.array(roots, dtype=complex)
    gm, gp, _, _ = _sigma_pairs(roots, dp)
    prod_g = np.prod(gm / gp)
    if dp.boundary == "antiperiodic":
        target = np.exp(1j * np.pi * k1 / dp.N)
    else:
        target = np.exp(2j * np.pi * k1 / dp.N)
    phi = -1j * np.log(target / prod_g)
    return BetheState(roots, phi, k1, meta={"kind": kind, "spread": spread, "center": center})


def lattice_distinct(roots, dp: DegeneratePoint, tol: float = 1e-6) -> bool:
    """``True`` when no two roots coincide modulo the lattice ``2i Z + 2t Z``."""
    x = np.asarray(roots, dtype=complex)
    d = x[:, None] - x[None, :]
    im = d.imag - 2 * np.round(d.imag / 2)
    re = d.real - 2 * dp.t * np.round(d.real / (2 * dp.t))
    dist = np.hypot(re, im)
    np.fill_diagonal(dist, np.inf)
    return bool(dist.min() > tol)


def _grid_default(dp):
    return (0.25, 0.5, 0.75), (0.0, 0.25, 0.5, 0.8, 1.0)


def solve(dp: DegeneratePoint, kind: str = "ground", k1_values=None, spreads=None, centers=None,
          deviations=(1e-3, 0.0), tol: float = 1e-10, max_iter: int = 50, first: bool = True):
    """Scan string-hypothesis seeds and refine them.

    Parameters
    ----------
    dp : DegeneratePoint
    kind : {"ground", "excited"}
    k1_values : iterable of int, optional
        Defaults to every allowed value.
    spreads, centers : iterable of float, optional
        Real-root spacing and string centre, in units of ``t``.
    deviations : iterable of float
        String-member offsets passed to :func:`seed_state`.
    first : bool
        Stop at the first admissible solution.

    Returns
    -------
    list of BetheState
        Converged states with lattice-distinct roots; duplicates (same energy)
        are removed.
    """
    top = 2 * dp.N if dp.boundary == "antiperiodic" else dp.N
    k1_values = range(1, top + 1) if k1_values is None else k1_values
    s_def, c_def = _grid_default(dp)
    spreads = s_def if spreads is None else spreads
    centers = c_def if centers is None else centers
    found = []
    energies = []
    for deviation, spread, center, k1 in itertools.product(deviations, spreads, centers, k1_values):
        try:
            seed = seed_state(dp, kind, k1, spread, center, deviation)
            st = refine_roots(seed, dp, max_iter=max_iter, tol=tol)
        except (ConvergenceError, PoleError, FloatingPointError):
            continue
        if not lattice_distinct(st.roots, dp):
            continue
        try:
            e = energy_from_roots(st, dp)
        except PoleError:
            continue
        if any(abs(e - e2) < 1e-8 for e2 in energies):
            continue
        st.meta.update(energy=e)
        found.append(st)
        energies.append(e)
        if first:
            break
    return found
