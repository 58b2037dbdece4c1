"""Exact diagonalization of the XYZ chain with antiperiodic or periodic closure.

The Hamiltonian is

.. math::

    H = \\frac12 \\sum_{j=1}^{N} \\left(J_x \\sigma^x_j\\sigma^x_{j+1}
        + J_y \\sigma^y_j\\sigma^y_{j+1} + J_z \\sigma^z_j\\sigma^z_{j+1}\\right)

with ``sigma_{N+1} = sigma_1`` (periodic) or ``sigma^a_{N+1} =
sigma^x_1 sigma^a_1 sigma^x_1`` (antiperiodic, which flips the sign of the
``yy`` and ``zz`` terms on the seam bond only).

Hermitian problems go through a matrix-free thick-restart Lanczos solver;
complex couplings (degenerate points with complex ``eta``) go through dense
diagonalization, limited to ``N <= 10``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._kernels import _apply_numpy, apply_bonds
from .elliptic import ThetaParams, theta00, theta01, theta10, theta_real_ext, strip_real
from .errors import ConvergenceError, DomainError, MemoryBudgetError, PoleError

__all__ = [
    "SpinChainConfig",
    "SpectrumResult",
    "couplings",
    "apply_hamiltonian",
    "dense_hamiltonian",
    "lanczos",
    "lowest_eigs",
    "distinct_levels",
    "excitation_gap_numeric",
    "couplings_ext",
    "rayleigh_quotient_ext",
    "refined_ground_level",
    "deviation",
]

BOUNDARIES = ("antiperiodic", "periodic")
_BC_ALIASES = {"anti": "antiperiodic", "antiperiodic": "antiperiodic", "per": "periodic", "periodic": "periodic"}

DEFAULT_MEMORY_BUDGET = 3.5 * 2**30
N_MAX_LANCZOS = 24
N_MAX_DENSE = 10


def normalize_boundary(bc: str) -> str:
    try:
        return _BC_ALIASES[bc]
    except KeyError:
        raise DomainError(f"unknown boundary {bc!r}; use one of {sorted(_BC_ALIASES)}") from None


@dataclass(frozen=True)
class SpinChainConfig:
    """Chain length, couplings and boundary condition.

    Parameters
    ----------
    N : int
        Number of sites, ``2 <= N <= 24``.
    Jx, Jy, Jz : float or complex
        Couplings.  Real couplings give a Hermitian operator.
    boundary : {"antiperiodic", "periodic"}
        ``"anti"`` and ``"per"`` are accepted as aliases.
    memory_budget : float
        Bytes available for Krylov storage.
    """

    N: int
    Jx: complex
    Jy: complex
    Jz: complex
    boundary: str = "antiperiodic"
    memory_budget: float = DEFAULT_MEMORY_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "boundary", normalize_boundary(self.boundary))
        if not 2 <= int(self.N) <= N_MAX_LANCZOS:
            raise DomainError(f"N must lie in [2, {N_MAX_LANCZOS}], got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        for name in ("Jx", "Jy", "Jz"):
            val = complex(getattr(self, name))
            if abs(val.imag) <= 1e-14 * max(1.0, abs(val)):
                object.__setattr__(self, name, val.real)
            else:
                object.__setattr__(self, name, val)
        vec_bytes = self.dim * (16 if not self.is_hermitian else 8)
        if 4 * vec_bytes > self.memory_budget:
            raise MemoryBudgetError(
                f"2^{self.N} amplitudes need at least {4 * vec_bytes / 2**30:.2f} GiB "
                f"of Krylov storage; budget is {self.memory_budget / 2**30:.2f} GiB"
            )

    @classmethod
    def from_eta(cls, N: int, eta, tau, boundary: str = "antiperiodic", p=None, **kw):
        """Build a configuration with couplings evaluated at ``(eta, tau)``."""
        jx, jy, jz = couplings(eta, tau, p)
        return cls(N, jx, jy, jz, boundary, **kw)

    @property
    def dim(self) -> int:
        return 1 << self.N

    @property
    def is_hermitian(self) -> bool:
        return all(isinstance(j, float) for j in (self.Jx, self.Jy, self.Jz))

    def bonds(self):
        """Bond tables ``(bit_a, bit_b, cx, cy, cz)`` for :func:`apply_bonds`."""
        N = self.N
        sites_a = np.arange(N)
        sites_b = (sites_a + 1) % N
        bit_a = (N - 1 - sites_a).astype(np.int64)
        bit_b = (N - 1 - sites_b).astype(np.int64)
        dtype = float if self.is_hermitian else complex
        cx = np.full(N, 0.5 * self.Jx, dtype=dtype)
        cy = np.full(N, 0.5 * self.Jy, dtype=dtype)
        cz = np.full(N, 0.5 * self.Jz, dtype=dtype)
        if self.boundary == "antiperiodic":
            cy[-1] = -cy[-1]
            cz[-1] = -cz[-1]
        return bit_a, bit_b, cx, cy, cz


@dataclass
class SpectrumResult:
    """Lowest part of a spectrum with its certification data.

    ``eigenvalues`` is sorted by real part.  For the Lanczos path these are
    the lowest *distinct* Ritz values (degenerate copies are not resolved);
    for the dense path the complete spectrum with multiplicity.
    """

    eigenvalues: np.ndarray
    residuals: np.ndarray
    iterations: int = 0
    matvecs: int = 0
    method: str = "lanczos"
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        ev = np.asarray(self.eigenvalues)
        if np.iscomplexobj(ev):
            values = [[float(z.real), float(z.imag)] for z in ev]
        else:
            values = [float(x) for x in ev]
        return {
            "eigenvalues": values,
            "residuals": [float(r) for r in self.residuals],
            "iterations": int(self.iterations),
            "matvecs": int(self.matvecs),
            "method": self.method,
            **({"meta": self.meta} if self.meta else {}),
        }


def couplings(eta, tau, p=None):
    """Couplings ``(Jx, Jy, Jz)`` as theta-function ratios.

    ``Jx = theta01(eta)/theta01(0)``, ``Jy = theta00(eta)/theta00(0)``,
    ``Jz = theta10(eta)/theta10(0)``.  For real ``eta`` and purely imaginary
    ``tau`` the imaginary residue is checked and stripped.

    Parameters
    ----------
    eta : complex
    tau : complex
    p : ThetaParams, optional
        Truncation policy; ``p.tau`` must equal ``tau`` when given.
    """
    if p is None:
        p = ThetaParams(complex(tau))
    elif abs(complex(p.tau) - complex(tau)) > 0:
        raise DomainError("ThetaParams.tau does not match tau")
    eta = complex(eta)
    out = []
    for fn in (theta01, theta00, theta10):
        den = fn(0.0, p)
        if abs(den) == 0:
            raise PoleError("theta function vanishes at the origin")
        out.append(complex(fn(eta, p) / den))
    if abs(eta.imag) == 0 and abs(complex(tau).real) == 0:
        return tuple(strip_real(j, "coupling") for j in out)
    return tuple(out)


def couplings_ext(eta: float, t: float):
    """Real couplings at ``tau = i t`` as ``np.longdouble`` values."""
    out = []
    for b, a in ((0.5, 0.0), (0.0, 0.0), (0.0, 0.5)):
        out.append(theta_real_ext(a, b, eta, t) / theta_real_ext(a, b, 0.0, t))
    return tuple(out)


def rayleigh_quotient_ext(v, cfg: SpinChainConfig, J=None):
    """``<v|H|v> / <v|v>`` accumulated in ``np.longdouble``.

    For a Ritz vector with residual ``r`` the quotient is off the eigenvalue
    by ``O(r^2 / gap)``, so rounding of the double-precision matvec is the
    only thing this removes.  ``J`` overrides the (double) couplings of
    ``cfg`` with extended ones.
    """
    if not cfg.is_hermitian:
        raise DomainError("extended Rayleigh quotient needs real couplings")
    bit_a, bit_b, cx, cy, cz = cfg.bonds()
    if J is not None:
        ext = [np.full(cfg.N, np.longdouble(j) / 2, dtype=np.longdouble) for j in J]
        if cfg.boundary == "antiperiodic":
            ext[1][-1] = -ext[1][-1]
            ext[2][-1] = -ext[2][-1]
        cx, cy, cz = ext
    else:
        cx, cy, cz = (c.astype(np.longdouble) for c in (cx, cy, cz))
    x = np.asarray(v, dtype=np.longdouble)
    hx = _apply_numpy(x, np.empty_like(x), bit_a, bit_b, cx, cy, cz)
    return np.sum(x * hx) / np.sum(x * x)


def refined_ground_level(N: int, eta: float, tau, boundary: str = "antiperiodic", *,
                         tol: float = 1e-10, seed: int = 0):
    """Lowest eigenvalue for real ``eta`` and ``tau = i t``, as ``np.longdouble``.

    Lanczos in double precision supplies the ground vector; its Rayleigh
    quotient with extended-precision couplings gives the level to well
    below the double rounding of the matvec.
    """
    tau = complex(tau)
    if tau.real != 0 or complex(eta).imag != 0:
        raise DomainError("refined_ground_level needs real eta and imaginary tau")
    eta = float(np.real(eta))
    cfg = SpinChainConfig.from_eta(N, eta, tau, boundary)
    storage = (40 + 1 + 20 + 4) * cfg.dim * 8
    if storage > cfg.memory_budget:
        raise MemoryBudgetError(
            f"Lanczos storage {storage / 2**30:.2f} GiB exceeds budget "
            f"{cfg.memory_budget / 2**30:.2f} GiB"
        )
    bonds = cfg.bonds()
    buf = np.empty(cfg.dim)
    _, Y, _, _, _ = lanczos(lambda v: apply_bonds(v, *bonds, out=buf).copy(), cfg.dim, 1,
                            ncv=40, tol=tol, seed=seed)
    return rayleigh_quotient_ext(Y[:, 0], cfg, couplings_ext(eta, tau.imag))


def apply_hamiltonian(v, cfg: SpinChainConfig, out=None, use_numba=None):
    """Matrix-free ``H v``.

    Parameters
    ----------
    v : ndarray, shape (2**N,)
    cfg : SpinChainConfig
    out : ndarray, optional
        Preallocated output buffer of matching dtype.
    use_numba : bool, optional
        Override the package backend for this call.
    """
    v = np.asarray(v)
    if v.shape != (cfg.dim,):
        raise DomainError(f"state has shape {v.shape}, expected ({cfg.dim},)")
    return apply_bonds(v, *cfg.bonds(), out=out, use_numba=use_numba)


def dense_hamiltonian(cfg: SpinChainConfig) -> np.ndarray:
    """Explicit ``2^N x 2^N`` matrix, assembled by applying ``H`` to basis vectors."""
    if cfg.N > N_MAX_DENSE:
        raise DomainError(f"dense assembly limited to N <= {N_MAX_DENSE}")
    dim = cfg.dim
    dtype = float if cfg.is_hermitian else complex
    eye = np.eye(dim, dtype=dtype)
    bonds = cfg.bonds()
    cols = [apply_bonds(eye[:, s], *bonds) for s in range(dim)]
    return np.stack(cols, axis=1)


def _random_start(dim: int, dtype, rng) -> np.ndarray:
    v = rng.standard_normal(dim)
    if np.dtype(dtype).kind == "c":
        v = v + 1j * rng.standard_normal(dim)
    return (v / np.linalg.norm(v)).astype(dtype)


def lanczos(matvec, dim: int, k: int = 1, *, ncv=None, tol: float = 1e-10,
            max_restarts: int = 500, seed: int = 0, dtype=float):
    """Thick-restart Lanczos for the lowest eigenvalues of a Hermitian operator.

    Every new Krylov vector is orthogonalized twice against the whole basis.
    After each sweep the lowest ``p`` Ritz vectors are kept together with the
    residual direction (Krylov-Schur restart), so the projected matrix stays
    an arrowhead-plus-tridiagonal Hermitian matrix.

    Parameters
    ----------
    matvec : callable
        ``v -> A v``.
    dim : int
        Problem dimension.
    k : int
        Number of eigenvalues to certify.
    ncv : int, optional
        Basis size; defaults to ``max(2k + 24, 40)`` capped by ``dim``.
    tol : float
        Required residual norm ``||A y - theta y||`` for each certified pair.
    max_restarts : int
    seed : int
        Seed for the random start vector.

    Returns
    -------
    values : ndarray
        ``k + 4`` (or fewer, for tiny problems) lowest Ritz values; the first
        ``k`` are certified.
    vectors : ndarray, shape (dim, k)
    residuals : ndarray
        Explicit residual norms of the certified pairs.
    matvecs : int
    restarts : int
    """
    rng = np.random.default_rng(seed)
    n_want = min(k + 4, dim)
    if ncv is None:
        ncv = max(2 * n_want + 16, 40)
    ncv = min(int(ncv), dim)
    if ncv < n_want:
        raise DomainError("ncv smaller than the number of requested pairs")
    keep = min(max(n_want, ncv // 2), ncv - 1) if ncv > 1 else 0

    V = np.zeros((ncv + 1, dim), dtype=dtype)
    H = np.zeros((ncv + 1, ncv), dtype=dtype)
    V[0] = _random_start(dim, dtype, rng)
    p = 0
    matvecs = 0
    tiny = np.finfo(float).eps * 16

    for restart in range(max_restarts + 1):
        m = ncv
        for j in range(p, ncv):
            w = np.asarray(matvec(V[j]), dtype=dtype)
            matvecs += 1
            basis = V[: j + 1]
            h = basis.conj() @ w
            w = w - h @ basis
            h2 = basis.conj() @ w
            w = w - h2 @ basis
            h = h + h2
            H[: j + 1, j] = h
            beta = np.linalg.norm(w)
            H[j + 1, j] = beta
            if beta <= tiny * max(1.0, np.abs(h).max()):
                m = j + 1
                break
            V[j + 1] = w / beta
        T = H[:m, :m]
        T = 0.5 * (T + T.conj().T)
        theta, S = np.linalg.eigh(T)
        beta = abs(H[m, m - 1])
        est = beta * np.abs(S[m - 1, :])
        done = m < ncv or np.all(est[:k] < 0.1 * tol)
        if done or restart == max_restarts:
            nv = min(n_want, m)
            Y = (S[:, :k].T @ V[:m]).T
            res = np.array([
                np.linalg.norm(np.asarray(matvec(Y[:, i])) - theta[i] * Y[:, i])
                for i in range(min(k, m))
            ])
            matvecs += len(res)
            if np.all(res < tol):
                return theta[:nv], Y, res, matvecs, restart
            if restart == max_restarts:
                raise ConvergenceError(
                    f"Lanczos did not certify {k} pairs after {max_restarts} restarts",
                    residual=float(res.max()),
                )
            # explicit residual above estimate: keep iterating
        p = keep
        Vk = S[:, :p].T @ V[:m]
        tail = V[m].copy()
        V[:p] = Vk
        V[p] = tail
        H[:] = 0
        H[np.arange(p), np.arange(p)] = theta[:p]
        H[p, :p] = beta * S[m - 1, :p]
    raise ConvergenceError("unreachable")  # pragma: no cover


def distinct_levels(values, rtol: float = 1e-8) -> np.ndarray:
    """Collapse numerically equal eigenvalues (sorted input) to single entries."""
    vals = np.sort(np.asarray(values))
    out = []
    for x in vals:
        if not out or abs(x - out[-1]) > rtol * max(1.0, abs(x)):
            out.append(x)
    return np.array(out)


def _dense_result(cfg: SpinChainConfig, k: int) -> SpectrumResult:
    H = dense_hamiltonian(cfg)
    if cfg.is_hermitian:
        vals, vecs = scipy.linalg.eigh(H)
        res = np.linalg.norm(H @ vecs - vecs * vals, axis=0)
    else:
        vals, vecs = scipy.linalg.eig(H)
        order = np.lexsort((vals.imag, vals.real))
        vals, vecs = vals[order], vecs[:, order]
        res = np.linalg.norm(H @ vecs - vecs * vals, axis=0) / np.linalg.norm(vecs, axis=0)
    return SpectrumResult(vals, res, iterations=1, matvecs=cfg.dim, method="dense")


def lowest_eigs(cfg: SpinChainConfig, k: int = 1, *, dense: bool = False, tol: float = 1e-10,
                seed: int = 0, ncv=None, max_restarts: int = 500) -> SpectrumResult:
    """Lowest eigenvalues of the chain.

    Hermitian configurations use :func:`lanczos` on the matrix-free operator
    and return the ``k`` lowest distinct levels.  Complex couplings (or
    ``dense=True``) assemble the full matrix and keep the whole spectrum.

    Raises
    ------
    DomainError
        Dense path requested with ``N > 10``.
    ConvergenceError
        Residual certification failed.
    """
    if k < 1:
        raise DomainError("k must be positive")
    if dense or not cfg.is_hermitian:
        if cfg.N > N_MAX_DENSE:
            raise DomainError(
                f"non-Hermitian or dense diagonalization needs N <= {N_MAX_DENSE}"
            )
        return _dense_result(cfg, k)
    if ncv is None:
        ncv = max(2 * (k + 4) + 16, 40)
    storage = (ncv + 1 + ncv // 2 + 4) * cfg.dim * 8
    if storage > cfg.memory_budget:
        raise MemoryBudgetError(
            f"Lanczos storage {storage / 2**30:.2f} GiB exceeds budget "
            f"{cfg.memory_budget / 2**30:.2f} GiB"
        )
    bonds = cfg.bonds()
    buf = np.empty(cfg.dim)

    def matvec(v):
        return apply_bonds(v, *bonds, out=buf).copy()

    # A single start vector sees each degenerate eigenspace once, but once the
    # Krylov space covers the whole (small) Hilbert space, or rounding seeds
    # a second copy, duplicates occupy certified slots.  Widen until k
    # distinct levels are certified.
    n_req, nmv, restarts = k, 0, 0
    while True:
        vals, _, res, mv, rs = lanczos(matvec, cfg.dim, n_req, ncv=max(ncv, min(2 * n_req + 16, cfg.dim)),
                                       tol=tol, max_restarts=max_restarts, seed=seed)
        nmv += mv
        restarts += rs
        levels = distinct_levels(vals[: len(res)], rtol=1e-9)
        if len(levels) >= k or n_req >= cfg.dim:
            break
        n_req = min(2 * n_req + 2, cfg.dim)
    want = min(k, len(levels))
    # residual of the lowest copy of each distinct level
    firsts = [int(np.argmin(np.abs(vals[: len(res)] - lv))) for lv in levels[:want]]
    res = res[firsts]
    return SpectrumResult(levels[:want], res, iterations=restarts, matvecs=nmv,
                          method="lanczos")


def excitation_gap_numeric(cfg: SpinChainConfig, *, skip_doublet: bool = False,
                           doublet_tol: float = 0.5, **kw) -> float:
    """Gap from the ground level to the next distinct level.

    ``skip_doublet=True`` treats an exponentially split pair of lowest
    levels (closer than ``doublet_tol``) as one ground manifold.
    """
    res = lowest_eigs(cfg, k=3 if skip_doublet else 2, **kw)
    ev = np.real(res.eigenvalues)
    if skip_doublet and ev[1] - ev[0] < doublet_tol:
        return float(ev[2] - ev[0])
    return float(ev[1] - ev[0])


def deviation(analytic, numeric) -> float:
    """Relative deviation ``analytic/numeric - 1``."""
    if numeric == 0:
        raise PoleError("numeric reference energy is zero")
    return analytic / numeric - 1
