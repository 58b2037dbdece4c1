"""Table reproduction, finite-size scaling fits and result emission."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import optimize

from . import __version__
from .ed import SpinChainConfig, deviation, lowest_eigs, normalize_boundary, refined_ground_level
from .errors import ConsistencyError, DomainError
from .thermo import ThermoParams, ground_energy_ext

__all__ = [
    "EnergyReport",
    "FitResult",
    "table_run",
    "fit",
    "gap_numeric",
    "scaling_experiment",
    "SCALING_KINDS",
    "to_csv",
    "to_json",
    "fmt_float",
]

# kind -> (boundary, parity, quantity, model)
SCALING_KINDS = {
    "odd_dev": ("antiperiodic", "odd", "deviation", "exponential"),
    "even_dev": ("antiperiodic", "even", "deviation", "exponential"),
    "odd_gap": ("antiperiodic", "odd", "gap", "power"),
    "even_gap": ("antiperiodic", "even", "gap", "power_offset"),
    "per_odd_dev": ("periodic", "odd", "deviation", "power"),
    "per_odd_gap": ("periodic", "odd", "gap", "power"),
    "per_even_gap": ("periodic", "even", "gap", "power_offset"),
}

MODELS = ("exponential", "power", "power_offset")


def fmt_float(x, kind: str = "general") -> str:
    """Fixed textual formats: energies at 11 decimals, deviations ``%.8e``, else 12 significant digits."""
    x = float(x)
    if kind == "energy":
        return f"{x:.11f}"
    if kind == "deviation":
        return f"{x:.8e}"
    return f"{x:.12g}"


@dataclass
class EnergyReport:
    """One table row."""

    N: int
    E_bar: float
    E_analytic: float
    delta: float
    boundary: str = "antiperiodic"

    def row(self) -> dict:
        return {
            "N": str(self.N),
            "E_bar": fmt_float(self.E_bar, "energy"),
            "E_analytic": fmt_float(self.E_analytic, "energy"),
            "delta": fmt_float(self.delta, "deviation"),
        }


@dataclass
class FitResult:
    """Least-squares fit of a finite-size law.

    ``sse`` is the sum of squared residuals in the original ``y`` variable.
    """

    model: str
    alpha: float
    beta: float
    epsilon: float = 0.0
    sse: float = float("nan")
    n_range: tuple = ()
    n_points: int = 0

    def predict(self, N):
        N = np.asarray(N, dtype=float)
        if self.model == "exponential":
            return self.alpha * np.exp(self.beta * N)
        return self.alpha * N**self.beta + self.epsilon

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_range"] = list(self.n_range)
        for k in ("alpha", "beta", "epsilon", "sse"):
            d[k] = float(fmt_float(d[k]))
        return d


def _check_parity(N_list, parity):
    want = {"odd": 1, "even": 0}.get(parity)
    if want is None:
        raise DomainError(f"parity must be 'odd' or 'even', got {parity!r}")
    bad = [N for N in N_list if N % 2 != want]
    if bad:
        raise DomainError(f"N values {bad} do not have {parity} parity")


def table_run(parity: str, boundary: str, eta: float, tau, N_list, *, tol: float = 1e-10,
              seed: int = 0, k_max=None) -> list:
    """Analytic and Lanczos ground-state energies with their deviation, sorted by ``N``.

    Both energies and the deviation are formed in extended precision and
    rounded to float at the end: the deviation is a difference of nearly
    equal numbers, and at large ``N`` its printed digits sit at the
    double-precision rounding level of the energies.
    """
    boundary = normalize_boundary(boundary)
    N_list = sorted(int(N) for N in N_list)
    _check_parity(N_list, parity)
    p = ThermoParams(eta, tau, k_max=k_max)
    out = []
    for N in N_list:
        E = ground_energy_ext(N, p, boundary)
        Ebar = refined_ground_level(N, eta, tau, boundary, tol=tol, seed=seed)
        out.append(EnergyReport(N, float(Ebar), float(E), float(deviation(E, Ebar)), boundary))
    return out


def _loglin(x, y):
    A = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(A, np.log(y), rcond=None)
    return math.exp(coef[0]), float(coef[1])


def fit(points, model: str) -> FitResult:
    """Fit ``(N, y)`` points.

    ``exponential``: ``alpha exp(beta N)`` by least squares on ``(N, ln y)``.
    ``power``: ``alpha N^beta`` by least squares on ``(ln N, ln y)``.
    ``power_offset``: ``alpha N^beta + epsilon``; for each trial ``epsilon``
    in ``[0, min y)`` the power law is fitted to ``y - epsilon``, and
    ``epsilon`` minimizes the total squared residual (grid bracket, then
    golden-section refinement).
    """
    if model not in MODELS:
        raise DomainError(f"model must be one of {MODELS}")
    pts = sorted((float(N), float(y)) for N, y in points)
    need = 4 if model == "power_offset" else 3
    if len(pts) < need:
        raise DomainError(f"{model} fit needs at least {need} points")
    N = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.ptp(y) == 0:
        raise DomainError("constant data cannot be fitted")
    if model != "power_offset" and np.any(y <= 0):
        raise DomainError(f"{model} fit requires positive data")
    if model in ("power", "power_offset") and np.any(N <= 0):
        raise DomainError("power laws need positive N")
    rng = (int(N.min()), int(N.max()))

    if model == "exponential":
        a, b = _loglin(N, y)
        r = FitResult(model, a, b, 0.0, float(np.sum((y - a * np.exp(b * N)) ** 2)), rng, len(N))
        return r
    if model == "power":
        a, b = _loglin(np.log(N), y)
        return FitResult(model, a, b, 0.0, float(np.sum((y - a * N**b) ** 2)), rng, len(N))

    top = float(y.min())
    if top <= 0:
        raise DomainError("power_offset fit requires min(y) > 0")

    def sse(eps):
        a, b = _loglin(np.log(N), y - eps)
        return float(np.sum((y - a * N**b - eps) ** 2))

    grid = top * (1 - np.geomspace(1, 1e-9, 400))
    vals = np.array([sse(e) for e in grid])
    i = int(np.argmin(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    if lo < grid[i] < hi:
        res = optimize.minimize_scalar(sse, bracket=(lo, grid[i], hi), method="golden",
                                       options={"xtol": 1e-12})
        eps = float(res.x) if res.fun <= vals[i] else float(grid[i])
    else:
        eps = float(grid[i])
    a, b = _loglin(np.log(N), y - eps)
    return FitResult(model, a, b, eps, sse(eps), rng, len(N))


def gap_numeric(N: int, eta: float, tau, boundary: str, *, tol: float = 1e-10, seed: int = 0) -> float:
    """Finite-chain gap from the ground level to the first excited level.

    Levels are distinct eigenvalues: exact degeneracies are merged.  For the
    periodic even chain the two lowest levels form an exponentially split
    doublet (the finite-size image of a degenerate ground state), so the gap
    is measured from the doublet to the level above it.
    """
    boundary = normalize_boundary(boundary)
    cfg = SpinChainConfig.from_eta(N, eta, tau, boundary)
    doublet = boundary == "periodic" and N % 2 == 0
    ev = np.real(lowest_eigs(cfg, 3 if doublet else 2, tol=tol, seed=seed).eigenvalues)
    return float(ev[2] - ev[0]) if doublet else float(ev[1] - ev[0])


def scaling_experiment(kind: str, eta: float, tau, N_list, *, tol: float = 1e-10, seed: int = 0,
                       k_max=None):
    """Finite-size data for one figure-style experiment and its fit.

    Returns
    -------
    points : list of (N, y)
    result : FitResult
    """
    try:
        boundary, parity, quantity, model = SCALING_KINDS[kind]
    except KeyError:
        raise DomainError(f"unknown kind {kind!r}; choose from {sorted(SCALING_KINDS)}") from None
    N_list = sorted(int(N) for N in N_list)
    _check_parity(N_list, parity)
    if quantity == "deviation":
        rows = table_run(parity, boundary, eta, tau, N_list, tol=tol, seed=seed, k_max=k_max)
        points = [(r.N, r.delta) for r in rows]
    else:
        points = [(N, gap_numeric(N, eta, tau, boundary, tol=tol, seed=seed)) for N in N_list]
    result = fit(points, model)
    if not result.beta < 0:
        # every experiment here describes a quantity decaying with N
        raise ConsistencyError(f"{kind}: fitted beta={result.beta:.4g} is not negative")
    return points, result


def to_csv(header, rows) -> str:
    """CSV text with a header row and LF line endings."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([r[h] for h in header])
    return buf.getvalue()


def to_json(command: str, params: dict, data, seed: int = 0, extra=None) -> str:
    """One JSON object with a ``meta`` block and a ``data`` array."""
    obj = {
        "meta": {"command": command, "parameters": params, "version": __version__, "seed": seed},
        "data": data,
    }
    if extra:
        obj.update(extra)
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
