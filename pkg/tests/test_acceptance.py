"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly as
``python3 tests/test_acceptance.py``.  Every criterion is a plain function
returning its sub-checks, so both entry points share the same code.
"""
from __future__ import annotations

import math
import sys
import time
from fractions import Fraction as F

import numpy as np
import pytest

from xyzchain.bae import (
    DegeneratePoint,
    energy_from_roots,
    fourier_A,
    fourier_a,
    kernel_A,
    kernel_a,
    residual_norm,
    solve,
    vartheta,
)
from xyzchain.ed import SpinChainConfig, lowest_eigs
from xyzchain.elliptic import ThetaParams, theta00, theta01, theta10, theta11
from xyzchain.harness import scaling_experiment, fit, table_run
from xyzchain.strings import charge_for, scf_expand, string_structure
from xyzchain.thermo import ThermoParams, e0, eps_hole, xxz_e0

ETA_T = 0.4
TAU = 0.5j
ETA_S = math.sqrt(2) / 4

# printed columns: N -> (E_bar, E_analytic, delta / scale)
TABLE2 = {
    5: (-4.24631809, -4.25772417, 2.68611098),
    7: (-6.58795792, -6.59092288, 0.45005755),
    9: (-8.92330609, -8.92412158, 0.09138932),
    11: (-11.25708902, -11.25732029, 0.02054430),
    13: (-13.59045214, -13.59051899, 0.00491948),
    15: (-15.92369811, -15.92371770, 0.00122998),
    17: (-18.25691061, -18.25691640, 0.00031735),
    19: (-20.59011338, -20.59011511, 0.00008386),
    21: (-22.92331330, -22.92331381, 0.00002258),
}
TABLE3 = {
    4: (-4.66414993812, -4.66639740988, 4.81860959229),
    6: (-6.99945302886, -6.99959611482, 0.20442450017),
    8: (-9.33278427176, -9.33279481977, 0.01130210061),
    10: (-11.66599268867, -11.66599352471, 0.00071664895),
    12: (-13.99919216041, -13.99919222965, 0.00004945726),
    14: (-16.33239092868, -16.33239093459, 0.00000361594),
    16: (-18.66558963902, -18.66558963953, 0.00000027571),
    18: (-20.99878834443, -20.99878834447, 0.00000002169),
    20: (-23.33198704941, -23.33198704941, 0.00000000174),
}
TABLE4 = {
    5: (-4.0730, -4.2577, 4.5353),
    7: (-6.4903, -6.5909, 1.5507),
    9: (-8.8616, -8.9241, 0.7057),
    11: (-11.2149, -11.2573, 0.3779),
    13: (-13.5600, -13.5905, 0.2253),
    15: (-15.9007, -15.9237, 0.1449),
    17: (-18.2389, -18.2569, 0.0986),
    19: (-20.5757, -20.5901, 0.0701),
}
TABLE1_N = [1, 2, 3, 4, 5, 6, 1, 8, 15, 7, 29, 51, 22, 73]
TABLE1_V = [1, 1, 1, 1, 1, 1, -1, 1, -1, 1, -1, 1, 1, -1]
TABLE1_Q = [F(63, 10), F(53, 10), F(43, 10), F(33, 10), F(23, 10), F(13, 10), F(-1),
            F(-7, 10), F(-4, 10), F(3, 10), F(2, 10), F(1, 10), F(-1, 10), F(0)]
TABLE1_Z = (0, 7, 10, 13)

GAP_TARGET = 2.54881


class Check:
    """Collects named sub-checks of one criterion."""

    def __init__(self):
        self.items = []

    def add(self, name: str, ok: bool, detail: str = ""):
        self.items.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def line(self, label: str) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'}  {label}"
        parts = [f"{n}{'' if ok else ' [FAIL]'}{': ' + d if d else ''}" for n, ok, d in self.items]
        return head + "\n      " + "\n      ".join(parts)


def _table_check(chk, rows, table, scale, tol_bar, tol_an, tol_dev):
    """Compare computed rows with a printed table; tolerances may depend on N."""
    for col, idx, tol in (("E_bar", 1, tol_bar), ("E_analytic", 2, tol_an), ("delta", 3, tol_dev)):
        worst, bad = 0.0, []
        for r in rows:
            got = (r.E_bar, r.E_analytic, r.delta / scale)[idx - 1]
            err = abs(got - table[r.N][idx - 1])
            worst = max(worst, err)
            if err > tol(r.N):
                bad.append(r.N)
        detail = f"max err {worst:.2e}" + (f", outside at N={bad}" if bad else "")
        chk.add(col, not bad, detail)


# -- criteria ----------------------------------------------------------------

def criterion_1():
    chk = Check()
    t0 = time.perf_counter()
    rows = table_run("odd", "anti", ETA_T, TAU, sorted(TABLE2))
    dt = time.perf_counter() - t0
    half = 0.5e-8
    _table_check(chk, rows, TABLE2, 1e-3, lambda N: half, lambda N: half, lambda N: half)
    chk.add("runtime < 300 s", dt < 300, f"{dt:.1f} s")
    return chk


def criterion_2():
    chk = Check()
    t0 = time.perf_counter()
    rows = table_run("even", "anti", ETA_T, TAU, sorted(TABLE3))
    dt = time.perf_counter() - t0
    # Lanczos column: 11 decimals, relaxed to 9 at large N (N >= 14)
    _table_check(chk, rows, TABLE3, 1e-4,
                 lambda N: 0.5e-11 if N < 14 else 0.5e-9,
                 lambda N: 0.5e-11,
                 lambda N: 0.5e-11)
    chk.add("runtime < 300 s", dt < 300, f"{dt:.1f} s")
    return chk


def criterion_3():
    chk = Check()
    t0 = time.perf_counter()
    rows = table_run("odd", "per", ETA_T, TAU, sorted(TABLE4))
    dt = time.perf_counter() - t0
    half = 0.5e-4
    _table_check(chk, rows, TABLE4, 1e-2, lambda N: half, lambda N: half, lambda N: half)
    chk.add("runtime < 180 s", dt < 180, f"{dt:.1f} s")
    return chk


def criterion_4():
    chk = Check()
    t0 = time.perf_counter()
    specs = string_structure(5, 73)
    cf = scf_expand(10, 73)
    dt = time.perf_counter() - t0
    chk.add("n_j", [s.n for s in specs] == TABLE1_N)
    chk.add("v_j", [s.v for s in specs] == TABLE1_V)
    chk.add("q_j", [s.q for s in specs] == TABLE1_Q)
    chk.add("z_s", tuple(cf.z) == TABLE1_Z, str(tuple(cf.z)))
    chk.add("runtime < 1 s", dt < 1, f"{dt:.3f} s")
    return chk


def criterion_5():
    chk = Check()
    t0 = time.perf_counter()
    p = ThermoParams(ETA_S, TAU)
    gap = 2 * eps_hole(p.t, p)
    chk.add("2 eps_hole(t) = 2.54881 +- 5e-5", abs(gap - GAP_TARGET) < 5e-5, f"{gap:.10f}")
    for kind in ("even_gap", "per_even_gap"):
        _, res = scaling_experiment(kind, ETA_S, TAU, list(range(8, 19, 2)))
        chk.add(f"{kind} power_offset eps within 0.02", abs(res.epsilon - gap) < 0.02,
                f"eps={res.epsilon:.4f}, beta={res.beta:.3f}")
    dt = time.perf_counter() - t0
    chk.add("runtime < 600 s", dt < 600, f"{dt:.1f} s")
    return chk


def criterion_6():
    chk = Check()
    t0 = time.perf_counter()
    data = {
        "odd_dev": list(range(5, 22, 2)),
        "even_dev": list(range(4, 17, 2)),
        "odd_gap": list(range(5, 20, 2)),
        "per_odd_gap": list(range(5, 20, 2)),
    }
    for kind, Ns in data.items():
        points, res = scaling_experiment(kind, ETA_S, TAU, Ns)
        rival = "power" if res.model == "exponential" else "exponential"
        other = fit(points, rival)
        chk.add(f"{kind} {res.model} beta < 0", res.beta < 0, f"beta={res.beta:.3f}")
        chk.add(f"{kind} {res.model} preferred over {rival}", res.sse < other.sse,
                f"SSE {res.sse:.2e} vs {other.sse:.2e}")
    dt = time.perf_counter() - t0
    chk.add("runtime", True, f"{dt:.1f} s")
    return chk


def criterion_7():
    chk = Check()
    t0 = time.perf_counter()
    for N in (5, 4):
        dp = DegeneratePoint(1, N, TAU)
        found = solve(dp)
        if not found:
            chk.add(f"N={N} solution found", False)
            continue
        st = found[0]
        res = residual_norm(st, dp)
        E = energy_from_roots(st, dp)
        cfg = SpinChainConfig.from_eta(dp.N, dp.eta, dp.tau, dp.boundary)
        ev = lowest_eigs(cfg, 1, dense=True).eigenvalues
        dist = float(np.min(np.abs(ev - E)))
        chk.add(f"N={N} residual < 1e-9", res < 1e-9, f"{res:.1e} (k1={st.k1})")
        chk.add(f"N={N} energy matches dense within 1e-7", dist < 1e-7,
                f"E={E.real:.10f}{E.imag:+.10f}i, dist {dist:.1e}")
    dt = time.perf_counter() - t0
    chk.add("runtime < 60 s", dt < 60, f"{dt:.1f} s")
    return chk


def criterion_8():
    chk = Check()
    t0 = time.perf_counter()
    v = xxz_e0(0.5)
    chk.add("xxz_e0(1/2) = -2/pi", abs(v + 2 / math.pi) < 1e-10, f"err {abs(v + 2 / math.pi):.1e}")
    for eta in (0.2, 0.3, 0.4):
        d = abs(e0(ThermoParams(eta, 20j)) - xxz_e0(eta))
        chk.add(f"|e0 - xxz_e0| at eta={eta}", d < 1e-8, f"{d:.1e}")
    ts = [0.5, 1, 2, 5, 10, 20]
    for eta in (0.2, 0.3, 0.4):
        vals = [eps_hole(t, ThermoParams(eta, t * 1j)) for t in ts]
        # decreasing until it reaches the rounding floor
        mono = all(b < a or abs(b) < 1e-13 for a, b in zip(vals, vals[1:]))
        chk.add(f"eps_hole(t) -> 0 at eta={eta}", mono and abs(vals[-1]) < 1e-13,
                f"{vals[0]:.3g} ... {vals[-1]:.1e}")
    dt = time.perf_counter() - t0
    chk.add("runtime < 30 s", dt < 30, f"{dt:.1f} s")
    return chk


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def _gauss(f, a, b, n=400):
    x, w = np.polynomial.legendre.leggauss(n)
    y = 0.5 * (b - a) * x + 0.5 * (b + a)
    return 0.5 * (b - a) * np.sum(w * f(y))


def _singular(sj, sr, dp):
    # constituent kernels with n 2m/N integral and odd shift have real-axis poles
    v = sj.v * sr.v
    d = abs(sj.n - sr.n)
    lengths = [sj.n + sr.n, d] + [d + 2 * k for k in range(1, min(sj.n, sr.n))]
    return any(n and (charge_for(n, v, dp.m, dp.N) * dp.ratio) % 2 == 1 for n in lengths)


def criterion_9():
    chk = Check()
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst_q = worst_p = 0.0
    for tau in (0.5j, 1j, 2j):
        p = ThetaParams(tau)
        for _ in range(100):
            u = rng.uniform(-1, 1) + 1j * rng.uniform(0, tau.imag)
            f11, f10, f00, f01 = (f(u, p) for f in (theta11, theta10, theta00, theta01))
            w = np.exp(-1j * np.pi * tau - 2j * np.pi * u)
            worst_q = max(worst_q,
                          _rel(theta11(u + 1, p), -f11), _rel(theta10(u + 1, p), -f10),
                          _rel(theta00(u + 1, p), f00), _rel(theta01(u + 1, p), f01),
                          _rel(theta11(u + tau, p), -w * f11), _rel(theta10(u + tau, p), w * f10),
                          _rel(theta00(u + tau, p), w * f00), _rel(theta01(u + tau, p), -w * f01))
            worst_p = max(worst_p, _rel(theta11(-u, p), -f11), _rel(theta10(-u, p), f10),
                          _rel(theta00(-u, p), f00), _rel(theta01(-u, p), f01))
    chk.add("theta quasi-periodicity < 1e-12", worst_q < 1e-12, f"{worst_q:.1e}")
    chk.add("theta parity < 1e-12", worst_p < 1e-12, f"{worst_p:.1e}")

    bad, count = 0, 0
    for N in range(4, 501):
        for m in range(1, N // 4 + 1):
            p0 = F(N, 2 * m)
            count += 1
            bad += any(s.q != s.w * p0 - s.n for s in string_structure(m, N))
    chk.add("q/omega identity for all N <= 500", bad == 0, f"{count} points, {bad} violations")

    dp = DegeneratePoint(2, 10, TAU)
    h = 1e-6
    worst_k = 0.0
    for s in dp.strings:
        for x in np.linspace(-0.45, 0.45, 19):
            fd = (vartheta(x + h, s, dp) - vartheta(x - h, s, dp)) / (4 * np.pi * h)
            worst_k = max(worst_k, abs(fd - kernel_a(x, s, dp)))
    chk.add("kernel vs derivative < 1e-6", worst_k < 1e-6, f"{worst_k:.1e}")

    s1 = dp.strings[0]
    v_err = abs(vartheta(0.3, s1, dp) - 2 * np.pi * _gauss(lambda x: kernel_a(x, s1, dp), 0.0, 0.3))
    z_err = abs(_gauss(lambda x: kernel_a(x, s1, dp), -dp.t, dp.t) - fourier_a(0, s1, dp))
    chk.add("vartheta vs kernel quadrature < 1e-8", v_err < 1e-8, f"{v_err:.1e}")
    chk.add("a_1 zero mode vs quadrature < 1e-8", z_err < 1e-8, f"{z_err:.1e}")
    worst_f, checked, skipped = 0.0, 0, 0
    for sj in dp.strings:
        for sr in dp.strings:
            if _singular(sj, sr, dp):
                skipped += 1
                continue
            wgt = kernel_A(0.0, sj, sr, dp).delta_weight
            for k in range(0, 11):
                f = lambda x: kernel_A(x, sj, sr, dp).smooth * np.exp(-1j * k * np.pi * x / dp.t)
                worst_f = max(worst_f, abs(_gauss(f, -dp.t, dp.t) + wgt - fourier_A(k, sj, sr, dp)))
                checked += 1
    chk.add("Fourier vs quadrature < 1e-8 (|k| <= 10)", worst_f < 1e-8,
            f"{worst_f:.1e} over {checked} transforms, {skipped} real-axis-pole pairs excluded")
    dt = time.perf_counter() - t0
    chk.add("runtime < 120 s", dt < 120, f"{dt:.1f} s")
    return chk


CRITERIA = [
    (1, "Table 2 (odd N, antiperiodic)", criterion_1),
    (2, "Table 3 (even N, antiperiodic)", criterion_2),
    (3, "Table 4 (odd N, periodic)", criterion_3),
    (4, "Table 1 string structure at 2m/N = 10/73", criterion_4),
    (5, "gap value and power_offset offset", criterion_5),
    (6, "scaling laws: sign and model selection", criterion_6),
    (7, "Bethe roots vs dense spectrum", criterion_7),
    (8, "XXZ limit and gap closure", criterion_8),
    (9, "property suites", criterion_9),
]


@pytest.mark.slow
@pytest.mark.parametrize("num,label,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, label, fn, capsys):
    chk = fn()
    with capsys.disabled():
        print("\n" + chk.line(f"criterion {num}: {label}"))
    failed = [f"{n} ({d})" for n, ok, d in chk.items if not ok]
    assert not failed, "; ".join(failed)


if __name__ == "__main__":
    status = 0
    for num, label, fn in CRITERIA:
        chk = fn()
        print(chk.line(f"criterion {num}: {label}"), flush=True)
        status |= not chk.ok
    sys.exit(status)
