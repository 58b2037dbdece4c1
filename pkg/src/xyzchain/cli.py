"""Command-line interface.

Global options may precede or follow the subcommand::

    xyzchain [--tol T] [--kmax K] [--out {csv,json}] [--seed S] <command> ...

``bae solve`` has its own ``--seed {ground,excited}`` selecting the root
configuration; the global ``--seed`` is the random seed.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .bae import DegeneratePoint, energy_from_roots, residual_norm, solve
from .ed import SpinChainConfig, lowest_eigs, normalize_boundary
from .errors import XYZChainError
from .harness import (
    SCALING_KINDS,
    fit,
    fmt_float,
    scaling_experiment,
    table_run,
    to_csv,
    to_json,
)
from .strings import string_coordinates, string_structure
from .thermo import ThermoParams, e0, eps_hole, excitation_gap, ground_energy, xxz_e0, xxz_eps_hole

DEFAULT_TABLE_N = {
    ("odd", "antiperiodic"): list(range(5, 22, 2)),
    ("even", "antiperiodic"): list(range(4, 21, 2)),
    ("odd", "periodic"): list(range(5, 20, 2)),
    ("even", "periodic"): list(range(4, 21, 2)),
}
DEFAULT_SCALING_N = {
    "odd_dev": list(range(5, 22, 2)),
    "even_dev": list(range(4, 17, 2)),
    "odd_gap": list(range(5, 20, 2)),
    "even_gap": list(range(8, 19, 2)),
    "per_odd_dev": list(range(5, 20, 2)),
    "per_odd_gap": list(range(5, 20, 2)),
    "per_even_gap": list(range(8, 19, 2)),
}


def parse_complex(text: str) -> complex:
    """Parse ``0.5i``, ``0.4+0.1i``, ``0.5j`` and plain numbers."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    if s in ("j", "+j"):
        return 1j
    if s == "-j":
        return -1j
    return complex(s)


def parse_tau(text: str) -> complex:
    """Modulus; a bare real number ``t`` means ``tau = i t``."""
    z = parse_complex(text)
    if z.imag == 0:
        z = complex(0, z.real)
    return z


def parse_float_list(text: str) -> list:
    return [float(p) for p in text.split(",") if p.strip()]


def parse_N_list(text: str) -> list:
    """``5,7,9`` or ``5:21:2`` (inclusive range with step)."""
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(start, stop + 1, step))
    return [int(p) for p in text.split(",") if p]


def _cplx(z):
    z = complex(z)
    return [float(fmt_float(z.real)), float(fmt_float(z.imag))]


def _emit(args, command, params, rows, header=None, extra=None):
    if args.out == "csv" and header is not None:
        sys.stdout.write(to_csv(header, rows))
    else:
        sys.stdout.write(to_json(command, params, rows, seed=args.seed, extra=extra))


def cmd_strings(args):
    structure = string_structure(args.m, args.N)
    header = ["j", "n_j", "v_j", "q_j", "omega_j"]
    rows = [
        {"j": str(s.j), "n_j": str(s.n), "v_j": "+" if s.v > 0 else "-", "q_j": str(s.q), "omega_j": str(s.w)}
        for s in structure
    ]
    params = {"m": args.m, "N": args.N, "tau": _cplx(args.tau)}
    if args.coords is None:
        _emit(args, "strings", params, rows, header)
        return
    # root positions for plotting, at the antiperiodic degenerate point
    eta = (args.tau + 2 * args.m) / args.N
    coords = []
    for s in structure:
        for c in args.coords:
            for k, z in enumerate(string_coordinates(c, s, eta), start=1):
                coords.append({"j": str(s.j), "center": fmt_float(c), "k": str(k),
                               "re": fmt_float(z.real), "im": fmt_float(z.imag)})
    if args.out == "csv":
        sys.stdout.write(to_csv(["j", "center", "k", "re", "im"], coords))
    else:
        params["eta"] = _cplx(eta)
        sys.stdout.write(to_json("strings", params, rows, seed=args.seed, extra={"coords": coords}))


def cmd_bae(args):
    dp = DegeneratePoint(args.m, args.N, args.tau, args.bc)
    k1 = None if args.k1 is None else [args.k1]
    states = solve(dp, args.config, k1_values=k1, tol=args.tol)
    if not states:
        raise XYZChainError("no admissible Bethe state found in the seed scan")
    st = states[0]
    E = energy_from_roots(st, dp)
    cfg = SpinChainConfig.from_eta(dp.N, dp.eta, dp.tau, dp.boundary)
    spec = lowest_eigs(cfg, dense=True).eigenvalues
    match = spec[int(np.argmin(np.abs(spec - E)))]
    data = {
        "roots": [_cplx(x) for x in st.roots],
        "phi": _cplx(st.phi),
        "k1": st.k1,
        "residual_norm": float(f"{residual_norm(st, dp):.3e}"),
        "energy": _cplx(E),
        "ed_eigenvalue": _cplx(match),
        "ed_distance": float(f"{abs(match - E):.3e}"),
    }
    params = {"N": dp.N, "m": dp.m, "tau": _cplx(dp.tau), "bc": dp.boundary, "seed": args.config,
              "eta": _cplx(dp.eta)}
    sys.stdout.write(to_json("bae solve", params, [data], seed=args.seed))


def cmd_energy(args):
    boundary = normalize_boundary(args.bc)
    parity = "odd" if args.N % 2 else "even"
    if args.model == "xyz":
        p = ThermoParams(args.eta, args.tau, k_max=args.kmax)
        data = {
            "e0": e0(p),
            "eps_h_min": eps_hole(p.t, p),
            "E_ground": ground_energy(args.N, p, boundary),
            "gap": excitation_gap(p, parity, boundary),
        }
    else:
        d = xxz_e0(args.eta)
        data = {
            "e0": d,
            "eps_h_min": xxz_eps_hole(math.inf, args.eta),
            "E_ground": d * args.N,
            "gap": 0.0,
        }
    data = {k: float(fmt_float(v)) for k, v in data.items()}
    params = {"eta": args.eta, "tau": _cplx(args.tau), "N": args.N, "bc": boundary, "model": args.model}
    if args.out == "csv":
        sys.stdout.write(to_csv(list(data), [{k: fmt_float(v) for k, v in data.items()}]))
    else:
        sys.stdout.write(to_json("energy", params, [data], seed=args.seed))


def cmd_ed(args):
    cfg = SpinChainConfig.from_eta(args.N, args.eta, args.tau, args.bc)
    res = lowest_eigs(cfg, args.k, dense=args.dense, tol=args.tol, seed=args.seed)
    d = res.to_dict()
    if np.iscomplexobj(res.eigenvalues):
        d["eigenvalues"] = [_cplx(z) for z in res.eigenvalues]
    else:
        d["eigenvalues"] = [float(fmt_float(x)) for x in res.eigenvalues]
    d["residuals"] = [float(f"{r:.3e}") for r in res.residuals]
    params = {"N": args.N, "eta": _cplx(args.eta), "tau": _cplx(args.tau), "bc": cfg.boundary, "k": args.k,
              "dense": args.dense}
    sys.stdout.write(to_json("ed", params, [d], seed=args.seed))


def cmd_table(args):
    boundary = normalize_boundary(args.bc)
    Ns = args.N if args.N else DEFAULT_TABLE_N[(args.parity, boundary)]
    rows = table_run(args.parity, boundary, args.eta, args.tau, Ns, tol=args.tol, seed=args.seed,
                     k_max=args.kmax)
    params = {"parity": args.parity, "bc": boundary, "eta": args.eta, "tau": _cplx(args.tau), "N": Ns}
    _emit(args, "table", params, [r.row() for r in rows], ["N", "E_bar", "E_analytic", "delta"])


def cmd_scaling(args):
    Ns = args.N if args.N else DEFAULT_SCALING_N[args.kind]
    points, res = scaling_experiment(args.kind, args.eta, args.tau, Ns, tol=args.tol, seed=args.seed,
                                     k_max=args.kmax)
    rows = [{"N": str(N), "y": fmt_float(y)} for N, y in points]
    params = {"kind": args.kind, "eta": args.eta, "tau": _cplx(args.tau), "N": Ns}
    if args.out == "csv":
        sys.stdout.write(to_csv(["N", "y"], rows))
        fr = res.to_dict()
        # keep stdout pure CSV; the fit summary goes to stderr
        sys.stderr.write("fit " + ",".join(f"{k}={fr[k]}" for k in ("model", "alpha", "beta", "epsilon", "sse"))
                         + "\n")
    else:
        sys.stdout.write(to_json("scaling", params, rows, seed=args.seed, extra={"fit": res.to_dict()}))


def _read_points(path):
    import csv

    with open(path, newline="", encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    ycol = header.index("y") if "y" in header else 1
    ncol = header.index("N") if "N" in header else 0
    return [(float(r[ncol]), float(r[ycol])) for r in reader]


def cmd_fit(args):
    res = fit(_read_points(args.input), args.model)
    d = res.to_dict()
    if args.out == "csv":
        keys = ["model", "alpha", "beta", "epsilon", "sse"]
        sys.stdout.write(to_csv(keys, [{k: str(d[k]) for k in keys}]))
    else:
        sys.stdout.write(to_json("fit", {"model": args.model, "input": args.input}, [d], seed=args.seed))


def _add_globals(parser, seed: bool, defaults: bool):
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--tol", type=float, default=d(1e-10),
                        help="solver tolerance (Lanczos residual, Newton)")
    parser.add_argument("--kmax", type=int, default=d(None), help="Fourier cutoff (default: automatic)")
    parser.add_argument("--out", choices=("csv", "json"), default=d("json"))
    if seed:
        parser.add_argument("--seed", type=int, default=d(0), help="random seed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="xyzchain", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(ap, seed=True, defaults=True)
    # the same flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, seed=True, defaults=False)
    common_noseed = argparse.ArgumentParser(add_help=False)
    _add_globals(common_noseed, seed=False, defaults=False)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("strings", parents=[common], help="string lengths, parities and charges at 2m/N")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--tau", type=parse_tau, default=1j, help="modulus used for --coords")
    p.add_argument("--coords", type=parse_float_list, default=None, metavar="CENTER_LIST",
                   help="comma-separated string centres; emit root coordinates")
    p.set_defaults(func=cmd_strings)

    p = sub.add_parser("bae", help="Bethe ansatz equations at degenerate points")
    bsub = p.add_subparsers(dest="bae_command", required=True)
    s = bsub.add_parser("solve", parents=[common_noseed], help="string-seeded Newton solution checked against dense ED")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--tau", type=parse_tau, default=0.5j)
    s.add_argument("--bc", default="anti", choices=("anti", "per"))
    s.add_argument("--seed", dest="config", default="ground", choices=("ground", "excited"))
    s.add_argument("--k1", type=int, default=None, help="fix the selection integer instead of scanning")
    s.set_defaults(func=cmd_bae)

    p = sub.add_parser("energy", parents=[common], help="thermodynamic-limit energies")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--tau", type=parse_tau, default=0.5j)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--bc", default="anti", choices=("anti", "per"))
    p.add_argument("--model", default="xyz", choices=("xyz", "xxz"))
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("ed", parents=[common], help="exact diagonalization")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--eta", type=parse_complex, required=True)
    p.add_argument("--tau", type=parse_tau, default=0.5j)
    p.add_argument("--bc", default="anti", choices=("anti", "per"))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--dense", action="store_true")
    p.set_defaults(func=cmd_ed)

    p = sub.add_parser("table", parents=[common], help="analytic vs Lanczos ground-state energies")
    p.add_argument("--parity", required=True, choices=("odd", "even"))
    p.add_argument("--bc", default="anti", choices=("anti", "per"))
    p.add_argument("--eta", type=float, default=0.4)
    p.add_argument("--tau", type=parse_tau, default=0.5j)
    p.add_argument("--N", type=parse_N_list, default=None, help="e.g. 5:21:2 or 5,7,9")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scaling", parents=[common], help="finite-size scaling experiment with fit")
    p.add_argument("--kind", required=True, choices=sorted(SCALING_KINDS))
    p.add_argument("--eta", type=float, default=math.sqrt(2) / 4)
    p.add_argument("--tau", type=parse_tau, default=0.5j)
    p.add_argument("--N", type=parse_N_list, default=None)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("fit", parents=[common], help="fit a finite-size law to CSV points (columns N, y)")
    p.add_argument("--model", required=True, choices=("exponential", "power", "power_offset"))
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_fit)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except XYZChainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
