"""Command-line interface.

Subcommands: spectrum, map, boundary, scaling, collapse, oracle-check, tdl.
Common flags can also come from a JSON config file (--config) whose keys are
the long flag names with dashes replaced by underscores; explicit flags
override the file.  Exit codes: 0 success, 1 parameter error, 2 I/O error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import crit, ent, gsfid, oracle, scan, solver
from .errors import ConsistencyError, FermifidError, ParameterError
from .model import Boundary, ModelParams, Sign, build, full_range

EXIT_OK = 0
EXIT_PARAMETER = 1
EXIT_IO = 2
EXIT_CONSISTENCY = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract wants 1
    def error(self, message):
        self.exit(EXIT_PARAMETER, f"{self.prog}: error: {message}\n")


def _parse_axis(text: str) -> scan.GridAxis:
    """Parse 'a:b:n' into a swept axis or a bare number into a pinned one."""
    parts = text.split(":")
    if len(parts) == 1:
        return scan.GridAxis(float(parts[0]), float(parts[0]), 1)
    if len(parts) == 3:
        return scan.GridAxis(float(parts[0]), float(parts[1]), int(parts[2]))
    raise ParameterError(f"axis spec {text!r} is not 'a' or 'a:b:n'")


def _parse_L_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def _resolve(args, key, default=None):
    val = getattr(args, key, None)
    if val is not None:
        return val
    if args._config:
        # attribute names shadow builtins with a trailing underscore;
        # config files use the bare flag name
        for k in (key, key.rstrip("_")):
            if k in args._config:
                return args._config[k]
    return default


def _common_flags(p: argparse.ArgumentParser):
    p.add_argument("--L", help="system size, or comma list for scaling/collapse")
    p.add_argument("--range", dest="range_", metavar="R",
                   help="coupling range: integer or 'full' (default full)")
    p.add_argument("--boundary", choices=["cyclic", "free"])
    p.add_argument("--sign", choices=["s3", "s4"],
                   help="Hamiltonian sign convention (default s4)")
    p.add_argument("--mu", help="value or sweep 'a:b:n'")
    p.add_argument("--gamma", help="value or sweep 'a:b:n'")
    p.add_argument("--dmu", type=float, help="mu displacement for F_min")
    p.add_argument("--dgamma", type=float, help="gamma displacement for F_min")
    p.add_argument("--fd-step", dest="fd_step", type=float,
                   help="finite-difference step for h")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", dest="format_",
                   choices=["csv", "jsonl", "gnuplot"])
    p.add_argument("--threads", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="JSON file with the same keys as flags")


def _model_args(args) -> dict:
    boundary = Boundary.CYCLIC if _resolve(args, "boundary", "cyclic") == "cyclic" \
        else Boundary.FREE_ENDS
    sign = Sign(_resolve(args, "sign", "s4"))
    r = _resolve(args, "range_", "full")
    if r != "full":
        r = int(r)
    return {"boundary": boundary, "sign": sign, "r": r}


def _write(args, text: str):
    out = _resolve(args, "out")
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)


def _simple_table(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "jsonl":
        lines = [json.dumps(dict(zip(header, row))) for row in rows]
        return "\n".join(lines) + "\n"
    sep = "," if fmt == "csv" else " "
    lines = [] if fmt != "csv" else [sep.join(header)]
    if fmt == "gnuplot":
        lines = ["# " + " ".join(header)]
    for row in rows:
        lines.append(sep.join(repr(float(c)) if isinstance(c, float)
                              else str(c) for c in row))
    return "\n".join(lines) + "\n"


def _cmd_spectrum(args) -> int:
    m = _model_args(args)
    L = int(_resolve(args, "L", 16))
    mu = float(_resolve(args, "mu", 1.0))
    gamma = float(_resolve(args, "gamma", 0.0))
    r = full_range(L, m["boundary"]) if m["r"] == "full" else m["r"]
    params = ModelParams(L=L, r=r, mu=mu, gamma=gamma,
                         boundary=m["boundary"], sign=m["sign"])
    fmt = _resolve(args, "format_", "csv")
    if m["boundary"] is Boundary.CYCLIC:
        s = solver.spectral_list(params)
        rows = [[j + 1, float(z.real), float(z.imag), float(a), float(t)]
                for j, (z, a, t) in enumerate(zip(s.zeta, s.moduli, s.theta))]
        text = _simple_table(["j", "re_zeta", "im_zeta", "modulus", "theta"],
                             rows, fmt)
    else:
        spec = solver.canonical_decompose(build(params))
        rows = [[j + 1, float(lam)] for j, lam in enumerate(spec.lam)]
        text = _simple_table(["j", "lambda"], rows, fmt)
    _write(args, text)
    return EXIT_OK


def _cmd_map(args) -> int:
    m = _model_args(args)
    L = int(_resolve(args, "L", 101))
    quantities = tuple(q for q in str(
        _resolve(args, "quantities", "F_min,h_crit")).split(",") if q)
    spec = scan.ScanSpec(
        L=(L,),
        mu=_parse_axis(str(_resolve(args, "mu", "-1:3:41"))),
        gamma=_parse_axis(str(_resolve(args, "gamma", "-2:2:41"))),
        boundary=m["boundary"], r=m["r"], sign=m["sign"],
        quantities=quantities,
        dmu=float(_resolve(args, "dmu", 0.1)),
        dgamma=float(_resolve(args, "dgamma", 0.1)),
        fd_step=_resolve(args, "fd_step"),
        seed=int(_resolve(args, "seed", 0)),
        threads=int(_resolve(args, "threads", 1)))
    table = scan.run_scan(spec)
    fmt = _resolve(args, "format_", "csv")
    out = _resolve(args, "out")
    if out is None:
        sys.stdout.write(scan.render(table, fmt))
    else:
        scan.emit(table, fmt, out)
        scan.write_metadata(table, out)
    return EXIT_OK


def _cmd_boundary(args) -> int:
    m = _model_args(args)
    L = int(_resolve(args, "L", 8))
    mu_axis = _parse_axis(str(_resolve(args, "mu", "-1:1.5:101")))
    ga_axis = _parse_axis(str(_resolve(args, "gamma", "0.5")))
    if mu_axis.count > 1 and ga_axis.count > 1:
        raise ParameterError("boundary sweep is one-dimensional: pin one axis")
    if mu_axis.count > 1:
        sweep = crit.SweepSpec("mu", mu_axis.start, mu_axis.stop,
                               mu_axis.count, ga_axis.start)
    else:
        sweep = crit.SweepSpec("gamma", ga_axis.start, ga_axis.stop,
                               ga_axis.count, mu_axis.start)
    points = crit.first_order_boundary(L, m["boundary"], sweep,
                                       r=m["r"], sign=m["sign"])
    rows = [[L, p.mu, p.gamma, p.parity_below, p.parity_above] for p in points]
    text = _simple_table(["L", "mu", "gamma", "parity_below", "parity_above"],
                         rows, _resolve(args, "format_", "csv"))
    _write(args, text)
    return EXIT_OK


def _scaling_series(args, default_collapse: int):
    m = _model_args(args)
    L_list = _parse_L_list(str(_resolve(args, "L", "101,201,401")))
    gamma = float(_resolve(args, "gamma", 1.5))
    mu_axis = _parse_axis(str(_resolve(args, "mu", "0.6:1.4:41")))
    return crit.peak_scan(
        L_list, gamma, (mu_axis.start, mu_axis.stop),
        boundary=m["boundary"], r=m["r"], sign=m["sign"],
        grid_points=max(mu_axis.count, 3),
        fd_step=_resolve(args, "fd_step"),
        collapse_points=int(_resolve(args, "collapse_points",
                                     default_collapse)))


def _cmd_scaling(args) -> int:
    series = _scaling_series(args, default_collapse=0)
    rows = [[int(L), float(p), float(d)]
            for L, p, d in zip(series.sizes, series.peak_positions,
                               series.peak_depths)]
    text = _simple_table(["L", "mu_min", "h_min"], rows,
                         _resolve(args, "format_", "csv"))
    _write(args, text)
    return EXIT_OK


def _cmd_collapse(args) -> int:
    series = _scaling_series(args, default_collapse=41)
    rows = []
    for L, (x, y) in zip(series.sizes, series.collapsed):
        rows += [[int(L), float(xi), float(yi)] for xi, yi in zip(x, y)]
    text = _simple_table(["L", "x", "h_scaled"], rows,
                         _resolve(args, "format_", "csv"))
    _write(args, text)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    seed = int(_resolve(args, "seed", 0))
    trials = int(_resolve(args, "trials", 20))
    L_max = min(int(_resolve(args, "L", 7)), 8)
    rng = np.random.default_rng(seed)
    checked = 0
    worst_e, worst_f = 0.0, 0.0
    while checked < trials:
        L = int(rng.integers(2, L_max + 1))
        boundary = Boundary.CYCLIC if rng.integers(2) else Boundary.FREE_ENDS
        r = full_range(L, boundary) if rng.integers(2) else min(
            1, full_range(L, boundary))
        p1 = ModelParams(L=L, r=r, mu=float(rng.uniform(-2, 3)),
                         gamma=float(rng.uniform(-2, 2)), boundary=boundary)
        p2 = p1.displaced(dmu=float(rng.uniform(-0.3, 0.3)),
                          dgamma=float(rng.uniform(-0.3, 0.3)))
        m1, m2 = build(p1), build(p2)
        o1, o2 = oracle.fock_hamiltonian_gs(m1), oracle.fock_hamiltonian_gs(m2)
        if o1.degenerate or o2.degenerate:
            continue
        s1, s2 = solver.canonical_decompose(m1), solver.canonical_decompose(m2)
        t1, t2 = solver.polar_T(s1, m1), solver.polar_T(s2, m2)
        if not (t1.well_defined and t2.well_defined):
            continue
        e0 = solver.ground_energy_and_gap(m1, s1)[0]
        worst_e = max(worst_e, abs(e0 - o1.E0))
        if t1.parity != o1.parity:
            print(f"FAIL parity at {p1}")
            return EXIT_CONSISTENCY
        F = gsfid.fidelity(t1, t2).F
        worst_f = max(worst_f, abs(F - oracle.overlap(o1.gs, o2.gs)))
        checked += 1
    print(f"oracle-check: {checked} points, max |E0 - oracle| = {worst_e:.2e},"
          f" max |F - overlap| = {worst_f:.2e}")
    if worst_e > 1e-9 or worst_f > 1e-9:
        print("FAIL tolerance")
        return EXIT_CONSISTENCY
    return EXIT_OK


def _cmd_tdl(args) -> int:
    L = int(_resolve(args, "L", 1001))
    mu_axis = _parse_axis(str(_resolve(args, "mu", "2.0")))
    ga_axis = _parse_axis(str(_resolve(args, "gamma", "1.5")))
    rows = []
    for g in ga_axis.values():
        for m in mu_axis.values():
            try:
                h = crit.h_asymptotic(L, float(m), float(g))
            except FermifidError:
                h = float("nan")
            try:
                tii = ent.tii_tdl(float(m), float(g))
                si = ent.si_tdl(float(m), float(g))
            except FermifidError:
                tii, si = float("nan"), float("nan")
            rows.append([L, float(m), float(g), h, tii, si])
    text = _simple_table(["L", "mu", "gamma", "h_asymptotic", "tii", "si"],
                         rows, _resolve(args, "format_", "csv"))
    _write(args, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fermifid",
                     description="free-fermion graph fidelity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, extra in [
        ("spectrum", _cmd_spectrum, []),
        ("map", _cmd_map, ["quantities"]),
        ("boundary", _cmd_boundary, []),
        ("scaling", _cmd_scaling, ["collapse_points"]),
        ("collapse", _cmd_collapse, ["collapse_points"]),
        ("oracle-check", _cmd_oracle_check, ["trials"]),
        ("tdl", _cmd_tdl, []),
    ]:
        p = sub.add_parser(name)
        _common_flags(p)
        if "quantities" in extra:
            p.add_argument("--quantities",
                           help="comma list from: " + ",".join(scan.QUANTITIES))
        if "collapse_points" in extra:
            p.add_argument("--collapse-points", dest="collapse_points",
                           type=int)
        if "trials" in extra:
            p.add_argument("--trials", type=int)
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._config = {}
    if args.config:
        try:
            with open(args.config) as fh:
                args._config = json.load(fh)
        except OSError as exc:
            print(f"fermifid: cannot read config: {exc}", file=sys.stderr)
            return EXIT_IO
        except json.JSONDecodeError as exc:
            print(f"fermifid: bad config: {exc}", file=sys.stderr)
            return EXIT_PARAMETER
    try:
        return args.fn(args)
    except (ParameterError, ValueError) as exc:
        print(f"fermifid: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except OSError as exc:
        print(f"fermifid: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConsistencyError as exc:
        print(f"fermifid: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
