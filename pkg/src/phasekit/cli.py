"""Command-line front end.

stdout carries data (JSON documents, CSV blocks or the ``gauss`` value);
diagnostics go to stderr.  Exit status: 0 when every check passes, 1 when a
check fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, fracdft, mub, oscillator, phase, qdft, suites
from .matrixfile import MatrixFile, VerifyReport, dumps_matrices, write_matrices
from .numerics import PhasekitError, fro, is_unitary, to_descending_order

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


# ----------------------------------------------------------------- helpers


def _tolerance(args, default: float) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get("PHASEKIT_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise InputError(f"PHASEKIT_TOL is not a number: {env!r}")
    return default


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer pair like 1,0; got {text!r}")
    return a, b


def _checks(text: str | None, allowed: tuple[str, ...], default: tuple[str, ...]) -> list[str]:
    if text is None:
        return list(default)
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in allowed]
    if bad:
        raise InputError(f"unknown check(s) {', '.join(bad)}; choose from {', '.join(allowed)}")
    return names


def _mf(args, kind: str, matrix, **params) -> MatrixFile:
    m = np.asarray(matrix)
    if args.descending:
        m = to_descending_order(m)
        params["order"] = "descending"
    return MatrixFile(kind, params, m)


def _emit(args, files: list[MatrixFile], report: VerifyReport | None, extra: dict | None = None) -> int:
    """Write matrices to --out (or stdout) and the report to stdout."""
    if args.out:
        write_matrices(args.out, files, args.format)
    doc = {}
    if extra:
        doc.update(extra)
    if report is not None:
        doc["report"] = report.to_dict()
    if args.format == "json":
        if not args.out:
            doc["matrices"] = [f.to_dict() for f in files]
        sys.stdout.write(json.dumps(doc) + "\n")
    else:
        if not args.out:
            sys.stdout.write(dumps_matrices(files, "csv"))
        if report is not None:
            _summarize(report)
    if report is None:
        return EXIT_OK
    for c in report.failures():
        print(f"FAIL {report.suite}: {c.name}: residual {c.residual:.3g} >= {c.tolerance:.3g}", file=sys.stderr)
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def _summarize(report: VerifyReport):
    n_ok = sum(c.passed for c in report.checks)
    print(f"{report.suite}: {n_ok}/{len(report.checks)} checks pass", file=sys.stderr)


# ---------------------------------------------------------------- commands


def cmd_osc(args) -> int:
    rep = oscillator.build_osc_rep(args.kappa, args.phi, args.dim)
    tol = _tolerance(args, 1e-12)
    report = VerifyReport("osc")
    for name, res in oscillator.algebra_residuals(rep).items():
        report.add(name, res, tol)
    p = dict(kappa=args.kappa, phi=args.phi, dim=rep.dim)
    files = [
        _mf(args, "a_plus", rep.a_plus, **p),
        _mf(args, "a_minus", rep.a_minus, **p),
        _mf(args, "N", rep.number_op, **p),
    ]
    return _emit(args, files, report)


def cmd_su2(args) -> int:
    rep = oscillator.build_su2(args.j, args.phi)
    tol = _tolerance(args, 1e-12)
    report = VerifyReport("su2")
    for name, res in oscillator.su2_residuals(rep).items():
        report.add(name, res, _tolerance(args, 1e-11) if name.startswith("J^2") else tol)
    report.add("rotated-shift similarity", oscillator.rotated_shift_check(rep), tol)
    jp, jm = oscillator.su2_textbook(args.j, args.phi)
    report.add("matches angular-momentum elements", math.hypot(fro(rep.J_plus - jp), fro(rep.J_minus - jm)), tol)
    p = dict(j=args.j, kappa=rep.kappa, phi=args.phi)
    files = [
        _mf(args, "J_plus", rep.J_plus, **p),
        _mf(args, "J_minus", rep.J_minus, **p),
        _mf(args, "J_3", rep.J_3, **p),
    ]
    return _emit(args, files, report)


def cmd_su11(args) -> int:
    s = args.dim or oscillator.DEFAULT_TRUNCATION
    rep = oscillator.build_su11(args.k, args.phi, s)
    tol = _tolerance(args, 1e-12)
    report = VerifyReport("su11")
    for name, res in oscillator.su11_residuals(rep).items():
        report.add(name, res, tol)
    report.add("rotated-shift similarity", oscillator.rotated_shift_check(rep), tol)
    kp, km = oscillator.su11_textbook(args.k, args.phi, s)
    b = slice(0, s - 1)
    report.add(
        "matches discrete-series elements",
        math.hypot(fro((rep.K_plus - kp)[b, b]), fro((rep.K_minus - km)[b, b])),
        tol,
    )
    p = dict(k=args.k, kappa=rep.kappa, phi=args.phi, truncation=s)
    files = [
        _mf(args, "K_plus", rep.K_plus, **p),
        _mf(args, "K_minus", rep.K_minus, **p),
        _mf(args, "K_3", rep.K_3, **p),
    ]
    return _emit(args, files, report)


def cmd_phase_states(args) -> int:
    tol = _tolerance(args, 1e-12)
    if args.k is not None:
        return _phase_states_su11(args, tol)
    if args.d is None:
        raise InputError("phase-states needs --d (su(2)) or --k (su(1,1))")
    d, phi, t = args.d, args.phi, args.t
    op = phase.build_Ed(d, phi)
    states = phase.phase_states_su2(d, phi)
    report = VerifyReport("phase-states")
    report.add("E_d unitary", is_unitary(op.matrix)[1], tol)
    report.add("E_d |phi,alpha> = q^alpha |phi,alpha>", max(phase.eigen_residual_su2(op, s) for s in states), tol)
    report.add("closure", phase.closure_residual_su2(d, phi), tol)
    drift = max(
        float(np.abs(phase.evolve_su2(s, t).vector - phase.phase_state_su2(d, phi + t, s.alpha).vector).max())
        for s in states
    )
    report.add(f"U({t:g}) |phi,alpha> = |phi+t,alpha>", drift, tol)
    p = dict(d=d, phi=phi)
    cols = np.array([s.vector for s in states]).T
    files = [_mf(args, "E_d", op.matrix, **p), _mf(args, "phase_states", cols, **p)]
    return _emit(args, files, report)


def _phase_states_su11(args, tol: float) -> int:
    k, phi, t = args.k, args.phi, args.t
    s = args.dim or 16
    op = phase.build_Einf(k, phi, s)
    report = VerifyReport("phase-states")
    for name, res in phase.einf_isometry_residuals(op).items():
        report.add(name, res, _tolerance(args, 1e-14))
    report.add("K- = E sqrt(K+ K-)", phase.einf_factorization_residual(op), tol)
    grid = phase.theta_grid(2 * s - 1)
    states = [phase.phase_state_su11(k, phi, th, s) for th in grid]
    report.add("E |phi,theta> = e^{i theta} |phi,theta>", max(phase.eigen_residual_su11(op, st) for st in states), tol)
    report.add("discrete closure", phase.closure_residual_su11(k, phi, s), tol)
    drift = max(
        float(np.abs(phase.evolve_su11(st, t).vector - phase.phase_state_su11(k, phi + t, st.theta, s).vector).max())
        for st in states
    )
    report.add(f"U({t:g}) |phi,theta> = |phi+t,theta>", drift, tol)
    p = dict(k=k, phi=phi, truncation=s)
    cols = np.array([st.vector for st in states]).T
    files = [_mf(args, "E_inf", op.matrix, **p), _mf(args, "theta_states", cols, **p, thetas=list(grid))]
    return _emit(args, files, report)


def cmd_truncate(args) -> int:
    rep = oscillator.build_osc_rep(args.kappa, args.phi, args.dim)
    if args.s is None:
        raise InputError("truncate needs --s")
    cp, cm = oscillator.build_truncated(rep, args.s)
    tol = _tolerance(args, 1e-13)
    report = VerifyReport("truncate")
    for name, res in oscillator.truncated_residuals(rep, args.s).items():
        report.add(name, res, tol)
    p = dict(kappa=args.kappa, phi=args.phi, dim=rep.dim, s=args.s)
    return _emit(args, [_mf(args, "c_plus", cp, **p), _mf(args, "c_minus", cm, **p)], report)


def cmd_mub(args) -> int:
    tol = _tolerance(args, mub.MUB_TOL)
    bases, report = mub.generate_mub_family(args.d, args.r, tol)
    if args.out:
        files = [
            _mf(args, "basis", b.columns, d=args.d, label="canonical" if b.label == "canonical" else list(b.label))
            for b in bases
        ]
        write_matrices(args.out, files, args.format)
    doc = report.to_dict()
    if args.format == "json":
        sys.stdout.write(json.dumps(doc) + "\n")
    else:
        keys = ("d", "r", "basis_count", "min_modulus", "max_modulus", "max_deviation", "pass")
        sys.stdout.write(",".join(keys) + "\n" + ",".join(repr(doc[k]) for k in keys) + "\n")
    if not report.passed:
        print(f"MUB completeness fails for d={args.d}; worst pair {report.witness}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_vra(args) -> int:
    d, r, a = args.d, args.r, args.a
    v = mub.build_vra(d, r, a)
    tol = _tolerance(args, 1e-11)
    report = VerifyReport("vra")
    report.add("unitary", is_unitary(v)[1], tol)
    report.add("v |j alpha; r a> = q^{j(r+a)-alpha} |j alpha; r a>", mub.vra_eigen_residual(d, r, a), tol)
    rel = qdft.vra_relations(d, r, a)
    for name, res in rel.items():
        if name == "V X = q^-a X V" and not qdft.r_is_periodic(d, r):
            continue
        report.add(name, res, tol)
    return _emit(args, [_mf(args, "V_ra", v, d=d, r=r, a=a)], report)


def _snap(x: float, w: float) -> float:
    # round-off of a |w|-term sum of unit phases
    return 0.0 if abs(x) <= 8 * abs(w) * np.finfo(float).eps else x


def cmd_gauss(args) -> int:
    if args.w == 0:
        raise InputError("w must be nonzero")
    s = mub.gauss_sum(args.u, args.v, args.w)
    re, im = _snap(s.real, args.w) + 0.0, _snap(s.imag, args.w) + 0.0
    sys.stdout.write(f"{re:.17g} {im:.17g}\n")
    return EXIT_OK


QDFT_CHECKS = ("unitary", "hadamard", "factorization", "trace", "diagonalize")


def cmd_qdft(args) -> int:
    d, r, a = args.d, args.r, args.a
    checks = _checks(args.check, QDFT_CHECKS, ())
    fra = qdft.build_Fra(d, r, a).matrix
    report = VerifyReport("qdft")
    for c in checks:
        if c == "unitary":
            report.add("F_ra unitary", is_unitary(fra)[1], _tolerance(args, 1e-12))
        elif c == "hadamard":
            report.add("|entries| = 1/sqrt(d)", qdft.hadamard_residual(fra), _tolerance(args, 1e-12))
        elif c == "factorization":
            report.add("F_ra = D_ra F", qdft.factorization_residual(d, r, a), _tolerance(args, 1e-13))
        elif c == "trace":
            report.add("trace direct vs Gauss", qdft.trace_Fra(d, r, a).residual, _tolerance(args, 1e-11))
        elif c == "diagonalize":
            report.add("V_ra columns of F_ra", qdft.diagonalization_residual(d, r, a), _tolerance(args, 1e-11))
    return _emit(args, [_mf(args, "F_ra", fra, d=d, r=r, a=a)], report)


def cmd_weyl(args) -> int:
    pair = qdft.weyl_pair(args.d)
    tol = _tolerance(args, 1e-11)
    report = VerifyReport("weyl")
    for name, res in qdft.weyl_residuals(pair).items():
        report.add(name, res, tol)
    files = [_mf(args, "X", pair.X, d=args.d), _mf(args, "Z", pair.Z, d=args.d)]
    return _emit(args, files, report)


def cmd_pauli(args) -> int:
    d = args.d
    basis = qdft.pauli_basis(d)
    tol = _tolerance(args, 1e-11)
    report = VerifyReport("pauli")
    report.add("tr(P_i^dag P_k) = d delta_ik", fro(qdft.pauli_gram(d) - d * np.eye(d * d)), tol)
    report.add("each element unitary", max(is_unitary(p)[1] for p in basis), tol)
    files = [_mf(args, "X^a Z^b", p, d=d, a=i // d, b=i % d) for i, p in enumerate(basis)]
    return _emit(args, files, report)


def cmd_sine_check(args) -> int:
    d = args.d
    tol = _tolerance(args, 1e-12)
    pairs = [(args.m, args.n)]
    if args.pairs:
        rng = np.random.default_rng(args.seed)
        for _ in range(args.pairs):
            m = tuple(int(x) for x in rng.integers(-2 * d, 2 * d, size=2))
            n = tuple(int(x) for x in rng.integers(-2 * d, 2 * d, size=2))
            pairs.append((m, n))
    report = VerifyReport("sine-check")
    prod = comm = 0.0
    for m, n in pairs:
        res = qdft.sine_algebra_check(d, m, n)
        prod, comm = max(prod, res["product"]), max(comm, res["commutator"])
    report.add("T_m T_n = q^{-(m x n)/2} T_{m+n}", prod, tol)
    report.add("[T_m, T_n] = -2i sin(pi (m x n)/d) T_{m+n}", comm, tol)
    m, n = args.m, args.n
    files = [
        _mf(args, "T_m", qdft.build_T(d, m), d=d, m=list(m)),
        _mf(args, "T_n", qdft.build_T(d, n), d=d, n=list(n)),
    ]
    return _emit(args, files, report)


FRAC_CHECKS = ("group", "endpoints", "multiplicities")


def cmd_fracdft(args) -> int:
    d, nu = args.d, args.nu
    checks = _checks(args.check, FRAC_CHECKS, ())
    plan = fracdft.build_plan(d)
    report = VerifyReport("fracdft")
    for name, res in fracdft.plan_residuals(plan).items():
        report.add(name, res, _tolerance(args, 1e-9))
    out = fracdft.fractional_F(plan, nu)
    report.add("spectral = rank-one sum", fro(out - fracdft.fractional_F(plan, nu, "sum")), _tolerance(args, 1e-8))
    F = qdft.build_F(d)
    for c in checks:
        if c == "endpoints":
            tol = _tolerance(args, 1e-8)
            report.add("F^0 = I", fro(fracdft.fractional_F(plan, 0.0) - np.eye(d)), tol)
            report.add("F^1 = F", fro(fracdft.fractional_F(plan, 1.0) - F), tol)
            report.add("F^2 = F F", fro(fracdft.fractional_F(plan, 2.0) - F @ F), tol)
        elif c == "group":
            tol = _tolerance(args, 1e-7)
            rng = np.random.default_rng(args.seed)
            group = period = 0.0
            for _ in range(20):
                n1, n2 = rng.uniform(-4, 4, size=2)
                group = max(group, fro(
                    fracdft.fractional_F(plan, n1) @ fracdft.fractional_F(plan, n2)
                    - fracdft.fractional_F(plan, n1 + n2)
                ))
                period = max(period, fro(fracdft.fractional_F(plan, n1 + 4) - fracdft.fractional_F(plan, n1)))
            report.add("F^a F^b = F^(a+b)", group, tol)
            report.add("F^(a+4) = F^a", period, tol)
        elif c == "multiplicities":
            rec = fracdft.multiplicities(d)
            report.add("multiplicity table row", fracdft.multiplicity_residual(rec), _tolerance(args, 1e-9))
    labels = [list(lab) for lab in plan.labels]
    return _emit(args, [_mf(args, "frac_F", out, d=d, nu=nu, labels=labels)], report)


def cmd_verify_all(args) -> int:
    names = list(suites.SUITES) if not args.suite else args.suite.split(",")
    bad = [n for n in names if n not in suites.SUITES]
    if bad:
        raise InputError(f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(suites.SUITES)}")
    tol = _tolerance(args, math.nan)
    reports = suites.run_all(names, None if math.isnan(tol) else tol)
    ok = all(r.overall_pass for r in reports)
    if args.format == "json":
        sys.stdout.write(json.dumps({"suites": [r.to_dict() for r in reports], "overall_pass": ok}) + "\n")
    for r in reports:
        _summarize(r)
        for c in r.failures():
            print(f"FAIL {r.suite}: {c.name}: residual {c.residual:.3g} >= {c.tolerance:.3g}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write matrices to FILE")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tol", type=float, help="override every check tolerance")
    common.add_argument("--descending", "--paper-order", dest="descending", action="store_true",
                        help="list rows/columns as d-1, ..., 0")

    parser = _Parser(prog="phasekit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("osc", cmd_osc, "oscillator algebra a+, a-, N")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--dim", type=int)

    p = add("su2", cmd_su2, "su(2) generators with phase phi")
    p.add_argument("--j", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)

    p = add("su11", cmd_su11, "truncated su(1,1) generators")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--dim", type=int, help="truncation size (default 64)")

    p = add("phase-states", cmd_phase_states, "phase operator and phase states")
    p.add_argument("--d", type=int, help="su(2) dimension")
    p.add_argument("--k", type=float, help="su(1,1) Bargmann index (selects E_inf)")
    p.add_argument("--dim", type=int, help="su(1,1) truncation (default 16)")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--t", type=float, default=1.0, help="evolution time for the stability check")

    p = add("truncate", cmd_truncate, "truncated ladder operators c+, c-")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--dim", type=int)
    p.add_argument("--s", type=int)

    p = add("mub", cmd_mub, "MUB family and unbiasedness report")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=float, default=0.0)

    p = add("vra", cmd_vra, "the operator V_ra")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--a", type=int, default=0)

    p = add("gauss", cmd_gauss, "generalized quadratic Gauss sum")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--w", type=int, required=True)

    p = add("qdft", cmd_qdft, "quadratic DFT matrix F_ra")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--check", help="comma list of " + ",".join(QDFT_CHECKS))

    p = add("weyl", cmd_weyl, "Weyl pair X, Z")
    p.add_argument("--d", type=int, required=True)

    p = add("pauli", cmd_pauli, "generalized Pauli basis")
    p.add_argument("--d", type=int, required=True)

    p = add("sine-check", cmd_sine_check, "sine-algebra operators T_n")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=_pair, default=(1, 0))
    p.add_argument("--n", type=_pair, default=(0, 1))
    p.add_argument("--pairs", type=int, default=0, help="also test this many random pairs")
    p.add_argument("--seed", type=int, default=0)

    p = add("fracdft", cmd_fracdft, "fractional DFT from a Mehta eigenbasis")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--check", help="comma list of " + ",".join(FRAC_CHECKS))
    p.add_argument("--seed", type=int, default=0)

    p = add("verify-all", cmd_verify_all, "run every verification suite")
    p.add_argument("--suite", help="comma list of suites (default: all)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (InputError, PhasekitError) as exc:
        print(f"phasekit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"phasekit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
