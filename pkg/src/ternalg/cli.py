"""Command-line interface.

Commands: info, invariants, decompose, product, assoc-check, biunit,
enumerate-products, selftest.  Exit codes: 0 success / all checks passed,
1 a verification residual exceeded its tolerance, 2 invalid input (parse
error, failed precondition, bad usage).  All numeric output uses 12
significant digits; every command is deterministic for a fixed --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, core, decomp, qcyclic, rotation, selftest, ternary
from ._backend import BACKEND
from ._rng import PortableRng
from .selftest import Check
from .ternary import ProductKind

_KIND_BY_FLAG = {k.value: k for k in ProductKind}


def _g12(x: float) -> str:
    return f"{x:.12g}"


def _cx12(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _check_line(c: Check) -> str:
    status = "PASS" if c.passed else "FAIL"
    return f"CHECK {c.name} residual={_g12(c.residual)} tol={_g12(c.tol)} {status}"


def _check_record(c: Check) -> dict:
    return {"check": c.name, "residual": c.residual, "tol": c.tol,
            "pass": c.passed}


def _emit_checks(checks: list[Check], fmt: str) -> int:
    if fmt == "json":
        print(json.dumps([_check_record(c) for c in checks], indent=2))
    else:
        for c in checks:
            print(_check_line(c))
    return 0 if all(c.passed for c in checks) else 1


def _draw_cube(rng: PortableRng, dim: int) -> np.ndarray:
    data = np.fromiter((rng.complex_signed() for _ in range(dim**3)),
                       dtype=np.complex128, count=dim**3)
    return data.reshape(dim, dim, dim)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_info(args) -> int:
    if args.file is None:
        print(f"ternalg {__version__}")
        print(f"kernel backend: {BACKEND}")
        print(f"default tolerances: atol={_g12(core.DEFAULT_ATOL)} "
              f"rtol={_g12(core.DEFAULT_RTOL)}")
        return 0
    t = core.read_hypermatrix(args.file)
    dim = t.shape[0]
    print(f"file: {args.file}")
    print(f"dim: {dim}")
    print(f"norm: {_g12(core.norm(t))}")
    if dim == 3:
        rec = rotation.invariants(t)
        rep = decomp.exclusion_residuals(t)
        print(f"linear invariant I: {_cx12(rec.I)}")
        print(f"quadratic invariant I2: {_cx12(rec.I2)}")
        print(f"classification: {rep.classification}")
        print(f"perm-sum residual: {_g12(rep.perm_sum_residual)}")
        print(f"cyclic-sum residual: {_g12(rep.cyclic_sum_residual)}")
        print("trace residuals: "
              + " ".join(_g12(r) for r in rep.trace_residuals))
    return 0


def _cmd_invariants(args) -> int:
    t = core.read_hypermatrix(args.file)
    rec = rotation.invariants(t)
    if args.format == "json":
        print(json.dumps({name: [v.real, v.imag] for name, v in rec.as_pairs()},
                         indent=2))
    else:
        for name, value in rec.as_pairs():
            print(f"{name:<5} {_cx12(value)}")
    return 0


def _cmd_decompose(args) -> int:
    t = core.read_hypermatrix(args.file)
    parts = decomp.weight_decompose(t)
    os.makedirs(args.out, exist_ok=True)
    for w, part in enumerate(parts.parts()):
        core.write_hypermatrix(os.path.join(args.out, f"t{w}.json"), part)

    checks = [Check.below(name, value, args.atol)
              for name, value in sorted(decomp.weight_residuals(t, parts).items())]
    part_q, part_qbar = decomp.xi_project(parts.t2, "q"), decomp.xi_project(parts.t2, "qbar")
    shift_q = np.einsum("jki->ijk", part_q)
    shift_qbar = np.einsum("jki->ijk", part_qbar)
    checks.append(Check.below("t2_split_sum",
                              core.norm(parts.t2 - part_q - part_qbar), args.atol))
    checks.append(Check.below("t2_split_eig_q",
                              float(np.abs(shift_q - core.Q * part_q).max()), args.atol))
    checks.append(Check.below("t2_split_eig_qbar",
                              float(np.abs(shift_qbar - core.QBAR * part_qbar).max()),
                              args.atol))

    lines = [f"decomposition of {args.file} -> {args.out}/t0.json..t3.json"]
    for w, part in enumerate(parts.parts()):
        lines.append(f"norm t{w}: {_g12(core.norm(part))}")
    lines.append(f"norm t2 (shift eigenvalue q): {_g12(core.norm(part_q))}")
    lines.append(f"norm t2 (shift eigenvalue qbar): {_g12(core.norm(part_qbar))}")
    report = "\n".join(lines + [_check_line(c) for c in checks]) + "\n"
    with open(os.path.join(args.out, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(report)
    if args.format == "json":
        print(json.dumps([_check_record(c) for c in checks], indent=2))
    else:
        print(report, end="")
    return 0 if all(c.passed for c in checks) else 1


def _cmd_product(args) -> int:
    kind = _KIND_BY_FLAG[args.kind]
    a = core.read_hypermatrix(args.a)
    b = core.read_hypermatrix(args.b)
    c = core.read_hypermatrix(args.c)
    result = ternary.ternary_product(kind, a, b, c)
    if args.out:
        core.write_hypermatrix(args.out, result)
        print(f"wrote {args.out} (norm {_g12(core.norm(result))})")
    else:
        doc = {"dim": int(result.shape[0]),
               "entries": [[z.real, z.imag] for z in result.ravel()]}
        print(json.dumps(doc))
    return 0


def _cmd_assoc_check(args) -> int:
    kind = _KIND_BY_FLAG[args.kind]
    rng = PortableRng(args.seed)
    checks = []
    for trial in range(1, args.trials + 1):
        quint = [_draw_cube(rng, args.dim) for _ in range(5)]
        scale = float(np.prod([core.norm(x) for x in quint]))
        residual = ternary.associativity_residual(kind, *quint)
        rel = residual / max(scale, 1e-30)
        checks.append(Check.below(
            f"assoc-{kind.name}-dim{args.dim}-trial{trial:03d}", rel, args.rtol))
    return _emit_checks(checks, args.format)


def _cmd_biunit(args) -> int:
    u = core.read_hypermatrix(args.file)
    u_hat = qcyclic.make_biunit(u, tol=args.rtol)
    out = args.out or (os.path.splitext(args.file)[0] + ".biunit.json")
    core.write_hypermatrix(out, u_hat)

    i2, rel = qcyclic.regularity(u)
    header = [
        f"input: {args.file}",
        f"I2: {_cx12(i2)} (|I2| / |U|^2 = {_g12(rel)})",
        f"biunit written to: {out}",
    ]
    checks = []
    for trial in range(1, 11):
        t = _draw_cube(PortableRng(args.seed + trial), 3)
        residual = ternary.biunit_residual(ProductKind.P3_DIAMOND, u_hat, t,
                                           side="right")
        checks.append(Check.below(f"right-biunit-trial{trial:02d}",
                                  residual / core.norm(t), 1e-9))
    if args.format == "json":
        print(json.dumps([_check_record(c) for c in checks], indent=2))
    else:
        for line in header:
            print(line)
        for c in checks:
            print(_check_line(c))
    return 0 if all(c.passed for c in checks) else 1


def _cmd_enumerate(args) -> int:
    survey = ternary.enumerate_schemes(dim=args.dim, trials=args.trials,
                                       seed=args.seed)
    named = survey.named_pattern_survivors()
    labels = sorted(r.label for r in named if r.label is not None)
    ok = labels == ["P1", "P2", "P3", "P4"] and all(r.label for r in named)
    if args.format == "json":
        doc = {
            "dim": survey.dim, "trials": survey.trials, "seed": survey.seed,
            "tolerance": survey.tolerance, "total_schemes": survey.total_schemes,
            "survivors": [
                {"encoding": r.scheme.encode(), "label": r.label,
                 "in_named_pattern": r.in_named_pattern, "flagged": r.flagged,
                 "max_residual": r.max_residual}
                for r in survey.survivors
            ],
            "named_patterns_exactly_P1_P4": ok,
        }
        print(json.dumps(doc, indent=2))
        return 0 if ok else 1
    print(f"schemes evaluated: {survey.total_schemes} "
          f"(dim={survey.dim} trials={survey.trials} seed={survey.seed} "
          f"tol={_g12(survey.tolerance)})")
    print(f"survivors: {len(survey.survivors)}")
    for r in survey.survivors:
        tag = r.label or "FLAGGED"
        print(f"SCHEME {r.scheme.encode()} label={tag} "
              f"max_residual={_g12(r.max_residual)}")
    status = "PASS" if ok else "FAIL"
    print(f"CHECK named-patterns-yield-P1-P2-P3-P4 residual={len(named) - 4} "
          f"tol=0 {status}")
    return 0 if ok else 1


def _cmd_selftest(args) -> int:
    results = []
    for fn in selftest._CRITERIA:
        if args.inject_fault == "tau-sign" and fn is selftest.criterion_9:
            results.append(selftest.criterion_9(args.seed,
                                                tau_override=-core.tau()))
        elif args.inject_fault == "middle-swap" and fn is selftest.criterion_1:
            results.append(selftest.criterion_1(args.seed, swap_middle=False))
        else:
            results.append(fn(args.seed))
    if args.format == "json":
        records = []
        for res in results:
            for c in res.checks:
                rec = _check_record(c)
                rec["check"] = f"{res.number:02d}.{c.name}"
                records.append(rec)
        print(json.dumps(records, indent=2))
    else:
        for res in results:
            status = "PASS" if res.passed else "FAIL"
            worst = res.worst
            print(f"CRITERION {res.number:02d} {res.title:<28} "
                  f"checks={len(res.checks):<3d} "
                  f"worst={worst.residual:.12g} tol={_g12(worst.tol)} {status}")
            for line in res.details:
                print(f"  note: {line}")
            if not res.passed:
                for c in res.checks:
                    if not c.passed:
                        print(f"  {_check_line(c)}")
        n_pass = sum(1 for r in results if r.passed)
        print(f"SUMMARY {n_pass}/{len(results)} criteria passed")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, *, seed=True, fmt=True, tols=False):
    if seed:
        p.add_argument("--seed", type=int, default=0,
                       help="seed for all generated data (default 0)")
    if fmt:
        p.add_argument("--format", choices=("text", "json"), default="text")
    if tols:
        p.add_argument("--atol", type=float, default=core.DEFAULT_ATOL)
        p.add_argument("--rtol", type=float, default=core.DEFAULT_RTOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ternalg",
        description="Ternary algebra of complex third-order hypermatrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="package info, or a summary of one file")
    p.add_argument("file", nargs="?", default=None)
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("invariants", help="print all 23 rotation invariants")
    p.add_argument("file")
    _add_common(p, seed=False)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("decompose",
                       help="write the four weight components and a report")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output directory")
    _add_common(p, seed=False, tols=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("product", help="evaluate one triple product")
    p.add_argument("--kind", choices=sorted(_KIND_BY_FLAG), required=True)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("assoc-check",
                       help="verify generalized associativity on random data")
    p.add_argument("--kind", choices=sorted(_KIND_BY_FLAG), required=True)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=20)
    _add_common(p, tols=True)
    p.set_defaults(func=_cmd_assoc_check)

    p = sub.add_parser("biunit",
                       help="build and verify a right biunit from a file")
    p.add_argument("file")
    p.add_argument("--out", default=None)
    _add_common(p, tols=True)
    p.set_defaults(func=_cmd_biunit)

    p = sub.add_parser("enumerate-products",
                       help="search all contraction schemes for associativity")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("selftest", help="run the acceptance suite in-process")
    _add_common(p)
    p.add_argument("--inject-fault", choices=("tau-sign", "middle-swap"),
                   default=None,
                   help="test-only: break one check to prove the suite can fail")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except core.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
