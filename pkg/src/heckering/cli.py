"""Command-line interface: decompose, product, hecke-matrix, eigs, verify."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Sequence

from .arith import GroupElement
from .congruence import CongruenceSubgroup
from .cosets import DEFAULT_CAP, decompose
from .errors import CapExceeded, HeckeError
from .hecke_ring import double_coset, shimura_product
from .modsym import (
    CURVES,
    ap_oracle,
    build_space,
    cuspidal_matrix,
    eigen_data,
    hecke_matrix,
)
from .report import ENGINE_VERSION
from .verify import SUITES, run_suite

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _matrix(text: str) -> GroupElement:
    try:
        return GroupElement.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_group(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--gamma0", type=int, metavar="N", help="work with Gamma0(N)")
    g.add_argument("--sl2z", action="store_true", help="work with SL2(Z)")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON on standard output")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heckering", description="Hecke rings and Hecke modules at desk scale.")
    parser.add_argument("--version", action="version", version=f"heckering {ENGINE_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="right-coset decomposition of a double coset")
    _add_group(p)
    p.add_argument("--matrix", type=_matrix, required=True, help='integral matrix "a,b;c,d"')
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _add_output(p)

    p = sub.add_parser("product", help="Shimura product of two double cosets")
    _add_group(p)
    p.add_argument("--a", type=_matrix, required=True)
    p.add_argument("--b", type=_matrix, required=True)
    p.add_argument("--no-witness", action="store_true", help="omit the index witness")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _add_output(p)

    p = sub.add_parser("hecke-matrix", help="Hecke operator on weight-2 modular symbols")
    p.add_argument("--gamma0", type=int, metavar="N", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--p", type=int, help="use diag(1, p)")
    src.add_argument("--matrix", type=_matrix)
    p.add_argument("--cuspidal", action="store_true", help="restrict to the cuspidal subspace")
    p.add_argument("--csv", action="store_true", help="emit the matrix as CSV")
    _add_output(p)

    p = sub.add_parser("eigs", help="cuspidal eigenvalues of T_p")
    p.add_argument("--gamma0", type=int, metavar="N", required=True)
    p.add_argument("--p-list", type=_int_list, default=[2, 3, 5, 7, 13])
    p.add_argument("--curve", type=_int_list, help="a1,a2,a3,a4,a6 for the point-count comparison")
    p.add_argument("--csv", action="store_true")
    _add_output(p)

    p = sub.add_parser("verify", help="run seeded verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    _add_group(p, required=False)
    p.add_argument("--a", type=_matrix, default=GroupElement.diag(1, 2))
    p.add_argument("--b", type=_matrix, default=GroupElement.diag(1, 3))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--curve", type=_int_list)
    _add_output(p)
    return parser


def _group(args) -> CongruenceSubgroup:
    if getattr(args, "gamma0", None) is not None:
        if args.gamma0 < 1:
            raise UsageError("level must be positive")
        return CongruenceSubgroup.gamma0(args.gamma0)
    return CongruenceSubgroup.sl2z()


def _emit(obj: dict, args, out) -> None:
    obj = {"schema": SCHEMA, **obj}
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _curve(args, N: int):
    if args.curve is not None:
        if len(args.curve) != 5:
            raise UsageError("--curve needs five coefficients a1,a2,a3,a4,a6")
        return tuple(args.curve)
    return CURVES.get(N)


def cmd_decompose(args, out) -> int:
    G = _group(args)
    dec = decompose(G, args.matrix, args.cap)
    if args.json:
        _emit({"command": "decompose", "group": G.to_json(), "a": args.matrix.to_json(), **dec.to_json()}, args, out)
    else:
        out.write(f"{G}: [{args.matrix}] has {dec.degree} right cosets\n")
        for i, r in enumerate(dec.reps):
            out.write(f"  a_{i} = {r}\n")
    return EXIT_OK


def cmd_product(args, out) -> int:
    G = _group(args)
    A, B = double_coset(G, args.a), double_coset(G, args.b)
    decompose(G, args.a, args.cap)
    decompose(G, args.b, args.cap)
    prod, witness = shimura_product(A, B)
    terms = [{"label": str(dc.canonical_rep), "coeff": c, "degree": dc.degree} for dc, c in prod.terms()]
    if args.json:
        obj = {"command": "product", "group": G.to_json(), "a": args.a.to_json(), "b": args.b.to_json(),
               "terms": terms, "degree": prod.degree()}
        if not args.no_witness:
            obj["witness"] = witness.to_json()
        _emit(obj, args, out)
    else:
        inner = " + ".join(f"{t['coeff']}*[{t['label']}]" for t in terms)
        out.write(f"[{args.a}] * [{args.b}] = {inner}  (degree {prod.degree()})\n")
        if not args.no_witness:
            for k, o in enumerate(witness.orbits):
                out.write(f"  z_{k} = {o.z}  m = {o.m}  d = {o.d}  pairs = {list(o.pairs)}\n")
    return EXIT_OK


def _matrix_rows(M) -> list[list[str]]:
    return [[str(M[r, c]) for c in range(M.cols)] for r in range(M.rows)]


def cmd_hecke_matrix(args, out) -> int:
    N = args.gamma0
    if N < 1:
        raise UsageError("level must be positive")
    a = GroupElement.diag(1, args.p) if args.p is not None else args.matrix
    if args.cuspidal:
        if args.p is None:
            raise UsageError("--cuspidal needs --p")
        H = cuspidal_matrix(N, args.p)
    else:
        basis, _ = build_space(N)
        H = hecke_matrix(decompose(CongruenceSubgroup.gamma0(N), a), basis)
    M = H.matrix
    rows = _matrix_rows(M)
    if args.csv:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        out.write(buf.getvalue())
    elif args.json:
        data = eigen_data(M)
        _emit({"command": "hecke-matrix", "level": N, "a": a.to_json(), "cuspidal": args.cuspidal,
               "dim": M.rows, "matrix": rows, **data.to_json()}, args, out)
    else:
        out.write(f"T[{a}] on {'cuspidal ' if args.cuspidal else ''}modular symbols of level {N} (dim {M.rows})\n")
        for r in rows:
            out.write("  " + " ".join(x.rjust(4) for x in r) + "\n")
    return EXIT_OK


def cmd_eigs(args, out) -> int:
    N = args.gamma0
    if N < 1:
        raise UsageError("level must be positive")
    curve = _curve(args, N)
    results = []
    for p in args.p_list:
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise UsageError(f"{p} is not prime")
        if N % p == 0:
            raise UsageError(f"{p} divides the level {N}")
        data = eigen_data(cuspidal_matrix(N, p).matrix)
        row = {"p": p, **data.to_json()}
        if curve is not None:
            row["a_p"] = ap_oracle(curve, p)
        results.append(row)
    if args.json:
        basis, _ = build_space(N)
        _emit({"command": "eigs", "level": N, "dim": basis.dim, "results": results}, args, out)
    elif args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "eigenvalues", "a_p"])
        for r in results:
            w.writerow([r["p"], " ".join(map(str, r["eigenvalues"])), r.get("a_p", "")])
        out.write(buf.getvalue())
    else:
        out.write("p    eigenvalues        a_p\n")
        for r in results:
            ev = " ".join(map(str, r["eigenvalues"]))
            out.write(f"{r['p']:<4} {ev:<18} {r.get('a_p', '')}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    G = _group(args)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    curve = _curve(args, G.level)
    report = run_suite(args.suite, G, args.a, args.b, args.seed, args.trials, curve)
    if args.json:
        _emit({"command": "verify", "group": G.to_json(), "seed": args.seed, "trials": args.trials,
               **report.to_json()}, args, out)
    else:
        out.write(f"suite {args.suite} on {G}, seed {args.seed}\n")
        out.write("\n".join(report.lines()) + "\n")
        out.write("PASS\n" if report.passed else "FAIL\n")
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "decompose": cmd_decompose,
    "product": cmd_product,
    "hecke-matrix": cmd_hecke_matrix,
    "eigs": cmd_eigs,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except CapExceeded as exc:
        err.write(f"heckering: {exc}\n")
        return EXIT_CAP
    except (UsageError, HeckeError, ValueError) as exc:
        err.write(f"heckering: {exc}\n")
        return EXIT_USAGE
    text = buf.getvalue()
    if args.timing:
        elapsed = time.perf_counter() - start
        if args.json:
            obj = json.loads(text)
            obj["timing"] = round(elapsed, 6)
            text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
        else:
            text += f"time: {elapsed:.3f}s\n"
    out.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
