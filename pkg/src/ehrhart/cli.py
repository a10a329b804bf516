"""Command-line entry point: ``ehrhart <subcommand> ...``.

Every subcommand reads JSON from ``--in`` (or stdin) and writes JSON to
``--out`` (or stdout), so the commands compose in shell pipelines::

    ehrhart family sn --n 3 --l 1 | ehrhart ehrhart | ehrhart roots

Exit codes: 0 success, 1 domain error, 2 verification failure, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import families as fam
from .counting import WORK_CAP_ENV, count_table
from .errors import EhrhartError
from .lattice import LatticePolytope
from .polynomial import EhrhartPolynomial, ehrhart_and_hstar, to_hstar
from .reflexive import (critical_line_conditions, critical_line_criterion, reflexive_factorization,
                        reflexivity_report)
from .roots import (DEFAULT_TOL, braun_disc_check, classify_3d, critical_line_check, find_roots,
                    sn1_spectrum)

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------------------
# io


def _read_json(path: str | None):
    if path in (None, "-"):
        text = sys.stdin.read()
        source = "stdin"
    else:
        p = Path(path)
        if not p.is_file():
            raise FileNotFoundError(f"input file not found: {path}")
        text = p.read_text()
        source = path
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{source} is not valid JSON: {exc}") from None


def _dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _polytope(data) -> LatticePolytope:
    if isinstance(data, dict) and "polytope" in data:
        data = data["polytope"]
    return LatticePolytope.from_json(data)


# ---------------------------------------------------------------------------
# subcommands


def cmd_count(args) -> int:
    P = _polytope(_read_json(args.input))
    kmax = args.kmax if args.kmax is not None else P.dim + 1
    if kmax < 0:
        raise ValueError("--kmax must be >= 0")
    table = count_table(P, kmax, args.work_cap)
    _write(table.to_csv() if args.csv else _dumps(table.to_json()), args.output)
    return EXIT_OK


def ehrhart_json(P: LatticePolytope, E: EhrhartPolynomial, h) -> dict:
    return {"polytope": P.to_json(), "G": E.to_json(), "hstar": list(h)}


def cmd_ehrhart(args) -> int:
    P = _polytope(_read_json(args.input))
    E, h = ehrhart_and_hstar(P, args.work_cap)
    if args.csv:
        lines = ["i,G_i,a_i"] + [f"{i},{c},{a}" for i, (c, a) in enumerate(zip(E.coeffs, h))]
        _write("\n".join(lines) + "\n", args.output)
    else:
        _write(_dumps(ehrhart_json(P, E, h)), args.output)
    return EXIT_OK


def cmd_roots(args) -> int:
    data = _read_json(args.input)
    P = None
    if isinstance(data, dict) and "G" in data:
        E = EhrhartPolynomial.from_json(data["G"])
        if "polytope" in data:
            P = LatticePolytope.from_json(data["polytope"])
    else:
        P = _polytope(data)
        E, _ = ehrhart_and_hstar(P, args.work_cap)
    h = to_hstar(E)
    R = find_roots(E, args.tol)
    verdicts = {"critical_line": critical_line_check(R, args.tol)}
    if E.n >= 2:
        verdicts["braun_disc"] = braun_disc_check(R, E.n, args.tol)
    region = classify_3d(R, h[3], args.tol) if E.n == 3 else None
    if region is not None:
        verdicts["region_3d"] = region.to_json()
    if args.csv:
        if region is not None:
            text = region.to_csv()
        else:
            from .roots import fmt_decimal
            tag = "critical_line" if verdicts["critical_line"] else "off_critical_line"
            text = "re,im,tag\n" + "".join(f"{fmt_decimal(a)},{fmt_decimal(b)},{tag}\n" for a, b in R.roots)
        _write(text, args.output)
        return EXIT_OK
    out = {"G": E.to_json(), "hstar": list(h), **R.to_json(), "verdicts": verdicts}
    if P is not None:
        out["polytope"] = P.to_json()
    _write(_dumps(out), args.output)
    return EXIT_OK


def cmd_family(args) -> int:
    if ":" in args.name:
        spec = fam.parse_family(args.name)
        params = dict(spec.params)
        name = spec.family
    else:
        name, params = args.name, {}
    for key in ("n", "l", "k", "q"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    P = fam.build_family(name, **params)
    _write(_dumps(P.to_json()), args.output)
    return EXIT_OK


def reflexive_json(P: LatticePolytope) -> dict:
    E, h = ehrhart_and_hstar(P)
    rep = reflexivity_report(P, E, h)
    out = {"label": P.label, **rep.to_json()}
    if rep.is_reflexive and P.dim <= 4:
        out["critical_line"] = critical_line_criterion(P, E, h)
        if P.dim >= 2:
            out["factorization"] = reflexive_factorization(P, E, h).to_json()
        if P.dim == 4:
            c = critical_line_conditions(P, E, h)
            pair = lambda x: [str(x.numerator), str(x.denominator)]  # noqa: E731
            out["conditions"] = {"mu": pair(c.mu), "beta": pair(c.beta), "discriminant": c.discriminant,
                                 "doubled_hibi": c.doubled_hibi, "mu_guard": c.mu_guard}
    return out


def cmd_reflexive(args) -> int:
    if args.action == "check":
        P = _polytope(_read_json(args.input))
        _write(_dumps(reflexive_json(P)), args.output)
        return EXIT_OK
    root = Path(args.dir)
    if not root.is_dir():
        raise FileNotFoundError(f"directory not found: {args.dir}")
    results = []
    for path in sorted(root.glob("*.json")):
        try:
            results.append({"file": path.name, **reflexive_json(_polytope(json.loads(path.read_text())))})
        except (EhrhartError, ValueError, KeyError) as exc:
            results.append({"file": path.name, "error": f"{type(exc).__name__}: {exc}"})
    summary = {"scanned": len(results),
               "reflexive": sum(1 for r in results if r.get("is_reflexive")),
               "on_critical_line": sum(1 for r in results if r.get("critical_line")),
               "results": results}
    _write(_dumps(summary), args.output)
    return EXIT_OK


def cmd_sn1(args) -> int:
    bs = sorted(sn1_spectrum(args.n), reverse=True)
    ks = list(range(1, len(bs) + 1))
    if args.kmax is not None:
        ks = ks[: args.kmax]
    rows = [(k, bs[k - 1]) for k in ks]
    if args.csv:
        _write("k,b\n" + "".join(f"{k},{b!r}\n" for k, b in rows), args.output)
    else:
        _write(_dumps({"n": args.n, "spectrum": [{"k": k, "b": repr(b)} for k, b in rows]}), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_all, summarize
    suites = None if args.suite == "all" else [args.suite]
    reports = run_all(args.seed, args.trials, args.dim_max, suites, args.workers, args.inject_fault)
    summary = summarize(reports)
    _write(_dumps(summary), args.out)
    for claim, counts in summary["claims"].items():
        print(f"{claim:14s} " + " ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    return EXIT_VERIFY if summary["failures"] else EXIT_OK


# ---------------------------------------------------------------------------


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ehrhart", description="Ehrhart polynomials, h*-vectors and their roots.")
    parser.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="root tolerance")
    parser.add_argument("--work-cap", type=int, default=None,
                        help=f"lattice-point work cap (default from ${WORK_CAP_ENV} or 1e8)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io(p, csv=False):
        p.add_argument("--in", dest="input", help="input JSON (default stdin)")
        p.add_argument("--out", dest="output", help="output file (default stdout)")
        if csv:
            p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")

    p = sub.add_parser("count", help="lattice points of kP and int kP")
    io(p, csv=True)
    p.add_argument("--kmax", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial and h*-vector")
    io(p, csv=True)
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("roots", help="roots of the Ehrhart polynomial with region verdicts")
    io(p, csv=True)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("family", help="emit a named polytope as JSON")
    p.add_argument("name", help=f"one of {', '.join(fam.FAMILY_NAMES)}, optionally name:key=value,...")
    for key in ("n", "l", "k", "q"):
        p.add_argument(f"--{key}", type=int)
    p.add_argument("--out", dest="output")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("reflexive", help="reflexivity tests")
    rsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = rsub.add_parser("check")
    io(c)
    s = rsub.add_parser("scan")
    s.add_argument("--dir", required=True)
    s.add_argument("--out", dest="output")
    p.set_defaults(func=cmd_reflexive)

    p = sub.add_parser("sn1-spectrum", help="imaginary parts of the roots of G(s, S_n(1))")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmax", type=int)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--out", dest="output")
    p.set_defaults(func=cmd_sn1)

    p = sub.add_parser("verify", help="run the claim suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--dim-max", type=int, default=4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "command", None) == "sn1-spectrum" and args.n < 1:
        print("ehrhart: error: --n must be >= 1", file=sys.stderr)
        return EXIT_DOMAIN
    if getattr(args, "command", None) == "verify" and args.suite != "all":
        from .verify import SUITES
        if args.suite not in SUITES:
            print(f"ehrhart: error: unknown suite {args.suite!r}", file=sys.stderr)
            return EXIT_DOMAIN
    saved = os.environ.get(WORK_CAP_ENV)
    if args.work_cap is not None:
        os.environ[WORK_CAP_ENV] = str(args.work_cap)
    try:
        return args.func(args)
    except (EhrhartError, FileNotFoundError, ValueError, KeyError, TypeError) as exc:
        print(f"ehrhart: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        if saved is None:
            os.environ.pop(WORK_CAP_ENV, None)
        else:
            os.environ[WORK_CAP_ENV] = saved


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
