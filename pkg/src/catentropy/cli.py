"""Command-line interface: one subcommand per module plus a self test.

Exit codes: 0 success, 1 self-test failure, 2 parse error, 3 domain
error, 4 internal inconsistency.  ``--json`` emits a canonical envelope
that is byte-identical across runs on the same canonical input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import exact_linalg, jsonio
from .errors import (
    CatEntropyError,
    DomainError,
    InternalInconsistency,
    ParseError,
)
from .exact_linalg import MAX_BITS, growth_signature
from .growth_estimator import fit_growth
from .quiver_hereditary import coxeter_matrix, euler_form, hereditary_report
from .selftest import run_selftest
from .sl2z_dynamics import Context, crosscheck_with_lattice, parse_word, trichotomy_report
from .twist_zoo import (
    TwistKind,
    TwistParams,
    ptwist_bound,
    ptwist_recurrence,
    spherical_bound,
    spherical_recurrence,
    twist_entropy_report,
)
from .variety_dynamics import (
    kuenneth_self_product,
    line_bundle_report,
    pullback_entropy_report,
    validate_geometric,
)

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_INTERNAL = 4


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))


def _print_envelope(env: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(jsonio.canonical_json(env) + "\n")
        return
    out.write("command: %s\n" % env["command"])
    out.write("inputs digest: %s\n" % env["inputs_digest"])
    for warning in env["warnings"]:
        out.write("warning: %s\n" % warning)
    _print_tree(env["results"], out, indent=0)


def _print_tree(obj, out, indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for key in sorted(obj, key=str):
            value = obj[key]
            if isinstance(value, (dict, list, tuple)) and value:
                out.write("%s%s:\n" % (pad, key))
                _print_tree(value, out, indent + 1)
            else:
                out.write("%s%s: %s\n" % (pad, key, _scalar(value)))
    elif isinstance(obj, (list, tuple)):
        for item in obj:
            if isinstance(item, (dict, list, tuple)):
                out.write("%s-\n" % pad)
                _print_tree(item, out, indent + 1)
            else:
                out.write("%s- %s\n" % (pad, _scalar(item)))
    else:
        out.write("%s%s\n" % (pad, _scalar(obj)))


def _scalar(value) -> str:
    if isinstance(value, float):
        return "%.12g" % value
    if isinstance(value, Fraction):
        return str(value)
    if value is None:
        return "-"
    if isinstance(value, (list, tuple, dict)) and not value:
        return "(none)"
    return str(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catentropy",
        description=(
            "Exact growth invariants of categorical and algebraic dynamical "
            "systems"
        ),
    )
    parser.add_argument(
        "--json", action="store_true", help="emit a canonical JSON envelope"
    )
    parser.add_argument(
        "--tol",
        type=float,
        default=1e-12,
        help="width cap for certified spectral-radius intervals",
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=MAX_BITS,
        help="escalation cap (bits) for root-modulus separation",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("growth", help="growth signature of an exact matrix")
    p.add_argument("matrix", help="matrix file (JSON with \"rows\"; - for stdin)")

    p = sub.add_parser("classify", help="classify a twist word")
    p.add_argument(
        "--context",
        choices=[c.value for c in Context],
        required=True,
    )
    p.add_argument("tokens", nargs="+", help="word tokens, e.g. T1 T2^-1 [3]")

    p = sub.add_parser("endo", help="dynamical degrees of a pullback action")
    p.add_argument("endo", help="endomorphism file (- for stdin)")
    p.add_argument(
        "--kuenneth",
        action="store_true",
        help="also verify the self-product convolution identities",
    )

    p = sub.add_parser("linebundle", help="line-bundle twist invariants")
    p.add_argument("linebundle", help="line-bundle file (- for stdin)")

    p = sub.add_parser("twist", help="twist bounds and entropy branches")
    p.add_argument("--kind", choices=[k.value for k in TwistKind], required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orth", action="store_true", help="orthogonal part is nonzero")

    p = sub.add_parser("quiver", help="Euler form, Coxeter matrix, entropy report")
    p.add_argument("quiver", help="quiver file (- for stdin)")
    p.add_argument(
        "--isometry",
        help="matrix file with the isometry to analyse (default: Coxeter)",
    )

    p = sub.add_parser("estimate", help="fit growth data to a value sequence")
    p.add_argument("sequence", help="sequence file (- for stdin)")
    p.add_argument("--n-lo", type=int, default=None)
    p.add_argument("--n-hi", type=int, default=None)
    p.add_argument("--drop-head", type=float, default=0.25)

    p = sub.add_parser("selftest", help="run the executable invariant corpus")
    p.add_argument("--filter", default=None, help="substring filter on check keys")
    p.add_argument(
        "--corrupt",
        action="store_true",
        help="negative control: corrupt one Gram matrix and expect failure",
    )
    return parser


def _cmd_growth(args, warnings: list[str]) -> tuple[dict, object]:
    m, payload = jsonio.parse_matrix_text(_read_input(args.matrix))
    sig = growth_signature(m)
    if sig.tied:
        warnings.append(
            "root moduli stayed inseparable at the precision cap; "
            "the reported exponent is the conservative larger value"
        )
    return jsonio.serialize_growth(sig), payload


def _cmd_classify(args, warnings: list[str]) -> tuple[dict, object]:
    context = Context(args.context)
    word = parse_word(args.tokens, context)
    report = trichotomy_report(word)
    crosscheck = crosscheck_with_lattice(word)
    if not crosscheck["consistent"]:
        raise InternalInconsistency(
            "trichotomy values disagree with the lattice growth data"
        )
    payload = {"context": context.value, "word": [list(l) for l in word.letters]}
    return jsonio.serialize_trichotomy(report, crosscheck), payload


def _cmd_endo(args, warnings: list[str]) -> tuple[dict, object]:
    endo, payload = jsonio.parse_endo_text(_read_input(args.endo))
    warnings.extend(validate_geometric(endo))
    rep = pullback_entropy_report(endo)
    kuenneth = kuenneth_self_product(endo) if args.kuenneth else None
    return jsonio.serialize_endo_report(rep, kuenneth), payload


def _cmd_linebundle(args, warnings: list[str]) -> tuple[dict, object]:
    lb, payload = jsonio.parse_linebundle_text(_read_input(args.linebundle))
    rep = line_bundle_report(lb)
    if rep.h_pol_exact is None:
        warnings.append(
            "no positivity flag: only the bounds [nu, dim] are certified"
        )
    return jsonio.serialize_linebundle_report(rep), payload


def _cmd_twist(args, warnings: list[str]) -> tuple[dict, object]:
    params = TwistParams(
        kind=TwistKind(args.kind),
        d=args.d,
        t=args.t,
        A=args.A,
        B=args.B,
        orth_nonempty=args.orth,
    )
    if params.kind is TwistKind.SPHERICAL:
        bound = spherical_bound(params, args.n)
        rec = spherical_recurrence(params, args.n)
    else:
        bound = ptwist_bound(params, args.n)
        rec = ptwist_recurrence(params, args.n)
    rep = twist_entropy_report(params)
    payload = {
        "kind": params.kind.value,
        "d": params.d,
        "t": params.t,
        "A": params.A,
        "B": params.B,
        "n": args.n,
        "orth": params.orth_nonempty,
    }
    return jsonio.serialize_twist_report(rep, bound, rec, args.n), payload


def _cmd_quiver(args, warnings: list[str]) -> tuple[dict, object]:
    quiver, payload = jsonio.parse_quiver_text(_read_input(args.quiver))
    lattice = euler_form(quiver)
    if args.isometry:
        isometry, iso_payload = jsonio.parse_matrix_text(_read_input(args.isometry))
        payload = {"quiver": payload, "isometry": iso_payload}
    else:
        isometry = coxeter_matrix(quiver)
        payload = {"quiver": payload, "isometry": "coxeter"}
    rep = hereditary_report(lattice, isometry)
    results = {
        "gram": [[str(x) for x in row] for row in lattice.gram.rows],
        "isometry": [[str(x) for x in row] for row in isometry.rows],
        "report": jsonio.serialize_hereditary_report(rep),
    }
    return results, payload


def _cmd_estimate(args, warnings: list[str]) -> tuple[dict, object]:
    seq, payload = jsonio.parse_sequence_text(_read_input(args.sequence))
    est = fit_growth(
        seq, n_lo=args.n_lo, n_hi=args.n_hi, drop_head_fraction=args.drop_head
    )
    if est.residual > 0.1:
        warnings.append(
            "residual %.3f exceeds 0.1: a single regression cannot separate "
            "upper from lower growth here" % est.residual
        )
    return jsonio.serialize_estimate(est), payload


_COMMANDS = {
    "growth": _cmd_growth,
    "classify": _cmd_classify,
    "endo": _cmd_endo,
    "linebundle": _cmd_linebundle,
    "twist": _cmd_twist,
    "quiver": _cmd_quiver,
    "estimate": _cmd_estimate,
}


def main(argv=None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK

    # Global precision knobs apply to every certified-interval computation
    # below this point; the command layer is single-threaded.
    exact_linalg.DEFAULTS["tolerance"] = Fraction(args.tol).limit_denominator(
        10**24
    )
    exact_linalg.DEFAULTS["max_bits"] = max(64, args.precision)

    if args.cmd == "selftest":
        rc = run_selftest(
            name_filter=args.filter,
            corrupt=args.corrupt,
            emit=lambda line: out.write(line + "\n"),
        )
        return EXIT_SELFTEST if rc else EXIT_OK

    warnings: list[str] = []
    try:
        results, payload = _COMMANDS[args.cmd](args, warnings)
    except ParseError as exc:
        sys.stderr.write("parse error: %s\n" % exc)
        return EXIT_PARSE
    except InternalInconsistency as exc:
        sys.stderr.write("internal inconsistency (bug): %s\n" % exc)
        return EXIT_INTERNAL
    except DomainError as exc:
        sys.stderr.write("domain error: %s\n" % exc)
        return EXIT_DOMAIN
    except CatEntropyError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_DOMAIN
    env = jsonio.envelope(args.cmd, payload, results, warnings)
    _print_envelope(env, args.json, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
