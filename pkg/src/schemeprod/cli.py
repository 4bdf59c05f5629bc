"""Command-line front end.

Exit status: 0 on success, 1 on a negative verdict (``verify``, ``iso``,
``example6``), 2 on bad input.  Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures
from .action import full_action, trivial_action
from .closure import as_closed, enumerate_closed_subsets, is_normal, quotient, subscheme
from .errors import ParseError, SchemeError
from .formats import (
    format_action,
    format_scheme,
    parse_action_file,
    parse_scheme_file,
    parse_table_text,
    write_action,
    write_scheme,
)
from .iso import algebraic_automorphisms, check_isomorphism, find_isomorphism
from .recovery import eta_relation_map, reconstruct, validate_split_data
from .scheme import is_symmetric, is_thin, thin_from_group, valencies
from .semidirect import (
    canonical_split,
    counting_table,
    semidirect_product,
    split_is_iso,
    verify_split_condition,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fmt_set(members) -> str:
    return "{" + ",".join(map(str, sorted(members))) + "}"


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _subset_arg(S, members):
    # relation 0 is always implied
    return as_closed(S, sorted(set(members) | {0}))


def cmd_verify(args) -> int:
    try:
        if str(args.file).endswith(".act"):
            action = parse_action_file(args.file)
            print("valid: true")
            print("kind: action")
            print(f"y_points: {action.m}")
            print(f"x_points: {action.n}")
            return EXIT_OK
        S = parse_scheme_file(args.file)
    except ParseError:
        raise
    except SchemeError as exc:
        print("valid: false")
        print(f"reason: {type(exc).__name__}: {exc}")
        return EXIT_NEGATIVE
    print("valid: true")
    print("kind: scheme")
    print(f"order: {S.n}")
    print(f"rank: {S.r}")
    print("valencies: " + " ".join(map(str, valencies(S))))
    print(f"thin: {str(is_thin(S)).lower()}")
    print(f"symmetric: {str(is_symmetric(S)).lower()}")
    return EXIT_OK


def cmd_constants(args) -> int:
    S = parse_scheme_file(args.file)
    for p in range(S.r):
        for q in range(S.r):
            for s in range(S.r):
                if S.constants[p][q][s]:
                    print(p, q, s, S.constants[p][q][s])
    return EXIT_OK


def cmd_closed(args) -> int:
    S = parse_scheme_file(args.file)
    for T in enumerate_closed_subsets(S):
        print(f"{_fmt_set(T.members)} valency={T.valency} normal={str(is_normal(S, T)).lower()}")
    return EXIT_OK


def cmd_quotient(args) -> int:
    S = parse_scheme_file(args.file)
    Q = quotient(S, _subset_arg(S, args.subset))
    _emit(format_scheme(Q.scheme), args.output)
    return EXIT_OK


def cmd_subscheme(args) -> int:
    S = parse_scheme_file(args.file)
    if not 0 <= args.point < S.n:
        raise SchemeError(f"point {args.point} out of range")
    sub = subscheme(S, _subset_arg(S, args.subset), args.point)
    _emit(format_scheme(sub.scheme, f"points {' '.join(map(str, sub.points))}\n"
                        f"relations {' '.join(map(str, sub.relations))}"), args.output)
    return EXIT_OK


def cmd_thin(args) -> int:
    path = Path(args.file)
    S = thin_from_group(parse_table_text(path.read_text(), str(path)))
    _emit(format_scheme(S), args.output)
    return EXIT_OK


def _product_cmd(builder):
    def run(args) -> int:
        U, T = parse_scheme_file(args.u), parse_scheme_file(args.t)
        sd = semidirect_product(builder(U, T))
        _emit(format_scheme(sd.scheme), args.output)
        if args.labels:
            Path(args.labels).write_text(sd.label_text())
        return EXIT_OK
    return run


def cmd_semidirect(args) -> int:
    sd = semidirect_product(parse_action_file(args.file))
    _emit(format_scheme(sd.scheme), args.output)
    if args.labels:
        Path(args.labels).write_text(sd.label_text())
    return EXIT_OK


def cmd_recover(args) -> int:
    S = parse_scheme_file(args.file)
    U = parse_scheme_file(args.u)
    t_tilde = _subset_arg(S, args.subset)
    if args.t is not None:
        T = parse_scheme_file(args.t)
    else:
        T = subscheme(S, t_tilde, S.basepoint).scheme
    split = validate_split_data(S, t_tilde, args.split, U, T)
    recovered, verdict = reconstruct(split)
    _emit(format_action(recovered.action), args.output)
    product = semidirect_product(recovered.action)
    print("eta_points: " + " ".join(map(str, recovered.eta)))
    if verdict:
        rel = eta_relation_map(split, product, recovered.eta)
        print("eta_relations: " + " ".join(map(str, rel)))
    else:
        print("eta_relations: none")
    return EXIT_OK if verdict else EXIT_NEGATIVE


def cmd_iso(args) -> int:
    A, B = parse_scheme_file(args.a), parse_scheme_file(args.b)
    iso = find_isomorphism(A, B, based=args.based)
    if iso is None:
        print("isomorphic: false")
        return EXIT_NEGATIVE
    print("isomorphic: true")
    print("points: " + " ".join(map(str, iso.point_bij)))
    print("relations: " + " ".join(map(str, iso.rel_bij)))
    return EXIT_OK


def example6_report(outdir: Path | None = None) -> tuple[list[tuple[str, str]], bool]:
    """Build the order-12 example end to end; returns report lines and the overall verdict."""
    T, U = fixtures.t3(), fixtures.u4()
    action = fixtures.example_action()
    sd = semidirect_product(action)
    S = sd.scheme
    H = fixtures.hm34(sd)
    split = canonical_split(sd)
    closed = enumerate_closed_subsets(S)
    iso = find_isomorphism(S, H)
    _, round_trip = reconstruct(split)
    collapse = (sd.label_lookup(1, 1) == sd.label_lookup(1, 0)
                and sd.label_lookup(3, 1) == sd.label_lookup(3, 0))
    proper = [c for c in closed if 1 < len(c.members) < S.r]
    checks = {
        "iso_hm34": iso is not None and check_isomorphism(S, H, iso),
        "split_condition": verify_split_condition(split),
        "split_iso": split_is_iso(split),
        "t_tilde_normal": is_normal(S, split.t_tilde),
        "counting_formula": counting_table(sd) == [[list(row) for row in plane] for plane in S.constants],
        "reconstruct": round_trip,
    }
    lines = [
        ("order", str(S.n)),
        ("rank", str(S.r)),
        ("valencies", " ".join(map(str, valencies(S)))),
        ("valency_multiset", " ".join(map(str, sorted(valencies(S))))),
        ("thin_relations", " ".join(str(s) for s in range(S.r) if valencies(S)[s] == 1)),
        ("labels", " ".join(f"{s}=[{u},{_fmt_set(c)}]" for s, (u, c) in enumerate(sd.labels))),
        ("collapse_u1_u3", str(collapse).lower()),
        ("symmetric", str(is_symmetric(S)).lower()),
        ("closed_subsets", " ".join(_fmt_set(c.members) for c in closed)),
        ("proper_normal", str(all(is_normal(S, c) for c in proper)).lower()),
        ("proper_automorphisms", " ".join(
            str(len(algebraic_automorphisms(subscheme(S, c, S.basepoint).scheme))) for c in proper)),
    ]
    lines += [(k, str(v).lower()) for k, v in checks.items()]
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
        write_scheme(T, outdir / "t3.scm", "complete graph on three points")
        write_scheme(U, outdir / "u4.scm", "thin scheme of Z/4, color(y1,y2) = y2 - y1 mod 4")
        write_scheme(S, outdir / "s12.scm", "semidirect product of the Z/4 action on T3")
        write_scheme(H, outdir / "hm34.scm", "product relabelled through the published tables")
        (outdir / "s12.labels").write_text(sd.label_text())
        write_action(action, outdir / "example6.act", u_ref="u4.scm", tau_ref="t3.scm")
        lines.append(("outdir", str(outdir)))
    return lines, all(checks.values()) and collapse


def cmd_example6(args) -> int:
    lines, ok = example6_report(Path(args.outdir) if args.outdir else None)
    for key, value in lines:
        print(f"{key}: {value}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schemeprod", description="Exact computations with association schemes.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify", help="check the scheme axioms of a .scm file (or an .act file)")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constants", help="print nonzero structure constants 'p q s a'")
    p.add_argument("file")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("closed", help="list closed subsets")
    p.add_argument("file")
    p.set_defaults(func=cmd_closed)

    p = sub.add_parser("quotient", help="quotient scheme S//T")
    p.add_argument("file")
    p.add_argument("--subset", type=_int_list, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("subscheme", help="subscheme on the coset of a point")
    p.add_argument("file")
    p.add_argument("--subset", type=_int_list, required=True)
    p.add_argument("--point", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_subscheme)

    p = sub.add_parser("thin", help="thin scheme from a group multiplication table")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_thin)

    for verb, builder, what in (("direct", trivial_action, "direct product"),
                                ("wreath", full_action, "wreath-type product")):
        p = sub.add_parser(verb, help=f"{what} of U.scm and T.scm")
        p.add_argument("u")
        p.add_argument("t")
        p.add_argument("-o", "--output")
        p.add_argument("--labels")
        p.set_defaults(func=_product_cmd(builder))

    p = sub.add_parser("semidirect", help="semidirect product of an .act file")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--labels", help="write the relation label table here")
    p.set_defaults(func=cmd_semidirect)

    p = sub.add_parser("recover", help="recover an action from a split scheme")
    p.add_argument("file")
    p.add_argument("--subset", type=_int_list, required=True)
    p.add_argument("--split", type=_int_list, required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--t")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("iso", help="search for an isomorphism")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--based", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("example6", help="build and check the order-12 worked example")
    p.add_argument("--outdir")
    p.set_defaults(func=cmd_example6)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SchemeError as exc:
        where = getattr(exc, "path", None)
        prefix = f"{where}: " if where and not isinstance(exc, ParseError) else ""
        print(f"error: {prefix}{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
