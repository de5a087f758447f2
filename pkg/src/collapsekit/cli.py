"""Command-line interface.

Exit codes: 0 success / accepted / LC, 1 rejected / NOT_LC, 2 undecided,
64 usage error, 65 malformed input file.
"""

from __future__ import annotations

import argparse
import sys

from . import generators
from .collapse import Certificate, collapse_to_dim, verify_certificate
from .complex import ComplexError, product, remove_facet
from .formats import (
    FormatError,
    checksum,
    read_certificate,
    read_complex,
    write_certificate,
    write_complex,
)
from .homology import euler_characteristic, gf2_betti, is_pseudomanifold
from .labels import LabelError, Pair, parse_label
from .product_transfer import (
    CertificationError,
    FactorWitness,
    LCVerdict,
    certify_factor,
    check_witness,
    lc_certify,
    punctured_product_collapse,
    transfer_collapse,
)

EXIT_OK, EXIT_REJECTED, EXIT_UNDECIDED, EXIT_USAGE, EXIT_DATAERR = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(values) -> str:
    return " ".join(str(n) for n in values)


def _load(path):
    try:
        return read_complex(path)
    except (OSError, FormatError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_cert(path):
    try:
        return read_certificate(path)
    except (OSError, FormatError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _label(text):
    try:
        return parse_label(text)
    except LabelError as exc:
        raise UsageError(f"bad face label {text!r}: {exc}") from None


def _save_cert(cert: Certificate, source, path) -> None:
    cert.source_checksum = checksum(source)
    write_certificate(cert, path)


SHAPES = {
    "boundary-cube": (generators.boundary_cube, int),
    "boundary-simplex": (generators.boundary_simplex, int),
    "cube": (generators.solid_cube, int),
    "simplex": (generators.solid_simplex, int),
    "cycle": (generators.cycle, int),
}


def cmd_gen(args) -> int:
    if args.shape == "dunce-hat":
        if args.params:
            raise UsageError("dunce-hat takes no parameters")
        C = generators.dunce_hat()
    elif args.shape == "tree-of-cubes":
        if not args.params:
            raise UsageError("tree-of-cubes needs a dimension and glue directions like 0:+1")
        try:
            d = int(args.params[0])
        except ValueError:
            raise UsageError("tree-of-cubes dimension must be an integer") from None
        C = generators.tree_of_cubes(d, args.params[1:])
    elif args.shape in SHAPES:
        fn, conv = SHAPES[args.shape]
        if len(args.params) != 1:
            raise UsageError(f"{args.shape} takes exactly one parameter")
        try:
            C = fn(conv(args.params[0]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError(f"unknown shape {args.shape!r}; choose from "
                         + ", ".join(sorted([*SHAPES, "dunce-hat", "tree-of-cubes"])))
    write_complex(C, args.output)
    print(f"wrote {args.output}\tf-vector\t{_ints(C.f_vector())}")
    return EXIT_OK


def cmd_product(args) -> int:
    C = product(_load(args.first), _load(args.second))
    write_complex(C, args.output)
    print(f"wrote {args.output}\tf-vector\t{_ints(C.f_vector())}")
    return EXIT_OK


def cmd_puncture(args) -> int:
    C = _load(args.complex)
    facet = _label(args.facet) if args.facet else C.facets()[0]
    P = remove_facet(C, facet)
    write_complex(P, args.output)
    print(f"removed {facet}\tfaces\t{len(P)}")
    return EXIT_OK


def cmd_collapse(args) -> int:
    C = _load(args.complex)
    out = collapse_to_dim(C, args.target_dim, args.strategy, args.seed, args.restarts,
                          ordered=not args.unordered, workers=args.workers)
    if not out.found:
        print(f"{out.verdict.value}\trestarts\t{out.restarts_used}")
        return EXIT_UNDECIDED
    rep = verify_certificate(C, out.certificate)
    _save_cert(out.certificate, C, args.output)
    print(f"FOUND\tpairs\t{len(out.certificate)}\tremainder\t{_ints(rep.remainder_f)}"
          f"\trestarts\t{out.restarts_used}")
    return EXIT_OK


def cmd_transfer(args) -> int:
    certA = _load_cert(args.cert)
    A, B = _load(args.first), _load(args.second)
    cert = transfer_collapse(certA, A, B)
    _save_cert(cert, product(A, B), args.output)
    print(f"TRANSFERRED\tpairs\t{len(cert)}")
    return EXIT_OK


def cmd_pp_collapse(args) -> int:
    A, B = _load(args.first), _load(args.second)
    certA, certB = _load_cert(args.cert_first), _load_cert(args.cert_second)
    fa, fb = _label(args.facet_first), _label(args.facet_second)
    cert = punctured_product_collapse(A, fa, certA, B, fb, certB)
    source = remove_facet(product(A, B), Pair(fa, fb))
    rep = verify_certificate(source, cert)
    _save_cert(cert, source, args.output)
    print(f"COLLAPSED\tpairs\t{len(cert)}\tremainder\t{_ints(rep.remainder_f)}")
    return EXIT_OK


def _witness(spec, args) -> FactorWitness:
    if len(spec) == 1:
        return certify_factor(_load(spec[0]), strategy=args.strategy, seed=args.seed,
                              max_restarts=args.restarts, workers=args.workers)
    if len(spec) == 3:
        A = _load(spec[0])
        w = FactorWitness(A, _label(spec[1]), _load_cert(spec[2]), 0)
        w.remainder_dim = check_witness(w).top_dim
        return w
    raise UsageError("--factor takes CPLX or CPLX FACET CERT")


def cmd_certify_lc(args) -> int:
    M = _load(args.complex)
    witnesses = None
    if args.mode == "constructive":
        if not args.factor:
            raise UsageError("constructive mode needs --factor arguments")
        witnesses = [_witness(spec, args) for spec in args.factor]
    elif args.factor:
        raise UsageError("--factor is only valid with --mode constructive")
    res = lc_certify(M, args.mode, args.facets, witnesses=witnesses, strategy=args.strategy,
                     seed=args.seed, max_restarts=args.restarts, workers=args.workers)
    if res.verdict is LCVerdict.LC:
        if args.output:
            _save_cert(res.certificate, remove_facet(M, res.facet_used), args.output)
        print(f"LC\tfacet\t{res.facet_used}\tpairs\t{len(res.certificate)}"
              f"\tremainder_dim\t{res.remainder_dim}")
        return EXIT_OK
    if res.verdict is LCVerdict.NOT_LC:
        print(f"NOT_LC\tfacet\t{res.facet_used}\t{res.obstruction}")
        return EXIT_REJECTED
    print(f"UNDECIDED\tfacet\t{res.facet_used}")
    return EXIT_UNDECIDED


def cmd_verify(args) -> int:
    C = _load(args.complex)
    cert = _load_cert(args.cert)
    if cert.source_checksum and cert.source_checksum != checksum(C):
        print("REJECTED\tsource checksum does not match the complex")
        return EXIT_REJECTED
    rep = verify_certificate(C, cert, check_homology=args.check_homology)
    if not rep.accepted:
        print(f"REJECTED\tstep\t{rep.failing_step}\t{rep.reason}")
        return EXIT_REJECTED
    print(f"ACCEPTED\tpairs\t{len(cert)}\tremainder\t{_ints(rep.remainder_f)}"
          f"\tdim\t{rep.remainder_dim}")
    return EXIT_OK


def cmd_invariants(args) -> int:
    C = _load(args.complex)
    pm = is_pseudomanifold(C)
    print(f"f-vector\t{_ints(C.f_vector())}")
    print(f"euler\t{euler_characteristic(C)}")
    print(f"betti\t{_ints(gf2_betti(C))}")
    print(f"pseudomanifold\t{'true' if pm else 'false'}")
    return EXIT_OK


def _search_flags(p) -> None:
    p.add_argument("--strategy", choices=["lex", "random"], default="lex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="collapsekit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a named complex")
    p.add_argument("shape")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("product", help="product of two complexes")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("puncture", help="remove one facet")
    p.add_argument("complex")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--facet")
    g.add_argument("--auto", action="store_true", help="lexicographically first facet (default)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_puncture)

    p = sub.add_parser("collapse", help="greedy collapse search")
    p.add_argument("complex")
    p.add_argument("--target-dim", type=int, required=True)
    _search_flags(p)
    p.add_argument("--unordered", action="store_true",
                   help="do not force the highest-dimensional free pair first")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("transfer", help="lift a collapse of A to A x B")
    p.add_argument("cert")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("pp-collapse", help="collapse a punctured product")
    for name in ("first", "facet_first", "cert_first", "second", "facet_second", "cert_second"):
        p.add_argument(name)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_pp_collapse)

    p = sub.add_parser("certify-lc", help="certify the LC property")
    p.add_argument("complex")
    p.add_argument("--mode", choices=["search", "constructive"], default="search")
    p.add_argument("--factor", nargs="+", action="append", metavar="ARG",
                   help="CPLX, or CPLX FACET CERT; repeat once per factor")
    p.add_argument("--facets", choices=["first", "all"], default="first")
    _search_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_certify_lc)

    p = sub.add_parser("verify", help="replay a certificate")
    p.add_argument("complex")
    p.add_argument("cert")
    p.add_argument("--check-homology", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="f-vector, Euler characteristic, GF(2) Betti numbers")
    p.add_argument("complex")
    p.set_defaults(func=cmd_invariants)
    return parser


def run(argv: list[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except CertificationError as exc:
        print(f"REJECTED\t{exc}")
        return EXIT_REJECTED
    except ComplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
