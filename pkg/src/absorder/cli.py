"""
Command-line front end.

    absorder ranks a3
    absorder verify b3 --all-k
    absorder factorize a2 "(1 3 2)"
    absorder dot a2 --claw-product

Exit codes: 0 success, 2 usage or parse error, 3 size guard exceeded,
4 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .absolute import build_absolute_order, claw_product, expected_rank_polynomial
from .factorization import (
    FactorizationError, embed_claw_product, factorize, format_factorization,
    verify_length_formula,
)
from .groups import (
    GroupError, GroupId, GroupTooLargeError, absolute_length, format_element,
    identity, parse_element, reflections,
)
from .poset import export_dot, rank_sequence
from .sperner import CertificateError, k_largest_ranks_sum, max_k_family, validate_certificate

log = logging.getLogger("absorder")

EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_FAILED = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _group(text: str) -> GroupId:
    try:
        return GroupId.parse(text)
    except GroupError as exc:
        raise UsageError(str(exc)) from None


def cmd_ranks(args) -> int:
    g = _group(args.group)
    computed = rank_sequence(build_absolute_order(g))
    expected = expected_rank_polynomial(g)
    match = computed == expected
    print(f"group:    {g}")
    print(f"computed: {computed}")
    print(f"expected: {expected}")
    print(f"match:    {'yes' if match else 'NO'}")
    return EXIT_OK if match else EXIT_FAILED


def build_report(g: GroupId, ks: list[int] | None) -> dict:
    """Run every check for ``g``; ``ks=None`` means all k from 1 to top rank + 1.

    Raises :class:`CertificateError` if any certificate fails validation.
    """
    timings: dict[str, float] = {}

    def timed(name, fn, *a):
        t0 = time.perf_counter()
        out = fn(*a)
        timings[name] = round((time.perf_counter() - t0) * 1000, 3)
        return out

    poset = timed("absolute_order", build_absolute_order, g)
    ranks = rank_sequence(poset)
    factorization_ok = timed("factorization", verify_length_formula, g)

    def embedding():
        try:
            embed_claw_product(g)
        except FactorizationError as exc:
            log.error("%s", exc)
            return False
        return True

    embedding_ok = timed("embedding", embedding)

    all_k = ks is None
    if all_k:
        ks = list(range(1, poset.top_rank + 2))
    entries = []
    t0 = time.perf_counter()
    for k in ks:
        cert = max_k_family(poset, k)
        validate_certificate(poset, cert)
        predicted = k_largest_ranks_sum(poset, k)
        entries.append({
            "k": k,
            "max_family_size": cert.size,
            "k_largest_ranks_sum": predicted,
            "is_k_sperner": cert.size == predicted,
        })
    timings["sperner"] = round((time.perf_counter() - t0) * 1000, 3)

    return {
        "group": str(g),
        "rank_sequence": ranks,
        "expected_rank_sequence": expected_rank_polynomial(g),
        "reflections_count": len(reflections(g)),
        "factorization_verified": factorization_ok,
        "embedding_verified": embedding_ok,
        "sperner": entries,
        "strong_sperner": all(e["is_k_sperner"] for e in entries) if all_k else None,
        "timings_ms": timings,
    }


def report_passed(report: dict) -> bool:
    return (report["rank_sequence"] == report["expected_rank_sequence"]
            and report["factorization_verified"]
            and report["embedding_verified"]
            and all(e["is_k_sperner"] for e in report["sperner"])
            and report["strong_sperner"] is not False)


def cmd_verify(args) -> int:
    g = _group(args.group)
    if args.k is not None and args.k < 1:
        raise UsageError("--k must be at least 1")
    try:
        report = build_report(g, None if args.k is None else [args.k])
    except CertificateError as exc:
        print(f"certificate validation failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK if report_passed(report) else EXIT_FAILED


def cmd_factorize(args) -> int:
    g = _group(args.group)
    try:
        w = parse_element(args.element, g)
    except GroupError as exc:
        raise UsageError(str(exc)) from None
    factors = factorize(w)
    count = sum(r != identity(g) for r in factors)
    length = absolute_length(w)
    print(format_factorization(factors))
    print(f"element: {format_element(w)}")
    print(f"non-identity factors: {count}, absolute length: {length}, "
          f"{'match' if count == length else 'MISMATCH'}")
    return EXIT_OK if count == length else EXIT_FAILED


def cmd_dot(args) -> int:
    g = _group(args.group)
    if args.claw_product:
        text = export_dot(claw_product(g), format_factorization, name=f"claw product {g}")
    else:
        text = export_dot(build_absolute_order(g), format_element, name=f"absolute order {g}")
    sys.stdout.write(text)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="absorder", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ranks", help="compare computed and expected rank sequences")
    p.add_argument("group", help="a<n>, b<n> or i2:<m>")
    p.set_defaults(func=cmd_ranks)

    p = sub.add_parser("verify", help="full verification report as JSON")
    p.add_argument("group")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--k", type=int, help="check a single k")
    which.add_argument("--all-k", action="store_true", help="check every k (default)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("factorize", help="tier factorization of one element")
    p.add_argument("group")
    p.add_argument("element", help='cycle notation, e.g. "(1 3 2)" or "((1,-2))[3]"')
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("dot", help="Graphviz DOT of the absolute order or claw product")
    p.add_argument("group")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--absolute", action="store_true", help="absolute order (default)")
    which.add_argument("--claw-product", action="store_true")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"absorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GroupTooLargeError as exc:
        print(f"absorder: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
