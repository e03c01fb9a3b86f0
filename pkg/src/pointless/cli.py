"""Command-line front end.

Machine-readable results go to stdout (canonical JSON by default, CSV for
the two census tables); diagnostics and progress go to stderr.  Exit
codes: 0 success/found, 1 legitimate not-found or exhausted search,
2 invalid input, 3 internal verification discrepancy.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .census import (
    CensusConfig,
    DEFAULT_RULES,
    direct_obtainable,
    exhaustive_pointless_search,
    missed_genera,
    table_small_primes,
    table_summary,
)
from .constructions import (
    Certificate,
    amplify_quadratic_factor,
    double_curve,
    doubled_certificate,
    explore_factor_2g,
    verify_budget,
)
from .curve import count_points, new_curve, quadratic_twist
from .errors import (
    DegenerateExponentError,
    DegenerateMapError,
    NonSquarefreeError,
    SearchBudgetExceededError,
    VerificationError,
)
from .field import canonical_nonsquare, make_field
from .poly import squarefree_witness
from .serialize import (
    canonical_json,
    certificate_to_dict,
    count_to_dict,
    curve_from_dict,
    curve_to_dict,
    missed_csv_lines,
    poly_from_coordinate_lists,
    row_to_dict,
    summary_csv_lines,
)
from .serialize import _field_from_dict

log = logging.getLogger(__name__)


def _payload_text(raw: str) -> str:
    """Inline JSON, @path for a file, or - for stdin."""
    if raw == "-":
        return sys.stdin.read()
    if raw.startswith("@"):
        with open(raw[1:], encoding="utf-8") as fh:
            return fh.read()
    return raw


def _load_json(raw: str):
    try:
        return json.loads(_payload_text(raw))
    except json.JSONDecodeError as exc:
        raise ValueError(f"payload is not valid JSON: {exc}") from None


def _curve_from_payload(data):
    """Accept either a curve object or a certificate (its pointless side)."""
    if not isinstance(data, dict):
        raise ValueError("payload must be a JSON object")
    if "method" in data:
        field = _field_from_dict(data)
        return new_curve(field, poly_from_coordinate_lists(field, data["twist_f"]))
    return curve_from_dict(data)


def _rules_from(args) -> tuple:
    if getattr(args, "rules", None):
        return tuple(s.strip() for s in args.rules.split(",") if s.strip())
    return DEFAULT_RULES


def _emit(text: str):
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_construct(args) -> int:
    field = make_field(args.p, args.r)
    cert = _construct_chain(args.genus, field, _rules_from(args))
    if cert is None:
        print(
            f"no construction reaches genus {args.genus} over {field}",
            file=sys.stderr,
        )
        return 1
    _emit(canonical_json(certificate_to_dict(cert)))
    return 0


def _construct_chain(g: int, field, rules):
    if g < 2:
        return None
    if field.r == 1:
        cert = direct_obtainable(g, field.p, CensusConfig(mode="verified", rules=rules))
    else:
        from .constructions import try_modp, try_modp_prime

        cert = try_modp(g, field) or try_modp_prime(g, field)
    if cert is not None:
        return cert
    if g % 2 == 1 and (g - 1) // 2 >= 2:
        parent = _construct_chain((g - 1) // 2, field, rules)
        if parent is not None:
            return doubled_certificate(parent)
    return None


def _cmd_count(args) -> int:
    curve = _curve_from_payload(_load_json(args.curve))
    _emit(canonical_json(count_to_dict(count_points(curve))))
    return 0


def _cmd_twist(args) -> int:
    curve = _curve_from_payload(_load_json(args.curve))
    _emit(canonical_json(curve_to_dict(quadratic_twist(curve))))
    return 0


def _cmd_double(args) -> int:
    curve = _curve_from_payload(_load_json(args.curve))
    _emit(canonical_json(curve_to_dict(double_curve(curve))))
    return 0


def _cmd_census(args) -> int:
    config = CensusConfig(
        mode=args.mode, rules=_rules_from(args), bound_override=args.bound
    )
    row = missed_genera(args.p, config)
    if args.format == "csv":
        for line in missed_csv_lines([row]):
            _emit(line)
    else:
        _emit(canonical_json(row_to_dict(row)))
    return 0


def _cmd_table(args) -> int:
    config = CensusConfig(mode=args.mode, rules=_rules_from(args))
    if args.figure == 1:
        rows = table_small_primes(config)
        csv_lines = missed_csv_lines(rows)
    elif args.figure == 2:
        rows = table_summary(97, config, min_p=29, threads=args.threads)
        csv_lines = summary_csv_lines(rows)
    else:
        if args.max_p is None:
            raise ValueError("table needs --figure 1, --figure 2, or --max-p")
        rows = table_summary(args.max_p, config, min_p=args.min_p, threads=args.threads)
        csv_lines = summary_csv_lines(rows)
    if args.format == "csv":
        for line in csv_lines:
            _emit(line)
    else:
        _emit(canonical_json([row_to_dict(row) for row in rows]))
    return 0


def _cmd_exhaustive(args) -> int:
    field = make_field(args.p, args.r)
    curve = exhaustive_pointless_search(
        field, args.genus, budget=args.budget, threads=args.threads
    )
    if curve is None:
        print(
            f"search exhausted: no pointless genus-{args.genus} curve over {field}",
            file=sys.stderr,
        )
        return 1
    _emit(canonical_json(curve_to_dict(curve)))
    return 0


def _cmd_verify(args) -> int:
    data = _load_json(args.payload)
    if not isinstance(data, dict):
        raise ValueError("payload must be a JSON object")
    if "method" in data:
        return _verify_certificate(data)
    curve = curve_from_dict(data)
    count = count_points(curve)
    report = {
        "kind": "curve",
        "genus": curve.genus,
        "squarefree": True,
        "count": count_to_dict(count),
    }
    _emit(canonical_json(report))
    return 0


def _verify_certificate(data: dict) -> int:
    for key in ("method", "params", "f", "twist_f", "N", "verified"):
        if key not in data:
            raise ValueError(f"certificate lacks {key!r}")
    field = _field_from_dict(data)
    f = poly_from_coordinate_lists(field, data["f"])
    twist = poly_from_coordinate_lists(field, data["twist_f"])
    c = canonical_nonsquare(field)
    checks = {}
    checks["twist_relation"] = twist == f * c
    witness = squarefree_witness(twist) if twist.degree >= 1 else twist
    checks["squarefree"] = witness is None
    checks["shape"] = twist.degree >= 4 and twist.degree % 2 == 0
    genus = (twist.degree - 2) // 2 if checks["shape"] else None
    method = data["method"]
    params = data["params"] if isinstance(data["params"], dict) else {}
    if method in ("modp", "modp_prime", "relprime", "q_minus_a") and genus is not None:
        from .constructions import standard_poly

        l = params.get("l", 1)
        try:
            checks["construction"] = f == standard_poly(genus, field, l)
        except ValueError:
            checks["construction"] = False
    counted = None
    if checks["squarefree"] and checks["shape"] and field.q <= verify_budget():
        counted = count_points(new_curve(field, twist)).total
        checks["count"] = counted == data["N"]
    report = {
        "kind": "certificate",
        "method": method,
        "genus": genus,
        "checks": checks,
        "recount": counted,
        "ok": all(v for v in checks.values()),
    }
    _emit(canonical_json(report))
    if not report["ok"]:
        print(
            "verification failed: "
            + ", ".join(k for k, v in checks.items() if not v)
            + (f"; witness {witness}" if witness is not None else ""),
            file=sys.stderr,
        )
        return 3
    return 0


def _cmd_factor_explore(args) -> int:
    curve = _curve_from_payload(_load_json(args.curve))
    field = curve.field
    inv_c = field.one() / canonical_nonsquare(field)
    if args.goal == "2g-1":
        out = amplify_quadratic_factor(curve)
        if out is None:
            print(
                "no irreducible quadratic factor to amplify", file=sys.stderr
            )
            return 1
        cert = Certificate(
            method="factor_2g_minus_1",
            params={},
            construction_poly=out.f * inv_c,
            curve=out,
            count=count_points(out),
            verified={"squarefree": True, "count": True},
        )
        _emit(canonical_json(certificate_to_dict(cert)))
        return 0
    print(
        "experimental: probing for genus 2g with no known construction; "
        "a miss is the expected outcome",
        file=sys.stderr,
    )
    out = explore_factor_2g(curve, search_budget=args.search_budget)
    if out is None:
        print(
            f"experimental search found no genus-{2 * curve.genus} curve "
            f"within {args.search_budget} candidates",
            file=sys.stderr,
        )
        return 1
    cert = Certificate(
        method="factor_2g",
        params={},
        construction_poly=out.f * inv_c,
        curve=out,
        count=count_points(out),
        verified={"squarefree": True, "count": True},
    )
    print("experimental result; verify independently", file=sys.stderr)
    _emit(canonical_json(certificate_to_dict(cert)))
    return 0


def _cmd_report(args) -> int:
    from .report import render_report

    written = render_report(args.out, threads=args.threads)
    _emit(canonical_json({"written": [os.path.basename(w) for w in written]}))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_field_flags(sub, genus=True):
    sub.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    sub.add_argument("--r", type=int, default=1, help="extension degree (default 1)")
    if genus:
        sub.add_argument("--genus", type=int, required=True)


def _add_format_flag(sub):
    sub.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointless",
        description="Construct, count, and take censuses of pointless "
        "hyperelliptic curves over small finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", help="build a certified pointless curve")
    _add_field_flags(s)
    s.add_argument("--rules", help="comma-separated rule cascade override")
    s.set_defaults(func=_cmd_construct)

    s = sub.add_parser("count", help="count points of a curve payload")
    s.add_argument("--curve", required=True, help="JSON, @file, or - for stdin")
    s.set_defaults(func=_cmd_count)

    s = sub.add_parser("twist", help="quadratic twist of a curve payload")
    s.add_argument("--curve", required=True, help="JSON, @file, or - for stdin")
    s.set_defaults(func=_cmd_twist)

    s = sub.add_parser("double", help="double the genus of a pointless curve")
    s.add_argument("--curve", required=True, help="JSON, @file, or - for stdin")
    s.set_defaults(func=_cmd_double)

    s = sub.add_parser("census", help="missed genera for one prime")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--mode", choices=("faithful", "verified"), default="faithful")
    s.add_argument("--rules", help="comma-separated rule cascade override")
    s.add_argument("--bound", type=int, default=None, help="window top override")
    _add_format_flag(s)
    s.set_defaults(func=_cmd_census)

    s = sub.add_parser("table", help="census tables over a prime range")
    s.add_argument("--figure", type=int, choices=(1, 2), default=None)
    s.add_argument("--max-p", type=int, default=None)
    s.add_argument("--min-p", type=int, default=3)
    s.add_argument("--mode", choices=("faithful", "verified"), default="faithful")
    s.add_argument("--rules", help="comma-separated rule cascade override")
    s.add_argument("--threads", type=int, default=None)
    _add_format_flag(s)
    s.set_defaults(func=_cmd_table)

    s = sub.add_parser("exhaustive", help="enumerate models for one genus")
    _add_field_flags(s)
    s.add_argument("--budget", type=int, default=None, help="candidate cap")
    s.add_argument("--threads", type=int, default=None)
    s.set_defaults(func=_cmd_exhaustive)

    s = sub.add_parser("verify", help="recheck a certificate or curve payload")
    s.add_argument("--payload", required=True, help="JSON, @file, or - for stdin")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser(
        "factor-explore", help="genus 2g-1 via a quadratic factor, or probe 2g"
    )
    s.add_argument("--curve", required=True, help="JSON, @file, or - for stdin")
    s.add_argument("--goal", choices=("2g-1", "2g"), default="2g-1")
    s.add_argument("--search-budget", type=int, default=512)
    s.set_defaults(func=_cmd_factor_explore)

    s = sub.add_parser("report", help="write census tables, charts, and summary")
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--threads", type=int, default=None)
    s.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonSquarefreeError as exc:
        print(f"invalid curve: {exc}", file=sys.stderr)
        return 2
    except (
        ValueError,
        KeyError,
        OSError,
        DegenerateExponentError,
        DegenerateMapError,
        SearchBudgetExceededError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification discrepancy: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
