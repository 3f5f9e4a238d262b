"""Batch command-line front door.

Commands ingest a space document, run the requested construction or audit
and emit a deterministic JSON report envelope (JSON lines for audits).
Exit code 2 flags usage or parse errors; audits exit 0 when every
refutation belongs to the documented known-delicate set and 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import approx, claims, quotient, tarski
from .ingest import block_graph_dot, parse_document
from .reports import canonical_json, envelope
from .spaces import canon, dom, enumerate_blocks, theta0

from .claims import KNOWN_DELICATE


def _add_doc_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="space document file, or - for stdin")
    p.add_argument("--format", choices=["pairs-json", "matrix-text", "info-table-csv"],
                   default="pairs-json")
    p.add_argument("--theta", type=float, default=None,
                   help="similarity threshold for info-table-csv")


def _read_doc(args) -> str:
    if args.input == "-":
        return sys.stdin.read()
    return Path(args.input).read_text()


def _load_space(args):
    return parse_document(_read_doc(args), args.format, args.theta)


def _emit(doc) -> None:
    sys.stdout.write(canonical_json(doc) + "\n")


def _parse_subset(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(t) for t in text.split(","))


def cmd_blocks(args) -> int:
    space = _load_space(args)
    family = enumerate_blocks(space)
    payload = {
        "blocks": [list(canon(b)) for b in family.blocks],
        "theta0_classes": [list(canon(c)) for c in theta0(space)],
        "dom": [list(canon(dom(space, x))) for x in range(space.n)],
        "dot": block_graph_dot(space, family.blocks),
    }
    _emit(envelope("blocks", payload, space=space))
    return 0


_OPERATORS = ("l0", "u0", "lbreve", "ubreve", "l", "u", "lstar", "ustar",
              "ltheta", "utheta", "profile", "primitive")


def cmd_approx(args) -> int:
    space = _load_space(args)
    family = enumerate_blocks(space)
    a = _parse_subset(args.subset)
    if any(x >= space.n for x in a):
        raise ValueError("subset index out of range")
    ops = args.operators.split(",") if args.operators else list(_OPERATORS)
    for op in ops:
        if op not in _OPERATORS:
            raise ValueError(f"unknown operator {op!r}")
    ec = args.empty_cover

    def setval(s):
        return "undefined" if s is None else list(canon(s))

    out = {}
    for op in ops:
        if op == "l0":
            out[op] = setval(approx.lower_zero(space, family, a))
        elif op == "u0":
            out[op] = setval(approx.upper_zero(space, family, a, ec))
        elif op == "lbreve":
            out[op] = setval(approx.lateral_lower(space, family, a))
        elif op == "ubreve":
            out[op] = setval(approx.lateral_upper(space, family, a))
        elif op == "l":
            out[op] = setval(approx.classical_lower(space, a))
        elif op == "u":
            out[op] = setval(approx.classical_upper(space, a))
        elif op == "lstar":
            out[op] = setval(approx.star_lower(space, a))
        elif op == "ustar":
            out[op] = setval(approx.star_upper(space, a))
        elif op == "ltheta":
            out[op] = setval(approx.theta_lower(space, a))
        elif op == "utheta":
            out[op] = setval(approx.theta_upper(space, a))
        elif op == "profile":
            p = approx.profile(space, family, a, ec)
            out[op] = {
                "l0": setval(p.l0),
                "u0": setval(p.u0),
                "lbreve": setval(p.lateral_l),
                "ubreve": setval(p.lateral_u),
            }
        elif op == "primitive":
            lo = approx.primitive_lower(space, family, a)
            up = approx.primitive_upper(space, family, a, ec)
            out[op] = {
                "lower": sorted(lo),
                "upper": "undefined" if up is None else sorted(up),
            }
    payload = {"subset": list(canon(a)), "operators": out, "empty_cover": ec}
    _emit(envelope("approx", payload, space=space))
    return 0


def cmd_quotient(args) -> int:
    space = _load_space(args)
    q = quotient.build_quotient(space, args.empty_cover)
    _emit(envelope("quotient", q.to_dict(), space=space))
    return 0


def _sweep_from_args(args) -> claims.SweepSpec:
    if args.exhaustive:
        return claims.SweepSpec(
            mode="exhaustive", max_n=args.max_n, empty_cover=args.empty_cover
        )
    return claims.SweepSpec(
        mode="random",
        max_n=args.max_n,
        seed=args.seed,
        count=args.count,
        subset_policy="sampled",
        empty_cover=args.empty_cover,
    )


def _claim_tags(args) -> list[str]:
    if not args.claims or args.claims == "all":
        return list(claims.ALL_TAGS)
    tags = args.claims.split(",")
    for t in tags:
        if t not in claims.REGISTRY:
            raise ValueError(f"unknown claim tag {t!r}")
    return tags


def _verdict_lines(verdicts, out_dir) -> int:
    """JSON-lines verdicts; returns 1 when a non-delicate claim refutes."""
    bad = 0
    for v in verdicts:
        d = v.to_dict()
        if v.status == "refuted":
            if v.claim in KNOWN_DELICATE:
                d["annotation"] = "known-delicate"
            else:
                bad = 1
            if out_dir is not None:
                path = Path(out_dir) / f"counterexample_{v.claim}.json"
                path.write_text(
                    canonical_json({"claim": v.claim, **v.counterexample}) + "\n"
                )
                d["replay_file"] = str(path)
        sys.stdout.write(canonical_json(d) + "\n")
    return bad


def cmd_audit(args) -> int:
    tags = _claim_tags(args)
    sweep = _sweep_from_args(args)
    if args.out is not None:
        Path(args.out).mkdir(parents=True, exist_ok=True)
    verdicts = [claims.run_claim(t, sweep) for t in tags]
    return _verdict_lines(verdicts, args.out)


def cmd_aer(args) -> int:
    space = _load_space(args)
    verdicts = claims.run_aer_suite(space, args.empty_cover)
    payload = [v.to_dict() for v in verdicts]
    _emit(envelope("aer", payload, space=space))
    return 0


def cmd_search(args) -> int:
    tags = _claim_tags(args)
    sweep = _sweep_from_args(args)
    report = claims.counterexample_search(tags, sweep)
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for tag, entry in report["claims"].items():
            if "replay" in entry:
                (out / f"replay_{tag}.json").write_text(
                    canonical_json(entry["replay"]) + "\n"
                )
    _emit(envelope("search", report, seed=sweep.seed))
    return 0


def cmd_tarski(args) -> int:
    space = _load_space(args)
    ts = tarski.build_structure(space, disjoint_union_variant=args.disjoint_unions)
    closure = tarski.closure_audit(ts)
    filters = tarski.maximal_filters(ts)
    classify = tarski.sigma_classify_delta(
        space, disjoint_union_variant=args.disjoint_unions
    )
    payload = {
        "filter_definition": tarski.FILTER_DEFINITION,
        "delta": [list(canon(m)) for m in ts.carrier.sets],
        "closure": closure.to_dict(),
        "maximal_filters": [
            [list(canon(m)) for m in sorted(f, key=canon)] for f in filters
        ],
        "sigma_classes": classify["classes"],
        "sigma_verdict": classify["verdict"].to_dict(),
    }
    _emit(envelope("tarski", payload, space=space))
    return 0


def cmd_selftest(args) -> int:
    _emit(envelope("selftest", claims.registry_selftest()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="roughchoice",
        description="choice-based rough approximations over tolerance spaces",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common_flags(sp, doc=True):
        if doc:
            _add_doc_args(sp)
        sp.add_argument("--empty-cover", choices=["defined", "undefined"],
                        default="defined")

    sp = sub.add_parser("blocks", help="block family, theta0 classes, DOT graph")
    _add_doc_args(sp)
    sp.set_defaults(fn=cmd_blocks)

    sp = sub.add_parser("approx", help="approximation operators on one subset")
    common_flags(sp)
    sp.add_argument("--subset", required=True, help="comma-separated indices")
    sp.add_argument("--operators", default=None,
                    help="comma-separated subset of " + ",".join(_OPERATORS))
    sp.set_defaults(fn=cmd_approx)

    sp = sub.add_parser("quotient", help="profile classes and operation tables")
    common_flags(sp)
    sp.set_defaults(fn=cmd_quotient)

    sp = sub.add_parser("audit", help="run claims over a sweep of spaces")
    sp.add_argument("--claims", default="all")
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--out", default=None, help="directory for replay files")
    sp.add_argument("--empty-cover", choices=["defined", "undefined"],
                    default="defined")
    sp.set_defaults(fn=cmd_audit)

    sp = sub.add_parser("aer", help="abstract axiom suite on one space")
    common_flags(sp)
    sp.set_defaults(fn=cmd_aer)

    sp = sub.add_parser("search", help="minimal counterexample search")
    sp.add_argument("--claims", default="all")
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--out", default=None, help="directory for replay files")
    sp.add_argument("--empty-cover", choices=["defined", "undefined"],
                    default="defined")
    sp.set_defaults(fn=cmd_search)

    sp = sub.add_parser("tarski", help="implication carrier, filters, classification")
    _add_doc_args(sp)
    sp.add_argument("--disjoint-unions", action="store_true",
                    help="use unions of disjoint blocks as granules")
    sp.set_defaults(fn=cmd_tarski)

    sp = sub.add_parser("selftest", help="claim registry coverage counts")
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
