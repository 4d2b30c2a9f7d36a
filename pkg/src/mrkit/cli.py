"""Command-line surface: build, check, aut, verify.

Reports are canonical JSON (sorted keys, fixed separators), so identical
(input, seed, version) triples produce byte-identical output.  Exit codes:
0 all requested checks pass, 1 an axiom or claim fails, 2 usage or schema
errors.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys

from . import __version__
from .claims import CLAIMS, VerifyContext, run_claims
from .constructions import boolean_algebra, build_I, face_poset, filter_algebra
from .corpus import NAMED_BASES, cubic_corpus
from .cubic import (
    canonical_json,
    caret_total,
    check_cubic_axioms,
    check_mr_axiom,
    from_json_dict,
    to_json_dict,
)
from .errors import CapExceeded, MalformedTable, MrkitError
from .filters import principal_filter

USAGE_ERROR = 2
CLAIM_FAILURE = 1


def _write(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str, *, strict: bool):
    import json

    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise MalformedTable(f"cannot read {path}: {exc}") from exc
    return from_json_dict(data, strict=strict)


def _input_digest(algebra) -> str:
    return hashlib.sha256(
        canonical_json(to_json_dict(algebra)).encode()
    ).hexdigest()[:16]


def cmd_build(args) -> int:
    kind = args.kind
    if kind == "interval":
        if args.atoms is None:
            raise SystemExit2("--atoms is required for --kind interval")
        algebra = build_I(boolean_algebra(args.atoms))
    elif kind == "face":
        if args.n is None:
            raise SystemExit2("--n is required for --kind face")
        algebra = face_poset(args.n)
    elif kind == "pairs":
        if args.base is None:
            raise SystemExit2("--base is required for --kind pairs")
        if args.base not in NAMED_BASES:
            raise SystemExit2(f"unknown base {args.base!r}; "
                              f"choices: {sorted(NAMED_BASES)}")
        algebra = build_I(NAMED_BASES[args.base]())
    elif kind == "filter":
        if args.base is None or args.min is None:
            raise SystemExit2("--base and --min are required for --kind filter")
        if args.base not in NAMED_BASES:
            raise SystemExit2(f"unknown base {args.base!r}")
        base = NAMED_BASES[args.base]()
        try:
            bottom = base.label_index(args.min) if hasattr(base, "label_index") \
                else [x for x in base.elements() if base.label(x) == args.min][0]
        except IndexError:
            raise SystemExit2(f"no element labelled {args.min!r} in {args.base}")
        algebra = filter_algebra(
            base, principal_filter(base, bottom).members)
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit2(f"unknown kind {kind!r}")
    _write(args, canonical_json(to_json_dict(algebra)))
    return 0


def cmd_check(args) -> int:
    algebra = _load(args.input, strict=False)
    cubic = check_cubic_axioms(algebra, args.witness)
    mr = check_mr_axiom(algebra, args.witness)
    total = caret_total(algebra)
    report = {
        "version": __version__,
        "input": _input_digest(algebra),
        "carrier": algebra.size,
        "cubic": {"passed": cubic.passed, "violations": list(cubic.violations)},
        "mr": {"passed": mr.passed, "violations": list(mr.violations)},
        "caret_total": total,
        "consistent": total == mr.passed,
    }
    if args.format == "json":
        _write(args, canonical_json(report))
    else:
        lines = [
            f"carrier {algebra.size}, top {algebra.one}",
            f"cubic axioms: {'pass' if cubic.passed else 'FAIL'}",
        ]
        for axiom_id, witness in cubic.violations:
            lines.append(f"  violated {axiom_id} at {witness}")
        lines.append(f"meet-existence axiom: {'pass' if mr.passed else 'FAIL'}")
        for axiom_id, witness in mr.violations:
            lines.append(f"  violated {axiom_id} at {witness}")
        lines.append(f"caret total: {total} (consistent: {total == mr.passed})")
        _write(args, "\n".join(lines) + "\n")
    return 0 if cubic.passed else CLAIM_FAILURE


def cmd_aut(args) -> int:
    from .automorphisms import enumerate_aut, inner_group, omega

    algebra = _load(args.input, strict=True)
    auts = enumerate_aut(algebra)
    inner = inner_group(algebra)
    report = {
        "version": __version__,
        "input": _input_digest(algebra),
        "order": len(auts),
        "inner_order": len(inner),
    }
    if not args.inner:
        report["automorphisms"] = [list(phi.perm) for phi in auts]
    report["inner"] = [list(phi.perm) for phi in inner]
    if check_mr_axiom(algebra).passed:
        report["omega"] = [
            {"inner": list(phi.perm),
             "filter_classes": sorted(filt.members),
             "filter_labels": list(filt.labels())}
            for phi, filt in omega(algebra)
        ]
    if args.format == "json":
        _write(args, canonical_json(report))
    else:
        lines = [f"automorphism group order {len(auts)}",
                 f"inner subgroup order {len(inner)}"]
        for phi in (inner if args.inner else auts):
            lines.append("  " + " ".join(map(str, phi.perm)))
        if "omega" in report:
            lines.append("inner automorphism <-> Boolean filter of the collapse:")
            for row in report["omega"]:
                lines.append(f"  {row['inner']} <-> {row['filter_labels']}")
        _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    claim_ids = None
    if args.claims:
        claim_ids = [c.strip() for c in args.claims.split(",") if c.strip()]
        unknown = [c for c in claim_ids if c not in CLAIMS]
        if unknown:
            raise SystemExit2(f"unknown claim ids: {unknown}; "
                              f"known: {sorted(CLAIMS)}")
    if args.corpus:
        algebras = tuple(cubic_corpus())
        include_global = True
        source = "corpus"
    elif args.input:
        algebra = _load(args.input, strict=False)
        name = os.path.splitext(os.path.basename(args.input))[0]
        algebras = ((name, algebra),)
        include_global = False
        source = _input_digest(algebra)
    else:
        raise SystemExit2("verify needs --corpus or --input")
    ctx = VerifyContext(algebras=algebras, seed=args.seed,
                        witness_policy=args.witness,
                        include_global=include_global)
    results = run_claims(ctx, claim_ids)
    failures = [r for r in results if r.status == "fail"]
    report = {
        "version": __version__,
        "seed": args.seed,
        "input": source,
        "results": [r.as_dict() for r in results],
        "passed": not failures,
    }
    if args.format == "json":
        _write(args, canonical_json(report))
    else:
        lines = []
        for r in results:
            line = f"{r.status.upper():4} {r.claim_id} [{r.instance}]"
            if r.status == "fail" and r.witness is not None:
                line += f" witness={r.witness}"
            lines.append(line)
        lines.append(f"{'all claims pass' if not failures else 'FAILURES: ' + str(len(failures))}")
        _write(args, "\n".join(lines) + "\n")
    return CLAIM_FAILURE if failures else 0


class SystemExit2(Exception):
    """Usage-level error, reported on stderr with exit code 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrkit",
        description="finite cubic implication algebras: build, check, verify",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--witness", choices=("first", "all"), default="first")
    common.add_argument("--max-carrier", type=int, default=81,
                        help="search cap (MRKIT_MAX_CARRIER overrides)")

    p_build = sub.add_parser("build", parents=[common],
                             help="construct an algebra and write it as JSON")
    p_build.add_argument("--kind", required=True,
                         choices=("interval", "face", "filter", "pairs"))
    p_build.add_argument("--atoms", type=int, help="atom count (interval)")
    p_build.add_argument("--n", type=int, help="cube dimension (face)")
    p_build.add_argument("--base", help="named base algebra (pairs/filter)")
    p_build.add_argument("--min", help="label of the filter minimum (filter)")
    p_build.set_defaults(func=cmd_build)

    p_check = sub.add_parser("check", parents=[common],
                             help="run the axiom checkers on an algebra file")
    p_check.add_argument("-i", "--input", required=True)
    p_check.set_defaults(func=cmd_check)

    p_aut = sub.add_parser("aut", parents=[common],
                           help="enumerate the automorphism group")
    p_aut.add_argument("-i", "--input", required=True)
    p_aut.add_argument("--inner", action="store_true",
                       help="list only the inner subgroup")
    p_aut.set_defaults(func=cmd_aut)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run the claim suite")
    p_verify.add_argument("-i", "--input")
    p_verify.add_argument("--corpus", action="store_true",
                          help="verify the built-in corpus")
    p_verify.add_argument("--claims", help="comma-separated claim ids")
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if os.environ.get("MRKIT_MAX_CARRIER") is None:
        os.environ["MRKIT_MAX_CARRIER"] = str(args.max_carrier)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except MalformedTable as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except MrkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CLAIM_FAILURE


if __name__ == "__main__":
    sys.exit(main())
