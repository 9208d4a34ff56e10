"""Command-line front end.

Subcommands: ``classify`` (descriptor to verdicts), ``oracle`` (element-level
verdicts on a concrete finite group), ``sweep`` (theorem-versus-oracle
consistency run), ``snf`` (Smith normal form plus cokernel), ``table`` (the
structure table).  Exit codes: 0 success/consistent, 1 usage or parse error,
2 domain error, 3 sweep mismatch, 4 capacity exceeded (sweeps only fail on
capacity under --strict-caps; single-input commands always do, since there is
no partial answer to give).
"""

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass

from . import oracle as oracle_mod
from .abgroups import PREDICATES, FgAbGroup, classify
from .errors import CapacityError, DomainError, ModregError, ParseError
from .parsing import parse_module_spec
from .smith import cokernel_structure, format_matrix, parse_matrix_text, smith_normal_form
from .sweep import run_sweep
from .valuation import classify_val_all, render_table1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_MISMATCH = 3
EXIT_CAPACITY = 4

SCHEMA_VERSION = 1


@dataclass
class Request:
    subcommand: str
    input: str | None
    options: dict


def dump_json(payload) -> str:
    """Canonical JSON rendering; parsing and re-dumping is byte-stable."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    return arg


def _read_file_or_stdin(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    with open(arg, "r", encoding="utf-8") as handle:
        return handle.read()


def _caps_from_env() -> dict[str, int]:
    raw = os.environ.get("MODREG_CAPS", "")
    caps: dict[str, int] = {}
    if not raw.strip():
        return caps
    for chunk in raw.split(","):
        m = re.fullmatch(r"\s*(order|subgroups)\s*=\s*(\d+)\s*", chunk)
        if not m:
            raise ParseError(
                f"MODREG_CAPS must look like 'order=N,subgroups=M', got {raw!r}"
            )
        caps[m.group(1)] = int(m.group(2))
    return caps


def _resolve_caps(args) -> tuple[int | None, int | None]:
    env = _caps_from_env()
    order_cap = env.get("order")
    subgroup_cap = env.get("subgroups")
    if getattr(args, "subgroup_cap", None) is not None:
        subgroup_cap = args.subgroup_cap
    return order_cap, subgroup_cap


def _citations(certificates: dict[str, str]) -> list[str]:
    rules = set()
    for cert in certificates.values():
        m = re.match(r"theorem=([a-z0-9-]+)", cert)
        if m:
            rules.add(m.group(1))
    return sorted(rules)


def _verdict_lines(verdicts: dict[str, tuple[bool, str]]) -> list[str]:
    width = max(len(name) for name in verdicts)
    return [
        f"  {name:<{width}}  {'true' if value else 'false':<5}  {cert}"
        for name, (value, cert) in verdicts.items()
    ]


def cmd_classify(request: Request) -> int:
    text = _read_input(request.input).strip()
    parsed = parse_module_spec(text, canonicalize=request.options["canonicalize"])
    if isinstance(parsed, FgAbGroup):
        kind = "abelian"
        rendered = parsed.describe()
        verdict = classify(parsed)
        values = verdict.as_dict()
        verdicts = {name: (values[name], verdict.certificates[name]) for name in PREDICATES}
    else:
        module, profile = parsed
        kind = "valuation"
        rendered = module.describe()
        verdicts = classify_val_all(module, profile)

    certificates = {name: cert for name, (_, cert) in verdicts.items()}
    if request.options["format"] == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "input": text,
            "kind": kind,
            "module": rendered,
            "verdicts": {
                name: {"value": value, "certificate": cert}
                for name, (value, cert) in verdicts.items()
            },
            "citations": _citations(certificates),
        }
        sys.stdout.write(dump_json(payload))
    else:
        print(f"input:  {text}")
        print(f"module: {rendered} ({kind})")
        print("\n".join(_verdict_lines(verdicts)))
    return EXIT_OK


def cmd_oracle(request: Request) -> int:
    text = _read_input(request.input).strip()
    parsed = parse_module_spec(text, canonicalize=request.options["canonicalize"])
    if not isinstance(parsed, FgAbGroup):
        raise DomainError("the oracle runs on finite abelian groups, not symbolic modules")
    if parsed.free_rank:
        raise DomainError("the oracle needs a finite group; set free=0")
    order_cap, subgroup_cap = _resolve_caps(request.options["args"])

    instance = oracle_mod.FiniteGroupInstance(parsed.invariant_factors)
    whole = oracle_mod.full_subgroup(instance, order_cap=order_cap)
    vr, witness = oracle_mod.oracle_virtually_regular(whole, subgroup_cap=subgroup_cap)
    results = {
        "virtually_regular": {
            "value": vr,
            "witness": None if witness is None else list(witness),
        },
        "strongly_virtually_regular": {
            "value": oracle_mod.oracle_strongly_vr(whole, subgroup_cap),
            "witness": None,
        },
        "completely_virtually_regular": {
            "value": oracle_mod.oracle_completely_vr(whole, subgroup_cap),
            "witness": None,
        },
        "strongly_regular": {
            "value": oracle_mod.oracle_strongly_regular(whole, subgroup_cap),
            "witness": None,
        },
    }
    if request.options["format"] == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "input": text,
            "kind": "oracle",
            "module": parsed.describe(),
            "order": instance.order,
            "verdicts": results,
        }
        sys.stdout.write(dump_json(payload))
    else:
        print(f"input:  {text}")
        print(f"module: {parsed.describe()} (order {instance.order})")
        width = max(len(name) for name in results)
        for name, data in results.items():
            line = f"  {name:<{width}}  {'true' if data['value'] else 'false'}"
            if data["witness"] is not None:
                line += f"  witness={tuple(data['witness'])}"
            print(line)
    return EXIT_OK


def cmd_sweep(request: Request) -> int:
    args = request.options["args"]
    order_cap, subgroup_cap = _resolve_caps(args)
    report = run_sweep(
        args.max_order,
        deep_max_order=args.deep_max_order,
        order_cap=order_cap,
        subgroup_cap=subgroup_cap,
    )
    if request.options["format"] == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "max_order": report.max_order,
            "deep_max_order": report.deep_max_order,
            "classes_checked": report.classes_checked,
            "deep_classes_checked": report.deep_classes_checked,
            "consistent": report.consistent,
            "mismatches": [
                {
                    "order": m.order,
                    "module": m.module,
                    "predicate": m.predicate,
                    "theorem": m.theorem_value,
                    "oracle": m.oracle_value,
                }
                for m in report.mismatches
            ],
            "skipped": [
                {
                    "order": s.order,
                    "module": s.module,
                    "predicate": s.predicate,
                    "reason": s.reason,
                }
                for s in report.skipped
            ],
        }
        sys.stdout.write(dump_json(payload))
    else:
        print(f"sweep over abelian groups of order <= {report.max_order}")
        print(f"  classes checked:          {report.classes_checked}")
        print(f"  deep-checked (<= {report.deep_max_order:>3}):    {report.deep_classes_checked}")
        for m in report.mismatches:
            print(
                f"  MISMATCH order={m.order} {m.module} {m.predicate}: "
                f"theorem={m.theorem_value} oracle={m.oracle_value}"
            )
        for s in report.skipped:
            print(f"  skipped order={s.order} {s.module} {s.predicate}: {s.reason}")
        print(f"  result: {'consistent' if report.consistent else 'MISMATCHES FOUND'}")
    if not report.consistent:
        return EXIT_MISMATCH
    if report.skipped and args.strict_caps:
        return EXIT_CAPACITY
    return EXIT_OK


def cmd_snf(request: Request) -> int:
    text = _read_file_or_stdin(request.input)
    matrix = parse_matrix_text(text)
    result = smith_normal_form(matrix)
    coker = cokernel_structure(matrix)
    verdict = classify(coker)
    if request.options["format"] == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "kind": "snf",
            "rows": matrix.rows,
            "cols": matrix.cols,
            "diagonal": list(result.diagonal()),
            "cokernel": {
                "module": coker.describe(),
                "free_rank": coker.free_rank,
                "invariant_factors": list(coker.invariant_factors),
            },
            "verdicts": {
                name: {"value": value, "certificate": verdict.certificates[name]}
                for name, value in verdict.as_dict().items()
            },
        }
        if request.options["transforms"]:
            payload["U"] = result.U.to_rows()
            payload["V"] = result.V.to_rows()
        sys.stdout.write(dump_json(payload))
    else:
        print("D =")
        sys.stdout.write(format_matrix(result.D))
        if request.options["transforms"]:
            print("U =")
            sys.stdout.write(format_matrix(result.U))
            print("V =")
            sys.stdout.write(format_matrix(result.V))
        print(f"cokernel: {coker.describe()}")
        values = verdict.as_dict()
        verdicts = {n: (values[n], verdict.certificates[n]) for n in PREDICATES}
        print("\n".join(_verdict_lines(verdicts)))
    return EXIT_OK


def cmd_table(request: Request) -> int:
    sys.stdout.write(render_table1())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modreg",
        description="Classify modules by direct-summand regularity and "
        "cross-check the verdicts with an exhaustive finite-group oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("classify", help="classify a module descriptor")
    p.add_argument("input", help="descriptor line, or '-' to read stdin")
    p.add_argument("--canonicalize", action="store_true", help="re-sort non-chain torsion")
    add_format(p)

    p = sub.add_parser("oracle", help="element-level verdicts for a finite group")
    p.add_argument("input", help="'Z: free=0 torsion=[...]' line, or '-'")
    p.add_argument("--canonicalize", action="store_true")
    p.add_argument("--subgroup-cap", type=int, default=None)
    add_format(p)

    p = sub.add_parser("sweep", help="compare classifier and oracle over all classes")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument(
        "--deep-max-order",
        type=int,
        default=None,
        help="bound for the subgroup-lattice predicates (default 64)",
    )
    p.add_argument("--subgroup-cap", type=int, default=None)
    p.add_argument("--strict-caps", action="store_true", help="exit 4 if anything was skipped")
    add_format(p)

    p = sub.add_parser("snf", help="Smith normal form and cokernel of a matrix")
    p.add_argument("input", help="matrix file, or '-' to read stdin")
    p.add_argument("--transforms", action="store_true", help="also print U and V")
    add_format(p)

    sub.add_parser("table", help="print the structure table")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    handlers = {
        "classify": cmd_classify,
        "oracle": cmd_oracle,
        "sweep": cmd_sweep,
        "snf": cmd_snf,
        "table": cmd_table,
    }
    request = Request(
        subcommand=args.command,
        input=getattr(args, "input", None),
        options={
            "format": getattr(args, "format", "text"),
            "canonicalize": getattr(args, "canonicalize", False),
            "transforms": getattr(args, "transforms", False),
            "args": args,
        },
    )
    try:
        return handlers[args.command](request)
    except ParseError as exc:
        print(f"modreg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"modreg: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        message = str(exc)
        if "non-canonical chain" in message:
            message += " (rerun with --canonicalize to re-sort)"
        print(f"modreg: {message}", file=sys.stderr)
        return EXIT_DOMAIN
    except ModregError as exc:
        print(f"modreg: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entrypoint() -> None:
    sys.exit(main())
