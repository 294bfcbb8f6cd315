"""``crossed-order`` command line.

Exit codes: 0 success, 1 domain-invalid scenario (or census mismatch),
2 malformed input, 3 oracle/census budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .census import CensusBudgetError, run_census
from .errors import CrossedOrderError, FieldError, FormatError, GroupError, OracleBudgetError
from .ramification import analyze, oracle_budget_exceeded, validate_scenario
from .reduction import GlobalScenario, TRANSFER_NOTE, local_from_global_file
from .scenario_io import canonical_dumps, is_global, load_json, parse_scenario

EXIT_OK, EXIT_DOMAIN, EXIT_FORMAT, EXIT_BUDGET = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, FormatError):
        return EXIT_FORMAT
    if isinstance(exc, OracleBudgetError):
        return EXIT_BUDGET
    return EXIT_DOMAIN


def _load(path):
    obj = load_json(path)
    if is_global(obj):
        from .reduction import parse_global

        return obj, parse_global(obj)
    return obj, parse_scenario(obj)


def _local(loaded):
    return loaded.local if isinstance(loaded, GlobalScenario) else loaded


def parse_seed_choices(text: str | None, scenario):
    """``sigma0=LABEL,zeta=CODE`` -> (sigma0 index or None, zeta element or None)."""
    if not text:
        return None, None
    sigma0 = zeta = None
    for part in text.split(","):
        key, sep, val = part.partition("=")
        key, val = key.strip(), val.strip()
        if not sep or not val:
            raise FormatError(f"bad --seed-choices item {part!r}")
        if key == "sigma0":
            try:
                sigma0 = scenario.group.index(val)
            except GroupError:
                raise FormatError(f"unknown group element {val!r} in --seed-choices") from None
        elif key == "zeta":
            try:
                code = json.loads(val)
            except json.JSONDecodeError:
                code = val
            try:
                zeta = scenario.field.decode(code)
            except FieldError as exc:
                raise FormatError(f"bad zeta in --seed-choices: {exc}") from None
        else:
            raise FormatError(f"unknown --seed-choices key {key!r}")
    return sigma0, zeta


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        _, loaded = _load(args.path)
    except CrossedOrderError as exc:
        code = _exit_code(exc)
        if args.json and code == EXIT_DOMAIN:
            print(canonical_dumps({"valid": False, "violations": [str(exc)]}), end="")
        else:
            _err(str(exc))
        return code
    violations = validate_scenario(_local(loaded)).violations
    if args.json:
        print(canonical_dumps({"valid": not violations, "violations": violations}), end="")
    elif violations:
        for v in violations:
            print(f"invalid: {v}")
    else:
        print("valid")
    return EXIT_DOMAIN if violations else EXIT_OK


def cmd_analyze(args) -> int:
    try:
        _, loaded = _load(args.path)
        s = _local(loaded)
        sigma0, zeta = parse_seed_choices(args.seed_choices, s)
        report = analyze(s, sigma0=sigma0, zeta=zeta, oracle=args.oracle)
    except CrossedOrderError as exc:
        _err(str(exc))
        return _exit_code(exc)
    if isinstance(loaded, GlobalScenario):
        report.notes.append(TRANSFER_NOTE)
    print(report.to_json() if args.json else report.to_text(), end="")
    if oracle_budget_exceeded(report):
        _err(report.conductor_oracle_note)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_census(args) -> int:
    try:
        spec = load_json(args.path)
        result = run_census(spec)
    except CensusBudgetError as exc:
        _err(str(exc))
        return EXIT_BUDGET
    except CrossedOrderError as exc:
        _err(str(exc))
        return _exit_code(exc)
    print(result.to_json() if args.json else result.to_text(), end="")
    return EXIT_DOMAIN if result.mismatches else EXIT_OK


def cmd_reduce(args) -> int:
    try:
        obj, loaded = _load(args.path)
        if not isinstance(loaded, GlobalScenario):
            local_obj = obj
        else:
            local_obj = local_from_global_file(obj)
        s = _local(loaded)
        sigma0, zeta = parse_seed_choices(args.seed_choices, s)
        report = analyze(s, sigma0=sigma0, zeta=zeta, oracle=args.oracle)
    except CrossedOrderError as exc:
        _err(str(exc))
        return _exit_code(exc)
    report.notes.append(TRANSFER_NOTE)
    text = canonical_dumps(local_obj)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    print(report.to_json() if args.json else report.to_text(), end="")
    if oracle_budget_exceeded(report):
        _err(report.conductor_oracle_note)
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crossed-order", description="Heredity and maximality of crossed product orders.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, oracle=True, seeds=True):
        p.add_argument("path")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if oracle:
            p.add_argument("--oracle", action="store_true", help="cross-check against brute-force oracles")
        if seeds:
            p.add_argument("--seed-choices", metavar="sigma0=LABEL,zeta=CODE", help="override sigma0 / zeta")

    p = sub.add_parser("validate", help="schema and admissibility check")
    common(p, oracle=False, seeds=False)
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("analyze", help="full analysis report")
    common(p)
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("census", help="run a census spec")
    common(p, oracle=False, seeds=False)
    p.set_defaults(func=cmd_census)
    p = sub.add_parser("reduce", help="reduce a global scenario to its local corner")
    common(p)
    p.add_argument("-o", "--output", help="write the local scenario here instead of stdout")
    p.set_defaults(func=cmd_reduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
