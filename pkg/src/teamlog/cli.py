"""Command-line frontend.

Exit status: 0 when the checked property holds, 1 when it fails, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .entailment import Engine, Theory
from .errors import TeamlogError
from .evaluator import Evaluator
from .model import DEFAULT_CAP, TeamSpace, load_structure, load_team, team_to_json
from .syntax import parse, to_str
from .updates import BUILTINS, SYMMETRIC_DIFFERENCE, check_laws, operator

HOLDS, FAILS, ERROR = 0, 1, 2


def _default_cap() -> int:
    env = os.environ.get("TEAMLOG_CAP")
    return int(env) if env else DEFAULT_CAP


def _read_formulas(texts: list[str] | None, files: list[str] | None) -> list[str]:
    out = list(texts or [])
    for path in files or []:
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(line)
    return out


def _scope(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _dump(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")


def cmd_check(args, out) -> int:
    structure = load_structure(args.model)
    team = load_team(args.team, structure)
    formulas = [parse(f) for f in _read_formulas(args.formula, args.formula_file)]
    if not formulas:
        raise TeamlogError("check needs at least one --formula")
    ev = Evaluator(structure, cap=args.cap)
    results = []
    for f in formulas:
        v = ev.evaluate(team, f)
        witness = [team_to_json(w, structure) for w in v.witness] if v.witness else None
        results.append({"formula": to_str(f), "holds": v.holds, "witness": witness})
    holds = all(r["holds"] for r in results)
    if args.format == "json":
        _dump({"holds": holds, "results": results}, "json", out)
    else:
        for r in results:
            out.write(f"{'holds' if r['holds'] else 'fails'}: {r['formula']}\n")
            for w in r["witness"] or []:
                out.write(f"  witness: {json.dumps(w)}\n")
    return HOLDS if holds else FAILS


def _entail_report(result, structure, args, out, label: str) -> int:
    cex = team_to_json(result.counterexample, structure) if result.counterexample is not None else None
    if args.out and cex is not None:
        Path(args.out).write_text(json.dumps(cex, indent=2) + "\n", encoding="utf-8")
    if args.format == "json":
        _dump({"holds": result.holds, "counterexample": cex, "examined": result.examined}, "json", out)
    else:
        out.write(f"{label if result.holds else 'not ' + label} ({result.examined} teams examined)\n")
        if cex is not None:
            out.write("counterexample: " + json.dumps(cex) + "\n")
    return HOLDS if result.holds else FAILS


def cmd_entail(args, out) -> int:
    structure = load_structure(args.model)
    lhs = _read_formulas(args.lhs, args.lhs_file)
    rhs = _read_formulas(args.rhs, args.rhs_file)
    if not lhs or not rhs:
        raise TeamlogError("entail needs at least one --lhs and one --rhs formula")
    engine = Engine(structure, cap=args.cap, workers=args.workers)
    result = engine.entails(Theory.of(*lhs), Theory.of(*rhs), _scope(args.vars))
    return _entail_report(result, structure, args, out, "entailed")


def cmd_equiv(args, out) -> int:
    structure = load_structure(args.model)
    lhs = _read_formulas(args.lhs, args.lhs_file)
    rhs = _read_formulas(args.rhs, args.rhs_file)
    if len(lhs) != 1 or len(rhs) != 1:
        raise TeamlogError("equiv needs exactly one --lhs and one --rhs formula")
    engine = Engine(structure, cap=args.cap, workers=args.workers)
    result = engine.equivalent(lhs[0], rhs[0], _scope(args.vars))
    return _entail_report(result, structure, args, out, "equivalent")


def cmd_bel(args, out) -> int:
    structure = load_structure(args.model)
    formulas = _read_formulas(args.formula, args.formula_file)
    if not formulas:
        raise TeamlogError("bel needs at least one --formula")
    engine = Engine(structure, cap=args.cap, workers=args.workers)
    teams = [team_to_json(t, structure) for t in engine.bel(Theory.of(*formulas), _scope(args.vars))]
    if args.format == "json":
        _dump(teams, "json", out)
    else:
        out.write(f"{len(teams)} teams\n")
        for t in teams:
            out.write(json.dumps(t) + "\n")
    return HOLDS


def cmd_laws(args, out) -> int:
    structure = load_structure(args.model)
    space = TeamSpace(structure, _scope(args.vars), args.cap)
    reports = check_laws(operator(args.op), space)
    rows = []
    for r in reports:
        cex = [team_to_json(t, structure) for t in r.counterexample] if r.counterexample else None
        rows.append({"law": r.law.value, "passed": r.passed, "counterexample": cex})
    if args.format == "json":
        _dump({"operator": args.op, "reports": rows}, "json", out)
    else:
        for row in rows:
            out.write(f"{row['law']}: {'pass' if row['passed'] else 'FAIL'}\n")
            if row["counterexample"]:
                out.write("  counterexample: " + json.dumps(row["counterexample"]) + "\n")
    return HOLDS if all(r.passed for r in reports) else FAILS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="teamlog", description="Team-semantics model checker and entailment engine.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, vars_required=True):
        sp.add_argument("--model", required=True, help="structure JSON file")
        if vars_required:
            sp.add_argument("--vars", required=True, help="comma-separated variable scope")
        sp.add_argument("--cap", type=int, default=_default_cap(),
                        help="max assignments per team space (default $TEAMLOG_CAP or 4096)")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("check", help="does a team satisfy the formula(s)?")
    common(c, vars_required=False)
    c.add_argument("--team", required=True, help="team JSON file")
    c.add_argument("--formula", action="append")
    c.add_argument("--formula-file", action="append")
    c.set_defaults(func=cmd_check)

    for name, func, label in (("entail", cmd_entail, "T1 |=_M T2"), ("equiv", cmd_equiv, "phi == psi over M")):
        e = sub.add_parser(name, help=f"decide {label} by enumerating every team")
        common(e)
        e.add_argument("--lhs", action="append")
        e.add_argument("--rhs", action="append")
        e.add_argument("--lhs-file", action="append")
        e.add_argument("--rhs-file", action="append")
        e.add_argument("--out", help="write the counterexample team file here")
        e.add_argument("--workers", type=int, default=1)
        e.set_defaults(func=func)

    b = sub.add_parser("bel", help="list every team satisfying the theory")
    common(b)
    b.add_argument("--formula", action="append")
    b.add_argument("--formula-file", action="append")
    b.add_argument("--workers", type=int, default=1)
    b.set_defaults(func=cmd_bel)

    law = sub.add_parser("laws", help="check idempotence, associativity and monotonicity of an operator")
    common(law)
    law.add_argument("--op", required=True, choices=[k.value for k in BUILTINS] + [SYMMETRIC_DIFFERENCE.name])
    law.set_defaults(func=cmd_laws)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return HOLDS if exc.code == 0 else ERROR
    try:
        return args.func(args, out)
    except (TeamlogError, OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
