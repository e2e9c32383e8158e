"""Command-line front end.

Exit codes: 0 computed, 1 usage/parse/fragment error, 2 scope cap exceeded,
3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .admissibility import (
    ExperimentConfig,
    bound_scope_for,
    bounded_admissibility_search,
    check_rule,
    counterexample_substitution,
    structural_completeness_experiment,
)
from .config import limits
from .errors import InternalAssertionFailure, ScopeCapExceeded, TeamLogicError
from .formula import Fragment, free_vars_all, infer_fragment, parse, render
from .normalform import flat_characterization, normal_form
from .projectivity import projectivity_report
from .semantics import Scope, Team, consequence, evaluate, is_valid
from .substitution import Substitution, apply, translate_team


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--fragment", type=Fragment.parse, default=None,
                   help="PD, InqL, PT, XPD or XPT (inferred when omitted)")
    p.add_argument("--eval-cap", type=int, default=None)
    p.add_argument("--family-cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="emit a single JSON document")
    p.add_argument("--scope", default=None, help="comma-separated variable order")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="teamlogic", description="Team semantics for propositional "
                     "dependence and inquisitive logics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="evaluate a formula on a team")
    p.add_argument("team", help='team literal such as "{10, 01}"')
    p.add_argument("formula")

    p = sub.add_parser("valid", parents=[common], help="validity")
    p.add_argument("formula")

    p = sub.add_parser("entails", parents=[common], help="consequence: PREMISES... : FORMULA")
    p.add_argument("items", nargs="+")

    for name, text in (("nf", "normal form"), ("flat", "flatness conditions"),
                       ("unify", "projective unifier")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("formula")

    p = sub.add_parser("subst", parents=[common], help="apply a substitution")
    p.add_argument("--subst", required=True, help="JSON file mapping variables to formulas")
    p.add_argument("--team", default=None, help="team over the images' scope to translate")
    p.add_argument("formula")

    p = sub.add_parser("counterexample", parents=[common], help="flat counterexample to a rule")
    p.add_argument("premise")
    p.add_argument("conclusion")

    p = sub.add_parser("admissible", parents=[common], help="rule verdict with bounded search")
    p.add_argument("premise")
    p.add_argument("conclusion")
    p.add_argument("--bound", type=int, default=1, help="number of fresh image variables")

    p = sub.add_parser("experiment", parents=[common], help="structural completeness experiment")
    p.add_argument("--vars", type=int, default=2)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--bound", type=int, default=1)
    return parser


# ------------------------------------------------------------------ helpers

def _parse_all(texts, fragment):
    formulas = [parse(t) for t in texts]
    fragment = fragment or infer_fragment(*formulas)
    return [parse(t, fragment) for t in texts], fragment


def _scope(args, formulas) -> Scope:
    if args.scope:
        names = [s.strip() for s in args.scope.split(",") if s.strip()]
        scope = Scope(tuple(names))
        missing = [v for v in free_vars_all(formulas) if v not in scope]
        if missing:
            raise UsageError(f"--scope lacks variables {', '.join(missing)}")
        return scope
    return Scope(free_vars_all(formulas))


def _emit(args, data: dict, lines) -> None:
    if args.json:
        print(json.dumps(data, ensure_ascii=False, sort_keys=True))
    else:
        for line in lines:
            print(line)


# ------------------------------------------------------------- subcommands

def cmd_check(args):
    (f,), fragment = _parse_all([args.formula], args.fragment)
    team = Team.parse(_scope(args, [f]), args.team)
    result = evaluate(team, f, fragment)
    _emit(args, {"holds": result, "team": team.to_json(), "formula": render(f)},
          [f"holds: {_bool(result)}"])


def cmd_valid(args):
    (f,), fragment = _parse_all([args.formula], args.fragment)
    result = is_valid(f, fragment)
    _emit(args, {"valid": result, "formula": render(f), "fragment": fragment.value},
          [f"valid: {_bool(result)}"])


def cmd_entails(args):
    items = args.items
    if items.count(":") != 1 or items[-1] == ":":
        raise UsageError("expected PREMISES... : FORMULA")
    cut = items.index(":")
    texts = items[:cut] + items[cut + 1:]
    formulas, fragment = _parse_all(texts, args.fragment)
    premises, goal = formulas[:cut], formulas[cut]
    result = consequence(premises, goal, fragment, _scope(args, formulas))
    _emit(args, {"entails": result, "premises": [render(g) for g in premises],
                 "formula": render(goal), "fragment": fragment.value},
          [f"entails: {_bool(result)}"])


def cmd_nf(args):
    (f,), fragment = _parse_all([args.formula], args.fragment)
    nf = normal_form(f, fragment, _scope(args, [f]))
    data = nf.to_json()
    lines = [f"components: {', '.join(data['components']) or '(none)'}"]
    if data["formula"] is not None:
        lines.append(f"formula: {data['formula']}")
    _emit(args, data, lines)


def cmd_flat(args):
    (f,), _ = _parse_all([args.formula], args.fragment)
    report = flat_characterization(f)
    data = report.to_json()
    _emit(args, data, [f"{k}: {_bool(v) if isinstance(v, bool) else v}"
                       for k, v in data.items()])


def cmd_unify(args):
    (f,), fragment = _parse_all([args.formula], args.fragment)
    report = projectivity_report(f, fragment)
    data = report.to_json()
    lines = [f"flat: {_bool(report.unifier is not None)}"]
    if report.unifier is not None:
        lines += [f"{k} -> {v}" for k, v in report.unifier.to_json().items()]
    _emit(args, data, lines)


def cmd_subst(args):
    with open(args.subst, encoding="utf-8") as fh:
        s = Substitution.from_json(fh.read())
    (f,), fragment = _parse_all([args.formula], args.fragment)
    out = apply(s, f)
    data = {"substitution": s.to_json(), "formula": render(f), "result": render(out)}
    lines = [f"result: {render(out)}"]
    if args.team is not None:
        images = [s.image(v) for v in free_vars_all([f])]
        team = Team.parse(_scope(args, images), args.team)
        target = Scope(free_vars_all([f]))
        translated = translate_team(team, s, target)
        left = evaluate(team, out)
        right = evaluate(translated, f)
        data.update({"team": team.to_json(), "translated": translated.to_json(),
                     "holds_substituted": left, "holds_translated": right})
        lines += [f"translated: {translated}", f"holds_substituted: {_bool(left)}",
                  f"holds_translated: {_bool(right)}"]
    _emit(args, data, lines)


def cmd_counterexample(args):
    (premise, conclusion), fragment = _parse_all([args.premise, args.conclusion], args.fragment)
    sigma = counterexample_substitution(premise, conclusion, fragment)
    data = {"derivable": sigma is None,
            "counterexample": sigma.to_json() if sigma is not None else None}
    lines = [f"derivable: {_bool(sigma is None)}"]
    if sigma is not None:
        lines += [f"{k} -> {v}" for k, v in sigma.to_json().items()]
    _emit(args, data, lines)


def cmd_admissible(args):
    (premise, conclusion), fragment = _parse_all([args.premise, args.conclusion], args.fragment)
    bound = bound_scope_for(premise, conclusion, args.bound)
    verdict = check_rule(premise, conclusion, fragment, bound)
    data = verdict.to_json()
    data["bounded_search"] = None
    found = bounded_admissibility_search(premise, conclusion, bound, fragment)
    if found is not None:
        data["bounded_search"] = found.to_json()
    lines = [f"derivable: {_bool(verdict.derivable)}",
             f"admissible: {data['admissible']['kind']}"]
    _emit(args, data, lines)


def cmd_experiment(args):
    config = ExperimentConfig(fragment=args.fragment or Fragment.INQL, var_count=args.vars,
                              sample_count=args.samples, seed=args.seed,
                              max_depth=args.depth, bound_vars=args.bound)
    report = structural_completeness_experiment(config)
    data = report.to_json()
    lines = [f"{k}: {data[k]}" for k in ("derivable", "non_derivable", "witnesses_constructed",
                                         "bounded_witnesses", "assertion_failures")]
    lines.append(f"passed: {_bool(report.passed)}")
    _emit(args, data, lines)
    return 0 if report.passed else 3


COMMANDS = {
    "check": cmd_check, "valid": cmd_valid, "entails": cmd_entails, "nf": cmd_nf,
    "flat": cmd_flat, "unify": cmd_unify, "subst": cmd_subst,
    "counterexample": cmd_counterexample, "admissible": cmd_admissible,
    "experiment": cmd_experiment,
}


def _fail(args, code: int, kind: str, message: str) -> int:
    if args is not None and getattr(args, "json", False):
        print(json.dumps({"error": kind, "message": message, "exit": code}), file=sys.stderr)
    else:
        print(f"error [{kind}]: {message}", file=sys.stderr)
    return code


def run(argv=None) -> int:
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
        with limits(args.eval_cap, args.family_cap):
            return COMMANDS[args.command](args) or 0
    except UsageError as exc:
        return _fail(args, 1, "UsageError", str(exc))
    except ScopeCapExceeded as exc:
        return _fail(args, 2, type(exc).__name__, str(exc))
    except InternalAssertionFailure as exc:
        return _fail(args, 3, type(exc).__name__, str(exc))
    except (TeamLogicError, ValueError, OSError) as exc:
        return _fail(args, 1, type(exc).__name__, str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
