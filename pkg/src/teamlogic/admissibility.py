"""Admissibility of rules under flat substitutions.

Every logic handled here is structurally complete for flat substitutions,
so a rule that is not derivable always has a flat counterexample.  The
counterexample is built from the premise's normal form: some component
fails to entail the conclusion, and the Prucnal unifier of that
component's theta unifies the premise but not the conclusion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .errors import (
    BudgetExceeded,
    FragmentViolation,
    InternalAssertionFailure,
    TeamLogicError,
)
from .formula import (
    Formula,
    Fragment,
    Imp,
    Neg,
    conj,
    disj,
    fragment_check,
    free_vars_all,
    render,
)
from .generate import random_formula
from .normalform import normal_form, theta
from .projectivity import projective_unifier
from .semantics import Scope, Team, consequence, is_valid
from .substitution import Substitution, apply, is_flat_substitution


def fold_premises(premises) -> Formula:
    """Several premises are read as their conjunction."""
    if isinstance(premises, Formula):
        return premises
    return conj(premises)


def derivable(premise, conclusion: Formula, fragment: Fragment | None = None) -> bool:
    return consequence([fold_premises(premise)], conclusion, fragment)


def _witness_ok(s: Substitution, premise: Formula, conclusion: Formula,
                fragment: Fragment | None) -> bool:
    return (is_flat_substitution(s)
            and is_valid(apply(s, premise), fragment)
            and not is_valid(apply(s, conclusion), fragment))


def counterexample_substitution(premise, conclusion: Formula,
                                fragment: Fragment = Fragment.XPT) -> Substitution | None:
    """A flat substitution unifying the premise but not the conclusion.

    Returns None exactly when the rule is derivable.
    """
    premise = fold_premises(premise)
    if derivable(premise, conclusion, fragment):
        return None
    scope = Scope(free_vars_all([premise, conclusion]))
    nf = normal_form(premise, fragment, scope)
    for component in nf.components:
        th = theta(component, fragment)
        if consequence([th], conclusion, scope=scope):
            continue
        sigma = projective_unifier(th, fragment)
        if sigma is None or not _witness_ok(sigma, premise, conclusion, fragment):
            raise InternalAssertionFailure(
                f"projective unifier of {render(th)} is not a counterexample to "
                f"{render(premise)} / {render(conclusion)}")
        return sigma
    raise InternalAssertionFailure(
        f"{render(premise)} does not entail {render(conclusion)} but every "
        "normal-form component does")


def _fresh_names(count: int, avoid) -> tuple[str, ...]:
    avoid = set(avoid)
    out = []
    i = 1
    while len(out) < count:
        name = f"u{i}"
        if name not in avoid:
            out.append(name)
        i += 1
    return tuple(out)


def bound_scope_for(premise: Formula, conclusion: Formula, m: int) -> Scope:
    """``m`` fresh variables to build candidate images over."""
    return Scope(_fresh_names(m, free_vars_all([premise, conclusion])))


def bounded_admissibility_search(premise, conclusion: Formula, bound_scope: Scope,
                                 fragment: Fragment = Fragment.XPT,
                                 budget: int = 100_000) -> Substitution | None:
    """Search flat substitutions with images over ``bound_scope``.

    Up to equivalence the flat formulas over a scope are bot and the thetas
    of its nonempty teams, so candidates are tried in increasing team order
    (bot first).  Exhausting them proves admissibility only relative to
    images over that scope.
    """
    from .semantics import _check_cap  # cap shared with family enumeration

    premise = fold_premises(premise)
    _check_cap(bound_scope.n, "family")
    names = free_vars_all([premise, conclusion])
    images = [theta(Team(bound_scope, bits), fragment)
              for bits in range(bound_scope.full_bits + 1)]
    total = len(images) ** len(names)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate substitutions exceed the budget of {budget}")
    for choice in product(images, repeat=len(names)):
        sigma = Substitution(dict(zip(names, choice)))
        if (is_valid(apply(sigma, premise), fragment)
                and not is_valid(apply(sigma, conclusion), fragment)):
            return sigma
    return None


@dataclass(frozen=True)
class Admissible:
    """Derivable, hence admissible."""


@dataclass(frozen=True)
class AdmissibleWithinBound:
    bound: Scope


@dataclass(frozen=True)
class NotAdmissible:
    witness: Substitution


@dataclass(frozen=True)
class RuleVerdict:
    premise: Formula
    conclusion: Formula
    derivable: bool
    admissible_verdict: object
    counterexample: Substitution | None
    fragment: Fragment = Fragment.XPT

    def __post_init__(self):
        if self.derivable and self.counterexample is not None:
            raise InternalAssertionFailure("derivable rule with a counterexample")
        if isinstance(self.admissible_verdict, NotAdmissible):
            if not _witness_ok(self.admissible_verdict.witness, self.premise,
                               self.conclusion, self.fragment):
                raise InternalAssertionFailure("non-admissibility witness does not re-check")

    def to_json(self) -> dict:
        verdict = self.admissible_verdict
        if isinstance(verdict, NotAdmissible):
            admissible = {"kind": "NotAdmissible", "witness": verdict.witness.to_json()}
        elif isinstance(verdict, AdmissibleWithinBound):
            admissible = {"kind": "AdmissibleWithinBound", "bound": list(verdict.bound)}
        else:
            admissible = {"kind": "Admissible"}
        return {
            "premise": render(self.premise),
            "conclusion": render(self.conclusion),
            "fragment": self.fragment.value,
            "derivable": self.derivable,
            "admissible": admissible,
            "counterexample": (self.counterexample.to_json()
                               if self.counterexample is not None else None),
        }


def check_rule(premise, conclusion: Formula, fragment: Fragment = Fragment.XPT,
               bound_scope: Scope | None = None) -> RuleVerdict:
    """Derivability, the constructive counterexample and (optionally) a bounded search."""
    premise = fold_premises(premise)
    is_derivable = derivable(premise, conclusion, fragment)
    witness = counterexample_substitution(premise, conclusion, fragment)
    if witness is not None:
        verdict = NotAdmissible(witness)
    elif bound_scope is not None:
        found = bounded_admissibility_search(premise, conclusion, bound_scope, fragment)
        if found is not None:
            raise InternalAssertionFailure("bounded search refuted a derivable rule")
        verdict = AdmissibleWithinBound(bound_scope)
    else:
        verdict = Admissible()
    return RuleVerdict(premise, conclusion, is_derivable, verdict, witness, fragment)


# ------------------------------------------------------------- experiment

@dataclass(frozen=True)
class ExperimentConfig:
    fragment: Fragment = Fragment.INQL
    var_count: int = 2
    sample_count: int = 200
    seed: int = 0
    max_depth: int = 4
    bound_vars: int = 1

    def __post_init__(self):
        if not 1 <= self.var_count <= 3:
            raise ValueError("var_count must be between 1 and 3")
        if self.sample_count < 0 or self.max_depth < 1 or self.bound_vars < 0:
            raise ValueError("invalid experiment configuration")


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    derivable: int = 0
    non_derivable: int = 0
    witnesses_constructed: int = 0
    bounded_witnesses: int = 0
    assertion_failures: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.assertion_failures == 0

    def merge(self, other: "ExperimentReport") -> "ExperimentReport":
        out = ExperimentReport(self.config)
        for name in ("derivable", "non_derivable", "witnesses_constructed",
                     "bounded_witnesses", "assertion_failures"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        out.failures = self.failures + other.failures
        return out

    def to_json(self) -> dict:
        c = self.config
        return {
            "config": {"fragment": c.fragment.value, "var_count": c.var_count,
                       "sample_count": c.sample_count, "seed": c.seed,
                       "max_depth": c.max_depth, "bound_vars": c.bound_vars},
            "derivable": self.derivable,
            "non_derivable": self.non_derivable,
            "witnesses_constructed": self.witnesses_constructed,
            "bounded_witnesses": self.bounded_witnesses,
            "assertion_failures": self.assertion_failures,
            "passed": self.passed,
            "failures": self.failures,
        }


VARIABLE_NAMES = ("p", "q", "r")


def sample_rule(rng: random.Random, config: ExperimentConfig) -> tuple[Formula, Formula]:
    variables = VARIABLE_NAMES[:config.var_count]
    premise = random_formula(rng, config.fragment, variables, config.max_depth)
    conclusion = random_formula(rng, config.fragment, variables, config.max_depth)
    return premise, conclusion


def run_sample(premise: Formula, conclusion: Formula, config: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport(config)
    fragment = config.fragment
    scope = Scope(VARIABLE_NAMES[:config.var_count])
    dump = {"premise": render(premise), "conclusion": render(conclusion)}
    try:
        is_derivable = consequence([premise], conclusion, fragment, scope)
        try:
            witness = counterexample_substitution(premise, conclusion, fragment)
        except InternalAssertionFailure as exc:
            report.assertion_failures += 1
            report.failures.append({**dump, "error": str(exc)})
            return report
        if is_derivable:
            report.derivable += 1
        else:
            report.non_derivable += 1
        if is_derivable != (witness is None):
            report.assertion_failures += 1
            report.failures.append({**dump, "error": "derivability and witness disagree",
                                    "derivable": is_derivable})
            return report
        if witness is not None:
            if _witness_ok(witness, premise, conclusion, fragment):
                report.witnesses_constructed += 1
            else:
                report.assertion_failures += 1
                report.failures.append({**dump, "error": "witness does not re-check",
                                        "substitution": witness.to_json()})
                return report
        if config.bound_vars:
            bound = bound_scope_for(premise, conclusion, config.bound_vars)
            found = bounded_admissibility_search(premise, conclusion, bound, fragment)
            if found is not None:
                report.bounded_witnesses += 1
                if is_derivable:
                    report.assertion_failures += 1
                    report.failures.append({**dump, "error": "bounded search refuted a "
                                            "derivable rule", "substitution": found.to_json()})
    except TeamLogicError as exc:
        report.assertion_failures += 1
        report.failures.append({**dump, "error": f"{type(exc).__name__}: {exc}"})
    return report


def structural_completeness_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Sample rules and check derivable <=> no flat counterexample."""
    rng = random.Random(config.seed)
    report = ExperimentReport(config)
    for _ in range(config.sample_count):
        premise, conclusion = sample_rule(rng, config)
        report = report.merge(run_sample(premise, conclusion, config))
    return report


def ndk_instance(k: int, phi: Formula, psis, fragment: Fragment = Fragment.INQL) -> Formula:
    """``(~phi -> ||_i ~psi_i) -> ||_i (~phi -> ~psi_i)``."""
    psis = list(psis)
    if k < 1 or len(psis) != k:
        raise ValueError(f"need exactly k = {k} >= 1 formulas psi_i, got {len(psis)}")
    if not fragment.has_implication:
        raise FragmentViolation(fragment, [])
    for g in [phi] + psis:
        bad = fragment_check(g, fragment)
        if bad:
            raise FragmentViolation(fragment, bad)
    antecedent = Imp(Neg(phi), disj(Neg(psi) for psi in psis))
    return Imp(antecedent, disj(Imp(Neg(phi), Neg(psi)) for psi in psis))


__all__ = [
    "fold_premises", "derivable", "counterexample_substitution", "bound_scope_for",
    "bounded_admissibility_search", "Admissible", "AdmissibleWithinBound", "NotAdmissible",
    "RuleVerdict", "check_rule", "ExperimentConfig", "ExperimentReport", "sample_rule",
    "run_sample", "structural_completeness_experiment", "ndk_instance",
]
