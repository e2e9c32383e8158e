"""Prucnal-style projective unifiers for flat formulas."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    FragmentViolation,
    InconsistentInput,
    InternalAssertionFailure,
    UnsupportedConnective,
    ValuationNotSupporting,
)
from .formula import (
    CONNECTIVE_NOT_IN_FRAGMENT,
    And,
    Formula,
    Fragment,
    Imp,
    Neg,
    Tensor,
    Var,
    Violation,
    free_vars,
    free_vars_all,
    infer_fragment,
    negation_translate,
    render,
)
from .semantics import Scope, Valuation, consequence, evaluator_for, is_valid
from .substitution import Substitution, apply


class Style(enum.Enum):
    IMPLICATION = "implication"
    TENSOR = "tensor"


def style_for(fragment: Fragment) -> Style:
    return Style.TENSOR if fragment in (Fragment.PD, Fragment.XPD) else Style.IMPLICATION


def _negated(f: Formula) -> Formula:
    # keep tensor-style images inside the implication-free fragments
    try:
        return negation_translate(f)
    except UnsupportedConnective:
        return Neg(f)


def prucnal_unifier(f: Formula, v: Valuation, style: Style | str = Style.IMPLICATION,
                    fragment: Fragment | None = None) -> Substitution:
    """Unifier read off a valuation in the singleton support of ``f``.

    Variables false under ``v`` go to ``f /\\ p``.  Variables true under
    ``v`` go to ``f -> p`` (implication style) or ``~f \\/ p`` (tensor
    style, with ``~f`` spelled through the negation rewrite).
    """
    style = Style(style)
    if fragment is not None:
        if style is Style.IMPLICATION and not fragment.has_implication:
            raise FragmentViolation(fragment, [Violation(CONNECTIVE_NOT_IN_FRAGMENT, f, "→")])
        if style is Style.TENSOR and not fragment.has_tensor:
            raise FragmentViolation(fragment, [Violation(CONNECTIVE_NOT_IN_FRAGMENT, f, "⊗")])
    ev = evaluator_for(v.scope)
    ev.check_scope(f)
    if not ev.support(f) >> v.code & 1:
        raise ValuationNotSupporting(f"{{{v}}} does not satisfy {render(f)}")
    neg = _negated(f) if style is Style.TENSOR else None
    images = {}
    for name in free_vars(f):
        p = Var(name)
        if not v[name]:
            images[name] = And(f, p)
        elif style is Style.IMPLICATION:
            images[name] = Imp(f, p)
        else:
            images[name] = Tensor(neg, p)
    return Substitution(images)


@dataclass(frozen=True)
class ProjectivityReport:
    formula: Formula
    unifier: Substitution | None
    unifies: bool
    fixes_vars_under_premise: bool
    witness: Valuation | None = None

    @property
    def ok(self) -> bool:
        return self.unifies and self.fixes_vars_under_premise

    def to_json(self) -> dict:
        return {
            "formula": render(self.formula),
            "unifier": self.unifier.to_json() if self.unifier is not None else None,
            "unifies": self.unifies,
            "fixes_vars_under_premise": self.fixes_vars_under_premise,
            "witness": self.witness.to_string() if self.witness is not None else None,
        }


def check_projective(f: Formula, s: Substitution,
                     fragment: Fragment | None = None) -> ProjectivityReport:
    """Check ``|= s(f)`` and, for each variable p of f, ``f, s(p) |= p`` and ``f, p |= s(p)``."""
    unifies = is_valid(apply(s, f), fragment)
    scope = Scope(free_vars_all([f] + [s.image(p) for p in free_vars(f)]))
    fixes = True
    for name in free_vars(f):
        p, image = Var(name), s.image(name)
        if not (consequence([f, image], p, fragment, scope)
                and consequence([f, p], image, fragment, scope)):
            fixes = False
            break
    return ProjectivityReport(f, s if unifies and fixes else None, unifies, fixes)


def _witness(f: Formula) -> tuple[Valuation, bool]:
    """Lowest-coded valuation in the singleton support, and whether f is flat."""
    scope = Scope.of(f)
    ev = evaluator_for(scope)
    support = ev.support(f)
    if support == 0:
        raise InconsistentInput(f"{render(f)} is inconsistent")
    return Valuation(scope, (support & -support).bit_length() - 1), ev.is_flat(f)


def projective_unifier(f: Formula, fragment: Fragment | None = None) -> Substitution | None:
    """A flat projective unifier of ``f``, or None when ``f`` is not flat.

    The witness valuation is the lowest code in the singleton support.
    """
    return projectivity_report(f, fragment).unifier


def projectivity_report(f: Formula, fragment: Fragment | None = None) -> ProjectivityReport:
    fragment = fragment or infer_fragment(f)
    v, flat = _witness(f)
    if not flat:
        return ProjectivityReport(f, None, False, False, v)
    sigma = prucnal_unifier(f, v, style_for(fragment))
    report = check_projective(f, sigma)
    if not report.ok:
        raise InternalAssertionFailure(f"Prucnal unifier fails for {render(f)}: {report}")
    return ProjectivityReport(f, sigma, True, True, v)


__all__ = [
    "Style", "style_for", "prucnal_unifier", "ProjectivityReport", "check_projective",
    "projective_unifier", "projectivity_report",
]
