"""Theta formulas and the disjunctive normal form over maximal teams."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InconsistentInput, InternalAssertionFailure
from .formula import (
    BOT,
    Dep,
    Formula,
    Fragment,
    Neg,
    Tensor,
    Var,
    conj,
    disj,
    render,
    tensor,
)
from .semantics import (
    Scope,
    Team,
    TeamFamily,
    Valuation,
    equivalent,
    evaluator_for,
    is_consistent,
    truth_family,
)


def literal(name: str, value: int) -> Formula:
    """``p^1 = p`` and ``p^0 = ~p``."""
    return Var(name) if value else Neg(Var(name))


def valuation_conjunction(v: Valuation) -> Formula:
    """``p_1^{v(p_1)} /\\ ... /\\ p_n^{v(p_n)}`` in scope order."""
    return conj(literal(name, v.code >> i & 1) for i, name in enumerate(v.scope.variables))


def uses_tensor_theta(fragment: Fragment) -> bool:
    return fragment in (Fragment.PD, Fragment.XPD)


def theta(team: Team, fragment: Fragment = Fragment.INQL) -> Formula:
    """The formula whose satisfying teams are exactly the subteams of ``team``.

    PD and XPD get the tensor-of-conjunctions rendering, the other fragments
    the double negation of an intuitionistic disjunction.  ``Theta`` of the
    empty team is bot.  On the empty scope the conjunctions are empty, so the
    nonempty team gets ``top`` inside the outer operator.
    """
    if not team:
        return BOT
    parts = [valuation_conjunction(v) for v in team]
    if uses_tensor_theta(fragment):
        return tensor(parts)
    return Neg(Neg(disj(parts)))


def maximal_teams(family: TeamFamily) -> list[Team]:
    return family.maximal()


@dataclass(frozen=True)
class NormalForm:
    scope: Scope
    components: tuple
    fragment: Fragment
    formula: Formula | None

    def thetas(self) -> list[Formula]:
        return [theta(x, self.fragment) for x in self.components]

    def to_json(self) -> dict:
        return {
            "components": [x.to_string() for x in self.components],
            "formula": render(self.formula) if self.formula is not None else None,
            "fragment": self.fragment.value,
        }


def _verify_meta_disjunction(f: Formula, comps, family: TeamFamily,
                             fragment: Fragment) -> None:
    scope = family.scope
    ev = evaluator_for(scope)
    thetas = [theta(x, fragment) for x in comps]
    for x, th in zip(comps, thetas):
        # every satisfier of theta is a subteam of x; downward closure then
        # reduces "theta |= f" to x |= f
        if not ev.holds(f, x.bits) or not ev.holds(th, x.bits):
            raise InternalAssertionFailure(f"component {x} does not entail {render(f)}")
    for bits in family.members:
        # the empty team lies under every component, and equals bot when there are none
        if bits and not any(ev.holds(th, bits) for th in thetas):
            raise InternalAssertionFailure(
                f"team {Team(scope, bits)} satisfies {render(f)} but no component")


def normal_form(f: Formula, fragment: Fragment = Fragment.INQL,
                scope: Scope | None = None, verify: bool = True) -> NormalForm:
    """Decompose ``f`` into its maximal satisfying teams.

    For fragments with intuitionistic disjunction the derived formula is
    the disjunction of the component thetas (bot when there are none); for
    PD and XPD no such formula exists in the language and ``formula`` is None.
    """
    fam = truth_family(f, scope, fragment if fragment is Fragment.XPD else None)
    comps = tuple(fam.maximal())
    if fragment.has_or:
        formula = disj(theta(x, fragment) for x in comps)
    else:
        formula = None
    if verify:
        _verify_meta_disjunction(f, comps, fam, fragment)
        if formula is not None and not equivalent(f, formula, scope=fam.scope):
            raise InternalAssertionFailure(
                f"{render(f)} is not equivalent to its normal form {render(formula)}")
    return NormalForm(fam.scope, comps, fragment, formula)


@dataclass(frozen=True)
class FlatReport:
    flat: bool
    single_theta: Team | None
    double_neg_equiv: bool
    tensor_excluded_middle: bool

    def to_json(self) -> dict:
        return {
            "flat": self.flat,
            "single_theta": self.single_theta.to_string() if self.single_theta else None,
            "double_neg_equiv": self.double_neg_equiv,
            "tensor_excluded_middle": self.tensor_excluded_middle,
        }


def flat_characterization(f: Formula) -> FlatReport:
    """Compute the four equivalent flatness conditions separately and compare.

    (i) flat; (ii) a single maximal team; (iii) ``f`` equivalent to ``~~f``;
    (iv) ``f \\/ ~f`` valid.  Only defined for consistent formulas.
    """
    if not is_consistent(f):
        raise InconsistentInput(f"{render(f)} is inconsistent")
    scope = Scope.of(f)
    # one evaluator, so the four checks share their memo
    ev = evaluator_for(scope)
    flat = ev.is_flat(f)
    family = ev.family(f)
    comps = TeamFamily(scope, family).maximal()
    single = comps[0] if len(comps) == 1 else None
    dneg = ev.family(Neg(Neg(f))) == family
    tem = ev.holds(Tensor(f, Neg(f)), scope.full_bits)
    verdicts = (flat, single is not None, dneg, tem)
    if len(set(verdicts)) != 1:
        raise InternalAssertionFailure(
            f"flatness conditions disagree on {render(f)}: {verdicts}")
    return FlatReport(flat, single, dneg, tem)


def dependence_normal_form(dep: Dep) -> Formula:
    """Intuitionistic disjunction over every way the consequent can depend
    on the argument patterns, one tensor block per pattern.

    Valid as an equivalent of ``dep`` when all arguments are flat.
    """
    args = list(dep.args)
    patterns = list(product((0, 1), repeat=len(args)))

    def lit(g: Formula, bit: int) -> Formula:
        return g if bit else Neg(g)

    disjuncts = []
    for choice in product((0, 1), repeat=len(patterns)):
        blocks = []
        for pattern, out in zip(patterns, choice):
            parts = [lit(a, b) for a, b in zip(args, pattern)]
            parts.append(lit(dep.consequent, out))
            blocks.append(conj(parts))
        disjuncts.append(tensor(blocks))
    return disj(disjuncts)


__all__ = [
    "literal", "valuation_conjunction", "theta", "maximal_teams", "NormalForm",
    "normal_form", "FlatReport", "flat_characterization", "dependence_normal_form",
    "uses_tensor_theta",
]
