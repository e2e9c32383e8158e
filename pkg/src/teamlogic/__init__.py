"""Team semantics for propositional dependence and inquisitive logics."""

from .admissibility import (
    ExperimentConfig,
    RuleVerdict,
    bounded_admissibility_search,
    check_rule,
    counterexample_substitution,
    derivable,
    ndk_instance,
    structural_completeness_experiment,
)
from .config import Limits, limits
from .errors import (
    BudgetExceeded,
    FormulaSyntaxError,
    FragmentViolation,
    InconsistentInput,
    InternalAssertionFailure,
    NotSubteam,
    ScopeCapExceeded,
    ScopeMismatch,
    TeamLogicError,
    UnsupportedConnective,
    ValuationNotSupporting,
)
from .formula import (
    BOT,
    TOP,
    And,
    Dep,
    Formula,
    Fragment,
    Imp,
    Neg,
    Or,
    Tensor,
    Var,
    fragment_check,
    negation_translate,
    parse,
    render,
)
from .normalform import dependence_normal_form, flat_characterization, normal_form, theta
from .projectivity import check_projective, projective_unifier, prucnal_unifier
from .semantics import (
    Scope,
    Team,
    Valuation,
    consequence,
    equivalent,
    evaluate,
    is_flat,
    is_valid,
    singleton_support,
    truth_family,
)
from .substitution import Substitution, apply, inverse_select, translate_team

__version__ = "0.1.0"

__all__ = [
    "ExperimentConfig", "RuleVerdict", "bounded_admissibility_search", "check_rule",
    "counterexample_substitution", "derivable", "ndk_instance",
    "structural_completeness_experiment", "Limits", "limits", "BOT", "TOP", "And", "Dep",
    "Formula", "Fragment", "Imp", "Neg", "Or", "Tensor", "Var", "fragment_check",
    "negation_translate", "parse", "render", "dependence_normal_form",
    "flat_characterization", "normal_form", "theta", "check_projective",
    "projective_unifier", "prucnal_unifier", "Scope", "Team", "Valuation", "consequence",
    "equivalent", "evaluate", "is_flat", "is_valid", "singleton_support", "truth_family",
    "Substitution", "apply", "inverse_select", "translate_team", "BudgetExceeded",
    "FormulaSyntaxError", "FragmentViolation", "InconsistentInput",
    "InternalAssertionFailure", "NotSubteam", "ScopeCapExceeded", "ScopeMismatch",
    "TeamLogicError", "UnsupportedConnective", "ValuationNotSupporting",
]
