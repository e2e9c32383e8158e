"""Random and exhaustive formula generation per fragment.

Depth is tree height with atoms at depth 1, so ``=(p, q)`` and ``~p`` have
depth 2.
"""

from __future__ import annotations

import random
from itertools import product

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
)
from .semantics import is_flat

CONNECTIVES = {
    Fragment.PD: (And, Tensor),
    Fragment.INQL: (And, Or, Imp, Neg),
    Fragment.PT: (And, Tensor, Or, Imp),
    Fragment.XPD: (And, Tensor, Neg),
    Fragment.XPT: (And, Tensor, Or, Imp, Neg),
}

_NEG_ON_VARS_ONLY = (Fragment.PD, Fragment.PT)
_HAS_DEP = (Fragment.PD, Fragment.PT, Fragment.XPD, Fragment.XPT)


def random_formula(rng: random.Random, fragment: Fragment, variables, max_depth: int = 4,
                   leaf_prob: float = 0.3, *, flat_only: bool = False) -> Formula:
    """A random formula of ``fragment`` with height at most ``max_depth``.

    ``flat_only`` restricts generation to syntactically flat shapes (atoms,
    negations, conjunctions, tensors), which is how XPD dependence-atom
    arguments are drawn.
    """
    variables = list(variables)
    if max_depth <= 1 or rng.random() < leaf_prob:
        return _random_atom(rng, fragment, variables, max_depth, flat_only)
    ops = CONNECTIVES[fragment]
    op = rng.choice(ops)
    if op is Neg:
        # any negation is flat, so its body is unrestricted
        return Neg(random_formula(rng, fragment, variables, max_depth - 1, leaf_prob))
    if flat_only and op not in (And, Tensor):
        op = And
    return op(
        random_formula(rng, fragment, variables, max_depth - 1, leaf_prob, flat_only=flat_only),
        random_formula(rng, fragment, variables, max_depth - 1, leaf_prob, flat_only=flat_only),
    )


def _random_atom(rng, fragment, variables, max_depth, flat_only) -> Formula:
    choices = [("var", 6), ("bot", 1), ("top", 1)]
    if max_depth >= 2:
        if fragment in _NEG_ON_VARS_ONLY:
            choices.append(("negvar", 3))
        if fragment in _HAS_DEP and not flat_only:
            choices.append(("dep", 3))
    kinds, weights = zip(*choices)
    kind = rng.choices(kinds, weights)[0]
    if kind == "var":
        return Var(rng.choice(variables))
    if kind == "bot":
        return BOT
    if kind == "top":
        return TOP
    if kind == "negvar":
        return Neg(Var(rng.choice(variables)))
    n_args = rng.choice((0, 1, 1, 2))
    if fragment in _NEG_ON_VARS_ONLY:
        args = [Var(rng.choice(variables)) for _ in range(n_args + 1)]
    else:
        arg_depth = max(1, min(max_depth - 1, 2))
        flat = fragment is Fragment.XPD
        args = [random_formula(rng, fragment, variables, arg_depth, 0.5, flat_only=flat)
                for _ in range(n_args + 1)]
    return Dep(tuple(args[:-1]), args[-1])


def random_flat_formula(rng: random.Random, fragment: Fragment, variables,
                        max_depth: int = 4, tries: int = 50) -> Formula:
    """Rejection-sample a flat formula; fall back to a syntactically flat shape."""
    for _ in range(tries):
        f = random_formula(rng, fragment, variables, max_depth)
        if is_flat(f):
            return f
    return random_formula(rng, fragment, variables, max_depth, flat_only=True)


def enumerate_formulas(fragment: Fragment, variables, max_depth: int,
                       max_dep_args: int = 2) -> list[Formula]:
    """Every formula of ``fragment`` up to height ``max_depth``.

    Dependence atoms carry between 1 and ``max_dep_args`` arguments in total
    (consequent included).  XPD atom arguments range over the flat formulas
    of lower height.
    """
    atoms = [Var(v) for v in variables] + [BOT, TOP]
    seen: dict[Formula, None] = dict.fromkeys(atoms)
    layer = list(atoms)
    for _ in range(2, max_depth + 1):
        new: dict[Formula, None] = {}

        def add(f):
            if f not in seen and f not in new:
                new[f] = None

        if fragment in _NEG_ON_VARS_ONLY:
            for v in variables:
                add(Neg(Var(v)))
        ops = CONNECTIVES[fragment]
        for op in ops:
            if op is Neg:
                if fragment not in _NEG_ON_VARS_ONLY:
                    for f in layer:
                        add(Neg(f))
                continue
            for a, b in product(layer, repeat=2):
                add(op(a, b))
        if fragment in _HAS_DEP:
            if fragment in _NEG_ON_VARS_ONLY:
                pool = [Var(v) for v in variables]
            elif fragment is Fragment.XPD:
                pool = [f for f in layer if is_flat(f)]
            else:
                pool = layer
            for k in range(1, max_dep_args + 1):
                for args in product(pool, repeat=k):
                    add(Dep(tuple(args[:-1]), args[-1]))
        seen.update(new)
        layer = list(seen)
    return list(seen)


__all__ = ["CONNECTIVES", "random_formula", "random_flat_formula", "enumerate_formulas"]
