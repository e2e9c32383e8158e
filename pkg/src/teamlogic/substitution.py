"""Substitutions: application, flat/stable classification, team translation."""

from __future__ import annotations

import json
from collections.abc import Mapping

from .errors import FragmentViolation, InternalAssertionFailure, NotSubteam
from .formula import (
    And,
    Bot,
    Dep,
    Formula,
    Fragment,
    Imp,
    Neg,
    Or,
    Tensor,
    Top,
    Var,
    fragment_check,
    parse,
    render,
)
from .semantics import Evaluator, Scope, Team, equivalent, evaluator_for, is_flat, check_fragment


class Substitution(Mapping):
    """Finite map from variable names to formulas; identity elsewhere."""

    def __init__(self, mapping=None):
        items = dict(mapping or {})
        for name, image in items.items():
            if not isinstance(name, str):
                raise TypeError(f"substitution keys are variable names, got {name!r}")
            if not isinstance(image, Formula):
                raise TypeError(f"image of {name} is not a formula: {image!r}")
        self._map = items

    def __getitem__(self, name):
        return self._map[name]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def image(self, name: str) -> Formula:
        return self._map.get(name, Var(name))

    def __call__(self, f: Formula) -> Formula:
        return apply(self, f)

    def compose(self, inner: "Substitution") -> "Substitution":
        """``self o inner``: first ``inner``, then ``self``."""
        names = list(inner) + [p for p in self if p not in inner._map]
        return Substitution({p: apply(self, inner.image(p)) for p in names})

    def to_json(self) -> dict:
        return {name: render(image) for name, image in self._map.items()}

    @classmethod
    def from_json(cls, data) -> "Substitution":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({name: parse(text) for name, text in data.items()})

    def __repr__(self):
        body = ", ".join(f"{k} -> {render(v)}" for k, v in self._map.items())
        return f"Substitution({{{body}}})"


IDENTITY = Substitution()


def apply(s: Substitution, f: Formula, fragment: Fragment | None = None) -> Formula:
    """Homomorphic image of ``f``.  With ``fragment`` the result must belong to it."""
    out = _apply(s, f)
    if fragment is not None:
        bad = check_fragment(out, fragment)
        if bad:
            raise FragmentViolation(fragment, bad)
    return out


def _apply(s: Substitution, f: Formula) -> Formula:
    if isinstance(f, Var):
        return s.image(f.name)
    if isinstance(f, (Bot, Top)):
        return f
    if isinstance(f, Neg):
        return Neg(_apply(s, f.child))
    if isinstance(f, Dep):
        return Dep(tuple(_apply(s, a) for a in f.args), _apply(s, f.consequent))
    if isinstance(f, (And, Tensor, Or, Imp)):
        return type(f)(_apply(s, f.left), _apply(s, f.right))
    raise TypeError(f"not a formula: {f!r}")


def is_flat_substitution(s: Substitution) -> bool:
    return all(is_flat(image) for image in s.values())


def is_stable_substitution(s: Substitution, fragment: Fragment = Fragment.INQL) -> bool:
    """Every image is equivalent to its double negation.

    Images must lie in ``fragment``; on InqL this coincides with flatness,
    which is checked as well.
    """
    for name, image in s.items():
        bad = fragment_check(image, fragment)
        if bad:
            raise FragmentViolation(fragment, bad)
    stable = all(equivalent(image, Neg(Neg(image))) for image in s.values())
    if stable != is_flat_substitution(s):
        raise InternalAssertionFailure(f"stability and flatness disagree for {s!r}")
    return stable


def _translation(scope: Scope, s: Substitution, target: Scope,
                 ev: Evaluator | None = None) -> list[int]:
    """``code -> code of v_sigma`` for every valuation code of ``scope``."""
    ev = ev or evaluator_for(scope)
    supports = []
    for name in target.variables:
        image = s.image(name)
        ev.check_scope(image)
        supports.append(ev.support(image))
    out = []
    for code in range(scope.num_valuations):
        bit = 1 << code
        out.append(sum(1 << j for j, sup in enumerate(supports) if sup & bit))
    return out


def translate_team(team: Team, s: Substitution, target: Scope) -> Team:
    """``X_sigma``: each member ``v`` maps to ``v_sigma(p) = [{v} |= sigma(p)]``."""
    table = _translation(team.scope, s, target)
    bits = 0
    for code in team.codes:
        bits |= 1 << table[code]
    return Team(target, bits)


def inverse_select(y: Team, team: Team, s: Substitution) -> Team:
    """Members of ``team`` whose translation lands in ``y``."""
    table = _translation(team.scope, s, y.scope)
    image = 0
    for code in team.codes:
        image |= 1 << table[code]
    if y.bits & ~image:
        raise NotSubteam(f"{y} is not a subteam of the translated team {Team(y.scope, image)}")
    bits = 0
    for code in team.codes:
        if y.bits >> table[code] & 1:
            bits |= 1 << code
    out = Team(team.scope, bits)
    if translate_team(out, s, y.scope) != y:
        raise InternalAssertionFailure("inverse selection does not translate back")
    return out


__all__ = [
    "Substitution", "IDENTITY", "apply", "is_flat_substitution",
    "is_stable_substitution", "translate_team", "inverse_select",
]
