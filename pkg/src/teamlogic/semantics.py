"""Team semantics over finite scopes.

A scope fixes an order on variables.  Valuation code ``c`` assigns
``v(p_i) = (c >> i) & 1``, so the first scope variable is the lowest bit.
A team is an ``int`` bitset over the ``2**n`` codes; bit ``c`` set means the
valuation with code ``c`` is a member.

Evaluation is memoized per query on ``(id(subformula), team bits)``; nothing
is cached across calls.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .config import current_limits
from .errors import FragmentViolation, ScopeCapExceeded, ScopeMismatch
from .formula import (
    BOT,
    NON_FLAT_DEP_ARGUMENT,
    REQUIRES_SEMANTIC_CHECK,
    TOP,
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
    Violation,
    conj,
    fragment_check,
    free_vars,
    free_vars_all,
    subformulas,
)


# ------------------------------------------------------------------ scopes

@dataclass(frozen=True)
class Scope:
    variables: tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.variables, tuple):
            object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variables in scope {self.variables}")

    @classmethod
    def of(cls, *formulas: Formula) -> "Scope":
        return cls(free_vars_all(formulas))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def num_valuations(self) -> int:
        return 1 << self.n

    @property
    def full_bits(self) -> int:
        return (1 << self.num_valuations) - 1

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ScopeMismatch(f"variable {name!r} not in scope {self}") from None

    def __contains__(self, name) -> bool:
        return name in self.variables

    def __iter__(self):
        return iter(self.variables)

    def __len__(self):
        return self.n

    def __str__(self):
        return "{" + ", ".join(self.variables) + "}"

    def covers(self, f: Formula) -> bool:
        return all(v in self.variables for v in free_vars(f))

    @cached_property
    def var_masks(self) -> dict[str, int]:
        """Team bitset of the valuations making each variable true."""
        masks = {}
        for i, name in enumerate(self.variables):
            m = 0
            for code in range(self.num_valuations):
                if code >> i & 1:
                    m |= 1 << code
            masks[name] = m
        return masks

    def valuation(self, assignment: dict[str, int] | str) -> "Valuation":
        if isinstance(assignment, str):
            return Valuation.parse(self, assignment)
        code = 0
        for i, name in enumerate(self.variables):
            if assignment[name]:
                code |= 1 << i
        return Valuation(self, code)

    def valuations(self) -> Iterator["Valuation"]:
        for code in range(self.num_valuations):
            yield Valuation(self, code)

    def full_team(self) -> "Team":
        return Team(self, self.full_bits)

    def empty_team(self) -> "Team":
        return Team(self, 0)

    def teams(self) -> Iterator["Team"]:
        for bits in range(self.full_bits + 1):
            yield Team(self, bits)


def _check_cap(n: int, kind: str) -> None:
    lim = current_limits()
    cap = lim.family_cap if kind == "family" else lim.eval_cap
    if n > cap:
        raise ScopeCapExceeded(n, cap, kind)


@dataclass(frozen=True)
class Valuation:
    scope: Scope
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.scope.num_valuations:
            raise ValueError(f"valuation code {self.code} out of range for {self.scope}")

    def __getitem__(self, name: str) -> int:
        return self.code >> self.scope.index(name) & 1

    def as_dict(self) -> dict[str, int]:
        return {name: self.code >> i & 1 for i, name in enumerate(self.scope.variables)}

    def to_string(self) -> str:
        if self.scope.n == 0:
            return "ε"
        return "".join(str(self.code >> i & 1) for i in range(self.scope.n))

    @classmethod
    def parse(cls, scope: Scope, text: str) -> "Valuation":
        text = text.strip()
        if text == "ε" and scope.n == 0:
            return cls(scope, 0)
        if len(text) != scope.n or set(text) - {"0", "1"}:
            raise ValueError(f"valuation {text!r} does not fit scope {scope}")
        return cls(scope, sum(1 << i for i, ch in enumerate(text) if ch == "1"))

    def __str__(self):
        return self.to_string()


@dataclass(frozen=True)
class Team:
    scope: Scope
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > self.scope.full_bits:
            raise ValueError("team bits outside the scope's valuation space")

    @classmethod
    def from_valuations(cls, scope: Scope, valuations: Iterable) -> "Team":
        bits = 0
        for v in valuations:
            if isinstance(v, str):
                v = Valuation.parse(scope, v)
            elif isinstance(v, dict):
                v = scope.valuation(v)
            bits |= 1 << v.code
        return cls(scope, bits)

    @classmethod
    def parse(cls, scope: Scope, text: str) -> "Team":
        """Read a team literal such as ``{10, 01}``."""
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"team literal must be braced: {text!r}")
        body = body[1:-1].strip()
        items = [part.strip() for part in body.split(",")] if body else []
        return cls.from_valuations(scope, items)

    @property
    def codes(self) -> list[int]:
        return [c for c in range(self.scope.num_valuations) if self.bits >> c & 1]

    def __iter__(self) -> Iterator[Valuation]:
        for c in self.codes:
            yield Valuation(self.scope, c)

    def __len__(self):
        return bin(self.bits).count("1")

    def __contains__(self, v: Valuation) -> bool:
        return bool(self.bits >> v.code & 1)

    def __bool__(self):
        return self.bits != 0

    def issubset(self, other: "Team") -> bool:
        self._same_scope(other)
        return self.bits & ~other.bits == 0

    def __le__(self, other):
        return self.issubset(other)

    def __or__(self, other: "Team") -> "Team":
        self._same_scope(other)
        return Team(self.scope, self.bits | other.bits)

    def __and__(self, other: "Team") -> "Team":
        self._same_scope(other)
        return Team(self.scope, self.bits & other.bits)

    def __sub__(self, other: "Team") -> "Team":
        self._same_scope(other)
        return Team(self.scope, self.bits & ~other.bits)

    def _same_scope(self, other):
        if other.scope != self.scope:
            raise ScopeMismatch(f"teams on different scopes {self.scope} and {other.scope}")

    def subteams(self) -> Iterator["Team"]:
        sub = self.bits
        while True:
            yield Team(self.scope, sub)
            if sub == 0:
                return
            sub = (sub - 1) & self.bits

    def restrict(self, scope: Scope) -> "Team":
        """Project every member onto ``scope`` (a subset of this team's scope)."""
        positions = [self.scope.index(name) for name in scope.variables]
        bits = 0
        for c in self.codes:
            code = 0
            for j, i in enumerate(positions):
                if c >> i & 1:
                    code |= 1 << j
            bits |= 1 << code
        return Team(scope, bits)

    def to_string(self) -> str:
        return "{" + ", ".join(v.to_string() for v in self) + "}"

    def to_json(self) -> dict:
        return {"scope": list(self.scope.variables), "teams": [v.to_string() for v in self]}

    @classmethod
    def from_json(cls, data: dict) -> "Team":
        scope = Scope(tuple(data["scope"]))
        return cls.from_valuations(scope, data["teams"])

    def __str__(self):
        return self.to_string()


@dataclass(frozen=True)
class TeamFamily:
    scope: Scope
    members: frozenset

    def __contains__(self, team) -> bool:
        bits = team.bits if isinstance(team, Team) else team
        return bits in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[Team]:
        for bits in sorted(self.members):
            yield Team(self.scope, bits)

    def is_downward_closed(self) -> bool:
        for bits in self.members:
            b = bits
            while b:
                low = b & -b
                if bits & ~low not in self.members:
                    return False
                b ^= low
        return True

    def maximal(self) -> list[Team]:
        """The inclusion-maximal nonempty members, sorted by bit value."""
        out = []
        for bits in self.members:
            if bits == 0:
                continue
            free = self.scope.full_bits & ~bits
            maximal = True
            while free:
                low = free & -free
                if bits | low in self.members:
                    maximal = False
                    break
                free ^= low
            if maximal:
                out.append(bits)
        return [Team(self.scope, b) for b in sorted(out)]


# -------------------------------------------------------------- evaluator

def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low
        bits ^= low


def _dep_by_implication(dep: Dep) -> Formula:
    """``/\\_i (a_i || ~a_i) -> (b || ~b)``, with ``~x`` spelled ``x -> bot``."""
    def decided(x):
        return Or(x, Imp(x, BOT))

    return Imp(conj(decided(a) for a in dep.args), decided(dep.consequent))


class Evaluator:
    """Team evaluation on one scope with a query-local memo.

    ``xpd=True`` reads dependence atoms with the valuation-equivalence clause
    (which presupposes flat arguments); otherwise atoms with variable
    arguments use the direct pairwise clause and all others the
    implication clause.
    """

    def __init__(self, scope: Scope, *, xpd: bool = False):
        self.scope = scope
        self.xpd = xpd
        self.full = scope.full_bits
        self._masks = scope.var_masks
        self._support: dict[int, int] = {}
        self._memo: dict[tuple[int, int], bool] = {}
        self._expansions: dict[int, Formula] = {}
        self._pinned: list[Formula] = []

    def _pin(self, f: Formula) -> None:
        # ids are memo keys; keep nodes alive for the evaluator's lifetime
        self._pinned.append(f)

    def check_scope(self, f: Formula) -> None:
        missing = [v for v in free_vars(f) if v not in self._masks]
        if missing:
            raise ScopeMismatch(f"variables {missing} of {f} are not in scope {self.scope}")

    # singleton support -------------------------------------------------
    def support(self, f: Formula) -> int:
        """Bitset of valuations ``v`` with ``{v} |= f``."""
        key = id(f)
        hit = self._support.get(key)
        if hit is not None:
            return hit
        self._pin(f)
        if isinstance(f, Var):
            out = self._masks[f.name]
        elif isinstance(f, Bot):
            out = 0
        elif isinstance(f, (Top, Dep)):
            out = self.full
        elif isinstance(f, Neg):
            out = self.full & ~self.support(f.child)
        elif isinstance(f, And):
            out = self.support(f.left) & self.support(f.right)
        elif isinstance(f, (Tensor, Or)):
            out = self.support(f.left) | self.support(f.right)
        elif isinstance(f, Imp):
            out = (self.full & ~self.support(f.left)) | self.support(f.right)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._support[key] = out
        return out

    # full evaluation ------------------------------------------------------
    def holds(self, f: Formula, team: int) -> bool:
        if team == 0:
            return True
        key = (id(f), team)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self._pin(f)
        out = self._holds(f, team)
        self._memo[key] = out
        return out

    def _holds(self, f: Formula, X: int) -> bool:
        if isinstance(f, Var):
            return X & ~self._masks[f.name] == 0
        if isinstance(f, Bot):
            return False
        if isinstance(f, Top):
            return True
        if isinstance(f, Neg):
            return X & self.support(f.child) == 0
        if isinstance(f, And):
            return self.holds(f.left, X) and self.holds(f.right, X)
        if isinstance(f, Or):
            return self.holds(f.left, X) or self.holds(f.right, X)
        if isinstance(f, Tensor):
            return self._tensor(f, X)
        if isinstance(f, Imp):
            return self._implication(f, X)
        if isinstance(f, Dep):
            return self._dep(f, X)
        raise TypeError(f"not a formula: {f!r}")

    def _tensor(self, f: Tensor, X: int) -> bool:
        # Downward closure makes disjoint splits (Y, X - Y) sufficient.  A
        # member outside supp(right) must go left and vice versa.
        sl = self.support(f.left) & X
        sr = self.support(f.right) & X
        if sl | sr != X:
            return False
        if self.holds(f.left, X) or self.holds(f.right, X):
            return True
        forced = X & ~sr
        free = sl & sr
        sub = free
        while True:
            Y = forced | sub
            if self.holds(f.left, Y) and self.holds(f.right, X & ~Y):
                return True
            if sub == 0:
                return False
            sub = (sub - 1) & free

    def _implication(self, f: Imp, X: int) -> bool:
        # Only subteams of supp(left) can satisfy left.  Explore subteams top
        # down; a subteam satisfying right settles everything below it.
        X &= self.support(f.left)
        seen = set()
        stack = [X]
        while stack:
            W = stack.pop()
            if W == 0 or W in seen:
                continue
            seen.add(W)
            if self.holds(f.right, W):
                continue
            if self.holds(f.left, W):
                return False
            for low in _iter_bits(W):
                stack.append(W & ~low)
        return True

    def _dep(self, f: Dep, X: int) -> bool:
        if self.xpd:
            return self.dep_by_equivalence(f, X)
        if all(isinstance(a, Var) for a in f.args) and isinstance(f.consequent, Var):
            return self._dep_variables(f, X)
        return self.dep_by_implication(f, X)

    def _dep_variables(self, f: Dep, X: int) -> bool:
        arg_masks = [self._masks[a.name] for a in f.args]
        cons = self._masks[f.consequent.name]
        seen: dict[tuple, int] = {}
        for low in _iter_bits(X):
            key = tuple(bool(m & low) for m in arg_masks)
            val = bool(cons & low)
            if seen.setdefault(key, val) != val:
                return False
        return True

    def dep_by_implication(self, f: Dep, X: int) -> bool:
        expanded = self._expansions.get(id(f))
        if expanded is None:
            expanded = _dep_by_implication(f)
            self._pin(f)
            self._expansions[id(f)] = expanded
        return self.holds(expanded, X)

    def dep_by_equivalence(self, f: Dep, X: int) -> bool:
        """Members agreeing on every argument's singleton truth agree on the consequent's."""
        arg_sup = [self.support(a) for a in f.args]
        cons = self.support(f.consequent)
        seen: dict[tuple, bool] = {}
        for low in _iter_bits(X):
            key = tuple(bool(s & low) for s in arg_sup)
            val = bool(cons & low)
            if seen.setdefault(key, val) != val:
                return False
        return True

    def is_flat(self, f: Formula) -> bool:
        return self.holds(f, self.support(f))

    def family(self, f: Formula) -> frozenset:
        """All satisfying teams, built level by level using downward closure."""
        members = {0}
        level = [0]
        while level:
            nxt = set()
            for X in level:
                free = self.full & ~X
                for low in _iter_bits(free):
                    Y = X | low
                    if Y in nxt:
                        continue
                    if all(Y & ~b in members for b in _iter_bits(Y) if b != low):
                        if self.holds(f, Y):
                            nxt.add(Y)
            members.update(nxt)
            level = list(nxt)
        return frozenset(members)

    def maximal_satisfying(self, f: Formula) -> list[int]:
        fam = TeamFamily(self.scope, self.family(f))
        return [t.bits for t in fam.maximal()]


# -------------------------------------------------------------- public API

def _scope_for(team: Team | None, formulas) -> Scope:
    return team.scope if team is not None else Scope(free_vars_all(formulas))


def _xpd_mode(f: Formula, fragment: Fragment | None, ev: Evaluator) -> None:
    """Reject XPD dependence atoms whose arguments are not flat."""
    if fragment is not Fragment.XPD:
        return
    for node in subformulas(f):
        if isinstance(node, Dep):
            for arg in node.args + (node.consequent,):
                if not ev.is_flat(arg):
                    raise FragmentViolation(
                        Fragment.XPD, [Violation(NON_FLAT_DEP_ARGUMENT, arg, "not flat")])


def evaluator_for(scope: Scope, fragment: Fragment | None = None) -> Evaluator:
    _check_cap(scope.n, "eval")
    return Evaluator(scope, xpd=fragment is Fragment.XPD)


def evaluate(team: Team, f: Formula, fragment: Fragment | None = None) -> bool:
    """Decide ``team |= f``.

    With ``fragment=XPD`` dependence atoms are read through the
    valuation-equivalence clause and their arguments must be flat.
    """
    ev = evaluator_for(team.scope, fragment)
    ev.check_scope(f)
    _xpd_mode(f, fragment, ev)
    return ev.holds(f, team.bits)


def dep_holds_implication(team: Team, dep: Dep) -> bool:
    ev = Evaluator(team.scope)
    ev.check_scope(dep)
    return ev.dep_by_implication(dep, team.bits) if team.bits else True


def dep_holds_equivalence(team: Team, dep: Dep) -> bool:
    ev = Evaluator(team.scope)
    ev.check_scope(dep)
    return ev.dep_by_equivalence(dep, team.bits) if team.bits else True


def singleton_support(f: Formula, scope: Scope | None = None) -> Team:
    scope = scope if scope is not None else Scope.of(f)
    ev = evaluator_for(scope)
    ev.check_scope(f)
    return Team(scope, ev.support(f))


def is_valid(f: Formula, fragment: Fragment | None = None) -> bool:
    """Valid iff the full team on the formula's own variables satisfies it.

    Downward closure and locality make that one team decisive.
    """
    scope = Scope.of(f)
    ev = evaluator_for(scope, fragment)
    _xpd_mode(f, fragment, ev)
    return ev.holds(f, scope.full_bits)


def is_flat(f: Formula) -> bool:
    scope = Scope.of(f)
    ev = evaluator_for(scope)
    return ev.is_flat(f)


def is_consistent(f: Formula) -> bool:
    return singleton_support(f).bits != 0


def truth_family(f: Formula, scope: Scope | None = None,
                 fragment: Fragment | None = None) -> TeamFamily:
    scope = scope if scope is not None else Scope.of(f)
    _check_cap(scope.n, "family")
    ev = evaluator_for(scope, fragment)
    ev.check_scope(f)
    _xpd_mode(f, fragment, ev)
    fam = TeamFamily(scope, ev.family(f))
    assert 0 in fam.members and fam.is_downward_closed()
    return fam


def consequence(gamma: Iterable[Formula], f: Formula,
                fragment: Fragment | None = None, scope: Scope | None = None) -> bool:
    """``gamma |= f``: every team satisfying all of gamma satisfies f."""
    gamma = list(gamma)
    scope = scope if scope is not None else Scope(free_vars_all(gamma + [f]))
    _check_cap(scope.n, "family")
    ev = evaluator_for(scope, fragment)
    for g in gamma + [f]:
        ev.check_scope(g)
        _xpd_mode(g, fragment, ev)
    premise = conj(gamma)
    # f is downward closed, so checking the maximal premise teams suffices
    return all(ev.holds(f, X) for X in ev.maximal_satisfying(premise))


def equivalent(f: Formula, g: Formula, fragment: Fragment | None = None,
               scope: Scope | None = None) -> bool:
    scope = scope if scope is not None else Scope(free_vars_all([f, g]))
    return (consequence([f], g, fragment, scope)
            and consequence([g], f, fragment, scope))


def check_fragment(f: Formula, fragment: Fragment) -> list[Violation]:
    """``fragment_check`` with XPD argument flatness settled semantically."""
    out = []
    for v in fragment_check(f, fragment):
        if v.rule == REQUIRES_SEMANTIC_CHECK:
            if is_flat(v.node):
                continue
            v = Violation(NON_FLAT_DEP_ARGUMENT, v.node, "not flat")
        out.append(v)
    return out


def require_fragment(f: Formula, fragment: Fragment) -> None:
    bad = check_fragment(f, fragment)
    if bad:
        raise FragmentViolation(fragment, bad)


def classical_value(f: Formula, valuation: dict[str, int]) -> bool:
    """Classical truth with tensor read as classical disjunction.

    Defined for classical formulas; negation is read as classical negation.
    """
    if isinstance(f, Var):
        return bool(valuation[f.name])
    if isinstance(f, Bot):
        return False
    if isinstance(f, Top):
        return True
    if isinstance(f, Neg):
        return not classical_value(f.child, valuation)
    if isinstance(f, And):
        return classical_value(f.left, valuation) and classical_value(f.right, valuation)
    if isinstance(f, Tensor):
        return classical_value(f.left, valuation) or classical_value(f.right, valuation)
    if isinstance(f, Imp):
        return (not classical_value(f.left, valuation)) or classical_value(f.right, valuation)
    raise ValueError(f"no classical reading for {f}")


__all__ = [
    "Scope", "Valuation", "Team", "TeamFamily", "Evaluator", "evaluate",
    "evaluator_for", "dep_holds_implication", "dep_holds_equivalence",
    "singleton_support", "is_valid", "is_flat", "is_consistent", "truth_family",
    "consequence", "equivalent", "check_fragment", "require_fragment",
    "classical_value", "BOT", "TOP",
]
