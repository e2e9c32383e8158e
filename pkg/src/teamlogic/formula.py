"""Formula syntax: AST, fragments, parser, printer and the negation rewrite.

Surface syntax (ASCII, UTF-8 aliases in brackets)::

    p, q1, x_2          variables
    bot, top            falsum / verum          [⊥ ⊤]
    ~F                  negation                [¬]
    F /\\ F              conjunction             [∧]
    F \\/ F              tensor disjunction      [⊗]
    F || F              intuitionistic disj.    [∨]
    F -> F              implication             [→]  (right-associative)
    =(F, ..., F)        dependence atom; the last argument is the dependent one

Binding strength, tightest first: ``~``, ``/\\``, ``\\/``, ``||``, ``->``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import FormulaSyntaxError, FragmentViolation, UnsupportedConnective


class Formula:
    """Common base of the AST node classes."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, repr=False)
class Var(Formula):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self):
        return "Bot()"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, repr=False)
class Neg(Formula):
    child: Formula

    def __repr__(self):
        return f"Neg({self.child!r})"


@dataclass(frozen=True, repr=False)
class Dep(Formula):
    """Dependence atom ``=(args..., consequent)``; ``args`` may be empty."""

    args: tuple
    consequent: Formula

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def __repr__(self):
        return f"Dep({list(self.args)!r}, {self.consequent!r})"


@dataclass(frozen=True, repr=False)
class _Binary(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class And(_Binary):
    pass


class Tensor(_Binary):
    pass


class Or(_Binary):
    pass


class Imp(_Binary):
    pass


BOT = Bot()
TOP = Top()

AnyFormula = Union[Var, Bot, Top, Neg, Dep, And, Tensor, Or, Imp]


class Fragment(enum.Enum):
    PD = "PD"
    INQL = "InqL"
    PT = "PT"
    XPD = "XPD"
    XPT = "XPT"

    @classmethod
    def parse(cls, text: str) -> "Fragment":
        for frag in cls:
            if frag.value.lower() == text.strip().lower():
                return frag
        raise ValueError(f"unknown fragment {text!r}; choose from "
                         + ", ".join(f.value for f in cls))

    @property
    def has_tensor(self) -> bool:
        return self in (Fragment.PD, Fragment.PT, Fragment.XPD, Fragment.XPT)

    @property
    def has_implication(self) -> bool:
        return self in (Fragment.INQL, Fragment.PT, Fragment.XPT)

    @property
    def has_or(self) -> bool:
        return self.has_implication


# ---------------------------------------------------------------- helpers

def conj(items) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``top``."""
    items = list(items)
    if not items:
        return TOP
    out = items[0]
    for item in items[1:]:
        out = And(out, item)
    return out


def tensor(items) -> Formula:
    """Left-folded tensor; the empty tensor is ``bot``."""
    items = list(items)
    if not items:
        return BOT
    out = items[0]
    for item in items[1:]:
        out = Tensor(out, item)
    return out


def disj(items) -> Formula:
    """Left-folded intuitionistic disjunction; the empty one is ``bot``."""
    items = list(items)
    if not items:
        return BOT
    out = items[0]
    for item in items[1:]:
        out = Or(out, item)
    return out


def children(f: Formula) -> tuple:
    if isinstance(f, (Var, Bot, Top)):
        return ()
    if isinstance(f, Neg):
        return (f.child,)
    if isinstance(f, Dep):
        return f.args + (f.consequent,)
    return (f.left, f.right)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, duplicates included."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def free_vars(f: Formula) -> tuple[str, ...]:
    """Variables of ``f`` in order of first occurrence."""
    seen: dict[str, None] = {}
    _collect_vars(f, seen)
    return tuple(seen)


def _collect_vars(f: Formula, seen: dict) -> None:
    if isinstance(f, Var):
        seen[f.name] = None
    elif isinstance(f, _Binary):
        _collect_vars(f.left, seen)
        _collect_vars(f.right, seen)
    elif isinstance(f, Neg):
        _collect_vars(f.child, seen)
    elif isinstance(f, Dep):
        for a in f.args:
            _collect_vars(a, seen)
        _collect_vars(f.consequent, seen)


def free_vars_all(formulas) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for f in formulas:
        _collect_vars(f, seen)
    return tuple(seen)


def depth(f: Formula) -> int:
    """Height of the syntax tree; atoms (variables, bot, top) have depth 1."""
    kids = children(f)
    if not kids:
        return 1
    return 1 + max(depth(k) for k in kids)


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def is_classical(f: Formula) -> bool:
    """No dependence atoms, no intuitionistic disjunction, negation on variables."""
    for node in subformulas(f):
        if isinstance(node, (Dep, Or)):
            return False
        if isinstance(node, Neg) and not isinstance(node.child, Var):
            return False
    return True


# ----------------------------------------------------------------- printer

_PREC = {Imp: 1, Or: 2, Tensor: 3, And: 4, Neg: 5}
_OPS = {And: "/\\", Tensor: "\\/", Or: "||", Imp: "->"}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 6)


def render(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Neg):
        inner = render(f.child)
        if _prec(f.child) < _PREC[Neg]:
            inner = f"({inner})"
        return "~" + inner
    if isinstance(f, Dep):
        return "=(" + ", ".join(render(a) for a in f.args + (f.consequent,)) + ")"
    op = type(f)
    mine = _PREC[op]
    left, right = render(f.left), render(f.right)
    if op is Imp:
        if _prec(f.left) <= mine:
            left = f"({left})"
    else:
        if _prec(f.left) < mine:
            left = f"({left})"
        if _prec(f.right) <= mine:
            right = f"({right})"
    return f"{left} {_OPS[op]} {right}"


# ------------------------------------------------------------------ parser

KEYWORDS = frozenset({"bot", "top"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<imp>->|→)
  | (?P<or>\|\||∨)
  | (?P<and>/\\|∧)
  | (?P<tensor>\\/|⊗)
  | (?P<neg>~|¬)
  | (?P<bot>⊥)
  | (?P<top>⊤)
  | (?P<eq>=)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<comma>,)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_DISPLAY = {
    "imp": "'->'", "or": "'||'", "and": "'/\\'", "tensor": "'\\/'", "neg": "'~'",
    "eq": "'=('", "lpar": "'('", "rpar": "')'", "comma": "','", "ident": "variable",
    "bot": "'bot'", "top": "'top'", "eof": "end of input",
}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group()
        if kind == "ident" and value in KEYWORDS:
            kind = value
        if kind != "ws":
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            self.fail((kind,))
        self.i += 1
        return tok

    def fail(self, expected):
        kind, value, pos = self.tokens[self.i]
        what = "end of input" if kind == "eof" else repr(value)
        raise FormulaSyntaxError(f"unexpected {what}", pos,
                                 tuple(_DISPLAY.get(e, e) for e in expected))

    def formula(self) -> Formula:
        left = self.or_()
        if self.peek() == "imp":
            self.i += 1
            return Imp(left, self.formula())
        return left

    def _left_assoc(self, kind, cls, sub):
        out = sub()
        while self.peek() == kind:
            self.i += 1
            out = cls(out, sub())
        return out

    def or_(self):
        return self._left_assoc("or", Or, self.tensor)

    def tensor(self):
        return self._left_assoc("tensor", Tensor, self.conj)

    def conj(self):
        return self._left_assoc("and", And, self.unary)

    def unary(self):
        if self.peek() == "neg":
            self.i += 1
            return Neg(self.unary())
        return self.atom()

    def atom(self):
        kind = self.peek()
        if kind == "ident":
            return Var(self.take("ident")[1])
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "top":
            self.i += 1
            return TOP
        if kind == "lpar":
            self.i += 1
            inner = self.formula()
            self.take("rpar")
            return inner
        if kind == "eq":
            self.i += 1
            self.take("lpar")
            args = [self.formula()]
            while self.peek() == "comma":
                self.i += 1
                args.append(self.formula())
            self.take("rpar")
            return Dep(tuple(args[:-1]), args[-1])
        self.fail(("ident", "bot", "top", "neg", "lpar", "eq"))


def parse(text: str, fragment: Fragment | None = None) -> Formula:
    """Parse ``text``; with ``fragment`` given, also require membership.

    Flatness of XPD dependence-atom arguments is settled semantically.
    """
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "eof":
        p.fail(("imp", "or", "tensor", "and", "eof"))
    if fragment is not None:
        from .semantics import require_fragment  # semantics imports this module

        require_fragment(f, fragment)
    return f


# -------------------------------------------------------------- fragments

@dataclass(frozen=True)
class Violation:
    rule: str
    node: Formula
    detail: str = ""

    def __str__(self):
        text = f"{self.rule} at {render(self.node)}"
        return f"{text} ({self.detail})" if self.detail else text


NEGATION_NOT_ON_VARIABLE = "NegationNotOnVariable"
CONNECTIVE_NOT_IN_FRAGMENT = "ConnectiveNotInFragment"
ATOM_NOT_IN_FRAGMENT = "AtomNotInFragment"
DEP_ARGUMENT_NOT_VARIABLE = "DependenceArgumentNotVariable"
REQUIRES_SEMANTIC_CHECK = "RequiresSemanticCheck"
NON_FLAT_DEP_ARGUMENT = "NonFlatDependenceArgument"

_CONNECTIVES = {
    Fragment.PD: {And, Tensor},
    Fragment.INQL: {And, Or, Imp},
    Fragment.PT: {And, Tensor, Or, Imp},
    Fragment.XPD: {And, Tensor},
    Fragment.XPT: {And, Tensor, Or, Imp},
}

_SYMBOL = {And: "∧", Tensor: "⊗", Or: "∨", Imp: "→"}


def _syntactically_flat(f: Formula) -> bool:
    # Every dependence-free XPD formula is classical; negations are flat.
    if isinstance(f, (Var, Bot, Top, Neg)):
        return True
    if isinstance(f, (And, Tensor)):
        return _syntactically_flat(f.left) and _syntactically_flat(f.right)
    return False


def fragment_check(f: Formula, fragment: Fragment) -> list[Violation]:
    """List the syntactic reasons why ``f`` is not a formula of ``fragment``.

    In InqL ``~F`` is read as the abbreviation ``F -> bot`` and may wrap any
    subformula.  For XPD, dependence-atom arguments that are not
    syntactically flat are reported as ``RequiresSemanticCheck``.
    """
    out: list[Violation] = []
    allowed = _CONNECTIVES[fragment]
    for node in subformulas(f):
        if isinstance(node, Neg):
            if fragment in (Fragment.PD, Fragment.PT) and not isinstance(node.child, Var):
                out.append(Violation(NEGATION_NOT_ON_VARIABLE, node))
        elif isinstance(node, Dep):
            if fragment is Fragment.INQL:
                out.append(Violation(ATOM_NOT_IN_FRAGMENT, node, "dependence atom"))
            elif fragment in (Fragment.PD, Fragment.PT):
                for arg in node.args + (node.consequent,):
                    if not isinstance(arg, Var):
                        out.append(Violation(DEP_ARGUMENT_NOT_VARIABLE, node, render(arg)))
            elif fragment is Fragment.XPD:
                for arg in node.args + (node.consequent,):
                    if not _syntactically_flat(arg):
                        out.append(Violation(REQUIRES_SEMANTIC_CHECK, arg,
                                             "dependence argument must be flat"))
        elif isinstance(node, (And, Tensor, Or, Imp)):
            if type(node) not in allowed:
                out.append(Violation(CONNECTIVE_NOT_IN_FRAGMENT, node, _SYMBOL[type(node)]))
    return out


def in_fragment_syntactically(f: Formula, fragment: Fragment) -> bool:
    return all(v.rule == REQUIRES_SEMANTIC_CHECK for v in fragment_check(f, fragment))


_INFERENCE_ORDER = (Fragment.PD, Fragment.INQL, Fragment.PT, Fragment.XPD, Fragment.XPT)


def infer_fragment(*formulas: Formula) -> Fragment:
    """Smallest fragment (in the order PD, InqL, PT, XPD, XPT) containing all."""
    for frag in _INFERENCE_ORDER:
        if all(not fragment_check(f, frag) for f in formulas):
            return frag
    return Fragment.XPT


def assert_fragment_syntax(f: Formula, fragment: Fragment) -> None:
    bad = [v for v in fragment_check(f, fragment) if v.rule != REQUIRES_SEMANTIC_CHECK]
    if bad:
        raise FragmentViolation(fragment, bad)


# ------------------------------------------------------- negation rewrite

def negation_translate(f: Formula) -> Formula:
    """The syntactic negation ``f^~`` of a formula built from atoms, ~, /\\, \\/, =().

    Literals flip, top and bot swap, /\\ and \\/ swap by De Morgan, and every
    dependence atom becomes bot.  A compound negation ``~g`` is rewritten as
    ``(g^~)^~``, which agrees with the table on negated variables.
    """
    if isinstance(f, Var):
        return Neg(f)
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, Dep):
        return BOT
    if isinstance(f, Neg):
        if isinstance(f.child, Var):
            return f.child
        return negation_translate(negation_translate(f.child))
    if isinstance(f, And):
        return Tensor(negation_translate(f.left), negation_translate(f.right))
    if isinstance(f, Tensor):
        return And(negation_translate(f.left), negation_translate(f.right))
    raise UnsupportedConnective(
        f"negation rewrite is undefined for {_SYMBOL[type(f)]} in {render(f)}")
