import itertools

import pytest
from hypothesis import given, strategies as st

from teamlogic.config import limits
from teamlogic.errors import FragmentViolation, ScopeCapExceeded, ScopeMismatch
from teamlogic.formula import BOT, TOP, And, Dep, Fragment, Imp, Neg, Or, Tensor, Var, conj, parse
from teamlogic.normalform import dependence_normal_form
from teamlogic.semantics import (
    Scope, Team, TeamFamily, Valuation, classical_value, consequence, dep_holds_equivalence,
    dep_holds_implication, equivalent, evaluate, is_consistent, is_flat, is_valid,
    singleton_support, truth_family,
)
from oracle import Oracle, all_teams, dep_pairwise, oracle_family, to_oracle_team
from strategies import VARS, formulas, sampled_formulas, teams

P = Scope(("p",))
PQ = Scope(("p", "q"))
PQR = Scope(VARS)
FRAGMENTS = list(Fragment)


def team(scope, text):
    return Team.parse(scope, text)


class TestTeams:
    def test_literal_bit_order(self):
        x = team(PQ, "{10, 01}")
        assert [v.as_dict() for v in x] == [{"p": 1, "q": 0}, {"p": 0, "q": 1}]
        assert x.to_string() == "{10, 01}"

    def test_json_round_trip(self):
        x = team(PQ, "{10, 01}")
        assert x.to_json() == {"scope": ["p", "q"], "teams": ["10", "01"]}
        assert Team.from_json(x.to_json()) == x

    def test_empty_and_full(self):
        assert not PQ.empty_team()
        assert len(PQ.full_team()) == 4

    def test_set_operations(self):
        a, b = team(PQ, "{10, 01}"), team(PQ, "{01, 11}")
        assert (a | b) == team(PQ, "{10, 01, 11}")
        assert (a & b) == team(PQ, "{01}")
        assert (a - b) == team(PQ, "{10}")
        assert (a & b) <= a

    def test_scope_mismatch(self):
        with pytest.raises(ScopeMismatch):
            team(P, "{1}") | team(PQ, "{11}")

    def test_duplicate_scope_variables_rejected(self):
        with pytest.raises(ValueError):
            Scope(("p", "p"))

    def test_bad_valuation(self):
        with pytest.raises(ValueError):
            team(PQ, "{1}")

    def test_restrict(self):
        x = team(PQ, "{10, 11}")
        assert x.restrict(P) == team(P, "{1}")

    def test_subteams_count(self):
        assert len(list(team(PQ, "{10, 01, 11}").subteams())) == 8

    def test_valuation_parse(self):
        v = Valuation.parse(PQ, "10")
        assert v["p"] == 1 and v["q"] == 0 and v.code == 1


class TestEvaluate:
    @pytest.mark.parametrize("text", ["p", "bot", "=(p, q)", "p || ~p", "(p -> q) \\/ ~q"])
    def test_empty_team(self, text):
        assert evaluate(PQ.empty_team(), parse(text))

    def test_singleton_satisfies_dep(self):
        assert evaluate(team(PQ, "{10}"), parse("=(p, q)"))

    def test_dep_pairs(self):
        assert not evaluate(team(PQ, "{11, 10}"), parse("=(p, q)"))
        assert evaluate(team(PQ, "{11, 00}"), parse("=(p, q)"))

    def test_scope_mismatch(self):
        with pytest.raises(ScopeMismatch):
            evaluate(team(P, "{1}"), parse("p /\\ q"))

    def test_tensor_splits(self):
        assert evaluate(PQ.full_team(), parse("p \\/ ~p"))
        assert not evaluate(PQ.full_team(), parse("p || ~p"))

    def test_constancy(self):
        assert evaluate(team(PQ, "{10, 11}"), parse("=(p)"))
        assert not evaluate(team(PQ, "{10, 01}"), parse("=(p)"))

    def test_xpd_rejects_non_flat_argument(self):
        f = Dep((Or(Var("p"), Neg(Var("p"))),), Var("q"))
        with pytest.raises(FragmentViolation):
            evaluate(PQ.full_team(), f, Fragment.XPD)

    def test_eval_cap(self):
        f = conj(Var(f"x{i}") for i in range(5))
        with limits(eval_cap=4):
            with pytest.raises(ScopeCapExceeded) as info:
                is_valid(f)
        assert "--eval-cap" in str(info.value)


class TestValidity:
    def test_double_negation_elimination_on_variables(self):
        assert is_valid(parse("~~p -> p"), Fragment.INQL)

    def test_double_negation_elimination_fails_on_questions(self):
        assert not is_valid(parse("~~(p || ~p) -> (p || ~p)"), Fragment.INQL)

    def test_tensor_excluded_middle(self):
        assert is_valid(parse("p \\/ ~p"))

    def test_closed(self):
        assert is_valid(TOP) and not is_valid(BOT)


class TestConsequence:
    def test_tensor_idempotent_on_variables(self):
        assert consequence([parse("p \\/ p")], parse("p"))

    def test_tensor_not_idempotent_on_constancy(self):
        assert not consequence([parse("=(p) \\/ =(p)")], parse("=(p)"))

    @given(sampled_formulas(Fragment.XPT, ("p", "q")))
    def test_empty_premises_is_validity(self, f):
        assert consequence([], f) == is_valid(f)

    def test_family_cap(self):
        f = conj(Var(f"x{i}") for i in range(3))
        with limits(family_cap=2):
            with pytest.raises(ScopeCapExceeded) as info:
                consequence([f], f)
        assert "--family-cap" in str(info.value)


class TestTruthFamily:
    def test_bot(self):
        assert truth_family(BOT, P).members == frozenset({0})

    def test_question(self):
        fam = truth_family(parse("p || ~p"), P)
        assert {t.to_string() for t in fam} == {"{}", "{1}", "{0}"}

    def test_top(self):
        assert len(truth_family(TOP, P)) == 4

    def test_maximal(self):
        fam = TeamFamily(P, frozenset({0, 1, 2}))
        assert [t.to_string() for t in fam.maximal()] == ["{0}", "{1}"]
        assert TeamFamily(P, frozenset({0})).maximal() == []


class TestEquivalence:
    def test_negation_is_implication_to_bot(self):
        assert equivalent(parse("~p"), parse("p -> bot"))

    def test_dependence_definable(self):
        assert equivalent(parse("=(p, q)"), parse("(p || ~p) -> (q || ~q)"))

    def test_double_negated_dep_is_top(self):
        assert equivalent(parse("~~=(p, q)"), TOP)


class TestSupportAndFlatness:
    def test_support_examples(self):
        assert singleton_support(parse("p /\\ q"), PQ) == team(PQ, "{11}")
        assert singleton_support(parse("=(p, q)"), PQ) == PQ.full_team()
        assert singleton_support(BOT, P) == P.empty_team()

    def test_flat_examples(self):
        assert is_flat(parse("p \\/ ~q"))
        assert not is_flat(parse("p || ~p"))

    @given(formulas(Fragment.XPT))
    def test_negations_are_flat(self, f):
        assert is_flat(Neg(f))

    def test_consistency(self):
        assert not is_consistent(BOT)
        assert is_consistent(parse("p"))
        assert not is_consistent(parse("p /\\ ~p"))


# --------------------------------------------------------------- invariants

@pytest.mark.parametrize("fragment", FRAGMENTS)
@given(data=st.data())
def test_downward_closure(fragment, data):
    f = data.draw(formulas(fragment))
    x = data.draw(teams(PQR))
    if evaluate(x, f):
        sub = data.draw(st.integers(0, x.bits)) & x.bits
        assert evaluate(Team(PQR, sub), f)


@pytest.mark.parametrize("fragment", FRAGMENTS)
@given(data=st.data())
def test_locality(fragment, data):
    f = data.draw(formulas(fragment, ("p", "q")))
    x = data.draw(teams(PQ))
    wide = Scope(("p", "q", "s"))
    # lift each valuation with both values of the fresh variable
    lifted = Team.from_valuations(
        wide, [dict(v.as_dict(), s=b) for v in x for b in (0, 1)])
    assert evaluate(x, f) == evaluate(lifted, f)
    assert lifted.restrict(PQ) == x


@pytest.mark.parametrize("fragment", [Fragment.INQL, Fragment.PT, Fragment.XPT])
@given(data=st.data())
def test_deduction(fragment, data):
    g = data.draw(formulas(fragment, ("p", "q"), 5))
    f = data.draw(formulas(fragment, ("p", "q"), 5))
    h = data.draw(formulas(fragment, ("p", "q"), 5))
    assert consequence([g, f], h, scope=PQ) == consequence([g], Imp(f, h), scope=PQ)


def _classical_formulas():
    names = st.sampled_from(VARS)
    leaves = st.one_of(names.map(Var), names.map(lambda n: Neg(Var(n))),
                       st.just(BOT), st.just(TOP))
    return st.recursive(leaves, lambda c: st.one_of(
        st.builds(And, c, c), st.builds(Tensor, c, c), st.builds(Imp, c, c)), max_leaves=10)


@given(_classical_formulas(), st.integers(0, 7))
def test_classical_agreement(f, code):
    v = Valuation(PQR, code)
    assert evaluate(Team(PQR, 1 << code), f) == classical_value(f, v.as_dict())


@given(_classical_formulas())
def test_classical_validity_is_tautology(f):
    taut = all(classical_value(f, dict(zip(VARS, bits)))
               for bits in itertools.product((0, 1), repeat=len(VARS)))
    assert is_valid(f) == taut


@pytest.mark.parametrize("fragment", FRAGMENTS)
@given(data=st.data())
def test_truth_family_matches_oracle(fragment, data):
    f = data.draw(formulas(fragment, ("p", "q"), 6))
    fam = truth_family(f, PQ)
    oracle = Oracle(("p", "q"))
    assert {to_oracle_team(t) for t in fam} == oracle_family(oracle, f)
    assert fam.is_downward_closed()


def test_tensor_disjoint_split_agrees_with_cover_pairs():
    oracle = Oracle(("p", "q"))
    for text in ["=(p) \\/ =(p)", "=(p, q) \\/ (p /\\ =(q))", "(p || q) \\/ ~q", "=(q) \\/ =(p) \\/ p"]:
        f = parse(text)
        for x in PQ.teams():
            assert evaluate(x, f) == oracle.sat(f, to_oracle_team(x)), (text, x)


# ------------------------------------------------------ dependence atoms

def _flat_args(n):
    names = st.sampled_from(VARS)
    lit = st.one_of(names.map(Var), names.map(lambda n: Neg(Var(n))))
    flat = st.recursive(lit, lambda c: st.one_of(
        st.builds(And, c, c), st.builds(Tensor, c, c), c.map(Neg)), max_leaves=4)
    return st.builds(lambda a, b: Dep(tuple(a), b), st.lists(flat, max_size=n), flat)


@given(_flat_args(2), st.integers(0, 255))
def test_dep_clauses_agree_on_flat_arguments(dep, bits):
    x = Team(PQR, bits)
    assert dep_holds_implication(x, dep) == dep_holds_equivalence(x, dep)


def test_dep_variable_clause_matches_pairwise_oracle():
    oracle = Oracle(("p", "q"))
    for dep in [parse("=(p, q)"), parse("=(q)"), parse("=(q, p, q)"), parse("=(p, p)")]:
        for x in all_teams(("p", "q")):
            expected = dep_pairwise(oracle, dep, x)
            bits = sum(1 << (v[0] | v[1] << 1) for v in x)
            assert evaluate(Team(PQ, bits), dep) == expected


def test_non_flat_arguments_separate_the_clauses():
    # with a question as argument the equivalence clause is not adequate
    dep = Dep((Or(Var("p"), Neg(Var("p"))),), Var("q"))
    x = team(PQ, "{11, 00}")
    assert dep_holds_implication(x, dep) != dep_holds_equivalence(x, dep)


@pytest.mark.parametrize("n", [1, 2])
def test_dependence_normal_form_literals(n):
    names = ("p", "q")
    lits = [Var(v) for v in names] + [Neg(Var(v)) for v in names]
    for args in itertools.product(lits, repeat=n + 1):
        dep = Dep(tuple(args[:-1]), args[-1])
        assert equivalent(dep, dependence_normal_form(dep), scope=PQ), dep
