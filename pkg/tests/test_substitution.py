import json

import pytest
from hypothesis import given, strategies as st

from teamlogic.errors import FragmentViolation, NotSubteam
from teamlogic.formula import BOT, Dep, Fragment, Neg, Or, Var, parse
from teamlogic.semantics import Scope, Team, consequence, equivalent, evaluate, is_flat, is_valid
from teamlogic.substitution import (
    IDENTITY, Substitution, apply, inverse_select, is_flat_substitution,
    is_stable_substitution, translate_team,
)
from strategies import VARS, flat_substitutions, formulas, sampled_formulas, teams

P = Scope(("p",))
PQR = Scope(VARS)


def subst(**images):
    return Substitution({k: parse(v) for k, v in images.items()})


class TestSubstitution:
    def test_identity_default(self):
        s = subst(p="q")
        assert s.image("p") == Var("q") and s.image("r") == Var("r")

    def test_rejects_non_formula(self):
        with pytest.raises(TypeError):
            Substitution({"p": "q"})

    def test_json_round_trip(self):
        s = subst(p="q /\\ r", q="~r")
        assert Substitution.from_json(json.dumps(s.to_json())) == s
        assert s.to_json() == {"p": "q /\\ r", "q": "~r"}

    @given(data=st.data())
    def test_composition(self, data):
        f = data.draw(formulas(Fragment.XPT))
        s = data.draw(flat_substitutions())
        t = data.draw(flat_substitutions())
        assert apply(s, apply(t, f)) == apply(s.compose(t), f)


class TestClassification:
    def test_flat(self):
        assert is_flat_substitution(subst(p="q /\\ r"))
        assert not is_flat_substitution(subst(p="q || ~q"))
        assert is_flat_substitution(IDENTITY)

    def test_stable(self):
        assert is_stable_substitution(subst(p="~q"))
        assert not is_stable_substitution(subst(p="q || ~q"))
        assert is_stable_substitution(subst(p="bot"))

    def test_stable_requires_fragment(self):
        with pytest.raises(FragmentViolation):
            is_stable_substitution(subst(p="q \\/ r"))

    @given(data=st.data())
    def test_stable_coincides_with_flat_on_inql(self, data):
        f = data.draw(formulas(Fragment.INQL))
        s = Substitution({"p": f})
        assert is_stable_substitution(s) == is_flat_substitution(s)


class TestApply:
    def test_homomorphism_on_dep(self):
        assert apply(subst(p="q /\\ r"), parse("=(p, t)")) == parse("=(q /\\ r, t)")

    def test_constants_fixed(self):
        assert apply(subst(p="bot"), parse("p || ~p")) == Or(BOT, Neg(BOT))

    def test_negation_leaves_pd(self):
        s = subst(p="q /\\ r")
        out = apply(s, parse("~p"))
        assert out == Neg(parse("q /\\ r"))
        with pytest.raises(FragmentViolation):
            apply(s, parse("~p"), Fragment.PD)
        assert apply(s, parse("~p"), Fragment.XPD) == out

    def test_non_flat_image_in_xpd_dep(self):
        with pytest.raises(FragmentViolation):
            apply(subst(p="~q \\/ (q /\\ =(r))"), parse("=(p, q)"), Fragment.XPD)

    @pytest.mark.parametrize("fragment", [Fragment.PD, Fragment.XPD])
    @given(data=st.data())
    def test_flat_substitution_lands_in_xpd(self, fragment, data):
        f = data.draw(formulas(fragment))
        s = data.draw(flat_substitutions(fragment=Fragment.XPD))
        apply(s, f, Fragment.XPD)


class TestTranslation:
    def test_bot_image(self):
        x = Team.parse(PQR, "{100, 011}")
        assert translate_team(x, subst(p="bot"), P) == Team.parse(P, "{0}")

    def test_identity(self):
        x = Team.parse(PQR, "{100, 011, 111}")
        assert translate_team(x, IDENTITY, PQR) == x
        assert translate_team(x, IDENTITY, P) == x.restrict(P)

    def test_negation_image(self):
        assert translate_team(Team.parse(P, "{1}"), subst(p="~p"), P) == Team.parse(P, "{0}")

    def test_inverse_select(self):
        s = subst(p="~p")
        full = P.full_team()
        assert inverse_select(Team.parse(P, "{0}"), full, s) == Team.parse(P, "{1}")
        assert inverse_select(P.empty_team(), full, s) == P.empty_team()
        assert inverse_select(translate_team(full, s, P), full, s) == full

    def test_not_subteam(self):
        x = Team.parse(P, "{1}")
        with pytest.raises(NotSubteam):
            inverse_select(Team.parse(P, "{1}"), x, subst(p="~p"))

    @pytest.mark.parametrize("fragment", list(Fragment))
    @given(data=st.data())
    def test_translation_agrees_with_substitution(self, fragment, data):
        f = data.draw(sampled_formulas(fragment))
        s = data.draw(flat_substitutions(fragment=Fragment.XPD))
        x = data.draw(teams(PQR))
        target = Scope(VARS)
        assert evaluate(x, apply(s, f)) == evaluate(translate_team(x, s, target), f)


@pytest.mark.parametrize("fragment", list(Fragment))
@given(data=st.data())
def test_flat_closure(fragment, data):
    f = data.draw(formulas(fragment))
    s = data.draw(flat_substitutions())
    if is_flat(f):
        assert is_flat(apply(s, f))


@pytest.mark.parametrize("fragment", list(Fragment))
@given(data=st.data())
def test_consequence_closure(fragment, data):
    f = data.draw(formulas(fragment, max_leaves=6))
    g = data.draw(formulas(fragment, max_leaves=6))
    s = data.draw(flat_substitutions())
    if consequence([f], g, scope=PQR):
        assert consequence([apply(s, f)], apply(s, g), scope=PQR)


def test_non_structurality_witnesses():
    pp = subst(p="=(p)")
    assert consequence([parse("p \\/ p")], parse("p"))
    assert not consequence([apply(pp, parse("p \\/ p"))], apply(pp, parse("p")))
    q = subst(p="p || ~p")
    assert is_valid(parse("~~p -> p"))
    assert not is_valid(apply(q, parse("~~p -> p")))
    assert not is_flat_substitution(pp) and not is_flat_substitution(q)


def test_dep_translation_example():
    s = subst(p="q /\\ r")
    f = parse("=(p, t)")
    assert apply(s, f) == Dep((parse("q /\\ r"),), Var("t"))
    assert equivalent(apply(s, f), parse("=(q /\\ r, t)"))
