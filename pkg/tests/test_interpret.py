import pytest

from att.checker import Checker
from att.groupoid import functor_eq, size_limit
from att.syntax import identity
from att.interpret import (EPSILON, INTERP_LIMIT, Unsupported, check_soundness, contractions, interpret,
                           same_sem, tabulate)
from att.parser import parse_judgment

from conftest import soundness_items

J_REDEX = "J[u v e. C(u, v, e)](z. c(z), x, x, r(x))"


def judge(model, text):
    return parse_judgment(text, model.signature)


def derive(model, text):
    return Checker(model.signature).judgment(judge(model, text))[1]


def test_empty_context_is_epsilon(models):
    sem = interpret(judge(models["strict"], "|- ctx"), models["strict"])
    assert sem.kind == "ctx" and sem.ctx.groupoid is EPSILON
    assert EPSILON.n_obj == EPSILON.n_mor == 1


def test_refl_interprets_to_a_section(models):
    for m in models.values():
        sem = interpret(derive(m, "x : A |- r(x) : Id(A, x, x)"), m)
        assert sem.kind == "term" and sem.value.check().ok


def test_sigma_is_outside_the_fragment(models):
    m = models["strict"]
    with pytest.raises(Unsupported, match="Sigma unsupported in shipped model"):
        interpret(judge(m, "|- Sigma x : A. A type"), m)
    with pytest.raises(Unsupported, match="Nat unsupported in shipped model"):
        interpret(judge(m, "|- zero : Nat"), m)


def test_reflexive_equality_interprets_equal(models):
    for m in models.values():
        sem = interpret(derive(m, f"x : A |- {J_REDEX} == {J_REDEX} : C(x, x, r(x))"), m)
        assert sem.kind == "term-eq" and sem.equal


def test_j_redex_pair_separates_in_counterexample(models):
    out = {}
    for name in ("counterexample", "strict"):
        m = models[name]
        lhs = interpret(derive(m, f"x : A |- {J_REDEX} : C(x, x, r(x))"), m)
        rhs = interpret(derive(m, "x : A |- c(x) : C(x, x, r(x))"), m)
        assert lhs.value.display == rhs.value.display
        out[name] = functor_eq(lhs.value.functor, rhs.value.functor)
    assert out == {"counterexample": False, "strict": True}


def test_h_interprets_in_every_model(models):
    text = (f"x : A |- H[u v e. C(u, v, e)](z. c(z), x) : "
            f"Id(C(x, x, r(x)), {J_REDEX}, c(x))")
    for m in models.values():
        sem = interpret(derive(m, text), m)
        assert sem.value.check().ok


def test_derivation_shape_independence(models):
    m = models["nonnormal"]
    ck = Checker(m.signature)
    it = m.interpreter()
    j = judge(m, "x : A, y : A, p : Id(A, x, y) |- "
                 "J[u v e. C(u, v, e)](z. c(z), x, y, p) : C(x, y, p)")
    j2, d = ck.judgment(j)
    with size_limit(INTERP_LIMIT):
        direct = it.derivation(d)
        ident = ck.subst_derivation(d, j2.ctx, identity(len(j2.ctx)))
        assert same_sem(it.derivation(ident), direct)
        for delta, f in contractions(j2):
            df = ck.subst_derivation(d, delta, f)
            assert same_sem(it.derivation(df), it.judgment(df.conclusion))
        wd = ck.weaken(d, judge(m, "|- A type").subjects[0])
        assert same_sem(it.derivation(wd), it.judgment(wd.conclusion))

@pytest.mark.parametrize("name", ["strict", "nonnormal", "counterexample", "twisted"])
def test_soundness_harness(models, name):
    r = check_soundness(soundness_items(), models[name])
    assert r.ok, r.all_failures()[:5]
    assert r.total_checks() > 100


def test_soundness_reports_underivable(models):
    m = models["strict"]
    r = check_soundness([("bad", judge(m, "x : A |- r(x) : Id(A, x, x)")),
                         ("worse", judge(m, "x : A, y : A |- r(x) : Id(A, x, y)"))], m)
    assert not r.ok
    assert any("not derivable" in f for f in r.all_failures())


def test_tabulate(models):
    m = models["counterexample"]
    t = tabulate(interpret(derive(m, "x : A |- c(x) : C(x, x, r(x))"), m))
    assert t["kind"] == "term"
    assert set(t["section"]) == {"objects", "morphisms"}
    ty = tabulate(interpret(derive(m, "x : A |- Id(A, x, x) type"), m))
    assert ty["display"]["strict"] is True
