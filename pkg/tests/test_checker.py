"""Checker behaviour on the corpora, derivation replay, and the absence of
judgmental computation."""
import time

import pytest

import att.syntax as S
from att.checker import (ALL_RULES, CheckError, Checker, ReplayError, check_context,
                         check_judgment, computation_axiom, defeq, explain, happly_term,
                         infer_term, is_redex, replay)
from att.cli import EXPECT, check_text
from att.derived import (bench_family, derived_happly, derived_transport, plus_zero_left,
                         plus_zero_right)
from att.parser import parse_document, parse_judgment
from att.syntax import Decl, Judgment, Var

from conftest import accept_files, corpus_items, reject_files

A = S.Base("A")


def _checked(item):
    ck = Checker(item.signature)
    ck.signature()
    return ck, ck.judgment(item.judgment)


@pytest.mark.parametrize("label,item", corpus_items(), ids=lambda v: v if isinstance(v, str) else "")
def test_accept_corpus_checks_and_replays(label, item):
    ck, (j, d) = _checked(item)
    assert d.conclusion == j
    assert replay(d, ck.sig)


def test_every_rule_is_exercised():
    seen = set()
    for _, item in corpus_items():
        _, (_, d) = _checked(item)
        seen |= d.rules()
    assert set(ALL_RULES) <= seen, sorted(set(ALL_RULES) - seen)


@pytest.mark.parametrize("path", reject_files(), ids=lambda p: p.name)
def test_reject_corpus_fails_with_expected_message(path):
    text = path.read_text()
    rows = check_text(text)
    assert not all(r["ok"] for r in rows)
    errors = " ".join(r.get("error", "") for r in rows if not r["ok"])
    expected = EXPECT.findall(text)
    assert expected, "reject files must state their expected error"
    for e in expected:
        assert e in errors


def test_empty_context():
    d = check_context(())
    assert d.rule == "Ctx-Empty"


def test_unbound_variable_in_context():
    rows = check_text("type A\ny : Id(A, x, x) |- r(y) : Id(Id(A, x, x), y, y)\n")
    assert not rows[0]["ok"] and "unbound" in rows[0]["error"]


def test_unbound_de_bruijn_index():
    with pytest.raises(CheckError, match="unbound"):
        infer_term((), Var(0))


def test_id_endpoint_types_must_agree():
    sig = parse_document("type A\ntype B\n|- A type\n").signature
    ctx = (Decl(A, "x"), Decl(S.Base("B"), "b"))
    with pytest.raises(CheckError, match="Id endpoints differ in type"):
        Checker(sig).type_(ctx, S.Id(S.shift(A, 2), Var(1), Var(0)))


def test_defeq_is_syntactic():
    t = S.J(A, Var(0), Var(0), Var(0), S.Refl(Var(0)))
    assert defeq((), t, t)
    assert defeq((), S.subst(A, S.identity(0)), A)
    assert not defeq((), t, Var(0))


def test_redex_detection_and_axioms():
    x = Var(0)
    assert is_redex(S.J(A, x, x, x, S.Refl(x))) == "J/r"
    assert is_redex(S.J(A, x, x, Var(1), S.Refl(x))) is None
    assert is_redex(S.Ev(S.Lam(A, Var(0)), x)) == "ev/lam"
    assert computation_axiom(x) is None
    assert isinstance(computation_axiom(S.IndN(S.NatT(), x, x, S.Succ(x))), S.BetaNs)


@pytest.mark.parametrize("path", sorted(p for p in reject_files() if "conversion" in p.name),
                         ids=lambda p: p.name)
def test_conversion_rejected_but_axiom_checks(path):
    item = parse_document(path.read_text()).items[0]
    j = item.judgment
    t, u, T = j.subjects
    ck = Checker(item.signature)
    ck.signature()
    ck.context(j.ctx)
    with pytest.raises(CheckError, match="no judgmental computation"):
        ck.judgment(j)
    assert not defeq(j.ctx, t, u)
    _, got, d = ck.infer(j.ctx, computation_axiom(t))
    assert got == S.Id(T, t, u)
    assert replay(d, ck.sig)


def test_h_types_a_redex_pair():
    text = (corpus_items([p for p in accept_files() if p.name == "h-comp.att"])[0][1])
    _, (j, _) = _checked(text)
    Id = j.subjects[1]
    assert is_redex(Id.t) == "J/r" and not defeq(j.ctx, Id.t, Id.u)


def test_derived_transport_and_law():
    C = S.Base("C", (Var(0),))
    sig = parse_document("type A\ntype C (x : A)\n|- A type\n").signature
    der = derived_transport(A, C, sig)
    T, _ = infer_term(der.ctx, der.term, sig)
    assert T == der.type == S.Base("C", (Var(2),))
    assert isinstance(der.law_type, S.Id)


def test_happly_is_only_propositionally_pointwise():
    sig = parse_document("type A\ntype B (x : A)\n|- A type\n").signature
    der = derived_happly(A, S.Base("B", (Var(0),)), sig)
    assert isinstance(der.type, S.PiT)
    # happly at r(z) is the J redex, not the pointwise reflexivity
    z = Var(0)
    P = S.PiT(S.shift(A, 1), S.Base("B", (Var(0),)))
    redex = happly_term(S.shift(A, 1), S.Base("B", (Var(0),)), z, z, S.Refl(z))
    pointwise = S.Lam(S.shift(A, 1), S.Refl(S.Ev(Var(1), Var(0))))
    assert not defeq((Decl(P, "z"),), redex, pointwise)
    ck = Checker(sig)
    T1 = ck.infer((Decl(P, "z"),), redex)[1]
    T2 = ck.infer((Decl(P, "z"),), pointwise)[1]
    assert T1 == T2


def test_plus_laws_asymmetry():
    n = Var(0)
    ctx = (Decl(S.NatT(), "n"),)
    T, _ = infer_term(ctx, plus_zero_right(n))
    assert isinstance(T, S.Id)
    T2, _ = infer_term(ctx, plus_zero_left(n))
    assert isinstance(T2, S.Id)


def test_replay_detects_tampering():
    sig = parse_document("type A\n|- A type\n").signature
    _, d = check_judgment(Judgment("term", (Decl(A, "x"),), (S.Refl(Var(0)), S.Id(A, Var(0), Var(0)))), sig)
    bad = type(d)(d.rule, Judgment("term", d.conclusion.ctx,
                                   (S.Refl(Var(0)), S.Id(A, Var(0), S.Refl(Var(0))))), d.premises)
    with pytest.raises(ReplayError):
        replay(bad, sig)


def test_explain_lists_rules():
    sig = parse_document("type A\n|- A type\n").signature
    _, d = check_judgment(Judgment("term", (Decl(A, "x"),), (S.Refl(Var(0)), S.Id(A, Var(0), Var(0)))), sig)
    text = explain(d, sig)
    assert "Intro Rule (=)" in text.splitlines()[0]


def test_bench_family_small_sizes():
    for n in (1, 2, 8):
        _, rec = bench_family(n)
        assert rec["nodes"] > n
    times = []
    for _ in range(5):
        times.append(bench_family(1)[1]["seconds"])
    assert min(times) < 0.010


def test_bench_rejects_nonpositive():
    with pytest.raises(ValueError):
        bench_family(0)
