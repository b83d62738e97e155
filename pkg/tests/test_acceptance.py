"""The eight acceptance criteria, one test each.

Each test prints a single PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  Run directly with ``python tests/test_acceptance.py``.
"""
import time

import pytest

import att.syntax as S
from att.checker import ALL_RULES, Checker, CheckError, computation_axiom, defeq, is_redex
from att.cli import BENCH_SIZES, EXPECT, MAX_EXPONENT, check_text, run_bench
from att.groupoid import functor_eq, size_limit
from att.identity import build_id, check_discreteness, j_elim
from att.interpret import INTERP_LIMIT, check_soundness
from att.models import shipped_models
from att.parser import parse_document
from att.verify import counterexample_record, model_motives, normal_collapse, verify_model

from conftest import accept_files, reject_files, soundness_items

RESULTS = []


def record(n, title, ok, detail):
    line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _models():
    return {m.name: m for m in shipped_models()}


def test_criterion_1_rule_coverage():
    t0 = time.perf_counter()
    acc, rej = accept_files(), reject_files()
    seen, bad = set(), []
    for f in acc:
        doc = parse_document(f.read_text())
        ck = Checker(doc.signature)
        ck.signature()
        for it in doc.items:
            try:
                seen |= ck.judgment(it.judgment)[1].rules()
            except CheckError as e:
                bad.append(f"{f.name}:{it.line}: {e}")
    unmet = []
    for f in rej:
        text = f.read_text()
        rows = check_text(text)
        errs = " ".join(r.get("error", "") for r in rows if not r["ok"])
        want = EXPECT.findall(text)
        if all(r["ok"] for r in rows) or not want or not all(w in errs for w in want):
            unmet.append(f.name)
    dt = time.perf_counter() - t0
    missing = sorted(set(ALL_RULES) - seen)
    ok = len(acc) >= 25 and len(rej) >= 10 and not bad and not unmet and not missing and dt < 5
    record(1, "rule coverage", ok,
           f"{len(acc)} accept files ({len(bad)} failing), {len(rej)} reject files "
           f"({len(unmet)} unmet), {len(seen & set(ALL_RULES))}/{len(ALL_RULES)} rules, {dt:.2f}s")


def _redex_pairs():
    """(label, ctx, T, redex, other, sig) for every redex pair in the corpora."""
    out = []
    for f in reject_files():
        if "conversion" not in f.name:
            continue
        it = parse_document(f.read_text()).items[0]
        t, u, T = it.judgment.subjects
        out.append((f.name, it.judgment.ctx, T, t, u, it.signature))
    for f in accept_files():
        doc = parse_document(f.read_text())
        ck = Checker(doc.signature)
        ck.signature()
        for it in doc.items:
            j, _ = ck.judgment(it.judgment)
            T = j.subjects[-1] if j.kind == "term" else None
            if isinstance(T, S.Id) and is_redex(T.t):
                out.append((f"{f.name}:{it.line}", j.ctx, T.A, T.t, T.u, doc.signature))
    return out


def test_criterion_2_no_computation():
    pairs = _redex_pairs()
    kinds, bad = set(), []
    for label, ctx, T, t, u, sig in pairs:
        ck = Checker(sig)
        ck.signature()
        ax = computation_axiom(t)
        try:
            _, got, _ = ck.infer(ctx, ax)
        except CheckError as e:
            bad.append(f"{label}: {e}")
            continue
        if defeq(ctx, t, u) or got != S.Id(T, t, u):
            bad.append(label)
        kinds.add(is_redex(t))
    ok = not bad and len(kinds) == 6
    record(2, "no-computation property", ok,
           f"{len(pairs)} redex pairs over {len(kinds)} eliminator kinds, defeq false and "
           f"axiom typed at Id in {len(pairs) - len(bad)}")


def test_criterion_3_model_axioms():
    t0 = time.perf_counter()
    models = _models()
    need = {"strict", "nonnormal", "counterexample"}
    reports = [verify_model(m) for m in models.values()]
    dt = time.perf_counter() - t0
    small = all(F.n_mor <= 64 for m in models.values() for _, A in m.pseudofunctors()
                for F in A.fibers)
    checks = sum(r.total_checks() for r in reports)
    notes = sum(len(r.all_notes()) for r in reports)
    failing = [r.name for r in reports if not r.ok]
    ok = need <= set(models) and not failing and small and dt < 30
    record(3, "model axiom suite", ok,
           f"{len(models)} models, {checks} checks, {len(failing)} failing, "
           f"{notes} oversized instances skipped, {dt:.1f}s")


def test_criterion_4_non_admissibility():
    rec = counterexample_record(_models()["counterexample"])
    ok = rec["judgmental"] is False and rec["H_section"] and rec["H_checks"] and rec["coherent"]
    record(4, "non-admissibility", ok,
           f"functor_eq(J_c[r_A], c) = {rec['judgmental']}, J_c[r_A] picks {rec['J[r]']} "
           f"vs c {rec['c']}, H_c section valid = {rec['H_section']}")


def test_criterion_5_normal_collapse():
    strict = [m for m in _models().values() if m.strict]
    reports = [normal_collapse(m) for m in strict]
    n = sum(len(model_motives(m)) for m in strict)
    ok = bool(strict) and all(r.ok for r in reports) and n > 0
    record(5, "normal collapse", ok,
           f"{len(strict)} strict model(s), {n} motive instance(s), J_c[r_A] = c and "
           f"H_c = refl in {sum(r.ok for r in reports)}")


def test_criterion_6_discreteness():
    cells = types = 0
    bad = []
    with size_limit(INTERP_LIMIT):
        for m in _models().values():
            for name, A in m.pseudofunctors():
                r = check_discreteness(build_id(A))
                types += 1
                cells += r.checks
                if not r.ok:
                    bad.append(f"{m.name}.{name}")
    record(6, "discreteness", not bad and cells > 0,
           f"{types} types, {cells} parallel 2-cells, {len(bad)} non-trivial")


def test_criterion_7_soundness():
    items = soundness_items()
    t0 = time.perf_counter()
    reports = [check_soundness(items, m) for m in _models().values()]
    failing = [r.name for r in reports if not r.ok]
    eqs = sum(j.kind in ("type-eq", "term-eq") for _, j in items)
    record(7, "soundness harness", not failing,
           f"{len(items)} judgments ({eqs} equalities) in {len(reports)} models, "
           f"{sum(r.total_checks() for r in reports)} checks, {len(failing)} failing, "
           f"{time.perf_counter() - t0:.1f}s")


def test_criterion_8_quadratic_checking():
    rec = run_bench(BENCH_SIZES, seed=0, repeats=3)
    ok = rec["exponent"] <= MAX_EXPONENT and rec["total_seconds"] < 60
    record(8, "quadratic type checking", ok,
           f"exponent {rec['exponent']:.2f} over n = {rec['sizes']}, "
           f"total {rec['total_seconds']:.1f}s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
