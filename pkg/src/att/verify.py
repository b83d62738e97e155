"""Exhaustive verification of shipped models.

Axioms quantified over all 1-cells are checked against a generated family of
functors into each base: the identity, every point, a two-point probe and a
few endofunctors, plus the composites the checks form themselves.
"""
from __future__ import annotations

from itertools import product

from .groupoid import (FinGroupoid, GroupoidFunctor, PseudoFunctor, Report, SizeLimitError, fmt,
                       functor_eq, functors_between, identity_functor)
from .grothendieck import (SectionOf, cells_into, check_2pullback, check_display, check_reindex_square,
                           check_splitness, check_transport, check_transport_stability,
                           reindex, reindex_section, sections, total_groupoid,
                           transport_cones, weakening)
from .identity import (build_id, check_arrow_object, check_brace, check_discreteness,
                       check_id_stability, check_id_structure, check_j,
                       comp_rule_counterexample, j_elim)
from .checker import id_motive_ctx
from . import syntax as S

POINT = FinGroupoid.trivial("pt")
TWO = FinGroupoid.discrete(["0", "1"], "2")


def functor_family(B: FinGroupoid, endos=2):
    """Generated 1-cells into ``B``."""
    out = [identity_functor(B, "1")]
    for g in range(B.n_obj):
        out.append(GroupoidFunctor(POINT, B, [g], [int(B.ident[g])], f"pt→{fmt(B.objects[g])}"))
    if B.n_obj > 1:
        a, b = 0, B.n_obj - 1
        out.append(GroupoidFunctor(TWO, B, [a, b], [int(B.ident[a]), int(B.ident[b])], "2→B"))
    if endos:
        one = out[0]
        found = [F for F in functors_between(B, B, limit=endos + 1) if not functor_eq(F, one)]
        for k, F in enumerate(found[:endos]):
            F.name = f"e{k}"
            out.append(F)
    return out


def _small(B, endos=0):
    return functor_family(B, endos=endos)


def _guard(r: Report, label, fn, *args):
    """Run a sub-check; an oversized construction is a note, not a failure."""
    try:
        r.add(fn(*args))
    except SizeLimitError as e:
        r.note(f"{label} skipped: {e}")


def verify_pseudofunctor(A, name=None, limit=4) -> Report:
    """Display-map 2-category axioms and the Id structure for one type."""
    name = name or A.name
    r = Report(f"type {name} over {A.base.name}")
    disp = check_display(A)
    r.add(disp)
    if not disp.ok:
        return r
    B = A.base
    fs = functor_family(B)
    D = total_groupoid(A)
    for f in fs:
        _guard(r, f"reindex square along {f.name}", check_reindex_square, A, f)
        try:
            cones, _ = transport_cones(A, f, limit=limit)
            r.add(check_2pullback(A, f, cones))
        except SizeLimitError as e:
            r.note(f"2-pullback along {f.name} skipped: {e}")
    # transport and its cleavage laws
    gs = [identity_functor(D.total, "1")] + [s.functor @ D.proj for s in sections(D, limit=2)]
    for g in gs:
        hs = _small(g.dom)
        for pi in cells_into(D.proj @ g, limit=limit):
            r.add(check_transport(D, g, pi, hs))
    _guard(r, "splitness", check_splitness, A, fs, lambda f: _small(f.dom))
    W = weakening(A)
    for f in fs:
        _guard(r, f"transport stability along {f.name}", check_transport_stability,
               A, W, f, limit)
    # identity types
    try:
        I = build_id(A)
    except SizeLimitError as e:
        r.note(f"identity structure skipped: {e}")
        return r
    r.add(check_id_structure(I))
    _guard(r, "arrow object", check_arrow_object, I, _small(B))
    _guard(r, "discreteness", check_discreteness, I)
    secs = sections(I.D, limit=limit)
    for a, b in product(secs, repeat=2):
        _guard(r, "brace", check_brace, I, a, b)
    for make in (endpoint_motive, constant_motive):
        try:
            motive = make(I)
        except SizeLimitError as e:
            r.note(f"{make.__name__} skipped: {e}")
            continue
        C, cs = motive
        for c in cs:
            _guard(r, f"J for {C.name}", lambda: check_j(I, j_elim(I, C, c)))
        for f in fs:
            _guard(r, f"Id stability of {C.name} along {f.name}", check_id_stability,
                   A, f, [motive], limit)
    return r


def endpoint_motive(I):
    """``u v e. A`` (A pulled back along the right endpoint) with ``c = z. z``."""
    A, D = I.A, I.D
    C = reindex(A, D.proj @ I.right, f"{A.name or 'A'}(v)")
    DCr = total_groupoid(reindex(C, I.r))
    obj = [DCr.obj_of[(o, x)] for o, (_, x) in enumerate(D.obj_pair)]
    mor = [DCr.mor_of[(m, p2, x)] for m, (_, p2, x) in enumerate(D.triples)]
    return C, [SectionOf(DCr, GroupoidFunctor(D.total, DCr.total, obj, mor, "z. z"))]


def constant_motive(I):
    """A constant two-point discrete motive with ``c`` picking either point."""
    C = PseudoFunctor.constant(I.DI.total, TWO, "2")
    DCr = total_groupoid(reindex(C, I.r))
    X = I.D.total
    out = []
    for k in range(TWO.n_obj):
        obj = [DCr.obj_of[(o, k)] for o in range(X.n_obj)]
        mor = [DCr.mor_of[(m, k, k)] for m in range(X.n_mor)]
        out.append(SectionOf(DCr, GroupoidFunctor(X, DCr.total, obj, mor, f"z. {k}")))
    return C, out


# ---------------------------------------------------------------- model motives

def model_motives(model):
    """(A, C, c) triples for every declared motive family and constant in it."""
    out = []
    sig = model.signature
    for cname, cdec in sig.types.items():
        if len(cdec.tele) != 3 or cname not in model.data.get("types", {}):
            continue
        A = cdec.tele[0].type
        if not isinstance(A, S.Base) or A.args:
            continue
        want = id_motive_ctx((), A)
        if tuple(d.type for d in cdec.tele) != tuple(d.type for d in want):
            continue
        target = S.Base(cname, (S.Var(0), S.Var(0), S.Refl(S.Var(0))))
        for kname, kdec in sig.consts.items():
            if (len(kdec.tele) == 1 and kdec.tele[0].type == A and kdec.type == target
                    and kname in model.data.get("constants", {})):
                out.append((A.name, cname, kname))
    return out


def _motive(model, a, cn, kn):
    A = model.type_pf(a)
    C = model.type_pf(cn)
    c = model.const_section(kn)
    return A, C, c


def same_section_labels(s, t) -> bool:
    """Label-level equality of two sections whose displays may be distinct objects."""
    if s.functor.dom != t.functor.dom:
        return False
    Ts, Tt = s.display.total, t.display.total
    return ([Ts.objects[int(o)] for o in s.functor.obj] == [Tt.objects[int(o)] for o in t.functor.obj]
            and [Ts.morphisms[int(m)] for m in s.functor.mor]
            == [Tt.morphisms[int(m)] for m in t.functor.mor])


def normal_collapse(model) -> Report:
    """On a strict model, J_c[r_A] = c and H_c = refl_{C[r_A]}[c] for every motive."""
    r = Report(f"normal collapse in {model.name}")
    for a, cn, kn in model_motives(model):
        A, C, c = _motive(model, a, cn, kn)
        I = build_id(A)
        jd = j_elim(I, C, c)
        r.check(functor_eq(jd.J_r.functor, c.functor), f"J_{kn}[r_{a}] ≠ {kn}")
        Cr = jd.J_r.display.pf
        rf = reindex_section(build_id(Cr).refl, c.functor)
        r.check(same_section_labels(jd.H, rf), f"H_{kn} ≠ refl[{kn}]")
    if r.checks == 0:
        r.check(False, "model declares no J motive")
    return r


def verify_model(model, limit=4) -> Report:
    """Every axiom check on every type and family of ``model``."""
    r = Report(f"model {model.name}")
    for name, A in model.pseudofunctors():
        r.add(verify_pseudofunctor(A, name, limit))
    for a, cn, kn in model_motives(model):
        A, C, c = _motive(model, a, cn, kn)
        I = build_id(A)
        jd = j_elim(I, C, c)
        sub = check_j(I, jd)
        sub.name = f"J and H for {cn} at {kn}"
        r.add(sub)
        for f in functor_family(A.base):
            _guard(r, f"stability of J_{kn} along {f.name}", check_id_stability,
                   A, f, [(C, [c])], limit)
    if model.strict:
        r.add(normal_collapse(model))
    return r


def counterexample_record(model) -> dict:
    """The non-admissibility witness for the first motive of ``model``.

    ``J_c[r_A]`` and ``c`` are tabulated object by object, and ``H_c`` is
    checked as a section of the Id type between them.
    """
    triples = model_motives(model)
    if not triples:
        raise ValueError(f"model {model.name} declares no J motive")
    a, cn, kn = triples[0]
    A, C, c = _motive(model, a, cn, kn)
    rec = comp_rule_counterexample(A, C, c)
    I = build_id(A)
    jd = j_elim(I, C, c)
    base = jd.J_r.display.base
    rec.update({
        "model": model.name, "type": a, "motive": cn, "constant": kn,
        "base_objects": [fmt(o) for o in base.objects],
        "coherent": check_display(C).ok,
        "H_section": jd.H.check().ok,
        "H_over": fmt(jd.H.display.pf.name),
        "table": _pointwise(jd.J_r, c),
    })
    return rec


def _pointwise(s, t):
    """Rows (base element, s image, t image) over objects then morphisms."""
    B = s.display.base
    Ts, Tt = s.display.total, t.display.total
    rows = [{"at": fmt(B.objects[g]), "J[r]": fmt(Ts.objects[int(s.functor.obj[g])]),
             "c": fmt(Tt.objects[int(t.functor.obj[g])])} for g in range(B.n_obj)]
    rows += [{"at": fmt(B.morphisms[p]), "J[r]": fmt(Ts.morphisms[int(s.functor.mor[p])]),
              "c": fmt(Tt.morphisms[int(t.functor.mor[p])])} for p in range(B.n_mor)]
    return rows
