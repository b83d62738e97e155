"""Interpretation of checked =-fragment judgments in a finite groupoid model.

Contexts become chains of total groupoids over the one-point groupoid ε,
types become pseudofunctors over their context, terms become sections.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import syntax as S
from .checker import Checker, CheckError, Derivation, id_motive_ctx
from .groupoid import (FinGroupoid, GroupoidFunctor, PseudoFunctor, Report, fmt, functor_eq,
                       identity_functor, size_limit, SizeLimitError)
from .grothendieck import (DisplayMap, SectionOf, pair_sections_sem, reindex, reindex_section,
                           total_groupoid, upper_functor, factor_pullback)
from .identity import build_id, id_family, j_elim
from .syntax import Judgment

EPSILON = FinGroupoid.trivial("ε")
# interpretation builds totals of whole contexts, so it runs under a larger cap
INTERP_LIMIT = 1024


class Unsupported(Exception):
    """A former outside the shipped model's fragment."""


class SplitError(Exception):
    """Two routes to the same semantic object disagree."""


_NAMES = {S.SigmaT: "Sigma", S.PiT: "Pi", S.ZeroT: "Zero", S.OneT: "One", S.TwoT: "Two",
          S.NatT: "Nat", S.Pair: "Sigma", S.Split: "Sigma", S.SigmaAx: "Sigma",
          S.Lam: "Pi", S.Ev: "Pi", S.Beta: "Pi", S.Funext: "funext", S.BetaPi: "funext",
          S.EtaPi: "funext", S.Star: "One", S.Ind1: "One", S.Beta1: "One", S.Bot: "Two",
          S.Top: "Two", S.Ind2: "Two", S.Beta2Bot: "Two", S.Beta2Top: "Two",
          S.Zero: "Nat", S.Succ: "Nat", S.IndN: "Nat", S.BetaN0: "Nat", S.BetaNs: "Nat",
          S.Ind0: "Zero"}


def _unsupported(x):
    name = _NAMES.get(type(x), type(x).__name__)
    raise Unsupported(f"{name} unsupported in shipped model")


@dataclass
class ContextSem:
    """``ε.A1. ... .An`` with the display map of each extension."""
    displays: tuple = ()

    @property
    def groupoid(self) -> FinGroupoid:
        return self.displays[-1].total if self.displays else EPSILON

    def projection(self, k) -> GroupoidFunctor:
        """Composite of the last ``k`` display maps."""
        G = self.groupoid
        F = identity_functor(G, "1")
        for D in reversed(self.displays[len(self.displays) - k:]):
            F = D.proj @ F
        return F


@dataclass
class Sem:
    kind: str                   # ctx | type | term | type-eq | term-eq
    ctx: ContextSem
    value: object = None        # PseudoFunctor or SectionOf
    other: object = None        # second side of an equality
    equal: bool = True


def to_epsilon(G: FinGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(G, EPSILON, [0] * G.n_obj, [0] * G.n_mor, "!")


def _same(a, b, what):
    if not (a is b or a == b):
        raise SplitError(f"model is not split at {what}")


class Interpreter:
    def __init__(self, model):
        self.model = model
        self.sig = model.signature
        self.checker = Checker(self.sig)
        self._ctx = {(): ContextSem(())}
        self._types, self._terms = {}, {}

    # -- contexts
    def context(self, ctx) -> ContextSem:
        ctx = tuple(ctx)
        got = self._ctx.get(ctx)
        if got is None:
            prev = self.context(ctx[:-1])
            A = self.type_(ctx[:-1], ctx[-1].type)
            got = self._ctx[ctx] = ContextSem(prev.displays + (total_groupoid(A),))
        return got

    def substitution(self, delta, f, gamma) -> GroupoidFunctor:
        """``⟦f⟧ : ⟦Δ⟧ → ⟦Γ⟧`` built entry by entry as upper(A_k, f_<k) ∘ ⟦f_k⟧."""
        cd = self.context(delta)
        cg = self.context(gamma)
        F = to_epsilon(cd.groupoid)
        for k, (entry, t) in enumerate(zip(gamma, f)):
            A = cg.displays[k].pf
            Af = reindex(A, F)
            s = self.term(delta, t, S.subst(entry.type, tuple(f[:k])))
            _same(s.display.pf, Af, f"entry {k + 1} of a substitution")
            F = upper_functor(A, F, Af) @ s.functor
        F.name = "⟦f⟧"
        return F

    # -- types
    def type_(self, ctx, A) -> PseudoFunctor:
        key = (tuple(ctx), A)
        got = self._types.get(key)
        if got is None:
            got = self._types[key] = self._type(*key)
        return got

    def _type(self, ctx, A) -> PseudoFunctor:
        if isinstance(A, S.Base):
            decl = self.sig.types[A.name]
            pf = self.model.type_pf(A.name)
            F = self.substitution(ctx, A.args, decl.tele)
            if not A.args and not ctx:
                return pf
            return reindex(pf, F, A.name)
        if isinstance(A, S.Id):
            B = self.type_(ctx, A.A)
            a = self.term(ctx, A.t, A.A)
            b = self.term(ctx, A.u, A.A)
            return id_family(B, a, b)
        _unsupported(A)

    # -- terms
    def _type_of(self, ctx, t):
        _, T, _ = self.checker.infer(tuple(ctx), t)
        return T

    def term(self, ctx, t, T) -> SectionOf:
        key = (tuple(ctx), t, T)
        got = self._terms.get(key)
        if got is None:
            got = self._terms[key] = self._term(*key)
        return got

    def _term(self, ctx, t, T) -> SectionOf:
        cs = self.context(ctx)
        if isinstance(t, S.Var):
            n = len(ctx)
            j = n - 1 - t.i
            D = cs.displays[j]
            one = identity_functor(D.total)
            diag = factor_pullback(D.pf, D.proj, one, one)
            v = SectionOf(total_groupoid(reindex(D.pf, D.proj)), diag)
            return reindex_section(v, cs.projection(t.i)) if t.i else v
        if isinstance(t, S.Const):
            decl = self.sig.consts[t.name]
            s = self.model.const_section(t.name)
            if not ctx and not t.args:
                return s
            return reindex_section(s, self.substitution(ctx, t.args, decl.tele))
        if isinstance(t, S.Refl):
            A = T.A
            I = build_id(self.type_(ctx, A))
            a = self.term(ctx, t.t, A)
            return reindex_section(I.refl, a.functor)
        if isinstance(t, (S.J, S.H)):
            A = self._type_of(ctx, t.t)
            I = build_id(self.type_(ctx, A))
            jd = self._jdata(ctx, A, I, t.C, t.c, t.names)
            a = self.term(ctx, t.t, A)
            if isinstance(t, S.H):
                return reindex_section(jd.H, a.functor)
            b = self.term(ctx, t.u, A)
            p = self.term(ctx, t.p, S.Id(A, t.t, t.u))
            ab = pair_sections_sem(a, b)
            abp = upper_functor(I.Id, ab, p.display.pf) @ p.functor
            return reindex_section(jd.J, abp)
        if isinstance(t, S.Ann):
            return self.term(ctx, t.t, T)
        _unsupported(t)

    def _jdata(self, ctx, A, I, C, c, names):
        mctx = id_motive_ctx(ctx, A, names[:3] if names else ())
        cm = self.context(mctx)
        _same(cm.displays[-1].pf, I.Id, "Id_A in the motive context")
        Cs = self.type_(mctx, C)
        cctx = tuple(ctx) + (S.Decl(A),)
        want = S.subst(C, (S.Var(0), S.Var(0), S.Refl(S.Var(0))), 1)
        cs = self.term(cctx, c, want)
        return j_elim(I, Cs, cs)

    # -- judgments
    def judgment(self, j: Judgment) -> Sem:
        cs = self.context(j.ctx)
        s = j.subjects
        if j.kind == "ctx":
            return Sem("ctx", cs)
        if j.kind == "type":
            return Sem("type", cs, self.type_(j.ctx, s[0]))
        if j.kind == "term":
            return Sem("term", cs, self.term(j.ctx, s[0], s[1]))
        if j.kind == "type-eq":
            A, B = self.type_(j.ctx, s[0]), self.type_(j.ctx, s[1])
            return Sem("type-eq", cs, A, B, A == B)
        a, b = self.term(j.ctx, s[0], s[2]), self.term(j.ctx, s[1], s[2])
        return Sem("term-eq", cs, a, b, functor_eq(a.functor, b.functor))

    def derivation(self, d: Derivation) -> Sem:
        """Interpret through the rule at the root: structural rules re-index the
        premise's interpretation, every other rule interprets its conclusion."""
        j = d.conclusion
        if d.rule == "Weaken":
            inner = self.derivation(d.premises[0])
            cs = self.context(j.ctx)
            P = cs.displays[-1].proj
            return self._reindexed(inner, cs, P, j)
        if d.rule == "Subst":
            inner = self.derivation(d.premises[0])
            jp = d.premises[0].conclusion
            cs = self.context(j.ctx)
            F = self.substitution(j.ctx, d.data, jp.ctx)
            return self._reindexed(inner, cs, F, j)
        return self.judgment(j)

    def _reindexed(self, inner: Sem, cs, F, j) -> Sem:
        if inner.kind == "ctx":
            return Sem("ctx", cs)
        if inner.kind in ("type", "type-eq"):
            A = reindex(inner.value, F)
            B = reindex(inner.other, F) if inner.other is not None else None
            return Sem(inner.kind, cs, A, B, B is None or A == B)
        a = reindex_section(inner.value, F)
        if inner.kind == "term":
            return Sem("term", cs, a)
        b = reindex_section(inner.other, F)
        return Sem("term-eq", cs, a, b, functor_eq(a.functor, b.functor))


def interpret(d, model) -> Sem:
    """Interpret a derivation (or a bare judgment) in ``model``."""
    it = model.interpreter()
    with size_limit(INTERP_LIMIT):
        if isinstance(d, Derivation):
            return it.derivation(d)
        return it.judgment(d)


def same_sem(x: Sem, y: Sem) -> bool:
    if x.kind != y.kind:
        return False
    if x.kind == "ctx":
        return x.ctx.groupoid == y.ctx.groupoid
    if x.kind in ("type", "type-eq"):
        return x.value == y.value and (x.other is None or x.other == y.other)
    ok = functor_eq(x.value.functor, y.value.functor) and x.value.display == y.value.display
    if x.kind == "term-eq":
        ok = ok and functor_eq(x.other.functor, y.other.functor)
    return ok


# ---------------------------------------------------------------- soundness

def contractions(j: Judgment):
    """Substitutions ``f : Δ → Γ`` used to exercise the substitution property.

    Path contraction ``y ↦ x, p ↦ r(x)`` when Γ ends in x:A, y:A, p:x=y, and
    variable identification ``y ↦ x`` when Γ ends in x:A, y:A.
    """
    ctx = j.ctx
    n = len(ctx)
    out = []
    if n >= 3:
        A, A1, P = ctx[-3].type, ctx[-2].type, ctx[-1].type
        if A1 == S.shift(A, 1) and P == S.Id(S.shift(A, 2), S.Var(1), S.Var(0)):
            delta = ctx[:-2]
            f = S.identity(n - 2) + (S.Var(0), S.Refl(S.Var(0)))
            out.append((delta, f))
    if n >= 2:
        A, A1 = ctx[-2].type, ctx[-1].type
        if A1 == S.shift(A, 1):
            out.append((ctx[:-1], S.identity(n - 1) + (S.Var(0),)))
    return out


def check_soundness(items, model) -> Report:
    """Soundness harness over checked judgments.

    ``items`` are (label, judgment) pairs.  Every judgment must interpret; equalities
    must interpret to equal objects; Weaken and Subst derivations must agree with
    the direct interpretation of their conclusions.
    """
    with size_limit(INTERP_LIMIT):
        return _soundness(items, model)


def _soundness(items, model) -> Report:
    r = Report(f"soundness in {model.name}")
    ck = Checker(model.signature)
    it = model.interpreter()
    for label, j in items:
        sub = Report(label)
        r.add(sub)
        try:
            j2, d = ck.judgment(j)
        except CheckError as e:
            sub.fail(f"not derivable: {e}")
            continue
        try:
            direct = it.derivation(d)
        except (Unsupported, SplitError, SizeLimitError) as e:
            sub.fail(str(e))
            continue
        sub.check(True, "interprets")
        if j2.kind in ("type-eq", "term-eq"):
            sub.check(direct.equal, "derivable equality has unequal interpretations")
        # weakening by the first base type available
        wts = [S.Base(n) for n, dec in model.signature.types.items() if not dec.tele]
        if wts and j2.kind != "ctx":
            dw = ck.weaken(d, wts[0])
            try:
                sub.check(same_sem(it.derivation(dw), it.judgment(dw.conclusion)),
                          "weakening property fails")
            except (Unsupported, SplitError) as e:
                sub.fail(f"weakening: {e}")
            except SizeLimitError as e:
                sub.note(f"weakening skipped: {e}")
        # two derivation shapes for the same judgment: identity substitution
        ident = S.identity(len(j2.ctx))
        ds = ck.subst_derivation(d, j2.ctx, ident)
        try:
            sub.check(ds.conclusion == j2 and same_sem(it.derivation(ds), direct),
                      "identity-substitution derivation disagrees")
        except SizeLimitError as e:
            sub.note(f"identity substitution skipped: {e}")
        for delta, f in contractions(j2):
            try:
                df = ck.subst_derivation(d, delta, f)
            except CheckError as e:
                sub.fail(f"substitution rejected: {e}")
                continue
            try:
                sub.check(same_sem(it.derivation(df), it.judgment(df.conclusion)),
                          "substitution property fails")
            except (Unsupported, SplitError) as e:
                sub.fail(f"substitution: {e}")
            except SizeLimitError as e:
                sub.note(f"substitution skipped: {e}")
    return r


# ---------------------------------------------------------------- printing

def _fiber_table(A: PseudoFunctor):
    return {fmt(A.base.objects[g]): [fmt(x) for x in A.fibers[g].objects]
            for g in range(A.base.n_obj)}


def _section_table(s):
    F, T, B = s.functor, s.display.total, s.display.base
    return {"objects": {fmt(B.objects[g]): fmt(T.objects[int(F.obj[g])]) for g in range(B.n_obj)},
            "morphisms": {fmt(B.morphisms[p]): fmt(T.morphisms[int(F.mor[p])])
                          for p in range(B.n_mor)}}


def tabulate(sem: Sem) -> dict:
    """A JSON-ready description of a semantic object."""
    G = sem.ctx.groupoid
    out = {"kind": sem.kind, "context": {"name": G.name, "objects": G.n_obj,
                                         "morphisms": G.n_mor}}
    if sem.kind in ("type", "type-eq"):
        D = total_groupoid(sem.value)
        out["display"] = {"total": D.total.name, "objects": D.total.n_obj,
                          "morphisms": D.total.n_mor, "fibers": _fiber_table(sem.value),
                          "strict": sem.value.is_strict()}
    elif sem.kind in ("term", "term-eq"):
        out["section"] = _section_table(sem.value)
    if sem.kind in ("type-eq", "term-eq"):
        out["equal"] = bool(sem.equal)
        if sem.kind == "term-eq":
            out["other"] = _section_table(sem.other)
    return out
