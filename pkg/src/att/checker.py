"""Bidirectional checker for axiomatic type theory.

Definitional equality is alpha-equality of substitution-normal syntax and
nothing else: eliminators applied to introductions never reduce, so
``J(c, t, t, r(t))`` and ``c(t)`` stay apart and only the computation
axioms (``H``, ``sigma``, ``beta``, ...) relate them, propositionally.

Every accepted judgment comes with a ``Derivation`` whose nodes are
labelled by the rule that produced them.  ``replay`` re-runs each rule
against the stored premises and compares conclusions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import syntax as S
from .parser import Signature, show, TypeDecl, ConstDecl
from .syntax import (Decl, Judgment, Var, Refl, inst, shift, subst)


class CheckError(Exception):
    def __init__(self, reason, rule=None, judgment=None, span=None):
        self.reason, self.rule, self.judgment, self.span = reason, rule, judgment, span
        head = f"{rule}: " if rule else ""
        super().__init__(head + reason)


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: Judgment
    premises: tuple = ()
    data: tuple = field(default=(), compare=False)

    def size(self) -> int:
        n, stack = 0, [self]
        while stack:
            d = stack.pop()
            n += 1
            stack.extend(d.premises)
        return n

    def rules(self) -> set:
        out, stack = set(), [self]
        while stack:
            d = stack.pop()
            out.add(d.rule)
            stack.extend(d.premises)
        return out


RULES = {
    "=": ("Form Rule (=)", "Intro Rule (=)", "Elim Rule (=)", "Comp Axiom (=)"),
    "Sigma": ("Form Rule (Sigma)", "Intro Rule (Sigma)", "Elim Rule (Sigma)",
              "Comp Axiom (Sigma)"),
    "Pi": ("Form Rule (Pi)", "Intro Rule (Pi)", "Elim Rule (Pi)", "Comp Axiom (Pi)",
           "Intro Rule (funext)", "Comp Axiom (funext)", "Exp Axiom (funext)"),
    "0": ("Form Rule (0)", "Elim Rule (0)"),
    "1": ("Form Rule (1)", "Intro Rule (1)", "Elim Rule (1)", "Comp Axiom (1)"),
    "2": ("Form Rule (2)", "Intro Rule (2)", "Elim Rule (2)", "Comp Axiom (2, bot)",
          "Comp Axiom (2, top)"),
    "N": ("Form Rule (N)", "Intro Rule (N, zero)", "Intro Rule (N, succ)",
          "Elim Rule (N)", "Comp Axiom (N, zero)", "Comp Axiom (N, succ)"),
}
ALL_RULES = tuple(r for rs in RULES.values() for r in rs)


# ------------------------------------------------------------ helpers

def extend(ctx, *types, names=()):
    out = list(ctx)
    for k, A in enumerate(types):
        out.append(Decl(A, names[k] if k < len(names) else None))
    return tuple(out)


def id_motive_ctx(ctx, A, names=()):
    """Γ, x:A, y:A, p:Id(A, x, y)."""
    return extend(ctx, A, shift(A, 1), S.Id(shift(A, 2), Var(1), Var(0)), names=names)


def homotopy(A, B, z, z2):
    """``Pi x:A. Id(B, ev(z, x), ev(z', x))``."""
    return S.PiT(A, S.Id(B, S.Ev(shift(z, 1), Var(0)), S.Ev(shift(z2, 1), Var(0))))


def happly_term(A, B, z, z2, p):
    """J[w w' e. Pi x:A. ev(w,x) = ev(w',x)](w. lam x:A. r(ev(w, x)), z, z', p)."""
    C = S.PiT(shift(A, 3), S.Id(shift(B, 3, 1), S.Ev(Var(3), Var(0)), S.Ev(Var(2), Var(0))),
              ("x",))
    c = S.Lam(shift(A, 1), Refl(S.Ev(Var(1), Var(0))), ("x",))
    return S.J(C, c, z, z2, p, ("w", "w'", "e", "w"))


def is_redex(t) -> Optional[str]:
    """Name the eliminator/introduction pair if ``t`` is a computation redex."""
    if isinstance(t, S.J) and isinstance(t.p, Refl) and t.t == t.u == t.p.t:
        return "J/r"
    if isinstance(t, S.Split) and isinstance(t.w, S.Pair):
        return "split/pair"
    if isinstance(t, S.Ev) and isinstance(t.z, S.Lam):
        return "ev/lam"
    if isinstance(t, S.Ind1) and isinstance(t.t, S.Star):
        return "ind1/star"
    if isinstance(t, S.Ind2) and isinstance(t.t, (S.Bot, S.Top)):
        return "ind2/bot-top"
    if isinstance(t, S.IndN) and isinstance(t.t, (S.Zero, S.Succ)):
        return "indN/zero-succ"
    return None


_AXIOM_FOR = {"J/r": "H", "split/pair": "sigma", "ev/lam": "beta",
              "ind1/star": "beta1", "ind2/bot-top": "beta2bot/beta2top",
              "indN/zero-succ": "betaN0/betaNs"}


def computation_axiom(t) -> Optional[S.Syntax]:
    """The axiom term relating a redex to its contractum, or None."""
    kind = is_redex(t)
    if kind == "J/r":
        return S.H(t.C, t.c, t.t, t.names)
    if kind == "split/pair":
        w = t.w
        return S.SigmaAx(w.A, w.B, t.C, t.c, w.t, w.u, t.names)
    if kind == "ev/lam":
        return S.Beta(t.z.A, t.z.body, t.t, t.z.names)
    if kind == "ind1/star":
        return S.Beta1(t.C, t.c, t.names)
    if kind == "ind2/bot-top":
        cls = S.Beta2Bot if isinstance(t.t, S.Bot) else S.Beta2Top
        return cls(t.C, t.c, t.d, t.names)
    if kind == "indN/zero-succ":
        if isinstance(t.t, S.Zero):
            return S.BetaN0(t.C, t.c, t.d, t.names)
        return S.BetaNs(t.C, t.c, t.d, t.t.n, t.names)
    return None


def defeq(ctx, x, y) -> bool:
    """Alpha-equality of substitution-normal syntax; no computation."""
    return x == y


# ------------------------------------------------------------ checker

class Checker:
    def __init__(self, sig: Optional[Signature] = None):
        self.sig = sig if sig is not None else Signature()

    # premise hooks; the replayer overrides these
    def sub_type(self, ctx, A):
        return self.type_(ctx, A)

    def sub_infer(self, ctx, t):
        return self.infer(ctx, t)

    def sub_check(self, ctx, t, T, rule=None, premise=None):
        return self.check(ctx, t, T, rule, premise)

    def _say(self, ctx, x):
        return show(x, [d.name or f"x{k}" for k, d in enumerate(ctx)], self.sig)

    def _mismatch(self, ctx, t, want, got, rule, premise):
        what = f"premise {premise} failed: " if premise else ""
        raise CheckError(f"{what}expected type {self._say(ctx, want)}, "
                         f"got {self._say(ctx, got)}", rule,
                         Judgment("term", ctx, (t, want)), t.span)

    # -- contexts
    def context(self, ctx) -> Derivation:
        d = Derivation("Ctx-Empty", Judgment("ctx", ()))
        for k, entry in enumerate(ctx):
            A, dA = self.type_(ctx[:k], entry.type)
            if A != entry.type:
                raise CheckError("context entries must be fully annotated", "Ctx-Ext")
            d = Derivation("Ctx-Ext", Judgment("ctx", ctx[:k + 1]), (d, dA))
        return d

    def elab_context(self, ctx):
        out = []
        for entry in ctx:
            A, _ = self.type_(tuple(out), entry.type)
            out.append(Decl(A, entry.name))
        return tuple(out)

    # -- types
    def type_(self, ctx, A):
        """Check ``Γ ⊢ A type`` and return the elaborated type."""
        if isinstance(A, S.Base):
            return self._base(ctx, A)
        if isinstance(A, S.Id):
            rule = "Form Rule (=)"
            if A.A is None:
                # elaborate ``t = u`` to Id(T, t, u) so replay sees one premise shape
                _, T, _ = self.infer(ctx, A.t)
                A = S.Id(T, A.t, A.u, A.span)
            T, dT = self.sub_type(ctx, A.A)
            t, dt = self.sub_check(ctx, A.t, T, rule, "left endpoint")
            u, du = self._id_right(ctx, A.u, T, rule)
            out = S.Id(T, t, u, A.span)
            return out, Derivation(rule, Judgment("type", ctx, (out,)), (dT, dt, du))
        if isinstance(A, (S.SigmaT, S.PiT)):
            rule = "Form Rule (Sigma)" if isinstance(A, S.SigmaT) else "Form Rule (Pi)"
            dom, dd = self.sub_type(ctx, A.A)
            cod, dc = self.sub_type(extend(ctx, dom, names=A.names or ()), A.B)
            out = type(A)(dom, cod, A.names, A.span)
            return out, Derivation(rule, Judgment("type", ctx, (out,)), (dd, dc))
        label = {S.ZeroT: "Form Rule (0)", S.OneT: "Form Rule (1)",
                 S.TwoT: "Form Rule (2)", S.NatT: "Form Rule (N)"}.get(type(A))
        if label is None:
            raise CheckError(f"expected a type, found a term", None, None,
                             getattr(A, "span", None))
        return A, Derivation(label, Judgment("type", ctx, (A,)))

    def _id_right(self, ctx, u, T, rule):
        try:
            return self.sub_check(ctx, u, T, rule, "right endpoint")
        except CheckError as e:
            if e.rule == rule and "right endpoint" in e.reason:
                _, U, _ = self.infer(ctx, u)
                raise CheckError(
                    f"Id endpoints differ in type: left has {self._say(ctx, T)}, "
                    f"right has {self._say(ctx, U)}", rule, None, u.span) from None
            raise

    def _base(self, ctx, A):
        decl = self.sig.types.get(A.name)
        if decl is None:
            raise CheckError(f"unknown base type {A.name!r}", "Base Type", None, A.span)
        args, prem = self._telescope_args(ctx, decl.tele, A.args, A.name, "Base Type")
        out = S.Base(A.name, args, A.span)
        return out, Derivation("Base Type", Judgment("type", ctx, (out,)), prem,
                               data=(A.name,))

    def _telescope_args(self, ctx, tele, args, name, rule):
        if len(args) != len(tele):
            raise CheckError(f"{name} expects {len(tele)} argument(s), got {len(args)}",
                             rule)
        done, prem = [], []
        for k, (entry, a) in enumerate(zip(tele, args)):
            want = subst(entry.type, tuple(done))
            a2, da = self.sub_check(ctx, a, want, rule, f"argument {k + 1} of {name}")
            done.append(a2)
            prem.append(da)
        return tuple(done), tuple(prem)

    # -- terms
    def check(self, ctx, t, T, rule=None, premise=None):
        """Check ``Γ ⊢ t : T``; return the elaborated term and derivation."""
        if isinstance(t, S.Pair) and t.A is None:
            if not isinstance(T, S.SigmaT):
                raise CheckError(f"pair checked against non-Sigma type {self._say(ctx, T)}",
                                 "Intro Rule (Sigma)", None, t.span)
            t = S.Pair(T.A, T.B, t.t, t.u, T.names, t.span)
        t2, T2, d = self.infer(ctx, t)
        if T2 != T:
            self._mismatch(ctx, t2, T, T2, rule, premise)
        return t2, d

    def infer(self, ctx, t):
        """Synthesize ``Γ ⊢ t : T``; return (elaborated t, T, derivation)."""
        fn = getattr(self, "_infer_" + type(t).__name__, None)
        if fn is None:
            raise CheckError(f"cannot synthesize a type for {type(t).__name__}",
                             None, None, getattr(t, "span", None))
        return fn(ctx, t)

    def _ok(self, rule, ctx, t, T, *prem, data=()):
        return t, T, Derivation(rule, Judgment("term", ctx, (t, T)), tuple(prem), data)

    def _infer_Var(self, ctx, t):
        if t.i >= len(ctx) or t.i < 0:
            raise CheckError(f"unbound variable #{t.i}", "Var", None, t.span)
        return self._ok("Var", ctx, t, S.lookup(ctx, t.i))

    def _infer_Const(self, ctx, t):
        decl = self.sig.consts.get(t.name)
        if decl is None:
            raise CheckError(f"unknown constant {t.name!r}", "Const", None, t.span)
        args, prem = self._telescope_args(ctx, decl.tele, t.args, t.name, "Const")
        out = S.Const(t.name, args, t.span)
        return self._ok("Const", ctx, out, subst(decl.type, args), *prem, data=(t.name,))

    def _infer_Ann(self, ctx, t):
        A, _ = self.sub_type(ctx, t.A)
        t2, d = self.sub_check(ctx, t.t, A, "Ann", "annotated term")
        return t2, A, d

    # = types
    def _infer_Refl(self, ctx, t):
        a, A, da = self.sub_infer(ctx, t.t)
        out = Refl(a, t.span)
        return self._ok("Intro Rule (=)", ctx, out, S.Id(A, a, a), da)

    def _j_premises(self, ctx, t, rule):
        a, A, da = self.sub_infer(ctx, t.t)
        mctx = id_motive_ctx(ctx, A, t.names[:3] if t.names else ())
        C, dC = self.sub_type(mctx, t.C)
        want_c = subst(C, (Var(0), Var(0), Refl(Var(0))), 1)
        cctx = extend(ctx, A, names=t.names[3:4] if t.names else ())
        c, dc = self.sub_check(cctx, t.c, want_c, rule, "c(x) : C(x, x, r(x))")
        return a, A, C, c, (da, dC, dc)

    def _infer_J(self, ctx, t):
        rule = "Elim Rule (=)"
        a, A, C, c, prem = self._j_premises(ctx, t, rule)
        b, db = self.sub_check(ctx, t.u, A, rule, "x' : A")
        p, dp = self.sub_check(ctx, t.p, S.Id(A, a, b), rule, "p : x = x'")
        out = S.J(C, c, a, b, p, t.names, t.span)
        return self._ok(rule, ctx, out, subst(C, (a, b, p)), *prem, db, dp)

    def _infer_H(self, ctx, t):
        rule = "Comp Axiom (=)"
        a, A, C, c, prem = self._j_premises(ctx, t, rule)
        ra = Refl(a)
        T = S.Id(subst(C, (a, a, ra)), S.J(C, c, a, a, ra, t.names), inst(c, a))
        return self._ok(rule, ctx, S.H(C, c, a, t.names, t.span), T, *prem)

    # Sigma
    def _infer_Pair(self, ctx, t):
        rule = "Intro Rule (Sigma)"
        if t.A is None:
            raise CheckError("cannot synthesize the type of an unannotated pair; "
                             "annotate it as pair[x:A. B](t, u)", rule, None, t.span)
        A, dA = self.sub_type(ctx, t.A)
        B, dB = self.sub_type(extend(ctx, A, names=t.names or ()), t.B)
        a, da = self.sub_check(ctx, t.t, A, rule, "first component")
        b, db = self.sub_check(ctx, t.u, inst(B, a), rule, "second component")
        out = S.Pair(A, B, a, b, t.names, t.span)
        return self._ok(rule, ctx, out, S.SigmaT(A, B, t.names), dA, dB, da, db)

    def _sigma_motive(self, ctx, A, B, Craw, craw, names, rule):
        T = S.SigmaT(A, B)
        C, dC = self.sub_type(extend(ctx, T, names=names[1:2]), Craw)
        pr = S.Pair(shift(A, 2), shift(B, 2, 1), Var(1), Var(0))
        cctx = extend(ctx, A, B, names=names[2:4])
        c, dc = self.sub_check(cctx, craw, subst(C, (pr,), 2), rule, "c(x, y) : C(<x, y>)")
        return C, c, dC, dc

    def _infer_Split(self, ctx, t):
        rule = "Elim Rule (Sigma)"
        w, W, dw = self.sub_infer(ctx, t.w)
        if not isinstance(W, S.SigmaT):
            raise CheckError(f"premise u : Sigma x:A. B failed: split needs a term of "
                             f"Sigma type, got {self._say(ctx, W)}", rule, None, t.w.span)
        names = (None,) + tuple(t.names or ())
        C, c, dC, dc = self._sigma_motive(ctx, W.A, W.B, t.C, t.c, names, rule)
        out = S.Split(C, c, w, t.names, t.span)
        return self._ok(rule, ctx, out, inst(C, w), dw, dC, dc)

    def _infer_SigmaAx(self, ctx, t):
        rule = "Comp Axiom (Sigma)"
        A, dA = self.sub_type(ctx, t.A)
        B, dB = self.sub_type(extend(ctx, A), t.B)
        names = tuple(t.names or ())
        C, c, dC, dc = self._sigma_motive(ctx, A, B, t.C, t.c, names, rule)
        a, da = self.sub_check(ctx, t.t, A, rule, "x : A")
        b, db = self.sub_check(ctx, t.s, inst(B, a), rule, "y : B(x)")
        pr = S.Pair(A, B, a, b, names[:1])
        T = S.Id(inst(C, pr), S.Split(C, c, pr, names[1:]), inst(c, a, b))
        out = S.SigmaAx(A, B, C, c, a, b, t.names, t.span)
        return self._ok(rule, ctx, out, T, dA, dB, dC, dc, da, db)

    # Pi
    def _infer_Lam(self, ctx, t):
        A, dA = self.sub_type(ctx, t.A)
        body, B, db = self.sub_infer(extend(ctx, A, names=t.names or ()), t.body)
        out = S.Lam(A, body, t.names, t.span)
        return self._ok("Intro Rule (Pi)", ctx, out, S.PiT(A, B, t.names), dA, db)

    def _pi_of(self, ctx, z, rule, what="z"):
        z2, Z, dz = self.sub_infer(ctx, z)
        if not isinstance(Z, S.PiT):
            raise CheckError(f"premise {what} : Pi x:A. B failed: got {self._say(ctx, Z)}",
                             rule, None, z.span)
        return z2, Z, dz

    def _infer_Ev(self, ctx, t):
        rule = "Elim Rule (Pi)"
        z, Z, dz = self._pi_of(ctx, t.z, rule)
        a, da = self.sub_check(ctx, t.t, Z.A, rule, "x : A")
        return self._ok(rule, ctx, S.Ev(z, a, t.span), inst(Z.B, a), dz, da)

    def _infer_Beta(self, ctx, t):
        rule = "Comp Axiom (Pi)"
        A, dA = self.sub_type(ctx, t.A)
        v, B, dv = self.sub_infer(extend(ctx, A, names=t.names or ()), t.v)
        a, da = self.sub_check(ctx, t.t, A, rule, "x : A")
        T = S.Id(inst(B, a), S.Ev(S.Lam(A, v, t.names), a), inst(v, a))
        return self._ok(rule, ctx, S.Beta(A, v, a, t.names, t.span), T, dA, dv, da)

    def _funext_premises(self, ctx, t, rule, last, last_name):
        z, Z, dz = self._pi_of(ctx, t.z, rule)
        z2, dz2 = self.sub_check(ctx, t.z2, Z, rule, "z' : Pi x:A. B")
        if last_name == "q":
            want = homotopy(Z.A, Z.B, z, z2)
            premise = "q : Pi x:A. ev(z, x) = ev(z', x)"
        else:
            want = S.Id(Z, z, z2)
            premise = "p : z = z'"
        q, dq = self.sub_check(ctx, last, want, rule, premise)
        return z, Z, z2, q, (dz, dz2, dq)

    def _infer_Funext(self, ctx, t):
        rule = "Intro Rule (funext)"
        z, Z, z2, q, prem = self._funext_premises(ctx, t, rule, t.q, "q")
        return self._ok(rule, ctx, S.Funext(z, z2, q, t.span), S.Id(Z, z, z2), *prem)

    def _infer_BetaPi(self, ctx, t):
        rule = "Comp Axiom (funext)"
        z, Z, z2, q, prem = self._funext_premises(ctx, t, rule, t.q, "q")
        hap = happly_term(Z.A, Z.B, z, z2, S.Funext(z, z2, q))
        T = S.Id(homotopy(Z.A, Z.B, z, z2), hap, q)
        return self._ok(rule, ctx, S.BetaPi(z, z2, q, t.span), T, *prem)

    def _infer_EtaPi(self, ctx, t):
        rule = "Exp Axiom (funext)"
        z, Z, z2, p, prem = self._funext_premises(ctx, t, rule, t.p, "p")
        rhs = S.Funext(z, z2, happly_term(Z.A, Z.B, z, z2, p))
        T = S.Id(S.Id(Z, z, z2), p, rhs)
        return self._ok(rule, ctx, S.EtaPi(z, z2, p, t.span), T, *prem)

    # 0, 1, 2
    def _motive(self, ctx, t, base):
        return self.sub_type(extend(ctx, base, names=(t.names or ())[:1]), t.C)

    def _infer_Ind0(self, ctx, t):
        rule = "Elim Rule (0)"
        C, dC = self._motive(ctx, t, S.ZeroT())
        a, da = self.sub_check(ctx, t.t, S.ZeroT(), rule, "x : 0")
        return self._ok(rule, ctx, S.Ind0(C, a, t.names, t.span), inst(C, a), dC, da)

    def _infer_Star(self, ctx, t):
        return self._ok("Intro Rule (1)", ctx, t, S.OneT())

    def _infer_Ind1(self, ctx, t):
        rule = "Elim Rule (1)"
        C, dC = self._motive(ctx, t, S.OneT())
        c, dc = self.sub_check(ctx, t.c, inst(C, S.Star()), rule, "c : C(star)")
        a, da = self.sub_check(ctx, t.t, S.OneT(), rule, "x : 1")
        out = S.Ind1(C, c, a, t.names, t.span)
        return self._ok(rule, ctx, out, inst(C, a), dC, dc, da)

    def _infer_Beta1(self, ctx, t):
        rule = "Comp Axiom (1)"
        C, dC = self._motive(ctx, t, S.OneT())
        c, dc = self.sub_check(ctx, t.c, inst(C, S.Star()), rule, "c : C(star)")
        T = S.Id(inst(C, S.Star()), S.Ind1(C, c, S.Star(), t.names), c)
        return self._ok(rule, ctx, S.Beta1(C, c, t.names, t.span), T, dC, dc)

    def _infer_Bot(self, ctx, t):
        return self._ok("Intro Rule (2)", ctx, t, S.TwoT())

    _infer_Top = _infer_Bot

    def _two(self, ctx, t, rule):
        C, dC = self._motive(ctx, t, S.TwoT())
        c, dc = self.sub_check(ctx, t.c, inst(C, S.Bot()), rule, "c : C(bot)")
        d, dd = self.sub_check(ctx, t.d, inst(C, S.Top()), rule, "d : C(top)")
        return C, c, d, (dC, dc, dd)

    def _infer_Ind2(self, ctx, t):
        rule = "Elim Rule (2)"
        C, c, d, prem = self._two(ctx, t, rule)
        a, da = self.sub_check(ctx, t.t, S.TwoT(), rule, "x : 2")
        out = S.Ind2(C, c, d, a, t.names, t.span)
        return self._ok(rule, ctx, out, inst(C, a), *prem, da)

    def _infer_Beta2Bot(self, ctx, t):
        rule = "Comp Axiom (2, bot)"
        C, c, d, prem = self._two(ctx, t, rule)
        T = S.Id(inst(C, S.Bot()), S.Ind2(C, c, d, S.Bot(), t.names), c)
        return self._ok(rule, ctx, S.Beta2Bot(C, c, d, t.names, t.span), T, *prem)

    def _infer_Beta2Top(self, ctx, t):
        rule = "Comp Axiom (2, top)"
        C, c, d, prem = self._two(ctx, t, rule)
        T = S.Id(inst(C, S.Top()), S.Ind2(C, c, d, S.Top(), t.names), d)
        return self._ok(rule, ctx, S.Beta2Top(C, c, d, t.names, t.span), T, *prem)

    # N
    def _infer_Zero(self, ctx, t):
        return self._ok("Intro Rule (N, zero)", ctx, t, S.NatT())

    def _infer_Succ(self, ctx, t):
        rule = "Intro Rule (N, succ)"
        n, dn = self.sub_check(ctx, t.n, S.NatT(), rule, "n : N")
        return self._ok(rule, ctx, S.Succ(n, t.span), S.NatT(), dn)

    def _nat(self, ctx, t, rule):
        C, dC = self._motive(ctx, t, S.NatT())
        c, dc = self.sub_check(ctx, t.c, inst(C, S.Zero()), rule, "c : C(0)")
        names = tuple(t.names or ())[1:3]
        dctx = extend(ctx, S.NatT(), C, names=names)
        want = subst(C, (S.Succ(Var(1)),), 2)
        d, dd = self.sub_check(dctx, t.d, want, rule, "d(n, y) : C(s(n))")
        return C, c, d, (dC, dc, dd)

    def _infer_IndN(self, ctx, t):
        rule = "Elim Rule (N)"
        C, c, d, prem = self._nat(ctx, t, rule)
        a, da = self.sub_check(ctx, t.t, S.NatT(), rule, "n : N")
        out = S.IndN(C, c, d, a, t.names, t.span)
        return self._ok(rule, ctx, out, inst(C, a), *prem, da)

    def _infer_BetaN0(self, ctx, t):
        rule = "Comp Axiom (N, zero)"
        C, c, d, prem = self._nat(ctx, t, rule)
        T = S.Id(inst(C, S.Zero()), S.IndN(C, c, d, S.Zero(), t.names), c)
        return self._ok(rule, ctx, S.BetaN0(C, c, d, t.names, t.span), T, *prem)

    def _infer_BetaNs(self, ctx, t):
        rule = "Comp Axiom (N, succ)"
        C, c, d, prem = self._nat(ctx, t, rule)
        a, da = self.sub_check(ctx, t.t, S.NatT(), rule, "n : N")
        sa = S.Succ(a)
        T = S.Id(inst(C, sa), S.IndN(C, c, d, sa, t.names),
                 inst(d, a, S.IndN(C, c, d, a, t.names)))
        return self._ok(rule, ctx, S.BetaNs(C, c, d, a, t.names, t.span), T, *prem, da)

    # -- judgments
    def judgment(self, j: Judgment):
        """Check a whole judgment; return (elaborated judgment, derivation)."""
        ctx = self.elab_context(j.ctx)
        dctx = self.context(ctx)
        s = j.subjects
        if j.kind == "ctx":
            return Judgment("ctx", ctx, (), j.span), dctx
        if j.kind == "type":
            A, d = self.type_(ctx, s[0])
            return Judgment("type", ctx, (A,), j.span), d
        if j.kind == "term":
            T, _ = self.type_(ctx, s[1])
            t, d = self.check(ctx, s[0], T, "Term", "subject")
            return Judgment("term", ctx, (t, T), j.span), d
        if j.kind == "type-eq":
            A, dA = self.type_(ctx, s[0])
            B, dB = self.type_(ctx, s[1])
            if not defeq(ctx, A, B):
                raise CheckError("types are not definitionally equal: "
                                 f"{self._say(ctx, A)} vs {self._say(ctx, B)}",
                                 "TyEq-Refl", j, j.span)
            out = Judgment("type-eq", ctx, (A, B), j.span)
            return out, Derivation("TyEq-Refl", out, (dA, dB))
        T, _ = self.type_(ctx, s[2])
        a, da = self.check(ctx, s[0], T, "TmEq-Refl", "left side")
        b, db = self.check(ctx, s[1], T, "TmEq-Refl", "right side")
        if not defeq(ctx, a, b):
            kind = is_redex(a) or is_redex(b)
            if kind:
                raise CheckError(
                    f"no judgmental computation: the {kind} redex is only "
                    f"propositionally equal to its contractum (use {_AXIOM_FOR[kind]})",
                    "TmEq-Refl", j, j.span)
            raise CheckError("terms are not definitionally equal: "
                             f"{self._say(ctx, a)} vs {self._say(ctx, b)}",
                             "TmEq-Refl", j, j.span)
        out = Judgment("term-eq", ctx, (a, b, T), j.span)
        return out, Derivation("TmEq-Refl", out, (da, db))

    def signature(self):
        """Check every declaration of the signature in order."""
        sig, self.sig = self.sig, Signature()
        try:
            order = sorted(list(sig.types.values()) + list(sig.consts.values()),
                           key=lambda d: d.line)
            for d in order:
                try:
                    tele = self.elab_context(d.tele)
                    if isinstance(d, TypeDecl):
                        self.sig.types[d.name] = TypeDecl(d.name, tele, d.line)
                    else:
                        T, _ = self.type_(tele, d.type)
                        self.sig.consts[d.name] = ConstDecl(d.name, tele, T, d.line)
                except CheckError as e:
                    raise CheckError(f"in declaration of {d.name!r}: {e.reason}",
                                     e.rule, None, e.span) from None
        except Exception:
            self.sig = sig
            raise
        return self.sig

    # -- substitutions and structural rules
    def substitution(self, delta, f, gamma):
        """Check ``f : Δ → Γ`` entrywise; return the list of derivations."""
        if len(f) != len(gamma):
            raise CheckError(f"substitution has {len(f)} entries, context has {len(gamma)}",
                             "Subst")
        out = []
        for k, (entry, t) in enumerate(zip(gamma, f)):
            want = subst(entry.type, tuple(f[:k]))
            _, d = self.check(delta, t, want, "Subst", f"entry {k + 1}")
            out.append(d)
        return tuple(out)

    def weaken(self, d: Derivation, B) -> Derivation:
        """From ``Γ ⊢ J`` and ``Γ ⊢ B type`` derive ``Γ.B ⊢ J↑``."""
        j = d.conclusion
        B2, dB = self.type_(j.ctx, B)
        ctx = extend(j.ctx, B2)
        out = Judgment(j.kind, ctx, tuple(shift(x, 1) for x in j.subjects))
        return Derivation("Weaken", out, (d, dB))

    def subst_derivation(self, d: Derivation, delta, f) -> Derivation:
        """From ``Γ ⊢ J`` and ``f : Δ → Γ`` derive ``Δ ⊢ J[f]``."""
        j = d.conclusion
        df = self.substitution(delta, f, j.ctx)
        out = Judgment(j.kind, delta, tuple(subst(x, tuple(f)) for x in j.subjects))
        return Derivation("Subst", out, (d,) + df, data=tuple(f))


# ------------------------------------------------------------- replay

class ReplayError(Exception):
    pass


class _Replayer(Checker):
    """Checker whose premises come from a stored derivation."""

    def __init__(self, sig, premises):
        super().__init__(sig)
        self.queue = list(premises)

    def _next(self, kind, ctx, subject):
        if not self.queue:
            raise ReplayError("rule requested more premises than were stored")
        d = self.queue.pop(0)
        c = d.conclusion
        if c.kind != kind or c.ctx != ctx or c.subjects[0] != subject:
            raise ReplayError(f"stored premise {d.rule} does not match the rule's request")
        return d

    def sub_type(self, ctx, A):
        d = self._next("type", ctx, A)
        return d.conclusion.subjects[0], d

    def sub_infer(self, ctx, t):
        d = self._next("term", ctx, t)
        return t, d.conclusion.subjects[1], d

    def sub_check(self, ctx, t, T, rule=None, premise=None):
        if isinstance(t, S.Pair) and t.A is None:
            t = S.Pair(T.A, T.B, t.t, t.u, T.names, t.span)
        d = self._next("term", ctx, t)
        if d.conclusion.subjects[1] != T:
            raise ReplayError("stored premise concludes a different type")
        return t, d


def replay_node(d: Derivation, sig: Signature) -> Judgment:
    """Re-instantiate the rule at ``d`` from its stored premises."""
    c = d.conclusion
    if d.rule in ("Ctx-Empty", "Ctx-Ext"):
        if d.rule == "Ctx-Empty":
            return Judgment("ctx", ())
        prev, dA = d.premises
        return Judgment("ctx", prev.conclusion.ctx + (Decl(dA.conclusion.subjects[0]),))
    if d.rule == "Weaken":
        prem, dB = d.premises
        j = prem.conclusion
        if dB.conclusion.ctx != j.ctx:
            raise ReplayError("weakening type lives in the wrong context")
        return Judgment(j.kind, extend(j.ctx, dB.conclusion.subjects[0]),
                        tuple(shift(x, 1) for x in j.subjects))
    if d.rule == "Subst":
        prem, *df = d.premises
        f = d.data
        j = prem.conclusion
        for k, (entry, t, dk) in enumerate(zip(j.ctx, f, df)):
            want = subst(entry.type, tuple(f[:k]))
            if dk.conclusion.subjects != (t, want) or dk.conclusion.ctx != c.ctx:
                raise ReplayError(f"substitution entry {k + 1} is not justified")
        if len(f) != len(j.ctx):
            raise ReplayError("substitution length mismatch")
        return Judgment(j.kind, c.ctx, tuple(subst(x, tuple(f)) for x in j.subjects))
    if d.rule in ("TyEq-Refl", "TmEq-Refl"):
        concl = tuple(p.conclusion.subjects[0] for p in d.premises)
        if d.rule == "TmEq-Refl":
            T = d.premises[0].conclusion.subjects[1]
            if d.premises[1].conclusion.subjects[1] != T or concl[0] != concl[1]:
                raise ReplayError("equality premises disagree")
            return Judgment("term-eq", c.ctx, concl + (T,))
        if concl[0] != concl[1]:
            raise ReplayError("equality premises disagree")
        return Judgment("type-eq", c.ctx, concl)
    r = _Replayer(sig, d.premises)
    if c.kind == "type":
        A, _ = r.type_(c.ctx, c.subjects[0])
        got = Judgment("type", c.ctx, (A,))
    else:
        t, T, _ = r.infer(c.ctx, c.subjects[0])
        got = Judgment("term", c.ctx, (t, T))
    if r.queue:
        raise ReplayError("unused stored premises")
    return got


def replay(d: Derivation, sig: Optional[Signature] = None) -> bool:
    """True iff every node's conclusion is reproduced from its premises."""
    sig = sig if sig is not None else Signature()
    stack = [d]
    while stack:
        node = stack.pop()
        got = replay_node(node, sig)
        if got != node.conclusion:
            raise ReplayError(f"rule {node.rule} does not reproduce its conclusion")
        stack.extend(node.premises)
    return True


# ------------------------------------------------------ module-level API

def check_context(ctx, sig=None) -> Derivation:
    return Checker(sig).context(ctx)


def check_type(ctx, A, sig=None):
    return Checker(sig).type_(ctx, A)


def infer_term(ctx, t, sig=None):
    """Return ``(type, derivation)`` for ``Γ ⊢ t``."""
    _, T, d = Checker(sig).infer(ctx, t)
    return T, d


def check_judgment(j, sig=None):
    return Checker(sig).judgment(j)


def explain(d: Derivation, sig=None, indent=0) -> str:
    """Render a derivation tree, conclusion first."""
    lines = []

    def walk(node, depth):
        lines.append("  " * depth + f"[{node.rule}] {show(node.conclusion, (), sig)}")
        for p in node.premises:
            walk(p, depth + 1)

    walk(d, indent)
    return "\n".join(lines)
