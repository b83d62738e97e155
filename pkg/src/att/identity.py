"""Identity types in the groupoid model.

``Id_A`` lives over ``Γ.A.A▽`` with discrete fibers ``hom_{A_γ}(x, y)``.  This
module builds it together with reflexivity, the contraction 2-cell ``φ_A``,
the eliminator ``J`` (by cloven transport along ``φ_A``) and the
propositional computation witness ``H``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .groupoid import (FinGroupoid, GroupoidFunctor, NatIso, PseudoFunctor, Report,
                       check_functor, check_nat_iso, check_pseudofunctor, fmt, functor_eq, functor_key,
                       functors_between, identity_functor, identity_nat, is_identity_nat,
                       nat_isos_between, whisker_left, whisker_right)
from .grothendieck import (DisplayMap, SectionOf, cloven_transport, diagonal, factor_2cell,
                           factor_pullback, pair_sections_sem, reindex, reindex_section,
                           sections, total_groupoid, upper_functor, weakening)


class IdStructure:
    """Everything attached to ``Id_A`` for one pseudofunctor ``A``."""

    def __init__(self, A: PseudoFunctor, fiber="discrete"):
        self.A = A
        self.D = D = total_groupoid(A)
        self.weak = W = weakening(A)
        self.DW = DW = total_groupoid(W)
        self.upper = upper_functor(A, D.proj, W)          # P_A• : Γ.A.A▽ → Γ.A
        self.homs, self.hom_index = [], []
        fibers = []
        for o, (ga, y) in enumerate(DW.obj_pair):
            g, x = D.obj_pair[ga]
            G = A.fibers[g]
            hs = G.hom(x, y)
            self.homs.append(hs)
            self.hom_index.append({m: k for k, m in enumerate(hs)})
            labels = [G.morphisms[m] for m in hs]
            name = f"hom({fmt(G.objects[x])},{fmt(G.objects[y])})"
            if fiber == "discrete":
                fibers.append(FinGroupoid.discrete(labels, name))
            elif fiber == "codiscrete":
                fibers.append(FinGroupoid.codiscrete(labels, name))
            else:
                raise ValueError(f"unknown fiber kind {fiber!r}")
        fmap = []
        for P, (P1, p3, _) in enumerate(DW.triples):
            p1, p2, _ = D.triples[P1]
            s, t = int(DW.total.src[P]), int(DW.total.tgt[P])
            T = A.fibers[int(A.base.tgt[p1])]
            Ap = A.fmap[p1]
            p2i = int(T.inv[p2])
            img = [self.hom_index[t][T.chain(p3, int(Ap.mor[m]), p2i)] for m in self.homs[s]]
            Fs, Ft = fibers[s], fibers[t]
            if fiber == "discrete":
                mor = img
            else:
                mor = [Ft.m((Ft.objects[img[Fs.o(a)]], Ft.objects[img[Fs.o(b)]]))
                       for a, b in Fs.morphisms]
            fmap.append(GroupoidFunctor(Fs, Ft, img, mor, f"Id_{fmt(DW.total.morphisms[P])}"))
        self.Id = PseudoFunctor.strict(DW.total, fibers, fmap, f"Id_{A.name or 'A'}")
        self.DI = DI = total_groupoid(self.Id)
        self.delta = diagonal(A)
        # P_{A▽} P_Id  and  P_A• P_Id
        self.left = DW.proj @ DI.proj
        self.right = self.upper @ DI.proj
        self.alpha = NatIso(self.left, self.right, [self._alpha_comp(o) for o in range(DI.total.n_obj)],
                            f"α_{A.name or 'A'}")
        self.r = self._build_r()
        self.refl = SectionOf(total_groupoid(reindex(self.Id, self.delta)),
                              factor_pullback(self.Id, self.delta, identity_functor(D.total),
                                              self.r))
        self.refl.functor.name = f"refl_{A.name or 'A'}"
        self.phi = self._build_phi()

    # -- helpers
    def id_obj(self, w, m):
        """Total object of Id_A over ``w`` at fiber element ``m`` (a morphism of A_γ)."""
        return self.DI.obj_of[(w, self.hom_index[w][m])]

    def id_mor(self, W, k):
        """The unique Id_A morphism over ``W`` leaving fiber object ``k``."""
        kk = int(self.Id.fmap[W].obj[k])
        t = int(self.DW.total.tgt[W])
        return self.DI.mor_of[(W, int(self.Id.fibers[t].ident[kk]), k)]

    def element(self, o):
        """(γ, x, y, p) ids for a total object of Id_A."""
        w, k = self.DI.obj_pair[o]
        ga, y = self.DW.obj_pair[w]
        g, x = self.D.obj_pair[ga]
        return g, x, y, self.homs[w][k]

    def _alpha_comp(self, o):
        g, x, _, p = self.element(o)
        G = self.A.fibers[g]
        return self.D.mor_of[(int(self.A.base.ident[g]), G.compose(p, int(self.A.psi[g][x])), x)]

    def _build_r(self):
        A, D, DW = self.A, self.D, self.DW
        obj = []
        for o, (g, x) in enumerate(D.obj_pair):
            w = DW.obj_of[(o, x)]
            obj.append(self.id_obj(w, int(A.fibers[g].ident[x])))
        mor = []
        for m, (p1, p2, x) in enumerate(D.triples):
            W = DW.mor_of[(m, p2, x)]
            k = self.DI.obj_pair[obj[int(D.total.src[m])]][1]
            mor.append(self.id_mor(W, k))
        return GroupoidFunctor(D.total, self.DI.total, obj, mor, f"r_{A.name or 'A'}")

    def _build_phi(self):
        """``φ_A : 1 ⇒ r_A P_A• P_Id`` contracting onto the right endpoint."""
        A, D, DW, DI = self.A, self.D, self.DW, self.DI
        comp = []
        for o in range(DI.total.n_obj):
            g, x, y, p = self.element(o)
            G = A.fibers[g]
            P1 = D.mor_of[(int(A.base.ident[g]), G.compose(p, int(A.psi[g][x])), x)]
            W = DW.mor_of[(P1, int(A.psi[g][y]), y)]
            comp.append(self.id_mor(W, DI.obj_pair[o][1]))
        tgt = self.r @ self.right
        return NatIso(identity_functor(DI.total), tgt, comp, f"φ_{A.name or 'A'}")

    def factor(self, a: SectionOf, b: SectionOf) -> GroupoidFunctor:
        """``a;b : Γ → Γ.A.A▽``."""
        return pair_sections_sem(a, b)


def build_id(A: PseudoFunctor, fiber="discrete") -> IdStructure:
    key = ("id", fiber)
    I = A._cache.get(key)
    if I is None:
        I = A._cache[key] = IdStructure(A, fiber)
    return I


def id_family(B: PseudoFunctor, a: SectionOf, b: SectionOf, fiber="discrete") -> PseudoFunctor:
    """``Id_B[a;b]`` over Γ computed fiberwise, without building ``Id_B``.

    Fiber at γ is the discrete groupoid on hom(a2γ, b2γ); a base morphism q
    acts by e ↦ b2q ∘ B_q(e) ∘ a2q⁻¹.  Equal to ``reindex(build_id(B).Id, a;b)``.
    """
    memo = B._cache.setdefault("idfam", {})
    key = (fiber, functor_key(a.functor), functor_key(b.functor))
    hit = memo.get(key)
    if hit is not None and hit[0] is a.functor.dom and hit[1] is a.functor.cod:
        return hit[2]
    out = _id_family(B, a, b, fiber)
    memo[key] = (a.functor.dom, a.functor.cod, out)
    return out


def _id_family(B, a, b, fiber):
    D = a.display
    X = D.base
    fa, fb = a.fiber_objects(), b.fiber_objects()
    homs, index, fibers = [], [], []
    for g in range(X.n_obj):
        G = B.fibers[g]
        hs = G.hom(fa[g], fb[g])
        homs.append(hs)
        index.append({m: k for k, m in enumerate(hs)})
        labels = [G.morphisms[m] for m in hs]
        fibers.append(FinGroupoid.discrete(labels) if fiber == "discrete"
                      else FinGroupoid.codiscrete(labels))
    fmap = []
    for q in range(X.n_mor):
        s, t = int(X.src[q]), int(X.tgt[q])
        T = B.fibers[t]
        _, a2, _ = D.triples[int(a.functor.mor[q])]
        _, b2, _ = D.triples[int(b.functor.mor[q])]
        img = [index[t][T.chain(b2, int(B.fmap[q].mor[m]), int(T.inv[a2]))] for m in homs[s]]
        Fs, Ft = fibers[s], fibers[t]
        mor = img if fiber == "discrete" else [
            Ft.m((Ft.objects[img[Fs.o(u)]], Ft.objects[img[Fs.o(v)]])) for u, v in Fs.morphisms]
        fmap.append(GroupoidFunctor(Fs, Ft, img, mor))
    return PseudoFunctor.strict(X, fibers, fmap, "Id")


# ---------------------------------------------------------------- J and H

@dataclass
class JData:
    C: PseudoFunctor
    c: SectionOf
    Jtilde: GroupoidFunctor
    J: SectionOf
    tau: NatIso
    J_r: SectionOf
    h: NatIso
    H: SectionOf


def brace(p: NatIso, a: SectionOf, b: SectionOf) -> SectionOf:
    """``{p}``: the section of ``Id_B[a;b]`` named by a vertical 2-cell ``p : a ⇒ b``."""
    Dm = a.display
    B = Dm.pf
    IB = build_id(B)
    ab = pair_sections_sem(a, b)
    T = reindex(IB.Id, ab)
    DT = total_groupoid(T)
    X = Dm.base
    obj, ks = [], []
    for d in range(X.n_obj):
        _, p2, a2 = Dm.triples[int(p.comp[d])]
        G = B.fibers[d]
        e = G.compose(p2, int(G.inv[int(B.psi[d][a2])]))
        w = int(ab.obj[d])
        if e not in IB.hom_index[w]:
            raise ValueError("2-cell is not vertical")
        k = IB.hom_index[w][e]
        ks.append(k)
        obj.append(DT.obj_of[(d, k)])
    mor = []
    for q in range(X.n_mor):
        k = ks[int(X.src[q])]
        kk = int(T.fmap[q].obj[k])
        mor.append(DT.mor_of[(q, int(T.fibers[int(X.tgt[q])].ident[kk]), k)])
    return SectionOf(DT, GroupoidFunctor(X, DT.total, obj, mor, "{p}"))


def j_elim(I: IdStructure, C: PseudoFunctor, c: SectionOf) -> JData:
    """``J_c = t_{J̃_c}^{φ_A}`` and the computation witness ``H_c = {h_c}``."""
    if C.base != I.DI.total:
        raise ValueError("J motive must live over Γ.A.A▽.Id_A")
    DC = total_groupoid(C)
    Cr = reindex(C, I.r)
    rC = upper_functor(C, I.r, Cr)
    Jt = rC @ c.functor @ I.right
    Jt.name = "J̃"
    t, tau = cloven_transport(DC, Jt, I.phi)
    t.name = "J"
    J = SectionOf(DC, t)
    one = identity_functor(I.D.total)
    w = factor_pullback(C, I.r, one, t @ I.r, Cr)
    w.name = "J[r]"
    J_r = SectionOf(total_groupoid(Cr), w)
    h = factor_2cell(C, I.r, identity_nat(one), whisker_left(tau, I.r), w, c.functor, Cr)
    h.name = "h"
    H = brace(h, J_r, c)
    H.functor.name = "H"
    return JData(C, c, Jt, J, tau, J_r, h, H)


# ---------------------------------------------------------------- checks

def check_id_structure(I: IdStructure) -> Report:
    A = I.A
    r = Report(f"identity structure of {A.name}")
    r.add(check_pseudofunctor(I.Id))
    r.check(I.Id.is_strict(), "Id_A is not strict")
    r.check(all(F.is_discrete() for F in I.Id.fibers), "Id_A has non-discrete fibers")
    for name, F in (("r_A", I.r), ("δ_A", I.delta)):
        sub = check_functor(F)
        if not sub.ok:
            r.add(sub)
    r.check(functor_eq(I.DI.proj @ I.r, I.delta), "P_Id ∘ r_A ≠ δ_A")
    r.add(I.refl.check())
    for a in (I.alpha, I.phi):
        r.add(check_nat_iso(a))
    if not r.ok:
        return r
    r.check(is_identity_nat(whisker_left(I.phi, I.r)), "φ_A * r_A ≠ 1")
    r.check(whisker_right(I.left, I.phi) == I.alpha, "P_{A▽}P_Id * φ_A ≠ α_A")
    r.check(is_identity_nat(whisker_right(I.right, I.phi)), "P_A•P_Id * φ_A ≠ 1")
    r.add(_r_uniqueness(I))
    return r


def _r_uniqueness(I: IdStructure) -> Report:
    """Brute force: r_A is the only functor over δ_A with α_A * r_A = 1."""
    r = Report("r_A by search")
    DI = I.DI
    found = functors_between(
        I.D.total, DI.total,
        obj_choices=lambda o: [e for e in range(DI.total.n_obj)
                               if DI.obj_pair[e][0] == int(I.delta.obj[o])],
        mor_ok=lambda m, g: DI.triples[g][0] == int(I.delta.mor[m]))
    good = [F for F in found if is_identity_nat(whisker_left(I.alpha, F))]
    r.check(len(good) == 1 and functor_eq(good[0], I.r),
            f"{len(good)} functors satisfy the refl equations")
    return r


def check_discreteness(I: IdStructure) -> Report:
    """Any vertical 2-cell between sections of Id_A[x;y] is an identity."""
    r = Report(f"discreteness of Id_{I.A.name}")
    secs = sections(I.D)
    for a, b in product(secs, repeat=2):
        ab = pair_sections_sem(a, b)
        T = reindex(I.Id, ab)
        DT = total_groupoid(T)
        ps = sections(DT)
        for p, q in product(ps, repeat=2):
            cells = nat_isos_between(p.functor, q.functor,
                                     comp_ok=lambda x, m: DT.proj.mor[m] == DT.base.ident[x])
            for cell in cells:
                r.check(functor_eq(p.functor, q.functor) and is_identity_nat(cell),
                        f"non-trivial vertical 2-cell between {a.functor.name};"
                        f"{b.functor.name} paths")
    return r


def check_arrow_object(I: IdStructure, hs) -> Report:
    """Arrow-object universal property against a family of ``h : Δ → Γ``.

    Functors ``u`` over ``h`` into Γ.A.A▽.Id_A correspond to triples (a, b, θ)
    with θ vertical, and vertical 2-cells between such u to compatible pairs.
    """
    A, D, DI = I.A, I.D, I.DI
    to_base = D.proj @ I.left
    r = Report(f"arrow object Id_{A.name}")
    for h in hs:
        us = functors_between(h.dom, DI.total,
                              obj_choices=lambda o: [e for e in range(DI.total.n_obj)
                                                     if to_base.obj[e] == h.obj[o]],
                              mor_ok=lambda m, g: to_base.mor[g] == h.mor[m])
        lifts = functors_between(h.dom, D.total,
                                 obj_choices=lambda o: [e for e in range(D.total.n_obj)
                                                        if D.proj.obj[e] == h.obj[o]],
                                 mor_ok=lambda m, g: D.proj.mor[g] == h.mor[m])
        vert = lambda x, m: D.proj.mor[m] == D.base.ident[D.proj.obj[D.total.src[m]]]
        triples = []
        for a, b in product(lifts, repeat=2):
            for th in nat_isos_between(a, b, comp_ok=vert):
                triples.append((a, b, th))
        images = []
        for u in us:
            images.append((I.left @ u, I.right @ u, whisker_left(I.alpha, u)))
        key = lambda t: (tuple(t[0].obj), tuple(t[0].mor), tuple(t[1].obj), tuple(t[1].mor),
                         tuple(t[2].comp))
        got = sorted(map(key, images))
        want = sorted(map(key, triples))
        r.check(len(set(got)) == len(got), f"h={h.name}: object map not injective")
        r.check(got == want, f"h={h.name}: {len(got)} lifts vs {len(want)} triples")
        # morphisms: vertical 2-cells u ⇒ u' over h
        vert_I = lambda x, m: to_base.mor[m] == D.base.ident[to_base.obj[DI.total.src[m]]]
        for u, u2 in product(us, repeat=2):
            cells = nat_isos_between(u, u2, comp_ok=vert_I)
            a, b, th = I.left @ u, I.right @ u, whisker_left(I.alpha, u)
            a2, b2, th2 = I.left @ u2, I.right @ u2, whisker_left(I.alpha, u2)
            pairs = []
            for ea in nat_isos_between(a, a2, comp_ok=vert):
                for eb in nat_isos_between(b, b2, comp_ok=vert):
                    ok = all(D.total.comp[th2.comp[x], ea.comp[x]] == D.total.comp[eb.comp[x], th.comp[x]]
                             for x in range(h.dom.n_obj))
                    if ok:
                        pairs.append((tuple(ea.comp), tuple(eb.comp)))
            imgs = [(tuple(I.left.mor[e.comp]), tuple(I.right.mor[e.comp])) for e in cells]
            r.check(sorted(imgs) == sorted(pairs) and len(set(imgs)) == len(imgs),
                    f"h={h.name}: 2-cell correspondence fails")
            # 2-naturality of α along generated k
            for k in (identity_functor(h.dom),):
                r.check(whisker_left(whisker_left(I.alpha, u), k) == whisker_left(I.alpha, u @ k),
                        f"h={h.name}: (α*u)*k ≠ α*(u∘k)")
    return r


def check_j(I: IdStructure, jd: JData) -> Report:
    r = Report(f"J and H for {jd.C.name}")
    r.add(jd.J.check())
    sub = check_nat_iso(jd.tau)
    if not sub.ok:
        r.add(sub)
    r.check(whisker_right(jd.J.display.proj, jd.tau) == I.phi, "P_C * τ ≠ φ_A")
    r.add(jd.J_r.check())
    sub = check_nat_iso(jd.h)
    if not sub.ok:
        r.add(sub)
        return r
    Dr = jd.J_r.display
    r.check(is_identity_nat(whisker_right(Dr.proj, jd.h)), "h_c is not vertical")
    rC = upper_functor(jd.C, I.r, Dr.pf)
    r.check(whisker_right(rC, jd.h) == whisker_left(jd.tau, I.r), "r_A.C * h_c ≠ τ * r_A")
    r.add(jd.H.check())
    return r


def check_id_stability(A: PseudoFunctor, f: GroupoidFunctor, motives=(), limit=4) -> Report:
    """Stability of Id_A, α_A, r_A, refl_A, {p}, J_c and H_c under re-indexing along f.

    ``motives`` is a list of (C, [c, ...]) with C over Γ.A.A▽.Id_A.
    """
    r = Report(f"Id stability along {f.name}")
    Af = reindex(A, f)
    fA = upper_functor(A, f, Af)                       # f•
    IA, IAf = build_id(A), build_id(Af)
    if not r.check(weakening(Af) == reindex(IA.weak, fA), "A[f]▽ ≠ A▽[f•]"):
        return r
    fAA = upper_functor(IA.weak, fA, IAf.weak)         # f••
    if not r.check(reindex(IA.Id, fAA) == IAf.Id, "Id_A[f••] ≠ Id_{A[f]}"):
        return r
    fAAA = upper_functor(IA.Id, fAA, IAf.Id)           # f•••
    r.check(whisker_right(fA, IAf.alpha) == whisker_left(IA.alpha, fAAA), "α_A[f] ≠ α_{A[f]}")
    r.check(functor_eq(fAAA @ IAf.r, IA.r @ fA), "r_A is not stable")
    rf = reindex_section(IA.refl, fA)
    r.check(functor_eq(rf.functor, IAf.refl.functor), "refl_A[f•] ≠ refl_{A[f]}")
    # {p}[f] = {p[f]} over sections of A
    secs = sections(IA.D, limit=limit)
    for a, b in product(secs, repeat=2):
        for p in vertical_between(a, b):
            lhs = reindex_section(brace(p, a, b), f)
            af, bf = reindex_section(a, f, Af), reindex_section(b, f, Af)
            pf = factor_2cell(A, f, identity_nat(identity_functor(f.dom)),
                              whisker_left(p, f), af.functor, bf.functor, Af)
            rhs = brace(pf, af, bf)
            r.check(functor_eq(lhs.functor, rhs.functor), "{p}[f] ≠ {p[f]}")
    for C, cs in motives:
        Cf = reindex(C, fAAA)
        for c in cs:
            jd = j_elim(IA, C, c)
            cf = reindex_section(c, fA)
            jdf = j_elim(IAf, Cf, cf)
            r.check(functor_eq(reindex_section(jd.J, fAAA).functor, jdf.J.functor),
                    f"J_c[f•••] ≠ J_(c[f•]) for {C.name}")
            r.check(functor_eq(reindex_section(jd.H, fA).functor, jdf.H.functor),
                    f"H_c[f•] ≠ H_(c[f•]) for {C.name}")
    return r


def vertical_between(a: SectionOf, b: SectionOf):
    """All 2-cells a ⇒ b lying over identities."""
    D = a.display
    return nat_isos_between(a.functor, b.functor,
                            comp_ok=lambda x, m: D.proj.mor[m] == D.base.ident[x])


def check_brace(I: IdStructure, a: SectionOf, b: SectionOf) -> Report:
    """Equation (α * {p} recovers p) and uniqueness of {p} by fiber search."""
    r = Report("factorisation {p}")
    ab = pair_sections_sem(a, b)
    for p in vertical_between(a, b):
        e = brace(p, a, b)
        up = upper_functor(I.Id, ab)
        r.check(whisker_left(I.alpha, up @ e.functor) == p, "α_A(a;b)•{p} ≠ p")
        # brute force: every section of Id_A[a;b] whose α-image is p
        hits = [s for s in sections(e.display)
                if whisker_left(I.alpha, up @ s.functor) == p]
        r.check(len(hits) == 1 and functor_eq(hits[0].functor, e.functor),
                f"{len(hits)} sections solve the factorisation")
    return r


def comp_rule_counterexample(A: PseudoFunctor, C: PseudoFunctor, c: SectionOf) -> dict:
    """Evidence that ``J_c[r_A] = c`` fails while ``H_c`` still inhabits the Id type."""
    I = build_id(A)
    jd = j_elim(I, C, c)
    Dr = jd.J_r.display
    fib = lambda s: [fmt(Dr.pf.fibers[d].objects[Dr.obj_pair[int(o)][1]])
                     for d, o in enumerate(s.functor.obj)]
    return {"judgmental": functor_eq(jd.J_r.functor, c.functor),
            "J[r]": fib(jd.J_r), "c": fib(c),
            "H_checks": check_j(I, jd).ok,
            "h": [fmt(Dr.total.morphisms[m]) for m in jd.h.comp]}
