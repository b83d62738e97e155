"""Grothendieck construction and the display-map plumbing of the weakened
groupoid model: totals, re-indexing, upper functors, pullback factorisation,
sections, and the cloven (not normal) transport structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .groupoid import (FinGroupoid, GroupoidFunctor, NatIso, PseudoFunctor, Report,
                       check_functor, check_groupoid, check_nat_iso, check_pseudofunctor,
                       composable_pairs, functor_key, fmt, functor_eq, identity_functor, identity_nat,
                       whisker_left, whisker_right)


class DisplayMap:
    """``P_A : Γ.A → Γ`` with bookkeeping between total ids and (base, fiber) ids."""

    def __init__(self, pf: PseudoFunctor):
        self.pf = pf
        self.base = pf.base
        B = pf.base
        obj_pair, obj_labels = [], []
        for b in range(B.n_obj):
            G = pf.fibers[b]
            for x in range(G.n_obj):
                obj_pair.append((b, x))
                obj_labels.append((B.objects[b], G.objects[x]))
        obj_of = {pr: i for i, pr in enumerate(obj_pair)}
        triples, mor_labels, src, tgt = [], [], [], []
        for p1 in range(B.n_mor):
            s, t = int(B.src[p1]), int(B.tgt[p1])
            S, T, Ap = pf.fibers[s], pf.fibers[t], pf.fmap[p1]
            for x in range(S.n_obj):
                y0 = int(Ap.obj[x])
                for p2 in _out_of(T, y0):
                    triples.append((p1, p2, x))
                    mor_labels.append((B.morphisms[p1], T.morphisms[p2], S.objects[x]))
                    src.append(obj_of[(s, x)])
                    tgt.append(obj_of[(t, int(T.tgt[p2]))])
        mor_of = {tr: i for i, tr in enumerate(triples)}
        n = len(triples)
        comp = np.full((n, n), -1, dtype=np.int64)
        by_src = {}
        for i, o in enumerate(src):
            by_src.setdefault(o, []).append(i)
        for f, (p1, p2, x) in enumerate(triples):
            for g in by_src.get(tgt[f], ()):
                q1, q2, _ = triples[g]
                qp = int(B.comp[q1, p1])
                T = pf.fibers[int(B.tgt[q1])]
                phi = int(pf.phi[(p1, q1)][x])
                m = T.chain(q2, int(pf.fmap[q1].mor[p2]), int(T.inv[phi]))
                comp[g, f] = mor_of[(qp, m, x)]
        ident = []
        for (b, x) in obj_pair:
            ident.append(mor_of[(int(B.ident[b]), int(pf.psi[b][x]), x)])
        inv = []
        for (p1, p2, x) in triples:
            s = int(B.src[p1])
            pi = int(B.inv[p1])
            S, T = pf.fibers[s], pf.fibers[int(B.tgt[p1])]
            x2 = int(T.tgt[p2])
            m = S.chain(int(pf.psi[s][x]), int(pf.phi[(p1, pi)][x]),
                        int(pf.fmap[pi].mor[int(T.inv[p2])]))
            inv.append(mor_of[(pi, m, x2)])
        name = f"{B.name}.{pf.name or 'A'}"
        self.total = FinGroupoid(obj_labels, mor_labels, src, tgt, comp, ident, inv, name)
        self.obj_pair, self.obj_of = obj_pair, obj_of
        self.triples, self.mor_of = triples, mor_of
        self.proj = GroupoidFunctor(self.total, B, [b for b, _ in obj_pair],
                                    [t[0] for t in triples], f"P_{pf.name or 'A'}")

    def __eq__(self, other):
        return isinstance(other, DisplayMap) and self.pf == other.pf

    __hash__ = object.__hash__

    def __repr__(self):
        return f"DisplayMap({self.total.name} -> {self.base.name})"

    def fiber_of(self, o):
        """(base id, fiber id) of a total object."""
        return self.obj_pair[o]


def _out_of(G, x):
    return [f for f in range(G.n_mor) if G.src[f] == x]


def total_groupoid(A: PseudoFunctor) -> DisplayMap:
    d = A._cache.get("total")
    if d is None:
        d = A._cache["total"] = DisplayMap(A)
    return d


def inverse_oracle(G: FinGroupoid) -> Report:
    """Brute-force inverse search against the stored inverse table."""
    r = Report(f"inverse oracle {G.name}")
    for f in range(G.n_mor):
        s, t = int(G.src[f]), int(G.tgt[f])
        found = [g for g in G.hom(t, s) if G.comp[g, f] == G.ident[s] and G.comp[f, g] == G.ident[t]]
        r.check(found == [int(G.inv[f])], f"inverse of {fmt(G.morphisms[f])}")
    return r


# ---------------------------------------------------------------- re-indexing

def reindex(A: PseudoFunctor, f: GroupoidFunctor, name=None) -> PseudoFunctor:
    """``A[f] = (A f, φ_{f-,f-}, ψ_{f-})``."""
    if f.cod != A.base:
        raise ValueError("re-indexing functor does not land in the base")
    memo = A._cache.setdefault("reindex", {})
    key = functor_key(f)
    hit = memo.get(key)
    if hit is not None and hit[0] is f.dom and hit[1] is f.cod:
        return hit[2]
    D = f.dom
    fibers = [A.fibers[int(f.obj[d])] for d in range(D.n_obj)]
    fmap = [A.fmap[int(f.mor[p])] for p in range(D.n_mor)]
    phi = {(p, q): A.phi[(int(f.mor[p]), int(f.mor[q]))] for p, q in composable_pairs(D)}
    psi = [A.psi[int(f.obj[d])] for d in range(D.n_obj)]
    out = PseudoFunctor(D, fibers, fmap, phi, psi, name or f"{A.name or 'A'}[{f.name or 'f'}]")
    memo[key] = (f.dom, f.cod, out)
    return out


def upper_functor(A: PseudoFunctor, f: GroupoidFunctor, Af: PseudoFunctor = None):
    """``f.A : Δ.A[f] → Γ.A``; (δ, x) ↦ (fδ, x), (p1, p2) ↦ (f p1, p2)."""
    Af = Af if Af is not None else reindex(A, f)
    DA, GA = total_groupoid(Af), total_groupoid(A)
    obj = [GA.obj_of[(int(f.obj[d]), x)] for d, x in DA.obj_pair]
    mor = [GA.mor_of[(int(f.mor[p1]), p2, x)] for p1, p2, x in DA.triples]
    return GroupoidFunctor(DA.total, GA.total, obj, mor, f"{f.name or 'f'}.{A.name or 'A'}")


def factor_pullback(A: PseudoFunctor, f: GroupoidFunctor, v: GroupoidFunctor,
                    u: GroupoidFunctor, Af: PseudoFunctor = None) -> GroupoidFunctor:
    """The unique ``w : X → Δ.A[f]`` with ``P w = v`` and ``f.A w = u``.

    Requires ``f v = P_A u`` strictly; raises otherwise.
    """
    Af = Af if Af is not None else reindex(A, f)
    DA, GA = total_groupoid(Af), total_groupoid(A)
    if not functor_eq(f @ v, GA.proj @ u):
        raise ValueError("pullback cone does not commute")
    obj = [DA.obj_of[(int(v.obj[o]), GA.obj_pair[int(u.obj[o])][1])]
           for o in range(v.dom.n_obj)]
    mor = []
    for m in range(v.dom.n_mor):
        _, p2, x = GA.triples[int(u.mor[m])]
        mor.append(DA.mor_of[(int(v.mor[m]), p2, x)])
    return GroupoidFunctor(v.dom, DA.total, obj, mor, f"<{v.name},{u.name}>")


def factor_2cell(A, f, beta: NatIso, gamma: NatIso, w1, w2, Af=None) -> NatIso:
    """2-dimensional factorisation: η : w1 ⇒ w2 with P*η = β and f.A*η = γ."""
    Af = Af if Af is not None else reindex(A, f)
    DA, GA = total_groupoid(Af), total_groupoid(A)
    comp = []
    for o in range(w1.dom.n_obj):
        _, p2, x = GA.triples[int(gamma.comp[o])]
        comp.append(DA.mor_of[(int(beta.comp[o]), p2, x)])
    return NatIso(w1, w2, comp, "η")


# ---------------------------------------------------------------- sections

@dataclass(eq=False)
class SectionOf:
    display: DisplayMap
    functor: GroupoidFunctor

    def check(self) -> Report:
        r = Report(f"section {self.functor.name or '?'}")
        F = self.functor
        r.check(F.dom == self.display.base and F.cod == self.display.total,
                "section has the wrong (co)domain")
        if not r.ok:
            return r
        sub = check_functor(F)
        if not sub.ok:
            r.add(sub)
        r.check(functor_eq(self.display.proj @ F, identity_functor(self.display.base)),
                "P∘s is not the identity")
        return r

    def fiber_objects(self):
        return [self.display.obj_pair[int(o)][1] for o in self.functor.obj]

    def __eq__(self, other):
        return (isinstance(other, SectionOf) and self.display == other.display
                and functor_eq(self.functor, other.functor))

    __hash__ = object.__hash__


def reindex_section(s: SectionOf, g: GroupoidFunctor, Ag=None) -> SectionOf:
    """``s[g]``: the section of ``A[g]`` with ``g.A ∘ s[g] = s ∘ g``."""
    A = s.display.pf
    Ag = Ag if Ag is not None else reindex(A, g)
    w = factor_pullback(A, g, identity_functor(g.dom), s.functor @ g, Ag)
    w.name = f"{s.functor.name}[{g.name}]"
    return SectionOf(total_groupoid(Ag), w)


def sections(D: DisplayMap, limit=None):
    """Enumerate all sections of a display map."""
    from .groupoid import functors_between
    B, T = D.base, D.total
    fibers = {b: [o for o, (bb, _) in enumerate(D.obj_pair) if bb == b] for b in range(B.n_obj)}
    Fs = functors_between(B, T, obj_choices=lambda x: fibers[x],
                          mor_ok=lambda k, g: D.triples[g][0] == k, limit=limit)
    return [SectionOf(D, F) for F in Fs]


def weakening(A: PseudoFunctor) -> PseudoFunctor:
    """``A▽ = A[P_A]`` over ``Γ.A``."""
    d = A._cache.get("weak")
    if d is None:
        D = total_groupoid(A)
        d = A._cache["weak"] = reindex(A, D.proj, f"{A.name or 'A'}▽")
    return d


def diagonal(A: PseudoFunctor) -> GroupoidFunctor:
    """``δ_A : Γ.A → Γ.A.A▽``."""
    D = total_groupoid(A)
    one = identity_functor(D.total)
    w = factor_pullback(A, D.proj, one, one, weakening(A))
    w.name = f"δ_{A.name or 'A'}"
    return w


def pair_sections_sem(a: SectionOf, b: SectionOf) -> GroupoidFunctor:
    """``a;b : Γ → Γ.A.A▽``."""
    A = a.display.pf
    if b.display.pf is not A and b.display != a.display:
        raise ValueError("pairing needs two sections of the same display map")
    w = factor_pullback(A, a.display.proj, a.functor, b.functor, weakening(A))
    w.name = f"{a.functor.name};{b.functor.name}"
    return w


# ---------------------------------------------------------------- transport

def cloven_transport(D: DisplayMap, g: GroupoidFunctor, pi: NatIso):
    """Chosen lift ``(t_g^π, τ_g^π)`` of ``π : f ⇒ P∘g``.

    Objects go to (fδ, A_{π_δ⁻¹} g2δ); morphisms follow the chain
    φ, φ⁻¹, A_{π_δ'⁻¹}(g2 p).  τ_δ = (π_δ, ψ ∘ φ_{π_δ⁻¹, π_δ}).
    """
    A, B = D.pf, D.base
    f = pi.F
    if not functor_eq(pi.G, D.proj @ g):
        raise ValueError("π must end at P∘g")
    X = g.dom
    pinv = [int(B.inv[c]) for c in pi.comp]
    obj, g2 = [], []
    for d in range(X.n_obj):
        _, y = D.obj_pair[int(g.obj[d])]
        g2.append(y)
        obj.append(D.obj_of[(int(f.obj[d]), int(A.fmap[pinv[d]].obj[y]))])
    mor = []
    for p in range(X.n_mor):
        d, d2 = int(X.src[p]), int(X.tgt[p])
        fp = int(f.mor[p])
        g1p, g2p, _ = D.triples[int(g.mor[p])]
        T = A.fibers[int(B.tgt[fp])]
        step1 = int(A.phi[(pinv[d], fp)][g2[d]])
        step2 = int(T.inv[int(A.phi[(g1p, pinv[d2])][g2[d]])])
        step3 = int(A.fmap[pinv[d2]].mor[g2p])
        m = T.chain(step3, step2, step1)
        src_fiber = D.obj_pair[obj[d]][1]
        mor.append(D.mor_of[(fp, m, src_fiber)])
    t = GroupoidFunctor(X, D.total, obj, mor, f"t[{g.name}]")
    comp = []
    for d in range(X.n_obj):
        g1d = int(B.tgt[int(pi.comp[d])])
        y = g2[d]
        F = A.fibers[g1d]
        m = F.compose(int(A.psi[g1d][y]), int(A.phi[(pinv[d], int(pi.comp[d]))][y]))
        comp.append(D.mor_of[(int(pi.comp[d]), m, D.obj_pair[obj[d]][1])])
    tau = NatIso(t, g, comp, f"τ[{g.name}]")
    return t, tau


# ---------------------------------------------------------------- checks

def strict_pullback(f: GroupoidFunctor, P: GroupoidFunctor):
    """Objects and morphisms of the strict pullback of ``f`` and ``P``."""
    objs = [(d, e) for d in range(f.dom.n_obj) for e in range(P.dom.n_obj)
            if f.obj[d] == P.obj[e]]
    mors = [(p, q) for p in range(f.dom.n_mor) for q in range(P.dom.n_mor)
            if f.mor[p] == P.mor[q]]
    return objs, mors


def check_pullback(top: GroupoidFunctor, left: GroupoidFunctor, right: GroupoidFunctor,
                   bottom: GroupoidFunctor, name="square") -> Report:
    """Strict pullback test: the comparison functor into the explicit pullback
    is bijective on objects and on morphisms."""
    r = Report(f"pullback {name}")
    if not r.check(functor_eq(bottom @ left, right @ top), "square does not commute"):
        return r
    objs, mors = strict_pullback(bottom, right)
    X = top.dom
    img_o = [(int(left.obj[x]), int(top.obj[x])) for x in range(X.n_obj)]
    img_m = [(int(left.mor[m]), int(top.mor[m])) for m in range(X.n_mor)]
    r.check(len(set(img_o)) == len(img_o) == len(objs) and set(img_o) == set(objs),
            f"comparison is not bijective on objects ({len(img_o)} vs {len(objs)})")
    r.check(len(set(img_m)) == len(img_m) == len(mors) and set(img_m) == set(mors),
            f"comparison is not bijective on morphisms ({len(img_m)} vs {len(mors)})")
    return r


def check_2pullback(A, f, cones, Af=None) -> Report:
    """Unique 2-cell factorisation for cones (w1, w2, β, γ)."""
    Af = Af if Af is not None else reindex(A, f)
    DA, GA = total_groupoid(Af), total_groupoid(A)
    up = upper_functor(A, f, Af)
    r = Report("2-pullback factorisation")
    for k, (w1, w2, beta, gamma) in enumerate(cones):
        if not r.check(np.array_equal(f.mor[beta.comp], GA.proj.mor[gamma.comp]),
                       f"cone {k}: f*β ≠ P*γ"):
            continue
        comp = []
        for o in range(w1.dom.n_obj):
            cands = [m for m in DA.total.hom(int(w1.obj[o]), int(w2.obj[o]))
                     if DA.proj.mor[m] == beta.comp[o] and up.mor[m] == gamma.comp[o]]
            if not r.check(len(cands) == 1, f"cone {k}: {len(cands)} candidate components"):
                break
            comp.append(cands[0])
        else:
            eta = NatIso(w1, w2, comp)
            r.check(check_nat_iso(eta).ok, f"cone {k}: factorisation is not natural")
    return r


def check_display(A: PseudoFunctor) -> Report:
    r = Report(f"display map {A.name}")
    r.add(check_pseudofunctor(A))
    if not r.ok:
        return r
    D = total_groupoid(A)
    r.add(check_groupoid(D.total))
    r.add(inverse_oracle(D.total))
    r.add(check_functor(D.proj))
    return r


def check_reindex_square(A, f) -> Report:
    """The re-indexing square is a pullback, with the counting oracle."""
    Af = reindex(A, f)
    DA, GA = total_groupoid(Af), total_groupoid(A)
    up = upper_functor(A, f, Af)
    r = check_pullback(up, DA.proj, GA.proj, f, f"{A.name} along {f.name}")
    want = sum(A.fibers[int(f.obj[d])].n_obj for d in range(f.dom.n_obj))
    r.check(DA.total.n_obj == want, f"object count {DA.total.n_obj} ≠ Σ|A_fδ| = {want}")
    return r


def check_splitness(A, fs, gs_for) -> Report:
    """Splitness equations on all composable pairs from the supplied functors.

    ``gs_for(f)`` yields functors composable before ``f``.
    """
    r = Report(f"splitness of {A.name}")
    one = identity_functor(A.base)
    r.check(reindex(A, one) == A, "P_{A[1]} ≠ P_A")
    D = total_groupoid(A)
    r.check(functor_eq(upper_functor(A, one), identity_functor(D.total)), "(1).A ≠ 1")
    for f in fs:
        Af = reindex(A, f)
        uf = upper_functor(A, f, Af)
        for g in gs_for(f):
            Afg = reindex(A, f @ g)
            r.check(reindex(Af, g) == Afg,
                    f"P_A[{f.name}∘{g.name}] ≠ P_A[{f.name}][{g.name}]")
            lhs = uf @ upper_functor(Af, g)
            rhs = upper_functor(A, f @ g, Afg)
            r.check(functor_eq(lhs, rhs), f"({f.name}.A)({g.name}.A[f]) ≠ (fg).A")
    return r


def check_transport(D: DisplayMap, g, pi, hs=()) -> Report:
    """P∘t = f, P*τ = π, naturality, and the cleavage laws along each h."""
    r = Report(f"cloven transport of {g.name}")
    t, tau = cloven_transport(D, g, pi)
    sub = check_functor(t)
    if not sub.ok:
        r.add(sub)
        return r
    r.check(functor_eq(D.proj @ t, pi.F), "P∘t ≠ f")
    sub = check_nat_iso(tau)
    if not sub.ok:
        r.add(sub)
    r.check(whisker_right(D.proj, tau) == pi, "P*τ ≠ π")
    for h in hs:
        t2, tau2 = cloven_transport(D, g @ h, whisker_left(pi, h))
        r.check(functor_eq(t2, t @ h), f"t_(g{h.name})^(π*{h.name}) ≠ t∘{h.name}")
        r.check(tau2 == whisker_left(tau, h), f"τ_(g{h.name})^(π*{h.name}) ≠ τ*{h.name}")
    return r


def is_normal_at(D: DisplayMap, g) -> bool:
    """Does lifting the identity 2-cell at g return g with identity τ?"""
    pi = identity_nat(D.proj @ g)
    t, tau = cloven_transport(D, g, pi)
    return functor_eq(t, g) and np.array_equal(tau.comp, D.total.ident[g.obj])


# ---------------------------------------------------------------- generated 2-cells

@dataclass(eq=False)
class TwoCellOver:
    """A 2-cell into a total groupoid together with its declared base 2-cell."""
    cell: NatIso
    display: DisplayMap
    base: NatIso = None

    def __post_init__(self):
        if self.base is None:
            self.base = whisker_right(self.display.proj, self.cell)

    def check(self) -> Report:
        r = Report(f"2-cell over {self.display.base.name}")
        r.add(check_nat_iso(self.cell))
        r.check(whisker_right(self.display.proj, self.cell) == self.base,
                "projection does not recover the base 2-cell")
        return r

    def is_vertical(self) -> bool:
        from .groupoid import is_identity_nat
        return is_identity_nat(self.base)


def conjugate(F: GroupoidFunctor, comps, name="") -> NatIso:
    """Given ``comps[x] : c_x → F x``, the functor ``x ↦ c_x`` (conjugated action)
    and the 2-cell ``comps`` from it to ``F``."""
    C = F.cod
    X = F.dom
    comps = [int(c) for c in comps]
    obj = [int(C.src[c]) for c in comps]
    mor = [C.chain(int(C.inv[comps[int(X.tgt[m])]]), int(F.mor[m]), comps[int(X.src[m])])
           for m in range(X.n_mor)]
    G = GroupoidFunctor(X, C, obj, mor, name or f"{F.name}'")
    return NatIso(G, F, comps, f"κ[{F.name}]")


def cells_into(F: GroupoidFunctor, ok=None, limit=16):
    """Up to ``limit`` 2-cells ``G ⇒ F`` obtained by conjugation, in a fixed order."""
    C = F.cod
    choices = []
    for x in range(F.dom.n_obj):
        ins = [m for m in range(C.n_mor) if C.tgt[m] == F.obj[x] and (ok is None or ok(m))]
        choices.append(ins)
    out = []
    for combo in product(*choices):
        out.append(conjugate(F, combo))
        if len(out) >= limit:
            break
    return out


def vertical_cells_into(D: DisplayMap, F: GroupoidFunctor, limit=16):
    """2-cells into F whose projection along D is an identity."""
    vert = lambda m: D.proj.mor[m] == D.base.ident[D.proj.obj[D.total.src[m]]]
    return cells_into(F, vert, limit)


def transport_cones(A, f, limit=8):
    """Cones for the 2-pullback test generated from the model's own transports.

    For sections and the identity of Δ.A[f], lift conjugating base 2-cells;
    each (t, g, P*τ, f.A*τ) must factor uniquely, through τ.
    """
    Af = reindex(A, f)
    DA = total_groupoid(Af)
    up = upper_functor(A, f, Af)
    gs = [identity_functor(DA.total, "1")]
    gs += [s.functor @ DA.proj for s in sections(DA, limit=2)]
    cones, taus = [], []
    for g in gs:
        for pi in cells_into(DA.proj @ g, limit=limit):
            t, tau = cloven_transport(DA, g, pi)
            cones.append((t, g, whisker_right(DA.proj, tau), whisker_right(up, tau)))
            taus.append(tau)
    return cones, taus


def check_transport_stability(A: PseudoFunctor, C: PseudoFunctor, f: GroupoidFunctor,
                              limit=8, transport=None) -> Report:
    """Fourth-bullet compatibility of transport with re-indexing.

    Instances: Ω = Δ.A[f], g' a section of C[f.A] composed with a vertical
    conjugation p' : h' ⇒ P g'; then g = f.A.C g', p = f.A * p'.  Checks
    f.A.C ∘ t_{g'}^{p'} = t_g^p and f.A.C * τ' = τ.
    """
    transport = transport or cloven_transport
    r = Report(f"transport stability of {C.name} along {f.name}")
    Af = reindex(A, f)
    DAf = total_groupoid(Af)
    fA = upper_functor(A, f, Af)
    Cf = reindex(C, fA)
    DC, DCf = total_groupoid(C), total_groupoid(Cf)
    fAC = upper_functor(C, fA, Cf)
    for s in sections(DCf, limit=limit):
        g2 = s.functor
        for p2 in vertical_cells_into(DAf, DCf.proj @ g2, limit=limit):
            t2, tau2 = transport(DCf, g2, p2)
            g = fAC @ g2
            p = whisker_right(fA, p2)
            t, tau = transport(DC, g, p)
            r.check(functor_eq(fAC @ t2, t), f"t[f.A] ≠ t' at section {g2.name}")
            r.check(whisker_right(fAC, tau2) == tau, f"τ[f.A] ≠ τ' at section {g2.name}")
    if r.checks == 0:
        r.check(True, "no instances (empty section set)")
    return r
