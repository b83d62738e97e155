"""Finite groupoids, functors, natural isomorphisms and pseudofunctors.

Objects and morphisms are interned as integer ids; labels are kept for
display and for label-level equality.  Composition is a dense table with
-1 for non-composable pairs.  All law checks are exhaustive and return a
``Report`` rather than raising.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import product

import numpy as np

DEFAULT_MAX_SIZE = 64
_override = None


class SizeLimitError(ValueError):
    pass


def max_size() -> int:
    if _override is not None:
        return _override
    env = os.environ.get("ATT_MAX_GROUPOID_SIZE")
    return int(env) if env else DEFAULT_MAX_SIZE


def set_max_size(n):
    """Override the morphism soft limit; ``None`` restores the default."""
    global _override
    _override = n


@contextmanager
def size_limit(n):
    """Temporarily raise (never lower) the soft limit to ``n``."""
    global _override
    old = _override
    _override = max(n, max_size())
    try:
        yield
    finally:
        _override = old


def fmt(label) -> str:
    """Compact text for a (possibly nested) label."""
    if isinstance(label, tuple):
        return "(" + ",".join(fmt(x) for x in label) + ")"
    return str(label)


# ---------------------------------------------------------------- reports

@dataclass
class Report:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    children: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def note(self, msg):
        """Record something skipped; notes never fail a report."""
        self.notes.append(msg)

    def all_notes(self):
        out = [f"{self.name}: {m}" for m in self.notes]
        for c in self.children:
            out.extend(f"{self.name} / {m}" for m in c.all_notes())
        return out

    def check(self, cond, msg) -> bool:
        self.checks += 1
        if not cond:
            self.failures.append(msg)
        return bool(cond)

    def fail(self, msg):
        self.checks += 1
        self.failures.append(msg)

    def add(self, child: "Report") -> "Report":
        self.children.append(child)
        return child

    @property
    def ok(self) -> bool:
        return not self.failures and all(c.ok for c in self.children)

    def total_checks(self) -> int:
        return self.checks + sum(c.total_checks() for c in self.children)

    def all_failures(self):
        out = [f"{self.name}: {m}" for m in self.failures]
        for c in self.children:
            out.extend(f"{self.name} / {m}" for m in c.all_failures())
        return out

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "checks": self.checks,
                "failures": list(self.failures), "notes": list(self.notes),
                "children": [c.to_dict() for c in self.children]}

    def render(self, depth=0, limit=5) -> str:
        mark = "PASS" if self.ok else "FAIL"
        lines = [f"{'  ' * depth}[{mark}] {self.name} ({self.total_checks()} checks)"]
        for m in self.failures[:limit]:
            lines.append(f"{'  ' * depth}    - {m}")
        if len(self.failures) > limit:
            lines.append(f"{'  ' * depth}    ... {len(self.failures) - limit} more")
        for m in self.notes[:limit]:
            lines.append(f"{'  ' * depth}    note: {m}")
        for c in self.children:
            lines.append(c.render(depth + 1, limit))
        return "\n".join(lines)

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------- groupoids

class FinGroupoid:
    __slots__ = ("objects", "morphisms", "src", "tgt", "comp", "ident", "inv", "name",
                 "obj_index", "mor_index", "_hom", "_hash", "_pairs")

    def __init__(self, objects, morphisms, src, tgt, comp, ident, inv, name="",
                 enforce_limit=True):
        if enforce_limit and len(morphisms) > max_size():
            raise SizeLimitError(
                f"groupoid {name or '?'} has {len(morphisms)} morphisms, over the limit "
                f"of {max_size()} (raise it with --max-size or ATT_MAX_GROUPOID_SIZE)")
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.src = np.asarray(src, dtype=np.int64)
        self.tgt = np.asarray(tgt, dtype=np.int64)
        self.comp = np.asarray(comp, dtype=np.int64).reshape(len(morphisms), len(morphisms))
        self.ident = np.asarray(ident, dtype=np.int64)
        self.inv = np.asarray(inv, dtype=np.int64)
        self.name = name
        self.obj_index = {o: i for i, o in enumerate(self.objects)}
        self.mor_index = {m: i for i, m in enumerate(self.morphisms)}
        if len(self.obj_index) != len(self.objects) or len(self.mor_index) != len(self.morphisms):
            raise ValueError(f"groupoid {name}: duplicate labels")
        self._hom = None
        self._hash = None
        self._pairs = None

    # construction helpers
    @classmethod
    def build(cls, objects, morphisms, compose, identity, inverse=None, name=""):
        """``morphisms`` is a list of (label, src label, tgt label); ``compose(g, f)``
        returns the label of g∘f; ``identity(o)`` the identity label."""
        objects = list(objects)
        oi = {o: i for i, o in enumerate(objects)}
        labels = [m[0] for m in morphisms]
        mi = {m: i for i, m in enumerate(labels)}
        n = len(labels)
        src = [oi[m[1]] for m in morphisms]
        tgt = [oi[m[2]] for m in morphisms]
        comp = np.full((n, n), -1, dtype=np.int64)
        for g in range(n):
            for f in range(n):
                if tgt[f] == src[g]:
                    comp[g, f] = mi[compose(labels[g], labels[f])]
        ident = [mi[identity(o)] for o in objects]
        if inverse is not None:
            inv = [mi[inverse(m)] for m in labels]
        else:
            inv = []
            for f in range(n):
                cands = [g for g in range(n) if src[g] == tgt[f]
                         and comp[g, f] == ident[src[f]]]
                inv.append(cands[0] if cands else f)
        return cls(objects, labels, src, tgt, comp, ident, inv, name)

    @classmethod
    def trivial(cls, name="1"):
        return cls(["*"], ["1"], [0], [0], [[0]], [0], [0], name)

    @classmethod
    def discrete(cls, labels, name=""):
        labels = list(labels)
        n = len(labels)
        comp = np.full((n, n), -1, dtype=np.int64)
        for i in range(n):
            comp[i, i] = i
        return cls(labels, [("1", o) for o in labels], range(n), range(n), comp,
                   range(n), range(n), name)

    @classmethod
    def codiscrete(cls, labels, name=""):
        labels = list(labels)
        mors = [((a, b), a, b) for a in labels for b in labels]
        return cls.build(labels, mors, lambda g, f: (f[0], g[1]), lambda o: (o, o),
                         lambda m: (m[1], m[0]), name)

    @classmethod
    def group(cls, elements, mul, unit, name="", obj="*"):
        """One-object groupoid; ``mul(g, f)`` is g∘f."""
        elements = list(elements)
        return cls.build([obj], [(e, obj, obj) for e in elements], mul, lambda o: unit,
                         None, name)

    @classmethod
    def cyclic(cls, n, name=""):
        names = ["e"] + [f"g{k}" for k in range(1, n)] if n > 2 else ["e", "s"][:n]
        idx = {x: k for k, x in enumerate(names)}
        return cls.group(names, lambda g, f: names[(idx[g] + idx[f]) % n], "e",
                         name or f"Z{n}")

    # access
    @property
    def n_obj(self):
        return len(self.objects)

    @property
    def n_mor(self):
        return len(self.morphisms)

    def o(self, label) -> int:
        return self.obj_index[label]

    def m(self, label) -> int:
        return self.mor_index[label]

    def compose(self, g, f) -> int:
        r = int(self.comp[g, f])
        if r < 0:
            raise ValueError(f"{self.name}: {fmt(self.morphisms[g])} and "
                             f"{fmt(self.morphisms[f])} are not composable")
        return r

    def chain(self, *ms) -> int:
        """``chain(a, b, c) = a∘b∘c``."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.compose(g, out)
        return out

    def hom(self, x, y) -> list:
        if self._hom is None:
            h = {}
            for f in range(self.n_mor):
                h.setdefault((int(self.src[f]), int(self.tgt[f])), []).append(f)
            self._hom = h
        return self._hom.get((x, y), [])

    def is_discrete(self) -> bool:
        return self.n_mor == self.n_obj

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinGroupoid):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and np.array_equal(self.src, other.src) and np.array_equal(self.tgt, other.tgt)
                and np.array_equal(self.comp, other.comp)
                and np.array_equal(self.ident, other.ident))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.objects), tuple(self.morphisms)))
        return self._hash

    def __repr__(self):
        return f"FinGroupoid({self.name or '?'}: {self.n_obj} obj, {self.n_mor} mor)"


def check_groupoid(G: FinGroupoid) -> Report:
    r = Report(f"groupoid {G.name or '?'}")
    n = G.n_mor
    lab = lambda f: fmt(G.morphisms[f])
    for g, f in product(range(n), range(n)):
        h = int(G.comp[g, f])
        if G.tgt[f] == G.src[g]:
            if not r.check(h >= 0, f"composite {lab(g)}∘{lab(f)} undefined"):
                continue
            r.check(G.src[h] == G.src[f] and G.tgt[h] == G.tgt[g],
                    f"composite {lab(g)}∘{lab(f)} has wrong endpoints")
        else:
            r.check(h < 0, f"non-composable pair {lab(g)}, {lab(f)} has a composite")
    if r.failures:
        return r
    for x in range(G.n_obj):
        i = int(G.ident[x])
        r.check(G.src[i] == x and G.tgt[i] == x, f"identity of {fmt(G.objects[x])} misplaced")
    for f in range(n):
        s, t = int(G.src[f]), int(G.tgt[f])
        r.check(G.comp[f, G.ident[s]] == f and G.comp[G.ident[t], f] == f,
                f"unit law violated at {lab(f)}")
        fi = int(G.inv[f])
        ok = (G.src[fi] == t and G.tgt[fi] == s and G.comp[fi, f] == G.ident[s]
              and G.comp[f, fi] == G.ident[t])
        r.check(ok, f"inverse law violated at {lab(f)}")
    outs = [_out(G, x) for x in range(G.n_obj)]
    for f in range(n):
        for g in outs[int(G.tgt[f])]:
            gf = int(G.comp[g, f])
            for h in outs[int(G.tgt[g])]:
                if G.comp[h, gf] != G.comp[G.comp[h, g], f]:
                    r.fail(f"associativity violated at {lab(h)}, {lab(g)}, {lab(f)}")
    return r


def _out(G, x):
    return [f for f in range(G.n_mor) if G.src[f] == x]


# ---------------------------------------------------------------- functors

class GroupoidFunctor:
    __slots__ = ("dom", "cod", "obj", "mor", "name")

    def __init__(self, dom, cod, obj, mor, name=""):
        self.dom, self.cod = dom, cod
        self.obj = np.asarray(obj, dtype=np.int64)
        self.mor = np.asarray(mor, dtype=np.int64)
        self.name = name

    @classmethod
    def from_labels(cls, dom, cod, obj_map, mor_map, name=""):
        obj = [cod.o(obj_map[o] if isinstance(obj_map, dict) else obj_map(o))
               for o in dom.objects]
        mor = [cod.m(mor_map[m] if isinstance(mor_map, dict) else mor_map(m))
               for m in dom.morphisms]
        return cls(dom, cod, obj, mor, name)

    def __matmul__(self, other: "GroupoidFunctor") -> "GroupoidFunctor":
        """``G @ F`` is G∘F."""
        if other.cod != self.dom:
            raise ValueError("functors are not composable")
        return GroupoidFunctor(other.dom, self.cod, self.obj[other.obj], self.mor[other.mor],
                               f"{self.name}∘{other.name}")

    def __eq__(self, other):
        return isinstance(other, GroupoidFunctor) and functor_eq(self, other)

    __hash__ = object.__hash__

    def __repr__(self):
        return f"Functor({self.name or '?'}: {self.dom.name} -> {self.cod.name})"


def identity_functor(G, name="1") -> GroupoidFunctor:
    return GroupoidFunctor(G, G, np.arange(G.n_obj), np.arange(G.n_mor), name)


def functor_eq(F: GroupoidFunctor, G: GroupoidFunctor) -> bool:
    return (F is G) or (F.dom == G.dom and F.cod == G.cod and np.array_equal(F.obj, G.obj)
                        and np.array_equal(F.mor, G.mor))


def check_functor(F: GroupoidFunctor) -> Report:
    r = Report(f"functor {F.name or '?'}")
    D, C = F.dom, F.cod
    if not r.check(len(F.obj) == D.n_obj and len(F.mor) == D.n_mor, "map sizes"):
        return r
    for f in range(D.n_mor):
        g = int(F.mor[f])
        r.check(C.src[g] == F.obj[D.src[f]] and C.tgt[g] == F.obj[D.tgt[f]],
                f"endpoints not preserved at {fmt(D.morphisms[f])}")
    for x in range(D.n_obj):
        r.check(F.mor[D.ident[x]] == C.ident[F.obj[x]],
                f"identity not preserved at {fmt(D.objects[x])}")
    for g, f in product(range(D.n_mor), repeat=2):
        h = D.comp[g, f]
        if h >= 0:
            r.check(F.mor[h] == C.comp[F.mor[g], F.mor[f]],
                    f"composition not preserved at {fmt(D.morphisms[g])}∘{fmt(D.morphisms[f])}")
    return r


# ---------------------------------------------------------------- 2-cells

class NatIso:
    """``α : F ⇒ G`` with ``comp[x] : F x → G x`` in the codomain."""
    __slots__ = ("F", "G", "comp", "name")

    def __init__(self, F, G, comp, name=""):
        self.F, self.G = F, G
        self.comp = np.asarray(comp, dtype=np.int64)
        self.name = name

    def __eq__(self, other):
        return (isinstance(other, NatIso) and functor_eq(self.F, other.F)
                and functor_eq(self.G, other.G) and np.array_equal(self.comp, other.comp))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"NatIso({self.name or '?'})"


def identity_nat(F, name="") -> NatIso:
    return NatIso(F, F, F.cod.ident[F.obj], name or f"1_{F.name}")


def is_identity_nat(a: NatIso) -> bool:
    return functor_eq(a.F, a.G) and np.array_equal(a.comp, a.F.cod.ident[a.F.obj])


def check_nat_iso(a: NatIso) -> Report:
    r = Report(f"2-cell {a.name or '?'}")
    F, G = a.F, a.G
    D, C = F.dom, F.cod
    if not r.check(D == G.dom and C == G.cod, "functors are not parallel"):
        return r
    for x in range(D.n_obj):
        c = int(a.comp[x])
        r.check(C.src[c] == F.obj[x] and C.tgt[c] == G.obj[x],
                f"component at {fmt(D.objects[x])} has wrong endpoints")
    if r.failures:
        return r
    for f in range(D.n_mor):
        x, y = int(D.src[f]), int(D.tgt[f])
        lhs = C.comp[G.mor[f], a.comp[x]]
        rhs = C.comp[a.comp[y], F.mor[f]]
        r.check(lhs == rhs, f"naturality fails at {fmt(D.morphisms[f])}")
    return r


def vertical(b: NatIso, a: NatIso) -> NatIso:
    """``b ∘ a`` for ``a : F ⇒ G``, ``b : G ⇒ H``."""
    C = a.F.cod
    comp = [C.comp[b.comp[x], a.comp[x]] for x in range(a.F.dom.n_obj)]
    return NatIso(a.F, b.G, comp, f"{b.name}∘{a.name}")


def inverse_nat(a: NatIso) -> NatIso:
    return NatIso(a.G, a.F, a.F.cod.inv[a.comp], f"{a.name}⁻¹")


def whisker_right(K: GroupoidFunctor, a: NatIso) -> NatIso:
    """``K * a``: post-compose with K."""
    return NatIso(K @ a.F, K @ a.G, K.mor[a.comp], f"{K.name}*{a.name}")


def whisker_left(a: NatIso, H: GroupoidFunctor) -> NatIso:
    """``a * H``: pre-compose with H."""
    return NatIso(a.F @ H, a.G @ H, a.comp[H.obj], f"{a.name}*{H.name}")


def horizontal(b: NatIso, a: NatIso) -> NatIso:
    """``b * a`` for ``a : F ⇒ G : X → Y`` and ``b : K ⇒ L : Y → Z``."""
    return vertical(whisker_left(b, a.G), whisker_right(b.F, a))


def functors_between(D: FinGroupoid, C: FinGroupoid, obj_choices=None, mor_ok=None,
                     limit=None):
    """Enumerate all functors D → C by backtracking.

    ``obj_choices(x)`` restricts object images; ``mor_ok(f, g)`` restricts morphism
    images.  Morphisms are assigned in order and checked against every already
    assigned composite, so only functors are produced.
    """
    objs = [list(obj_choices(x)) if obj_choices else list(range(C.n_obj))
            for x in range(D.n_obj)]
    # composition constraints (a, b, a∘b) grouped by the last index assigned
    late = [[] for _ in range(D.n_mor)]
    for a, b in product(range(D.n_mor), repeat=2):
        h = int(D.comp[a, b])
        if h >= 0:
            late[max(a, b, h)].append((a, b, h))
    ident_set = set(int(i) for i in D.ident)
    out = []
    obj = [-1] * D.n_obj
    mor = [-1] * D.n_mor

    def mor_rec(k):
        if limit is not None and len(out) >= limit:
            return
        if k == D.n_mor:
            out.append(GroupoidFunctor(D, C, list(obj), list(mor)))
            return
        x, y = int(D.src[k]), int(D.tgt[k])
        cands = [int(C.ident[obj[x]])] if k in ident_set else C.hom(obj[x], obj[y])
        for g in cands:
            if mor_ok is not None and not mor_ok(k, g):
                continue
            mor[k] = g
            if all(C.comp[mor[a], mor[b]] == mor[h] for a, b, h in late[k]):
                mor_rec(k + 1)
        mor[k] = -1

    def obj_rec(i):
        if i == D.n_obj:
            mor_rec(0)
            return
        for o in objs[i]:
            obj[i] = o
            obj_rec(i + 1)
        obj[i] = -1

    obj_rec(0)
    return [F for F in out if check_functor(F).ok]


def nat_isos_between(F: GroupoidFunctor, G: GroupoidFunctor, comp_ok=None):
    """All natural isomorphisms ``F ⇒ G``, optionally filtering components."""
    D, C = F.dom, F.cod
    choices = []
    for x in range(D.n_obj):
        cs = C.hom(int(F.obj[x]), int(G.obj[x]))
        if comp_ok is not None:
            cs = [c for c in cs if comp_ok(x, c)]
        choices.append(cs)
    out = []
    for combo in product(*choices):
        a = NatIso(F, G, combo)
        if check_nat_iso(a).ok:
            out.append(a)
    return out


# ---------------------------------------------------------------- pseudofunctors

class PseudoFunctor:
    """``(A, φ, ψ) : Γ → Grpd``.

    ``fibers[γ]`` is a FinGroupoid, ``fmap[p]`` the functor ``A_p``,
    ``phi[(p, q)][x] : A_q A_p x → A_{qp} x`` for composable p then q, and
    ``psi[γ][x] : A_{1_γ} x → x``.
    """

    def __init__(self, base, fibers, fmap, phi, psi, name=""):
        self.base = base
        self.fibers = tuple(fibers)
        self.fmap = tuple(fmap)
        self.phi = {k: np.asarray(v, dtype=np.int64) for k, v in phi.items()}
        self.psi = tuple(np.asarray(v, dtype=np.int64) for v in psi)
        self.name = name
        self._cache = {}

    @classmethod
    def strict(cls, base, fibers, fmap, name=""):
        """Identity coherence data; valid only if ``fmap`` is strictly functorial."""
        phi = {}
        for p, q in composable_pairs(base):
            qp = int(base.comp[q, p])
            Fq, Fp, Fqp = fmap[q], fmap[p], fmap[qp]
            tgt = fibers[int(base.tgt[q])]
            phi[(p, q)] = [int(tgt.ident[Fqp.obj[x]]) if Fq.obj[Fp.obj[x]] == Fqp.obj[x]
                           else -1 for x in range(fibers[int(base.src[p])].n_obj)]
        psi = []
        for g in range(base.n_obj):
            F1 = fmap[int(base.ident[g])]
            G = fibers[g]
            psi.append([int(G.ident[x]) if F1.obj[x] == x else -1 for x in range(G.n_obj)])
        return cls(base, fibers, fmap, phi, psi, name)

    @classmethod
    def constant(cls, base, G, name=""):
        return cls.strict(base, [G] * base.n_obj,
                          [identity_functor(G) for _ in range(base.n_mor)], name)

    def phi_nat(self, p, q) -> NatIso:
        qp = int(self.base.comp[q, p])
        return NatIso(self.fmap[q] @ self.fmap[p], self.fmap[qp], self.phi[(p, q)],
                      f"φ[{fmt(self.base.morphisms[p])},{fmt(self.base.morphisms[q])}]")

    def psi_nat(self, g) -> NatIso:
        G = self.fibers[g]
        return NatIso(self.fmap[int(self.base.ident[g])], identity_functor(G), self.psi[g],
                      f"ψ[{fmt(self.base.objects[g])}]")

    def is_strict(self) -> bool:
        for (p, q), comp in self.phi.items():
            G = self.fibers[int(self.base.tgt[q])]
            if any(G.src[c] != G.tgt[c] or G.ident[G.src[c]] != c for c in comp):
                return False
        for g, comp in enumerate(self.psi):
            G = self.fibers[g]
            if any(G.ident[G.src[c]] != c or G.src[c] != G.tgt[c] for c in comp):
                return False
        return True

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PseudoFunctor):
            return NotImplemented
        return (self.base == other.base
                and all(a is b or a == b for a, b in zip(self.fibers, other.fibers))
                and len(self.fibers) == len(other.fibers)
                and all(functor_eq(a, b) for a, b in zip(self.fmap, other.fmap))
                and self.phi.keys() == other.phi.keys()
                and all(np.array_equal(v, other.phi[k]) for k, v in self.phi.items())
                and all(np.array_equal(a, b) for a, b in zip(self.psi, other.psi)))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"PseudoFunctor({self.name or '?'} over {self.base.name})"


def composable_pairs(G: FinGroupoid):
    """All (p, q) with tgt p = src q, i.e. q∘p defined."""
    if G._pairs is None:
        ps, qs = np.nonzero(G.tgt[:, None] == G.src[None, :])
        G._pairs = list(zip(ps.tolist(), qs.tolist()))
    return G._pairs


def functor_key(F: GroupoidFunctor):
    """Hashable identity of a functor's data (endpoints compared by identity)."""
    return (id(F.dom), id(F.cod), F.obj.tobytes(), F.mor.tobytes())


def check_pseudofunctor(A: PseudoFunctor) -> Report:
    r = Report(f"pseudofunctor {A.name or '?'}")
    B = A.base
    if not r.check(len(A.fibers) == B.n_obj and len(A.fmap) == B.n_mor, "data sizes"):
        return r
    for g, G in enumerate(A.fibers):
        sub = check_groupoid(G)
        if not sub.ok:
            r.add(sub)
    for p, F in enumerate(A.fmap):
        s, t = int(B.src[p]), int(B.tgt[p])
        if not r.check(F.dom == A.fibers[s] and F.cod == A.fibers[t],
                       f"A_{fmt(B.morphisms[p])} has wrong (co)domain"):
            continue
        sub = check_functor(F)
        if not sub.ok:
            r.add(sub)
    if not r.ok:
        return r
    pairs = composable_pairs(B)
    for p, q in pairs:
        if not r.check((p, q) in A.phi, f"missing φ for ({fmt(B.morphisms[p])}, "
                                         f"{fmt(B.morphisms[q])})"):
            continue
        comp = A.phi[(p, q)]
        tgt = A.fibers[int(B.tgt[q])]
        if not r.check(np.all(comp >= 0) and np.all(comp < tgt.n_mor),
                       f"φ[{fmt(B.morphisms[p])},{fmt(B.morphisms[q])}] has invalid components"):
            continue
        sub = check_nat_iso(A.phi_nat(p, q))
        if not sub.ok:
            r.add(sub)
    for g in range(B.n_obj):
        comp = A.psi[g]
        G = A.fibers[g]
        if not r.check(len(comp) == G.n_obj and np.all(comp >= 0) and np.all(comp < G.n_mor),
                       f"ψ[{fmt(B.objects[g])}] has invalid components"):
            continue
        sub = check_nat_iso(A.psi_nat(g))
        if not sub.ok:
            r.add(sub)
    if not r.ok:
        return r
    # triple law  φ_{p,rq} ∘ φ_{q,r}[A_p x] = φ_{qp,r}[x] ∘ A_r(φ_{p,q}[x])
    for p, q in pairs:
        qp = int(B.comp[q, p])
        for r_ in _out(B, int(B.tgt[q])):
            rq = int(B.comp[r_, q])
            T = A.fibers[int(B.tgt[r_])]
            Ap, Ar = A.fmap[p], A.fmap[r_]
            for x in range(A.fibers[int(B.src[p])].n_obj):
                lhs = T.comp[A.phi[(p, rq)][x], A.phi[(q, r_)][Ap.obj[x]]]
                rhs = T.comp[A.phi[(qp, r_)][x], Ar.mor[A.phi[(p, q)][x]]]
                r.check(lhs == rhs, "triple coherence fails at "
                        f"p={fmt(B.morphisms[p])}, q={fmt(B.morphisms[q])}, "
                        f"r={fmt(B.morphisms[r_])}, x={fmt(A.fibers[int(B.src[p])].objects[x])}")
    # unit laws  A_p(ψ_γ x) = φ_{1,p}[x]  and  ψ_γ'[A_p x] = φ_{p,1}[x]
    for p in range(B.n_mor):
        s, t = int(B.src[p]), int(B.tgt[p])
        Ap = A.fmap[p]
        one_s, one_t = int(B.ident[s]), int(B.ident[t])
        for x in range(A.fibers[s].n_obj):
            r.check(Ap.mor[A.psi[s][x]] == A.phi[(one_s, p)][x],
                    f"unit law A_p*ψ = φ[1,p] fails at p={fmt(B.morphisms[p])}, "
                    f"x={fmt(A.fibers[s].objects[x])}")
            r.check(A.psi[t][Ap.obj[x]] == A.phi[(p, one_t)][x],
                    f"unit law ψ*A_p = φ[p,1] fails at p={fmt(B.morphisms[p])}, "
                    f"x={fmt(A.fibers[s].objects[x])}")
    return r
