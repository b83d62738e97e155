"""Loading finite groupoid models from JSON.

A model file names groupoids and functors, gives an ATT signature, and assigns
a pseudofunctor to every declared base type and a section to every declared
constant.  Types with a telescope live over the interpretation of that
telescope; ``families`` are extra pseudofunctors over named groupoids that are
only used by the verifier.  Labels are matched by their printed form, so a
total-groupoid object ``("*", "a")`` is written ``"(*,a)"``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .checker import Checker
from .groupoid import (FinGroupoid, GroupoidFunctor, PseudoFunctor, composable_pairs, fmt,
                       identity_functor)
from .grothendieck import SectionOf, total_groupoid
from .parser import Signature, parse_document


class ModelError(ValueError):
    pass


def _lookup(G, label, what):
    idx = {fmt(x): i for i, x in enumerate(what(G))}
    key = label if isinstance(label, str) else fmt(label)
    if key not in idx:
        raise ModelError(f"{G.name}: no element {key!r}")
    return idx[key]


def obj_of(G, label):
    return _lookup(G, label, lambda g: g.objects)


def mor_of(G, label):
    return _lookup(G, label, lambda g: g.morphisms)


def _keyed(spec, key, default=None):
    """Pick ``spec[key]`` with a ``default`` fallback; non-dict specs apply everywhere."""
    if not isinstance(spec, dict) or set(spec) & {"obj", "mor"}:
        return spec
    if key in spec:
        return spec[key]
    if "default" in spec:
        return spec["default"]
    if default is not None:
        return default
    raise ModelError(f"no entry for {key!r}")


def build_groupoid(name, spec) -> FinGroupoid:
    if isinstance(spec, dict) and "cyclic" in spec:
        G = FinGroupoid.cyclic(int(spec["cyclic"]), name)
    elif isinstance(spec, dict) and "discrete" in spec:
        G = FinGroupoid.discrete(spec["discrete"], name)
    elif isinstance(spec, dict) and "codiscrete" in spec:
        G = FinGroupoid.codiscrete(spec["codiscrete"], name)
    elif spec == "trivial" or (isinstance(spec, dict) and spec.get("trivial")):
        G = FinGroupoid.trivial(name)
    elif isinstance(spec, dict) and "objects" in spec:
        table = spec["compose"]
        ids = spec["identities"]
        inv = spec.get("inverses")
        G = FinGroupoid.build(spec["objects"], [tuple(m) for m in spec["morphisms"]],
                              lambda g, f: table[f"{g},{f}"], lambda o: ids[o],
                              (lambda m: inv[m]) if inv else None, name)
    else:
        raise ModelError(f"groupoid {name}: unrecognised specification")
    return G


class Model:
    def __init__(self, data: dict, origin: str = "<dict>"):
        self.data = data
        self.origin = origin
        self.name = data.get("name", Path(origin).stem)
        self.description = data.get("description", "")
        doc = parse_document(data.get("signature", ""))
        self.signature = Checker(doc.signature).signature()
        self.groupoids = {n: build_groupoid(n, s) for n, s in data.get("groupoids", {}).items()}
        self.functors = {}
        for n, s in data.get("functors", {}).items():
            dom, cod = self.groupoid(s["dom"]), self.groupoid(s["cod"])
            self.functors[n] = self._functor(dom, cod, s, n)
        self._types, self._consts = {}, {}
        self._interp = None
        self.families = {}
        for n, s in data.get("families", {}).items():
            self.families[n] = self._pseudofunctor(n, self.groupoid(s["base"]), s)
        self.strict = bool(data.get("strict", False))

    # -- lookups
    def groupoid(self, name) -> FinGroupoid:
        if name not in self.groupoids:
            raise ModelError(f"unknown groupoid {name!r}")
        return self.groupoids[name]

    def interpreter(self):
        if self._interp is None:
            from .interpret import Interpreter
            self._interp = Interpreter(self)
        return self._interp

    def type_pf(self, name) -> PseudoFunctor:
        pf = self._types.get(name)
        if pf is None:
            decl = self.signature.types[name]
            spec = self.data.get("types", {}).get(name)
            if spec is None:
                raise ModelError(f"model {self.name} does not interpret type {name!r}")
            base = self.interpreter().context(decl.tele).groupoid
            pf = self._types[name] = self._pseudofunctor(name, base, spec)
        return pf

    def const_section(self, name) -> SectionOf:
        s = self._consts.get(name)
        if s is None:
            decl = self.signature.consts[name]
            spec = self.data.get("constants", {}).get(name)
            if spec is None:
                raise ModelError(f"model {self.name} does not interpret constant {name!r}")
            it = self.interpreter()
            A = it.type_(decl.tele, decl.type)
            s = self._consts[name] = self._section(name, total_groupoid(A), spec)
        return s

    def pseudofunctors(self):
        """Every type of the signature and every family, in declaration order."""
        out = [(n, self.type_pf(n)) for n in self.signature.types if n in self.data.get("types", {})]
        return out + list(self.families.items())

    # -- builders
    def _functor(self, dom, cod, spec, name=""):
        if spec == "identity":
            if dom != cod:
                raise ModelError(f"identity functor between different fibers ({name})")
            return identity_functor(dom, name)
        if isinstance(spec, str):
            F = self.functors.get(spec)
            if F is None:
                raise ModelError(f"unknown functor {spec!r}")
            if F.dom != dom or F.cod != cod:
                raise ModelError(f"functor {spec!r} has the wrong (co)domain")
            return F
        om = spec["obj"]
        obj = [obj_of(cod, _keyed(om, fmt(o))) for o in dom.objects]
        mm = spec.get("mor", {})
        mor = []
        for f in range(dom.n_mor):
            key = fmt(dom.morphisms[f])
            if isinstance(mm, dict) and (key in mm or "default" in mm):
                mor.append(mor_of(cod, _keyed(mm, key)))
                continue
            hs = cod.hom(obj[int(dom.src[f])], obj[int(dom.tgt[f])])
            if f in set(int(i) for i in dom.ident):
                mor.append(int(cod.ident[obj[int(dom.src[f])]]))
            elif len(hs) == 1:
                mor.append(hs[0])
            else:
                raise ModelError(f"functor {name}: image of {key} is ambiguous")
        return GroupoidFunctor(dom, cod, obj, mor, name)

    def _component(self, G, src, tgt, spec, where):
        if spec in ("identity", "strict"):
            if src != tgt:
                raise ModelError(f"{where}: identity component between different objects")
            return int(G.ident[src])
        if spec in ("unique", "codiscrete"):
            hs = G.hom(src, tgt)
            if len(hs) != 1:
                raise ModelError(f"{where}: {len(hs)} candidate components")
            return hs[0]
        m = mor_of(G, spec)
        if G.src[m] != src or G.tgt[m] != tgt:
            raise ModelError(f"{where}: component {spec} has the wrong endpoints")
        return m

    def _pseudofunctor(self, name, base, spec) -> PseudoFunctor:
        fsp = spec.get("fibers")
        fibers = [self.groupoid(_keyed(fsp, fmt(o))) for o in base.objects]
        msp = spec.get("functors", "identity")
        fmap = []
        for p in range(base.n_mor):
            s, t = int(base.src[p]), int(base.tgt[p])
            fmap.append(self._functor(fibers[s], fibers[t], _keyed(msp, fmt(base.morphisms[p])),
                                      f"{name}_{fmt(base.morphisms[p])}"))
        psp = spec.get("phi", "identity")
        phi = {}
        for p, q in composable_pairs(base):
            qp = int(base.comp[q, p])
            T = fibers[int(base.tgt[q])]
            key = f"{fmt(base.morphisms[p])};{fmt(base.morphisms[q])}"
            cs = _keyed(psp, key)
            comps = []
            for x in range(fibers[int(base.src[p])].n_obj):
                src = int(fmap[q].obj[fmap[p].obj[x]])
                tgt = int(fmap[qp].obj[x])
                c = _keyed(cs, fmt(fibers[int(base.src[p])].objects[x])) if isinstance(cs, dict) else cs
                comps.append(self._component(T, src, tgt, c, f"{name}: φ[{key}]"))
            phi[(p, q)] = comps
        ssp = spec.get("psi", "identity")
        psi = []
        for g in range(base.n_obj):
            G = fibers[g]
            one = fmap[int(base.ident[g])]
            cs = _keyed(ssp, fmt(base.objects[g]))
            comps = []
            for x in range(G.n_obj):
                c = _keyed(cs, fmt(G.objects[x])) if isinstance(cs, dict) else cs
                comps.append(self._component(G, int(one.obj[x]), x, c,
                                             f"{name}: ψ[{fmt(base.objects[g])}]"))
            psi.append(comps)
        return PseudoFunctor(base, fibers, fmap, phi, psi, name)

    def _section(self, name, D, spec) -> SectionOf:
        B = D.base
        osp = spec.get("objects")
        obj, fib = [], []
        for g in range(B.n_obj):
            G = D.pf.fibers[g]
            x = obj_of(G, _keyed(osp, fmt(B.objects[g])))
            fib.append(x)
            obj.append(D.obj_of[(g, x)])
        msp = spec.get("morphisms", {})
        mor = []
        for p in range(B.n_mor):
            s, t = int(B.src[p]), int(B.tgt[p])
            T = D.pf.fibers[t]
            start = int(D.pf.fmap[p].obj[fib[s]])
            key = fmt(B.morphisms[p])
            if p == int(B.ident[s]):
                m2 = int(D.pf.psi[s][fib[s]])
            elif isinstance(msp, str) or (isinstance(msp, dict) and (key in msp or "default" in msp)):
                m2 = self._component(T, start, fib[t], _keyed(msp, key), f"{name} at {key}")
            else:
                hs = T.hom(start, fib[t])
                if len(hs) != 1:
                    raise ModelError(f"section {name}: {len(hs)} choices at {key}; give 'morphisms'")
                m2 = hs[0]
            mor.append(D.mor_of[(p, m2, fib[s])])
        return SectionOf(D, GroupoidFunctor(B, D.total, obj, mor, name))


def load_model(path) -> Model:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ModelError(f"{path}: invalid JSON ({e})") from None
    return Model(data, str(path))


def models_dir() -> Path:
    """The shipped ``models/`` directory next to the package checkout."""
    here = Path(__file__).resolve()
    for p in here.parents:
        if (p / "models").is_dir():
            return p / "models"
    raise ModelError("shipped models directory not found")


def shipped_models():
    return [load_model(p) for p in sorted(models_dir().glob("*.json"))]
