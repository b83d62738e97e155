"""Surface syntax: lexer, recursive-descent parser, and printer.

Grammar sketch (``--`` starts a comment; an indented line continues the
previous item)::

    item     ::= 'type' NAME ['(' tele ')']
               | 'const' NAME ['(' tele ')'] ':' type
               | [tele] '|-' subject
    subject  ::= 'ctx' | type 'type' | type '==' type 'type'
               | term ':' type | term '==' term ':' type
    type     ::= 'Pi' x ':' type '.' type | 'Sigma' x ':' type '.' type
               | 'Id' '(' type ',' term ',' term ')' | term '=' term
               | 'Zero' | 'One' | 'Two' | 'Nat' | NAME ['(' terms ')'] | '(' type ')'

Eliminators carry their motive in brackets, e.g.
``J[x y p. C](x. c, t, u, q)`` or ``indN[n. C](c, n y. d, t)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from . import syntax as S


class ParseError(Exception):
    def __init__(self, msg, line=None, col=None):
        self.msg, self.line, self.col = msg, line, col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + msg)


KEYWORDS = {
    "type", "const", "ctx", "Id", "Sigma", "Pi", "Zero", "One", "Two", "Nat",
    "r", "J", "H", "pair", "split", "sigma", "lam", "ev", "beta", "funext",
    "betaPi", "etaPi", "star", "ind1", "beta1", "bot", "top", "ind2",
    "beta2bot", "beta2top", "zero", "succ", "indN", "betaN0", "betaNs", "ind0",
}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>--[^\n]*)
  | (?P<sym>\|-|⊢|==|≡|[()\[\],:.=])
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    val: str
    pos: int


def _linecol(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> list:
    toks, pos, depth = [], 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            line, col = _linecol(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        val = m.group()
        if kind == "sym":
            val = {"⊢": "|-", "≡": "=="}.get(val, val)
            if val in "([":
                depth += 1
            elif val in ")]":
                depth = max(0, depth - 1)
            toks.append(Tok("sym", val, pos))
        elif kind == "name":
            toks.append(Tok("kw" if val in KEYWORDS else "name", val, pos))
        elif kind == "nl" and depth == 0:
            toks.append(Tok("nl", "\n", pos))
        pos = m.end()
    # keep a newline only if the next real token starts a fresh line
    out = []
    for k, t in enumerate(toks):
        if t.kind != "nl":
            out.append(t)
            continue
        nxt = next((u for u in toks[k + 1:] if u.kind != "nl"), None)
        if nxt is not None and _linecol(text, nxt.pos)[1] == 1:
            if out and out[-1].kind != "nl":
                out.append(t)
    out.append(Tok("eof", "", len(text)))
    return out


# ------------------------------------------------------------- documents

@dataclass
class TypeDecl:
    name: str
    tele: tuple
    line: int = 0


@dataclass
class ConstDecl:
    name: str
    tele: tuple
    type: S.Syntax
    line: int = 0


@dataclass
class Signature:
    types: dict = field(default_factory=dict)   # name -> TypeDecl
    consts: dict = field(default_factory=dict)  # name -> ConstDecl

    def copy(self):
        return Signature(dict(self.types), dict(self.consts))


@dataclass
class Item:
    judgment: S.Judgment
    signature: Signature
    line: int
    text: str = ""


@dataclass
class Document:
    signature: Signature
    decls: list
    items: list


# ----------------------------------------------------------------- parser

_ARITY = {
    # keyword: (motive binders, argument shapes); an int n>0 is "n names. term"
    "r": (0, (0,)), "J": (3, (1, 0, 0, 0)), "H": (3, (1, 0)),
    "split": (1, (2, 0)), "ev": (0, (0, 0)),
    "funext": (0, (0, 0, 0)), "betaPi": (0, (0, 0, 0)), "etaPi": (0, (0, 0, 0)),
    "ind1": (1, (0, 0)), "beta1": (1, (0,)), "ind2": (1, (0, 0, 0)),
    "beta2bot": (1, (0, 0)), "beta2top": (1, (0, 0)), "succ": (0, (0,)),
    "indN": (1, (0, 2, 0)), "betaN0": (1, (0, 2)), "betaNs": (1, (0, 2, 0)),
    "ind0": (1, (0,)),
}
_NULLARY = {"star": S.Star, "bot": S.Bot, "top": S.Top, "zero": S.Zero}
_TYPE_CONST = {"Zero": S.ZeroT, "One": S.OneT, "Two": S.TwoT, "Nat": S.NatT}


class Parser:
    def __init__(self, text: str, sig: Optional[Signature] = None):
        self.text = text
        self.toks = tokenize(text)
        self.k = 0
        self.sig = sig if sig is not None else Signature()

    # -- token plumbing
    @property
    def tok(self):
        return self.toks[self.k]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        line, col = _linecol(self.text, tok.pos)
        return ParseError(msg, line, col)

    def at(self, val, kind=None):
        t = self.tok
        return t.val == val and (kind is None or t.kind == kind) and t.kind not in ("nl", "eof")

    def eat(self, val):
        if not self.at(val):
            shown = self.tok.val if self.tok.kind != "eof" else "end of input"
            shown = "end of line" if self.tok.kind == "nl" else shown
            raise self.error(f"expected {val!r}, found {shown!r}")
        t = self.tok
        self.k += 1
        return t

    def name(self):
        t = self.tok
        if t.kind != "name":
            raise self.error(f"expected a name, found {t.val or 'end of input'!r}")
        self.k += 1
        return t.val

    def span(self, start):
        end = self.toks[self.k - 1]
        return (start.pos, end.pos + len(end.val))

    def attempt(self, fn, *args):
        save = self.k
        try:
            return fn(*args)
        except ParseError:
            self.k = save
            return None

    # -- types
    def type_(self, sc):
        t = self.tok
        if t.val in ("Pi", "Sigma") and t.kind == "kw":
            self.k += 1
            x = self.name()
            self.eat(":")
            A = self.type_(sc)
            self.eat(".")
            B = self.type_(sc + [x])
            cls = S.PiT if t.val == "Pi" else S.SigmaT
            return cls(A, B, (x,), self.span(t))
        save = self.k
        try:
            return self._atype_alone(sc)
        except ParseError as e:
            self.k, first = save, e
        try:
            lhs = self.term(sc)
            self.eat("=")
            rhs = self.term(sc)
        except ParseError as e:
            # report whichever reading got further
            raise max((first, e), key=lambda x: (x.line or 0, x.col or 0)) from None
        return S.Id(None, lhs, rhs, self.span(t))

    def _atype_alone(self, sc):
        A = self.atype(sc)
        if self.at("="):
            raise self.error("not a type")
        return A

    def atype(self, sc):
        t = self.tok
        if t.kind == "kw" and t.val in _TYPE_CONST:
            self.k += 1
            return _TYPE_CONST[t.val](self.span(t))
        if t.kind == "kw" and t.val == "Id":
            self.k += 1
            self.eat("(")
            A = self.type_(sc)
            self.eat(",")
            a = self.term(sc)
            self.eat(",")
            b = self.term(sc)
            self.eat(")")
            return S.Id(A, a, b, self.span(t))
        if t.val == "(" and t.kind == "sym":
            self.k += 1
            A = self.type_(sc)
            self.eat(")")
            return A
        if t.kind == "name" and t.val not in sc and t.val not in self.sig.consts:
            self.k += 1
            args = self.args(sc) if self.at("(") else ()
            return S.Base(t.val, args, self.span(t))
        raise self.error("expected a type")

    def args(self, sc):
        self.eat("(")
        out = []
        if not self.at(")"):
            out.append(self.term(sc))
            while self.at(","):
                self.k += 1
                out.append(self.term(sc))
        self.eat(")")
        return tuple(out)

    # -- terms
    def term(self, sc):
        t = self.tok
        if t.kind == "kw" and t.val == "lam":
            self.k += 1
            x = self.name()
            self.eat(":")
            A = self.type_(sc)
            self.eat(".")
            body = self.term(sc + [x])
            return S.Lam(A, body, (x,), self.span(t))
        return self.aterm(sc)

    def aterm(self, sc):
        t = self.tok
        if t.kind == "name":
            self.k += 1
            if t.val in sc:
                i = len(sc) - 1 - sc[::-1].index(t.val)
                return S.Var(len(sc) - 1 - i, t.val, self.span(t))
            if t.val in self.sig.consts:
                args = self.args(sc) if self.at("(") else ()
                return S.Const(t.val, args, self.span(t))
            raise self.error(f"unbound identifier {t.val!r}", t)
        if t.val == "(" and t.kind == "sym":
            self.k += 1
            e = self.term(sc)
            if self.at(":"):
                self.k += 1
                A = self.type_(sc)
                self.eat(")")
                return S.Ann(e, A, self.span(t))
            self.eat(")")
            return e
        if t.kind != "kw":
            raise self.error(f"expected a term, found {t.val or 'end of input'!r}")
        kw = t.val
        self.k += 1
        if kw in _NULLARY:
            return _NULLARY[kw](self.span(t))
        if kw == "pair":
            return self._pair(sc, t)
        if kw == "sigma":
            return self._sigma(sc, t)
        if kw == "beta":
            return self._beta(sc, t)
        if kw not in _ARITY:
            raise self.error(f"{kw!r} cannot start a term", t)
        nmot, shapes = _ARITY[kw]
        names = []
        C = None
        if nmot:
            if not self.at("["):
                raise self.error(f"{kw} needs an explicit motive in brackets", t)
            self.k += 1
            for _ in range(nmot):
                names.append(self.name())
            self.eat(".")
            C = self.type_(sc + names)
            self.eat("]")
        elif self.at("["):
            raise self.error(f"{kw} takes no motive", t)
        got = self._arglist(sc, shapes, kw, t, names)
        sp = self.span(t)
        nm = tuple(names)
        if kw == "r":
            return S.Refl(got[0], sp)
        if kw == "J":
            return S.J(C, got[0], got[1], got[2], got[3], nm, sp)
        if kw == "H":
            return S.H(C, got[0], got[1], nm, sp)
        if kw == "split":
            return S.Split(C, got[0], got[1], nm, sp)
        if kw == "ev":
            return S.Ev(got[0], got[1], sp)
        if kw in ("funext", "betaPi", "etaPi"):
            cls = {"funext": S.Funext, "betaPi": S.BetaPi, "etaPi": S.EtaPi}[kw]
            return cls(*got, sp)
        if kw == "succ":
            return S.Succ(got[0], sp)
        cls = {"ind1": S.Ind1, "beta1": S.Beta1, "ind2": S.Ind2,
               "beta2bot": S.Beta2Bot, "beta2top": S.Beta2Top, "indN": S.IndN,
               "betaN0": S.BetaN0, "betaNs": S.BetaNs, "ind0": S.Ind0}[kw]
        return cls(C, *got, nm, sp)

    def _arglist(self, sc, shapes, kw, start, names):
        if not self.at("("):
            raise self.error(f"{kw} expects {len(shapes)} argument(s)", start)
        self.k += 1
        out = []
        while True:
            if self.at(")") and not out:
                break
            k = len(out)
            nb = shapes[k] if k < len(shapes) else 0
            if nb:
                bound = [self.name() for _ in range(nb)]
                self.eat(".")
                names.extend(bound)
                out.append(self.term(sc + bound))
            else:
                out.append(self.term(sc))
            if self.at(","):
                self.k += 1
                continue
            break
        if not self.at(")"):
            raise self.error(f"expected ',' or ')' in arguments of {kw}")
        self.k += 1
        if len(out) != len(shapes):
            raise self.error(f"{kw} expects {len(shapes)} argument(s), got {len(out)}",
                             start)
        return out

    def _pair(self, sc, t):
        A = B = None
        names = ()
        if self.at("["):
            self.k += 1
            x = self.name()
            self.eat(":")
            A = self.type_(sc)
            self.eat(".")
            B = self.type_(sc + [x])
            self.eat("]")
            names = (x,)
        a, b = self._arglist(sc, (0, 0), "pair", t, [])
        return S.Pair(A, B, a, b, names, self.span(t))

    def _sigma(self, sc, t):
        if not self.at("["):
            raise self.error("sigma needs an explicit motive in brackets", t)
        self.k += 1
        u = self.name()
        self.eat(":")
        T = self.type_(sc)
        if not isinstance(T, S.SigmaT):
            raise self.error("sigma motive must be annotated with a Sigma type", t)
        self.eat(".")
        C = self.type_(sc + [u])
        self.eat("]")
        names = [T.names[0] if T.names else "x", u]
        c, a, b = self._arglist(sc, (2, 0, 0), "sigma", t, names)
        return S.SigmaAx(T.A, T.B, C, c, a, b, tuple(names), self.span(t))

    def _beta(self, sc, t):
        self.eat("(")
        x = self.name()
        self.eat(":")
        A = self.type_(sc)
        self.eat(".")
        v = self.term(sc + [x])
        self.eat(",")
        a = self.term(sc)
        if not self.at(")"):
            raise self.error("beta expects 2 argument(s)", t)
        self.k += 1
        return S.Beta(A, v, a, (x,), self.span(t))

    # -- telescopes and judgments
    def tele(self, sc):
        out = []
        sc = list(sc)
        while True:
            x = self.name()
            self.eat(":")
            A = self.type_(sc)
            out.append(S.Decl(A, x))
            sc.append(x)
            if not self.at(","):
                return tuple(out), sc
            self.k += 1

    def judgment(self):
        start = self.tok
        ctx, sc = ((), [])
        if not self.at("|-"):
            ctx, sc = self.tele([])
        self.eat("|-")
        if self.at("ctx", "kw"):
            self.k += 1
            return S.Judgment("ctx", ctx, (), self.span(start))
        got = self.attempt(self._type_subject, sc)
        if got is not None:
            kind, subj = got
        else:
            a = self.term(sc)
            if self.at("=="):
                self.k += 1
                b = self.term(sc)
                self.eat(":")
                kind, subj = "term-eq", (a, b, self.type_(sc))
            else:
                self.eat(":")
                kind, subj = "term", (a, self.type_(sc))
        return S.Judgment(kind, ctx, subj, self.span(start))

    def _type_subject(self, sc):
        A = self.type_(sc)
        if self.at("=="):
            self.k += 1
            B = self.type_(sc)
            self.eat("type")
            return "type-eq", (A, B)
        self.eat("type")
        return "type", (A,)

    def end_item(self):
        if self.tok.kind == "nl":
            self.k += 1
        elif self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.val!r} after end of item")

    def document(self) -> Document:
        decls, items = [], []
        while self.tok.kind != "eof":
            if self.tok.kind == "nl":
                self.k += 1
                continue
            start = self.tok
            line = _linecol(self.text, start.pos)[0]
            if self.at("type", "kw"):
                self.k += 1
                nm = self.name()
                tele = self._decl_tele()[0]
                d = TypeDecl(nm, tele, line)
                self.sig.types[nm] = d
                decls.append(d)
            elif self.at("const", "kw"):
                self.k += 1
                nm = self.name()
                tele, sc = self._decl_tele()
                self.eat(":")
                T = self.type_(sc)
                d = ConstDecl(nm, tele, T, line)
                self.sig.consts[nm] = d
                decls.append(d)
            else:
                j = self.judgment()
                src = self.text[j.span[0]:j.span[1]] if j.span else ""
                items.append(Item(j, self.sig.copy(), line, src))
            self.end_item()
        return Document(self.sig, decls, items)

    def _decl_tele(self):
        if not self.at("("):
            return (), []
        self.k += 1
        res = self.tele([])
        self.eat(")")
        return res


def _check_nonempty(text):
    if not any(t.kind not in ("nl", "eof") for t in tokenize(text)):
        raise ParseError("empty input", 1, 1)


def parse_document(text: str, sig: Optional[Signature] = None) -> Document:
    _check_nonempty(text)
    return Parser(text, sig).document()


def parse_judgment(text: str, sig: Optional[Signature] = None) -> S.Judgment:
    _check_nonempty(text)
    p = Parser(text, sig)
    j = p.judgment()
    while p.tok.kind == "nl":
        p.k += 1
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.val!r} after judgment")
    return j


def parse_type(text: str, names=(), sig: Optional[Signature] = None) -> S.Syntax:
    _check_nonempty(text)
    p = Parser(text, sig)
    A = p.type_(list(names))
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.val!r} after type")
    return A


def parse_term(text: str, names=(), sig: Optional[Signature] = None) -> S.Syntax:
    _check_nonempty(text)
    p = Parser(text, sig)
    t = p.term(list(names))
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.val!r} after term")
    return t


def parse(text: str, sig: Optional[Signature] = None):
    """Parse a judgment, else a type, else a term."""
    _check_nonempty(text)
    errors = []
    for fn in (parse_judgment, parse_type, parse_term):
        try:
            return fn(text, sig=sig) if fn is parse_judgment else fn(text, (), sig)
        except ParseError as e:
            errors.append(e)
    best = max(errors, key=lambda e: (e.line or 0, e.col or 0))
    raise best


# ---------------------------------------------------------------- printer

class Printer:
    def __init__(self, avoid=()):
        self.avoid = set(avoid) | KEYWORDS

    def fresh(self, hint, sc):
        base = hint if hint and hint not in KEYWORDS else "x"
        cand = base
        while cand in sc or cand in self.avoid:
            cand += "'"
        return cand

    def binders(self, hints, n, sc):
        out = []
        for k in range(n):
            h = hints[k] if hints and k < len(hints) else None
            out.append(self.fresh(h, sc + out))
        return out

    def ty(self, A, sc):
        if isinstance(A, (S.PiT, S.SigmaT)):
            [x] = self.binders(A.names, 1, sc)
            kw = "Pi" if isinstance(A, S.PiT) else "Sigma"
            return f"{kw} {x}:{self.ty(A.A, sc)}. {self.ty(A.B, sc + [x])}"
        if isinstance(A, S.Id):
            if A.A is None:
                return f"{self.tm(A.t, sc)} = {self.tm(A.u, sc)}"
            return f"Id({self.ty(A.A, sc)}, {self.tm(A.t, sc)}, {self.tm(A.u, sc)})"
        if isinstance(A, S.Base):
            if A.args:
                return f"{A.name}({', '.join(self.tm(a, sc) for a in A.args)})"
            return A.name
        for kw, cls in _TYPE_CONST.items():
            if isinstance(A, cls):
                return kw
        raise TypeError(f"not a type: {A!r}")

    def tm(self, t, sc):
        if isinstance(t, S.Var):
            if t.i >= len(sc):
                return f"#{t.i}"
            return sc[len(sc) - 1 - t.i]
        if isinstance(t, S.Const):
            if t.args:
                return f"{t.name}({', '.join(self.tm(a, sc) for a in t.args)})"
            return t.name
        if isinstance(t, S.Ann):
            return f"({self.tm(t.t, sc)} : {self.ty(t.A, sc)})"
        if isinstance(t, S.Lam):
            [x] = self.binders(t.names, 1, sc)
            return f"lam {x}:{self.ty(t.A, sc)}. {self.tm(t.body, sc + [x])}"
        for kw, cls in _NULLARY.items():
            if isinstance(t, cls):
                return kw
        if isinstance(t, S.Refl):
            return f"r({self.tm(t.t, sc)})"
        if isinstance(t, S.Succ):
            return f"succ({self.tm(t.n, sc)})"
        if isinstance(t, S.Ev):
            return f"ev({self.tm(t.z, sc)}, {self.tm(t.t, sc)})"
        if isinstance(t, (S.Funext, S.BetaPi, S.EtaPi)):
            kw = {S.Funext: "funext", S.BetaPi: "betaPi", S.EtaPi: "etaPi"}[type(t)]
            last = t.q if hasattr(t, "q") else t.p
            return f"{kw}({self.tm(t.z, sc)}, {self.tm(t.z2, sc)}, {self.tm(last, sc)})"
        if isinstance(t, S.Pair):
            a, b = self.tm(t.t, sc), self.tm(t.u, sc)
            if t.A is None:
                return f"pair({a}, {b})"
            [x] = self.binders(t.names, 1, sc)
            return f"pair[{x}:{self.ty(t.A, sc)}. {self.ty(t.B, sc + [x])}]({a}, {b})"
        if isinstance(t, S.Beta):
            [x] = self.binders(t.names, 1, sc)
            return (f"beta({x}:{self.ty(t.A, sc)}. {self.tm(t.v, sc + [x])}, "
                    f"{self.tm(t.t, sc)})")
        if isinstance(t, S.SigmaAx):
            hx = t.names[0] if t.names else None
            hu = t.names[1] if t.names and len(t.names) > 1 else "u"
            [x] = self.binders((hx,), 1, sc)
            [u] = self.binders((hu,), 1, sc)
            T = f"Sigma {x}:{self.ty(t.A, sc)}. {self.ty(t.B, sc + [x])}"
            cx, cy = self.binders(t.names[2:] if t.names else (), 2, sc)
            return (f"sigma[{u}:{T}. {self.ty(t.C, sc + [u])}]"
                    f"({cx} {cy}. {self.tm(t.c, sc + [cx, cy])}, "
                    f"{self.tm(t.t, sc)}, {self.tm(t.s, sc)})")
        return self._elim(t, sc)

    def _elim(self, t, sc):
        kw = {S.J: "J", S.H: "H", S.Split: "split", S.Ind1: "ind1",
              S.Beta1: "beta1", S.Ind2: "ind2", S.Beta2Bot: "beta2bot",
              S.Beta2Top: "beta2top", S.IndN: "indN", S.BetaN0: "betaN0",
              S.BetaNs: "betaNs", S.Ind0: "ind0"}.get(type(t))
        if kw is None:
            raise TypeError(f"not a term: {t!r}")
        hints = list(t.names or ())
        nmot = _ARITY[kw][0]
        mot = self.binders(hints[:nmot], nmot, sc)
        hints = hints[nmot:]
        parts = []
        for name, k in type(t)._kids:
            if name == "C":
                continue
            v = getattr(t, name)
            if k:
                bs = self.binders(hints[:k], k, sc)
                hints = hints[k:]
                parts.append(f"{' '.join(bs)}. {self.tm(v, sc + bs)}")
            else:
                parts.append(self.tm(v, sc))
        return f"{kw}[{' '.join(mot)}. {self.ty(t.C, sc + mot)}]({', '.join(parts)})"

    def any(self, x, sc):
        return self.ty(x, sc) if x.is_type else self.tm(x, sc)

    def ctx(self, ctx):
        sc, parts = [], []
        for d in ctx:
            [x] = self.binders((d.name,), 1, sc)
            parts.append(f"{x}:{self.ty(d.type, sc)}")
            sc.append(x)
        return ", ".join(parts), sc

    def judgment(self, j):
        c, sc = self.ctx(j.ctx)
        head = f"{c} |- " if c else "|- "
        s = j.subjects
        if j.kind == "ctx":
            return head + "ctx"
        if j.kind == "type":
            return head + f"{self.ty(s[0], sc)} type"
        if j.kind == "type-eq":
            return head + f"{self.ty(s[0], sc)} == {self.ty(s[1], sc)} type"
        if j.kind == "term":
            return head + f"{self.tm(s[0], sc)} : {self.ty(s[1], sc)}"
        return head + f"{self.tm(s[0], sc)} == {self.tm(s[1], sc)} : {self.ty(s[2], sc)}"

    def decl(self, d):
        tele = ""
        sc = []
        if d.tele:
            c, sc = self.ctx(d.tele)
            tele = f"({c})"
        if isinstance(d, TypeDecl):
            return f"type {d.name}{tele}"
        return f"const {d.name}{tele} : {self.ty(d.type, sc)}"


def show(x, names=(), sig: Optional[Signature] = None) -> str:
    avoid = set()
    if sig is not None:
        avoid = set(sig.types) | set(sig.consts)
    p = Printer(avoid)
    if isinstance(x, S.Judgment):
        return p.judgment(x)
    if isinstance(x, (TypeDecl, ConstDecl)):
        return p.decl(x)
    return p.any(x, list(names))


def show_document(doc: Document) -> str:
    p = Printer(set(doc.signature.types) | set(doc.signature.consts))
    lines = [p.decl(d) for d in doc.decls]
    lines += [p.judgment(it.judgment) for it in doc.items]
    return "\n".join(lines) + "\n"
