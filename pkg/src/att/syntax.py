"""Abstract syntax for axiomatic type theory.

Variables are de Bruijn indices (0 is the innermost binder).  Binder names
and source spans ride along as display hints and never take part in
equality, so ``==`` on syntax is alpha-equivalence.  There is no
explicit-substitution node: ``subst`` rebuilds the tree eagerly, which is
what makes the splitness equations ``x[id] = x`` and ``x[f][g] = x[f∘g]``
literal identities.

A substitution ``f : Δ → Γ`` is a tuple of terms over Δ, one per entry of
Γ, oldest entry first.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Any, Callable, ClassVar, Optional, Tuple

Span = Optional[Tuple[int, int]]


class Syntax:
    __slots__ = ()
    # (field name, number of binders the field lives under)
    _kids: ClassVar[tuple] = ()
    is_type: ClassVar[bool] = False


def _node(cls):
    return dataclass(frozen=True, slots=True)(cls)


def _meta():
    return field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------- types

@_node
class Base(Syntax):
    name: str
    args: tuple = ()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("args", 0),)
    is_type: ClassVar[bool] = True


@_node
class Id(Syntax):
    A: Optional[Syntax]  # None until elaborated from ``t = u``
    t: Syntax
    u: Syntax
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("A", 0), ("t", 0), ("u", 0))
    is_type: ClassVar[bool] = True


@_node
class SigmaT(Syntax):
    A: Syntax
    B: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("A", 0), ("B", 1))
    is_type: ClassVar[bool] = True


@_node
class PiT(Syntax):
    A: Syntax
    B: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("A", 0), ("B", 1))
    is_type: ClassVar[bool] = True


@_node
class ZeroT(Syntax):
    span: Span = _meta()
    is_type: ClassVar[bool] = True


@_node
class OneT(Syntax):
    span: Span = _meta()
    is_type: ClassVar[bool] = True


@_node
class TwoT(Syntax):
    span: Span = _meta()
    is_type: ClassVar[bool] = True


@_node
class NatT(Syntax):
    span: Span = _meta()
    is_type: ClassVar[bool] = True


# ---------------------------------------------------------------- terms

@_node
class Var(Syntax):
    i: int
    name: Optional[str] = _meta()
    span: Span = _meta()


@_node
class Const(Syntax):
    name: str
    args: tuple = ()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("args", 0),)


@_node
class Ann(Syntax):
    t: Syntax
    A: Syntax
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("t", 0), ("A", 0))


@_node
class Refl(Syntax):
    t: Syntax
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("t", 0),)


@_node
class J(Syntax):
    C: Syntax
    c: Syntax
    t: Syntax
    u: Syntax
    p: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 3), ("c", 1), ("t", 0), ("u", 0), ("p", 0))


@_node
class H(Syntax):
    C: Syntax
    c: Syntax
    t: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 3), ("c", 1), ("t", 0))


@_node
class Pair(Syntax):
    A: Optional[Syntax]  # both None until elaborated
    B: Optional[Syntax]
    t: Syntax
    u: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("A", 0), ("B", 1), ("t", 0), ("u", 0))


@_node
class Split(Syntax):
    C: Syntax
    c: Syntax
    w: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 2), ("w", 0))


@_node
class SigmaAx(Syntax):
    A: Syntax
    B: Syntax
    C: Syntax
    c: Syntax
    t: Syntax
    s: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("A", 0), ("B", 1), ("C", 1), ("c", 2), ("t", 0), ("s", 0))


@_node
class Lam(Syntax):
    A: Syntax
    body: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("A", 0), ("body", 1))


@_node
class Ev(Syntax):
    z: Syntax
    t: Syntax
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("z", 0), ("t", 0))


@_node
class Beta(Syntax):
    A: Syntax
    v: Syntax
    t: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("A", 0), ("v", 1), ("t", 0))


@_node
class Funext(Syntax):
    z: Syntax
    z2: Syntax
    q: Syntax
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("z", 0), ("z2", 0), ("q", 0))


@_node
class BetaPi(Syntax):
    z: Syntax
    z2: Syntax
    q: Syntax
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("z", 0), ("z2", 0), ("q", 0))


@_node
class EtaPi(Syntax):
    z: Syntax
    z2: Syntax
    p: Syntax
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("z", 0), ("z2", 0), ("p", 0))


@_node
class Star(Syntax):
    span: Span = _meta()


@_node
class Ind1(Syntax):
    C: Syntax
    c: Syntax
    t: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 0), ("t", 0))


@_node
class Beta1(Syntax):
    C: Syntax
    c: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 0))


@_node
class Bot(Syntax):
    span: Span = _meta()


@_node
class Top(Syntax):
    span: Span = _meta()


@_node
class Ind2(Syntax):
    C: Syntax
    c: Syntax
    d: Syntax
    t: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 0), ("d", 0), ("t", 0))


@_node
class Beta2Bot(Syntax):
    C: Syntax
    c: Syntax
    d: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 0), ("d", 0))


@_node
class Beta2Top(Syntax):
    C: Syntax
    c: Syntax
    d: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 0), ("d", 0))


@_node
class Zero(Syntax):
    span: Span = _meta()


@_node
class Succ(Syntax):
    n: Syntax
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("n", 0),)


@_node
class IndN(Syntax):
    C: Syntax
    c: Syntax
    d: Syntax
    t: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 0), ("d", 2), ("t", 0))


@_node
class BetaN0(Syntax):
    C: Syntax
    c: Syntax
    d: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 0), ("d", 2))


@_node
class BetaNs(Syntax):
    C: Syntax
    c: Syntax
    d: Syntax
    t: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("c", 0), ("d", 2), ("t", 0))


@_node
class Ind0(Syntax):
    C: Syntax
    t: Syntax
    names: tuple = _meta()
    span: Span = _meta()
    _kids: ClassVar[tuple] = (("C", 1), ("t", 0))


TYPE_NODES = (Base, Id, SigmaT, PiT, ZeroT, OneT, TwoT, NatT)
TERM_NODES = (Var, Const, Ann, Refl, J, H, Pair, Split, SigmaAx, Lam, Ev, Beta,
              Funext, BetaPi, EtaPi, Star, Ind1, Beta1, Bot, Top, Ind2,
              Beta2Bot, Beta2Top, Zero, Succ, IndN, BetaN0, BetaNs, Ind0)


# ------------------------------------------------------------ judgments

@_node
class Decl(Syntax):
    """One telescope entry ``name : type``."""
    type: Syntax
    name: Optional[str] = _meta()


JUDGMENT_KINDS = {"ctx": 0, "type": 1, "term": 2, "type-eq": 2, "term-eq": 3}


@dataclass(frozen=True, slots=True)
class Judgment:
    """``kind`` fixes the subject shape:

    ctx: ()  type: (A,)  term: (t, A)  type-eq: (A, B)  term-eq: (t, u, A)
    """
    kind: str
    ctx: tuple
    subjects: tuple = ()
    span: Span = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if JUDGMENT_KINDS.get(self.kind) != len(self.subjects):
            raise ValueError(f"judgment kind {self.kind!r} takes "
                             f"{JUDGMENT_KINDS.get(self.kind)} subjects")


# ----------------------------------------------------------- traversal

_FIELDS: dict = {}


def map_kids(x: Syntax, fn: Callable[[Syntax, int], Syntax]) -> Syntax:
    """Rebuild ``x`` with ``fn(child, binders)`` applied to each child."""
    cls = type(x)
    kids = cls._kids
    if not kids:
        return x
    names = _FIELDS.get(cls)
    if names is None:
        names = _FIELDS[cls] = tuple(f.name for f in fields(cls))
    kw = {n: getattr(x, n) for n in names}
    for name, k in kids:
        v = kw[name]
        if v is None:
            continue
        if isinstance(v, tuple):
            kw[name] = tuple(fn(a, k) for a in v)
        else:
            kw[name] = fn(v, k)
    return type(x)(**kw)


def kids(x: Syntax):
    """Yield ``(child, binders)`` pairs."""
    for name, k in type(x)._kids:
        v = getattr(x, name)
        if v is None:
            continue
        if isinstance(v, tuple):
            for a in v:
                yield a, k
        else:
            yield v, k


def shift(x: Syntax, d: int = 1, cutoff: int = 0) -> Syntax:
    if d == 0:
        return x
    if isinstance(x, Var):
        if x.i >= cutoff:
            return Var(x.i + d, x.name, x.span)
        return x
    return map_kids(x, lambda c, k: shift(c, d, cutoff + k))


def weaken(x: Syntax, at: int = 0) -> Syntax:
    """Insert one fresh variable below the ``at`` innermost entries.

    Indices ``>= at`` move up by one, so ``weaken(Var(0), 1) == Var(0)`` and
    ``weaken(Var(0), 0) == Var(1)``.
    """
    if at < 0:
        raise ValueError("weakening position must be non-negative")
    return shift(x, 1, at)


def _subst(x: Syntax, f: tuple, tail: int, depth: int) -> Syntax:
    if isinstance(x, Var):
        if x.i < depth:
            return x
        j = x.i - depth
        n = len(f)
        if j < n:
            return shift(f[n - 1 - j], depth)
        return Var(j - n + tail + depth, x.name, x.span)
    if not type(x)._kids:
        return x
    return map_kids(x, lambda c, k: _subst(c, f, tail, depth + k))


def subst(x: Syntax, f: tuple, tail: int = 0) -> Syntax:
    """Replace the ``len(f)`` innermost variables by ``f`` (oldest first).

    Variables below them are lowered by ``len(f)`` and raised by ``tail``;
    with a full-length ``f`` this is ordinary simultaneous substitution.
    """
    return _subst(x, tuple(f), tail, 0)


def inst(x: Syntax, *args: Syntax) -> Syntax:
    """``x[args]`` for ``x`` living under ``len(args)`` extra binders."""
    return _subst(x, args, 0, 0)


def free_bound(x: Syntax, depth: int = 0) -> int:
    """One more than the largest free index (0 if closed)."""
    if isinstance(x, Var):
        return x.i - depth + 1 if x.i >= depth else 0
    m = 0
    for c, k in kids(x):
        m = max(m, free_bound(c, depth + k))
    return m


class SubstError(ValueError):
    pass


def _check_arity(x: Syntax, f: tuple):
    need = free_bound(x)
    if need > len(f):
        raise SubstError(f"substitution of length {len(f)} cannot instantiate "
                         f"a context of length >= {need}")


def subst_type(A: Syntax, f: tuple) -> Syntax:
    _check_arity(A, f)
    return subst(A, f)


def subst_term(t: Syntax, f: tuple) -> Syntax:
    _check_arity(t, f)
    return subst(t, f)


# -------------------------------------------------------- substitutions

def identity(n: int) -> tuple:
    return tuple(Var(n - 1 - k) for k in range(n))


def projection(n: int, k: int = 1) -> tuple:
    """The weakening ``Γ.A1...Ak → Γ`` for ``|Γ| = n``."""
    return tuple(Var(n - 1 - j + k) for j in range(n))


def compose(f: tuple, g: tuple) -> tuple:
    """``f ∘ g``: first ``g`` then ``f``, so ``x[f][g] == x[compose(f, g)]``."""
    return tuple(subst(t, g) for t in f)


def lift(f: tuple) -> tuple:
    """``f•`` : Δ.A[f] → Γ.A."""
    return tuple(shift(t, 1) for t in f) + (Var(0),)


def pair_subst(a: Syntax, b: Syntax, n: int) -> tuple:
    """``a;b`` : Γ → Γ.A.A▽ for sections ``a, b`` of A over ``|Γ| = n``."""
    return identity(n) + (a, b)


def diagonal(n: int) -> tuple:
    """``δ_A`` : Γ.A → Γ.A.A▽ for ``|Γ| = n``."""
    return identity(n + 1) + (Var(0),)


def ctx_types(ctx) -> list:
    return [d.type for d in ctx]


def lookup(ctx, i: int) -> Syntax:
    """Type of ``Var(i)`` weakened into the full context."""
    return shift(ctx[len(ctx) - 1 - i].type, i + 1)


def size(x: Any) -> int:
    if isinstance(x, tuple):
        return sum(size(a) for a in x)
    return 1 + sum(size(c) for c, _ in kids(x))
