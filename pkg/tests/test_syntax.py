"""Substitution laws against a named-variable oracle, plus parser round trips."""
import itertools
import random

import pytest
from hypothesis import given, strategies as st

import att.syntax as S
from att.parser import ParseError, parse, parse_judgment, parse_document, show, show_document
from att.syntax import (Var, compose, diagonal, identity, inst, kids, lift, lookup, map_kids,
                        pair_subst, projection, shift, size, subst, subst_term, subst_type,
                        weaken)

from conftest import corpus_items, accept_files, reject_files


# ------------------------------------------------------------ generator

def gen(rng, scope, depth=3):
    """A random well-scoped tree (not necessarily well-typed)."""
    if depth <= 0 or rng.random() < 0.25:
        if scope and rng.random() < 0.7:
            return Var(rng.randrange(scope))
        return rng.choice([S.Zero(), S.Star(), S.Const("k")])
    d = depth - 1
    pick = rng.randrange(11)
    if pick == 0:
        return S.Refl(gen(rng, scope, d))
    if pick == 1:
        return S.J(gen(rng, scope + 3, d), gen(rng, scope + 1, d), gen(rng, scope, d),
                   gen(rng, scope, d), gen(rng, scope, d))
    if pick == 2:
        return S.Lam(gen(rng, scope, d), gen(rng, scope + 1, d))
    if pick == 3:
        return S.Ev(gen(rng, scope, d), gen(rng, scope, d))
    if pick == 4:
        return S.Base("B", tuple(gen(rng, scope, d) for _ in range(rng.randrange(3))))
    if pick == 5:
        return S.Id(gen(rng, scope, d), gen(rng, scope, d), gen(rng, scope, d))
    if pick == 6:
        return S.PiT(gen(rng, scope, d), gen(rng, scope + 1, d))
    if pick == 7:
        return S.Split(gen(rng, scope + 1, d), gen(rng, scope + 2, d), gen(rng, scope, d))
    if pick == 8:
        return S.IndN(gen(rng, scope + 1, d), gen(rng, scope, d), gen(rng, scope + 2, d),
                      gen(rng, scope, d))
    if pick == 9:
        return S.Succ(gen(rng, scope, d))
    return S.Const("c", (gen(rng, scope, d),))


def gen_subst(rng, n, m, depth=2):
    """A substitution Δ → Γ with |Γ| = n, |Δ| = m."""
    return tuple(gen(rng, m, depth) for _ in range(n))


# ------------------------------------------------------------ named oracle

class N:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


class Tag:
    """A child tree together with the names its binders introduce."""
    __slots__ = ("names", "tree")

    def __init__(self, names, tree):
        self.names, self.tree = names, tree


_fresh = itertools.count()


def named(x, env):
    if isinstance(x, Var):
        return N(env[len(env) - 1 - x.i])

    def child(c, k):
        names = [f"b{next(_fresh)}" for _ in range(k)]
        return Tag(names, named(c, env + names))

    return map_kids(x, child)


def rename(x, sigma):
    if isinstance(x, N):
        return sigma.get(x.name, x)
    return map_kids(x, lambda c, k: Tag(c.names, rename(c.tree, sigma)))


def unname(x, env):
    if isinstance(x, N):
        return Var(len(env) - 1 - env.index(x.name))
    return map_kids(x, lambda c, k: unname(c.tree, env + c.names))


def oracle_subst(x, f, n, m):
    """Capture-free named substitution of ``f`` (over Δ) into ``x`` (over Γ).

    Binder names are globally fresh, so no renaming is ever needed.
    """
    G = [f"g{k}" for k in range(n)]
    D = [f"d{k}" for k in range(m)]
    sigma = {G[k]: named(f[k], D) for k in range(n)}
    return unname(rename(named(x, G), sigma), D)


# ------------------------------------------------------------ laws

CASES = 1000


def test_subst_matches_named_oracle():
    rng = random.Random(11)
    for _ in range(CASES):
        n, m = rng.randrange(4), rng.randrange(4)
        x = gen(rng, n)
        f = gen_subst(rng, n, m)
        assert subst(x, f) == oracle_subst(x, f, n, m)


def test_identity_substitution():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randrange(5)
        x = gen(rng, n)
        assert subst_type(x, identity(n)) == x
        assert subst_term(x, identity(n)) == x
    assert subst_term(S.Refl(Var(0)), identity(1)) == S.Refl(Var(0))


def test_composition_law():
    rng = random.Random(2)
    for _ in range(CASES):
        n, m, k = rng.randrange(4), rng.randrange(4), rng.randrange(4)
        x = gen(rng, n)
        f = gen_subst(rng, n, m)
        g = gen_subst(rng, m, k)
        assert subst(subst(x, f), g) == subst(x, compose(f, g))


def test_weaken_basics():
    assert weaken(Var(0), 1) == Var(0)
    assert weaken(Var(0), 0) == Var(1)
    with pytest.raises(ValueError):
        weaken(Var(0), -1)


def test_weaken_then_substitute_fresh_is_identity():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randrange(5)
        x = gen(rng, n)
        t = gen(rng, n, 1)
        assert subst(weaken(x), identity(n) + (t,)) == x


def test_weakening_commutes_with_substitution():
    rng = random.Random(4)
    for _ in range(CASES):
        n, m = rng.randrange(4), rng.randrange(4)
        x = gen(rng, n)
        f = gen_subst(rng, n, m)
        lhs = weaken(subst(x, f))
        assert lhs == subst(weaken(x), lift(f))
        assert lhs == subst(x, tuple(shift(t, 1) for t in f))


def test_projection_is_weakening():
    rng = random.Random(5)
    for _ in range(200):
        n, k = rng.randrange(4), rng.randrange(1, 3)
        x = gen(rng, n)
        assert subst(x, projection(n, k)) == shift(x, k)


def test_pair_subst_on_diagonal():
    a = S.Const("a")
    for n in range(3):
        p = pair_subst(a, a, n)
        assert subst(Var(1), p) == a and subst(Var(0), p) == a
        # δ followed by the pair of two copies of the fresh variable
        assert subst(Var(0), diagonal(n)) == subst(Var(1), diagonal(n)) == Var(0)


def test_pair_subst_naturality():
    """(a;b)∘f = f••∘(a[f];b[f]) on random instances."""
    rng = random.Random(6)
    for _ in range(500):
        n, m = rng.randrange(4), rng.randrange(4)
        a, b = gen(rng, n, 2), gen(rng, n, 2)
        f = gen_subst(rng, n, m)
        lhs = compose(pair_subst(a, b, n), f)
        rhs = compose(lift(lift(f)), pair_subst(subst(a, f), subst(b, f), m))
        assert lhs == rhs


def test_inst_is_subst_without_tail():
    rng = random.Random(7)
    for _ in range(200):
        x = gen(rng, 2)
        a, b = gen(rng, 0, 1), gen(rng, 0, 1)
        assert inst(x, a, b) == subst(x, (a, b))


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_shift_composes(i, d1, d2):
    assert shift(shift(Var(i), d1), d2) == shift(Var(i), d1 + d2)


@given(st.integers(0, 2**31 - 1))
def test_size_counts_nodes(seed):
    x = gen(random.Random(seed), 3)
    assert size(x) == 1 + sum(size(c) for c, _ in kids(x))
    assert size(shift(x, 2)) == size(x)


def test_subst_arity_is_enforced():
    with pytest.raises(S.SubstError):
        subst_type(S.Id(S.Base("A"), Var(0), Var(3)), identity(2))


def test_lookup_weakens_into_context():
    A = S.Base("A")
    ctx = (S.Decl(A), S.Decl(S.Id(A, Var(0), Var(0))))
    assert lookup(ctx, 0) == S.Id(A, Var(1), Var(1))
    assert lookup(ctx, 1) == A


def test_judgment_arity():
    with pytest.raises(ValueError):
        S.Judgment("term", (), (S.Zero(),))


def test_alpha_equivalence_ignores_names():
    assert S.Lam(S.NatT(), Var(0), ("x",)) == S.Lam(S.NatT(), Var(0), ("y",))


# ------------------------------------------------------------ parser

def test_empty_input():
    with pytest.raises(ParseError, match="empty input"):
        parse("")


@pytest.mark.parametrize("label,item", corpus_items(), ids=lambda v: v if isinstance(v, str) else "")
def test_round_trip_corpus(label, item):
    j = item.judgment
    assert parse_judgment(show(j, (), item.signature), item.signature) == j


@pytest.mark.parametrize("path", accept_files() + reject_files(), ids=lambda p: p.name)
def test_round_trip_documents(path):
    try:
        doc = parse_document(path.read_text())
    except ParseError:
        pytest.skip("file is a parse-level reject")
    again = parse_document(show_document(doc))
    assert [i.judgment for i in again.items] == [i.judgment for i in doc.items]


def test_parse_reports_position():
    with pytest.raises(ParseError) as e:
        parse_judgment("x : A |- r(x : A")
    assert e.value.line == 1
