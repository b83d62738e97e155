import itertools

import numpy as np
import pytest

from att.groupoid import (FinGroupoid, GroupoidFunctor, NatIso, PseudoFunctor, check_groupoid,
                          functor_eq, functors_between, identity_functor, identity_nat,
                          whisker_left)
from att.grothendieck import (check_2pullback, check_display, check_pullback,
                              check_reindex_square, check_splitness, check_transport,
                              check_transport_stability, cells_into, cloven_transport,
                              inverse_oracle, is_normal_at, reindex, reindex_section,
                              sections, total_groupoid, transport_cones, upper_functor,
                              weakening)
from att.verify import functor_family

Z2 = FinGroupoid.cyclic(2)
PT = FinGroupoid.trivial()
D2 = FinGroupoid.discrete(["l", "r"], "D2")


def nonnormal(base=PT):
    return PseudoFunctor(base, [Z2], [identity_functor(Z2)], {(0, 0): [1]}, [[1]], "N")


def test_strict_total_is_the_fiber():
    D = total_groupoid(PseudoFunctor.constant(PT, Z2, "Z"))
    T = D.total
    assert T.n_obj == 1 and T.n_mor == 2
    for a, b in itertools.product(range(2), repeat=2):
        # (1, a) ∘ (1, b) = (1, a + b)
        assert T.morphisms[T.comp[a, b]][1] == Z2.morphisms[Z2.comp[a, b]]


def test_nonnormal_identity_and_composite():
    D = total_groupoid(nonnormal())
    T = D.total
    one = T.morphisms[T.ident[0]]
    assert one[:2] == ("1", "s")
    # composite formula with A_1 = 1 and φ = s:  (1,a)∘(1,b) = (1, a·b·s)
    idx = {"e": 0, "s": 1}
    for g, f in itertools.product(range(T.n_mor), repeat=2):
        a, b = T.morphisms[g][1], T.morphisms[f][1]
        want = ["e", "s"][(idx[a] + idx[b] + 1) % 2]
        assert T.morphisms[T.comp[g, f]][1] == want
    assert check_groupoid(T).ok


def test_inverse_formula_on_every_shipped_type(models):
    for m in models.values():
        for name, A in m.pseudofunctors():
            assert inverse_oracle(total_groupoid(A).total).ok, (m.name, name)


def test_display_checks_on_models(models):
    for m in models.values():
        for name, A in m.pseudofunctors():
            assert check_display(A).ok, (m.name, name)


def test_reindex_along_identity():
    A = nonnormal()
    assert reindex(A, identity_functor(PT)) == A


def test_reindex_nonnormal_along_discrete_base():
    f = GroupoidFunctor(D2, PT, [0, 0], [0, 0], "!")
    A = reindex(nonnormal(), f)
    assert A.base is D2 and len(A.fibers) == 2
    for g in range(2):
        assert A.fibers[g] == Z2
        assert A.psi[g].tolist() == [1]
        p = int(D2.ident[g])
        assert A.phi[(p, p)].tolist() == [1]
    assert total_groupoid(A).total.n_mor == 4
    assert check_display(A).ok


def test_reindex_square_counts():
    A = PseudoFunctor.constant(D2, Z2, "Z")
    for f in functor_family(D2):
        r = check_reindex_square(A, f)
        assert r.ok, r.all_failures()


def test_wrong_square_fails():
    A = PseudoFunctor.constant(D2, Z2, "Z")
    one = identity_functor(D2)
    swap = GroupoidFunctor(D2, D2, [1, 0], [1, 0], "swap")
    DA = total_groupoid(reindex(A, one))
    up = upper_functor(A, one)
    assert check_pullback(up, DA.proj, total_groupoid(A).proj, one).ok
    assert not check_pullback(up, DA.proj, total_groupoid(A).proj, swap).ok


def test_splitness_on_generated_family():
    A = reindex(nonnormal(), GroupoidFunctor(D2, PT, [0, 0], [0, 0]))
    fs = functor_family(D2)
    r = check_splitness(A, fs, lambda f: functor_family(f.dom, endos=0))
    assert r.ok and r.checks > 2


def test_strict_transport_along_identity_is_normal():
    D = total_groupoid(PseudoFunctor.constant(PT, Z2, "Z"))
    g = identity_functor(D.total)
    t, tau = cloven_transport(D, g, identity_nat(D.proj @ g))
    assert functor_eq(t, g)
    assert np.array_equal(tau.comp, D.total.ident[g.obj])
    assert is_normal_at(D, g)


def test_nonnormal_transport_is_not_normal():
    D = total_groupoid(nonnormal())
    T = D.total
    g = identity_functor(T)
    t, tau = cloven_transport(D, g, identity_nat(D.proj @ g))
    assert T.morphisms[tau.comp[0]][:2] == ("1", "e")
    assert T.morphisms[T.ident[0]][:2] == ("1", "s")
    assert not is_normal_at(D, g)
    assert check_transport(D, g, identity_nat(D.proj @ g)).ok


def test_transport_laws_on_models(models):
    for m in models.values():
        for name, A in m.pseudofunctors():
            D = total_groupoid(A)
            g = identity_functor(D.total)
            for pi in cells_into(D.proj @ g, limit=4):
                hs = functor_family(g.dom, endos=0)
                assert check_transport(D, g, pi, hs).ok, (m.name, name)


def test_two_pullback_from_transport_cones():
    A = reindex(nonnormal(), GroupoidFunctor(D2, PT, [0, 0], [0, 0]))
    for f in functor_family(D2):
        cones, _ = transport_cones(A, f, limit=4)
        assert cones
        assert check_2pullback(A, f, cones).ok


def test_sections_and_reindexing():
    A = nonnormal()
    D = total_groupoid(A)
    secs = sections(D)
    # the only morphism of the point must go to the identity (1, s)
    assert len(secs) == 1
    s = secs[0]
    assert s.check().ok
    f = GroupoidFunctor(D2, PT, [0, 0], [0, 0], "!")
    sf = reindex_section(s, f)
    assert sf.check().ok
    assert functor_eq(upper_functor(A, f) @ sf.functor, s.functor @ f)


def test_transport_stability_and_mutation(models):
    m = models["nonnormal"]
    A = m.type_pf("A")
    W = weakening(A)
    f = identity_functor(A.base)
    assert check_transport_stability(A, W, f, limit=4).ok

    DW = total_groupoid(W)

    def broken(D, g, p):
        t, tau = cloven_transport(D, g, p)
        if D is DW:
            return t, tau
        T = D.total
        # replace τ by a different 2-cell with the same endpoints where one exists
        comp = [next((c for c in T.hom(int(T.src[k]), int(T.tgt[k])) if c != k), k)
                for k in tau.comp.tolist()]
        return t, NatIso(tau.F, tau.G, comp)

    r = check_transport_stability(A, W, f, limit=4, transport=broken)
    assert not r.ok
