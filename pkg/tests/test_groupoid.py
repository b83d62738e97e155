import itertools
import random

import numpy as np
import pytest

from att.groupoid import (FinGroupoid, GroupoidFunctor, NatIso, PseudoFunctor, Report,
                          SizeLimitError, check_functor, check_groupoid, check_nat_iso,
                          check_pseudofunctor, functor_eq, functors_between, horizontal,
                          identity_functor, identity_nat, inverse_nat, max_size,
                          nat_isos_between, set_max_size, size_limit, vertical,
                          whisker_left, whisker_right)

Z2 = FinGroupoid.cyclic(2)
Z3 = FinGroupoid.cyclic(3)
K2 = FinGroupoid.codiscrete(["u", "v"], "K2")
K3 = FinGroupoid.codiscrete(["a", "b", "c"], "K3")
D2 = FinGroupoid.discrete(["l", "r"], "D2")
PT = FinGroupoid.trivial()


# ------------------------------------------------------------ naive oracles

def laws_hold(G):
    """Groupoid laws by direct enumeration, independent of check_groupoid."""
    n = G.n_mor
    src, tgt, comp = G.src.tolist(), G.tgt.tolist(), G.comp.tolist()
    for g in range(n):
        for f in range(n):
            h = comp[g][f]
            if tgt[f] == src[g]:
                if h < 0 or src[h] != src[f] or tgt[h] != tgt[g]:
                    return False
            elif h >= 0:
                return False
    for f in range(n):
        if comp[f][G.ident[src[f]]] != f or comp[G.ident[tgt[f]]][f] != f:
            return False
        if not any(comp[g][f] == G.ident[src[f]] and comp[f][g] == G.ident[tgt[f]]
                   for g in range(n) if src[g] == tgt[f]):
            return False
    for h, g, f in itertools.product(range(n), repeat=3):
        if tgt[f] == src[g] and tgt[g] == src[h]:
            if comp[h][comp[g][f]] != comp[comp[h][g]][f]:
                return False
    return True


def is_functor(D, C, obj, mor):
    for f in range(D.n_mor):
        if C.src[mor[f]] != obj[D.src[f]] or C.tgt[mor[f]] != obj[D.tgt[f]]:
            return False
    for x in range(D.n_obj):
        if mor[D.ident[x]] != C.ident[obj[x]]:
            return False
    for g, f in itertools.product(range(D.n_mor), repeat=2):
        h = D.comp[g, f]
        if h >= 0 and mor[h] != C.comp[mor[g], mor[f]]:
            return False
    return True


def count_functors(D, C):
    n = 0
    for obj in itertools.product(range(C.n_obj), repeat=D.n_obj):
        for mor in itertools.product(range(C.n_mor), repeat=D.n_mor):
            n += is_functor(D, C, obj, mor)
    return n


def mutate(G, rng):
    comp = G.comp.copy()
    g, f = rng.randrange(G.n_mor), rng.randrange(G.n_mor)
    comp[g, f] = rng.randrange(-1, G.n_mor)
    return FinGroupoid(G.objects, G.morphisms, G.src, G.tgt, comp, G.ident, G.inv, G.name)


# ------------------------------------------------------------ groupoids

@pytest.mark.parametrize("G", [Z2, Z3, K2, K3, D2, PT], ids=lambda G: G.name)
def test_standard_groupoids_pass(G):
    assert check_groupoid(G).ok
    assert laws_hold(G)


def test_idempotent_table_fails_inverse_law():
    G = FinGroupoid(["*"], ["e", "s"], [0, 0], [0, 0], [[0, 1], [1, 1]], [0], [0, 1], "bad")
    r = check_groupoid(G)
    assert not r.ok
    assert "inverse law violated at s" in r.failures


def test_check_groupoid_agrees_with_oracle_on_mutations():
    rng = random.Random(0)
    base = [Z2, Z3, K2, FinGroupoid.cyclic(4)]
    agreements = 0
    for _ in range(400):
        G = mutate(rng.choice(base), rng)
        assert check_groupoid(G).ok == laws_hold(G)
        agreements += 1
    assert agreements == 400


def test_build_and_group_helpers():
    S3 = FinGroupoid.group(
        list(itertools.permutations(range(3))),
        lambda g, f: tuple(g[f[i]] for i in range(3)), (0, 1, 2), "S3")
    assert S3.n_mor == 6 and check_groupoid(S3).ok
    assert S3.chain(S3.m((1, 0, 2)), S3.m((1, 0, 2))) == S3.m((0, 1, 2))
    with pytest.raises(ValueError):
        K2.compose(K2.m(("u", "v")), K2.m(("u", "v")))


def test_size_limit():
    old = max_size()
    set_max_size(4)
    try:
        with pytest.raises(SizeLimitError, match="over the limit"):
            FinGroupoid.cyclic(5)
        with size_limit(8):
            assert FinGroupoid.cyclic(5).n_mor == 5
        with pytest.raises(SizeLimitError):
            FinGroupoid.cyclic(5)
    finally:
        set_max_size(None)
    assert max_size() == old


def test_size_limit_reads_environment(monkeypatch):
    monkeypatch.setenv("ATT_MAX_GROUPOID_SIZE", "3")
    with pytest.raises(SizeLimitError):
        FinGroupoid.cyclic(4)


# ------------------------------------------------------------ functors

def test_identity_functor_passes():
    for G in (Z2, K3, D2):
        assert check_functor(identity_functor(G)).ok


@pytest.mark.parametrize("D,C", [(Z2, Z2), (Z3, Z3), (K2, Z2), (K3, Z2), (Z2, K2),
                                 (D2, Z2), (Z2, Z3), (K2, K2)],
                         ids=lambda G: G.name)
def test_functors_between_matches_brute_force(D, C):
    found = functors_between(D, C)
    assert len(found) == count_functors(D, C)
    keys = {(tuple(F.obj), tuple(F.mor)) for F in found}
    assert len(keys) == len(found)


def test_functor_counts_closed_form():
    # codiscrete on n objects into a group G: |G|^(n-1)
    assert len(functors_between(K3, Z3)) == 9
    assert len(functors_between(Z3, Z2)) == 1


def test_corrupted_functor_fails():
    F = identity_functor(Z3)
    bad = GroupoidFunctor(Z3, Z3, F.obj, [0, 2, 2])
    assert not check_functor(bad).ok


def test_functor_equality_and_composition():
    swap = GroupoidFunctor.from_labels(K2, K2, {"u": "v", "v": "u"},
                                       lambda m: (("v" if m[0] == "u" else "u"),
                                                  ("v" if m[1] == "u" else "u")))
    assert check_functor(swap).ok
    assert functor_eq(swap @ swap, identity_functor(K2))
    assert not functor_eq(swap, identity_functor(K2))
    with pytest.raises(ValueError):
        swap @ identity_functor(Z2)


# ------------------------------------------------------------ 2-cells

def naturality_oracle(a):
    F, G = a.F, a.G
    D, C = F.dom, F.cod
    for f in range(D.n_mor):
        x, y = D.src[f], D.tgt[f]
        if C.comp[G.mor[f], a.comp[x]] != C.comp[a.comp[y], F.mor[f]]:
            return False
    return all(C.src[a.comp[x]] == F.obj[x] and C.tgt[a.comp[x]] == G.obj[x]
               for x in range(D.n_obj))


def test_identity_nat_passes():
    F = identity_functor(K3)
    assert check_nat_iso(identity_nat(F)).ok


def test_corrupted_components_match_naturality_oracle():
    rng = random.Random(3)
    F = identity_functor(K3)
    for _ in range(200):
        comp = [rng.choice(K3.hom(x, x) + K3.hom(x, (x + 1) % 3)) for x in range(3)]
        try:
            a = NatIso(F, F, comp)
        except Exception:
            continue
        assert check_nat_iso(a).ok == naturality_oracle(a)


def test_nat_isos_between_counts():
    # automorphisms of the identity functor on K2: one per choice at u, forced at v
    F = identity_functor(K2)
    assert len(nat_isos_between(F, F)) == 1
    # on Z3 the centre is the whole group
    G = identity_functor(Z3)
    assert len(nat_isos_between(G, G)) == 3


def test_inverse_and_vertical():
    F = identity_functor(Z3)
    a = NatIso(F, F, [Z3.m("g1")])
    assert vertical(inverse_nat(a), a) == identity_nat(F)


def test_interchange_law():
    Fs = functors_between(K2, K2)
    Gs = functors_between(K2, Z2)
    for F, G in itertools.product(Fs, repeat=2):
        for a in nat_isos_between(F, G):
            for K, L in itertools.product(Gs, repeat=2):
                for b in nat_isos_between(K, L):
                    h = horizontal(b, a)
                    other = vertical(whisker_left(b, G), whisker_right(K, a))
                    alt = vertical(whisker_right(L, a), whisker_left(b, F))
                    assert np.array_equal(h.comp, other.comp)
                    assert np.array_equal(h.comp, alt.comp)


# ------------------------------------------------------------ pseudofunctors

def nonnormal(phi="s", psi="s"):
    one = identity_functor(Z2)
    return PseudoFunctor(PT, [Z2], [one], {(0, 0): [Z2.m(phi)]}, [[Z2.m(psi)]], "N")


def test_strict_pseudofunctor_passes():
    A = PseudoFunctor.constant(Z3, Z2, "const")
    assert A.is_strict()
    assert check_pseudofunctor(A).ok


def test_nonnormal_passes_coherence():
    A = nonnormal()
    assert not A.is_strict()
    assert check_pseudofunctor(A).ok


def test_nonnormal_with_wrong_phi_fails_unit_law():
    r = check_pseudofunctor(nonnormal(phi="e"))
    assert not r.ok
    assert any("unit law A_p*ψ = φ[1,p]" in m for m in r.all_failures())


def test_coherence_by_enumeration():
    """All (φ, ψ) choices over the point with fiber Z2: passing iff φ = ψ."""
    for phi, psi in itertools.product("es", repeat=2):
        assert check_pseudofunctor(nonnormal(phi, psi)).ok == (phi == psi)


# ------------------------------------------------------------ reports

def test_report_notes_do_not_fail():
    r = Report("top")
    child = r.add(Report("child"))
    child.note("skipped")
    child.check(True, "fine")
    assert r.ok and r.total_checks() == 1
    assert r.all_notes() == ["top / child: skipped"]
    d = r.to_dict()
    assert d["children"][0]["notes"] == ["skipped"]
    child.fail("broken")
    assert not r.ok and "note: skipped" in r.render()
