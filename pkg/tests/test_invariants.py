import pytest

from modgal import (
    Ring, artin_schreier_gens, build_balpha, build_cp2_example, build_dk, build_mho,
    erasure_lambdas, field_create, find_point, freeness_on_points, group_cyclic, group_elemab,
    invariant_ring_elimination, invariants_bruteforce, make_galgebra, subalgebra_membership,
)
from modgal import linalg
from modgal.errors import ModgalError
from modgal.invariants import field_embedding, point_basis_free

K2, K3, K4, K9 = field_create(2), field_create(3), field_create(2, 2), field_create(3, 2)


def balpha(k, alphas):
    return build_balpha(k, group_elemab(k.p, len(alphas))[1], alphas)


def _rank(polys):
    monos = sorted({e for f in polys for e in f.terms})
    M = [[f.terms.get(e, 0) for f in polys] for e in monos]
    return linalg.rank(M, polys[0].ring.ctx, len(polys)) if M else 0


def lines(A, d):
    return invariants_bruteforce(A, d).lines()


def test_bruteforce_examples():
    M = build_mho(K2, 2, 1)
    assert lines(M, 2) == ["INV 0 1", "INV 2 Y^2 + Y"]
    M2 = build_mho(K2, 2, 2)
    assert [str(f) for f in invariants_bruteforce(M2, 2).basis] == ["1", "Y2^2 + Y2", "Y1^2 + Y1"]
    C = build_cp2_example(K3)
    assert lines(C, 0) == ["INV 0 1"]


@pytest.mark.parametrize("A", [
    build_mho(K3, 3, 1).base, build_cp2_example(K2), build_dk(K2, group_cyclic(2, 2)).base,
    balpha(K4, [K4.one, K4.gen]).base,
], ids=["mho3", "cp2", "dk-c4", "balpha4"])
def test_bruteforce_properties(A):
    dims = []
    for d in range(0, 5):
        basis = invariants_bruteforce(A, d).basis
        for f in basis:
            assert A.is_invariant(f)
        lms = [f.leading_monomial() for f in basis]
        assert len(set(lms)) == len(lms)           # echelon form, hence independent
        dims.append(len(basis))
    assert dims == sorted(dims)
    # exact span: traces of monomials of degree <= 4 lie in the k-span of the basis
    basis = invariants_bruteforce(A, 4).basis
    r0 = _rank(basis)
    for e in A.ring.monomials(4):
        t = A.trace(A.ring.monomial(e))
        if t.degree() <= 4:
            assert _rank(list(basis) + [t]) == r0


def test_artin_schreier_gens():
    assert [str(f) for f in artin_schreier_gens(build_mho(K2, 2, 1))] == ["Y^2 + Y"]
    assert [str(f) for f in artin_schreier_gens(build_mho(K3, 3, 1))] == ["Y^3 + 2*Y"]
    assert [str(f) for f in artin_schreier_gens(build_mho(K2, 2, 2))] == ["Y1^2 + Y1", "Y2^2 + Y2"]


# --- erasure -------------------------------------------------------------------

def test_erasure_two_translations():
    B = balpha(K2, [K2.one])
    c = erasure_lambdas(B, "Z", B)
    T = c.tensor
    assert [str(l) for l in c.lambdas] == ["Z1 + Z2 + 1"]
    assert T.is_invariant(c.lambdas[0])
    assert c.substitution().apply(c.rewrites[0]) == T.ring.var("Z2")
    assert c.rewrites[0] == c.expr_ring.parse("L1 + Z1 + 1")


def test_erasure_dk_and_translation():
    D = build_dk(K2, group_cyclic(2, 1))
    B = balpha(K2, [K2.one])
    c = erasure_lambdas(D, "x@1", B)
    T = c.tensor
    x, Z = T.ring.var("x@1"), T.ring.var("Z")
    # x*Z + (x + 1)*(Z + 1) expanded in characteristic 2
    assert c.lambdas[0] == x * Z + (x + 1) * (Z + 1)
    assert c.lambdas[0] == T.ring.parse("x@1 + Z + 1")


def test_erasure_trivial_gamma():
    B = balpha(K2, [K2.one])
    trivial = make_galgebra(Ring(K2, ("W1", "W2")), B.base.group, [{}])
    c = erasure_lambdas(B, "Z", trivial)
    assert [str(l) for l in c.lambdas] == ["W1", "W2"]


def test_erasure_needs_triangular_gamma():
    B = balpha(K2, [K2.one])
    R = Ring(K2, ("a", "b"))
    swap = make_galgebra(R, B.base.group, [{"a": "b", "b": "a"}])
    with pytest.raises(ModgalError):
        erasure_lambdas(B, "Z", swap)


@pytest.mark.parametrize("p", [2, 3])
def test_erasure_pairs(p):
    k = field_create(p, 2)
    B = balpha(k, [k.one, k.gen])
    M = build_mho(k, p, 2)
    C = build_cp2_example(field_create(p))
    for A, G in [(B, M), (M, B), (B, B), (M, M)]:
        c = erasure_lambdas(A, find_point(A.base).element, G)
        T = c.tensor
        sub = c.substitution()
        for tv, lam, r in zip(c.var_order, c.lambdas, c.rewrites):
            assert T.is_invariant(lam)
            assert sub.apply(r) == T.ring.var(tv)
    c = erasure_lambdas(C, find_point(C).element, C, ("y", "x"))
    assert c.var_order == ("y2", "x2")


# --- elimination ---------------------------------------------------------------

def test_elimination_mho_n1():
    r = invariant_ring_elimination(build_mho(K2, 2, 1))
    assert [str(g) for g in r.generators] == ["Y^2 + Y"]
    assert r.agrees_with_bruteforce and r.verified_degree == 2


@pytest.mark.parametrize("S,d", [
    (build_mho(K2, 2, 2), 4), (build_mho(K3, 3, 1), 3), (balpha(K4, [K4.one, K4.gen]), 4),
], ids=["mho-2-2", "mho-3-1", "balpha-gf4"])
def test_elimination_agrees_with_oracle(S, d):
    r = invariant_ring_elimination(S, d_check=d)
    A = S.base
    for g in r.generators:
        assert A.is_invariant(g)
    assert r.agrees_with_bruteforce
    for f in invariants_bruteforce(A, d).basis:
        assert subalgebra_membership(f, list(r.generators)).member


def test_elimination_balpha_generator():
    r = invariant_ring_elimination(balpha(K4, [K4.one, K4.gen]), d_check=4)
    assert [str(g) for g in r.generators] == ["Z^4 + Z"]


def test_elimination_rejects_trivial_group():
    A = make_galgebra(Ring(K2, ("Y",)), group_cyclic(2, 0), [])
    with pytest.raises(ModgalError):
        invariant_ring_elimination(A)


# --- freeness ------------------------------------------------------------------

def test_field_embedding_is_a_homomorphism():
    K16 = field_create(2, 4)
    emb = field_embedding(K4, K16)
    for a in range(4):
        for b in range(4):
            assert emb[K4.mul[a][b]] == K16.mul[emb[a]][emb[b]]
            assert emb[K4.add[a][b]] == K16.add[emb[a]][emb[b]]


def test_freeness_examples():
    rep = freeness_on_points(build_dk(K2, group_cyclic(2, 1)), tower=2)
    assert rep.free and not rep.partial
    rep = freeness_on_points(build_cp2_example(K2), tower=2)
    assert rep.free and [lv[3] for lv in rep.levels] == [4, 16]
    trivial = make_galgebra(Ring(K2, ("Y",)), group_cyclic(2, 1), [{}])
    rep = freeness_on_points(trivial, tower=1)
    assert not rep.free and rep.witnesses[0][2] == "g"


def test_freeness_partial_and_fallback():
    D = build_dk(K3, group_elemab(3, 2)[0])
    rep = freeness_on_points(D, tower=1, cap=100, fallback=False)
    assert rep.partial and not rep.free
    rep = freeness_on_points(D, tower=1, cap=100)
    assert rep.free and rep.levels[0][2] == "groebner"


def test_freeness_groebner_finds_witness():
    G = group_elemab(2, 2)[0]
    R = Ring(K2, ("a", "b", "c"))
    broken = make_galgebra(R, G, [{"a": "a + 1"}, {}])
    rep = freeness_on_points(broken, tower=1, cap=1)
    assert not rep.free and rep.levels[0][2] == "groebner"
    assert {w[2] for w in rep.witnesses} == {G.names[G.gens[1]]}


def test_point_basis_free_dk():
    D = build_dk(K3, group_cyclic(3, 1))
    chk = point_basis_free(D, D.x1, 3)
    assert chk.free
