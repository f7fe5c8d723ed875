"""Invariant rings: a linear-algebra oracle, erasure invariants, invariants by elimination
against the Y-translation algebra, Artin-Schreier generators and freeness on rational points."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .errors import ModgalError, NotAPointError
from .ffield import FieldCtx, FieldElement, field_create
from .galgebra import GAlgebra, certify_point, find_point, is_triangular, make_galgebra, same_side_tensor
from .groebner import SubalgebraTest, _fresh_names, groebner, normal_form
from .pgroup import elemab_coords
from .polyring import Polynomial, Ring, VarMap


def _base(A) -> GAlgebra:
    return A.base if hasattr(A, "base") else A


# --- brute-force oracle -------------------------------------------------------

@dataclass(frozen=True)
class InvariantBasis:
    algebra: GAlgebra = field(repr=False)
    degree_bound: int
    basis: tuple[Polynomial, ...]

    def lines(self) -> list[str]:
        return [f"INV {f.degree()} {f}" for f in self.basis]


def echelon_polys(ring: Ring, monos, vectors) -> list[Polynomial]:
    """Fully reduced basis of span(vectors), pivots on the largest monomials.

    Returned in ascending order of leading monomial.
    """
    if not vectors:
        return []
    ctx = ring.ctx
    order = sorted(range(len(monos)), key=lambda i: ring.key(monos[i]), reverse=True)
    rows = [[v[i] for i in order] for v in vectors]
    R, _ = linalg.rref(rows, ctx, len(order))
    out = [ring.from_codes({monos[order[j]]: c for j, c in enumerate(r)}) for r in R]
    out.sort(key=lambda f: ring.key(f.leading_monomial()))
    return out


def _coeff_matrix(polys):
    """Columns = polys, rows = monomials occurring in any of them."""
    rowidx: dict = {}
    for f in polys:
        for e in f.terms:
            rowidx.setdefault(e, len(rowidx))
    M = [[0] * len(polys) for _ in rowidx]
    for j, f in enumerate(polys):
        for e, c in f.terms.items():
            M[rowidx[e]][j] = c
    return M, rowidx


def invariants_bruteforce(A, d: int) -> InvariantBasis:
    """k-basis of the invariants of degree <= d, as the kernel of the stacked (sigma_s - 1)."""
    A = _base(A)
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    ring = A.ring
    monos = ring.monomials(d)
    rows: list[list[int]] = []
    for m in A.gen_maps:
        diffs = [m.apply(ring.monomial(e)) - ring.monomial(e) for e in monos]
        M, _ = _coeff_matrix(diffs)
        rows.extend(M)
    null = linalg.nullspace(rows, A.ctx, len(monos))
    basis = echelon_polys(ring, monos, null)
    return InvariantBasis(A, d, tuple(basis))


# --- freeness of a point orbit over invariants -----------------------------------

@dataclass(frozen=True)
class FreeBasisCheck:
    free: bool
    rank: int
    unknowns: int
    invariants: tuple[Polynomial, ...] = field(repr=False)


def point_basis_free(A, a, d: int) -> FreeBasisCheck:
    """Does sum_g r_g (a)g = 0 with invariant r_g of degree <= d force all r_g = 0?"""
    A = _base(A)
    cert = certify_point(A, a)
    inv = invariants_bruteforce(A, d).basis
    cols = [orb * r for orb in cert.orbit for r in inv]
    M, _ = _coeff_matrix(cols)
    rk = linalg.rank(M, A.ctx, len(cols)) if M else 0
    return FreeBasisCheck(rk == len(cols), rk, len(cols), inv)


# --- erasure ------------------------------------------------------------------

@dataclass(frozen=True)
class ErasureCert:
    """lambda_i = tr(a T_i) in A (x) Gamma and expressions of every T_i through them.

    ``rewrites[i]`` lives in ``expr_ring`` (A's variables plus L1..LN) and
    turns into T_i when each L_j is replaced by lambda_j.
    """

    tensor: GAlgebra = field(repr=False)
    point: Polynomial
    var_order: tuple[str, ...]
    lambdas: tuple[Polynomial, ...]
    rewrites: tuple[Polynomial, ...]
    expr_ring: Ring = field(repr=False)

    def substitution(self) -> VarMap:
        T = self.tensor.ring
        imgs = [T.var(v) for v in self.expr_ring.vars[: len(self.expr_ring.vars) - len(self.lambdas)]]
        return VarMap(self.expr_ring, T, imgs + list(self.lambdas))


def erasure_lambdas(A, a, Gamma, var_order=None) -> ErasureCert:
    """Erase the action on a triangular Gamma using a point a of A."""
    A, Gamma = _base(A), _base(Gamma)
    pa = certify_point(A, a)
    tri = is_triangular(Gamma, var_order, all_orders=var_order is None)
    if tri is None:
        raise ModgalError("Gamma is not triangular in the given variable order")
    T = same_side_tensor(A, Gamma)
    jA, jG = T.injections
    ta = jA.apply(pa.element)
    certify_point(T, ta)
    a_vars = [str(jA.image(v)) for v in A.ring.vars]
    t_vars = [str(jG.image(v)) for v in tri.var_order]

    lams = []
    for tv in t_vars:
        lam = T.trace(ta * T.ring.var(tv))
        if not T.is_invariant(lam):
            raise ModgalError(f"tr(a*{tv}) is not invariant")
        lams.append(lam)

    lnames = _fresh_names("L", len(t_vars), T.ring.vars)
    E = Ring(T.ctx, tuple(a_vars) + tuple(lnames), T.ring.order)
    rewrites: list[Polynomial] = []
    for i, (tv, lam) in enumerate(zip(t_vars, lams)):
        rest = T.ring.var(tv) - lam
        allowed = set(a_vars) | set(t_vars[:i])
        if not rest.variables() <= allowed:
            raise ModgalError(f"{tv} - lambda_{i + 1} involves later variables")
        images = {v: E.var(v) for v in a_vars}
        for j, v in enumerate(t_vars):
            images[v] = rewrites[j] if j < i else E.zero()
        rewrites.append(E.var(lnames[i]) + VarMap(T.ring, E, [images[v] for v in T.ring.vars]).apply(rest))

    cert = ErasureCert(T, ta, tuple(t_vars), tuple(lams), tuple(rewrites), E)
    sub = cert.substitution()
    for tv, r in zip(t_vars, rewrites):
        if sub.apply(r) != T.ring.var(tv):
            raise ModgalError(f"reconstruction of {tv} failed")
    return cert


# --- Artin-Schreier generators --------------------------------------------------

def artin_schreier_gens(M) -> list[Polynomial]:
    """Y_i^p - Y_i, certified against the brute-force invariants of degree <= p."""
    A = _base(M)
    p = A.ctx.p
    gens = [Y**p - Y for Y in A.ring.gens()]
    for g in gens:
        if not A.is_invariant(g):
            raise ModgalError(f"{g} is not invariant")
    brute = invariants_bruteforce(A, p).basis
    span = [A.ring.one()] + gens
    monos = A.ring.monomials(p)
    mat = [[f.terms.get(e, 0) for f in span] for e in monos]
    r0 = linalg.rank(mat, A.ctx, len(span))
    for f in brute:
        aug = [row + [f.terms.get(e, 0)] for row, e in zip(mat, monos)]
        if linalg.rank(aug, A.ctx, len(span) + 1) != r0:
            raise ModgalError(f"brute-force invariant {f} is not spanned")
    return gens


# --- invariant ring by elimination ----------------------------------------------

@dataclass(frozen=True)
class EliminationResult:
    """Generators of S^G up to a degree bound, with tag expressions.

    ``expressions[i]`` is a polynomial in ``tag_ring`` (u_i for Y_i^p - Y_i,
    v_j for mu_j) equal to ``generators[i]`` inside S (x) k[Y].  Completeness
    is only claimed up to ``verified_degree``.
    """

    generators: tuple[Polynomial, ...]
    expressions: tuple[Polynomial, ...]
    tag_ring: Ring = field(repr=False)
    degree: int
    verified_degree: int
    agrees_with_bruteforce: bool
    mu: ErasureCert = field(repr=False)
    lam: ErasureCert = field(repr=False)

    def lines(self) -> list[str]:
        return [f"INV {g.degree()} {g}" for g in self.generators]


def mho_over(k: FieldCtx, G) -> GAlgebra:
    """k[Y_1..Y_n] with (Y_i)g = Y_i - g_i over the given elementary-abelian table."""
    coords = elemab_coords(G)
    names = ("Y",) if coords.n == 1 else tuple(f"Y{i}" for i in range(1, coords.n + 1))
    ring = Ring(k, names)
    maps = [{v: ring.var(v) - c for v, c in zip(names, coords.coords[s])} for s in G.gens]
    return make_galgebra(ring, G, maps)


def invariant_ring_elimination(S, d_check: int | None = None, deg: int | None = None,
                               var_order=None) -> EliminationResult:
    """Generators of S^G = S cap k[Y_i^p - Y_i, mu_1..mu_N] for elementary-abelian G.

    S (x) k[Y] = k[Y][mu] where mu_j = tr(b T_j), b a point of k[Y], so an
    element of S is invariant iff its normal form modulo {Y_i^p - Y_i - u_i,
    v_j - mu_j} is free of Y.  That condition is linear in the coefficients,
    which gives S^G degree by degree up to ``deg``.
    """
    S = _base(S)
    G = S.group
    if G.order == 1:
        raise ModgalError("the group must be nontrivial")
    coords = elemab_coords(G)
    if d_check is None:
        d_check = coords.p * coords.n
    if deg is None:
        deg = d_check
    deg = max(deg, d_check)
    k = S.ctx
    pt = find_point(S)
    if pt is None:
        raise NotAPointError("no point of S found within the default bound")
    M = mho_over(k, G)
    b = find_point(M)
    lam = erasure_lambdas(S, pt.element, M)
    mu = erasure_lambdas(M, b.element, S, var_order)
    T = mu.tensor
    jM, jS = T.injections
    y_names = [str(jM.image(v)) for v in M.ring.vars]
    t_names = list(mu.var_order)

    u = _fresh_names("u", len(y_names), T.ring.vars)
    v = _fresh_names("v", len(t_names), T.ring.vars)
    big = Ring(k, tuple(reversed(t_names)) + tuple(y_names) + tuple(u) + tuple(v), "lex")
    p = k.p
    rels = [big.var(y) ** p - big.var(y) - big.var(ui) for y, ui in zip(y_names, u)]
    rels += [big.var(vj) - big.coerce(m) for vj, m in zip(v, mu.lambdas)]
    gb = groebner(rels)
    tag_ring = Ring(k, tuple(u) + tuple(v), S.ring.order)
    tagset = set(u) | set(v)

    monos = S.ring.monomials(deg)
    to_big = VarMap(S.ring, big, [big.var(str(jS.image(x))) for x in S.ring.vars])
    nfs = [normal_form(to_big.apply(S.ring.monomial(e)), gb) for e in monos]
    ypart = [Polynomial(big, {e: c for e, c in f.terms.items() if _has_non_tag(big, e, tagset)})
             for f in nfs]
    tpart = [tag_ring.coerce(Polynomial(big, {e: c for e, c in f.terms.items()
                                            if not _has_non_tag(big, e, tagset)})) for f in nfs]
    Mx, _ = _coeff_matrix(ypart)
    null = linalg.nullspace(Mx, k, len(monos)) if Mx else [
        [1 if i == j else 0 for i in range(len(monos))] for j in range(len(monos))]

    # deterministic echelon basis, carrying the tag expressions along
    order = sorted(range(len(monos)), key=lambda i: S.ring.key(monos[i]), reverse=True)
    R, _ = linalg.rref([[vec[i] for i in order] for vec in null], k, len(order))
    basis = []
    for r in R:
        coeffs = {order[j]: c for j, c in enumerate(r) if c}
        f = S.ring.from_codes({monos[i]: c for i, c in coeffs.items()})
        expr = tag_ring.zero()
        for i, c in coeffs.items():
            expr = expr + tpart[i] * FieldElement(k, c)
        basis.append((f, expr))
    basis.sort(key=lambda fe: (fe[0].degree(), S.ring.key(fe[0].leading_monomial())))

    gens: list[Polynomial] = []
    exprs: list[Polynomial] = []
    for f, expr in basis:
        if f.is_constant():
            continue
        if not _in_span(f, _products(S.ring, gens, deg), k):
            gens.append(f)
            exprs.append(expr)

    # certificates: invariance, tag identities, agreement with the oracle
    subst = VarMap(tag_ring, T.ring, [T.ring.coerce(m) for m in _as_tensor(T, y_names, p)] + list(mu.lambdas))
    for g, e in zip(gens, exprs):
        if not S.is_invariant(g):
            raise ModgalError(f"elimination output {g} is not invariant")
        if subst.apply(e) != jS.apply(g):
            raise ModgalError(f"tag expression for {g} does not reproduce it")
    brute = invariants_bruteforce(S, d_check).basis
    agrees = True
    if gens:
        test = SubalgebraTest(gens)
        agrees = all(test.test(f).member for f in brute)
    else:
        agrees = all(f.is_constant() for f in brute)
    return EliminationResult(tuple(gens), tuple(exprs), tag_ring, deg, d_check, agrees, mu, lam)


def _as_tensor(T: GAlgebra, y_names, p):
    return [T.ring.var(y) ** p - T.ring.var(y) for y in y_names]


def _has_non_tag(ring: Ring, e, tagset) -> bool:
    return any(x and ring.vars[i] not in tagset for i, x in enumerate(e))


def _products(ring: Ring, gens, deg: int) -> list[Polynomial]:
    """1 and all products of gens of total degree <= deg."""
    out = [ring.one()]
    degs = [g.degree() for g in gens]

    def rec(i, cur, d):
        if i == len(gens):
            return
        rec(i + 1, cur, d)
        x, dd = cur, d
        while dd + degs[i] <= deg:
            x, dd = x * gens[i], dd + degs[i]
            out.append(x)
            rec(i + 1, x, dd)

    rec(0, ring.one(), 0)
    return out


def _in_span(f: Polynomial, polys, ctx) -> bool:
    M, rowidx = _coeff_matrix(list(polys) + [f])
    if any(e not in rowidx for e in f.terms):
        return False
    r1 = linalg.rank([row[:-1] for row in M], ctx, len(polys))
    r2 = linalg.rank(M, ctx, len(polys) + 1)
    return r1 == r2


# --- freeness on rational points --------------------------------------------------

@dataclass(frozen=True)
class FreenessReport:
    """Outcome of the fixed-point search over GF(q^m)-points, m = 1..tower.

    ``levels`` holds (m, field size, method, points examined); the method is
    "enumerate" or "groebner" (an ideal-membership proof that no fixed point
    exists, or a solved fixed point).  ``partial`` is set when enumeration was
    truncated by the cap without a fallback.
    """

    free: bool
    partial: bool
    witnesses: tuple = ()
    levels: tuple = ()

    def lines(self) -> list[str]:
        out = [f"LEVEL m={m} q={q} {method} points={n}" for m, q, method, n in self.levels]
        out += [f"WITNESS ({','.join(pt)}) {g}" for _, pt, g in self.witnesses]
        out.append("PARTIAL" if self.partial else ("FREE" if self.free else "NOT-FREE"))
        return out


def field_embedding(k: FieldCtx, K: FieldCtx) -> list[int]:
    """Codes in K of the elements of k, via the smallest root of k's modulus in K."""
    if k.p != K.p or K.s % k.s:
        raise ModgalError(f"{k.spec()} does not embed in {K.spec()}")
    if k.s == 1:
        return list(range(k.p))
    mod = k.modulus
    root = None
    for r in range(K.q):
        acc, pw = 0, 1
        for c in mod:
            acc = K.add[acc][K.mul[c][pw]]
            pw = K.mul[pw][r]
        if acc == 0:
            root = r
            break
    out = []
    for a in range(k.q):
        acc, pw, x = 0, 1, a
        for _ in range(k.s):
            acc = K.add[acc][K.mul[x % k.p][pw]]
            pw = K.mul[pw][root]
            x //= k.p
        out.append(acc)
    return out


def _transport(f: Polynomial, R: Ring, emb) -> Polynomial:
    return Polynomial(R, {e: emb[c] for e, c in f.terms.items()})


def _compile(f: Polynomial, emb):
    return [(emb[c], [(i, x) for i, x in enumerate(e) if x]) for e, c in f.terms.items()]


def _eval(compiled, pt, K: FieldCtx, powtab):
    add, mul = K.add, K.mul
    acc = 0
    for c, factors in compiled:
        t = c
        for i, x in factors:
            t = mul[t][powtab[pt[i]][x]]
        acc = add[acc][t]
    return acc


def freeness_on_points(A, tower: int = 2, cap: int = 100_000, fallback: bool = True,
                       max_witnesses: int = 8) -> FreenessReport:
    """Check that every g != 1 moves every GF(q^m)-point, m = 1..tower."""
    A = _base(A)
    k = A.ctx
    n = A.ring.nvars
    witnesses = []
    levels = []
    partial = False
    for m in range(1, tower + 1):
        K = field_create(k.p, k.s * m, max_q=max(k.q**m, 81), max_p=max(k.p, 13))
        emb = field_embedding(k, K)
        total = K.q**n
        if total <= cap or not fallback:
            maxdeg = max([1] + [f.degree() for mp in A.elem_maps for f in mp.images])
            powtab = [[K.pow_code(a, e) for e in range(maxdeg + 1)] for a in range(K.q)]
            comp = [[_compile(f, emb) for f in mp.images] for mp in A.elem_maps]
            count = 0
            for pt in itertools.product(range(K.q), repeat=n):
                if count >= cap:
                    partial = True
                    break
                count += 1
                for g in range(1, A.group.order):
                    if all(_eval(c, pt, K, powtab) == pt[i] for i, c in enumerate(comp[g])):
                        if len(witnesses) < max_witnesses:
                            witnesses.append((m, tuple(K.format_code(x) for x in pt), A.group.names[g]))
                        else:
                            witnesses.append(None)
            levels.append((m, K.q, "enumerate", count))
        else:
            for g in range(1, A.group.order):
                pt = _fixed_point_groebner(A, g, K, emb)
                if pt is not None:
                    witnesses.append((m, tuple(K.format_code(x) for x in pt), A.group.names[g]))
            levels.append((m, K.q, "groebner", total))
    found = [w for w in witnesses if w is not None]
    free = not witnesses
    return FreenessReport(free and not partial, partial, tuple(found), tuple(levels))


def _fixed_point_groebner(A: GAlgebra, g: int, K: FieldCtx, emb):
    """A GF(K)-point fixed by g, or None; decided by a lex basis including x^|K| - x."""
    R = Ring(K, A.ring.vars, "lex")
    eqs = [_transport(img, R, emb) - R.var(v) for v, img in zip(A.ring.vars, A.elem_maps[g].images)]
    eqs += [R.var(v) ** K.q - R.var(v) for v in R.vars]
    gb = groebner(eqs)
    if gb.is_unit():
        return None
    # back-substitute from the last variable; a basis element is checked once its
    # smallest-index variable is assigned
    polys = [(min((i for e in f.terms for i, x in enumerate(e) if x), default=0), f) for f in gb.gens]
    nv = R.nvars
    powtab = [[K.pow_code(a, e) for e in range(K.q + 1)] for a in range(K.q)]
    ident = list(range(K.q))
    checks = {i: [_compile(f, ident) for lv, f in polys if lv == i] for i in range(nv)}
    pt = [0] * nv

    def rec(i):
        if i < 0:
            return True
        for a in range(K.q):
            pt[i] = a
            if all(_eval(c, pt, K, powtab) == 0 for c in checks[i]) and rec(i - 1):
                return True
        return False

    return tuple(pt) if rec(nv - 1) else None
