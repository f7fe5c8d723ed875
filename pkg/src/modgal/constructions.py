"""Named algebras: D_k(G), the translation algebra on Y_1..Y_n, B_alpha, the C_{p^2}
example on k[x, y], and the morphisms theta, psi, L_{alpha,beta} and Theta between them."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .errors import GroupError, NotAPointError, RingMismatchError, SingularError
from .ffield import FieldCtx, FieldElement, fp_independent, moore_inverse, moore_matrix
from .galgebra import (
    AlgebraMorphism, GAlgebra, dk_variables, dk_x1, make_galgebra, make_morphism,
    same_side_tensor,
)
from .pgroup import ElemAbCoords, GroupTable, group_cyclic, group_elemab
from .polyring import Polynomial, Ring, VarMap, compose_maps


@dataclass(frozen=True)
class DkAlgebra:
    base: GAlgebra
    x1: Polynomial


@dataclass(frozen=True)
class MhoAlgebra:
    base: GAlgebra
    coords: ElemAbCoords


@dataclass(frozen=True)
class BasicBAlpha:
    base: GAlgebra
    coords: ElemAbCoords
    alphas: tuple[FieldElement, ...]
    alpha_of: tuple[FieldElement, ...] = field(repr=False)


def _base(A):
    return A.base if hasattr(A, "base") else A


def build_dk(k: FieldCtx, G: GroupTable) -> DkAlgebra:
    """k[x_g | g != 1] with (x_g)h = x_{gh}, reading x_1 as 1 - sum x_g."""
    if G.order == 1:
        raise GroupError("D_k needs a nontrivial group")
    ring = Ring(k, dk_variables(G))
    x1 = dk_x1(ring)

    def img(g, h):
        gh = G.mul(g, h)
        return x1 if gh == 0 else ring.var(f"x@{gh}")

    maps = [VarMap(ring, ring, [img(g, s) for g in range(1, G.order)]) for s in G.gens]
    A = make_galgebra(ring, G, maps)
    if A.trace(x1) != ring.one():
        raise NotAPointError("trace of the x_1 class is not 1")
    return DkAlgebra(A, x1)


def _mho_names(n: int):
    return ("Y",) if n == 1 else tuple(f"Y{i}" for i in range(1, n + 1))


def build_mho(k: FieldCtx, p: int, n: int) -> MhoAlgebra:
    """k[Y_1..Y_n] with (Y_i)g = Y_i - g_i over (F_p^n, +)."""
    if k.p != p:
        raise GroupError(f"group prime {p} differs from the characteristic {k.p}")
    G, coords = group_elemab(p, n)
    ring = Ring(k, _mho_names(n))
    maps = [{v: ring.var(v) - 1} for v in ring.vars]
    return MhoAlgebra(make_galgebra(ring, G, maps), coords)


def build_balpha(k: FieldCtx, coords: ElemAbCoords, alphas) -> BasicBAlpha:
    """k[Z] with (Z)g = Z - alpha_g, alpha_g = sum g_i alpha_i."""
    alphas = tuple(a if isinstance(a, FieldElement) else k(a) for a in alphas)
    if len(alphas) != coords.n:
        raise ValueError(f"need {coords.n} alphas, got {len(alphas)}")
    for a in alphas:
        k.check(a)
    if coords.p != k.p:
        raise GroupError("group prime differs from the characteristic")
    if not fp_independent(alphas):
        raise SingularError("alphas are F_p-dependent; the action would not be faithful")
    ring = Ring(k, ("Z",))
    Z = ring.var("Z")
    maps = [[Z - a] for a in alphas]
    alpha_of = []
    for vec in coords.coords:
        acc = k.zero
        for c, a in zip(vec, alphas):
            acc = acc + a * c
        alpha_of.append(acc)
    return BasicBAlpha(make_galgebra(ring, coords.group, maps), coords, alphas, tuple(alpha_of))


def build_cp2_example(k: FieldCtx) -> GAlgebra:
    """C_{p^2} on k[x, y]: (x)g = x + y^(p-1), (y)g = y - 1."""
    p = k.p
    G = group_cyclic(p, 2)
    ring = Ring(k, ("x", "y"))
    x, y = ring.gens()
    return make_galgebra(ring, G, [[x + y ** (p - 1), y - 1]])


def _check_pair(B: BasicBAlpha, M: MhoAlgebra):
    if B.base.ctx != M.base.ctx:
        raise RingMismatchError("algebras over different fields")
    if B.base.group.table != M.base.group.table:
        raise GroupError("algebras over different groups")


def build_theta(B: BasicBAlpha, M: MhoAlgebra) -> AlgebraMorphism:
    """Z -> sum alpha_i Y_i."""
    _check_pair(B, M)
    R = M.base.ring
    img = R.zero()
    for a, Y in zip(B.alphas, R.gens()):
        img = img + Y * a
    return make_morphism(B.base, M.base, VarMap(B.base.ring, R, [img]))


def linearized_poly(ring: Ring, var: str, coeffs) -> Polynomial:
    """sum_j coeffs[j] * var^(p^j) in ring."""
    p = ring.ctx.p
    Z = ring.var(var)
    out = ring.zero()
    for j, c in enumerate(coeffs):
        out = out + Z ** (p**j) * c
    return out


def build_psi(M: MhoAlgebra, B: BasicBAlpha) -> AlgebraMorphism:
    """Y_i -> f_i(Z) with f_i the linearized inverse of the Moore system."""
    _check_pair(B, M)
    sysm = moore_inverse(B.alphas)
    R = B.base.ring
    imgs = [linearized_poly(R, "Z", sysm.f(i)) for i in range(len(B.alphas))]
    return make_morphism(M.base, B.base, VarMap(M.base.ring, R, imgs))


def retraction_holds(B: BasicBAlpha, M: MhoAlgebra) -> bool:
    """psi o theta is the identity of B_alpha."""
    return compose_maps(build_theta(B, M).varmap, build_psi(M, B).varmap).is_identity()


def l_coefficients(alphas, betas) -> list[FieldElement]:
    """lambda with sum_j lambda_j beta_i^(p^j) = alpha_i for every i."""
    ctx = alphas[0].ctx
    Mb = moore_matrix(betas)           # Mb[j][i] = beta_i^(p^j)
    n = len(betas)
    rows = [[Mb[j][i] for j in range(n)] for i in range(n)]
    sol = linalg.solve(rows, [a.value for a in alphas], ctx)
    if sol is None or linalg.rank(rows, ctx) < n:
        raise SingularError("betas are F_p-dependent")
    return [FieldElement(ctx, c) for c in sol]


def build_L(Ba: BasicBAlpha, Bb: BasicBAlpha) -> AlgebraMorphism:
    """B_alpha -> B_beta, Z -> sum_j lambda_j Z^(p^j)."""
    if Ba.base.ctx != Bb.base.ctx or Ba.base.group.table != Bb.base.group.table:
        raise RingMismatchError("B_alpha and B_beta must share field and group")
    lam = l_coefficients(Ba.alphas, Bb.alphas)
    img = linearized_poly(Bb.base.ring, "Z", lam)
    return make_morphism(Ba.base, Bb.base, VarMap(Ba.base.ring, Bb.base.ring, [img]))


@dataclass(frozen=True)
class BigTheta:
    """Theta from the tensor of the B_{alpha^(s)} to the Y-algebra.

    ``inverse`` is present only when the variable recovery Y_k = sum gamma_ks Theta(Z_s)
    succeeded and both composites were checked to be identities.
    """

    morphism: AlgebraMorphism
    factors: tuple[BasicBAlpha, ...]
    inverse: AlgebraMorphism | None


def build_big_theta(families, M: MhoAlgebra) -> BigTheta:
    """Coproduct of the theta maps for n embeddings alpha^(1)..alpha^(r)."""
    coords = M.coords
    k = M.base.ctx
    factors = tuple(f if isinstance(f, BasicBAlpha) else build_balpha(k, coords, f) for f in families)
    for B in factors:
        _check_pair(B, M)
    if len(factors) == 1:
        T = factors[0].base
        inj = (VarMap.identity(T.ring),)
    else:
        T = same_side_tensor(*[B.base for B in factors])
        inj = T.injections
    R = M.base.ring
    images = []
    for B, j in zip(factors, inj):
        th = build_theta(B, M).varmap
        (zname,) = [v for v in T.ring.vars if j.image("Z") == T.ring.var(v)]
        images.append((zname, th.image("Z")))
    order = {v: i for i, v in enumerate(T.ring.vars)}
    images.sort(key=lambda it: order[it[0]])
    fwd = make_morphism(T, M.base, VarMap(T.ring, R, [img for _, img in images]))

    inverse = None
    if len(factors) == R.nvars:
        A = [[B.alphas[i].value for i in range(R.nvars)] for B in factors]
        try:
            gamma = linalg.inverse(A, k)     # gamma[k][s]
        except SingularError:
            gamma = None
        if gamma is not None:
            back = []
            for kk in range(R.nvars):
                acc = T.ring.zero()
                for s, (zname, _) in enumerate(images):
                    acc = acc + T.ring.var(zname) * FieldElement(k, gamma[kk][s])
                back.append(acc)
            bwd = VarMap(R, T.ring, back)
            if compose_maps(fwd.varmap, bwd).is_identity() and compose_maps(bwd, fwd.varmap).is_identity():
                inverse = make_morphism(M.base, T, bwd)
    return BigTheta(fwd, factors, inverse)


def frobenius_family(alphas, count: int):
    """alpha, alpha^p, alpha^(p^2), ... (count members)."""
    out = []
    cur = tuple(alphas)
    for _ in range(count):
        out.append(cur)
        cur = tuple(a ** a.ctx.p for a in cur)
    return out
