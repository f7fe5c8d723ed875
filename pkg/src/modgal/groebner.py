"""Buchberger Groebner bases, normal forms, elimination and subalgebra membership.

Pairs are selected by the normal strategy (smallest lcm of leading monomials,
ties broken by pair index, so output is deterministic for a given input
order).  Buchberger's product and chain criteria skip useless pairs.  Results
are reduced, monic and sorted by descending leading monomial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RingMismatchError
from .polyring import Polynomial, Ring


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(f: dict, basis, key, ctx, full: bool = True) -> dict:
    """Remainder of f by the monic basis [(lm, terms)]; top-reduction only if not full."""
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    f = dict(f)
    rem = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                q = tuple(x - y for x, y in zip(lm, glm))
                row = mul[neg[c]]
                for ge, gc in g.items():
                    e = tuple(x + y for x, y in zip(ge, q))
                    v = add[f.get(e, 0)][row[gc]]
                    if v:
                        f[e] = v
                    else:
                        del f[e]
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[lm] = c
            del f[lm]
    return rem


def _monic(f: dict, key, ctx):
    lm = max(f, key=key)
    s = ctx.inv[f[lm]]
    row = ctx.mul[s]
    return lm, {e: row[c] for e, c in f.items()}


@dataclass(frozen=True)
class GBasis:
    """A reduced Groebner basis of an ideal of ``ring`` (w.r.t. ``ring.order``)."""

    ring: Ring
    gens: tuple[Polynomial, ...]

    @property
    def order(self) -> str:
        return self.ring.order

    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].is_constant() and not self.gens[0].is_zero()

    def _basis(self):
        key = self.ring.key
        return [(max(g.terms, key=key), g.terms) for g in self.gens]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()


def groebner(gens, order: str | None = None) -> GBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    The empty ideal has the empty basis.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("groebner needs at least one generator (possibly zero)")
    ring = gens[0].ring
    for g in gens:
        if g.ring.vars != ring.vars or g.ring.ctx != ring.ctx:
            raise RingMismatchError("generators from different rings")
    if order is not None:
        ring = ring.with_order(order)
    gens = [ring.coerce(g) if g.ring != ring else g for g in gens]
    ctx, key = ring.ctx, ring.key

    G: list[tuple] = []   # (lm, terms); None once discarded
    pairs: set[tuple[int, int]] = set()
    lcms: dict[tuple[int, int], tuple] = {}

    def add_poly(h):
        lm, h = _monic(h, key, ctx)
        idx = len(G)
        G.append((lm, h))
        for i, item in enumerate(G[:-1]):
            if item is not None:
                pairs.add((i, idx))
                lcms[(i, idx)] = _lcm(item[0], lm)
        return idx

    for g in gens:
        if g.terms:
            r = _reduce(g.terms, [x for x in G if x is not None], key, ctx)
            if r:
                add_poly(r)
    if not G:
        return GBasis(ring, ())

    while pairs:
        pair = min(pairs, key=lambda pr: (key(lcms[pr]), pr))
        pairs.discard(pair)
        i, j = pair
        (lmi, fi), (lmj, fj) = G[i], G[j]
        L = lcms.pop(pair)
        # product criterion
        if all(not (x and y) for x, y in zip(lmi, lmj)):
            continue
        # chain criterion
        if any(
            k != i and k != j and G[k] is not None and _divides(G[k][0], L)
            and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        s = _spoly(lmi, fi, lmj, fj, L, ctx)
        h = _reduce(s, [x for x in G if x is not None], key, ctx)
        if h:
            if all(not any(e) for e in h):
                return GBasis(ring, (ring.one(),))
            add_poly(h)

    return GBasis(ring, tuple(Polynomial(ring, t) for t in _interreduce(G, key, ctx)))


def _spoly(lmi, fi, lmj, fj, L, ctx):
    add, neg = ctx.add, ctx.neg
    qi = tuple(x - y for x, y in zip(L, lmi))
    qj = tuple(x - y for x, y in zip(L, lmj))
    out = {}
    for e, c in fi.items():
        out[tuple(x + y for x, y in zip(e, qi))] = c
    for e, c in fj.items():
        e2 = tuple(x + y for x, y in zip(e, qj))
        v = add[out.get(e2, 0)][neg[c]]
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


def _interreduce(G, key, ctx):
    items = [x for x in G if x is not None]
    # minimal basis: drop elements whose leading monomial is divisible by another's
    minimal = []
    for idx, (lm, f) in enumerate(items):
        dominated = False
        for jdx, (lm2, _) in enumerate(items):
            if jdx == idx:
                continue
            if _divides(lm2, lm) and (lm2 != lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            minimal.append((lm, f))
    reduced = []
    for idx, (lm, f) in enumerate(minimal):
        others = [x for j, x in enumerate(minimal) if j != idx]
        tail = {e: c for e, c in f.items() if e != lm}
        tail = _reduce(tail, others, key, ctx)
        tail[lm] = f[lm]
        reduced.append((lm, tail))
    reduced.sort(key=lambda item: key(item[0]), reverse=True)
    return [f for _, f in reduced]


def normal_form(f: Polynomial, gb: GBasis) -> Polynomial:
    """Remainder of multivariate division by a Groebner basis; zero iff f is in the ideal."""
    ring = gb.ring
    if f.ring != ring:
        if f.ring.vars != ring.vars or f.ring.ctx != ring.ctx:
            raise RingMismatchError("polynomial is not in the basis ring")
        f = ring.coerce(f)
    if not gb.gens:
        return f
    return Polynomial(ring, _reduce(f.terms, gb._basis(), ring.key, ring.ctx))


def eliminate(gens, keep_vars) -> list[Polynomial]:
    """Generators of ideal(gens) intersected with k[keep_vars], via a lex basis."""
    gens = list(gens)
    ring = gens[0].ring
    keep = [v for v in ring.vars if v in set(keep_vars)]
    unknown = set(keep_vars) - set(ring.vars)
    if unknown:
        raise RingMismatchError(f"unknown variables {sorted(unknown)}")
    drop = [v for v in ring.vars if v not in set(keep)]
    lex = Ring(ring.ctx, tuple(drop) + tuple(keep), "lex")
    gb = groebner([lex.coerce(g) for g in gens])
    return [ring.coerce(g) for g in gb.gens if g.variables() <= set(keep)]


def _fresh_names(prefix: str, count: int, taken) -> list[str]:
    taken = set(taken)
    while any(f"{prefix}{i + 1}" in taken for i in range(count)):
        prefix += "_"
    return [f"{prefix}{i + 1}" for i in range(count)]


@dataclass(frozen=True)
class Membership:
    """Outcome of a subalgebra membership test.

    ``expression`` (a polynomial in ``tag_ring``) is present iff ``member``;
    otherwise ``remainder`` is the normal form that still involves original
    variables.
    """

    member: bool
    expression: Polynomial | None
    remainder: Polynomial
    tag_ring: Ring


class SubalgebraTest:
    """Membership in k[subgens] by tag-variable elimination.

    The Groebner basis of {u_i - subgen_i} in lex order with the ring
    variables above the tags is computed once and reused.
    """

    def __init__(self, subgens, var_order=None, tag_prefix: str = "u"):
        subgens = list(subgens)
        if not subgens:
            raise ValueError("need at least one subalgebra generator")
        ring = subgens[0].ring
        self.ring = ring
        self.subgens = tuple(subgens)
        xs = tuple(var_order) if var_order is not None else ring.vars
        if sorted(xs) != sorted(ring.vars):
            raise ValueError("var_order must be a permutation of the ring variables")
        self.tags = tuple(_fresh_names(tag_prefix, len(subgens), ring.vars))
        self.big = Ring(ring.ctx, xs + self.tags, "lex")
        self.tag_ring = Ring(ring.ctx, self.tags, ring.order)
        rels = [self.big.var(u) - self.big.coerce(h) for u, h in zip(self.tags, subgens)]
        self.gb = groebner(rels)

    def test(self, f: Polynomial) -> Membership:
        nf = normal_form(self.big.coerce(f), self.gb)
        if nf.variables() <= set(self.tags):
            return Membership(True, self.tag_ring.coerce(nf), nf, self.tag_ring)
        return Membership(False, None, nf, self.tag_ring)

    def substitute(self, expr: Polynomial) -> Polynomial:
        """Evaluate a tag expression at the subalgebra generators."""
        from .polyring import VarMap

        return VarMap(self.tag_ring, self.ring, list(self.subgens)).apply(expr)


def subalgebra_membership(f: Polynomial, subgens, var_order=None) -> Membership:
    return SubalgebraTest(subgens, var_order).test(f)
