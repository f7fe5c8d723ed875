"""k-G algebras: polynomial rings with a finite group acting by algebra endomorphisms.

Actions are right actions, written (f)g, realised as substitution maps
sigma_g with sigma_{gh} = sigma_h o sigma_g.  Generator assignments are
extended to every group element along breadth-first words and the
composition law is checked for every variable and element pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .errors import ActionError, FieldMismatchError, NotAPointError, RingMismatchError
from .pgroup import GroupTable, group_product
from .polyring import Polynomial, Ring, VarMap, apply_map, compose_maps


class GAlgebra:
    """A polynomial ring with a validated right action of a finite group."""

    def __init__(self, ring: Ring, group: GroupTable, gen_maps, elem_maps, injections=None):
        self.ring = ring
        self.group = group
        self.gen_maps = tuple(gen_maps)
        self.elem_maps = tuple(elem_maps)
        # coproduct injections from factor rings, set by tensor constructions
        self.injections = tuple(injections or ())

    @property
    def ctx(self):
        return self.ring.ctx

    def act(self, f: Polynomial, g: int) -> Polynomial:
        return self.elem_maps[g].apply(self._own(f))

    def orbit(self, f: Polynomial) -> list[Polynomial]:
        f = self._own(f)
        return [m.apply(f) for m in self.elem_maps]

    def trace(self, f: Polynomial) -> Polynomial:
        acc = self.ring.zero()
        for img in self.orbit(f):
            acc = acc + img
        return acc

    def is_invariant(self, f: Polynomial) -> bool:
        f = self._own(f)
        return all(m.apply(f) == f for m in self.gen_maps)

    def moved_by(self, f: Polynomial) -> list[tuple[int, Polynomial]]:
        """(generator, image) pairs for generators that do not fix f."""
        f = self._own(f)
        out = []
        for s, m in zip(self.group.gens, self.gen_maps):
            img = m.apply(f)
            if img != f:
                out.append((s, img))
        return out

    def _own(self, f):
        if isinstance(f, str):
            return self.ring.parse(f)
        if isinstance(f, Polynomial) and f.ring != self.ring:
            raise RingMismatchError(f"{f.ring!r} is not the ring of this algebra")
        if not isinstance(f, Polynomial):
            return self.ring.const(f)
        return f

    def same_action(self, other: GAlgebra) -> bool:
        """Semantic equality: same ring, group table and generator images."""
        return (self.ring == other.ring and self.group.table == other.group.table
                and self.group.gens == other.group.gens and self.gen_maps == other.gen_maps)

    def action_order(self, g: int) -> int:
        """Order of sigma_g as a map (divides the element order)."""
        k, h = 1, g
        while not self.elem_maps[h].is_identity():
            h = self.group.mul(h, g)
            k += 1
        return k

    def __repr__(self):
        return f"GAlgebra({self.ring!r}, |G|={self.group.order})"


def _as_varmap(ring: Ring, a) -> VarMap:
    if isinstance(a, VarMap):
        if a.source != ring or a.target != ring:
            raise RingMismatchError("generator assignment is not an endomorphism of the ring")
        return a
    if isinstance(a, dict):
        return VarMap(ring, ring, {v: ring(img) for v, img in a.items()})
    return VarMap(ring, ring, [ring(img) for img in a])


def _extend(ring: Ring, group: GroupTable, gen_maps):
    elem: list[VarMap | None] = [None] * group.order
    elem[0] = VarMap.identity(ring)
    frontier = [0]
    while frontier:
        nxt = []
        for e in frontier:
            for s, m in zip(group.gens, gen_maps):
                h = group.mul(e, s)
                if elem[h] is None:
                    elem[h] = compose_maps(elem[e], m)
                    nxt.append(h)
        frontier = nxt
    if any(m is None for m in elem):
        raise ActionError("group generators do not reach every element")
    return elem


def action_failures(ring: Ring, group: GroupTable, gen_maps, elem_maps=None, first_only=True):
    """Triples (v, g, h) with ((v)g)h != (v)(gh)."""
    if elem_maps is None:
        elem_maps = _extend(ring, group, gen_maps)
    bad = []
    for g in range(group.order):
        mg = elem_maps[g]
        for h in range(group.order):
            mh, mgh = elem_maps[h], elem_maps[group.mul(g, h)]
            for v, img in zip(ring.vars, mg.images):
                if apply_map(mh, img) != mgh.image(v):
                    bad.append((v, g, h))
                    if first_only:
                        return bad
    return bad


def make_galgebra(ring: Ring, group: GroupTable, gen_assignments, *, left: bool = False,
                  validate: bool = True) -> GAlgebra:
    """Build and validate a G-algebra from one assignment per group generator.

    Assignments are VarMaps, dicts ``{var: image}`` (unlisted variables fixed)
    or image lists.  With ``left=True`` they describe a left action and are
    converted by inverting each generator map.
    """
    if len(gen_assignments) != len(group.gens):
        raise ActionError(f"need {len(group.gens)} generator assignments, got {len(gen_assignments)}")
    maps = [_as_varmap(ring, a) for a in gen_assignments]
    if left:
        maps = [_inverse_by_powers(m, group.elem_order[s]) for m, s in zip(maps, group.gens)]
    elem = _extend(ring, group, maps)
    A = GAlgebra(ring, group, maps, elem)
    if validate:
        bad = action_failures(ring, group, maps, elem)
        if bad:
            v, g, h = bad[0]
            raise ActionError(
                f"action fails the group law: (({v}){group.names[g]}){group.names[h]} != "
                f"({v})({group.names[g]}*{group.names[h]})", (v, g, h))
        if group.p is not None and group.p != ring.ctx.p:
            raise ActionError(f"group is a {group.p}-group but the field has characteristic {ring.ctx.p}")
    return A


def _inverse_by_powers(m: VarMap, order: int) -> VarMap:
    out = VarMap.identity(m.source)
    for _ in range(order - 1):
        out = compose_maps(out, m)
    if not compose_maps(out, m).is_identity():
        raise ActionError("assignment is not invertible with the generator's order")
    return out


def is_invariant_report(A: GAlgebra, f) -> tuple[bool, list]:
    moved = A.moved_by(f)
    return not moved, moved


# --- points -------------------------------------------------------------------

@dataclass(frozen=True)
class PointCert:
    """An element of trace one with its orbit indexed by group enumeration."""

    algebra: GAlgebra = field(repr=False)
    element: Polynomial
    orbit: tuple[Polynomial, ...] = field(repr=False)


def certify_point(A: GAlgebra, a) -> PointCert:
    a = A._own(a)
    orbit = tuple(A.orbit(a))
    tr = A.ring.zero()
    for x in orbit:
        tr = tr + x
    if tr != A.ring.one():
        raise NotAPointError(f"tr({a}) = {tr} != 1")
    return PointCert(A, a, orbit)


def _trace_system(A: GAlgebra, monos, traces):
    rowidx: dict = {}
    for m in monos:
        for e in traces[m].terms:
            rowidx.setdefault(e, len(rowidx))
    zero = (0,) * A.ring.nvars
    rowidx.setdefault(zero, len(rowidx))
    M = [[0] * len(monos) for _ in rowidx]
    for j, m in enumerate(monos):
        for e, c in traces[m].terms.items():
            M[rowidx[e]][j] = c
    rhs = [0] * len(rowidx)
    rhs[rowidx[zero]] = 1
    return M, rhs


def find_point(A: GAlgebra, deg_bound: int | None = None) -> PointCert | None:
    """A point of least degree <= deg_bound (default |G|), or None if none exists there.

    The trace is k-linear, so this is exact linear algebra over the monomials;
    columns are ordered ascending so the smallest monomials are preferred.
    """
    if deg_bound is None:
        deg_bound = A.group.order
    traces: dict = {}
    for d in range(1, deg_bound + 1):
        monos = A.ring.monomials(d)
        for m in monos:
            if m not in traces:
                traces[m] = A.trace(A.ring.monomial(m))
        M, rhs = _trace_system(A, monos, traces)
        x = linalg.solve(M, rhs, A.ctx)
        if x is not None:
            a = A.ring.from_codes(zip(monos, x))
            return certify_point(A, a)
    return None


# --- triangularity ------------------------------------------------------------

@dataclass(frozen=True)
class TriangularCert:
    algebra: GAlgebra = field(repr=False)
    var_order: tuple[str, ...]
    offsets: dict = field(repr=False)   # (generator position, var) -> (T_i)g - T_i


def is_triangular(A: GAlgebra, var_order=None, all_orders: bool = False,
                  max_search_vars: int = 6) -> TriangularCert | None:
    """Check that each generator moves T_i by a polynomial in the earlier variables.

    With ``all_orders`` every permutation is tried (only for few variables).
    """
    ring = A.ring
    if var_order is None:
        var_order = ring.vars
    var_order = tuple(var_order)
    if sorted(var_order) != sorted(ring.vars):
        raise ValueError("var_order must be a permutation of the ring variables")
    offsets = {}
    for gi, m in enumerate(A.gen_maps):
        for v in ring.vars:
            offsets[(gi, v)] = m.image(v) - ring.var(v)

    def check(order):
        seen: set[str] = set()
        for v in order:
            for gi in range(len(A.gen_maps)):
                if not offsets[(gi, v)].variables() <= seen:
                    return False
            seen.add(v)
        return True

    if check(var_order):
        return TriangularCert(A, var_order, offsets)
    if all_orders and ring.nvars <= max_search_vars:
        for order in itertools.permutations(ring.vars):
            if check(order):
                return TriangularCert(A, tuple(order), offsets)
    return None


# --- D_k specific checks ------------------------------------------------------

def dk_variables(group: GroupTable) -> tuple[str, ...]:
    return tuple(f"x@{i}" for i in range(1, group.order))


def dk_x1(ring: Ring) -> Polynomial:
    """The class of X_1: 1 - sum of the x@g."""
    acc = ring.one()
    for v in ring.vars:
        acc = acc - ring.var(v)
    return acc


def _require_dk(A: GAlgebra):
    G, ring = A.group, A.ring
    if G.order < 2 or ring.vars != dk_variables(G):
        raise ValueError("algebra is not presented as D_k(G) (variables x@g, g != 1)")
    x1 = dk_x1(ring)
    for s, m in zip(G.gens, A.gen_maps):
        for g in range(1, G.order):
            gs = G.mul(g, s)
            if m.image(f"x@{g}") != (x1 if gs == 0 else ring.var(f"x@{gs}")):
                raise ValueError("action is not the regular action of D_k(G)")


def is_reflexive_point(A: GAlgebra, w) -> bool:
    """For a point w of D_k: does theta: x_g -> (w)g fix w?"""
    _require_dk(A)
    w = A._own(w)
    cert = certify_point(A, w)
    theta = VarMap(A.ring, A.ring, [cert.orbit[i] for i in range(1, A.group.order)])
    return theta.apply(w) == w


# --- morphisms ----------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraMorphism:
    """A substitution homomorphism between G-algebras with its equivariance status."""

    source: GAlgebra = field(repr=False)
    target: GAlgebra = field(repr=False)
    varmap: VarMap
    equivariant: bool
    failures: tuple = ()
    inverse: VarMap | None = None

    def apply(self, f: Polynomial) -> Polynomial:
        return self.varmap.apply(f)

    __call__ = apply


def equivariance_failures(source: GAlgebra, target: GAlgebra, m: VarMap):
    """(v, generator position) pairs where m((v)g) != (m(v))g."""
    if source.group.table != target.group.table or source.group.gens != target.group.gens:
        raise ValueError("source and target carry different groups")
    bad = []
    for gi, (sm, tm) in enumerate(zip(source.gen_maps, target.gen_maps)):
        for v, img in zip(source.ring.vars, m.images):
            if m.apply(sm.image(v)) != tm.apply(img):
                bad.append((v, gi))
    return bad


def make_morphism(source: GAlgebra, target: GAlgebra, m: VarMap) -> AlgebraMorphism:
    bad = equivariance_failures(source, target, m)
    return AlgebraMorphism(source, target, m, not bad, tuple(bad))


def morphism_from_point(dk: GAlgebra, target: GAlgebra, a) -> AlgebraMorphism:
    """The equivariant map D_k -> target sending x_g to (a)g."""
    _require_dk(dk)
    cert = certify_point(target, a)
    m = VarMap(dk.ring, target.ring, [cert.orbit[i] for i in range(1, dk.group.order)])
    # well-definedness: the x_1-class goes to 1 - sum_{g != 1} (a)g = a
    if m.apply(dk_x1(dk.ring)) != cert.element:
        raise NotAPointError("orbit of the point does not sum to one")
    return make_morphism(dk, target, m)


# --- tensor products ----------------------------------------------------------

def _renamed(names_per_factor):
    flat = [v for names in names_per_factor for v in names]
    if len(set(flat)) == len(flat):
        return [list(names) for names in names_per_factor]
    out = []
    for i, names in enumerate(names_per_factor, start=1):
        out.append([f"{v}_{i}" if v[-1].isdigit() else f"{v}{i}" for v in names])
    return out


def _factor_ring(rings, order=None):
    ctx = rings[0].ctx
    for r in rings:
        if r.ctx != ctx:
            raise FieldMismatchError("tensor factors over different fields")
    names = _renamed([r.vars for r in rings])
    big = Ring(ctx, tuple(v for ns in names for v in ns), order or rings[0].order)
    inj = [VarMap(r, big, [big.var(v) for v in ns]) for r, ns in zip(rings, names)]
    return big, names, inj


def _lift_map(big: Ring, m: VarMap, inj: VarMap, names, own: list[str]):
    images = {v: big.var(v) for v in big.vars}
    for v, img in zip(own, m.images):
        images[v] = inj.apply(img)
    return VarMap(big, big, [images[v] for v in big.vars])


def tensor(A: GAlgebra, B: GAlgebra) -> GAlgebra:
    """A (x)_k B as an algebra over G1 x G2 acting componentwise."""
    big, names, inj = _factor_ring([A.ring, B.ring])
    G = group_product(A.group, B.group)
    maps = [_lift_map(big, m, inj[0], names, names[0]) for m in A.gen_maps]
    maps += [_lift_map(big, m, inj[1], names, names[1]) for m in B.gen_maps]
    T = make_galgebra(big, G, maps)
    T.injections = tuple(inj)
    return T


def same_side_tensor(*algebras: GAlgebra) -> GAlgebra:
    """A_1 (x)_k ... (x)_k A_r with the diagonal action of their common group."""
    if len(algebras) < 2:
        raise ValueError("need at least two factors")
    G = algebras[0].group
    for A in algebras[1:]:
        if A.group.table != G.table or A.group.gens != G.gens:
            raise ValueError("factors carry different groups")
    big, names, inj = _factor_ring([A.ring for A in algebras])
    maps = []
    for gi in range(len(G.gens)):
        images = {}
        for A, ns, j in zip(algebras, names, inj):
            for v, img in zip(ns, A.gen_maps[gi].images):
                images[v] = j.apply(img)
        maps.append(VarMap(big, big, [images[v] for v in big.vars]))
    T = make_galgebra(big, G, maps)
    T.injections = tuple(inj)
    return T


def tensor_point(T: GAlgebra, *points) -> PointCert:
    """Certify that the product of injected factor points is a point of T."""
    prod = T.ring.one()
    for j, a in zip(T.injections, points):
        prod = prod * j.apply(j.source(a))
    return certify_point(T, prod)
