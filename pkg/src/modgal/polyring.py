"""Sparse multivariate polynomials over a finite field.

A :class:`Polynomial` is a mapping from exponent tuples to nonzero integer
field codes.  Rings carry a monomial order (``lex`` or ``grevlex``) with the
variable list giving precedence, first variable largest.
"""

from __future__ import annotations

import itertools
import operator
import re

from .errors import FieldMismatchError, ParseError, RingMismatchError
from .ffield import FieldCtx, FieldElement

ORDERS = ("lex", "grevlex")
MAX_EXP = 1 << 16
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_@]*\Z")


def _lex_key(e):
    return e


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


class Ring:
    """k[vars] with a fixed monomial order."""

    def __init__(self, ctx: FieldCtx, vars, order: str = "grevlex"):
        vars = tuple(vars)
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        for v in vars:
            if not _NAME_RE.match(v) or v == "t":
                raise ValueError(f"invalid variable name {v!r}")
        self.ctx = ctx
        self.vars = vars
        self.order = order
        self.nvars = len(vars)
        self.key = _lex_key if order == "lex" else _grevlex_key
        self._index = {v: i for i, v in enumerate(vars)}

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.ctx == other.ctx
                and self.vars == other.vars and self.order == other.order)

    def __hash__(self):
        return hash((self.ctx, self.vars, self.order))

    def __repr__(self):
        return f"Ring({self.ctx.spec()}, {list(self.vars)}, {self.order})"

    def with_order(self, order: str) -> Ring:
        return self if order == self.order else Ring(self.ctx, self.vars, order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    # --- constructors -----------------------------------------------------
    def from_terms(self, terms) -> Polynomial:
        out = {}
        for e, c in dict(terms).items():
            c = self.ctx.code(c)
            if c:
                e = tuple(e)
                if len(e) != self.nvars:
                    raise ValueError("exponent vector has wrong length")
                out[e] = c
        return Polynomial(self, out)

    def from_codes(self, terms) -> Polynomial:
        """Like from_terms, but coefficients are raw field codes (no reduction mod p)."""
        return Polynomial(self, {tuple(e): c for e, c in dict(terms).items() if c})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.ctx.code(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Polynomial:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(v) for v in self.vars)

    def monomial(self, exps) -> Polynomial:
        return Polynomial(self, {tuple(exps): 1})

    def monomials(self, max_deg: int) -> list[tuple[int, ...]]:
        """Exponent vectors of total degree <= max_deg, ascending in the ring order."""
        out = []
        for d in range(max_deg + 1):
            out.extend(_compositions(d, self.nvars))
        out.sort(key=self.key)
        return out

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return self.coerce(value)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def coerce(self, f: Polynomial) -> Polynomial:
        """Re-home f by variable name into this ring (missing variables must not occur)."""
        if f.ring == self:
            return f
        if f.ring.ctx != self.ctx:
            raise FieldMismatchError("polynomial over a different field")
        pos = []
        for v in f.ring.vars:
            pos.append(self._index.get(v))
        out = {}
        for e, c in f.terms.items():
            ne = [0] * self.nvars
            for i, x in enumerate(e):
                if x:
                    if pos[i] is None:
                        raise RingMismatchError(f"variable {f.ring.vars[i]!r} not in {self!r}")
                    ne[pos[i]] = x
            out[tuple(ne)] = c
        return Polynomial(self, out)


def _compositions(d: int, n: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


class Polynomial:
    """An immutable polynomial; ``terms`` maps exponent tuples to nonzero codes."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # --- coercion ---------------------------------------------------------
    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.const(other)
        return NotImplemented

    # --- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        add = self.ring.ctx.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = add[out.get(e, 0)][c]
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.ctx.neg
        return Polynomial(self.ring, {e: neg[c] for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> Polynomial:
        c = self.ring.ctx.code(c)
        if not c:
            return self.ring.zero()
        row = self.ring.ctx.mul[c]
        return Polynomial(self.ring, {e: row[v] for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        ctx = self.ring.ctx
        add, mul = ctx.add, ctx.mul
        out: dict = {}
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        badd = operator.add
        for e2, c2 in b.items():
            row = mul[c2]
            for e1, c1 in a.items():
                e = tuple(map(badd, e1, e2))
                out[e] = add[out.get(e, 0)][row[c1]]
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        if self.terms and k * self.degree() >= MAX_EXP:
            raise OverflowError("exponent exceeds 2^16")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # --- queries ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self) -> FieldElement:
        return FieldElement(self.ring.ctx, self.terms.get((0,) * self.ring.nvars, 0))

    def coeff(self, exps) -> FieldElement:
        return FieldElement(self.ring.ctx, self.terms.get(tuple(exps), 0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(self.ring.vars[i])
        return used

    def sorted_terms(self):
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def leading_monomial(self):
        return max(self.terms, key=self.ring.key)

    def leading_coeff(self) -> FieldElement:
        return FieldElement(self.ring.ctx, self.terms[self.leading_monomial()])

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(FieldElement(self.ring.ctx, self.ring.ctx.inv[self.terms[self.leading_monomial()]]))

    def subs(self, **values) -> Polynomial:
        """Substitute polynomials/constants for named variables."""
        images = {}
        for v in self.ring.vars:
            images[v] = self.ring(values[v]) if v in values else self.ring.var(v)
        return VarMap(self.ring, self.ring, images).apply(self)

    # --- printing ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        ctx = self.ring.ctx
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(self.ring.vars, e) if x
            )
            cs = ctx.format_code(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                if "+" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


# --- substitution homomorphisms ---------------------------------------------

class VarMap:
    """Algebra homomorphism source -> target given by one image per source variable."""

    def __init__(self, source: Ring, target: Ring, images):
        if isinstance(images, dict):
            # unlisted variables map to the same-named target variable
            unknown = set(images) - set(source.vars)
            if unknown:
                raise RingMismatchError(f"unknown source variables {sorted(unknown)}")
            images = [images[v] if v in images else target.var(v) for v in source.vars]
        images = tuple(target(f) for f in images)
        if len(images) != source.nvars:
            raise RingMismatchError("image list length differs from the number of source variables")
        if source.ctx != target.ctx:
            raise FieldMismatchError("VarMap between different fields")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def identity(cls, ring: Ring) -> VarMap:
        return cls(ring, ring, ring.gens())

    def image(self, name: str) -> Polynomial:
        return self.images[self.source.index(name)]

    def apply(self, f: Polynomial) -> Polynomial:
        if f.ring != self.source:
            raise RingMismatchError(f"map source {self.source!r} does not match {f.ring!r}")
        return apply_map(self, f)

    __call__ = apply

    def __eq__(self, other):
        return (isinstance(other, VarMap) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def is_identity(self) -> bool:
        return self.source == self.target and self.images == self.source.gens()

    def lines(self) -> list[str]:
        return [f"{v} -> {img}" for v, img in zip(self.source.vars, self.images)]

    def __repr__(self):
        return "VarMap(" + "; ".join(self.lines()) + ")"


def apply_map(m: VarMap, f: Polynomial) -> Polynomial:
    """Substitute m's images into f."""
    if f.ring != m.source:
        raise RingMismatchError(f"map source {m.source!r} does not match {f.ring!r}")
    target = m.target
    ctx = target.ctx
    add, mul = ctx.add, ctx.mul
    powers: list[list[Polynomial]] = [[target.one(), img] for img in m.images]

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * m.images[i])
        return cache[k]

    out: dict = {}
    for e, c in f.terms.items():
        prod = None
        for i, x in enumerate(e):
            if x:
                pw = power(i, x)
                prod = pw if prod is None else prod * pw
        if prod is None:
            z = (0,) * target.nvars
            out[z] = add[out.get(z, 0)][c]
            continue
        row = mul[c]
        for te, tc in prod.terms.items():
            out[te] = add[out.get(te, 0)][row[tc]]
    return Polynomial(target, {e: c for e, c in out.items() if c})


def compose_maps(m1: VarMap, m2: VarMap) -> VarMap:
    """The map f -> m2(m1(f))."""
    if m1.target != m2.source:
        raise RingMismatchError("target of the first map is not the source of the second")
    return VarMap(m1.source, m2.target, [apply_map(m2, img) for img in m1.images])


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring!r} vs {b.ring!r}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# --- parser -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_@]*)|(\S))")


class _Parser:
    """Recursive descent over + - * ^ ( ), integers, t and variable names."""

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(0).strip() == "":
                break
            kind = "int" if m.group(1) else "name" if m.group(2) else "op"
            self.toks.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def error(self, msg, at=None):
        if at is None:
            at = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(f"{msg} in {self.text!r}", col=at + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            self.error("empty polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            self.error("unexpected token")
        return f

    def expr(self):
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, at = self.take()
            if kind != "int":
                self.error("expected integer exponent", at)
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, at = self.take()
        ring = self.ring
        if kind == "int":
            return ring.const(int(val))
        if kind == "name":
            if val == "t":
                if ring.ctx.s == 1:
                    self.error("'t' is only defined in extension fields", at)
                return ring.const(ring.ctx.gen)
            if val not in ring._index:
                self.error(f"unknown variable {val!r}", at)
            return ring.var(val)
        if val == "(":
            f = self.expr()
            if self.take()[1] != ")":
                self.error("expected ')'")
            return f
        if val == "-":
            return -self.factor()
        self.error(f"unexpected {val!r}" if val else "unexpected end of input", at)


def monomials_upto(ring: Ring, max_deg: int):
    """Convenience iterator of monomial polynomials of degree <= max_deg (ascending)."""
    for e in ring.monomials(max_deg):
        yield ring.monomial(e)


def product_ring(*rings: Ring, order: str | None = None) -> Ring:
    """Ring on the concatenated variable lists (names must already be distinct)."""
    ctx = rings[0].ctx
    return Ring(ctx, tuple(itertools.chain.from_iterable(r.vars for r in rings)),
                order or rings[0].order)
