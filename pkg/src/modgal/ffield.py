"""Arithmetic in GF(p) and GF(p^s), Moore determinants and linearized polynomials.

An element of GF(p^s) = F_p[t]/(m(t)) is encoded as the integer
``sum(c_i * p**i)`` where ``c_0..c_{s-1}`` are its coefficients in t
(low-to-high).  :class:`FieldCtx` precomputes addition/multiplication tables
over these codes; :class:`FieldElement` is the user-facing wrapper.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from . import linalg
from .errors import FieldError, FieldMismatchError, ParseError, SingularError

MAX_P = 13
MAX_Q = 81


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# --- coefficient-vector polynomials over F_p (low-to-high) -------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    """Remainder of a modulo the monic polynomial m over F_p."""
    a = _trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _monic_polys(p: int, d: int):
    """Monic degree-d polynomials in lexicographic order of coefficient vectors."""
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def is_irreducible(poly, p: int) -> bool:
    """Irreducibility over F_p by trial division with all monic factors of degree <= deg/2."""
    poly = tuple(_trim(poly))
    d = len(poly) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for f in _monic_polys(p, k):
            if not _pmod(poly, f, p):
                return False
    return True


class FieldCtx:
    """The finite field GF(p^s) with a fixed defining modulus.

    Two contexts are the same field iff ``p`` and ``modulus`` agree; elements
    from different fields refuse to mix.
    """

    def __init__(self, p: int, s: int, modulus=None, *, max_q: int = MAX_Q, max_p: int = MAX_P):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if p > max_p:
            raise FieldError(f"p={p} exceeds the configured cap {max_p}")
        if s < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**s
        if q > max_q:
            raise FieldError(f"q={q} exceeds the configured cap {max_q}")
        if s == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = next(f for f in _monic_polys(p, s) if is_irreducible(f, p))
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != s + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {s}")
            if not is_irreducible(modulus, p):
                raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.s = s
        self.q = q
        self.modulus = tuple(modulus)
        self._build_tables()

    def _digits(self, a: int):
        p = self.p
        out = []
        for _ in range(self.s):
            out.append(a % p)
            a //= p
        return out

    def _encode(self, digits) -> int:
        v = 0
        for c in reversed(list(digits)):
            v = v * self.p + c
        return v

    def _build_tables(self):
        p, q, s = self.p, self.q, self.s
        digits = [self._digits(a) for a in range(q)]
        self.add = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                     for b in range(q)] for a in range(q)]
        self.neg = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]
        if s == 1:
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            def pmul(a, b):
                prod = [0] * (2 * s - 1)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                r = _pmod(prod, self.modulus, p)
                return self._encode(r + [0] * (s - len(r)))

            # log/exp tables from a primitive element, then the full table
            prim = None
            for g in range(2, q) if q > 2 else [1]:
                seen, x = 1, g
                while x != 1:
                    x = pmul(x, g)
                    seen += 1
                if seen == q - 1:
                    prim = g
                    break
            exp = [1] * (q - 1)
            for i in range(1, q - 1):
                exp[i] = pmul(exp[i - 1], prim)
            log = [0] * q
            for i, v in enumerate(exp):
                log[v] = i
            self.mul = [[0] * q] + [
                [0] + [exp[(log[a] + log[b]) % (q - 1)] for b in range(1, q)]
                for a in range(1, q)
            ]
        self.inv = [0] * q
        for a in range(1, q):
            row = self.mul[a]
            self.inv[a] = next(b for b in range(1, q) if row[b] == 1)

    # --- identity ---------------------------------------------------------
    @property
    def key(self):
        return (self.p, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldCtx({self.spec()})"

    def spec(self) -> str:
        """Spec string that recreates exactly this field."""
        if self.s == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.s})/" + ",".join(str(c) for c in self.modulus)

    # --- element helpers --------------------------------------------------
    def __call__(self, value) -> FieldElement:
        return FieldElement(self, self.code(value))

    def code(self, value) -> int:
        """Integer code of an int, coefficient vector, FieldElement or string."""
        if isinstance(value, FieldElement):
            self.check(value)
            return value.value
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            return parse_element(self, value).value
        coeffs = [int(c) % self.p for c in value]
        r = _pmod(coeffs, self.modulus, self.p) if self.s > 1 else [sum(coeffs[:1]) % self.p]
        r = r + [0] * (self.s - len(r))
        return self._encode(r)

    def check(self, x: FieldElement):
        if x.ctx != self:
            raise FieldMismatchError(f"element of {x.ctx!r} used in {self!r}")

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of t (equal to 0 in a prime field)."""
        return FieldElement(self, self.p % self.q if self.s > 1 else 0)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, a) for a in range(self.q)]

    def pow_code(self, a: int, e: int) -> int:
        mul = self.mul
        r = 1
        while e:
            if e & 1:
                r = mul[r][a]
            a = mul[a][a]
            e >>= 1
        return r

    def format_code(self, a: int) -> str:
        """Render a code as a polynomial in t, e.g. ``2*t^2+t+1``."""
        if a == 0:
            return "0"
        parts = []
        for i, c in reversed(list(enumerate(self._digits(a)))):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts)


def field_create(p: int, s: int = 1, modulus=None, **caps) -> FieldCtx:
    """GF(p^s); without a modulus the first lexicographic monic irreducible is used."""
    return FieldCtx(p, s, modulus, **caps)


_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*(?:/\s*([\d,\s]+))?\s*$")


def parse_field_spec(text: str, **caps) -> FieldCtx:
    """Parse ``GF(p)``, ``GF(q)``, ``GF(p^s)`` or ``GF(p^s)/m0,m1,...,1``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"bad field spec {text!r}")
    p = int(m.group(1))
    if m.group(2) is not None:
        s = int(m.group(2))
    else:
        # GF(q) with q a prime power
        s = 1
        for base in range(2, p + 1):
            if p % base == 0:
                q, e = p, 0
                while q % base == 0:
                    q //= base
                    e += 1
                if q == 1:
                    p, s = base, e
                break
    modulus = None
    if m.group(3):
        modulus = [int(c) for c in m.group(3).replace(" ", "").split(",") if c]
    return FieldCtx(p, s, modulus, **caps)


class FieldElement:
    """An element of a :class:`FieldCtx`.  Immutable."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldMismatchError(f"cannot combine {self.ctx!r} and {other.ctx!r}")
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.add[self.value][b])

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.sub[self.value][b])

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.sub[b][self.value])

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.mul[self.value][b])

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg[self.value])

    def inverse(self) -> FieldElement:
        if not self.value:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(self.ctx, self.ctx.inv[self.value])

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        if not b:
            raise ZeroDivisionError("division by zero in finite field")
        return FieldElement(self.ctx, self.ctx.mul[self.value][self.ctx.inv[b]])

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.ctx, self.ctx.pow_code(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx._digits(self.value))

    def __str__(self):
        return self.ctx.format_code(self.value)

    def __repr__(self):
        return f"FieldElement({self}, {self.ctx.spec()})"


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    """Parse an element written as a polynomial in t (e.g. ``t^2+2*t+1``)."""
    from .polyring import Ring

    f = Ring(ctx, ()).parse(text)
    return f.constant_coeff()


def _same_ctx(xs) -> FieldCtx | None:
    ctx = None
    for x in xs:
        if ctx is None:
            ctx = x.ctx
        elif x.ctx != ctx:
            raise FieldMismatchError("mixed field contexts")
    return ctx


def frobenius(x: FieldElement, e: int = 1) -> FieldElement:
    """x^(p^e)."""
    return x ** (x.ctx.p**e)


def moore_matrix(alphas) -> list[list[int]]:
    """Codes of the matrix with entry (i, j) = alpha_j^(p^i), i, j from 0."""
    ctx = _same_ctx(alphas)
    n = len(alphas)
    rows = []
    cur = [a.value for a in alphas]
    for _ in range(n):
        rows.append(list(cur))
        cur = [ctx.pow_code(c, ctx.p) for c in cur]
    return rows


def moore_det(alphas) -> FieldElement:
    """Determinant of the Moore matrix; nonzero iff the alphas are F_p-independent."""
    alphas = list(alphas)
    if not alphas:
        raise ValueError("moore_det needs at least one element")
    ctx = _same_ctx(alphas)
    return FieldElement(ctx, linalg.det(moore_matrix(alphas), ctx))


def fp_independent(alphas) -> bool:
    alphas = list(alphas)
    if not alphas:
        return True
    return bool(moore_det(alphas))


def fp_span(alphas) -> list[FieldElement]:
    """All F_p-combinations of alphas, in lexicographic order of coefficient tuples."""
    ctx = _same_ctx(alphas)
    out = []
    for cs in itertools.product(range(ctx.p), repeat=len(alphas)):
        v = 0
        for c, a in zip(cs, alphas):
            v = ctx.add[v][ctx.mul[c][a.value]]
        out.append(FieldElement(ctx, v))
    return out


@dataclass(frozen=True)
class MooreSystem:
    """alphas together with (f_ij) satisfying sum_j f_ij alpha_k^(p^j) = delta_ik."""

    ctx: FieldCtx
    alphas: tuple[FieldElement, ...]
    inverse: tuple[tuple[FieldElement, ...], ...] | None = None

    def f(self, i: int) -> tuple[FieldElement, ...]:
        """Coefficients of the i-th linearized polynomial (0-based)."""
        return self.inverse[i]


def moore_inverse(alphas) -> MooreSystem:
    alphas = tuple(alphas)
    ctx = _same_ctx(alphas)
    try:
        # F @ M = I with M[j][k] = alpha_k^(p^j)
        F = linalg.inverse(moore_matrix(alphas), ctx)
    except SingularError:
        raise SingularError("alphas are F_p-dependent; Moore matrix is singular") from None
    inv = tuple(tuple(FieldElement(ctx, c) for c in row) for row in F)
    return MooreSystem(ctx, alphas, inv)


def linearized_eval(coeffs, x: FieldElement) -> FieldElement:
    """sum_j coeffs[j] * x^(p^j)."""
    ctx = x.ctx
    acc = ctx.zero
    cur = x
    for c in coeffs:
        acc = acc + c * cur
        cur = frobenius(cur)
    return acc
