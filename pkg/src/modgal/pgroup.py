"""Finite p-groups as explicit multiplication tables.

The identity is always element 0 and the element enumeration is fixed at
construction; variable orderings elsewhere (e.g. the ``x@i`` variables of
D_k(G)) depend on it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .errors import GroupError, ParseError
from .ffield import is_prime

MAX_ORDER = 27


def _prime_power(n: int):
    """(p, k) with n = p^k, or None.  n = 1 gives (None, 0)."""
    if n == 1:
        return None, 0
    for p in range(2, n + 1):
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


@dataclass(frozen=True)
class GroupTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    gens: tuple[int, ...]
    elem_order: tuple[int, ...]
    p: int | None
    spec: str | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        """log_p |G|."""
        return _prime_power(self.order)[1]

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self.table[g].index(0)

    def power(self, g: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = self.table[r][g]
        return r

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        T = self.table
        return all(T[a][b] == T[b][a] for a in range(self.order) for b in range(a))

    def words(self) -> list[tuple[int, ...]]:
        """For each element a shortest word in the generators (breadth-first, gens in order)."""
        words: list[tuple[int, ...] | None] = [None] * self.order
        words[0] = ()
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for gi, g in enumerate(self.gens):
                    h = self.table[e][g]
                    if words[h] is None:
                        words[h] = words[e] + (gi,)
                        nxt.append(h)
            frontier = nxt
        if any(w is None for w in words):
            raise GroupError("generators do not generate the group")
        return words


@dataclass(frozen=True)
class ElemAbCoords:
    """Coordinates g = (g_1..g_n) in F_p^n for each element of an elementary-abelian group."""

    p: int
    n: int
    coords: tuple[tuple[int, ...], ...]
    group: GroupTable

    def index_of(self, vec) -> int:
        return self.coords.index(tuple(v % self.p for v in vec))


def _check_table(T, max_order: int):
    n = len(T)
    if n == 0 or any(len(r) != n for r in T):
        raise GroupError("table must be a nonempty square matrix")
    if n > max_order:
        raise GroupError(f"order {n} exceeds the configured cap {max_order}")
    if any(not (0 <= x < n) for r in T for x in r):
        raise GroupError("table entries out of range")
    if list(T[0]) != list(range(n)) or [r[0] for r in T] != list(range(n)):
        raise GroupError("element 0 is not a two-sided identity")
    for a in range(n):
        if 0 not in T[a]:
            raise GroupError(f"element {a} has no right inverse")
        b = T[a].index(0)
        if T[b][a] != 0:
            raise GroupError(f"element {a} has no two-sided inverse")
    for a in range(n):
        Ta = T[a]
        for b in range(n):
            ab = Ta[b]
            Tab, Tb = T[ab], T[b]
            for c in range(n):
                if Tab[c] != Ta[Tb[c]]:
                    raise GroupError(f"associativity fails for ({a}, {b}, {c})")


def _element_orders(T):
    out = []
    for g in range(len(T)):
        k, x = 1, g
        while x != 0:
            x = T[x][g]
            k += 1
        out.append(k)
    return tuple(out)


def _generating_set(T):
    n = len(T)
    gens = []
    span = {0}
    for g in range(1, n):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        while frontier:
            nxt = []
            for e in frontier:
                for h in gens:
                    x = T[e][h]
                    if x not in span:
                        span.add(x)
                        nxt.append(x)
            frontier = nxt
    return tuple(gens)


def group_validate(table, names=None, gens=None, spec=None, max_order: int = MAX_ORDER) -> GroupTable:
    """Check the group axioms exhaustively and that the order is a prime power."""
    T = tuple(tuple(int(x) for x in row) for row in table)
    _check_table(T, max_order)
    n = len(T)
    pp = _prime_power(n)
    if pp is None:
        raise GroupError(f"order {n} is not a prime power")
    p = pp[0]
    orders = _element_orders(T)
    if p is not None and any(_prime_power(o) is None or (o > 1 and _prime_power(o)[0] != p)
                             for o in orders):
        raise GroupError("element order is not a power of p")
    if gens is None:
        gens = _generating_set(T)
    if names is None:
        names = tuple(["1"] + [f"e{i}" for i in range(1, n)])
    G = GroupTable(n, T, tuple(names), tuple(gens), orders, p, spec)
    G.words()  # generators must generate
    return G


def group_cyclic(p: int, n: int) -> GroupTable:
    """C_{p^n}; the generator is element 1 and element i is g^i."""
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    N = p**n
    T = tuple(tuple((i + j) % N for j in range(N)) for i in range(N))
    names = tuple("1" if i == 0 else "g" if i == 1 else f"g^{i}" for i in range(N))
    gens = (1,) if N > 1 else ()
    return GroupTable(N, T, names, gens, _element_orders(T), p, f"cyclic:{p}^{n}")


def group_elemab(p: int, n: int) -> tuple[GroupTable, ElemAbCoords]:
    """(F_p^n, +) with vectors enumerated lexicographically (first coordinate most significant)."""
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    vecs = list(itertools.product(range(p), repeat=n))
    index = {v: i for i, v in enumerate(vecs)}
    T = tuple(
        tuple(index[tuple((x + y) % p for x, y in zip(a, b))] for b in vecs) for a in vecs
    )
    names = tuple("(" + ",".join(map(str, v)) + ")" for v in vecs)
    gens = tuple(index[tuple(1 if j == i else 0 for j in range(n))] for i in range(n))
    G = GroupTable(len(vecs), T, names, gens, _element_orders(T), p, f"elemab:{p}^{n}")
    return G, ElemAbCoords(p, n, tuple(vecs), G)


def group_product(G1: GroupTable, G2: GroupTable) -> GroupTable:
    """Direct product, element (a, b) at index a*|G2| + b."""
    if G1.p is not None and G2.p is not None and G1.p != G2.p:
        raise GroupError(f"mismatched characteristic: {G1.p} vs {G2.p}")
    n1, n2 = G1.order, G2.order
    T = tuple(
        tuple(G1.table[a1][b1] * n2 + G2.table[a2][b2] for b1 in range(n1) for b2 in range(n2))
        for a1 in range(n1) for a2 in range(n2)
    )
    names = tuple(
        "1" if (a1, a2) == (0, 0) else f"({G1.names[a1]},{G2.names[a2]})"
        for a1 in range(n1) for a2 in range(n2)
    )
    gens = tuple(g * n2 for g in G1.gens) + tuple(G2.gens)
    spec = None
    if G1.spec and G2.spec:
        spec = f"product:({G1.spec})x({G2.spec})"
    return GroupTable(n1 * n2, T, names, gens, _element_orders(T), G1.p or G2.p, spec)


def elemab_coords(G: GroupTable) -> ElemAbCoords:
    """Coordinates for a table that coincides with the canonical elementary-abelian one."""
    if G.p is None:
        raise GroupError("trivial group has no elementary-abelian coordinates")
    E, coords = group_elemab(G.p, G.n)
    if E.table != G.table:
        raise GroupError("group is not the canonical elementary-abelian table")
    return ElemAbCoords(coords.p, coords.n, coords.coords, G)


def parse_group_spec(text: str, base_dir=None, max_order: int = MAX_ORDER) -> GroupTable:
    """Parse ``cyclic:p^n``, ``elemab:p^n``, ``product:(A)x(B)`` or ``cayley:@file``."""
    text = text.strip()
    kind, _, arg = text.partition(":")
    if kind in ("cyclic", "elemab"):
        m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", arg)
        if not m:
            raise ParseError(f"bad group size in {text!r}")
        if m.group(2) is not None:
            p, n = int(m.group(1)), int(m.group(2))
        else:
            pp = _prime_power(int(m.group(1)))
            if pp is None or pp[0] is None:
                raise ParseError(f"{m.group(1)} is not a nontrivial prime power")
            p, n = pp
        return group_cyclic(p, n) if kind == "cyclic" else group_elemab(p, n)[0]
    if kind == "product":
        parts = _split_product(arg)
        if len(parts) < 2:
            raise ParseError(f"bad product spec {text!r}")
        G = parse_group_spec(parts[0], base_dir, max_order)
        for part in parts[1:]:
            G = group_product(G, parse_group_spec(part, base_dir, max_order))
        return G
    if kind == "cayley":
        if not arg.startswith("@"):
            raise ParseError("cayley spec must be cayley:@file")
        import pathlib

        path = pathlib.Path(arg[1:])
        if base_dir is not None and not path.is_absolute():
            path = pathlib.Path(base_dir) / path
        rows = [line.split() for line in path.read_text().splitlines() if line.strip()]
        return group_validate(rows, spec=text, max_order=max_order)
    raise ParseError(f"unknown group spec {text!r}")


def _split_product(arg: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in arg.strip():
        if ch == "(":
            if depth:
                cur += ch
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth:
                cur += ch
            else:
                parts.append(cur)
                cur = ""
        elif depth:
            cur += ch
        elif ch not in "x \t":
            raise ParseError(f"bad product spec near {ch!r}")
    if depth:
        raise ParseError("unbalanced parentheses in product spec")
    return parts
