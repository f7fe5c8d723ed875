"""Dense Gaussian elimination over a finite field.

Matrices are lists of rows of integer-encoded field elements (see
:class:`modgal.ffield.FieldCtx`).  All routines are deterministic: pivots are
taken leftmost-first, so callers control preferences through column order.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from .errors import SingularError

if TYPE_CHECKING:
    from .ffield import FieldCtx


def rref(rows, ctx: FieldCtx, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the pivot column of ``R[i]``.
    """
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        row = M[r]
        s = inv[row[c]]
        if s != 1:
            mrow = mul[s]
            row = [mrow[x] for x in row]
            M[r] = row
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i == r:
                continue
            other = M[i]
            f = other[c]
            if f:
                nf = mul[neg[f]]
                for j in nz:
                    other[j] = add[other[j]][nf[row[j]]]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows, ctx: FieldCtx, ncols: int | None = None) -> int:
    return len(rref(rows, ctx, ncols)[1])


def det(rows, ctx: FieldCtx) -> int:
    """Determinant of a square matrix."""
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    M = [list(r) for r in rows]
    n = len(M)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = neg[d]
        pv = M[c][c]
        d = mul[d][pv]
        s = inv[pv]
        for i in range(c + 1, n):
            f = M[i][c]
            if f:
                nf = mul[neg[mul[f][s]]]
                row, other = M[c], M[i]
                for j in range(c, n):
                    if row[j]:
                        other[j] = add[other[j]][nf[row[j]]]
    return d


def inverse(rows, ctx: FieldCtx):
    """Inverse of a square matrix; raises :class:`SingularError`."""
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    R, piv = rref(aug, ctx, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularError("matrix is singular")
    return [row[n:] for row in R[:n]]


def solve(rows, rhs, ctx: FieldCtx):
    """One solution of ``rows @ x = rhs`` with free variables set to zero.

    Returns ``None`` when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(aug, ctx, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [0] * ncols
    for row, c in zip(R, piv):
        x[c] = row[ncols]
    return x


def nullspace(rows, ctx: FieldCtx, ncols: int):
    """Basis of the right kernel, one vector per free column (ascending)."""
    R, piv = rref(rows, ctx, ncols) if rows else ([], [])
    neg = ctx.neg
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(R, piv):
            if row[f]:
                v[c] = neg[row[f]]
        basis.append(v)
    return basis
