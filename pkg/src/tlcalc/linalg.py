"""Exact linear algebra over :mod:`tlcalc.scalar` fields.

Matrices are plain lists of rows.  Sparse vectors are ``dict`` objects
mapping a column index to a nonzero entry.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from flint import fmpz_poly

from .scalar import ArithmeticMode, FieldElement

Matrix = list  # list[list[FieldElement]]


def zeros(mode: ArithmeticMode, rows: int, cols: int) -> Matrix:
    z = mode.zero()
    return [[z] * cols for _ in range(rows)]


def identity(mode: ArithmeticMode, size: int) -> Matrix:
    m = zeros(mode, size, size)
    one = mode.one()
    for i in range(size):
        m[i][i] = one
    return m


def matmul(a: Matrix, b: Matrix, mode: ArithmeticMode) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    zero = mode.zero()
    out = []
    for row in a:
        acc = [zero] * cols
        for k in range(inner):
            x = row[k]
            if not x:
                continue
            brow = b[k]
            for j in range(cols):
                y = brow[j]
                if y:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def mat_vec(a: Matrix, v: Sequence[FieldElement], mode: ArithmeticMode) -> list[FieldElement]:
    zero = mode.zero()
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c: FieldElement) -> Matrix:
    return [[x * c for x in row] for row in a]


def minus_scalar(a: Matrix, c: FieldElement) -> Matrix:
    """``a - c * Id``."""
    out = [list(row) for row in a]
    for i in range(len(out)):
        out[i][i] = out[i][i] - c
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def equal(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def to_sparse(row: Iterable[FieldElement]) -> dict[int, FieldElement]:
    return {j: x for j, x in enumerate(row) if x}


def to_dense(v: dict[int, FieldElement], size: int, mode: ArithmeticMode) -> list[FieldElement]:
    out = [mode.zero()] * size
    for j, x in v.items():
        out[j] = x
    return out


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace.

    Each stored row is normalized so that its leading entry is 1.
    """

    def __init__(self, mode: ArithmeticMode):
        self.mode = mode
        self.rows: dict[int, dict[int, FieldElement]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict[int, FieldElement]) -> dict[int, FieldElement]:
        v = {k: x for k, x in v.items() if x}
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            if c not in v or c not in self.rows:
                continue
            coef = v.pop(c)
            for k, x in self.rows[c].items():
                if k == c:
                    continue
                new = v[k] - coef * x if k in v else -(coef * x)
                if new:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = new
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict[int, FieldElement]) -> bool:
        """Insert ``v``; return False when it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        lead = min(r)
        inv = r[lead].inverse()
        self.rows[lead] = {k: x * inv for k, x in r.items()}
        return True

    def contains(self, v: dict[int, FieldElement]) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduced_rows(self) -> list[dict[int, FieldElement]]:
        """Rows of the reduced row-echelon form, by increasing pivot."""
        piv = self.pivots()
        done: dict[int, dict[int, FieldElement]] = {}
        for c in reversed(piv):
            row = dict(self.rows[c])
            for k in sorted(k for k in row if k != c and k in done):
                coef = row.get(k)
                if not coef:
                    continue
                for kk, x in done[k].items():
                    new = row[kk] - coef * x if kk in row else -(coef * x)
                    if new:
                        row[kk] = new
                    else:
                        row.pop(kk, None)
            done[c] = row
        return [done[c] for c in piv]


def rref(a: Matrix, mode: ArithmeticMode) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns (zero rows dropped)."""
    cols = len(a[0]) if a else 0
    ech = Echelon(mode)
    for row in a:
        ech.add(to_sparse(row))
    rows = ech.reduced_rows()
    return [to_dense(r, cols, mode) for r in rows], ech.pivots()


def rank(a: Matrix, mode: ArithmeticMode) -> int:
    ech = Echelon(mode)
    for row in a:
        ech.add(to_sparse(row))
    return len(ech)


def nullspace_sparse(rows: Iterable[dict[int, FieldElement]], ncols: int, mode: ArithmeticMode) -> list[dict[int, FieldElement]]:
    ech = Echelon(mode)
    for row in rows:
        ech.add(row)
    reduced = ech.reduced_rows()
    pivots = ech.pivots()
    pivot_set = set(pivots)
    one = mode.one()
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = {f: one}
        for c, row in zip(pivots, reduced):
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def nullspace(a: Matrix, mode: ArithmeticMode, ncols: int | None = None) -> Matrix:
    """Basis of ``{x : a x = 0}``, returned as the rows of a matrix in RREF."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    basis = nullspace_sparse((to_sparse(r) for r in a), ncols, mode)
    if not basis:
        return []
    ech = Echelon(mode)
    for v in basis:
        ech.add(v)
    return [to_dense(r, ncols, mode) for r in ech.reduced_rows()]


def column_space(a: Matrix, mode: ArithmeticMode) -> Matrix:
    """Basis of the column space, as RREF rows."""
    return rref(transpose(a), mode)[0]


def span_equal(u: Matrix, v: Matrix, mode: ArithmeticMode) -> bool:
    """Do the rows of ``u`` and ``v`` span the same space?"""
    ru, _ = rref(u, mode) if u else ([], [])
    rv, _ = rref(v, mode) if v else ([], [])
    return equal(ru, rv)


def det(a: Matrix, mode: ArithmeticMode) -> FieldElement:
    """Determinant by Gaussian elimination over the field."""
    n = len(a)
    m = [list(r) for r in a]
    result = mode.one()
    for i in range(n):
        piv = next((k for k in range(i, n) if m[k][i]), None)
        if piv is None:
            return mode.zero()
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            result = -result
        p = m[i][i]
        result = result * p
        inv = p.inverse()
        for k in range(i + 1, n):
            f = m[k][i]
            if not f:
                continue
            f = f * inv
            rk, ri = m[k], m[i]
            for j in range(i + 1, n):
                if ri[j]:
                    rk[j] = rk[j] - f * ri[j]
    return result


def bareiss_det(a: Sequence[Sequence[fmpz_poly]]) -> fmpz_poly:
    """Fraction-free determinant of a matrix of integer polynomials."""
    n = len(a)
    if n == 0:
        return fmpz_poly([1])
    m = [list(r) for r in a]
    sign = 1
    prev = fmpz_poly([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return fmpz_poly(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pkk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            exact = prev.is_one()
            for j in range(k + 1, n):
                a, b = ri[j], rk[j]
                if mik.is_zero() or b.is_zero():
                    if a.is_zero():
                        continue
                    num = pkk * a
                else:
                    num = pkk * a - mik * b if not a.is_zero() else -(mik * b)
                ri[j] = num if exact else num // prev
            ri[k] = fmpz_poly(0)
        prev = pkk
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def inverse(a: Matrix, mode: ArithmeticMode) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(mode, n))]
    r, piv = rref(aug, mode)
    if piv[:n] != list(range(n)) or len(r) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r[:n]]


def generalized_kernel(a: Matrix, mode: ArithmeticMode) -> Matrix:
    """Basis (RREF rows) of the union of the kernels of the powers of ``a``.

    Grows ``K_{j+1} = {v : a v in K_j}`` until it stabilizes, which happens
    no later than the matrix size.
    """
    n = len(a)
    if n == 0:
        return []
    cur: Matrix = []
    while True:
        # v with a v in span(cur): solve [a | -cur^T] (v, c) = 0
        k = len(cur)
        system = []
        for i in range(n):
            system.append(list(a[i]) + [-cur[j][i] for j in range(k)])
        sol = nullspace(system, mode, n + k)
        vecs = [row[:n] for row in sol]
        nxt = rref(vecs, mode)[0] if vecs else []
        if len(nxt) == len(cur):
            return nxt
        cur = nxt
