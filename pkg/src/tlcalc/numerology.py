"""Integer bookkeeping: dimensions, critical lines, orbits and Bratteli tables.

Everything here depends only on ``ell``, the least positive integer with
``q^(2 ell) = 1`` (``None`` when q is not a root of unity).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb

from .diagram import catalan
from .scalar import ArithmeticMode, split_kr


def ell_of(mode: ArithmeticMode) -> int | None:
    return mode.ell


def in_range(n: int, p: int) -> bool:
    return n >= 0 and 0 <= p and 2 * p <= n


def dimV(n: int, p: int) -> int:
    if not in_range(n, p):
        return 0
    return comb(n, p) - (comb(n, p - 1) if p else 0)


def kr(n: int, p: int, ell: int) -> tuple[int, int]:
    return split_kr(n - 2 * p + 1, ell)


def critical(n: int, p: int, ell: int | None) -> bool:
    return ell is not None and kr(n, p, ell)[1] == ell


@lru_cache(maxsize=None)
def dimR(n: int, p: int, ell: int | None) -> int:
    """Radical dimensions from the three-case recursion along the rows."""
    if ell is None or not in_range(n, p) or p == 0:
        return 0
    _, r = kr(n, p, ell)
    if r == ell:
        return 0
    if r == ell - 1:
        return dimR(n - 1, p, ell) + dimV(n - 1, p - 1)
    return dimR(n - 1, p, ell) + dimR(n - 1, p - 1, ell)


@lru_cache(maxsize=None)
def dimL(n: int, p: int, ell: int | None) -> int:
    """Dimensions of the irreducible quotients, by their own recursion."""
    if not in_range(n, p):
        return 0
    if p == 0:
        return 1
    if ell is None:
        return dimV(n, p)
    _, r = kr(n, p, ell)
    if r == ell:
        return dimV(n, p)
    if r == ell - 1:
        return dimL(n - 1, p, ell)
    return dimL(n - 1, p, ell) + dimL(n - 1, p - 1, ell)


def right_partner(n: int, p: int, ell: int | None) -> int | None:
    """``p + r - ell``: the mirror image across the critical line on the larger-m side."""
    if ell is None or critical(n, p, ell):
        return None
    q = p + kr(n, p, ell)[1] - ell
    return q if q >= 0 else None


def left_partner(n: int, p: int, ell: int | None) -> int | None:
    """``p + r``: the mirror image across the critical line on the smaller-m side."""
    if ell is None or critical(n, p, ell):
        return None
    q = p + kr(n, p, ell)[1]
    return q if 2 * q <= n else None


def symmetric_pair(n: int, p: int, ell: int | None) -> int | None:
    """The partner label ``p + r(n,p) - ell``, if it is in range."""
    return right_partner(n, p, ell)


def orbit(n: int, p: int, ell: int | None) -> list[int]:
    """All labels reachable by repeated reflection, in decreasing order."""
    if not in_range(n, p):
        raise ValueError(f"({n},{p}) out of range")
    out = {p}
    cur = p
    while (nxt := right_partner(n, cur, ell)) is not None:
        out.add(nxt)
        cur = nxt
    cur = p
    while (nxt := left_partner(n, cur, ell)) is not None:
        out.add(nxt)
        cur = nxt
    return sorted(out, reverse=True)


def hom_dim_expected(n: int, p: int, p2: int, ell: int | None, beta_zero: bool = False) -> int:
    """dim Hom(V_{n,p}, V_{n,p2}) predicted by the classification of morphisms."""
    if not (in_range(n, p) and in_range(n, p2)):
        return 0
    if p == p2:
        return 1
    if beta_zero and (n, p, p2) == (2, 1, 0):
        return 1
    if p2 > p and left_partner(n, p, ell) == p2:
        return 1
    return 0


def dimP_expected(n: int, p: int, ell: int | None) -> int:
    """Dimension of the principal indecomposable with top L_{n,p}."""
    if not in_range(n, p):
        return 0
    if ell is None:
        return dimV(n, p)
    k, r = kr(n, p, ell)
    if r == ell or (k == 0 and ell != 2):
        return dimV(n, p)
    return dimV(n, p) + dimV(n, p + r)


@dataclass(frozen=True)
class BratteliCell:
    p: int
    dimV: int
    dimR: int
    dimL: int
    critical: bool
    orbit_id: int


@dataclass(frozen=True)
class BratteliRow:
    n: int
    cells: tuple[BratteliCell, ...]  # p = 0 .. n//2

    def cell(self, p: int) -> BratteliCell:
        return self.cells[p]

    def as_dict(self) -> dict:
        return {"n": self.n, "cells": [asdict(c) for c in self.cells]}


def bratteli_row(n: int, ell: int | None) -> BratteliRow:
    cells = []
    for p in range(n // 2 + 1):
        r, l = dimR(n, p, ell), dimL(n, p, ell)
        v = dimV(n, p)
        if r + l != v:
            raise AssertionError(f"dimension recursions disagree at ({n},{p})")
        cells.append(BratteliCell(p, v, r, l, critical(n, p, ell), max(orbit(n, p, ell))))
    return BratteliRow(n, tuple(cells))


def bratteli_table(n_max: int, ell: int | None) -> list[BratteliRow]:
    return [bratteli_row(n, ell) for n in range(1, n_max + 1)]


def is_semisimple(ell: int | None, n: int) -> bool:
    return all(dimR(n, p, ell) == 0 for p in range(n // 2 + 1))


def curious_identity(n: int) -> tuple[int, int]:
    """(sum_p d_{n,p}^2, d_{2n,n})."""
    return sum(dimV(n, p) ** 2 for p in range(n // 2 + 1)), dimV(2 * n, n)


def wedderburn_sum(n: int, ell: int | None, dimP=dimP_expected) -> int:
    return sum(dimL(n, p, ell) * dimP(n, p, ell) for p in range(n // 2 + 1) if dimL(n, p, ell))


__all__ = [
    "BratteliCell",
    "BratteliRow",
    "bratteli_row",
    "bratteli_table",
    "catalan",
    "critical",
    "curious_identity",
    "dimL",
    "dimP_expected",
    "dimR",
    "dimV",
    "ell_of",
    "hom_dim_expected",
    "in_range",
    "is_semisimple",
    "kr",
    "left_partner",
    "orbit",
    "right_partner",
    "symmetric_pair",
    "wedderburn_sum",
]
