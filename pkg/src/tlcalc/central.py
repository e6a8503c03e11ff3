"""The central elements F_n and C_n of TL_n.

F_n is a closed strand wrapped around all n horizontal strands: two
vertical columns A (left) and B (right) joined by an arc above the first
row and an arc below the last.  Each of the 2n crossings is resolved into
its two smoothings with weights ``s`` and ``-1/s`` (``s = q^(1/2)``).

Rather than enumerating all 2^(2n) resolutions one at a time, the
expansion sweeps down the rows keeping, for every partial resolution,
only the pairing of the loose ends crossing the current horizontal cut.
"""
from __future__ import annotations

from functools import lru_cache

from .diagram import AlgebraElement, Diagram, elem_multiply, generator
from .linalg import Matrix
from .scalar import (
    ArithmeticMode,
    FieldElement,
    HalfLaurent,
    ModeUnsupported,
    RationalBeta,
    beta_laurent,
    f_eigen,
    q_elem,
)
from .stdmod import action_matrix


class GenericRewriteFailure(ArithmeticError):
    """A coefficient of F_n failed to be a polynomial in beta."""


_A, _B, _SEG = -1, -2, -3


def _replace(pairs: dict[int, int], old: int, new: int) -> None:
    x = pairs.pop(old)
    pairs[new] = x
    pairs[x] = new


def _join(pairs: dict[int, int], u: int, v: int) -> int:
    """Connect the paths ending at ``u`` and ``v``; return 1 if that closes a loop."""
    if pairs[u] == v:
        del pairs[u], pairs[v]
        return 1
    x = pairs.pop(u)
    y = pairs.pop(v)
    pairs[x] = y
    pairs[y] = x
    return 0


def _pair(pairs: dict[int, int], u: int, v: int) -> None:
    pairs[u] = v
    pairs[v] = u


@lru_cache(maxsize=None)
def fn_laurent(n: int) -> dict[Diagram, HalfLaurent]:
    """Coefficients of F_n as Laurent polynomials in ``s``."""
    if n < 1:
        raise ValueError("n must be positive")
    m = 2 * n
    a = HalfLaurent.monomial(1)
    b = HalfLaurent.monomial(-1, -1)
    bet = beta_laurent()
    one = HalfLaurent.constant(1)

    def key(pairs: dict[int, int]) -> tuple:
        return tuple(sorted(pairs.items()))

    states: dict[tuple, HalfLaurent] = {key({_A: _B, _B: _A}): one}

    def push(out, pairs, coef, loops):
        if loops:
            coef = coef * bet**loops
        k = key(pairs)
        out[k] = out[k] + coef if k in out else coef

    for k in range(1, n + 1):
        lk, rk = k - 1, m - k
        # column A
        nxt: dict[tuple, HalfLaurent] = {}
        for st, c in states.items():
            pairs = dict(st)
            _replace(pairs, _A, lk)  # W-N
            _pair(pairs, _SEG, _A)  # S-E
            push(nxt, pairs, c * a, 0)
            pairs = dict(st)
            _replace(pairs, _A, _SEG)  # N-E
            _pair(pairs, lk, _A)  # W-S
            push(nxt, pairs, c * b, 0)
        # column B
        states, nxt = nxt, {}
        for st, c in states.items():
            pairs = dict(st)
            loops = _join(pairs, _SEG, _B)  # W-N
            _pair(pairs, rk, _B)  # S-E
            push(nxt, pairs, c * b, loops)
            pairs = dict(st)
            _replace(pairs, _B, rk)  # N-E
            _replace(pairs, _SEG, _B)  # W-S
            push(nxt, pairs, c * a, 0)
        states = {s: c for s, c in nxt.items() if c}
    out: dict[Diagram, HalfLaurent] = {}
    for st, c in states.items():
        pairs = dict(st)
        loops = _join(pairs, _A, _B)
        if loops:
            c = c * bet**loops
        partners = tuple(pairs[i] for i in range(m))
        d = Diagram(n, partners)
        out[d] = out[d] + c if d in out else c
    return {d: c for d, c in out.items() if c}


@lru_cache(maxsize=None)
def fn_beta(n: int) -> dict[Diagram, tuple[int, ...]]:
    """Coefficients of F_n as integer polynomials in beta (low degree first)."""
    out = {}
    for d, c in fn_laurent(n).items():
        try:
            out[d] = tuple(c.to_beta_poly())
        except ValueError as exc:
            raise GenericRewriteFailure(str(exc)) from exc
    return out


def build_Fn(n: int, mode: ArithmeticMode) -> AlgebraElement:
    if isinstance(mode, RationalBeta):
        raise ModeUnsupported("the crossing weights need q^(1/2); use build_Fn_beta")
    return AlgebraElement(n, mode, {d: mode.from_laurent(c) for d, c in fn_laurent(n).items()})


def build_Fn_beta(n: int, mode: ArithmeticMode) -> AlgebraElement:
    """F_n evaluated through its beta-polynomial coefficients; works in every mode."""
    return AlgebraElement(n, mode, {d: mode.from_beta_poly(c) for d, c in fn_beta(n).items()})


def fn_element(n: int, mode: ArithmeticMode) -> AlgebraElement:
    return build_Fn_beta(n, mode) if isinstance(mode, RationalBeta) else build_Fn(n, mode)


def build_Cn(n: int, mode: ArithmeticMode) -> AlgebraElement:
    """``(t_1 ... t_{n-1})^n`` with ``t_i = 1 - q u_i``."""
    if isinstance(mode, RationalBeta):
        raise ModeUnsupported("C_n needs q itself")
    unit = AlgebraElement.unit(n, mode)
    q = q_elem(mode)
    t = unit
    for i in range(1, n):
        t_i = unit - AlgebraElement.from_diagram(generator(n, i), mode, q)
        t = elem_multiply(t, t_i)
    out = unit
    for _ in range(n):
        out = elem_multiply(out, t)
    return out


def is_central(x: AlgebraElement) -> bool:
    for i in range(1, x.n):
        u = AlgebraElement.gen(x.n, i, x.mode)
        if elem_multiply(x, u) != elem_multiply(u, x):
            return False
    return True


def action_on_standard(x: AlgebraElement, n: int, p: int) -> Matrix:
    return action_matrix(x, n, p, x.mode)


def c_eigen(mode: ArithmeticMode, n: int, p: int) -> FieldElement:
    """``q^(2p(n+1-p))``, the scalar by which C_n acts on V_{n,p}."""
    return q_elem(mode, 2 * p * (n + 1 - p))


def scalar_of(mat: Matrix) -> FieldElement | None:
    """The scalar c when ``mat == c * Id``, else None."""
    if not mat:
        return None
    c = mat[0][0]
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            if (x != c) if i == j else bool(x):
                return None
    return c


__all__ = [
    "GenericRewriteFailure",
    "action_on_standard",
    "build_Cn",
    "build_Fn",
    "build_Fn_beta",
    "c_eigen",
    "f_eigen",
    "fn_beta",
    "fn_element",
    "fn_laurent",
    "is_central",
    "scalar_of",
]
