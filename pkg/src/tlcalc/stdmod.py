"""Link states, the link module and the standard modules V_{n,p}.

A link state is a string over ``"()."``: matched parentheses are links and
dots are defects.  Defects never sit inside a link.  The canonical basis
order is plain string order, which puts ``(`` before ``)`` before ``.``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from flint import fmpz_poly

from . import linalg
from .diagram import AlgebraElement, Diagram, Word, generator, word_diagram
from .scalar import (
    ArithmeticMode,
    FieldElement,
    Generic,
    HalfLaurent,
    ModeMismatch,
    beta,
    qnum_laurent,
)


class LinkState(str):
    """An (n,p)-link state written over ``"()."``."""

    def __new__(cls, pattern: str):
        obj = super().__new__(cls, pattern)
        _partners(str(obj))  # validates
        return obj

    @property
    def n(self) -> int:
        return len(self)

    @property
    def p(self) -> int:
        return self.count("(")

    @property
    def partners(self) -> tuple[int, ...]:
        return _partners(str(self))


@lru_cache(maxsize=None)
def _partners(s: str) -> tuple[int, ...]:
    """Partner of each point, or -1 for a defect."""
    out = [-1] * len(s)
    stack: list[int] = []
    for i, ch in enumerate(s):
        if ch == "(":
            stack.append(i)
        elif ch == ")":
            if not stack:
                raise ValueError(f"unbalanced link state {s!r}")
            j = stack.pop()
            out[i], out[j] = j, i
        elif ch == ".":
            if stack:
                raise ValueError(f"defect inside a link in {s!r}")
        else:
            raise ValueError(f"bad symbol {ch!r} in link state")
    if stack:
        raise ValueError(f"unbalanced link state {s!r}")
    return tuple(out)


def state_partners(s: str) -> tuple[int, ...]:
    return _partners(s)


def state_from_partners(partners: Sequence[int]) -> str:
    return "".join("." if b < 0 else ("(" if b > a else ")") for a, b in enumerate(partners))


def num_links(s: str) -> int:
    return s.count("(")


def dim_standard(n: int, p: int) -> int:
    if p < 0 or 2 * p > n:
        return 0
    return comb(n, p) - (comb(n, p - 1) if p > 0 else 0)


@lru_cache(maxsize=None)
def enumerate_links(n: int, p: int) -> tuple[str, ...]:
    """All (n,p)-link states in canonical order."""
    if n < 0 or p < 0 or 2 * p > n:
        raise ValueError(f"no link states for (n,p)=({n},{p})")
    out: list[str] = []

    def rec(prefix: str, opened: int, closed: int, defects: int):
        if len(prefix) == n:
            out.append(prefix)
            return
        if opened < p:
            rec(prefix + "(", opened + 1, closed, defects)
        if closed < opened:
            rec(prefix + ")", opened, closed + 1, defects)
        if closed == opened and defects < n - 2 * p:
            rec(prefix + ".", opened, closed, defects + 1)

    rec("", 0, 0, 0)
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def link_index(n: int, p: int) -> dict[str, int]:
    return {s: i for i, s in enumerate(enumerate_links(n, p))}


def z_state(n: int, p: int) -> str:
    """p simple links at 1, 3, ..., 2p-1 followed by defects."""
    return "()" * p + "." * (n - 2 * p)


# ---------------------------------------------------------------------------
# the diagram action on link states


def act_diagram(d: Diagram, s: str) -> tuple[str, int]:
    """Glue the right side of ``d`` to the first ``d.n`` points of ``s``.

    Returns the resulting link state (possibly with more links) and the
    number of closed loops.  Points of ``s`` beyond ``d.n`` keep their
    positions.
    """
    n = d.n
    N = len(s)
    if n > N:
        raise ValueError("diagram is larger than the link state")
    m = 2 * n
    dp = d.partners
    sp = _partners(s)
    # nodes: d boundary points 0..m-1, then s points m..m+N-1
    visited = [False] * (m + N)

    def nbrs(v: int) -> list[int]:
        if v < m:
            out = [dp[v]]
            if v >= n:
                out.append(m + (m - 1 - v))
            return out
        k = v - m
        out = [m - 1 - k] if k < n else []
        if sp[k] >= 0:
            out.append(m + sp[k])
        return out

    def walk(start: int) -> int:
        prev, cur = -1, start
        visited[start] = True
        while True:
            nxt = [x for x in nbrs(cur) if x != prev]
            if not nxt or (cur != start and len(nbrs(cur)) == 1):
                return cur
            prev, cur = cur, nxt[0]
            visited[cur] = True

    def position(v: int) -> int:
        if v < m:
            return v  # a left point of d
        k = v - m
        return k if k >= n else -1  # -1: a defect inside the glued block

    res = [-2] * N
    starts = list(range(n)) + [m + k for k in range(n, N) if 0 <= sp[k] < n]
    starts += [m + k for k in range(n) if sp[k] < 0]
    for v in starts:
        if visited[v]:
            continue
        w = walk(v)
        a, b = position(v), position(w)
        if a >= 0 and b >= 0:
            res[a], res[b] = b, a
        elif a >= 0:
            res[a] = -1
        elif b >= 0:
            res[b] = -1
    for k in range(n, N):
        if res[k] == -2:
            res[k] = sp[k]
    loops = 0
    for k in range(n):
        if not visited[m + k]:
            loops += 1
            prev, cur = -1, m + k
            while not visited[cur]:
                visited[cur] = True
                nxt = [x for x in nbrs(cur) if x != prev]
                prev, cur = cur, nxt[0]
    return state_from_partners(res), loops


Acting = Union[Word, Diagram, AlgebraElement]


def _terms(x: Acting, mode: ArithmeticMode) -> list[tuple[Diagram, FieldElement]]:
    """Diagram expansion of a word, diagram or algebra element."""
    if isinstance(x, Word):
        d, loops = word_diagram(x)
        return [(d, beta(mode) ** loops)]
    if isinstance(x, Diagram):
        return [(x, mode.one())]
    return list(x.terms.items())


def act_link_module(x: Acting, state: str, mode: ArithmeticMode) -> dict[str, FieldElement]:
    """Action on the link module: no quotient, links may only increase."""
    b = beta(mode)
    out: dict[str, FieldElement] = {}
    for d, c in _terms(x, mode):
        t, loops = act_diagram(d, state)
        coef = c * b**loops if loops else c
        if coef:
            out[t] = out[t] + coef if t in out else coef
    return {t: c for t, c in out.items() if c}


@dataclass
class StdVector:
    """Coefficient vector in the canonical basis of V_{n,p}."""

    n: int
    p: int
    mode: ArithmeticMode
    coeffs: list

    @classmethod
    def basis(cls, n: int, p: int, mode: ArithmeticMode, state: str) -> "StdVector":
        v = [mode.zero()] * dim_standard(n, p)
        v[link_index(n, p)[state]] = mode.one()
        return cls(n, p, mode, v)

    @classmethod
    def from_dict(cls, n: int, p: int, mode: ArithmeticMode, terms: dict[str, FieldElement]) -> "StdVector":
        v = [mode.zero()] * dim_standard(n, p)
        idx = link_index(n, p)
        for s, c in terms.items():
            v[idx[s]] = v[idx[s]] + c
        return cls(n, p, mode, v)

    def as_dict(self) -> dict[str, FieldElement]:
        states = enumerate_links(self.n, self.p)
        return {states[i]: c for i, c in enumerate(self.coeffs) if c}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StdVector)
            and (self.n, self.p) == (other.n, other.p)
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __add__(self, other: "StdVector") -> "StdVector":
        return StdVector(self.n, self.p, self.mode, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "StdVector":
        c = self.mode.coerce(c)
        return StdVector(self.n, self.p, self.mode, [a * c for a in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def act_state_standard(x: Acting, state: str, mode: ArithmeticMode) -> dict[str, FieldElement]:
    """Action on one basis state of the standard module (link-increasing terms dropped)."""
    p = num_links(state)
    return {t: c for t, c in act_link_module(x, state, mode).items() if num_links(t) == p}


def act_standard(x: Acting, v: StdVector) -> StdVector:
    n = x.n
    if n != v.n:
        raise ValueError("size mismatch")
    acc: dict[str, FieldElement] = {}
    for s, c in v.as_dict().items():
        for t, e in act_state_standard(x, s, v.mode).items():
            val = c * e
            acc[t] = acc[t] + val if t in acc else val
    return StdVector.from_dict(v.n, v.p, v.mode, acc)


def action_matrix(x: Acting, n: int, p: int, mode: ArithmeticMode) -> list[list[FieldElement]]:
    """Matrix of ``x`` on V_{n,p}; column j is the image of basis state j."""
    states = enumerate_links(n, p)
    idx = link_index(n, p)
    size = len(states)
    mat = linalg.zeros(mode, size, size)
    for j, s in enumerate(states):
        for t, c in act_state_standard(x, s, mode).items():
            mat[idx[t]][j] = mat[idx[t]][j] + c
    return mat


def generator_matrices(n: int, p: int, mode: ArithmeticMode) -> list[list[list[FieldElement]]]:
    return [action_matrix(generator(n, i), n, p, mode) for i in range(1, n)]


# ---------------------------------------------------------------------------
# the bilinear form


def bilinear_loops(x: str, y: str) -> int | None:
    """Loops formed by reflecting ``x`` onto ``y``; None when the form vanishes
    because two defects of ``x`` get joined."""
    if len(x) != len(y) or num_links(x) != num_links(y):
        raise ValueError("link states of different shapes")
    xp, yp = _partners(x), _partners(y)
    n = len(x)
    seen = [False] * n
    for i in range(n):
        if xp[i] >= 0 or seen[i]:
            continue
        j = i
        while True:
            seen[j] = True
            k = yp[j]
            if k < 0:
                break
            seen[k] = True
            nxt = xp[k]
            if nxt < 0:
                return None
            j = nxt
    loops = 0
    for i in range(n):
        if seen[i]:
            continue
        loops += 1
        j = i
        while not seen[j]:
            seen[j] = True
            k = yp[j]
            seen[k] = True
            j = xp[k]
    return loops


def bilinear(x: str, y: str, mode: ArithmeticMode) -> FieldElement:
    m = bilinear_loops(x, y)
    return mode.zero() if m is None else beta(mode) ** m


def gram_loops(n: int, p: int) -> list[list[int | None]]:
    states = enumerate_links(n, p)
    return [[bilinear_loops(x, y) for y in states] for x in states]


def gram(n: int, p: int, mode: ArithmeticMode) -> list[list[FieldElement]]:
    b = beta(mode)
    powers = [mode.one()]
    zero = mode.zero()
    out = []
    for row in gram_loops(n, p):
        r = []
        for m in row:
            if m is None:
                r.append(zero)
                continue
            while len(powers) <= m:
                powers.append(powers[-1] * b)
            r.append(powers[m])
        out.append(r)
    return out


def gram_beta_poly(n: int, p: int) -> list[list[fmpz_poly]]:
    """Gram matrix with entries as integer polynomials in beta."""
    return [[fmpz_poly(0) if m is None else fmpz_poly([0] * m + [1]) for m in row] for row in gram_loops(n, p)]


@lru_cache(maxsize=None)
def gram_det_poly(n: int, p: int) -> fmpz_poly:
    """det G_{n,p} as a polynomial in beta, by Bareiss elimination."""
    return linalg.bareiss_det(gram_beta_poly(n, p))


def gram_det(n: int, p: int, mode: ArithmeticMode) -> FieldElement:
    coeffs = [int(c) for c in gram_det_poly(n, p).coeffs()]
    return mode.from_beta_poly(coeffs)


def det_formula_parts(n: int, p: int) -> tuple[HalfLaurent, HalfLaurent]:
    """Numerator and denominator of the closed-form product for det G_{n,p}."""
    num = HalfLaurent.constant(1)
    den = HalfLaurent.constant(1)
    for j in range(1, p + 1):
        e = dim_standard(n, p - j)
        if e:
            num = num * qnum_laurent(n - 2 * p + 1 + j) ** e
            den = den * qnum_laurent(j) ** e
    return num, den


def det_formula(n: int, p: int, mode: ArithmeticMode | None = None) -> FieldElement:
    """prod_{j=1}^p ([n-2p+1+j]/[j])^{d_{n,p-j}} in generic mode."""
    mode = mode or Generic()
    if not isinstance(mode, Generic):
        raise ModeMismatch("the closed form is only evaluated generically")
    num, den = det_formula_parts(n, p)
    return mode.from_laurent(num) / mode.from_laurent(den)


def radical_basis(n: int, p: int, mode: ArithmeticMode) -> list[StdVector]:
    rows = linalg.nullspace(gram(n, p, mode), mode)
    return [StdVector(n, p, mode, r) for r in rows]


def dim_radical(n: int, p: int, mode: ArithmeticMode) -> int:
    return dim_standard(n, p) - linalg.rank(gram(n, p, mode), mode)


def _require_renormalizable(n: int, p: int, mode: ArithmeticMode):
    if not mode.beta_is_zero or n != 2 * p:
        raise ModeMismatch("the renormalized form needs beta = 0 and n = 2p")


def bilinear_renormalized(x: str, y: str, mode: ArithmeticMode) -> FieldElement:
    """1 when reflecting ``x`` onto ``y`` closes exactly one loop, else 0."""
    _require_renormalizable(len(x), num_links(x), mode)
    return mode.one() if bilinear_loops(x, y) == 1 else mode.zero()


def gram_prime(p: int, mode: ArithmeticMode) -> list[list[FieldElement]]:
    _require_renormalizable(2 * p, p, mode)
    states = enumerate_links(2 * p, p)
    return [[bilinear_renormalized(x, y, mode) for y in states] for x in states]


def wall_diagram(x: str, y: str) -> Diagram:
    """The diagram with left side ``x`` and right side ``y``, defects joined in order."""
    if len(x) != len(y) or num_links(x) != num_links(y):
        raise ValueError("link states of different shapes")
    n = len(x)
    m = 2 * n
    xp, yp = _partners(x), _partners(y)
    out = [0] * m
    for i in range(n):
        if xp[i] >= 0:
            out[i] = xp[i]
        if yp[i] >= 0:
            out[m - 1 - i] = m - 1 - yp[i]
    xd = [i for i in range(n) if xp[i] < 0]
    yd = [i for i in range(n) if yp[i] < 0]
    for a, b in zip(xd, yd):
        out[a], out[m - 1 - b] = m - 1 - b, a
    return Diagram(n, tuple(out))
