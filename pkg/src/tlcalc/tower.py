"""Restriction and induction along TL_n in TL_{n+1}.

An element ``u_r u_{r+1} ... u_n (x) d`` of Ind V_{n,p} is stored as the pair
``(r, d)``; ``r = n + 1`` is the bare tensor ``1 (x) d``.  The admissible
basis S_{n,p} keeps ``(r, d)`` only when ``d`` has no simple link at any
position ``>= r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import linalg
from .central import fn_element
from .diagram import AlgebraElement, diagram_to_word, generator
from .linalg import Matrix
from .numerology import critical, dimV, in_range
from .scalar import ArithmeticMode, FieldElement, beta, f_eigen
from .stdmod import (
    act_state_standard,
    action_matrix,
    enumerate_links,
    z_state,
)


class ExceptionalCase(ValueError):
    """Ind V_{2,1} at beta = 0, where the admissible basis and Phi break down."""


Elem = tuple[int, str]  # (r, d)


def simple_links(d: str) -> list[int]:
    """1-based positions i with a simple link joining i and i+1."""
    return [i + 1 for i in range(len(d) - 1) if d[i] == "(" and d[i + 1] == ")"]


def is_admissible(d: str, r: int) -> bool:
    return all(i < r for i in simple_links(d))


def is_exceptional(n: int, p: int, mode: ArithmeticMode) -> bool:
    return (n, p) == (2, 1) and mode.beta_is_zero


def render_elem(e: Elem, n: int) -> str:
    r, d = e
    word = " ".join(f"u{i}" for i in range(r, n + 1)) if r <= n else "1"
    return f"{word} ⊗ {d}"


@lru_cache(maxsize=None)
def _basis(n: int, p: int, exceptional: bool) -> tuple[Elem, ...]:
    states = enumerate_links(n, p)
    if exceptional:
        return ((2, "()"), (1, "()"), (3, "()"))
    out: list[Elem] = []
    for r in range(n, 0, -1):
        out.extend((r, d) for d in states if is_admissible(d, r))
    out.extend((n + 1, d) for d in states)
    return tuple(out)


def induced_basis(n: int, p: int, mode: ArithmeticMode) -> tuple[Elem, ...]:
    """The ordered basis S_{n,p} (or the three-element basis in the exceptional case)."""
    if not in_range(n, p):
        raise ValueError(f"({n},{p}) out of range")
    return _basis(n, p, is_exceptional(n, p, mode))


@dataclass
class InducedVector:
    n: int
    p: int
    mode: ArithmeticMode
    coeffs: list

    @classmethod
    def basis(cls, n: int, p: int, mode: ArithmeticMode, elem: Elem) -> "InducedVector":
        b = induced_basis(n, p, mode)
        v = [mode.zero()] * len(b)
        v[b.index(elem)] = mode.one()
        return cls(n, p, mode, v)

    def as_dict(self) -> dict[Elem, FieldElement]:
        b = induced_basis(self.n, self.p, self.mode)
        return {b[i]: c for i, c in enumerate(self.coeffs) if c}

    @classmethod
    def from_dict(cls, n: int, p: int, mode: ArithmeticMode, terms: dict[Elem, FieldElement]) -> "InducedVector":
        b = induced_basis(n, p, mode)
        index = {e: i for i, e in enumerate(b)}
        v = [mode.zero()] * len(b)
        for e, c in terms.items():
            v[index[e]] = v[index[e]] + c
        return cls(n, p, mode, v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InducedVector)
            and (self.n, self.p) == (other.n, other.p)
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )


def _apply_word(letters: Sequence[int], d: str, mode: ArithmeticMode) -> dict[str, FieldElement]:
    """Apply ``u_{l1} u_{l2} ...`` (rightmost first) to ``d`` in V_{n,p}."""
    vec = {d: mode.one()}
    for i in reversed(letters):
        nxt: dict[str, FieldElement] = {}
        for s, c in vec.items():
            for t, e in act_state_standard(generator(len(d), i), s, mode).items():
                val = c * e
                nxt[t] = nxt[t] + val if t in nxt else val
        vec = {s: c for s, c in nxt.items() if c}
    return vec


def normalize(r: int, d: str, mode: ArithmeticMode) -> dict[Elem, FieldElement]:
    """Rewrite ``u_r ... u_n (x) d`` in the admissible basis.

    If ``d`` has a simple link at or below ``r``, take the lowest one, at
    ``t``; then ``u_r..u_n (x) d = u_{t+2}..u_n (x) u_r..u_{t-1} d``.
    """
    n = len(d)
    if r > n:
        return {(n + 1, d): mode.one()}
    bad = [i for i in simple_links(d) if i >= r]
    if not bad:
        return {(r, d): mode.one()}
    t = max(bad)
    out: dict[Elem, FieldElement] = {}
    for e, c in _apply_word(range(r, t), d, mode).items():
        for key, c2 in normalize(t + 2, e, mode).items():
            val = c * c2
            out[key] = out[key] + val if key in out else val
    return out


def _act_elem(i: int, elem: Elem, n: int, mode: ArithmeticMode) -> dict[Elem, FieldElement]:
    """``u_i`` applied to one (r, d), case by case."""
    r, d = elem
    out: dict[Elem, FieldElement] = {}

    def add(terms: dict[Elem, FieldElement], scale: FieldElement | None = None):
        for key, c in terms.items():
            val = c if scale is None else c * scale
            out[key] = out[key] + val if key in out else val

    if r == n + 1:
        if i < n:
            for e, c in act_state_standard(generator(n, i), d, mode).items():
                add({(n + 1, e): c})
        else:
            add(normalize(n, d, mode))
        return out
    if i < r - 1:
        for e, c in act_state_standard(generator(n, i), d, mode).items():
            add(normalize(r, e, mode), c)
    elif i == r - 1:
        add(normalize(r - 1, d, mode))
    elif i == r:
        b = beta(mode)
        if b:
            add({elem: b})
    else:
        for e, c in _apply_word(range(r, i - 1), d, mode).items():
            add(normalize(i, e, mode), c)
    return out


def _act_exceptional(i: int, elem: Elem, mode: ArithmeticMode) -> dict[Elem, FieldElement]:
    # basis u2 (x) (), u1 u2 (x) (), 1 (x) () of Ind V_{2,1} at beta = 0
    one = mode.one()
    r = elem[0]
    table = {
        (1, 3): {},
        (1, 2): {(1, "()"): one},
        (1, 1): {},
        (2, 3): {(2, "()"): one},
        (2, 2): {},
        (2, 1): {(2, "()"): one},
    }
    return table[(i, r)]


def induced_act(i: int, v: InducedVector) -> InducedVector:
    """Action of ``u_i`` (1 <= i <= n) of TL_{n+1} on Ind V_{n,p}."""
    n = v.n
    if not 1 <= i <= n:
        raise ValueError(f"generator u{i} not in TL_{n + 1}")
    exc = is_exceptional(n, v.p, v.mode)
    acc: dict[Elem, FieldElement] = {}
    for elem, c in v.as_dict().items():
        terms = _act_exceptional(i, elem, v.mode) if exc else _act_elem(i, elem, n, v.mode)
        for key, e in terms.items():
            val = c * e
            acc[key] = acc[key] + val if key in acc else val
    return InducedVector.from_dict(n, v.p, v.mode, {k: c for k, c in acc.items() if c})


def induced_matrices(n: int, p: int, mode: ArithmeticMode) -> list[Matrix]:
    """Generator matrices of TL_{n+1} on Ind V_{n,p} in the admissible basis."""
    b = induced_basis(n, p, mode)
    size = len(b)
    mats = []
    for i in range(1, n + 1):
        cols = [induced_act(i, InducedVector.basis(n, p, mode, e)).coeffs for e in b]
        mats.append([[cols[j][k] for j in range(size)] for k in range(size)])
    return mats


# ---------------------------------------------------------------------------
# the isomorphism with Res V_{n+2,p+1}


def phi_elem(elem: Elem) -> str:
    """Image of a basis element: insert a simple link at position r."""
    r, d = elem
    return d[: r - 1] + "()" + d[r - 1 :]


def phi_inverse_state(e: str) -> Elem:
    """Preimage of an (n+2,p+1)-link state: remove its lowest simple link."""
    r = max(simple_links(e))
    return r, e[: r - 1] + e[r + 1 :]


def phi(v: InducedVector):
    from .stdmod import StdVector

    if is_exceptional(v.n, v.p, v.mode):
        raise ExceptionalCase("Phi is not an isomorphism for Ind V_{2,1} at beta = 0")
    terms = {phi_elem(e): c for e, c in v.as_dict().items()}
    return StdVector.from_dict(v.n + 2, v.p + 1, v.mode, terms)


def phi_inverse(w) -> InducedVector:
    n, p = w.n - 2, w.p - 1
    if is_exceptional(n, p, w.mode):
        raise ExceptionalCase("Phi is not an isomorphism for Ind V_{2,1} at beta = 0")
    terms = {phi_inverse_state(s): c for s, c in w.as_dict().items()}
    return InducedVector.from_dict(n, p, w.mode, terms)


def alpha_map(f: str) -> Elem:
    """The injection V_{n+1,p+1} -> Ind V_{n,p} on one link state."""
    r = max(simple_links(f))
    rest = f[: r - 1] + f[r + 1 :]
    return r, rest + "."


def alpha_matrix(n: int, p: int, mode: ArithmeticMode) -> Matrix:
    """Matrix of alpha from V_{n+1,p+1} into Ind V_{n,p} (columns are images)."""
    if is_exceptional(n, p, mode):
        raise ExceptionalCase("no admissible basis for Ind V_{2,1} at beta = 0")
    index = {e: i for i, e in enumerate(induced_basis(n, p, mode))}
    if not in_range(n + 1, p + 1):
        return [[] for _ in index]
    src = enumerate_links(n + 1, p + 1)
    mat = linalg.zeros(mode, len(index), len(src))
    for j, f in enumerate(src):
        mat[index[alpha_map(f)]][j] = mode.one()
    return mat


# ---------------------------------------------------------------------------
# exact sequences


@dataclass(frozen=True)
class SequenceReport:
    sub: tuple[int, int]
    quotient: tuple[int, int]
    splits: bool
    verified: bool | None  # eigenspace check, when the sequence is claimed to split


def _eigen_dims(mat: Matrix, values: Sequence[FieldElement], mode: ArithmeticMode) -> list[int]:
    return [len(mat) - linalg.rank(linalg.minus_scalar(mat, v), mode) for v in values]


def restriction_sequence(n: int, p: int, mode: ArithmeticMode, verify: bool = True) -> SequenceReport:
    """0 -> V_{n-1,p} -> Res V_{n,p} -> V_{n-1,p-1} -> 0."""
    if not in_range(n, p) or n < 2:
        raise ValueError(f"({n},{p}) cannot be restricted")
    splits = not critical(n, p, mode.ell)
    verified = None
    if splits and verify:
        F = fn_element(n - 1, mode)
        mat = action_matrix(F, n, p, mode)
        want = [dimV(n - 1, p), dimV(n - 1, p - 1)]
        vals = [f_eigen(mode, n - 1, p), f_eigen(mode, n - 1, p - 1)]
        got = _eigen_dims(mat, [v for v, w in zip(vals, want) if w], mode)
        verified = got == [w for w in want if w]
    return SequenceReport((n - 1, p), (n - 1, p - 1), splits, verified)


def induction_sequence(n: int, p: int, mode: ArithmeticMode, verify: bool = True) -> SequenceReport:
    """0 -> V_{n+1,p+1} -> Ind V_{n,p} -> V_{n+1,p} -> 0."""
    if is_exceptional(n, p, mode):
        raise ExceptionalCase("Ind V_{2,1} at beta = 0 is V_{3,1} + V_{3,0}")
    splits = not critical(n, p, mode.ell)
    verified = None
    if verify:
        ok = True
        if in_range(n + 1, p + 1):  # otherwise the submodule is zero
            mats = induced_matrices(n, p, mode)
            a = alpha_matrix(n, p, mode)
            src = [action_matrix(generator(n + 1, i), n + 1, p + 1, mode) for i in range(1, n + 1)]
            ok = linalg.rank(linalg.transpose(a), mode) == len(a[0])
            for m_ind, m_src in zip(mats, src):
                ok = ok and linalg.equal(linalg.matmul(m_ind, a, mode), linalg.matmul(a, m_src, mode))
        if splits:
            F = fn_on_induced(n, p, mode)
            want = [dimV(n + 1, p + 1), dimV(n + 1, p)]
            vals = [f_eigen(mode, n + 1, p + 1), f_eigen(mode, n + 1, p)]
            got = _eigen_dims(F, [v for v, w in zip(vals, want) if w], mode)
            ok = ok and got == [w for w in want if w]
        verified = ok
    return SequenceReport((n + 1, p + 1), (n + 1, p), splits, verified)


# ---------------------------------------------------------------------------
# F_{n+1} on induced modules


def element_on_induced(x: AlgebraElement, n: int, p: int) -> Matrix:
    """Matrix of ``x`` in TL_{n+1} on Ind V_{n,p}."""
    mode = x.mode
    b = induced_basis(n, p, mode)
    index = {e: i for i, e in enumerate(b)}
    size = len(b)
    mat = linalg.zeros(mode, size, size)
    if is_exceptional(n, p, mode):
        for d, c in x.terms.items():
            letters = diagram_to_word(d).letters
            for j, e in enumerate(b):
                v = InducedVector.basis(n, p, mode, e)
                for i in reversed(letters):
                    v = induced_act(i, v)
                for k in range(size):
                    if v.coeffs[k]:
                        mat[k][j] = mat[k][j] + c * v.coeffs[k]
        return mat
    # through Phi, where every basis element is a single link state
    states = [phi_elem(e) for e in b]
    for j, s in enumerate(states):
        for t, c in act_state_standard(x, s, mode).items():
            k = index[phi_inverse_state(t)]
            mat[k][j] = mat[k][j] + c
    return mat


def fn_on_induced(n: int, p: int, mode: ArithmeticMode) -> Matrix:
    return element_on_induced(fn_element(n + 1, mode), n, p)


def jordan_coefficient(n: int, p: int, mode: ArithmeticMode) -> FieldElement:
    """Coefficient of ``u_{2p+1}..u_n (x) z_p`` in ``F_{n+1} (1 (x) z_p)``."""
    b = induced_basis(n, p, mode)
    z = z_state(n, p)
    col = b.index((n + 1, z))
    row = b.index((2 * p + 1, z))
    return fn_on_induced(n, p, mode)[row][col]


__all__ = [
    "ExceptionalCase",
    "InducedVector",
    "SequenceReport",
    "alpha_map",
    "alpha_matrix",
    "element_on_induced",
    "fn_on_induced",
    "induced_act",
    "induced_basis",
    "induced_matrices",
    "induction_sequence",
    "is_admissible",
    "is_exceptional",
    "jordan_coefficient",
    "normalize",
    "phi",
    "phi_elem",
    "phi_inverse",
    "phi_inverse_state",
    "render_elem",
    "restriction_sequence",
]
