"""Planar diagrams, the diagram basis of TL_n, words and normal forms.

Boundary points are stored 0-based.  Left point at height ``h`` (1 at the
top) has index ``h - 1``; right point at height ``h`` has index
``2n - h``.  Reading indices ``0..2n-1`` therefore walks once around the
boundary, and planarity is the usual noncrossing condition.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Mapping

from .scalar import ArithmeticMode, FieldElement, beta


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True, order=True)
class Diagram:
    n: int
    partners: tuple[int, ...]

    def __post_init__(self):
        m = 2 * self.n
        if self.n < 1 or len(self.partners) != m:
            raise ValueError("partner array must have length 2n with n >= 1")
        for a, b in enumerate(self.partners):
            if not 0 <= b < m or b == a or self.partners[b] != a:
                raise ValueError(f"not a fixed-point-free involution: {self.partners}")
        for a, b in enumerate(self.partners):
            if a < b:
                for c in range(a + 1, b):
                    if not a < self.partners[c] < b:
                        raise ValueError(f"pairing is not planar: {self.partners}")

    @classmethod
    def trusted(cls, n: int, partners: tuple[int, ...]) -> "Diagram":
        """Build without validation; for arrays produced by planar operations."""
        d = object.__new__(cls)
        object.__setattr__(d, "n", n)
        object.__setattr__(d, "partners", partners)
        return d

    # boundary helpers
    def left(self, h: int) -> int:
        return h - 1

    def right(self, h: int) -> int:
        return 2 * self.n - h

    def height(self, idx: int) -> tuple[str, int]:
        """Side ('L' or 'R') and height of a boundary index."""
        if idx < self.n:
            return "L", idx + 1
        return "R", 2 * self.n - idx

    def through_lines(self) -> list[tuple[int, int]]:
        """(left height, right height) of every through-line, top-down."""
        out = []
        for a in range(self.n):
            b = self.partners[a]
            if b >= self.n:
                out.append((a + 1, 2 * self.n - b))
        return out

    def side_links(self, side: str) -> list[tuple[int, int]]:
        """Links joining two points on one side, as height pairs ``(h, h')`` with ``h < h'``."""
        out = []
        for h in range(1, self.n + 1):
            idx = self.left(h) if side == "L" else self.right(h)
            s, h2 = self.height(self.partners[idx])
            if s == side and h < h2:
                out.append((h, h2))
        return out

    @property
    def num_links(self) -> int:
        return len(self.side_links("L"))

    def serialize(self) -> str:
        return f"n={self.n}:[" + ",".join(str(b + 1) for b in self.partners) + "]"

    @staticmethod
    def parse(text: str) -> "Diagram":
        m = re.fullmatch(r"\s*n=(\d+):\[([\d,\s]*)\]\s*", text)
        if not m:
            raise ValueError(f"cannot parse diagram {text!r}")
        parts = [int(x) - 1 for x in m.group(2).split(",") if x.strip()]
        return Diagram(int(m.group(1)), tuple(parts))

    def __str__(self) -> str:
        return self.serialize()


def identity(n: int) -> Diagram:
    p = [0] * (2 * n)
    for k in range(1, n + 1):
        a, b = k - 1, 2 * n - k
        p[a], p[b] = b, a
    return Diagram(n, tuple(p))


def generator(n: int, i: int) -> Diagram:
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    p = list(identity(n).partners)
    a, b = i - 1, i
    c, d = 2 * n - i, 2 * n - i - 1
    p[a], p[b] = b, a
    p[c], p[d] = d, c
    return Diagram(n, tuple(p))


def multiply(a: Diagram, b: Diagram) -> tuple[Diagram, int]:
    """Concatenate ``a`` then ``b``; return the product diagram and the number of closed loops."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    n = a.n
    m = 2 * n
    pa, pb = a.partners, b.partners
    out = [-1] * m
    # middle point k (height k+1) is a's right idx 2n-1-k and b's left idx k
    seen = [False] * n

    def walk(in_a: bool, idx: int) -> int:
        while True:
            if in_a:
                j = pa[idx]
                if j < n:
                    return j
                k = m - 1 - j
                seen[k] = True
                in_a, idx = False, k
            else:
                j = pb[idx]
                if j >= n:
                    return j
                seen[j] = True
                in_a, idx = True, m - 1 - j

    for s in range(n):
        if out[s] < 0:
            t = walk(True, s)
            out[s], out[t] = t, s
    for s in range(n, m):
        if out[s] < 0:
            t = walk(False, s)
            out[s], out[t] = t, s
    loops = 0
    for k in range(n):
        if not seen[k]:
            loops += 1
            idx = k
            while True:
                seen[idx] = True
                j = pb[idx]
                # j is on b's left side, since all b-right ends were consumed
                nxt = pa[m - 1 - j]
                seen[j] = True
                idx = m - 1 - nxt
                if idx == k:
                    break
    return Diagram.trusted(n, tuple(out)), loops


def adjoint(d: Diagram) -> Diagram:
    m = 2 * d.n
    p = [0] * m
    for a, b in enumerate(d.partners):
        p[m - 1 - a] = m - 1 - b
    return Diagram.trusted(d.n, tuple(p))


def _noncrossing_pairings(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not points:
        yield ()
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inside = points[1:k]
        outside = points[k + 1:]
        for a in _noncrossing_pairings(inside):
            for b in _noncrossing_pairings(outside):
                yield ((first, points[k]),) + a + b


@lru_cache(maxsize=None)
def enumerate_diagrams(n: int) -> tuple[Diagram, ...]:
    """All planar n-diagrams, sorted by partner array."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for pairing in _noncrossing_pairings(tuple(range(2 * n))):
        p = [0] * (2 * n)
        for a, b in pairing:
            p[a], p[b] = b, a
        out.append(Diagram(n, tuple(p)))
    out.sort()
    return tuple(out)


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Word:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for i in self.letters:
            if not 1 <= i <= self.n - 1:
                raise ValueError(f"letter u{i} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Word(self.n, self.letters + other.letters)

    def serialize(self) -> str:
        return " ".join(f"u{i}" for i in self.letters) if self.letters else "1"

    __str__ = serialize

    @staticmethod
    def parse(n: int, text: str) -> "Word":
        text = text.strip()
        if text in ("", "1"):
            return Word(n, ())
        letters = []
        for tok in text.replace("*", " ").split():
            if not re.fullmatch(r"u\d+", tok):
                raise ValueError(f"bad letter {tok!r}")
            letters.append(int(tok[1:]))
        return Word(n, tuple(letters))


def word_diagram(w: Word) -> tuple[Diagram, int]:
    """Diagram of a word, with the number of loops removed."""
    d = identity(w.n)
    loops = 0
    for i in w.letters:
        d, k = multiply(d, generator(w.n, i))
        loops += k
    return d, loops


# ---------------------------------------------------------------------------
# algebra elements


class AlgebraElement:
    """Finite linear combination of n-diagrams."""

    __slots__ = ("n", "mode", "terms")

    def __init__(self, n: int, mode: ArithmeticMode, terms: Mapping[Diagram, FieldElement] | None = None):
        self.n = n
        self.mode = mode
        self.terms: dict[Diagram, FieldElement] = {}
        for d, c in (terms or {}).items():
            if d.n != n:
                raise ValueError("size mismatch")
            c = mode.coerce(c)
            if c:
                self.terms[d] = c

    @classmethod
    def from_diagram(cls, d: Diagram, mode: ArithmeticMode, coeff=1) -> "AlgebraElement":
        return cls(d.n, mode, {d: mode.coerce(coeff)})

    @classmethod
    def unit(cls, n: int, mode: ArithmeticMode) -> "AlgebraElement":
        return cls.from_diagram(identity(n), mode)

    @classmethod
    def gen(cls, n: int, i: int, mode: ArithmeticMode) -> "AlgebraElement":
        return cls.from_diagram(generator(n, i), mode)

    def _check(self, other: "AlgebraElement"):
        if self.n != other.n:
            raise ValueError("size mismatch")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return AlgebraElement(self.n, self.mode, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.n, self.mode, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = self.mode.coerce(c)
        return AlgebraElement(self.n, self.mode, {d: x * c for d, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return elem_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.n != other.n:
            return False
        keys = set(self.terms) | set(other.terms)
        zero = self.mode.zero()
        return all(self.terms.get(d, zero) == other.terms.get(d, zero) for d in keys)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d: Diagram) -> FieldElement:
        return self.terms.get(d, self.mode.zero())

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(self.n, self.mode, {adjoint(d): c for d, c in self.terms.items()})

    def items(self) -> list[tuple[Diagram, FieldElement]]:
        return sorted(self.terms.items(), key=lambda t: t[0])

    def __repr__(self) -> str:
        body = " + ".join(f"({c.render()})*{d}" for d, c in self.items())
        return f"AlgebraElement(n={self.n}, {body or '0'})"


class _BetaPowers:
    def __init__(self, mode: ArithmeticMode):
        self.b = beta(mode)
        self.cache = [mode.one()]

    def __getitem__(self, k: int) -> FieldElement:
        while len(self.cache) <= k:
            self.cache.append(self.cache[-1] * self.b)
        return self.cache[k]


def elem_multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    mode = x.mode
    bp = _BetaPowers(mode)
    out: dict[Diagram, FieldElement] = {}
    for d1, c1 in x.terms.items():
        for d2, c2 in y.terms.items():
            d, loops = multiply(d1, d2)
            c = c1 * c2
            if loops:
                c = c * bp[loops]
                if not c:
                    continue
            out[d] = out[d] + c if d in out else c
    return AlgebraElement(x.n, mode, out)


def word_to_element(w: Word, mode: ArithmeticMode) -> AlgebraElement:
    d, loops = word_diagram(w)
    return AlgebraElement.from_diagram(d, mode, beta(mode) ** loops)


# ---------------------------------------------------------------------------
# normal forms


def _normal_words(n: int) -> Iterator[tuple[int, ...]]:
    """Words (u_{j1}..u_{k1})(u_{j2}..u_{k2})... with j, k strictly increasing and j_i >= k_i."""

    def rec(jmin: int, kmin: int) -> Iterator[tuple[int, ...]]:
        yield ()
        for j in range(jmin, n):
            for k in range(kmin, j + 1):
                block = tuple(range(j, k - 1, -1))
                for rest in rec(j + 1, k + 1):
                    yield block + rest

    return rec(1, 1)


@lru_cache(maxsize=None)
def normal_form_table(n: int) -> dict[Diagram, Word]:
    """Map each n-diagram to its reduced word in normal form."""
    table: dict[Diagram, Word] = {}
    for letters in _normal_words(n):
        w = Word(n, letters)
        d, loops = word_diagram(w)
        if loops or d in table:
            raise AssertionError(f"normal forms are not a basis at n={n}")
        table[d] = w
    return table


def normal_words(n: int) -> list[Word]:
    return sorted(normal_form_table(n).values(), key=lambda w: (len(w), w.letters))


def normal_form_blocks(w: Word) -> list[tuple[int, int]]:
    """Split a normal-form word into its (j_i, k_i) blocks."""
    blocks: list[tuple[int, int]] = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = letters[i]
        k = j
        i += 1
        while i < len(letters) and letters[i] == k - 1:
            k -= 1
            i += 1
        blocks.append((j, k))
    return blocks


@dataclass(frozen=True)
class NormalForm:
    """``beta**exponent`` times a reduced word; ``zero`` is set when the product vanishes."""

    word: Word | None
    exponent: int = 0
    zero: bool = False

    def __str__(self) -> str:
        if self.zero:
            return "0"
        prefix = "" if self.exponent == 0 else ("beta " if self.exponent == 1 else f"beta^{self.exponent} ")
        return prefix + self.word.serialize()


def jones_normal_form(w: Word, mode: ArithmeticMode | None = None) -> NormalForm:
    d, loops = word_diagram(w)
    if loops and mode is not None and mode.beta_is_zero:
        return NormalForm(None, loops, zero=True)
    return NormalForm(normal_form_table(w.n)[d], loops)


# ---------------------------------------------------------------------------
# diagram to word


def _top_level(links: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out = []
    reach = 0
    for a, b in sorted(links):
        if a > reach:
            out.append((a, b))
            reach = b
    return out


def _island_letters(links: list[tuple[int, int]], lo: int, hi: int) -> list[list[int]]:
    """Letter groups rebuilding the islands inside heights ``lo..hi``, outermost first."""
    inner = [(a, b) for a, b in links if lo <= a and b <= hi]
    groups: list[list[int]] = []
    nested: list[tuple[int, int]] = []
    level = []
    for a, b in _top_level(inner):
        span = (b - a + 1) // 2
        if span > 1:
            level.extend(range(a + 1, a + 2 * span - 2, 2))
            nested.append((a + 1, b - 1))
    if level:
        groups.append(level)
        sub: list[list[int]] = []
        for a, b in nested:
            for depth, g in enumerate(_island_letters(inner, a, b)):
                while len(sub) <= depth:
                    sub.append([])
                sub[depth].extend(g)
        groups.extend(sub)
    return groups


def diagram_to_word(d: Diagram) -> Word:
    """A word whose diagram is ``d`` with no loops removed.

    Start from ``u1 u3 ... u_{2p-1}``, slide the through-lines to their
    heights, then close up the nested links from the outside in.
    """
    n = d.n
    p = d.num_links
    base = list(range(1, 2 * p, 2))
    front: list[int] = []  # letters multiplied on the left, in multiplication order
    back: list[int] = []
    for k, (ta, tb) in enumerate(d.through_lines()):
        a = b = 2 * p + k + 1
        while a > ta:
            front.append(a - 1)
            a -= 2
        moves = []
        while b > tb:
            moves.append(b - 1)
            b -= 2
        back.extend(sorted(moves))  # these letters commute
    for group in _island_letters(d.side_links("L"), 1, n):
        front.extend(reversed(group))
    for group in _island_letters(d.side_links("R"), 1, n):
        back.extend(group)
    return Word(n, tuple(reversed(front)) + tuple(base) + tuple(back))
