"""Exact scalars for Temperley-Lieb computations.

Three arithmetic modes are supported, all built on the formal variable
``s = q**(1/2)``:

* :class:`Generic` -- ``q`` is an indeterminate; scalars are ratios of
  Laurent polynomials in ``s``.
* :class:`RootOfUnity` -- ``s`` is a fixed primitive ``M``-th root of unity;
  scalars are residues modulo the ``M``-th cyclotomic polynomial.
* :class:`RationalBeta` -- only ``beta`` is fixed, as an exact rational.

Polynomial arithmetic is delegated to FLINT through ``python-flint``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_poly, fmpz_poly


class ModeUnsupported(Exception):
    """Raised when an operation has no meaning in the active arithmetic mode."""


class CriticalPair(ValueError):
    """Raised when a quantity is undefined because ``[n-2p+1]`` vanishes."""


class ModeMismatch(ValueError):
    """Raised when scalars from different modes are combined."""


# ---------------------------------------------------------------------------
# Laurent polynomials in s


class HalfLaurent:
    """Integer Laurent polynomial in ``s = q**(1/2)``.

    Stored as ``s**shift * poly(s)`` with ``poly(0) != 0``; the zero
    polynomial has ``shift == 0``.
    """

    __slots__ = ("poly", "shift")

    def __init__(self, poly: fmpz_poly | None = None, shift: int = 0):
        if poly is None or poly.is_zero():
            self.poly = fmpz_poly(0)
            self.shift = 0
            return
        coeffs = poly.coeffs()
        low = 0
        while coeffs[low] == 0:
            low += 1
        self.poly = poly.right_shift(low) if low else poly
        self.shift = shift + low

    @classmethod
    def from_dict(cls, coefficients: Mapping[int, int]) -> "HalfLaurent":
        items = {e: int(c) for e, c in coefficients.items() if c}
        if not items:
            return cls()
        low = min(items)
        dense = [0] * (max(items) - low + 1)
        for e, c in items.items():
            dense[e - low] = c
        return cls(fmpz_poly(dense), low)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "HalfLaurent":
        if coefficient == 0:
            return cls()
        return cls(fmpz_poly([coefficient]), exponent)

    @classmethod
    def constant(cls, value: int) -> "HalfLaurent":
        return cls.monomial(0, value)

    @property
    def coefficients(self) -> dict[int, int]:
        return {self.shift + i: int(c) for i, c in enumerate(self.poly.coeffs()) if c != 0}

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    @property
    def low(self) -> int:
        return self.shift

    @property
    def high(self) -> int:
        return self.shift + self.poly.degree()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = HalfLaurent.constant(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self.shift == other.shift and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.shift, tuple(int(c) for c in self.poly.coeffs())))

    def __repr__(self) -> str:
        return f"HalfLaurent({self.coefficients})"

    def _aligned(self, other: "HalfLaurent") -> tuple[fmpz_poly, fmpz_poly, int]:
        lo = min(self.shift, other.shift)
        a = self.poly.left_shift(self.shift - lo) if self.shift > lo else self.poly
        b = other.poly.left_shift(other.shift - lo) if other.shift > lo else other.poly
        return a, b, lo

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        if not other:
            return self
        if not self:
            return other
        a, b, lo = self._aligned(other)
        return HalfLaurent(a + b, lo)

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent(-self.poly, self.shift) if self else self

    def __mul__(self, other: "HalfLaurent | int") -> "HalfLaurent":
        if isinstance(other, int):
            return HalfLaurent(self.poly * other, self.shift) if other else HalfLaurent()
        if not self or not other:
            return HalfLaurent()
        return HalfLaurent(self.poly * other.poly, self.shift + other.shift)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HalfLaurent":
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        if k == 0:
            return HalfLaurent.constant(1)
        return HalfLaurent(self.poly**k, self.shift * k)

    def times_monomial(self, exponent: int, coefficient: int = 1) -> "HalfLaurent":
        if not self or not coefficient:
            return HalfLaurent()
        poly = self.poly if coefficient == 1 else self.poly * coefficient
        return HalfLaurent(poly, self.shift + exponent)

    def bar(self) -> "HalfLaurent":
        """Substitute ``s -> 1/s`` (equivalently ``q -> 1/q``)."""
        return HalfLaurent.from_dict({-e: c for e, c in self.coefficients.items()})

    def is_even(self) -> bool:
        """True when only integral powers of ``q`` occur."""
        return all(e % 2 == 0 for e in self.coefficients)

    def is_symmetric(self) -> bool:
        return self == self.bar()

    def to_beta_poly(self) -> list[int]:
        """Rewrite a ``q <-> 1/q`` symmetric polynomial in ``q`` as a polynomial in beta.

        Returns integer coefficients ``c`` with ``self == sum c[k] beta**k``.
        """
        if not self.is_even() or not self.is_symmetric():
            raise ValueError(f"{self!r} is not a symmetric polynomial in q")
        rest = self
        if not rest:
            return []
        top = rest.high // 2
        out = [0] * (top + 1)
        beta = beta_laurent()
        while rest:
            k = rest.high // 2
            c = rest.coefficients[rest.high]
            out[k] = c
            rest = rest - (beta**k) * c
        return out

    def render(self, var: str | None = None) -> str:
        coeffs = self.coefficients
        if not coeffs:
            return "0"
        if var is None:
            var = "q" if all(e % 2 == 0 for e in coeffs) else "s"
        step = 2 if var == "q" else 1
        return _render_terms(((e // step, Fraction(c)) for e, c in sorted(coeffs.items())), var)

    __str__ = render


@lru_cache(maxsize=None)
def beta_laurent() -> HalfLaurent:
    return HalfLaurent.from_dict({2: 1, -2: 1})


def q_laurent(power: int = 1) -> HalfLaurent:
    return HalfLaurent.monomial(2 * power)


def _render_terms(terms: Iterable[tuple[int, Fraction]], var: str) -> str:
    out = []
    for e, c in terms:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            body = _frac_str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag.numerator}{mono}"
            else:
                body = f"({_frac_str(mag)}){mono}"
        out.append((sign, body))
    if not out:
        return "0"
    first_sign, first_body = out[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in out[1:]:
        text += sign + body
    return text


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# cyclotomic polynomials


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> fmpz_poly:
    """The ``m``-th cyclotomic polynomial, by the divisor recursion."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = fmpz_poly([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            poly = poly // cyclotomic(d)
    return poly


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


# ---------------------------------------------------------------------------
# arithmetic modes


class ArithmeticMode:
    """Base class of the three arithmetic modes."""

    ell: int | None = None

    def zero(self) -> "FieldElement":
        return self.from_int(0)

    def one(self) -> "FieldElement":
        return self.from_int(1)

    def from_int(self, k: int) -> "FieldElement":  # pragma: no cover - abstract
        raise NotImplementedError

    def from_fraction(self, x: Fraction) -> "FieldElement":  # pragma: no cover
        raise NotImplementedError

    def from_laurent(self, h: HalfLaurent) -> "FieldElement":
        raise ModeUnsupported(f"{self} cannot represent polynomials in q")

    def from_beta_poly(self, coeffs: Sequence[int | Fraction]) -> "FieldElement":
        """Evaluate a polynomial in beta (coefficients low to high)."""
        b = beta(self)
        acc = self.zero()
        for c in reversed(list(coeffs)):
            acc = acc * b + self.coerce(c)
        return acc

    def coerce(self, x: "int | Fraction | FieldElement") -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.mode != self:
                raise ModeMismatch(f"{x.mode} vs {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, (Fraction, fmpq)):
            return self.from_fraction(Fraction(int(x.numerator), int(x.denominator)))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    @property
    def beta_is_zero(self) -> bool:
        return not beta(self)

    def spec(self) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    @staticmethod
    def parse(text: str) -> "ArithmeticMode":
        """Parse ``generic``, ``root:M`` or ``beta:a/b``."""
        text = text.strip()
        if text == "generic":
            return Generic()
        kind, sep, arg = text.partition(":")
        if not sep or not arg:
            raise ValueError(f"unrecognised mode {text!r}")
        if kind == "root":
            m = int(arg)
            if m < 1:
                raise ValueError("root order must be positive")
            return RootOfUnity(m)
        if kind == "beta":
            return RationalBeta(Fraction(arg))
        raise ValueError(f"unrecognised mode {text!r}")


@dataclass(frozen=True)
class Generic(ArithmeticMode):
    def __post_init__(self):
        object.__setattr__(self, "ell", None)

    def from_int(self, k: int) -> "GenericElement":
        return GenericElement(self, HalfLaurent.constant(k), _ONE)

    def from_fraction(self, x: Fraction) -> "GenericElement":
        return GenericElement.make(self, HalfLaurent.constant(x.numerator), HalfLaurent.constant(x.denominator))

    def from_laurent(self, h: HalfLaurent) -> "GenericElement":
        return GenericElement(self, h, _ONE)

    def spec(self) -> str:
        return "generic"

    def __str__(self) -> str:
        return "Generic"


@dataclass(frozen=True)
class RootOfUnity(ArithmeticMode):
    """``s`` is a primitive ``M``-th root of unity, so ``q = s**2``."""

    M: int

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be positive")
        ell = self.M // gcd(self.M, 4)
        # q^(2 ell) = s^(4 ell) must be 1, and no smaller ell works
        assert (4 * ell) % self.M == 0
        assert all((4 * k) % self.M != 0 for k in range(1, ell))
        object.__setattr__(self, "ell", ell)

    @property
    def phi(self) -> fmpq_poly:
        return _phi_q(self.M)

    def from_int(self, k: int) -> "CycloElement":
        return CycloElement(self, fmpq_poly([k]))

    def from_fraction(self, x: Fraction) -> "CycloElement":
        return CycloElement(self, fmpq_poly([fmpq(x.numerator, x.denominator)]))

    def from_laurent(self, h: HalfLaurent) -> "CycloElement":
        if not h:
            return self.zero()
        m = self.M
        dense = [0] * m
        for e, c in h.coefficients.items():
            dense[e % m] += c
        return CycloElement(self, fmpq_poly(dense) % self.phi)

    def spec(self) -> str:
        return f"root:{self.M}"

    def __str__(self) -> str:
        return f"RootOfUnity(M={self.M})"


@dataclass(frozen=True)
class RationalBeta(ArithmeticMode):
    """Only the loop weight is fixed; ``q`` itself is not available."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        ell = None
        if abs(self.value) == 2:
            ell = 1
        elif self.value == 0:
            ell = 2
        object.__setattr__(self, "ell", ell)

    def from_int(self, k: int) -> "RationalElement":
        return RationalElement(self, Fraction(k))

    def from_fraction(self, x: Fraction) -> "RationalElement":
        return RationalElement(self, Fraction(x))

    def spec(self) -> str:
        return f"beta:{self.value.numerator}/{self.value.denominator}"

    def __str__(self) -> str:
        return f"RationalBeta({_frac_str(self.value)})"


@lru_cache(maxsize=None)
def _phi_q(m: int) -> fmpq_poly:
    return fmpq_poly(cyclotomic(m))


def root_for_ell(ell: int) -> RootOfUnity:
    """The mode with ``q = exp(i pi / ell)``, i.e. ``s`` a primitive ``4 ell``-th root."""
    return RootOfUnity(4 * ell)


_ONE = HalfLaurent.constant(1)


# ---------------------------------------------------------------------------
# field elements


class FieldElement:
    __slots__ = ("mode",)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.mode != self.mode:
                raise ModeMismatch(f"{other.mode} vs {self.mode}")
            return other
        return self.mode.coerce(other)

    def __radd__(self, other):
        return self._coerce(other) + self

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.mode.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def render(self) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"<{self.render()} in {self.mode}>"


class GenericElement(FieldElement):
    """``num / den`` with ``den`` a polynomial in ``s`` with positive leading
    coefficient, nonzero constant term, and no common factor with ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, mode: Generic, num: HalfLaurent, den: HalfLaurent):
        self.mode = mode
        self.num = num
        self.den = den

    @classmethod
    def make(cls, mode: Generic, num: HalfLaurent, den: HalfLaurent) -> "GenericElement":
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(mode, HalfLaurent(), _ONE)
        a, b = num.poly, den.poly
        g = a.gcd(b)
        if not g.is_one():
            a = a // g
            b = b // g
        if b.leading_coefficient() < 0:
            a, b = -a, -b
        return cls(mode, HalfLaurent(a, num.shift - den.shift), HalfLaurent(b, 0))

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.mode.coerce(other)
        if not isinstance(other, GenericElement):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == _ONE and other.den == _ONE:
            return GenericElement(self.mode, self.num + other.num, _ONE)
        return GenericElement.make(self.mode, self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return GenericElement(self.mode, -self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.den == _ONE and other.den == _ONE:
            return GenericElement(self.mode, self.num * other.num, _ONE)
        return GenericElement.make(self.mode, self.num * other.num, self.den * other.den)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return GenericElement.make(self.mode, self.den, self.num)

    def laurent(self) -> HalfLaurent:
        if self.den != _ONE:
            raise ValueError(f"{self.render()} is not a Laurent polynomial")
        return self.num

    def bar(self) -> "GenericElement":
        return GenericElement.make(self.mode, self.num.bar(), self.den.bar())

    def render(self) -> str:
        if self.den == _ONE:
            return self.num.render()
        var = "q" if self.num.is_even() and self.den.is_even() else "s"
        return f"({self.num.render(var)})/({self.den.render(var)})"


class CycloElement(FieldElement):
    """Residue of a rational polynomial in ``s`` modulo ``Phi_M``."""

    __slots__ = ("res",)

    def __init__(self, mode: RootOfUnity, res: fmpq_poly):
        self.mode = mode
        self.res = res

    def __bool__(self) -> bool:
        return not self.res.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.mode.coerce(other)
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.mode == other.mode and self.res == other.res

    def __hash__(self) -> int:
        return hash((self.mode.M, tuple(str(c) for c in self.res.coeffs())))

    def __add__(self, other):
        other = self._coerce(other)
        return CycloElement(self.mode, self.res + other.res)

    def __sub__(self, other):
        other = self._coerce(other)
        return CycloElement(self.mode, self.res - other.res)

    def __neg__(self):
        return CycloElement(self.mode, -self.res)

    def __mul__(self, other):
        other = self._coerce(other)
        prod = self.res * other.res
        if prod.degree() >= self.mode.phi.degree():
            prod = prod % self.mode.phi
        return CycloElement(self.mode, prod)

    def inverse(self):
        if self.res.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, u, _ = self.res.xgcd(self.mode.phi)
        if g != 1:
            raise ZeroDivisionError("non-invertible cyclotomic residue")
        return CycloElement(self.mode, u % self.mode.phi)

    def rational(self) -> Fraction | None:
        """The value as a rational number, when it is one."""
        if self.res.degree() <= 0:
            c = self.res.coeffs()[0] if not self.res.is_zero() else fmpq(0)
            return Fraction(int(c.p), int(c.q))
        return None

    def render(self) -> str:
        coeffs = self.res.coeffs()
        terms = ((e, Fraction(int(c.p), int(c.q))) for e, c in enumerate(coeffs))
        return _render_terms(terms, "s")


class RationalElement(FieldElement):
    __slots__ = ("value",)

    def __init__(self, mode: RationalBeta, value: Fraction):
        self.mode = mode
        self.value = value

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.value == other
        if not isinstance(other, RationalElement):
            return NotImplemented
        return self.mode == other.mode and self.value == other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalElement(self.mode, self.value + other.value)

    def __sub__(self, other):
        other = self._coerce(other)
        return RationalElement(self.mode, self.value - other.value)

    def __neg__(self):
        return RationalElement(self.mode, -self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalElement(self.mode, self.value * other.value)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return RationalElement(self.mode, 1 / self.value)

    def render(self) -> str:
        return _frac_str(self.value)


# ---------------------------------------------------------------------------
# q-combinatorics


def beta(mode: ArithmeticMode) -> FieldElement:
    """The loop weight ``q + 1/q``."""
    if isinstance(mode, RationalBeta):
        return RationalElement(mode, mode.value)
    return mode.from_laurent(beta_laurent())


def q_elem(mode: ArithmeticMode, power: int = 1) -> FieldElement:
    if isinstance(mode, RationalBeta):
        raise ModeUnsupported("q is not determined by beta alone")
    return mode.from_laurent(q_laurent(power))


def s_elem(mode: ArithmeticMode, power: int = 1) -> FieldElement:
    if isinstance(mode, RationalBeta):
        raise ModeUnsupported("s is not determined by beta alone")
    return mode.from_laurent(HalfLaurent.monomial(power))


def qnum_laurent(m: int) -> HalfLaurent:
    """``[m]`` as the Laurent polynomial ``q^(m-1) + q^(m-3) + ... + q^(1-m)``."""
    if m == 0:
        return HalfLaurent()
    sign = 1 if m > 0 else -1
    k = abs(m)
    return HalfLaurent.from_dict({2 * (k - 1 - 2 * j): sign for j in range(k)})


def qnum(mode: ArithmeticMode, m: int) -> FieldElement:
    """The q-number ``[m] = (q^m - q^-m) / (q - q^-1)``."""
    if isinstance(mode, RationalBeta):
        raise ModeUnsupported("q-numbers need q, not only beta")
    return mode.from_laurent(qnum_laurent(m))


def _chebyshev(b: FieldElement, m: int, first: FieldElement, second: FieldElement) -> FieldElement:
    a0, a1 = first, second
    for _ in range(m):
        a0, a1 = a1, b * a1 - a0
    return a0


def _qnum_from_beta(mode: ArithmeticMode, m: int) -> FieldElement:
    # [m+1] = beta [m] - [m-1], which needs beta only
    if m < 0:
        return -_qnum_from_beta(mode, -m)
    return _chebyshev(beta(mode), m, mode.zero(), mode.one())


def alpha(mode: ArithmeticMode, n: int, p: int) -> FieldElement:
    """``[n-2p+2] / [n-2p+1]``, the pivot ratio of the Gram recursion."""
    if p <= 0:
        raise ValueError("alpha needs p > 0")
    m = n - 2 * p + 1
    if isinstance(mode, RationalBeta):
        den = _qnum_from_beta(mode, m)
        num = _qnum_from_beta(mode, m + 1)
    else:
        den = qnum(mode, m)
        num = qnum(mode, m + 1)
    if not den:
        raise CriticalPair(f"({n},{p}) is critical")
    return num / den


def split_kr(m: int, ell: int) -> tuple[int, int]:
    """Write ``m = k*ell + r`` with ``r`` in ``1..ell``."""
    if ell < 1:
        raise ValueError("ell must be positive")
    k = (m - 1) // ell
    return k, m - k * ell


def k_r(mode: ArithmeticMode, n: int, p: int) -> tuple[int, int]:
    if mode.ell is None:
        raise ModeUnsupported(f"{mode} has no critical lines")
    return split_kr(n - 2 * p + 1, mode.ell)


def is_critical(mode: ArithmeticMode, n: int, p: int) -> bool:
    if mode.ell is None:
        return False
    return k_r(mode, n, p)[1] == mode.ell


def f_eigen(mode: ArithmeticMode, n: int, p: int) -> FieldElement:
    """``q^m + q^-m`` with ``m = n - 2p + 1``."""
    m = n - 2 * p + 1
    if isinstance(mode, RationalBeta):
        return _chebyshev(beta(mode), abs(m), mode.from_int(2), beta(mode))
    return mode.from_laurent(HalfLaurent.from_dict({2 * m: 1, -2 * m: 1}) if m else HalfLaurent.constant(2))


def render_scalar(x: FieldElement | int | Fraction) -> str:
    if isinstance(x, FieldElement):
        return x.render()
    return _frac_str(Fraction(x))
