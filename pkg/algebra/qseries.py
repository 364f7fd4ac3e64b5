"""
Exact coefficient arithmetic.

Coefficients are Laurent polynomials in v with q = v**2, and quotients of
them. Half-integer powers of q (needed by the U_q coproduct) are odd
powers of v; everything else lives in even exponents.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Mapping, Union

from sympy.polys.densearith import dup_exquo
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

from errors import DomainError, NonSquareError, PoleError

Number = Union[int, Fraction]


class LaurentV:
    """Laurent polynomial in v with integer coefficients (immutable)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms: dict[int, int] = {e: int(c) for e, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "LaurentV":
        return cls({0: c})

    @classmethod
    def v_power(cls, e: int, c: int = 1) -> "LaurentV":
        return cls({e: c})

    @classmethod
    def q_power(cls, k: int, c: int = 1) -> "LaurentV":
        return cls({2 * k: c})

    # -- inspection -------------------------------------------------------

    def items(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._terms.items())

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self._terms.get(0) == 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def has_odd_exponents(self) -> bool:
        return any(e % 2 for e in self._terms)

    @property
    def valuation(self) -> int:
        if not self._terms:
            raise DomainError("valuation of the zero polynomial")
        return min(self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            raise DomainError("degree of the zero polynomial")
        return max(self._terms)

    def leading_coeff(self) -> int:
        return self._terms[self.degree] if self._terms else 0

    def content(self) -> int:
        return gcd(*self._terms.values()) if self._terms else 0

    # -- arithmetic -------------------------------------------------------

    def shift(self, e: int) -> "LaurentV":
        """Multiply by v**e."""
        if e == 0:
            return self
        return LaurentV({x + e: c for x, c in self._terms.items()})

    def scale_down(self, c: int) -> "LaurentV":
        """Exact integer division of every coefficient."""
        return LaurentV({e: x // c for e, x in self._terms.items()})

    def __add__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentV(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentV":
        return LaurentV({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentV(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentV":
        if k < 0:
            raise DomainError("negative powers of a Laurent polynomial are rational functions")
        result = ONE_V
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- evaluation -------------------------------------------------------

    def eval_v(self, v0: Number) -> Fraction:
        v0 = Fraction(v0)
        if v0 == 0 and any(e < 0 for e in self._terms):
            raise PoleError("negative power of v evaluated at v = 0")
        return sum((c * v0**e for e, c in self._terms.items()), Fraction(0))

    def eval_q(self, q0: Number) -> Fraction:
        """Evaluate at q = q0; only valid without odd v-exponents."""
        q0 = Fraction(q0)
        if self.has_odd_exponents():
            return self.eval_v(exact_sqrt(q0))
        if q0 == 0 and any(e < 0 for e in self._terms):
            raise PoleError("negative power of q evaluated at q = 0")
        return sum((c * q0 ** (e // 2) for e, c in self._terms.items()), Fraction(0))

    # -- rendering --------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = _mono_text(e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"LaurentV({self.to_text()!r})"


def _mono_text(e: int) -> str:
    if e == 0:
        return ""
    if e % 2:
        return f"q^({e}/2)"
    k = e // 2
    return "q" if k == 1 else f"q^{k}"


def _as_laurent(x) -> LaurentV | None:
    if isinstance(x, LaurentV):
        return x
    if isinstance(x, int):
        return LaurentV.const(x)
    return None


ZERO_V = LaurentV()
ONE_V = LaurentV.const(1)


def _to_dense(p: LaurentV) -> list:
    d = p.degree
    return [ZZ(p.coeff(d - i)) for i in range(d + 1)]


def _from_dense(coeffs: list) -> LaurentV:
    d = len(coeffs) - 1
    return LaurentV({d - i: int(c) for i, c in enumerate(coeffs) if c})


def _normalize(num: LaurentV, den: LaurentV) -> tuple[LaurentV, LaurentV]:
    if den.is_zero():
        raise PoleError("zero denominator")
    if num.is_zero():
        return ZERO_V, ONE_V

    s = den.valuation
    num, den = num.shift(-s), den.shift(-s)

    if not den.is_monomial():
        t = num.valuation
        n_dense, d_dense = _to_dense(num.shift(-t)), _to_dense(den)
        h = dup_gcd(n_dense, d_dense, ZZ)
        if len(h) > 1:
            n_dense = dup_exquo(n_dense, h, ZZ)
            d_dense = dup_exquo(d_dense, h, ZZ)
            num, den = _from_dense(n_dense).shift(t), _from_dense(d_dense)

    g = gcd(num.content(), den.content())
    if den.leading_coeff() < 0:
        g = -g
    if g != 1:
        num, den = num.scale_down(g), den.scale_down(g)
    return num, den


class RationalFn:
    """
    Element of Q(v) stored as a normalized quotient of Laurent polynomials.

    The denominator has lowest exponent 0 and a positive leading
    coefficient, and shares no factor with the numerator, so equal values
    have equal representations.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Union[LaurentV, Number] = 0, den: Union[LaurentV, int] = 1):
        if isinstance(num, Fraction):
            num, den_extra = LaurentV.const(num.numerator), num.denominator
            den = _as_laurent(den) * den_extra
        num = _as_laurent(num)
        den = _as_laurent(den)
        if num is None or den is None:
            raise DomainError("RationalFn expects LaurentV, int or Fraction parts")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentV, den: LaurentV) -> "RationalFn":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def from_laurent(cls, p: LaurentV) -> "RationalFn":
        return cls._raw(p, ONE_V)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def has_odd_exponents(self) -> bool:
        return self.num.has_odd_exponents() or self.den.has_odd_exponents()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = to_rational(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            if self.den.is_one():
                return RationalFn._raw(self.num + other.num, ONE_V)
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn._raw(-self.num, self.den)

    def __sub__(self, other):
        other = to_rational(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = to_rational(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = to_rational(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFn._raw(self.num * other.num, ONE_V)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise PoleError("inverse of zero")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = to_rational(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise PoleError("division by zero")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = to_rational(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int) -> "RationalFn":
        if k < 0:
            return self.inverse() ** (-k)
        if self.den.is_one():
            return RationalFn._raw(self.num**k, ONE_V)
        return RationalFn(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        other = to_rational(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- evaluation -------------------------------------------------------

    def eval_v(self, v0: Number) -> Fraction:
        d = self.den.eval_v(v0)
        if d == 0:
            raise PoleError(f"denominator {self.den} vanishes at v = {v0}")
        return self.num.eval_v(v0) / d

    # -- rendering --------------------------------------------------------

    def to_text(self) -> str:
        if self.den.is_one():
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"RationalFn({self.to_text()!r})"


def to_rational(x) -> RationalFn | None:
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, LaurentV):
        return RationalFn._raw(x, ONE_V)
    if isinstance(x, int):
        return RationalFn._raw(LaurentV.const(x), ONE_V)
    if isinstance(x, Fraction):
        return RationalFn(x)
    return None


ZERO = RationalFn._raw(ZERO_V, ONE_V)
ONE = RationalFn._raw(ONE_V, ONE_V)
Q = RationalFn._raw(LaurentV.q_power(1), ONE_V)
V = RationalFn._raw(LaurentV.v_power(1), ONE_V)


@lru_cache(maxsize=None)
def neg_q_pow(e: int) -> RationalFn:
    """(-q)**e for any integer e."""
    sign = -1 if e % 2 else 1
    return RationalFn._raw(LaurentV.q_power(e, sign), ONE_V)


@lru_cache(maxsize=None)
def q_pow(e: int) -> RationalFn:
    """q**e for any integer e."""
    return RationalFn._raw(LaurentV.q_power(e), ONE_V)


@lru_cache(maxsize=None)
def v_pow(e: int) -> RationalFn:
    """v**e = q**(e/2)."""
    return RationalFn._raw(LaurentV.v_power(e), ONE_V)


def q_minus_q_inv() -> RationalFn:
    return RationalFn._raw(LaurentV({2: 1, -2: -1}), ONE_V)


# -- q-integers -------------------------------------------------------------

def qnum(n: int, base: int = 1) -> LaurentV:
    """[n]_{q^base} = 1 + q^base + ... + q^(base*(n-1))."""
    if n < 0 or base < 1:
        raise DomainError(f"qnum needs n >= 0 and base >= 1 (got n={n}, base={base})")
    return LaurentV({2 * base * i: 1 for i in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int, base: int = 1) -> LaurentV:
    """[n]_{q^base}! = [1][2]...[n]."""
    if n < 0:
        raise DomainError(f"qfact needs n >= 0 (got {n})")
    result = ONE_V
    for i in range(1, n + 1):
        result = result * qnum(i, base)
    return result


@lru_cache(maxsize=None)
def qbinom(n: int, t: int, base: int = 1) -> RationalFn:
    """Gaussian binomial; always normalizes to a polynomial."""
    if not 0 <= t <= n:
        raise DomainError(f"qbinom needs 0 <= t <= n (got n={n}, t={t})")
    return RationalFn(qfact(n, base), qfact(t, base) * qfact(n - t, base))


# -- specialization ---------------------------------------------------------

def exact_sqrt(x: Number) -> Fraction:
    """Nonnegative rational square root, or NonSquareError."""
    x = Fraction(x)
    if x < 0:
        raise NonSquareError(f"{x} is not a rational square")
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a != x.numerator or b * b != x.denominator:
        raise NonSquareError(f"{x} is not a rational square")
    return Fraction(a, b)


def eval_at(x: Union[RationalFn, LaurentV, int], q0: Number) -> Fraction:
    """
    Evaluate a coefficient at q = q0.

    Raises:
        PoleError: the denominator vanishes at q0.
        NonSquareError: odd powers of v occur and q0 is not a rational square.
    """
    x = to_rational(x)
    if x is None:
        raise DomainError("eval_at expects a RationalFn, LaurentV or int")
    q0 = Fraction(q0)
    if x.has_odd_exponents():
        return x.eval_v(exact_sqrt(q0))
    d = x.den.eval_q(q0)
    if d == 0:
        raise PoleError(f"denominator {x.den} vanishes at q = {q0}")
    return x.num.eval_q(q0) / d


def eval_at_v(x: RationalFn, v0: Number) -> Fraction:
    """Evaluate at v = v0 (so q = v0**2)."""
    return x.eval_v(v0)


def common_denominator(values: Iterable[RationalFn]) -> LaurentV:
    """Product-free lcm of denominators, up to units, used for display."""
    result = ONE_V
    for value in values:
        if value.den.is_one() or value.den == result:
            continue
        ratio = RationalFn(result, value.den)
        # lcm(result, den) = result * den / gcd = result * ratio.den
        result = result * ratio.den
    return result
