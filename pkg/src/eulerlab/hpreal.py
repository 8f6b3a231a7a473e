"""Double-double arithmetic kernel, mathematical constants, Bernoulli numbers
and exact binomial coefficients.

An ExtReal is the unevaluated sum of two machine doubles (hi, lo) kept in
canonical form (|lo| <= ulp(hi)/2), giving roughly 31-32 significant decimal
digits.  All operations here are pure; values are immutable after
construction, so everything in this module is safe to share across threads.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

__all__ = [
    "DomainError",
    "ExtReal",
    "dd_add",
    "dd_sub",
    "dd_mul",
    "dd_div",
    "const_pi",
    "const_ln2",
    "const_gamma_f64",
    "bernoulli",
    "bernoulli_first",
    "bernoulli_poly",
    "binom",
    "exp_dd",
    "ln_dd",
    "sin_dd",
    "cos_dd",
    "sinc_pi",
    "euler_average_dd",
    "euler_average_f64",
    "to_decimal",
    "parse_decimal",
    "validate_constants",
]


class DomainError(ValueError):
    """An argument is outside the domain an operation is specified for."""


# ---------------------------------------------------------------------------
# Error-free transformations
# ---------------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker split constant


def _two_sum(a: float, b: float):
    """(s, e) with s = fl(a+b) and s + e == a + b exactly."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float):
    """Like _two_sum but requires |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float):
    """(p, e) with p = fl(a*b) and p + e == a * b exactly (Dekker split)."""
    p = a * b
    c = _SPLITTER * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLITTER * b
    bhi = c - (c - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


Real = Union["ExtReal", int, float, Fraction]


class ExtReal:
    """Immutable double-double real: value == hi + lo, canonical form."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float = 0.0, lo: float = 0.0):
        h, l = _two_sum(float(hi), float(lo))
        object.__setattr__(self, "hi", h)
        object.__setattr__(self, "lo", l)

    def __setattr__(self, name, value):  # immutability
        raise AttributeError("ExtReal is immutable")

    # -- construction -------------------------------------------------------
    @staticmethod
    def from_fraction(f: Fraction) -> "ExtReal":
        hi = float(f)
        lo = float(f - Fraction(hi))
        return _mk(*_quick_two_sum(hi, lo))

    @staticmethod
    def from_real(x: Real) -> "ExtReal":
        if isinstance(x, ExtReal):
            return x
        if isinstance(x, Fraction):
            return ExtReal.from_fraction(x)
        if isinstance(x, int):
            if abs(x) <= 1 << 53:
                return _mk(float(x), 0.0)
            return ExtReal.from_fraction(Fraction(x))
        return _mk(float(x), 0.0)

    # -- conversions ---------------------------------------------------------
    def to_fraction(self) -> Fraction:
        return Fraction(self.hi) + Fraction(self.lo)

    def __float__(self) -> float:
        return self.hi + self.lo

    def __repr__(self) -> str:
        return f"ExtReal({self.hi!r}, {self.lo!r})"

    def __str__(self) -> str:
        return to_decimal(self, 32)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: Real) -> "ExtReal":
        o = ExtReal.from_real(other)
        s, e = _two_sum(self.hi, o.hi)
        t, f = _two_sum(self.lo, o.lo)
        e += t
        s, e = _quick_two_sum(s, e)
        e += f
        return _mk(*_quick_two_sum(s, e))

    __radd__ = __add__

    def __neg__(self) -> "ExtReal":
        return _mk(-self.hi, -self.lo)

    def __sub__(self, other: Real) -> "ExtReal":
        return self.__add__(-ExtReal.from_real(other))

    def __rsub__(self, other: Real) -> "ExtReal":
        return ExtReal.from_real(other).__sub__(self)

    def __mul__(self, other: Real) -> "ExtReal":
        o = ExtReal.from_real(other)
        p, e = _two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi + self.lo * o.lo
        return _mk(*_quick_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other: Real) -> "ExtReal":
        o = ExtReal.from_real(other)
        if o.hi == 0.0 and o.lo == 0.0:
            raise DomainError("division by zero")
        q1 = self.hi / o.hi
        r = self - o * q1
        q2 = r.hi / o.hi
        r = r - o * q2
        q3 = r.hi / o.hi
        s, e = _quick_two_sum(q1, q2)
        t, f = _two_sum(e, q3)
        s, e = _quick_two_sum(s, t)
        return _mk(*_quick_two_sum(s, e + f))

    def __rtruediv__(self, other: Real) -> "ExtReal":
        return ExtReal.from_real(other).__truediv__(self)

    def __pow__(self, n: int) -> "ExtReal":
        if not isinstance(n, int):
            raise DomainError("only integer powers are supported")
        if n < 0:
            return ONE / self.__pow__(-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self) -> "ExtReal":
        return -self if self.hi < 0.0 or (self.hi == 0.0 and self.lo < 0.0) else self

    # canonical form makes lexicographic (hi, lo) comparison exact
    def _cmp(self, other: Real) -> int:
        o = ExtReal.from_real(other)
        if self.hi != o.hi:
            return -1 if self.hi < o.hi else 1
        if self.lo != o.lo:
            return -1 if self.lo < o.lo else 1
        return 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ExtReal, int, float, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other: Real) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Real) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Real) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Real) -> bool:
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.hi, self.lo))


def _mk(hi: float, lo: float) -> ExtReal:
    """Trusted constructor: (hi, lo) already canonical."""
    obj = object.__new__(ExtReal)
    object.__setattr__(obj, "hi", hi)
    object.__setattr__(obj, "lo", lo)
    return obj


ZERO = _mk(0.0, 0.0)
ONE = _mk(1.0, 0.0)


def dd_add(a: Real, b: Real) -> ExtReal:
    return ExtReal.from_real(a) + b


def dd_sub(a: Real, b: Real) -> ExtReal:
    return ExtReal.from_real(a) - b


def dd_mul(a: Real, b: Real) -> ExtReal:
    return ExtReal.from_real(a) * b


def dd_div(a: Real, b: Real) -> ExtReal:
    return ExtReal.from_real(a) / b


# ---------------------------------------------------------------------------
# Decimal conversion (exact, deterministic)
# ---------------------------------------------------------------------------

def parse_decimal(text: str) -> Fraction:
    """Exact Fraction from a decimal string, optional exponent part."""
    t = text.strip().lower()
    exp = 0
    if "e" in t:
        t, e = t.split("e", 1)
        exp = int(e)
    if "." in t:
        ip, fp = t.split(".", 1)
        exp -= len(fp)
        t = ip + fp
    value = Fraction(int(t or "0"))
    return value * Fraction(10) ** exp


def to_decimal(x: Union[ExtReal, float, Fraction], digits: int = 30) -> str:
    """Round x to `digits` significant decimal digits (half-even), exactly.

    Fixed-point form for moderate exponents, scientific otherwise; output is
    a pure decimal string, deterministic across platforms.
    """
    if digits < 1:
        raise DomainError("digits must be >= 1")
    if isinstance(x, ExtReal):
        f = x.to_fraction()
    elif isinstance(x, Fraction):
        f = x
    else:
        f = Fraction(float(x))
    if f == 0:
        return "0." + "0" * (digits - 1) if digits > 1 else "0"
    sign = "-" if f < 0 else ""
    f = -f if f < 0 else f
    num, den = f.numerator, f.denominator
    e10 = len(str(num)) - len(str(den))
    while 10 ** max(e10, 0) * den > num * 10 ** max(-e10, 0):
        e10 -= 1
    while 10 ** max(e10 + 1, 0) * den <= num * 10 ** max(-(e10 + 1), 0):
        e10 += 1
    shift = digits - 1 - e10
    if shift >= 0:
        q, r = divmod(num * 10 ** shift, den)
        d = den
    else:
        d = den * 10 ** (-shift)
        q, r = divmod(num, d)
    if 2 * r > d or (2 * r == d and q % 2 == 1):
        q += 1
    if q >= 10 ** digits:
        q //= 10
        e10 += 1
    ds = str(q).rjust(digits, "0")
    if -5 <= e10 < digits:
        if e10 >= 0:
            ip, fp = ds[: e10 + 1], ds[e10 + 1:]
            return sign + (ip + "." + fp if fp else ip)
        return sign + "0." + "0" * (-e10 - 1) + ds
    return sign + ds[0] + "." + ds[1:] + f"e{e10:+03d}"


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

# 40+ digit decimal literals; split into hi/lo at import, validated against
# the exact-rational oracles below when EULERLAB_PREC_CHECK=1.
_PI_LITERAL = "3.14159265358979323846264338327950288419716939937511"
_LN2_LITERAL = "0.69314718055994530941723212145817656807550013436026"

_PI = ExtReal.from_fraction(parse_decimal(_PI_LITERAL))
_LN2 = ExtReal.from_fraction(parse_decimal(_LN2_LITERAL))


def const_pi() -> ExtReal:
    """pi, correct to >= 32 significant digits."""
    return _PI


def const_ln2() -> ExtReal:
    """ln 2, correct to >= 32 significant digits."""
    return _LN2


def machin_pi_fraction(digits: int = 45) -> Fraction:
    """pi via Machin's formula in exact rational arithmetic.

    pi/4 = 4 atan(1/5) - atan(1/239); each arctangent series is truncated
    once the next term drops below 10**-(digits+5), and the alternating-series
    bound makes the result correct to `digits` digits.
    """
    bound = Fraction(1, 10 ** (digits + 5))

    def atan_inv(q: int) -> Fraction:
        total = Fraction(0)
        k = 0
        while True:
            term = Fraction(1, (2 * k + 1) * q ** (2 * k + 1))
            if term < bound:
                break
            total += -term if k % 2 else term
            k += 1
        return total

    return 16 * atan_inv(5) - 4 * atan_inv(239)


def atanh_ln2_fraction(digits: int = 45) -> Fraction:
    """ln 2 = 2 atanh(1/3) in exact rational arithmetic, truncated with bound."""
    bound = Fraction(1, 10 ** (digits + 5))
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(2, (2 * k + 1) * 3 ** (2 * k + 1))
        if term < bound:
            break
        total += term
        k += 1
    return total


def validate_constants() -> None:
    """Check embedded pi/ln2 literals against the rational oracles.

    Two layers: the 50-digit decimal literal must match the truncated-series
    oracle to 1e-45, and the hi/lo split must reproduce the literal to the
    double-double representation budget (2^-104 relative).
    """
    lit_tol = Fraction(1, 10 ** 45)
    for name, value, literal, oracle in (
        ("pi", _PI, _PI_LITERAL, machin_pi_fraction()),
        ("ln2", _LN2, _LN2_LITERAL, atanh_ln2_fraction()),
    ):
        exact = parse_decimal(literal)
        if abs(exact - oracle) > lit_tol:
            raise DomainError(f"embedded constant {name} fails oracle validation")
        if abs(value.to_fraction() - exact) > abs(exact) * Fraction(1, 2 ** 104):
            raise DomainError(f"embedded constant {name} split loses precision")


if os.environ.get("EULERLAB_PREC_CHECK") == "1":
    validate_constants()


@lru_cache(maxsize=1)
def const_gamma_f64() -> float:
    """Euler-Mascheroni constant at double precision (tail-correction plumbing).

    H_N - ln N - 1/(2N) + 1/(12 N^2) at N = 10**6; the omitted term is
    ~ 1/(120 N^4), far below double rounding.
    """
    import numpy as np

    n = 10 ** 6
    recip = 1.0 / np.arange(1, n + 1, dtype=np.float64)
    h = float(np.sum(recip[::-1]))
    return h - math.log(n) - 0.5 / n + 1.0 / (12.0 * n * n)


# ---------------------------------------------------------------------------
# Bernoulli numbers and binomial coefficients
# ---------------------------------------------------------------------------

_BERNOULLI_CAP = 60


@lru_cache(maxsize=None)
def _bernoulli_list(n: int) -> tuple:
    """B_0..B_n (first kind, B_1 = -1/2) via sum_{j<=n} C(n+1,j) B_j = 0."""
    if n == 0:
        return (Fraction(1),)
    prev = _bernoulli_list(n - 1)
    total = sum(Fraction(math.comb(n + 1, j)) * prev[j] for j in range(n))
    return prev + (-total / (n + 1),)


def bernoulli_first(n: int) -> Fraction:
    """B_n with B_1 = -1/2 (internal: Stirling series, Bernoulli polynomials)."""
    if n < 0 or n > _BERNOULLI_CAP:
        raise DomainError(f"Bernoulli index {n} outside [0, {_BERNOULLI_CAP}]")
    return _bernoulli_list(_BERNOULLI_CAP)[n]


def bernoulli(n: int) -> Fraction:
    """Exact B_n for even n in [0, 60]; odd or out-of-range index is an error."""
    if n < 0 or n % 2 == 1 or n > _BERNOULLI_CAP:
        raise DomainError(f"bernoulli requires an even index in [0, {_BERNOULLI_CAP}], got {n}")
    return bernoulli_first(n)


def bernoulli_poly(m: int, a: Real) -> ExtReal:
    """Bernoulli polynomial B_m(a) = sum C(m,i) B_i a^(m-i), evaluated in ExtReal."""
    x = ExtReal.from_real(a)
    total = ZERO
    for i in range(m + 1):
        coeff = Fraction(math.comb(m, i)) * bernoulli_first(i)
        if coeff != 0:
            total = total + ExtReal.from_fraction(coeff) * x ** (m - i)
    return total


_BINOM_CAP = 64


def binom(n: int, k: int) -> int:
    """Exact C(n, k); 0 when k < 0 or k > n; n capped at 64."""
    if n < 0 or n > _BINOM_CAP:
        raise DomainError(f"binom requires 0 <= n <= {_BINOM_CAP}, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Elementary functions (argument reduction + Taylor series)
# ---------------------------------------------------------------------------

def exp_dd(x: Real) -> ExtReal:
    """exp(x) for |x| <= 700, ~31 correct digits."""
    v = ExtReal.from_real(x)
    if abs(v.hi) > 700.0:
        raise DomainError("exp_dd argument out of range")
    k = int(round(v.hi / _LN2.hi))
    r = v - _LN2 * k
    # |r| <= 0.347; 26 Taylor terms push truncation below 1e-36
    term = ONE
    total = ONE
    for n in range(1, 27):
        term = term * r / n
        total = total + term
    return _mk(math.ldexp(total.hi, k), math.ldexp(total.lo, k))


def ln_dd(x: Real) -> ExtReal:
    """ln(x) for x > 0 via Newton refinement of the double-precision log."""
    v = ExtReal.from_real(x)
    if v.hi <= 0.0:
        raise DomainError("ln_dd requires a positive argument")
    y = ExtReal(math.log(v.hi))
    for _ in range(2):
        y = y + v * exp_dd(-y) - ONE
    return y


def _sin_taylor(r: ExtReal) -> ExtReal:
    term = r
    total = r
    r2 = r * r
    for n in range(1, 17):
        term = term * r2 / (-((2 * n) * (2 * n + 1)))
        total = total + term
    return total


def _cos_taylor(r: ExtReal) -> ExtReal:
    term = ONE
    total = ONE
    r2 = r * r
    for n in range(1, 17):
        term = term * r2 / (-((2 * n - 1) * (2 * n)))
        total = total + term
    return total


def sin_dd(x: Real) -> ExtReal:
    """sin(x), |x| <= 100; absolute error budget ~1e-30 on [-10, 10]."""
    v = ExtReal.from_real(x)
    if abs(v.hi) > 100.0:
        raise DomainError("sin_dd argument out of range")
    half_pi = _PI / 2
    k = int(round(float(v / half_pi)))
    r = v - half_pi * k
    mode = k % 4
    if mode == 0:
        return _sin_taylor(r)
    if mode == 1:
        return _cos_taylor(r)
    if mode == 2:
        return -_sin_taylor(r)
    return -_cos_taylor(r)


def cos_dd(x: Real) -> ExtReal:
    return sin_dd(ExtReal.from_real(x) + _PI / 2)


def sinc_pi(y: Real) -> ExtReal:
    """sin(pi*y)/(pi*y), continuous at 0."""
    v = ExtReal.from_real(y)
    if v.hi == 0.0 and v.lo == 0.0:
        return ONE
    py = _PI * v
    return sin_dd(py) / py


# ---------------------------------------------------------------------------
# Alternating-series acceleration (iterated forward-difference averaging)
# ---------------------------------------------------------------------------

def euler_average_dd(partial_sums: Sequence[ExtReal], order: int):
    """Euler transform of alternating-series partial sums, ExtReal arithmetic.

    Repeatedly replaces the sequence by adjacent means; returns (value,
    change-in-last-round) where the change is a heuristic error estimate.
    """
    v = list(partial_sums)
    if not v:
        raise DomainError("euler_average_dd needs at least one partial sum")
    half = ExtReal(0.5)
    prev_last = v[-1]
    for _ in range(min(order, len(v) - 1)):
        prev_last = v[-1]
        v = [(v[i] + v[i + 1]) * half for i in range(len(v) - 1)]
    est = abs(v[-1] - prev_last)
    return v[-1], est


def euler_average_f64(partial_sums, order: int):
    """Float64 variant of euler_average_dd over a numpy array."""
    import numpy as np

    v = np.asarray(partial_sums, dtype=np.float64)
    prev_last = float(v[-1])
    for _ in range(min(order, len(v) - 1)):
        prev_last = float(v[-1])
        v = 0.5 * (v[1:] + v[:-1])
    return float(v[-1]), abs(float(v[-1]) - prev_last)
