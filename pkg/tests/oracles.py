"""Independent oracles used to freeze expected values.

Everything here is deliberately separate from the library's own code paths:
exact rational series with truncation bounds for the constants, literal
nested loops (plus elementary alternating-series averaging) for the double
sums, and Pascal's triangle for binomials.
"""
from __future__ import annotations

import math
from fractions import Fraction


def machin_pi(digits: int = 45) -> Fraction:
    """pi = 16 atan(1/5) - 4 atan(1/239), exact rationals, alternating bound."""
    bound = Fraction(1, 10 ** (digits + 5))

    def atan_inv(q: int) -> Fraction:
        total = Fraction(0)
        k = 0
        while True:
            term = Fraction(1, (2 * k + 1) * q ** (2 * k + 1))
            if term < bound:
                return total
            total += -term if k % 2 else term
            k += 1

    return 16 * atan_inv(5) - 4 * atan_inv(239)


def two_term_pi(digits: int = 45) -> Fraction:
    """pi = 4 (atan(1/2) + atan(1/3)): a second, distinct arctangent route."""
    bound = Fraction(1, 10 ** (digits + 5))

    def atan_inv(q: int) -> Fraction:
        total = Fraction(0)
        k = 0
        while True:
            term = Fraction(1, (2 * k + 1) * q ** (2 * k + 1))
            if term < bound:
                return total
            total += -term if k % 2 else term
            k += 1

    return 4 * (atan_inv(2) + atan_inv(3))


def atanh_ln2(digits: int = 45) -> Fraction:
    """ln 2 = 2 atanh(1/3) in exact rationals."""
    bound = Fraction(1, 10 ** (digits + 5))
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(2, (2 * k + 1) * 3 ** (2 * k + 1))
        if term < bound:
            return total
        total += term
        k += 1


def apery_zeta3(terms: int = 80) -> Fraction:
    """zeta(3) = (5/2) sum_{n>=1} (-1)^(n-1) / (n^3 C(2n,n)).

    Geometric convergence (~4^-n); 80 terms give ~54 digits.
    """
    total = Fraction(0)
    for n in range(1, terms + 1):
        term = Fraction(1, n ** 3 * math.comb(2 * n, n))
        total += term if n % 2 else -term
    return Fraction(5, 2) * total


def pi_squared_over_6(digits: int = 45) -> Fraction:
    return machin_pi(digits) ** 2 / 6


def pascal_binom(n: int, k: int) -> int:
    """C(n, k) from Pascal's triangle, no factorials."""
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def brute_double_sum(r: int, s: int, r_bar: bool, s_bar: bool, n: int = 4000) -> float:
    """Literal nested double sum in plain floats.

    Alternating outer series are finished with one round of partial-sum
    averaging, unbarred outer with the crude integral tail; good to ~1e-7,
    which is all the cross-checks ask of it.
    """
    inner = 0.0
    values = []
    total = 0.0
    for m in range(2, n + 1):
        j = m - 1
        inner += ((-1) ** j if r_bar else 1.0) / j ** r
        term = ((-1) ** m if s_bar else 1.0) / m ** s * inner
        total += term
        values.append(total)
    if s_bar:
        return 0.5 * (values[-1] + values[-2])
    limit = inner if not r_bar else inner  # running inner sum at n
    return total + limit * (n ** (1 - s) / (s - 1) - 0.5 * n ** -s)


def harmonic_alternating(terms: int) -> list:
    """Partial sums of sum (-1)^m / m, for bracketing checks."""
    out = []
    total = 0.0
    for m in range(1, terms + 1):
        total += (-1) ** m / m
        out.append(total)
    return out
