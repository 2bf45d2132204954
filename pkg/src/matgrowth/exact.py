"""Exact decision procedures for the square-root inequalities.

Every bound in this package compares an integer count against an
expression of the shape ``base + coef * sqrt(radicand)``.  Floating point
never decides anything: the comparison is rearranged so that a single
square eliminates the root, and all arithmetic is Fraction/int.  Floats
appear only in ``display_ratio`` fields meant for human-readable output.

Constants are pinned as fractions with denominator 10**6, found by exact
binary search for the least numerator making the bound hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ParameterError

CONSTANT_DENOM = 10**6


def le_linear_plus_sqrt(
    lhs: Fraction | int,
    base: Fraction | int,
    coef: Fraction | int,
    radicand: Fraction | int,
) -> bool:
    """Decide lhs <= base + coef * sqrt(radicand) exactly.

    Requires coef >= 0 and radicand >= 0 (the only shape that occurs).
    """
    if coef < 0 or radicand < 0:
        raise ParameterError("sqrt comparison needs nonnegative coef and radicand")
    z = Fraction(lhs) - Fraction(base)
    if z <= 0:
        return True
    return z * z <= Fraction(coef) ** 2 * Fraction(radicand)


def bit_log(n: int) -> int:
    """Integer stand-in for log2(n): the bit length.

    Satisfies bit_log(n) >= log2(n) for n >= 1 and is exactly reproducible,
    which is what a pinned regression constant needs.
    """
    if n < 1:
        raise ParameterError(f"bit_log of {n}")
    return n.bit_length()


def min_constant(holds: Callable[[Fraction], bool], hi_cap: int = 10**18) -> Fraction:
    """Least C = k / 10**6 with holds(C), for holds monotone in C."""
    if holds(Fraction(0)):
        return Fraction(0)
    hi = 1
    while not holds(Fraction(hi, CONSTANT_DENOM)):
        hi *= 2
        if hi > hi_cap:
            raise ParameterError("no constant below cap satisfies the bound")
    lo = hi // 2  # holds(lo/D) is False (or lo == 0)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(Fraction(mid, CONSTANT_DENOM)):
            hi = mid
        else:
            lo = mid
    return Fraction(hi, CONSTANT_DENOM)


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    constant: Fraction
    lhs: int
    display_ratio: float


# -- energy against the coset profile ----------------------------------------

def _t2_energy_holds(energy: int, n: int, m1: int, m2: int, c: Fraction) -> bool:
    # E <= c * L * (n^2 * m1 + n^2 * sqrt(n * m2)),  L = bit_log(n)
    big = c * bit_log(n) * n * n
    return le_linear_plus_sqrt(energy, big * m1, big, n * m2)


def _heis_energy_holds(energy: int, n: int, m: int, line_max: int, c: Fraction) -> bool:
    # E <= c * (n^2 * line_max + n^2 * m * sqrt(n))
    big = c * n * n
    return le_linear_plus_sqrt(energy, big * line_max, big * m, n)


def t2_energy_bound(
    energy: int, n: int, m1: int, m2: int, constant: Fraction | None = None
) -> BoundCheck:
    """E(A) <= C * bit_log|A| * (|A|^(5/2) sqrt(m2) + |A|^2 m1).

    With no pinned constant, returns the least one that works (holds=True
    by construction).  With a pinned constant, evaluates it.
    """
    if n < 1:
        raise ParameterError("energy bound of an empty set")
    if constant is None:
        constant = min_constant(lambda c: _t2_energy_holds(energy, n, m1, m2, c))
        holds = True
    else:
        holds = _t2_energy_holds(energy, n, m1, m2, constant)
    rhs = bit_log(n) * (n * n * math.sqrt(n * m2) + n * n * m1)
    return BoundCheck(
        holds=holds,
        constant=constant,
        lhs=energy,
        display_ratio=energy / rhs if rhs else math.inf,
    )


def heis_energy_bound(
    energy: int, n: int, m: int, line_max: int, constant: Fraction | None = None
) -> BoundCheck:
    """E(A) <= C * (|A|^(5/2) m + |A|^2 line_max)."""
    if n < 1:
        raise ParameterError("energy bound of an empty set")
    if constant is None:
        constant = min_constant(lambda c: _heis_energy_holds(energy, n, m, line_max, c))
        holds = True
    else:
        holds = _heis_energy_holds(energy, n, m, line_max, constant)
    rhs = n * n * m * math.sqrt(n) + n * n * line_max
    return BoundCheck(
        holds=holds,
        constant=constant,
        lhs=energy,
        display_ratio=energy / rhs if rhs else math.inf,
    )


# -- product-set size predictions ---------------------------------------------

def t2_product_prediction(
    quotient_size: int, n: int, m1: int, m2: int, constant: Fraction
) -> BoundCheck:
    """|A^-1 A| >= |A|^2 / (C * bit_log|A| * (m1 + sqrt(|A| m2))).

    Follows from the energy bound through Cauchy-Schwarz (the energy is
    the second moment of the quotient-set representation function), so
    the same pinned constant must work; evaluated independently here.
    Decided as: n^2 <= |Q| * C * L * m1 + |Q| * C * L * sqrt(n * m2).
    """
    if n < 1 or quotient_size < 1:
        raise ParameterError("prediction needs nonempty sets")
    big = constant * bit_log(n) * quotient_size
    holds = le_linear_plus_sqrt(n * n, big * m1, big, n * m2)
    denom = float(constant) * bit_log(n) * (m1 + math.sqrt(n * m2))
    predicted = n * n / denom if denom else math.inf
    return BoundCheck(
        holds=holds,
        constant=constant,
        lhs=quotient_size,
        display_ratio=quotient_size / predicted if predicted else math.inf,
    )


def heis_product_prediction(
    quotient_size: int, n: int, m: int, line_max: int, constant: Fraction
) -> BoundCheck:
    """|A^-1 A| >= |A|^2 / (C * (line_max + m * sqrt(|A|)))."""
    if n < 1 or quotient_size < 1:
        raise ParameterError("prediction needs nonempty sets")
    big = constant * quotient_size
    holds = le_linear_plus_sqrt(n * n, big * line_max, big * m, n)
    denom = float(constant) * (line_max + m * math.sqrt(n))
    predicted = n * n / denom if denom else math.inf
    return BoundCheck(
        holds=holds,
        constant=constant,
        lhs=quotient_size,
        display_ratio=quotient_size / predicted if predicted else math.inf,
    )


# -- point-plane incidence bound ----------------------------------------------

def incidence_bound(
    incidences: int,
    points: int,
    planes: int,
    max_collinear: int,
    constant: Fraction | None = None,
) -> BoundCheck:
    """I(P, Pi) <= C * (|Pi| sqrt(|P|) + k |Pi|) with |P| <= |Pi|.

    If the point side is larger the roles are swapped first (the bound is
    symmetric once oriented).  k is the largest number of collinear points.
    """
    small, large = min(points, planes), max(points, planes)
    if small < 1:
        raise ParameterError("incidence bound needs nonempty sides")

    def holds_at(c: Fraction) -> bool:
        return le_linear_plus_sqrt(
            incidences, c * max_collinear * large, c * large, small
        )

    if constant is None:
        constant = min_constant(holds_at)
        holds = True
    else:
        holds = holds_at(constant)
    rhs = large * math.sqrt(small) + max_collinear * large
    return BoundCheck(
        holds=holds,
        constant=constant,
        lhs=incidences,
        display_ratio=incidences / rhs if rhs else math.inf,
    )


def fraction_json(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator}


def fraction_from_json(obj: dict) -> Fraction:
    return Fraction(obj["num"], obj["den"])
