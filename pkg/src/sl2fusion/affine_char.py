"""Characters of the level-k modules L^D and of the irreducibles L_{j,k}.

Summation indices that may be half-integers are carried doubled, like the
z-exponents.  Every summand has nonnegative q-valuation, so pruning on the
partial sum of squares is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .compositions import (Composition, a_s_composition, alpha2_vector,
                           parity_count, wA_degrees)
from .errors import InvariantViolation, UsageError
from .fusion_char import m_character
from .qseries import Accumulator, BiSeries, euler_inverse, poly_mul, qfactorial_inverse

__all__ = [
    "HighestWeightLabel", "alpha_vector", "parity_count", "wA_degrees",
    "ld_character", "irrep_character", "stabilization_check",
]


@dataclass(frozen=True)
class HighestWeightLabel:
    j: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise UsageError(f"level must be positive, got k={self.k}")
        if not 0 <= self.j <= self.k:
            raise UsageError(f"highest weight j={self.j} outside 0..{self.k}")


def alpha_vector(D: Composition) -> tuple[int, ...]:
    """(2 alpha_1, ..., 2 alpha_k), i.e. alpha in half units."""
    return alpha2_vector(D)


def _check_ld_input(D: Composition) -> None:
    if D.d[0] != 0:
        raise UsageError(f"d_1 must be stripped before computing ch L^D, got {D}")
    if D.d[-1] > 1:
        raise UsageError(f"L^D needs d_(k+1) <= 1, got {D}")


def _finish(acc: Accumulator, qmax4: int) -> BiSeries:
    """Multiply the accumulated sum by 1/(infinity)_q."""
    acc.polynomial = False
    out = acc.freeze() * euler_inverse(qmax4)
    return BiSeries(out.as_dict(), qmax4, polynomial=False)


def ld_character(D: Composition, qmax4: int) -> BiSeries:
    """ch L^D = q^{-p/4} / (inf)_q * sum z^{sum i} q^{sum i^2} / prod (i_{l+1} - i_l + d_{l+1}/2)_q!

    over i_l in -alpha_l + Z with i_l >= i_{l-1} - d_l / 2; i_1 is unbounded.
    """
    _check_ld_input(D)
    k = D.k
    d = D.d
    a2 = alpha2_vector(D)
    p = parity_count(D)
    budget = qmax4 + p  # bound on sum (2 i_l)^2
    if budget < 0:
        return BiSeries.zero(qmax4)
    radius = isqrt(budget)
    acc = Accumulator(qmax4)
    I = [0] * k

    def rec(l: int, spent: int):
        # l is 0-based; I[l] = 2 i_{l+1}
        lo = -radius if l == 0 else max(-radius, I[l - 1] - d[l])
        if (lo - a2[l]) % 2:
            lo += 1
        for x in range(lo, radius + 1, 2):
            c = spent + x * x
            if c > budget:
                continue
            I[l] = x
            if l + 1 < k:
                rec(l + 1, c)
                continue
            q4 = c - p
            room = (qmax4 - q4) // 4
            poly: list[int] = [1] + [0] * room
            for m in range(k - 1):
                n2 = I[m + 1] - I[m] + d[m + 1]
                poly = poly_mul(poly, qfactorial_inverse(n2 // 2, room), room)
            acc.add_qpoly(q4, sum(I), poly)

    rec(0, 0)
    return _finish(acc, qmax4)


def irrep_character(label: HighestWeightLabel, qmax4: int) -> BiSeries:
    """ch L_{j,k} = 1/(inf)_q * sum_{i_1 <= ... <= i_k} z^{j/2 + sum i} q^{sum i^2 + sum_{l<=j} i_l}
    / prod (i_{l+1} - i_l)_q!.
    """
    j, k = label.j, label.k
    if qmax4 < 0:
        return BiSeries.zero(qmax4)
    qmax = qmax4 // 4
    radius = isqrt(qmax) + 1
    acc = Accumulator(qmax4)
    I = [0] * k

    def rec(l: int, spent: int):
        lo = -radius if l == 0 else I[l - 1]
        for x in range(lo, radius + 1):
            c = spent + x * x + (x if l < j else 0)  # i^2 + i >= 0, so pruning is safe
            if c > qmax:
                continue
            I[l] = x
            if l + 1 < k:
                rec(l + 1, c)
                continue
            room = qmax - c
            poly: list[int] = [1] + [0] * room
            for m in range(k - 1):
                poly = poly_mul(poly, qfactorial_inverse(I[m + 1] - I[m], room), room)
            acc.add_qpoly(4 * c, j + 2 * sum(I), poly)

    rec(0, 0)
    return _finish(acc, qmax4)


def stabilization_check(D: Composition, qmax4: int, s_cap: int | None = None) -> int:
    """Smallest s with ch M^{A_s} == ch M^{A_{s+1}} == ch L^D at this truncation.

    Raises InvariantViolation if some coefficient decreases from s to s + 1
    or if the characters have not settled by ``s_cap`` (default qmax4).
    """
    _check_ld_input(D)
    cap = qmax4 if s_cap is None else s_cap
    target = ld_character(D, qmax4)
    prev = m_character(a_s_composition(D, 0), qmax4)
    for s in range(cap + 1):
        cur = m_character(a_s_composition(D, s + 1), qmax4)
        if not prev.dominated_by(cur):
            raise InvariantViolation(
                f"ch M^(A_s) decreased between s={s} and s={s + 1} for D={D}: "
                f"{prev.first_difference(cur)}")
        if not cur.dominated_by(target):
            raise InvariantViolation(
                f"ch M^(A_{s + 1}) exceeds ch L^D for D={D}: {cur.first_difference(target)}")
        if prev == target and cur == target:
            return s
        prev = cur
    raise InvariantViolation(f"ch M^(A_s) did not reach ch L^D by s={cap} for D={D}")
