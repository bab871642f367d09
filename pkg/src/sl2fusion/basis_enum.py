"""Monomial bases built from the cluster operators e^a(i).

e^a(i) is the z^i coefficient of e(z)^a.  A basis monomial is a product of
clusters: for each a = 1..k a list i_1 < i_2 < ... with gaps >= 2a and
i_1 >= bound(a, H), where H = l_{a+1} + ... + l_k counts the larger clusters.
A cluster e^a(i) has bidegree (q^i, z^a).

Three lower-bound conventions are available:

* ``exact``     base_a + 2 a H
* ``scaled``    base_a + a H (H + 1)
* ``unscaled``  base_a + H (H + 1)

They agree whenever H <= 1; only ``exact`` reproduces the characters once two
or more larger clusters are present.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable

from .compositions import Composition, a_s_composition, wA_degrees
from .errors import UsageError
from .fusion_char import w_infinity_character
from .qseries import BiSeries

BOUNDS = ("exact", "scaled", "unscaled")

Counts = dict[tuple[int, int], int]


def _bound_rule(bound: str) -> Callable[[int, int], int]:
    if bound == "exact":
        return lambda a, H: 2 * a * H
    if bound == "scaled":
        return lambda a, H: a * H * (H + 1)
    if bound == "unscaled":
        return lambda a, H: H * (H + 1)
    raise UsageError(f"unknown bound convention {bound!r}; choose from {BOUNDS}")


def _list_floor(start: int, gap: int, count: int) -> int:
    """Smallest sum of ``count`` entries, first >= start, consecutive gaps >= gap."""
    return count * start + gap * count * (count - 1) // 2


def _cheapest(start: int, gap: int) -> int:
    """min over count >= 0 of _list_floor(start, gap, count)."""
    best = count = 0
    while start + gap * count < 0:
        count += 1
        best = min(best, _list_floor(start, gap, count))
    return best


def _spaced_lists(start: int, gap: int, count: int, slack: int):
    """Yield (list, excess) for lists with sum - floor = excess <= slack.

    Entries are start + gap*j + x_j with 0 <= x_0 <= x_1 <= ...; the excess
    is sum x_j.
    """
    xs = [0] * count

    def rec(j: int, low: int, used: int):
        if j == count:
            yield [start + gap * m + xs[m] for m in range(count)], used
            return
        left = count - j
        x = low
        while used + x * left <= slack:
            xs[j] = x
            yield from rec(j + 1, x, used + x)
            x += 1

    yield from rec(0, 0, 0)


def _enumerate(base: list[int], bound: str, budget: int) -> Counter:
    """Counter of (sum of indices, z-charge) over all monomials with sum <= budget.

    ``base[a]`` is the H-independent part of the lower bound for a-clusters
    (index 0 unused).  Cluster counts are chosen first, largest a first, using
    the exact minimal sum for those counts; the index lists are then
    enumerated explicitly inside the remaining slack.
    """
    k = len(base) - 1
    extra = _bound_rule(bound)
    out: Counter = Counter()
    counts = [0] * (k + 1)
    starts = [0] * (k + 1)

    def rest_floor(a: int, H: int) -> int:
        # larger H only raises the bounds, so H gives a floor for a' < a
        return sum(_cheapest(base[b] + extra(b, H), 2 * b) for b in range(1, a))

    def fill(a: int, total: int, charge: int, slack: int):
        if a == 0:
            out[(total, charge)] += 1
            return
        for lst, used in _spaced_lists(starts[a], 2 * a, counts[a], slack):
            fill(a - 1, total + sum(lst), charge, slack - used)

    def choose(a: int, H: int, floor: int, charge: int):
        if a == 0:
            if floor <= budget:
                fill(k, 0, charge, budget - floor)
            return
        start = base[a] + extra(a, H)
        rest = rest_floor(a, H)
        count = 0
        while True:
            here = _list_floor(start, 2 * a, count)
            if floor + here + rest <= budget:
                counts[a], starts[a] = count, start
                choose(a - 1, H + count, floor + here, charge + a * count)
            elif start + 2 * a * count >= 0:
                break  # the floor only grows from here on
            count += 1

    choose(k, 0, 0, 0)
    return out


def _winf_base(D: Composition) -> list[int]:
    """base_a = a d_1 + (a-1) d_2 + ... + d_a."""
    d = D.d
    return [0] + [sum((a - l + 1) * d[l - 1] for l in range(1, a + 1)) for a in range(1, D.k + 1)]


def _w_base(D: Composition) -> list[int]:
    """base_a = a - a (d_{a+1} + ... + d_{k+1}) - (a-1) d_a - ... - d_2."""
    d = D.d
    out = [0]
    for a in range(1, D.k + 1):
        out.append(a - a * sum(d[a:]) - sum((l - 1) * d[l - 1] for l in range(2, a + 1)))
    return out


def enumerate_winf_basis(D: Composition, qmax4: int, bound: str = "exact") -> Counts:
    """Bidegree counts of the monomial basis of C[e_i] v_A, v_A at q^0 z^0."""
    raw = _enumerate(_winf_base(D), bound, qmax4 // 4)
    return {(4 * q, 2 * z): c for (q, z), c in raw.items()}


def counts_as_series(counts: Counts, qmax4: int) -> BiSeries:
    return BiSeries(counts, qmax4, polynomial=False)


def winf_basis_mismatch(D: Composition, qmax4: int, bound: str = "exact"):
    """First bidegree where basis counts and the character disagree, or None."""
    counts = counts_as_series(enumerate_winf_basis(D, qmax4, bound), qmax4)
    return counts.first_difference(w_infinity_character(D, qmax4))


def winf_basis_count_check(D: Composition, qmax4: int, bound: str = "exact") -> bool:
    return winf_basis_mismatch(D, qmax4, bound) is None


def enumerate_ld_basis(D: Composition, s: int, qmax4: int, bound: str = "exact") -> Counts:
    """Bidegree counts of the monomial basis of C[e_i] w_{A_s}, absolute grading."""
    if D.d[-1] > 1:
        raise UsageError(f"need d_(k+1) <= 1, got {D}")
    Ds = a_s_composition(D.stripped(), s)
    dq4, dz2 = wA_degrees(Ds)
    # negative cluster indices reach below w_{A_s}, so the budget may be negative
    raw = _enumerate(_w_base(Ds), bound, (qmax4 - dq4) // 4)
    return {(dq4 + 4 * q, dz2 + 2 * z): c for (q, z), c in raw.items()}


__all__ = [
    "BOUNDS", "enumerate_winf_basis", "winf_basis_count_check", "winf_basis_mismatch",
    "enumerate_ld_basis", "counts_as_series",
]
