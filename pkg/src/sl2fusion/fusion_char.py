"""Characters of fusion products of sl2 irreducibles.

Conventions shared by every character here and in :mod:`affine_char`:
``z`` counts ``h_0 / 2`` and ``q`` counts the loop degree, so an operator
``e_i`` has bidegree ``(q^i, z^1)``.

* ``fusion_character(A)`` is ch W^A with the cyclic vector at ``q^0 z^0``.
* ``m_character(D)`` is ch M^A in the absolute grading of the tensor power of
  the fermionic space, lowest term at the bidegree of w_A.
* ``w_infinity_character(D)`` is ch W^{A_inf} = C[e_i, i in Z] v_A.
"""

from __future__ import annotations

from math import prod
from typing import Callable, Iterator, Sequence

from .compositions import (Composition, alpha2_vector, avector_of, check_avector,
                           dvector_of, parity_count, wA_degrees)
from .errors import UsageError
from .qseries import (Accumulator, BiSeries, poly_mul, qbinomial_poly,
                      qfactorial_inverse)

__all__ = [
    "dvector_of", "avector_of", "fusion_dimension", "fusion_character",
    "m_character", "w_infinity_character", "turn_to_m_grading",
]


def fusion_dimension(a: Sequence[int]) -> int:
    return prod(check_avector(a))


def _require_stripped(D: Composition) -> None:
    if D.d[0] != 0:
        raise UsageError(
            f"d_1 = {D.d[0]} != 0 in {D}: strip the 1-dimensional factors first "
            "(Composition.stripped())")


def _nested_indices(D: Composition, cost: Callable[[int, int], int], budget: int,
                    pruned: list[bool] | None = None) -> Iterator[tuple[tuple[int, ...], int]]:
    """Tuples (j_1, ..., j_k) with 0 <= j_k <= d_{k+1}, 0 <= j_l <= d_{l+1} + j_{l+1}.

    ``cost(l, j_l)`` must be nonnegative; tuples whose total cost exceeds
    ``budget`` are pruned, and ``pruned[0]`` is set when that happens.
    Yields (tuple, total cost).
    """
    k = D.k
    d = D.d
    js = [0] * (k + 1)  # js[l] = j_l, 1-based

    def rec(l: int, upper: int, spent: int):
        for j in range(upper + 1):
            c = cost(l, j)
            if spent + c > budget:
                if pruned is not None:
                    pruned[0] = True
                continue
            js[l] = j
            if l == 1:
                yield tuple(js[1:]), spent + c
            else:
                yield from rec(l - 1, d[l - 1] + j, spent + c)

    yield from rec(k, d[k], 0)


def _binomial_product(D: Composition, js: tuple[int, ...], deg: int) -> tuple[list[int], bool]:
    """[d_{k+1} j_k] prod_{l<k} [d_{l+1} + j_{l+1}, j_l], truncated at ``deg``.

    Returns (coefficients, complete) where ``complete`` says nothing was cut.
    """
    k = D.k
    d = D.d
    full_degree = 0
    poly: list[int] = [1]
    for l in range(k, 0, -1):
        n = d[l] + (js[l] if l < k else 0)
        j = js[l - 1]
        full_degree += j * (n - j)
        poly = poly_mul(poly, qbinomial_poly(n, j), deg)
    return poly, full_degree <= deg


def fusion_character(a: Sequence[int], qmax4: int) -> BiSeries:
    """ch W^A, W^A = C[e_0..e_{n-1}] / J^A, from the nested q-binomial sum.

    The displayed sum is a function of (q, qz); each z^N term is moved down
    by q^N to return to the (q, z) convention.
    """
    a = check_avector(a)
    D = dvector_of(a) if max(a) >= 2 else None
    if D is None:
        return BiSeries.one(qmax4)
    _require_stripped(D)
    k = D.k
    partial = [0] * (k + 1)  # partial[l] = d_2 + ... + d_l
    for l in range(2, k + 1):
        partial[l] = partial[l - 1] + D[l]

    def cost(l: int, j: int) -> int:
        return 4 * j * (partial[l] + j - 1)

    acc = Accumulator(qmax4)
    pruned = [False]
    for js, spent in _nested_indices(D, cost, qmax4, pruned):
        poly, complete = _binomial_product(D, js, (qmax4 - spent) // 4)
        acc.add_qpoly(spent, 2 * sum(js), poly, exact=complete)
    if pruned[0]:
        acc.polynomial = False
    return acc.freeze()


def m_character(D: Composition, qmax4: int) -> BiSeries:
    """ch M^A, M^A = C[e_{-n+1}..e_0] w_A, in absolute bidegrees.

    Sum over i_l = j_l - alpha_l (so i_l + alpha_l is an integer, i_l >= -alpha_l,
    i_k <= d_{k+1}/2, i_{l+1} >= i_l - d_{l+1}/2) of
    z^{sum i_l} q^{sum i_l^2 - p(D)/4} times the q-binomial product.
    """
    _require_stripped(D)
    a2 = alpha2_vector(D)
    p = parity_count(D)

    def cost(l: int, j: int) -> int:
        return (2 * j - a2[l - 1]) ** 2

    budget = qmax4 + p
    acc = Accumulator(qmax4)
    pruned = [False]
    for js, spent in _nested_indices(D, cost, budget, pruned):
        q4 = spent - p
        z2 = sum(2 * j - x for j, x in zip(js, a2))
        poly, complete = _binomial_product(D, js, (qmax4 - q4) // 4)
        acc.add_qpoly(q4, z2, poly, exact=complete)
    if pruned[0]:
        acc.polynomial = False
    return acc.freeze()


def turn_to_m_grading(w_char: BiSeries, D: Composition, qmax4: int) -> BiSeries:
    """Regrade a full ch W^A polynomial into the absolute grading of M^A.

    Substitutes z -> z q^{-(n-1)} (the relabelling e_i -> e_{i-n+1}) and
    multiplies by the bidegree of w_A.
    """
    if not w_char.polynomial:
        raise UsageError("turn_to_m_grading needs the complete polynomial ch W^A")
    n = D.nontrivial_count()
    dq4, dz2 = wA_degrees(D)
    out: dict[tuple[int, int], int] = {}
    for (q4, z2), c in w_char.items():
        key = (q4 - 2 * (n - 1) * z2 + dq4, z2 + dz2)
        out[key] = out.get(key, 0) + c
    return BiSeries(out, qmax4)


def w_infinity_character(D: Composition, qmax4: int) -> BiSeries:
    """ch W^{A_inf}: sum over i_1..i_k >= 0 of
    (z/q)^{sum l i_l} q^{sum min(s,t) i_s i_t + sum_l d_l (i_l + 2 i_{l+1} + ...)}
    / prod (i_l)_q!.

    Here i_l is the number of l-fold clusters; d_{k+1} does not enter.
    """
    k = D.k
    d = D.d
    # linear coefficient of i_m: sum_{l <= m} (m - l + 1) d_l
    lin = [0] * (k + 1)
    for m in range(1, k + 1):
        lin[m] = sum((m - l + 1) * d[l - 1] for l in range(1, m + 1))
    qmax = qmax4 // 4
    acc = Accumulator(qmax4)
    counts = [0] * (k + 1)

    def rec(s: int, higher: int, spent: int):
        # higher = i_{s+1} + ... + i_k
        i = 0
        while True:
            c = s * i * (i - 1) + i * (2 * s * higher + lin[s])
            if spent + c > qmax:
                break
            counts[s] = i
            if s == 1:
                total = spent + c
                poly: list[int] = [1]
                room = qmax - total
                for m in range(1, k + 1):
                    poly = poly_mul(poly, qfactorial_inverse(counts[m], room), room)
                z = sum(m * counts[m] for m in range(1, k + 1))
                acc.add_qpoly(4 * total, 2 * z, poly)
            else:
                rec(s - 1, higher + i, spent + c)
            i += 1

    rec(k, 0, 0)
    acc.polynomial = False
    return acc.freeze()
