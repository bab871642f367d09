"""Recursive decomposition of L^D into irreducibles L_{j,k}.

Each step writes ch L^D = ch L^{D'} + q^{shift} ch L^{D''} (or just
ch L^{D'}); iterating until at most one nontrivial factor is left gives
ch L^D = sum_j K_j(q) ch L_{j,k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .affine_char import HighestWeightLabel, irrep_character, ld_character
from .compositions import Composition, parity_count
from .errors import InvariantViolation, UsageError
from .qseries import BiSeries, format_monomial
from .verlinde import verlinde_coefficients


@dataclass(frozen=True)
class GradedMultiplicity:
    """Polynomial sum_e c_e q^{e/4} with positive integer coefficients."""

    terms: tuple[tuple[int, int], ...] = ()  # sorted (q4, coeff)

    @classmethod
    def from_dict(cls, poly: dict[int, int]) -> "GradedMultiplicity":
        return cls(tuple(sorted((e, c) for e, c in poly.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = format_monomial(e, 0)
            if mono == "1":
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c} {mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class DecompositionStep:
    case_tag: str               # "a", "b1" or "b2"
    l: int
    l1: int | None
    D_prime: Composition
    D_doubleprime: Composition | None = None
    shift_q4: int | None = None


def _normalize(D: Composition) -> Composition:
    """Zero d_1 and reduce d_{k+1} mod 2."""
    return D.stripped().top_parity_wrapped()


def decompose_step(D: Composition) -> DecompositionStep:
    if D.d[0] != 0:
        raise UsageError(f"strip d_1 first: {D}")
    if D.d[-1] > 1:
        raise UsageError(f"d_(k+1) must be 0 or 1: {D}")
    if D.nontrivial_count() < 2:
        raise UsageError(f"need at least two nontrivial factors: {D}")
    k = D.k
    l = next(m for m in range(2, k + 2) if D[m])
    p = parity_count(D)
    if D[l] >= 2:
        if l == k + 1:  # unreachable: d_{k+1} <= 1
            raise InvariantViolation(f"unexpected l = k + 1 with d_l >= 2: {D}")
        Dp = D.updated((l, -2))
        Dpp_raw = D.updated((l - 1, 1), (l, -2), (l + 1, 1))
        shift = (parity_count(Dpp_raw) - p) + 2 * (D[l] - 1)
        step = DecompositionStep("a", l, None, _normalize(Dp), _normalize(Dpp_raw), shift)
    else:
        l1 = next(m for m in range(l + 1, k + 2) if D[m])
        Dp = D.updated((l, -1), (l1, -1), (l1 - l + 1, 1))
        if l1 == k + 1:
            return DecompositionStep("b2", l, l1, _normalize(Dp))
        Dpp_raw = D.updated((l - 1, 1), (l, -1), (l1, -1), (l1 + 1, 1))
        shift = (parity_count(Dpp_raw) - p) + 2 * D[l1]
        step = DecompositionStep("b1", l, l1, _normalize(Dp), _normalize(Dpp_raw), shift)
    # zero happens when p(D'') = p(D) - 2, e.g. D = (0,2,1); the identity still holds
    if step.shift_q4 < 0:
        raise InvariantViolation(f"negative shift {step.shift_q4} at {D}")
    return step


def decompose_full(D: Composition) -> list[GradedMultiplicity]:
    """[K_0, ..., K_k] with ch L^D = sum_j K_j(q) ch L_{j,k}."""
    if D.d[0] != 0 or D.d[-1] > 1:
        raise UsageError(f"decompose_full needs d_1 = 0 and d_(k+1) <= 1: {D}")
    return [GradedMultiplicity.from_dict(dict(poly)) for poly in _decompose(D)]


@lru_cache(maxsize=None)
def _decompose(D: Composition) -> tuple[tuple[tuple[int, int], ...], ...]:
    k = D.k
    out: list[dict[int, int]] = [dict() for _ in range(k + 1)]
    if D.nontrivial_count() <= 1:
        j = next((m - 1 for m in range(2, k + 2) if D[m]), 0)
        out[j][0] = 1
        return tuple(tuple(sorted(x.items())) for x in out)
    step = decompose_step(D)
    branches = [(step.D_prime, 0)]
    if step.D_doubleprime is not None:
        branches.append((step.D_doubleprime, step.shift_q4))
    for child, shift in branches:
        if child.measure() >= D.measure():
            raise InvariantViolation(f"decomposition measure did not decrease: {D} -> {child}")
        for j, poly in enumerate(_decompose(child)):
            for e, c in poly:
                out[j][e + shift] = out[j].get(e + shift, 0) + c
    return tuple(tuple(sorted(x.items())) for x in out)


def reconstruct_character(K: list[GradedMultiplicity], k: int, qmax4: int) -> BiSeries:
    """sum_j K_j(q) ch L_{j,k} at the given truncation."""
    total = BiSeries.zero(qmax4)
    for j, mult in enumerate(K):
        if not mult:
            continue
        ch = irrep_character(HighestWeightLabel(j, k), qmax4)
        for e, c in mult.terms:
            total = total + ch.shift(e, 0).scale(c)
    return BiSeries(total.as_dict(), qmax4, polynomial=False)


def kostka_verlinde_check(D: Composition) -> bool:
    K = decompose_full(D)
    return tuple(m.at_one() for m in K) == verlinde_coefficients(D)


def _identity_failure(lhs: BiSeries, rhs: BiSeries, label: str) -> str | None:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return None
    (q4, z2), a, b = diff
    return f"{label}: first mismatch at {format_monomial(q4, z2)}: {a} != {b}"


def decch_triple(D_base: Composition, s: int) -> tuple[Composition, Composition, Composition, int]:
    """(D, D', D'', shift_q4) for the index s.

    D has d_s + 2, D' keeps d_s, D'' has d_{s-1} + 1 and d_{s+1} + 1; the
    shift is p(D'') - p(D) + 2 (d_s + 1) in quarter units.
    """
    k = D_base.k
    if not 2 <= s <= k:
        raise UsageError(f"s must lie in 2..{k}, got {s}")
    D = D_base.updated((s, 2))
    Dpp_raw = D_base.updated((s - 1, 1), (s + 1, 1))
    shift = parity_count(Dpp_raw) - parity_count(D) + 2 * (D_base[s] + 1)
    return _normalize(D), _normalize(D_base), _normalize(Dpp_raw), shift


def decch_identity_report(D_base: Composition, s: int, qmax4: int) -> str | None:
    D, Dp, Dpp, shift = decch_triple(D_base, s)
    lhs = ld_character(D, qmax4)
    rhs = ld_character(Dp, qmax4) + ld_character(Dpp, qmax4).shift(shift, 0)
    return _identity_failure(lhs, rhs, f"D={D} D'={Dp} D''={Dpp} shift_q4={shift}")


def decch_identity_check(D_base: Composition, s: int, qmax4: int) -> bool:
    return decch_identity_report(D_base, s, qmax4) is None


def decfun_identity_report(D: Composition, qmax4: int) -> str | None:
    step = decompose_step(D)
    lhs = ld_character(D, qmax4)
    rhs = ld_character(step.D_prime, qmax4)
    if step.D_doubleprime is not None:
        rhs = rhs + ld_character(step.D_doubleprime, qmax4).shift(step.shift_q4, 0)
    return _identity_failure(lhs, rhs, f"case {step.case_tag} at D={D}")


def decfun_identity_check(D: Composition, qmax4: int) -> bool:
    return decfun_identity_report(D, qmax4) is None


def admissible_family(k_max: int, n_max: int) -> list[Composition]:
    """All D with d_1 = 0, d_{k+1} <= 1, k <= k_max, d_2 + ... + d_{k+1} <= n_max."""
    out: list[Composition] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 0:
            out.append(Composition(tuple(prefix)))
            return
        top = remaining if slots > 1 else min(remaining, 1)
        for x in range(top + 1):
            rec(prefix + [x], remaining - x, slots - 1)

    for k in range(1, k_max + 1):
        rec([0], n_max, k)
    return out


__all__ = [
    "GradedMultiplicity", "DecompositionStep", "decompose_step", "decompose_full",
    "reconstruct_character", "kostka_verlinde_check", "decch_triple",
    "decch_identity_check", "decch_identity_report", "decfun_identity_check",
    "decfun_identity_report", "admissible_family",
]
