"""Dimension vectors A and their multiplicity vectors D.

``A = (a_1 <= ... <= a_n)`` lists the dimensions of the sl2 irreducibles being
fused.  ``D = (d_1, ..., d_{k+1})`` counts how many of them have each
dimension, with ``k + 1 = max(A)``.  Most formulas only depend on D, and the
one-dimensional factors ``d_1`` never matter for the affine modules, so most
entry points expect ``d_1 == 0``.

Half-integer quantities are kept doubled: ``alpha2[i] == 2 * alpha_{i+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UsageError


@dataclass(frozen=True)
class Composition:
    """The vector D = (d_1, ..., d_{k+1}); ``d[0]`` is d_1."""

    d: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        if len(d) < 2:
            raise UsageError("a composition needs k >= 1, i.e. at least two entries")
        if any(x < 0 for x in d):
            raise UsageError(f"negative multiplicity in {d}")
        object.__setattr__(self, "d", d)

    @classmethod
    def of(cls, entries: Iterable[int] | str) -> "Composition":
        if isinstance(entries, str):
            try:
                entries = [int(x) for x in entries.replace(" ", "").split(",") if x]
            except ValueError as exc:
                raise UsageError(f"bad composition {entries!r}") from exc
        return cls(tuple(entries))

    @classmethod
    def zero(cls, k: int) -> "Composition":
        return cls((0,) * (k + 1))

    @property
    def k(self) -> int:
        return len(self.d) - 1

    def __getitem__(self, j: int) -> int:
        """1-based access: ``D[j] == d_j``."""
        if not 1 <= j <= len(self.d):
            raise IndexError(j)
        return self.d[j - 1]

    def __iter__(self):
        return iter(self.d)

    def __len__(self) -> int:
        return len(self.d)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.d)) + ")"

    def stripped(self) -> "Composition":
        """Same composition with the one-dimensional factors removed."""
        return Composition((0,) + self.d[1:])

    def updated(self, *changes: tuple[int, int]) -> "Composition":
        """Apply (index, delta) changes additively, in order, to a copy.

        Indices are 1-based.  The caller handles any out-of-range index.
        """
        d = list(self.d)
        for j, delta in changes:
            d[j - 1] += delta
        return Composition(tuple(d))

    def top_parity_wrapped(self) -> "Composition":
        """Reduce d_{k+1} mod 2: two extra top factors do not change L^D."""
        return Composition(self.d[:-1] + (self.d[-1] % 2,))

    def with_extra_top(self, extra: int) -> "Composition":
        return Composition(self.d[:-1] + (self.d[-1] + extra,))

    def nontrivial_count(self) -> int:
        """d_2 + ... + d_{k+1}."""
        return sum(self.d[1:])

    def measure(self) -> int:
        """prod_i i^{d_i}; strictly decreases along the decomposition recursion."""
        out = 1
        for i, di in enumerate(self.d, start=1):
            out *= i ** di
        return out


def check_avector(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not a:
        raise UsageError("A must be nonempty")
    if any(x < 1 for x in a):
        raise UsageError(f"dimensions must be positive: {a}")
    return tuple(sorted(a))


def parse_avector(text: str) -> tuple[int, ...]:
    try:
        return check_avector([int(x) for x in text.replace(" ", "").split(",") if x])
    except ValueError as exc:
        raise UsageError(f"bad A vector {text!r}") from exc


def dvector_of(a: Sequence[int], k: int | None = None) -> Composition:
    """d_j = #{i : a_i = j}.  ``k`` defaults to max(A) - 1.

    ``A = (1, ..., 1)`` has k = 0, which is not a composition; pass ``k``
    explicitly in that case.
    """
    a = check_avector(a)
    top = max(a) if k is None else k + 1
    if top < max(a):
        raise UsageError(f"k={k} too small for A={a}")
    if top < 2:
        raise UsageError("A made of 1-dimensional factors only has no level; pass k >= 1")
    d = [0] * top
    for x in a:
        d[x - 1] += 1
    return Composition(tuple(d))


def avector_of(D: Composition, extra_top: int = 0) -> tuple[int, ...]:
    """Inverse of dvector_of, with ``extra_top`` more copies of k + 1."""
    out: list[int] = []
    for j, dj in enumerate(D.d, start=1):
        out.extend([j] * dj)
    out.extend([D.k + 1] * extra_top)
    return tuple(out)


def a_s_composition(D: Composition, s: int) -> Composition:
    """Composition of A_s: D with d_{k+1} + 2 + 2s top factors."""
    if s < 0:
        raise UsageError("s must be >= 0")
    return D.with_extra_top(2 + 2 * s)


# D-derived quantities

def alpha2_vector(D: Composition) -> tuple[int, ...]:
    """(2 alpha_1, ..., 2 alpha_k) with 2 alpha_i = d_{i+1} + ... + d_{k+1}."""
    d = D.d
    return tuple(sum(d[i:]) for i in range(1, D.k + 1))


def parity_count(D: Composition) -> int:
    """p(D): how many alpha_i are half-integers."""
    return sum(x % 2 for x in alpha2_vector(D))


def wA_degrees(D: Composition) -> tuple[int, int]:
    """(q4, z2) bidegree of w_A = v(-2 alpha_1) x ... x v(-2 alpha_k).

    deg_q = sum alpha_i^2 - p(D)/4 and deg_z = -sum alpha_i.
    """
    a2 = alpha2_vector(D)
    return sum(x * x for x in a2) - parity_count(D), -sum(a2)


def avectors_up_to(max_product: int, min_entry: int = 2) -> list[tuple[int, ...]]:
    """All sorted A with entries >= min_entry (>= 2 by default) and prod a_i <= max_product."""
    if min_entry < 2:
        raise UsageError("entries equal to 1 give infinitely many A; use min_entry >= 2")
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], lo: int, prod_so_far: int):
        if prefix:
            out.append(prefix)
        x = lo
        while prod_so_far * x <= max_product:
            rec(prefix + (x,), x, prod_so_far * x)
            x += 1

    rec((), min_entry, 1)
    return out
