"""The sl2 Verlinde algebra V_m with basis pi_1, ..., pi_m.

V_m is the representation ring of sl2 modulo (pi_{m+1}); equivalently the
level m - 1 fusion ring.  Basis products use the truncated Clebsch-Gordan rule

    pi_i pi_j = sum pi_t,  t = |i - j| + 1, |i - j| + 3, ..., min(i + j - 1, 2m + 1 - i - j)

and are extended bilinearly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .compositions import Composition
from .errors import UsageError


@dataclass(frozen=True)
class VerlindeElement:
    m: int
    coeffs: tuple[int, ...]  # coeffs[i - 1] multiplies pi_i

    def __post_init__(self):
        if self.m < 1:
            raise UsageError("basis size m must be positive")
        if len(self.coeffs) != self.m:
            raise UsageError(f"expected {self.m} coefficients, got {len(self.coeffs)}")

    @classmethod
    def basis(cls, i: int, m: int) -> "VerlindeElement":
        if not 1 <= i <= m:
            raise UsageError(f"pi_{i} is not a basis element of V_{m}")
        c = [0] * m
        c[i - 1] = 1
        return cls(m, tuple(c))

    @classmethod
    def one(cls, m: int) -> "VerlindeElement":
        return cls.basis(1, m)

    def __add__(self, other: "VerlindeElement") -> "VerlindeElement":
        if self.m != other.m:
            raise UsageError(f"cannot add elements of V_{self.m} and V_{other.m}")
        return VerlindeElement(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "VerlindeElement") -> "VerlindeElement":
        return fusion_multiply(self, other)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i - 1]


@lru_cache(maxsize=None)
def basis_product(i: int, j: int, m: int) -> tuple[int, ...]:
    """Indices t with pi_t appearing in pi_i pi_j inside V_m."""
    if i > j:
        i, j = j, i
    top = min(i + j - 1, 2 * m + 1 - i - j)
    return tuple(range(j - i + 1, top + 1, 2))


def fusion_multiply(x: VerlindeElement, y: VerlindeElement) -> VerlindeElement:
    if x.m != y.m:
        raise UsageError(f"cannot multiply elements of V_{x.m} and V_{y.m}")
    m = x.m
    out = [0] * m
    for i, a in enumerate(x.coeffs, start=1):
        if not a:
            continue
        for j, b in enumerate(y.coeffs, start=1):
            if not b:
                continue
            for t in basis_product(i, j, m):
                out[t - 1] += a * b
    return VerlindeElement(m, tuple(out))


def pi_D(D: Composition) -> VerlindeElement:
    """pi_1^{d_1} ... pi_{k+1}^{d_{k+1}} in V_{k+1}."""
    m = D.k + 1
    acc = VerlindeElement.one(m)
    for i, di in enumerate(D.d, start=1):
        factor = VerlindeElement.basis(i, m)
        for _ in range(di):
            acc = fusion_multiply(acc, factor)
    return acc


def verlinde_coefficients(D: Composition) -> tuple[int, ...]:
    """(c_{1,D}, ..., c_{k+1,D})."""
    return pi_D(D).coeffs


def verprop_failures(m: int) -> list[str]:
    """Check the four standard V_m identities for every admissible index.

    Returns a list of human-readable failures (empty when all hold).
    """
    if m < 1:
        raise UsageError("m must be positive")
    pi = lambda i: VerlindeElement.basis(i, m)  # noqa: E731
    one = VerlindeElement.one(m)
    bad: list[str] = []

    def expect(lhs: VerlindeElement, rhs: VerlindeElement, label: str) -> None:
        if lhs != rhs:
            bad.append(f"V_{m}: {label}: {lhs.coeffs} != {rhs.coeffs}")

    if m >= 1:
        expect(pi(m) * pi(m), one, f"pi_{m}^2 = 1")
    for i in range(2, m):
        expect(pi(i) * pi(i), one + pi(i - 1) * pi(i + 1),
               f"pi_{i}^2 = 1 + pi_{i-1} pi_{i+1}")
    for i in range(2, m - 1):
        for j in range(i + 1, m):
            expect(pi(i) * pi(j), pi(j - i + 1) + pi(i - 1) * pi(j + 1),
                   f"pi_{i} pi_{j} = pi_{j-i+1} + pi_{i-1} pi_{j+1}")
    for i in range(2, m):
        expect(pi(i) * pi(m), pi(m - i + 1), f"pi_{i} pi_{m} = pi_{m-i+1}")
    return bad
