"""Truncated bivariate formal series in q and z with exact integer coefficients.

Exponents are stored as scaled integers: ``q4`` counts quarters of a q-power
and ``z2`` counts halves of a z-power, so the monomial ``(q4, z2)`` stands for
``q^(q4/4) z^(z2/2)``.  Every series carries its truncation bound ``qmax4``;
terms with ``q4 > qmax4`` are never stored.

The univariate helpers at the bottom (``qfactorial_poly``, ``qbinomial_poly``,
``qfactorial_inverse``, ...) work on plain lists indexed by integer q-degree.
The character modules use them in their inner loops and only build a
``BiSeries`` at the end.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import UsageError

Key = tuple[int, int]


class BiSeries:
    """Immutable truncated series; equality is exact term-map equality.

    ``polynomial`` records whether the value is known to be a polynomial that
    was retained in full (nothing dropped by truncation, no infinite generator
    involved).  Only such series may be specialized at q = z = 1.
    """

    __slots__ = ("_terms", "qmax4", "polynomial")

    def __init__(self, terms: Mapping[Key, int] | Iterable[tuple[Key, int]] = (),
                 qmax4: int = 0, *, polynomial: bool = True):
        items = terms.items() if isinstance(terms, Mapping) else terms
        kept: dict[Key, int] = {}
        dropped = False
        for (q4, z2), c in items:
            if not c:
                continue
            if q4 > qmax4:
                dropped = True
                continue
            key = (int(q4), int(z2))
            kept[key] = kept.get(key, 0) + int(c)
        self._terms = {key: c for key, c in kept.items() if c}
        self.qmax4 = int(qmax4)
        self.polynomial = polynomial and not dropped

    # construction helpers

    @classmethod
    def zero(cls, qmax4: int) -> "BiSeries":
        return cls({}, qmax4)

    @classmethod
    def one(cls, qmax4: int) -> "BiSeries":
        return cls({(0, 0): 1}, qmax4)

    @classmethod
    def monomial(cls, q4: int, z2: int, qmax4: int, coeff: int = 1) -> "BiSeries":
        return cls({(q4, z2): coeff}, qmax4)

    @classmethod
    def from_qpoly(cls, coeffs: Iterable[int], qmax4: int, *,
                   polynomial: bool = True) -> "BiSeries":
        """z-free series from a list of coefficients at integer q-degrees."""
        return cls({(4 * d, 0): c for d, c in enumerate(coeffs)}, qmax4,
                   polynomial=polynomial)

    # access

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Key]:
        return iter(sorted(self._terms))

    def items(self) -> list[tuple[Key, int]]:
        return sorted(self._terms.items())

    def as_dict(self) -> dict[Key, int]:
        return dict(self._terms)

    def coefficient(self, q4: int, z2: int = 0) -> int:
        """Coefficient of q^(q4/4) z^(z2/2); zero when absent.

        Asking above the truncation bound is an error: the value is unknown.
        """
        if q4 > self.qmax4:
            raise UsageError(f"q4={q4} lies above the truncation bound {self.qmax4}")
        return self._terms.get((q4, z2), 0)

    def min_q4(self) -> int | None:
        return min((q4 for q4, _ in self._terms), default=None)

    def max_q4(self) -> int | None:
        return max((q4 for q4, _ in self._terms), default=None)

    def z_column(self, z2: int) -> dict[int, int]:
        """The q-series multiplying z^(z2/2), as {q4: coefficient}."""
        return {q4: c for (q4, zz), c in self._terms.items() if zz == z2}

    def q_column(self, q4: int) -> dict[int, int]:
        return {z2: c for (qq, z2), c in self._terms.items() if qq == q4}

    # arithmetic

    def _check_bound(self, other: "BiSeries") -> None:
        if not isinstance(other, BiSeries):
            raise UsageError(f"expected BiSeries, got {type(other).__name__}")
        if other.qmax4 != self.qmax4:
            raise UsageError(
                f"mismatched truncation bounds: qmax4={self.qmax4} vs {other.qmax4}")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check_bound(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return BiSeries(out, self.qmax4,
                        polynomial=self.polynomial and other.polynomial)

    def __neg__(self) -> "BiSeries":
        return BiSeries({k: -c for k, c in self._terms.items()}, self.qmax4,
                        polynomial=self.polynomial)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def scale(self, factor: int) -> "BiSeries":
        return BiSeries({k: factor * c for k, c in self._terms.items()}, self.qmax4,
                        polynomial=self.polynomial)

    def __mul__(self, other: "BiSeries | int") -> "BiSeries":
        if isinstance(other, int):
            return self.scale(other)
        self._check_bound(other)
        qmax4 = self.qmax4
        # a truncated factor is only known up to qmax4, so its partner must not
        # reach below q^0 or the top of the product would miss contributions
        for x, y in ((self, other), (other, self)):
            if not x.polynomial and y and y.min_q4() < 0:
                raise UsageError("product of a truncated series with a factor below q^0 "
                                 "is not exact; shift the factor up first")
        # group the right factor by q4 so the bound check prunes whole rows
        rows: dict[int, list[tuple[int, int]]] = {}
        for (q4, z2), c in other._terms.items():
            rows.setdefault(q4, []).append((z2, c))
        row_keys = sorted(rows)
        out: dict[Key, int] = {}
        dropped = False
        for (qa, za), ca in self._terms.items():
            for qb in row_keys:
                q4 = qa + qb
                if q4 > qmax4:
                    dropped = True
                    break
                for zb, cb in rows[qb]:
                    key = (q4, za + zb)
                    out[key] = out.get(key, 0) + ca * cb
        return BiSeries(out, qmax4, polynomial=(self.polynomial and other.polynomial
                                                 and not dropped))

    __rmul__ = __mul__

    def shift(self, dq4: int, dz2: int) -> "BiSeries":
        if dq4 < 0 and not self.polynomial:
            raise UsageError("shifting a truncated series down would expose unknown terms")
        out = {(q4 + dq4, z2 + dz2): c for (q4, z2), c in self._terms.items()}
        return BiSeries(out, self.qmax4, polynomial=self.polynomial)

    def restrict(self, qmax4: int) -> "BiSeries":
        """Drop everything above a lower bound; raising the bound is an error."""
        if qmax4 > self.qmax4:
            raise UsageError("cannot restrict a series to a larger truncation bound")
        return BiSeries(self._terms, qmax4, polynomial=self.polynomial)

    def with_bound(self, qmax4: int) -> "BiSeries":
        """Re-house a polynomial under a different bound (polynomials only)."""
        if qmax4 < self.qmax4:
            return self.restrict(qmax4)
        if not self.polynomial:
            raise UsageError("only a fully retained polynomial can be re-bounded upward")
        return BiSeries(self._terms, qmax4, polynomial=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.qmax4 == other.qmax4 and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def first_difference(self, other: "BiSeries") -> tuple[Key, int, int] | None:
        """Smallest (q4, z2) where the two series differ, with both coefficients."""
        self._check_bound(other)
        keys = sorted(set(self._terms) | set(other._terms))
        for key in keys:
            a, b = self._terms.get(key, 0), other._terms.get(key, 0)
            if a != b:
                return key, a, b
        return None

    def dominated_by(self, other: "BiSeries") -> bool:
        """Coefficientwise self <= other on every retained exponent."""
        self._check_bound(other)
        keys = set(self._terms) | set(other._terms)
        return all(self._terms.get(k, 0) <= other._terms.get(k, 0) for k in keys)

    # serialization

    def to_json_obj(self) -> dict:
        return {
            "qmax4": self.qmax4,
            "terms": [{"q4": q4, "z2": z2, "c": str(c)} for (q4, z2), c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "BiSeries":
        try:
            terms = {(int(t["q4"]), int(t["z2"])): int(t["c"]) for t in obj["terms"]}
            return cls(terms, int(obj["qmax4"]), polynomial=False)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed BiSeries JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "BiSeries":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self) -> str:
        return f"BiSeries({format_series(self)!r}, qmax4={self.qmax4})"

    def __str__(self) -> str:
        return format_series(self)


def _format_power(var: str, exp: Fraction) -> str:
    if exp == 0:
        return ""
    if exp == 1:
        return var
    if exp.denominator == 1:
        return f"{var}^{exp.numerator}"
    return f"{var}^({exp.numerator}/{exp.denominator})"


def format_monomial(q4: int, z2: int) -> str:
    parts = [_format_power("z", Fraction(z2, 2)), _format_power("q", Fraction(q4, 4))]
    return " ".join(p for p in parts if p) or "1"


def format_series(series: BiSeries) -> str:
    if not series:
        return "0"
    chunks = []
    for (q4, z2), c in series.items():
        mono = format_monomial(q4, z2)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)} {mono}"
        sign = "-" if c < 0 else "+"
        chunks.append((sign, body))
    text = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# functional aliases

def series_add(a: BiSeries, b: BiSeries) -> BiSeries:
    return a + b


def series_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    return a * b


def monomial_shift(a: BiSeries, dq4: int, dz2: int) -> BiSeries:
    return a.shift(dq4, dz2)


def q_factorial(n: int, qmax4: int) -> BiSeries:
    """(n)_q! = prod_{i=1}^n (1 - q^i)."""
    if n < 0:
        raise UsageError("q_factorial needs n >= 0")
    return BiSeries.from_qpoly(qfactorial_poly(n), qmax4)


def q_binomial(n: int, k: int, qmax4: int) -> BiSeries:
    """Gaussian binomial [n choose k]_q; zero outside 0 <= k <= n."""
    if n < 0:
        raise UsageError("q_binomial needs n >= 0")
    return BiSeries.from_qpoly(qbinomial_poly(n, k), qmax4)


def euler_inverse(qmax4: int) -> BiSeries:
    """1 / prod_{i>=1} (1 - q^i) = sum_n p(n) q^n, truncated."""
    coeffs = partition_numbers(qmax4 // 4)
    return BiSeries.from_qpoly(coeffs, qmax4, polynomial=False)


def specialize_q1_z1(a: BiSeries) -> int:
    """Sum of coefficients; only meaningful for a fully retained polynomial."""
    if not a.polynomial:
        raise UsageError(
            "q=1, z=1 specialization of a truncated or infinite series is meaningless")
    return sum(c for _, c in a.items())


# ---------------------------------------------------------------------------
# univariate helpers on integer q-degrees

def poly_mul(a: list[int] | tuple[int, ...], b: list[int] | tuple[int, ...],
             deg: int | None = None) -> list[int]:
    """Product of coefficient lists, truncated to degree ``deg`` if given."""
    if not a or not b:
        return []
    top = len(a) + len(b) - 2
    if deg is not None:
        top = min(top, deg)
    if top < 0:
        return []
    out = [0] * (top + 1)
    for i, x in enumerate(a):
        if i > top:
            break
        if not x:
            continue
        lim = min(len(b), top - i + 1)
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def qfactorial_poly(n: int) -> tuple[int, ...]:
    poly = [1]
    for i in range(1, n + 1):
        nxt = poly + [0] * i
        for d, c in enumerate(poly):
            nxt[d + i] -= c
        poly = nxt
    return tuple(poly)


@lru_cache(maxsize=None)
def qbinomial_poly(n: int, k: int) -> tuple[int, ...]:
    """Coefficients of [n choose k]_q via the q-Pascal recursion."""
    if k < 0 or k > n or n < 0:
        return ()
    if k == 0 or k == n:
        return (1,)
    # [n k] = [n-1 k-1] + q^k [n-1 k]
    left = qbinomial_poly(n - 1, k - 1)
    right = qbinomial_poly(n - 1, k)
    out = [0] * (k * (n - k) + 1)
    for d, c in enumerate(left):
        out[d] += c
    for d, c in enumerate(right):
        out[d + k] += c
    return tuple(out)


@lru_cache(maxsize=None)
def qfactorial_inverse(n: int, deg: int) -> tuple[int, ...]:
    """1/(n)_q! truncated at degree ``deg``: partitions into parts <= n."""
    if deg < 0:
        return ()
    if n == 0:
        return (1,) + (0,) * deg
    prev = list(qfactorial_inverse(n - 1, deg))
    for d in range(n, deg + 1):
        prev[d] += prev[d - n]
    return tuple(prev)


@lru_cache(maxsize=None)
def partition_numbers(deg: int) -> tuple[int, ...]:
    if deg < 0:
        return ()
    p = [1] + [0] * deg
    for part in range(1, deg + 1):
        for d in range(part, deg + 1):
            p[d] += p[d - part]
    return tuple(p)


class Accumulator:
    """Mutable builder used by the character sums; freeze() yields a BiSeries."""

    __slots__ = ("terms", "qmax4", "polynomial")

    def __init__(self, qmax4: int):
        self.terms: dict[Key, int] = {}
        self.qmax4 = qmax4
        self.polynomial = True

    def add(self, q4: int, z2: int, c: int) -> None:
        if not c:
            return
        if q4 > self.qmax4:
            self.polynomial = False
            return
        key = (q4, z2)
        self.terms[key] = self.terms.get(key, 0) + c

    def add_qpoly(self, q4: int, z2: int, coeffs: Iterable[int], *,
                  exact: bool = True) -> None:
        """Add z^(z2/2) q^(q4/4) * sum_d coeffs[d] q^d."""
        for d, c in enumerate(coeffs):
            self.add(q4 + 4 * d, z2, c)
        if not exact:
            self.polynomial = False

    def freeze(self) -> BiSeries:
        return BiSeries(self.terms, self.qmax4, polynomial=self.polynomial)
