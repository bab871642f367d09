"""Brute-force fermionic Fock space and exact span computations.

A configuration is a semi-infinite monomial in the fermions psi(i), phi(i)
containing every psi(i), phi(i) with i <= floor.  Only the occupied indices
above the floor are stored, as two sorted tuples.  The canonical word is

    (tale below the floor) psi(p_1) ... psi(p_s) phi(q_1) ... phi(q_t)

with p and q ascending; every operator tracks the sign needed to return to
this order.  psi(i), phi(i) act by right multiplication and the conjugates
psi*(i), phi*(i) by right differentiation in psi(-i), phi(-i), so all eight
families anticommute pairwise except {psi*(i), psi(-i)} = {phi*(i), phi(-i)} = 1.

Operators on the k-fold tensor power act as sums over tensor factors.  A
vector stores coefficients of *symmetrized* tensors: factors are split into
groups that started out identical, and inside each group only the multiset
of configurations is recorded.  All current operators are symmetric across
factors, so cyclic submodules never leave this subspace; it keeps spans of
vectors like v(-1)^{x 35} small.

Gradings: charge (z2 units) counts fermions relative to v(0); the q-degree
is the sum of occupied indices relative to v(0), so e_i moves a vector by
(4i, +2) in (q4, z2) units and v(m) sits at q-degree floor(m^2/4).
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .compositions import Composition, alpha2_vector, check_avector, dvector_of
from .errors import CutoffError, UsageError
from .qseries import BiSeries

Config = tuple[tuple[int, ...], tuple[int, ...]]  # (psi indices, phi indices) above floor
Key = tuple[tuple[Config, ...], ...]                # one sorted multiset per group
Vector = dict                                       # Key -> int (or Fraction)

DEFAULT_DEPTH = 12


def cutoff_depth(default: int | None = None) -> int:
    """Depth of the fermionic floor, overridable with FUSION_CUTOFF."""
    env = os.environ.get("FUSION_CUTOFF")
    if env:
        try:
            depth = int(env)
        except ValueError as exc:
            raise UsageError(f"FUSION_CUTOFF must be an integer, got {env!r}") from exc
        if depth < 1:
            raise UsageError("FUSION_CUTOFF must be positive")
        return depth
    return DEFAULT_DEPTH if default is None else default


def _insert(seq: tuple[int, ...], x: int) -> tuple[tuple[int, ...], int]:
    """Insert x into a sorted tuple; also return how many entries exceed x."""
    above = sum(1 for y in seq if y > x)
    pos = len(seq) - above
    return seq[:pos] + (x,) + seq[pos:], above


def _remove(seq: tuple[int, ...], x: int) -> tuple[tuple[int, ...], int]:
    pos = seq.index(x)
    return seq[:pos] + seq[pos + 1:], len(seq) - pos - 1


class FockSpace:
    """Single-factor operators on configurations with a fixed floor.

    ``floor`` is the validity floor M: every index <= M is occupied.  Any
    operator whose result would need to remove a fermion at or below the
    floor raises CutoffError.
    """

    def __init__(self, depth: int | None = None):
        depth = cutoff_depth() if depth is None else depth
        if depth < 1:
            raise UsageError("cutoff depth must be positive")
        self.floor = -depth
        vac = self.extremal(0)
        self._ref_count = len(vac[0]) + len(vac[1])
        self._ref_sum = sum(vac[0]) + sum(vac[1])
        # per-instance caches
        self.e_action = lru_cache(maxsize=None)(self._e_action)
        self.f_action = lru_cache(maxsize=None)(self._f_action)
        self.degree = lru_cache(maxsize=None)(self._degree)

    # basic vectors

    def extremal(self, m: int) -> Config:
        """v(m): v(2N) = ...psi(N-1)phi(N-1)psi(N), v(2N+1) = ...psi(N)phi(N)."""
        top_psi = m // 2
        top_phi = m // 2 if m % 2 else m // 2 - 1
        if top_phi < self.floor:
            raise CutoffError(f"v({m}) lies below the cutoff floor {self.floor}")
        M = self.floor
        return tuple(range(M + 1, top_psi + 1)), tuple(range(M + 1, top_phi + 1))

    def _degree(self, cfg: Config) -> tuple[int, int]:
        """(q4, z2) of a configuration."""
        psi, phi = cfg
        z2 = len(psi) + len(phi) - self._ref_count
        q = sum(psi) + sum(phi) - self._ref_sum
        return 4 * q, z2

    # fermion operators; each returns (sign, config) or None for zero

    def psi(self, i: int, cfg: Config):
        psi, phi = cfg
        if i <= self.floor or i in psi:
            return None
        new, above = _insert(psi, i)
        return (-1) ** (above + len(phi)), (new, phi)

    def phi(self, i: int, cfg: Config):
        psi, phi = cfg
        if i <= self.floor or i in phi:
            return None
        new, above = _insert(phi, i)
        return (-1) ** above, (psi, new)

    def psi_star(self, i: int, cfg: Config):
        """Differentiate in psi(-i)."""
        x = -i
        psi, phi = cfg
        if x <= self.floor:
            raise CutoffError(f"psi*({i}) reaches the tale below floor {self.floor}")
        if x not in psi:
            return None
        new, above = _remove(psi, x)
        return (-1) ** (above + len(phi)), (new, phi)

    def phi_star(self, i: int, cfg: Config):
        y = -i
        psi, phi = cfg
        if y <= self.floor:
            raise CutoffError(f"phi*({i}) reaches the tale below floor {self.floor}")
        if y not in phi:
            return None
        new, above = _remove(phi, y)
        return (-1) ** above, (psi, new)

    # current operators on one factor

    def _e_action(self, i: int, cfg: Config) -> tuple[tuple[int, Config], ...]:
        """e_i = sum_{a+b=i} psi(a) phi(b); terms with a or b at or below the floor vanish."""
        M = self.floor
        psi, phi = cfg
        psi_set, phi_set = set(psi), set(phi)
        out: dict[Config, int] = {}
        for a in range(M + 1, i - M):
            b = i - a
            if a in psi_set or b in phi_set:
                continue
            r1 = self.phi(b, cfg)
            if r1 is None:
                continue
            r2 = self.psi(a, r1[1])
            if r2 is None:
                continue
            sign = r1[0] * r2[0]
            out[r2[1]] = out.get(r2[1], 0) + sign
        return tuple((c, cfg2) for cfg2, c in out.items() if c)

    def _f_action(self, i: int, cfg: Config) -> tuple[tuple[int, Config], ...]:
        """f_i = sum_{a+b=i} psi*(a) phi*(b): removes psi(x), phi(y) with x + y = -i."""
        M = self.floor
        psi, phi = cfg
        psi_set, phi_set = set(psi), set(phi)
        target = -i
        if target <= 2 * M:
            raise CutoffError(f"f_{i} pairs two tale fermions below floor {M}")
        for x in psi:
            if target - x <= M:
                raise CutoffError(f"f_{i} needs phi({target - x}) below floor {M}")
        for y in phi:
            if target - y <= M:
                raise CutoffError(f"f_{i} needs psi({target - y}) below floor {M}")
        out: dict[Config, int] = {}
        for y in phi:
            x = target - y
            if x not in psi_set:
                continue
            r1 = self.phi_star(-y, cfg)
            r2 = self.psi_star(-x, r1[1])
            sign = r1[0] * r2[0]
            out[r2[1]] = out.get(r2[1], 0) + sign
        return tuple((c, cfg2) for cfg2, c in out.items() if c)


# ---------------------------------------------------------------------------
# tensor-power vectors in the group-symmetrized basis

def make_vector(factors: Sequence[Config]) -> tuple[Vector, tuple[int, ...]]:
    """Pure tensor of configurations; consecutive equal factors share a group."""
    groups: list[list[Config]] = []
    for cfg in factors:
        if groups and groups[-1][0] == cfg:
            groups[-1].append(cfg)
        else:
            groups.append([cfg])
    key = tuple(tuple(g) for g in groups)
    return {key: 1}, tuple(len(g) for g in groups)


def apply_single(action: Callable[[Config], Iterable[tuple[int, Config]]],
                 vec: Vector) -> Vector:
    """Apply sum_s X_s, X acting on one tensor factor, in the symmetrized basis."""
    out: dict[Key, int] = {}
    for key, coef in vec.items():
        for g, group in enumerate(key):
            for cfg in set(group):
                terms = action(cfg)
                if not terms:
                    continue
                pos = group.index(cfg)
                rest = group[:pos] + group[pos + 1:]
                for x, cfg2 in terms:
                    new_group = tuple(sorted(rest + (cfg2,)))
                    mult = new_group.count(cfg2)
                    new_key = key[:g] + (new_group,) + key[g + 1:]
                    out[new_key] = out.get(new_key, 0) + coef * x * mult
    return {k: c for k, c in out.items() if c}


def apply_e(space: FockSpace, i: int, vec: Vector) -> Vector:
    return apply_single(lambda c: space.e_action(i, c), vec)


def apply_f(space: FockSpace, i: int, vec: Vector) -> Vector:
    return apply_single(lambda c: space.f_action(i, c), vec)


def add_vectors(a: Vector, b: Vector, scale: int = 1) -> Vector:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + scale * c
    return {k: c for k, c in out.items() if c}


def apply_h(space: FockSpace, i: int, vec: Vector) -> Vector:
    """h_i = [e_i, f_0] (no central term since the f-mode is zero)."""
    return add_vectors(apply_e(space, i, apply_f(space, 0, vec)),
                       apply_f(space, 0, apply_e(space, i, vec)), -1)


def key_degree(space: FockSpace, key: Key) -> tuple[int, int]:
    q4 = z2 = 0
    for group in key:
        for cfg in group:
            dq, dz = space.degree(cfg)
            q4 += dq
            z2 += dz
    return q4, z2


def vector_degree(space: FockSpace, vec: Vector) -> tuple[int, int] | None:
    """Bidegree of a homogeneous vector (None for the zero vector)."""
    degs = {key_degree(space, key) for key in vec}
    if len(degs) > 1:
        raise AssertionError(f"inhomogeneous vector with degrees {sorted(degs)}")
    return next(iter(degs), None)


# ---------------------------------------------------------------------------
# exact span bookkeeping

class GradedSpan:
    """Row-echelon bases of homogeneous vectors, one per bidegree, over Q."""

    def __init__(self, space: FockSpace):
        self.space = space
        self.pivots: dict[tuple[int, int], dict[Key, dict[Key, Fraction]]] = {}

    def reduce(self, vec: Vector, degree: tuple[int, int]) -> dict[Key, Fraction]:
        basis = self.pivots.get(degree, {})
        v = {k: Fraction(c) for k, c in vec.items() if c}
        while v:
            top = max(v)
            row = basis.get(top)
            if row is None:
                return v
            factor = v[top]
            for k, c in row.items():
                nc = v.get(k, 0) - factor * c
                if nc:
                    v[k] = nc
                else:
                    v.pop(k, None)
        return v

    def insert(self, vec: Vector) -> dict[Key, Fraction] | None:
        """Add vec to the span; returns the new basis row, or None if dependent."""
        if not vec:
            return None
        degree = vector_degree(self.space, vec)
        v = self.reduce(vec, degree)
        if not v:
            return None
        top = max(v)
        lead = v[top]
        row = {k: c / lead for k, c in v.items()}
        self.pivots.setdefault(degree, {})[top] = row
        return row

    def dimension(self) -> int:
        return sum(len(b) for b in self.pivots.values())

    def character(self, qmax4: int, shift: tuple[int, int] = (0, 0)) -> BiSeries:
        dq, dz = shift
        terms = {(q4 + dq, z2 + dz): len(b) for (q4, z2), b in self.pivots.items()}
        return BiSeries(terms, qmax4)


def closure(space: FockSpace, start: Vector,
            operators: Callable[[tuple[int, int]], Iterable[Callable[[Vector], Vector]]],
            q4_window: tuple[int, int] | None = None) -> GradedSpan:
    """Smallest graded subspace containing ``start`` and stable under the operators.

    ``operators(degree)`` lists the operators worth applying to a vector of that
    bidegree.  Vectors outside ``q4_window`` (inclusive) are discarded; use a
    window only for operator sets that never lower the degree back into it.
    """
    span = GradedSpan(space)
    queue: list[dict[Key, Fraction]] = []
    row = span.insert(start)
    if row is not None:
        queue.append(row)
    while queue:
        vec = queue.pop()
        degree = vector_degree(space, vec)
        for op in operators(degree):
            image = op(vec)
            if not image:
                continue
            if q4_window is not None:
                q4 = vector_degree(space, image)[0]
                if not q4_window[0] <= q4 <= q4_window[1]:
                    continue
            new = span.insert(image)
            if new is not None:
                queue.append(new)
    return span


# ---------------------------------------------------------------------------
# the modules W^A and M^A inside the k-fold tensor power

def _default_depth(D: Composition) -> int:
    return max(DEFAULT_DEPTH, D.nontrivial_count() + D.d[0] + 6)


def v_A_factors(space: FockSpace, D: Composition) -> list[Config]:
    """v_A = v(-1 + d_1) x v(-1 + d_1 + d_2) x ... x v(-1 + d_1 + ... + d_k)."""
    out, partial = [], -1
    for l in range(1, D.k + 1):
        partial += D[l]
        out.append(space.extremal(partial))
    return out


def w_A_factors(space: FockSpace, D: Composition) -> list[Config]:
    """w_A = v(-2 alpha_1) x ... x v(-2 alpha_k)."""
    return [space.extremal(-x) for x in alpha2_vector(D)]


def make_extremal(m: int, depth: int | None = None) -> Config:
    return FockSpace(depth).extremal(m)


def _resolve(a: Sequence[int], k: int | None = None) -> Composition:
    a = check_avector(a)
    if max(a) < 2 and k is None:
        k = 1
    return dvector_of(a, k)


def w_span(a: Sequence[int], depth: int | None = None) -> tuple[GradedSpan, FockSpace, Composition]:
    """C[e_0, ..., e_{n-1}] v_A."""
    D = _resolve(a)
    space = FockSpace(depth if depth is not None else cutoff_depth(_default_depth(D)))
    n = len(check_avector(a))
    vec, _ = make_vector(v_A_factors(space, D))
    ops = [lambda v, i=i: apply_e(space, i, v) for i in range(n)]
    return closure(space, vec, lambda deg: ops), space, D


def span_dimension(a: Sequence[int], depth: int | None = None) -> int:
    return w_span(a, depth)[0].dimension()


def w_span_character(a: Sequence[int], qmax4: int, depth: int | None = None) -> BiSeries:
    """Graded character of C[e_0..e_{n-1}] v_A with v_A at q^0 z^0."""
    span, space, D = w_span(a, depth)
    vec, _ = make_vector(v_A_factors(space, D))
    dq, dz = vector_degree(space, vec)
    return span.character(qmax4, (-dq, -dz))


def m_span(a: Sequence[int], depth: int | None = None) -> tuple[GradedSpan, FockSpace, Composition]:
    """M^A = C[e_{-n+1}, ..., e_0] w_A."""
    D = _resolve(a)
    space = FockSpace(depth if depth is not None else cutoff_depth(_default_depth(D)))
    n = len(check_avector(a))
    vec, _ = make_vector(w_A_factors(space, D))
    ops = [lambda v, i=i: apply_e(space, -i, v) for i in range(n)]
    return closure(space, vec, lambda deg: ops), space, D


def graded_span_character(a: Sequence[int], qmax4: int, depth: int | None = None) -> BiSeries:
    """Character of M^A computed in the fermionic space, absolute bidegrees."""
    span, _, _ = m_span(a, depth)
    return span.character(qmax4)


def winf_span_character(D: Composition, qmax4: int, depth: int | None = None) -> BiSeries:
    """C[e_i, i >= 0] v_A up to q-degree qmax4/4 above v_A, v_A at q^0 z^0."""
    space = FockSpace(depth if depth is not None else cutoff_depth(_default_depth(D)))
    vec, _ = make_vector(v_A_factors(space, D))
    base_q4, base_z2 = vector_degree(space, vec)
    top = base_q4 + qmax4

    def ops(degree):
        room = (top - degree[0]) // 4
        return [lambda v, i=i: apply_e(space, i, v) for i in range(room + 1)]

    span = closure(space, vec, ops, (base_q4, top))
    return span.character(qmax4, (-base_q4, -base_z2))


# ---------------------------------------------------------------------------
# relation and embedding checks

def ideal_annihilation_failures(a: Sequence[int], i_max: int,
                                depth: int | None = None) -> list[tuple[int, int]]:
    """(i, c) pairs where the z^c coefficient of e^{(n)}(z)^i v_A fails to vanish.

    e^{(n)}(z) = e_0 + e_1 z + ... + e_{n-1} z^{n-1}; the relations demand
    that the coefficients of z^0 .. z^{S-1}, S = sum_j (i + 1 - a_j)_+, vanish.
    """
    a = check_avector(a)
    D = _resolve(a)
    n = len(a)
    space = FockSpace(depth if depth is not None else cutoff_depth(_default_depth(D)))
    vec, _ = make_vector(v_A_factors(space, D))
    bad: list[tuple[int, int]] = []
    for i in range(1, i_max + 1):
        need = sum(max(i + 1 - x, 0) for x in a)
        for c, v in enumerate(_power_coefficients(space, vec, n, i, need)):
            if v:
                bad.append((i, c))
    return bad


def _power_coefficients(space: FockSpace, vec: Vector, n: int, power: int,
                        count: int) -> list[Vector]:
    """Coefficients of z^0 .. z^{count-1} in e^{(n)}(z)^power vec."""
    if count <= 0:
        return []
    coeffs: list[Vector] = [vec] + [{} for _ in range(count - 1)]
    for _ in range(power):
        nxt: list[Vector] = []
        for c in range(count):
            total: Vector = {}
            for m in range(min(c, n - 1) + 1):
                if coeffs[c - m]:
                    total = add_vectors(total, apply_e(space, m, coeffs[c - m]))
            nxt.append(total)
        coeffs = nxt
    return coeffs


def ideal_annihilation_check(a: Sequence[int], i_max: int, depth: int | None = None) -> bool:
    return not ideal_annihilation_failures(a, i_max, depth)


def _proportionality(u: Vector, v: Vector) -> Fraction | None:
    """c with u == c v, or None when not proportional (or v is zero)."""
    if not v or set(u) != set(v):
        return None
    key = next(iter(v))
    c = Fraction(u[key], v[key])
    if all(Fraction(u[k]) == c * v[k] for k in v):
        return c
    return None


def embedding_constant(D: Composition, depth: int | None = None) -> Fraction | None:
    """const with const * w_A = f_{-1}^{sum(b_i+1)} e_0^{sum(b_i+2)} w_{A_1}.

    b_i = 2 alpha_i and A_1 adds two more top factors.  Returns None when the
    result is not a nonzero multiple of w_A.
    """
    space = FockSpace(depth if depth is not None else cutoff_depth(_default_depth(D) + 4))
    beta = alpha2_vector(D)
    target, _ = make_vector(w_A_factors(space, D))
    vec, _ = make_vector(w_A_factors(space, D.with_extra_top(2)))
    for _ in range(sum(b + 2 for b in beta)):
        vec = apply_e(space, 0, vec)
    for _ in range(sum(b + 1 for b in beta)):
        vec = apply_f(space, -1, vec)
    c = _proportionality(vec, target)
    return c if c else None


def embedding_check(D: Composition, depth: int | None = None) -> bool:
    return embedding_constant(D, depth) is not None


def extremal_composition(b: Sequence[int]) -> Composition:
    """D with d_2 = b_1 - b_2, ..., d_k = b_{k-1} - b_k, d_{k+1} = b_k."""
    b = tuple(int(x) for x in b)
    if not b or any(x < 1 for x in b) or any(x < y for x, y in zip(b, b[1:])):
        raise UsageError(f"b must be a nonincreasing sequence of positive integers: {b}")
    k = len(b)
    d = [0] * (k + 1)
    for j in range(1, k):
        d[j] = b[j - 1] - b[j]
    d[k] = b[-1]
    return Composition(tuple(d))


def extremal_span(b: Sequence[int], depth: int | None = None) -> GradedSpan:
    """U(sl2 x C[t^-1]) applied to v(-b_1) x ... x v(-b_k)."""
    b = tuple(b)
    D = extremal_composition(b)
    space = FockSpace(depth if depth is not None else
                      cutoff_depth(max(DEFAULT_DEPTH, 2 * max(b) + 6)))
    vec, _ = make_vector([space.extremal(-x) for x in b])

    def ops(degree):
        room = degree[0] // 4  # degrees never go negative, so deeper modes give zero
        out = []
        for i in range(room + 1):
            out.append(lambda v, i=i: apply_e(space, -i, v))
            out.append(lambda v, i=i: apply_f(space, -i, v))
            out.append(lambda v, i=i: apply_h(space, -i, v))
        return out

    return closure(space, vec, ops)


def extremal_module_character(b: Sequence[int], qmax4: int, depth: int | None = None) -> BiSeries:
    return extremal_span(b, depth).character(qmax4)


def extremal_module_check(b: Sequence[int], qmax4: int, depth: int | None = None) -> bool:
    from .fusion_char import m_character
    D = extremal_composition(b)
    return extremal_module_character(b, qmax4, depth) == m_character(D, qmax4)


def factor_degrees(space: FockSpace, factors: Iterable[Config]) -> tuple[int, int]:
    q4 = z2 = 0
    for cfg in factors:
        dq, dz = space.degree(cfg)
        q4 += dq
        z2 += dz
    return q4, z2


__all__ = [
    "FockSpace", "make_extremal", "make_vector", "add_vectors", "apply_e", "apply_f", "apply_h",
    "span_dimension", "graded_span_character", "w_span_character", "w_span", "m_span",
    "winf_span_character", "ideal_annihilation_check", "ideal_annihilation_failures",
    "embedding_check", "embedding_constant", "extremal_module_check",
    "extremal_module_character", "extremal_composition",
]
