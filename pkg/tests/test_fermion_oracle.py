from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2fusion.compositions import Composition, avectors_up_to, dvector_of
from sl2fusion.errors import CutoffError, UsageError
from sl2fusion.fermion_oracle import (FockSpace, add_vectors, apply_e, apply_f, apply_h,
                                      cutoff_depth, embedding_constant, extremal_composition,
                                      extremal_module_check, graded_span_character,
                                      ideal_annihilation_check, ideal_annihilation_failures,
                                      make_vector, span_dimension, vector_degree,
                                      w_span_character, winf_span_character)
from sl2fusion.fusion_char import (fusion_character, fusion_dimension, m_character,
                                   w_infinity_character)

SPACE = FockSpace(8)


def vec(*ms, space=SPACE):
    return make_vector([space.extremal(m) for m in ms])[0]


def test_extremal_degrees():
    for m in range(-6, 7):
        assert SPACE.degree(SPACE.extremal(m)) == (4 * (m * m // 4), m)


def test_extremal_raising():
    for m in range(-4, 5):
        v = vec(m)
        assert apply_e(SPACE, m + 1, v) in (vec(m + 2), {k: -c for k, c in vec(m + 2).items()})
        for i in range(m - 4, m + 1):
            assert apply_e(SPACE, i, v) == {}


def test_cutoff_errors():
    shallow = FockSpace(2)
    with pytest.raises(CutoffError):
        shallow.extremal(-8)
    with pytest.raises(CutoffError):
        apply_f(shallow, 5, make_vector([shallow.extremal(0)])[0])
    with pytest.raises(UsageError):
        FockSpace(0)


def test_cutoff_env(monkeypatch):
    monkeypatch.setenv("FUSION_CUTOFF", "5")
    assert cutoff_depth() == 5
    assert FockSpace().floor == -5
    monkeypatch.setenv("FUSION_CUTOFF", "deep")
    with pytest.raises(UsageError):
        cutoff_depth()
    monkeypatch.delenv("FUSION_CUTOFF")
    assert cutoff_depth() == 12


def test_cutoff_depth_does_not_matter():
    for a in [(2, 3), (2, 2, 2), (3, 4)]:
        assert w_span_character(a, 40, depth=10) == w_span_character(a, 40, depth=16)
        assert graded_span_character(a, 40, depth=10) == graded_span_character(a, 40, depth=16)


def power_series(space, v, power, n_max):
    """z^n coefficients (n <= n_max) of e(z)^power v."""
    low = 2 * space.floor + 2  # e_i vanishes identically for i < low
    coeffs = {0: v}
    for t in range(power):
        left = power - t - 1
        nxt = {}
        for c, w in coeffs.items():
            for i in range(low, n_max - left * low - c + 1):
                image = apply_e(space, i, w)
                if image:
                    nxt[c + i] = add_vectors(nxt.get(c + i, {}), image)
        coeffs = {c: w for c, w in nxt.items() if w}
    return {c: w for c, w in coeffs.items() if c <= n_max}


@pytest.mark.parametrize("factors", [(0,), (-1,), (2,), (0, 1), (-1, 1)])
def test_current_nilpotency(factors):
    space = FockSpace(3)
    v = vec(*factors, space=space)
    k = len(factors)
    assert power_series(space, v, k + 1, 4) == {}
    assert power_series(space, v, k, 4) != {}


ops = st.sampled_from(["psi", "phi", "psi_star", "phi_star"])


def apply_op(name, i, terms):
    out = {}
    for cfg, c in terms.items():
        r = getattr(SPACE, name)(i, cfg)
        if r is not None:
            out[r[1]] = out.get(r[1], 0) + c * r[0]
    return out


@settings(max_examples=200, deadline=None)
@given(ops, st.integers(-5, 5), ops, st.integers(-5, 5), st.integers(-4, 4))
def test_fermions_anticommute(x, i, y, j, m):
    start = {SPACE.extremal(m): 1}
    total = add_vectors(apply_op(y, j, apply_op(x, i, start)),
                        apply_op(x, i, apply_op(y, j, start)))
    dual = {("psi", "psi_star"), ("psi_star", "psi"), ("phi", "phi_star"), ("phi_star", "phi")}
    expected = start if (x, y) in dual and i == -j else {}
    assert total == expected


@pytest.mark.parametrize("factors", [(0,), (0, 1), (-1, 1), (2, -1, 0)])
def test_current_relations(factors):
    v = vec(*factors)
    k = len(factors)
    base = vector_degree(SPACE, v)
    for i in range(-2, 3):
        e = apply_e(SPACE, i, v)
        if e:
            assert vector_degree(SPACE, e) == (base[0] + 4 * i, base[1] + 2)
        f = apply_f(SPACE, i, v)
        if f:
            assert vector_degree(SPACE, f) == (base[0] + 4 * i, base[1] - 2)
        bracket = add_vectors(apply_e(SPACE, i, apply_f(SPACE, -i, v)),
                              apply_f(SPACE, -i, apply_e(SPACE, i, v)), -1)
        assert bracket == add_vectors(apply_h(SPACE, 0, v), v, i * k)
        he = add_vectors(apply_h(SPACE, 0, e), apply_e(SPACE, i, apply_h(SPACE, 0, v)), -1)
        assert he == {key: -2 * c for key, c in e.items()}


@pytest.mark.parametrize("a", avectors_up_to(36), ids=str)
def test_spans_match_characters(a):
    assert span_dimension(a) == fusion_dimension(a)
    assert w_span_character(a, 400) == fusion_character(a, 400)
    assert graded_span_character(a, 40) == m_character(dvector_of(a), 40)


@pytest.mark.parametrize("a", [(1, 2), (1, 1, 2, 3), (1, 2, 2), (1, 1, 3)], ids=str)
def test_trivial_factors_drop_out(a):
    assert graded_span_character(a, 40) == m_character(dvector_of(a).stripped(), 40)


@pytest.mark.parametrize("a", [a for a in avectors_up_to(36) if len(a) <= 4], ids=str)
def test_relations_annihilate(a):
    k = max(a) - 1
    assert ideal_annihilation_check(a, k + 2)


def test_relation_count_is_sharp():
    # one more vanishing coefficient would already fail
    from sl2fusion.fermion_oracle import _power_coefficients, v_A_factors
    for a, i in [((2, 2), 2), ((2, 3), 2), ((2, 3), 3), ((3, 3), 3), ((3, 3), 4)]:
        space = FockSpace(12)
        v = make_vector(v_A_factors(space, dvector_of(a)))[0]
        need = sum(max(i + 1 - x, 0) for x in a)
        coeffs = _power_coefficients(space, v, len(a), i, need + 1)
        assert not any(coeffs[:need]) and coeffs[need]


@pytest.mark.parametrize("d", [(0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 0, 0), (1, 1, 1)])
def test_winf_span(d):
    D = Composition(d)
    assert winf_span_character(D, 32) == w_infinity_character(D, 32)


def test_embedding_constants():
    expected = {(0, 0): -2, (0, 1): -12, (0, 0, 1): 17280, (0, 1, 0): 720, (0, 2): 144}
    for d, c in expected.items():
        assert embedding_constant(Composition(d)) == Fraction(c)


def test_extremal_modules():
    assert extremal_composition((2,)) == Composition((0, 2))
    assert extremal_composition((2, 1)) == Composition((0, 1, 1))
    with pytest.raises(UsageError):
        extremal_composition((1, 2))
    for b in [(1,), (2,), (3,), (2, 1), (2, 2)]:
        assert extremal_module_check(b, 24)
