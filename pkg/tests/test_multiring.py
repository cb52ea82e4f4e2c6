import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conifold.curves import coordinate_axis_curve, diagonal_curve
from conifold.exact import QQ, PrimeField
from conifold.multiring import (
    AmbientSpace,
    BinaryForm,
    CohomologyClass,
    MultiHomogPoly,
    coh_integrate,
    coh_inverse,
    count_monomials,
    forms_have_common_root,
    monomials,
    substitute,
)

P4 = AmbientSpace((4,))
P22 = AmbientSpace((2, 2))


def X(amb, j, r, field=QQ):
    return MultiHomogPoly.variable(amb, j, r, field)


def as_sympy(f: MultiHomogPoly):
    syms = sympy.symbols(f"x0:{f.ambient.nvars}")
    return sympy.Add(*[c * sympy.Mul(*[v**e for v, e in zip(syms, exps)]) for exps, c in f.terms.items()]), syms


def test_product_of_two_variables():
    amb = AmbientSpace((2, 1))
    f = X(amb, 1, 0) * X(amb, 1, 1)
    assert f.multidegree == (2, 0)
    assert f.terms == {(1, 1, 0, 0, 0): 1}


def test_multiply_by_one():
    f = X(P22, 1, 0) * X(P22, 2, 1) - X(P22, 1, 1) * X(P22, 2, 0)
    assert f * MultiHomogPoly.one(P22) == f


def test_product_against_sympy_expansion():
    f = X(P22, 1, 0) * X(P22, 2, 1) - X(P22, 1, 1) * X(P22, 2, 0)
    g = X(P22, 1, 0)
    prod = f * g
    assert len(prod.terms) == 2
    pe, syms = as_sympy(prod)
    fe, _ = as_sympy(f)
    ge, _ = as_sympy(g)
    assert sympy.expand(fe * ge - pe) == 0


def test_three_term_expansion():
    amb = AmbientSpace((2, 2))
    f = X(amb, 1, 0) * X(amb, 2, 1) - X(amb, 1, 1) * X(amb, 2, 0) + X(amb, 1, 2) * X(amb, 2, 2)
    prod = f * X(amb, 1, 0)
    assert len(prod.terms) == 3
    pe, _ = as_sympy(prod)
    fe, syms = as_sympy(f)
    assert sympy.expand(fe * syms[0] - pe) == 0


def test_inhomogeneous_terms_rejected():
    with pytest.raises(ValueError):
        MultiHomogPoly(P4, (1,), {(2, 0, 0, 0, 0): 1})


def test_substitution_examples():
    axis = coordinate_axis_curve(P4, 1)
    assert substitute(X(P4, 1, 2), axis).is_zero()
    assert substitute(X(P4, 1, 0), axis) == BinaryForm(1, (0, 1))
    bil = X(P22, 1, 0) * X(P22, 2, 1) - X(P22, 1, 1) * X(P22, 2, 0)
    assert substitute(bil, diagonal_curve(P22)).is_zero()


def test_monomial_counts():
    assert count_monomials(P4, (5,)) == 126
    assert count_monomials(P22, (3, 3)) == 100
    assert count_monomials(P22, (0, 0)) == 1
    assert sum(1 for _ in monomials(P22, (3, 3))) == 100


def random_poly(draw, amb, deg, field):
    monos = list(monomials(amb, deg))
    picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=5))
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=len(picks), max_size=len(picks)))
    f = MultiHomogPoly.zero(amb, deg, field)
    for exps, c in zip(picks, coeffs):
        f = f + MultiHomogPoly.monomial(amb, exps, c, field)
    return f


@st.composite
def poly_pair(draw):
    amb = AmbientSpace((1, 2))
    d1 = (draw(st.integers(0, 2)), draw(st.integers(0, 2)))
    d2 = (draw(st.integers(0, 2)), draw(st.integers(0, 2)))
    return random_poly(draw, amb, d1, QQ), random_poly(draw, amb, d2, QQ)


@given(poly_pair())
@settings(max_examples=80, deadline=None)
def test_substitution_is_a_ring_homomorphism(pair):
    f, g = pair
    for curve in (diagonal_curve(f.ambient), coordinate_axis_curve(f.ambient, 2)):
        assert substitute(f * g, curve) == substitute(f, curve) * substitute(g, curve)
        if f.multidegree == g.multidegree:
            assert substitute(f + g, curve) == substitute(f, curve) + substitute(g, curve)


def test_common_roots():
    s, t = BinaryForm.monomial(1, 0), BinaryForm.monomial(0, 1)
    assert forms_have_common_root([s * t, s * (s + t)])
    assert not forms_have_common_root([s * s, t * (s + t)])
    assert forms_have_common_root([t * t, t * s])  # shared root at infinity
    assert not forms_have_common_root([s, BinaryForm.constant(1)])


# ---- cohomology ring


def e(amb, j=1):
    return CohomologyClass.generator(amb, j)


def test_truncation():
    one = CohomologyClass.one(P4)
    assert (e(P4) * e(P4) ** 4).terms == {}
    assert one * (e(P4) * 3) == e(P4) * 3


def test_binomial_coefficient():
    c = (CohomologyClass.one(P4) + e(P4)) ** 5
    assert c.terms[(3,)] == 10


def test_integration():
    assert coh_integrate(e(P22, 1) ** 2 * e(P22, 2) ** 2) == 1
    assert coh_integrate(e(P22, 1) ** 2) == 0
    assert coh_integrate(5 * e(P4) * (10 * e(P4) ** 2)) == 0
    assert coh_integrate(5 * e(P4) * (10 * e(P4) ** 3)) == 50


def test_inverses():
    one = CohomologyClass.one(P4)
    assert coh_inverse(one) == one
    P2 = AmbientSpace((2,))
    inv = coh_inverse(CohomologyClass.one(P2) + e(P2))
    assert inv.terms == {(0,): 1, (1,): -1, (2,): 1}
    c = one + 5 * e(P4)
    inv = coh_inverse(c)
    assert inv.terms == {(0,): 1, (1,): -5, (2,): 25, (3,): -125, (4,): 625}
    assert c * inv == one
    with pytest.raises(ValueError):
        coh_inverse(2 * one)


def test_prime_field_polys_reduce():
    F = PrimeField(7)
    f = MultiHomogPoly.monomial(P4, (1, 0, 0, 0, 0), 8, F)
    assert f.terms == {(1, 0, 0, 0, 0): 1}
    assert MultiHomogPoly.monomial(P4, (1, 0, 0, 0, 0), 7, F).is_zero()
