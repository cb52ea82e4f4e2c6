import pytest
from hypothesis import given
from hypothesis import strategies as st

from conifold.config import ConfigMatrix, ambients_up_to, enumerate_configs
from conifold.curves import CurveParametrization, coordinate_axis_curve, diagonal_curve
from conifold.incidence import (
    REPARAMETRIZATION,
    check_all_pairs,
    check_inequality,
    curves_meet,
    dim_curve_space,
    dim_incident_pair_space,
    dim_section_space,
    fiber_codim_closed,
    fiber_codim_oracle,
    standard_pair_representatives,
)
from conifold.multiring import AmbientSpace, BinaryForm, ones, unit


def test_section_space_dims(quintic, bicubic):
    assert dim_section_space(quintic) == 126
    assert dim_section_space(bicubic) == 100
    relaxed = ConfigMatrix.of((1, 4), [[2, 5], [0, 0]])
    assert dim_section_space(relaxed) == 3 * 126 + 1


def test_curve_space_dims():
    assert dim_curve_space(AmbientSpace((4,)), (1,)) == 9
    assert dim_curve_space(AmbientSpace((2, 2)), (1, 1)) == 10
    with pytest.raises(ValueError):
        dim_curve_space(AmbientSpace((3,)), (0,))


ambient_factors = st.lists(st.integers(1, 6), min_size=2, max_size=5)


@given(ambient_factors)
def test_pair_space_matches_aggregate_formulas(factors):
    amb = AmbientSpace(tuple(factors))
    n = factors
    k, total = len(n), sum(n)
    e1, e2, e = unit(k, 1), unit(k, 2), ones(k)
    axis_axis = dim_incident_pair_space(amb, e1, e2)
    assert axis_axis == n[0] + n[1] + total + 4
    assert axis_axis - REPARAMETRIZATION == 2 * n[0] + 2 * n[1] + sum(n[2:]) - 2
    axis_diag = dim_incident_pair_space(amb, e1, e)
    assert axis_diag == 2 * total + k + n[0] + 3
    assert axis_diag - REPARAMETRIZATION == 2 * sum(x - 1 for x in n) + 3 * (k - 1) + n[0]
    assert dim_incident_pair_space(amb, e, e1) == axis_diag
    assert dim_incident_pair_space(amb, e2, e1) == axis_axis


def test_equal_degrees_rejected():
    amb = AmbientSpace((2, 2))
    with pytest.raises(ValueError):
        dim_incident_pair_space(amb, (1, 0), (1, 0))


def test_closed_form_examples(bicubic, p1p4):
    assert fiber_codim_closed(p1p4, "axis1", "axis2") == 9
    assert fiber_codim_closed(bicubic, "axis1", "axis2") == 7
    assert fiber_codim_closed(bicubic, "axis1", "diagonal") == 10
    assert fiber_codim_closed(bicubic, "diagonal", "axis2") == 10


def test_oracle_examples(bicubic):
    amb = bicubic.ambient
    a1, a2, d = coordinate_axis_curve(amb, 1), coordinate_axis_curve(amb, 2), diagonal_curve(amb)
    assert fiber_codim_oracle(bicubic, a1, a2) == 7
    assert fiber_codim_oracle(bicubic, a1, d) == 10
    assert fiber_codim_oracle(bicubic, a1, a1) == 4


def test_oracle_rejects_disjoint_curves(bicubic):
    amb = bicubic.ambient
    one, zero = BinaryForm.constant(1), BinaryForm.zero(0)
    s, t, z = BinaryForm.monomial(1, 0), BinaryForm.monomial(0, 1), BinaryForm.zero(1)
    far = CurveParametrization(amb, ((s, t, z), (zero, zero, one)))
    base_axis2 = coordinate_axis_curve(amb, 2)
    assert not curves_meet(far, base_axis2)
    assert curves_meet(coordinate_axis_curve(amb, 1), base_axis2)
    with pytest.raises(ValueError):
        fiber_codim_oracle(bicubic, far, base_axis2)


def test_skew_representative_used_when_possible():
    reps = standard_pair_representatives(AmbientSpace((2, 2)), "axis1", "diagonal")
    assert len(reps) == 2
    assert len(standard_pair_representatives(AmbientSpace((1, 4)), "axis1", "diagonal")) == 1


def test_inequality_examples(bicubic, p1p4):
    r = check_inequality(bicubic, "axis1", "axis2")
    assert (r.dim_pair_space, r.fiber_codim_closed, r.fiber_codim_oracle) == (12, 7, 7)
    assert r.holds and r.margin == 1
    r = check_inequality(bicubic, "axis1", "diagonal")
    assert (r.dim_pair_space, r.fiber_codim_closed, r.fiber_codim_oracle) == (15, 10, 10)
    assert r.holds and r.margin == 1
    r = check_inequality(p1p4, "axis1", "axis2")
    assert (r.dim_pair_space, r.fiber_codim_closed) == (14, 9)
    assert r.holds and r.margin == 1


def test_pair_lists(quintic, bicubic):
    reports = check_all_pairs(bicubic)
    assert len(reports) == 3 and all(r.covered and r.holds for r in reports)
    (only,) = check_all_pairs(quintic)
    assert not only.covered and "not covered" in only.note
    cfg = enumerate_configs(AmbientSpace((1, 1, 3)))[0]
    assert len(check_all_pairs(cfg, oracle=False)) == 6


def test_oracle_agrees_with_closed_form_up_to_5():
    for amb in ambients_up_to(5):
        for cfg in enumerate_configs(amb):
            for r in check_all_pairs(cfg):
                if r.covered:
                    assert r.fiber_codim_oracle == r.fiber_codim_closed, (cfg, r.kind1, r.kind2)
                    assert r.margin >= 1
