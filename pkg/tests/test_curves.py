import hashlib
import json

import pytest

from conifold.config import ambients_up_to, enumerate_configs
from conifold.curves import (
    AttemptsExhausted,
    CurveMismatch,
    CurveParametrization,
    combine,
    coordinate_axis_curve,
    curve_kinds,
    defining_data,
    diagonal_curve,
    draw_sections,
    evaluate_draw,
    make_curve,
    psi_spec,
    restriction_rank,
    section_plan,
    smoothness_along_curve,
    verify_normal_bundle,
)
from conifold.exact import PrimeField
from conifold.graded import SplittingType
from conifold.multiring import AmbientSpace, BinaryForm, MultiHomogPoly, substitute
from conifold.rng import Stream

S = BinaryForm(1, (0, 1))
T = BinaryForm(1, (1, 0))
ONE = BinaryForm.constant(1)
Z0 = BinaryForm.zero(0)
Z1 = BinaryForm.zero(1)
F = PrimeField()


def X(amb, j, r, field=F):
    return MultiHomogPoly.variable(amb, j, r, field)


# ---- curves


def test_axis_curve_examples():
    assert coordinate_axis_curve(AmbientSpace((4,)), 1).forms == ((S, T, Z1, Z1, Z1),)
    c = coordinate_axis_curve(AmbientSpace((1, 4)), 2)
    assert c.forms == ((ONE, Z0), (S, T, Z1, Z1, Z1))
    c = coordinate_axis_curve(AmbientSpace((2, 2)), 1)
    assert c.forms == ((S, T, Z1), (ONE, Z0, Z0)) and c.multidegree == (1, 0)


def test_diagonal_curve_examples():
    assert diagonal_curve(AmbientSpace((2, 2))).forms == ((S, T, Z1), (S, T, Z1))
    assert diagonal_curve(AmbientSpace((4,))) == coordinate_axis_curve(AmbientSpace((4,)), 1)
    assert diagonal_curve(AmbientSpace((1, 1, 2))).forms == ((S, T), (S, T), (S, T, Z1))


def test_curve_validation():
    amb = AmbientSpace((1,))
    with pytest.raises(ValueError):
        CurveParametrization(amb, ((S, ONE),))  # mixed degrees
    with pytest.raises(ValueError):
        CurveParametrization(amb, ((S, S),))  # common root
    with pytest.raises(CurveMismatch):
        make_curve(AmbientSpace((2, 2)), "axis3")


def test_defining_data_examples():
    amb = AmbientSpace((4,))
    data = defining_data(amb, "axis1", F)
    assert data.sections == [X(amb, 1, 2), X(amb, 1, 3), X(amb, 1, 4)]
    amb = AmbientSpace((2, 2))
    data = defining_data(amb, "diagonal", F)
    bil = X(amb, 1, 0) * X(amb, 2, 1) - X(amb, 1, 1) * X(amb, 2, 0)
    assert data.sections == [bil, X(amb, 1, 2), X(amb, 2, 2)]
    assert data.ltilde == [(1, 1), (1, 0), (0, 1)]


def test_defining_sections_cut_out_the_curve():
    for amb in ambients_up_to(7):
        for kind in curve_kinds(amb.k):
            data = defining_data(amb, kind, F)
            assert len(data) == amb.dim - 1  # m + 2 with m = dim - 3
            curve = make_curve(amb, kind)
            assert all(substitute(s, curve).is_zero() for s in data.sections)


# ---- V_ji bases


def test_quintic_vji_basis(quintic):
    plan = section_plan(quintic, "axis1")
    amb = quintic.ambient
    expected = [X(amb, 1, 0) ** a * X(amb, 1, 1) ** (4 - a) for a in range(5)]
    assert sorted(b.to_text() for b in plan.vji[0][0]) == sorted(e.to_text() for e in expected)
    assert restriction_rank(plan.vji[0][0], plan.curve, F) == 5


def test_bicubic_axis_basis_in_second_block(bicubic):
    plan = section_plan(bicubic, "axis1")
    amb = bicubic.ambient
    j = plan.defining.sections.index(X(amb, 2, 1))
    basis = plan.vji[j][0]
    assert len(basis) == 4
    for b in basis:
        ((exps, _),) = b.terms.items()
        assert exps[amb.index(2, 0)] == 2 and sum(exps[amb.index(1, 0) : amb.index(1, 1) + 1]) == 3


def test_bicubic_diagonal_vji(bicubic):
    plan = section_plan(bicubic, "diagonal")
    assert plan.restricted_degree(0, 0) == 4
    assert restriction_rank(plan.vji[0][0], plan.curve, F) == 5


# ---- psi


def test_psi_degrees(quintic, bicubic):
    plan = section_plan(quintic, "axis1")
    spec = psi_spec(plan, draw_sections(plan, Stream(0)))
    assert spec.source_degrees == (-1, -1, -1) and spec.target_degrees == (-5,)
    assert all(f.degree == 4 for (f,) in spec.forms)
    plan = section_plan(bicubic, "diagonal")
    spec = psi_spec(plan, draw_sections(plan, Stream(0)))
    assert spec.source_degrees == (-2, -1, -1) and spec.target_degrees == (-6,)


def test_psi_degree_data_consistent_up_to_6():
    for amb in ambients_up_to(6):
        for cfg in enumerate_configs(amb):
            for kind in curve_kinds(amb.k):
                plan = section_plan(cfg, kind)
                spec = psi_spec(plan, draw_sections(plan, Stream(0, str(cfg), kind)))
                assert sum(spec.source_degrees) == sum(spec.target_degrees) + 2
                if kind != "diagonal":
                    i = int(kind[4:])
                    n = amb.factors[i - 1]
                    assert sum(spec.source_degrees) == -(n - 1)
                    assert sorted(set(spec.source_degrees)) in ([-1], [-1, 0], [0])


def test_drawn_sections_vanish_on_curve(p1p4):
    for kind in curve_kinds(2):
        plan = section_plan(p1p4, kind)
        draw = draw_sections(plan, Stream(2, kind))
        assert all(substitute(s, plan.curve).is_zero() for s in draw.sections)


def test_zero_draw_is_rejected(quintic):
    plan = section_plan(quintic, "axis1")
    zeros = [[[0] * len(b) for b in row] for row in plan.vji]
    draw = combine(plan, zeros)
    assert all(s.is_zero() for s in draw.sections)
    verdict = evaluate_draw(plan, draw)
    assert not verdict.passed and "zero" in verdict.error


def test_quintic_section_regression(quintic, vectors):
    plan = section_plan(quintic, "axis1")
    text = draw_sections(plan, Stream(0, "vector", "quintic")).sections[0].to_text()
    pinned = vectors["quintic_axis1_section_seed0"]
    assert hashlib.sha256(text.encode()).hexdigest() == pinned["sha256"]
    assert text.startswith(pinned["text_prefix"])


# ---- smoothness


def quintic_section(amb, q):
    return X(amb, 1, 2) * q[0] + X(amb, 1, 3) * q[1] + X(amb, 1, 4) * q[2]


def binary(amb, coeffs):
    """The degree-4 form ``sum c_a X10^a X11^(4-a)``."""
    out = MultiHomogPoly.zero(amb, (4,), F)
    for a, c in enumerate(coeffs):
        out = out + (X(amb, 1, 0) ** a * X(amb, 1, 1) ** (4 - a)).scale(c)
    return out


def test_generic_quintic_is_smooth_along_line():
    amb = AmbientSpace((4,))
    curve = coordinate_axis_curve(amb, 1)
    q = [binary(amb, c) for c in ([1, 2, 3, 4, 5], [7, 0, 1, 0, 2], [3, 3, 0, 1, 1])]
    assert smoothness_along_curve([quintic_section(amb, q)], curve)


def test_squared_section_is_singular():
    amb = AmbientSpace((4,))
    curve = coordinate_axis_curve(amb, 1)
    s = X(amb, 1, 2) ** 2 * X(amb, 1, 0) ** 3
    assert not smoothness_along_curve([s], curve)


def test_common_root_of_all_minors_is_singular():
    amb = AmbientSpace((4,))
    curve = coordinate_axis_curve(amb, 1)
    # every q_r restricts to a multiple of s, so all minors vanish at s = 0
    q = [binary(amb, c) for c in ([0, 1, 2, 0, 1], [0, 0, 1, 5, 0], [0, 3, 0, 0, 1])]
    assert not smoothness_along_curve([quintic_section(amb, q)], curve)


def test_two_shared_roots_are_not_enough():
    amb = AmbientSpace((4,))
    curve = coordinate_axis_curve(amb, 1)
    q = [binary(amb, c) for c in ([0, 1, 2, 0, 1], [0, 0, 1, 5, 0], [1, 3, 0, 0, 1])]
    assert smoothness_along_curve([quintic_section(amb, q)], curve)


def test_root_at_infinity_detected():
    amb = AmbientSpace((4,))
    curve = coordinate_axis_curve(amb, 1)
    # each q_r|_C has no s^4 term, so all minors vanish at t = 0
    q = [binary(amb, c) for c in ([1, 1, 2, 0, 0], [2, 0, 1, 5, 0], [1, 3, 0, 1, 0])]
    assert not smoothness_along_curve([quintic_section(amb, q)], curve)


def test_section_must_vanish_on_curve():
    amb = AmbientSpace((4,))
    with pytest.raises(ValueError):
        smoothness_along_curve([X(amb, 1, 0) ** 5], coordinate_axis_curve(amb, 1))


# ---- end to end


def test_pinned_witnesses(quintic, bicubic, vectors):
    for cfg, kinds in ((quintic, ["axis1", "diagonal"]), (bicubic, ["axis1", "axis2", "diagonal"])):
        for kind in kinds:
            v = verify_normal_bundle(cfg, kind, Stream(0, "vector", str(cfg), kind))
            pinned = vectors[f"witness {cfg} {kind}"]
            assert v.passed and v.splitting == SplittingType((-1, -1))
            assert v.attempts == pinned["attempts"]
            assert v.profile.to_json() == pinned["profile"]
            digest = hashlib.sha256(json.dumps(v.to_json()["witness"], sort_keys=True).encode()).hexdigest()
            assert digest == pinned["psi_sha256"]


def test_all_small_configs_certified():
    for amb in ambients_up_to(6):
        for cfg in enumerate_configs(amb):
            for kind in curve_kinds(amb.k):
                v = verify_normal_bundle(cfg, kind, Stream(0, "e2e", str(cfg), kind), max_attempts=5)
                assert v.passed and v.smooth, (cfg, kind)


def test_adversarial_monomial_draw_fails(quintic, bicubic):
    for cfg in (quintic, bicubic):
        for kind in curve_kinds(cfg.k):
            plan = section_plan(cfg, kind)
            # keep only the basis element restricting to the pure power of s
            coeffs = [[[0] * (len(b) - 1) + [1] for b in row] for row in plan.vji]
            verdict = evaluate_draw(plan, combine(plan, coeffs))
            assert not verdict.passed
            assert verdict.splitting != SplittingType((-1, -1))


def test_exhausted_attempts_raise_with_verdict(quintic):
    class ZeroStream:
        def below(self, n):
            return 0

        def integer(self, lo, hi):
            return lo

    with pytest.raises(AttemptsExhausted) as info:
        verify_normal_bundle(quintic, "axis1", ZeroStream(), max_attempts=2)
    assert info.value.verdict.attempts == 2 and not info.value.verdict.passed
