from __future__ import annotations

import cmath
import math

import pytest

from conftest import direct_product_value, random_rational_spec, regular_sample_points
from merolocus.catalog import named_rational
from merolocus.errors import NotRegularPoint
from merolocus.model import (
    ComplexPoint,
    EntireFactor,
    Form,
    FunctionValue,
    MeromorphicSpec,
    PoleTerm,
    ValueKind,
    ZeroTerm,
    cancel_coincident,
    dump_spec,
    evaluate,
    is_regular_point,
    load_spec,
    log_derivative,
    phase_terms,
    spec_from_dict,
    spec_to_dict,
    wrap_angle,
)


def bode_spec(zeros=(), poles=(), origin=0.0, prefactor=None):
    return MeromorphicSpec(
        form=Form.BODE,
        prefactor=prefactor or EntireFactor(),
        origin_order=origin,
        zeros=tuple(ZeroTerm(ComplexPoint.of(z), e) for z, e in zeros),
        poles=tuple(PoleTerm(ComplexPoint.of(p), e) for p, e in poles),
    )


# -- evaluate -----------------------------------------------------------------


def test_evaluate_identity_point():
    spec = named_rational("single_pole")  # W = 1/(1-s)
    value = evaluate(spec, 0.0)
    assert value.kind is ValueKind.REGULAR
    assert value.log_magnitude == 0.0
    assert value.phase == 0.0


def test_evaluate_flags_pole():
    spec = named_rational("single_pole")
    value = evaluate(spec, 1.0)
    assert value.kind is ValueKind.POLE
    assert value.log_magnitude == math.inf


def test_evaluate_direct_arithmetic_point():
    # oracle: 1/(1 - (1 + 0.5i)) = 1/(-0.5i) = 2i exactly
    assert 1.0 / (1.0 - (1.0 + 0.5j)) == 2j
    value = evaluate(named_rational("single_pole"), 1.0 + 0.5j)
    assert value.log_magnitude == pytest.approx(math.log(2.0), abs=1e-15)
    assert value.phase == pytest.approx(math.pi / 2.0, abs=1e-15)
    assert value.as_complex() == pytest.approx(2j, abs=1e-15)


def test_evaluate_zero_flag_and_origin():
    spec = bode_spec(zeros=[(2.0, 0.5)])
    assert evaluate(spec, 2.0).kind is ValueKind.ZERO
    assert evaluate(spec, 2.0).log_magnitude == -math.inf
    with_origin = MeromorphicSpec(form=Form.ROOT, origin_order=1.0)
    assert evaluate(with_origin, 0.0).kind is ValueKind.ZERO
    inverse_origin = MeromorphicSpec(form=Form.ROOT, origin_order=-2.0)
    assert evaluate(inverse_origin, 0.0).kind is ValueKind.POLE


def test_snap_radius_classification():
    spec = named_rational("single_pole")
    assert evaluate(spec, 1.0 + 1e-13).kind is ValueKind.POLE
    assert evaluate(spec, 1.0 + 1e-13, snap=1e-15).kind is ValueKind.REGULAR


# -- log_derivative -----------------------------------------------------------


def test_log_derivative_examples():
    # d/ds(-log(1-s)) = 1/(1-s) -> 1 at 0
    assert log_derivative(named_rational("single_pole"), 0.0) == pytest.approx(1.0, abs=1e-15)
    # W = s: W'/W = 1/s
    w_s = MeromorphicSpec(form=Form.ROOT, origin_order=1.0)
    assert log_derivative(w_s, 2.0) == pytest.approx(0.5, abs=1e-15)
    # sum of factor contributions: 1/(s-2) - 1/(s-1) at 0 -> -0.5 + 1 = 0.5
    assert log_derivative(named_rational("pole_zero_pair"), 0.0) == pytest.approx(0.5, abs=1e-15)


def test_log_derivative_requires_regular_point():
    with pytest.raises(NotRegularPoint):
        log_derivative(named_rational("single_pole"), 1.0)


def test_log_derivative_matches_branch_consistent_finite_differences(rng):
    h = 1e-6
    checked = 0
    while checked < 100:
        spec = random_rational_spec(rng)
        for s in regular_sample_points(spec, rng, 4, min_anchor_distance=0.1):
            vp = evaluate(spec, s + h)
            vm = evaluate(spec, s - h)
            if vp.kind is not ValueKind.REGULAR or vm.kind is not ValueKind.REGULAR:
                continue
            fd = complex(
                (vp.log_magnitude - vm.log_magnitude) / (2 * h),
                wrap_angle(vp.phase - vm.phase) / (2 * h),
            )
            assert abs(log_derivative(spec, s) - fd) <= 1e-6 * (1.0 + abs(fd))
            checked += 1


# -- phase terms ---------------------------------------------------------------


def test_phase_terms_single_pole():
    terms = phase_terms(named_rational("single_pole"), 1.0 + 0.5j)
    assert len(terms) == 1
    # -arg(-0.5i) = pi/2
    assert terms[0] == pytest.approx(math.pi / 2.0, abs=1e-15)


def test_phase_terms_cancelled_spec_is_empty():
    # W = s * (1/s): net origin order zero, no factors left
    spec = MeromorphicSpec(form=Form.ROOT, origin_order=0.0)
    assert phase_terms(spec, 3.0 + 1.0j) == []


def test_phase_terms_sum_matches_sign_analysis():
    # W(1.5) = (1 - 0.75)/(1 - 1.5) = -0.5: phase pi (mod 2 pi)
    total = sum(phase_terms(named_rational("pole_zero_pair"), 1.5))
    assert wrap_angle(total) == pytest.approx(math.pi, abs=1e-12)


def test_phase_terms_additivity_property(rng):
    for _ in range(40):
        spec = random_rational_spec(rng)
        for s in regular_sample_points(spec, rng, 5):
            value = evaluate(spec, s)
            total = sum(phase_terms(spec, s))
            assert abs(wrap_angle(total - value.phase)) <= 1e-10


def test_phase_terms_requires_regular_point():
    with pytest.raises(NotRegularPoint):
        phase_terms(named_rational("single_pole"), 1.0)


# -- is_regular_point ----------------------------------------------------------


def test_is_regular_point_cases():
    spec = named_rational("single_pole")
    assert not is_regular_point(spec, 1.0)
    assert is_regular_point(spec, 0.0)
    half = bode_spec(zeros=[(2.0, 0.5)])
    assert not is_regular_point(half, 2.0)


# -- cancel_coincident ----------------------------------------------------------


def test_cancel_full_pair_removed():
    raw = bode_spec(zeros=[(1.0, 1.0)], poles=[(1.0, 1.0)])
    cancelled = cancel_coincident(raw)
    assert cancelled.zeros == () and cancelled.poles == ()
    # the removable point is evaluable only after cancellation
    with pytest.raises(ValueError):
        evaluate(raw, 1.0)
    assert evaluate(cancelled, 1.0).kind is ValueKind.REGULAR


def test_cancel_partial_pair_keeps_difference():
    spec = bode_spec(zeros=[(1.0, 2.0)], poles=[(1.0, 0.5)])
    out = cancel_coincident(spec)
    assert out.poles == ()
    assert len(out.zeros) == 1
    assert out.zeros[0].exponent == pytest.approx(1.5)
    assert out.zeros[0].location == ComplexPoint(1.0, 0.0)


def test_cancel_disjoint_is_identity_and_idempotent():
    spec = named_rational("pole_zero_pair")
    assert cancel_coincident(spec) is spec
    partial = bode_spec(zeros=[(1.0, 2.0)], poles=[(1.0, 0.5)])
    once = cancel_coincident(partial)
    assert cancel_coincident(once) == once


def test_cancel_preserves_value_with_corrections():
    corr_z = EntireFactor((0.1 + 0.2j, 0.05j), weierstrass_order=2)
    corr_p = EntireFactor((0.3,), weierstrass_order=1)
    zero = ZeroTerm(ComplexPoint(1.5, 0.5), 2.0, corr_z)
    pole = PoleTerm(ComplexPoint(1.5, 0.5), 0.75, corr_p)
    raw = MeromorphicSpec(form=Form.ROOT, zeros=(zero,), poles=(pole,))
    out = cancel_coincident(raw)
    assert len(out.zeros) == 1 and out.poles == ()
    for s in (0.2 + 0.1j, -1.0 + 2.0j, 3.0 - 0.4j):
        before = direct_product_value(raw, s)
        after = evaluate(out, s)
        assert cmath.isclose(after.as_complex(), before, rel_tol=1e-12)


# -- reconstruction property -----------------------------------------------------


def test_reconstruction_against_direct_products(rng):
    total = 0
    while total < 1000:
        spec = random_rational_spec(rng)
        for s in regular_sample_points(spec, rng, 10):
            oracle = direct_product_value(spec, s)
            if not (1e-12 < abs(oracle) < 1e12):
                continue
            mine = evaluate(spec, s).as_complex()
            assert cmath.isclose(mine, oracle, rel_tol=1e-12)
            total += 1


def test_function_value_flags_and_reconstruction():
    assert FunctionValue.zero().kind is ValueKind.ZERO
    assert FunctionValue.zero().log_magnitude == -math.inf
    assert FunctionValue.pole().log_magnitude == math.inf
    regular = FunctionValue.regular(complex(0.5, 0.3))
    w = regular.as_complex()
    assert w.real == pytest.approx(math.exp(0.5) * math.cos(0.3), abs=1e-15)
    assert w.imag == pytest.approx(math.exp(0.5) * math.sin(0.3), abs=1e-15)
    with pytest.raises(NotRegularPoint):
        FunctionValue.pole().as_complex()


def test_function_value_exact_cardinal_phases():
    assert FunctionValue.regular(complex(0.0, math.pi)).as_complex() == -1.0 + 0j
    assert FunctionValue.regular(complex(0.0, 2 * math.pi)).as_complex() == 1.0 + 0j
    assert FunctionValue.regular(complex(0.0, math.pi / 2)).as_complex() == 1j
    assert FunctionValue.regular(complex(0.0, -math.pi / 2)).as_complex() == -1j


# -- weierstrass corrections ------------------------------------------------------


def test_weierstrass_elementary_factor():
    # E_2(s/z)^gamma = [(1 - s/z) exp(s/z + (s/z)^2/2)]^gamma
    z, gamma = 2.0 + 1.0j, 1.5
    spec = MeromorphicSpec(
        form=Form.BODE,
        zeros=(ZeroTerm(ComplexPoint(z.real, z.imag), gamma,
                        EntireFactor((), weierstrass_order=2)),),
    )
    s = 0.7 - 0.4j
    u = s / z
    oracle = ((1 - u) ** gamma) * cmath.exp(gamma * (u + u * u / 2.0))
    assert cmath.isclose(evaluate(spec, s).as_complex(), oracle, rel_tol=1e-13)


# -- validation -------------------------------------------------------------------


def test_bode_rejects_origin_terms():
    with pytest.raises(ValueError):
        bode_spec(poles=[(0.0, 1.0)])


def test_nonpositive_exponent_rejected():
    with pytest.raises(ValueError):
        ZeroTerm(ComplexPoint(1.0, 0.0), 0.0)


def test_complex_point_requires_finite_coordinates():
    with pytest.raises(ValueError):
        ComplexPoint(math.inf, 0.0)
    hinted = ComplexPoint(1.0, 0.0, at_infinity=True)
    with pytest.raises(ValueError):
        hinted.as_complex()


# -- serialization -----------------------------------------------------------------


def test_spec_round_trip(tmp_path):
    spec = MeromorphicSpec(
        form=Form.BODE,
        prefactor=EntireFactor((0.125 + 0.25j, -0.5j)),
        origin_order=1.0,
        zeros=(ZeroTerm(ComplexPoint(2.0, -0.5), 1.5),),
        poles=(PoleTerm(ComplexPoint(1.0, 0.0), 0.5,
                        EntireFactor((0.1,), weierstrass_order=1)),),
    )
    data = spec_to_dict(spec)
    assert data["form"] == "bode"
    assert data["prefactor"]["exponent_poly"] == [[0.125, 0.25], [0.0, -0.5]]
    assert data["zeros"][0] == {"re": 2.0, "im": -0.5, "exponent": 1.5}
    assert spec_from_dict(data) == spec
    path = tmp_path / "spec.json"
    dump_spec(spec, path)
    assert load_spec(path) == spec
