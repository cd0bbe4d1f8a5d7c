from __future__ import annotations

import cmath
import math

import pytest

from merolocus.angles import (
    AngleKind,
    arrival_angle,
    arrival_fan,
    departure_angle,
    departure_fan,
    is_simple_by_gap,
    opposite_gap_pole,
    opposite_gap_zero,
)
from merolocus.catalog import named_rational
from merolocus.errors import DegenerateGeometry, InvalidIndex, NonPositiveExponent
from merolocus.model import ComplexPoint, Form, MeromorphicSpec, PoleTerm, ZeroTerm, evaluate
from merolocus.phase import PhaseTarget

T0 = PhaseTarget.from_pi_units(0.0)
T_HALF = PhaseTarget.from_pi_units(0.5)
T_PI = PhaseTarget.from_pi_units(1.0)
T_3HALF = PhaseTarget.from_pi_units(1.5)

ONE_ZERO = MeromorphicSpec(form=Form.BODE, zeros=(ZeroTerm(ComplexPoint(1.0, 0.0), 1.0),))


def test_departure_single_pole_against_evaluation_oracle():
    spec = named_rational("single_pole")
    # oracle: arg W just right of the pole is pi, just left is 0
    eps = 1e-6
    assert evaluate(spec, 1.0 + eps).phase == pytest.approx(math.pi, abs=1e-9)
    assert evaluate(spec, 1.0 - eps).phase == pytest.approx(0.0, abs=1e-9)
    assert departure_angle(spec, 0, T_PI).theta == pytest.approx(0.0, abs=1e-15)
    assert departure_angle(spec, 0, T0).theta == pytest.approx(math.pi, abs=1e-15)


def test_departure_slope_with_repeated_pole():
    spec = MeromorphicSpec(form=Form.BODE, poles=(PoleTerm(ComplexPoint(1.0, 0.0), 2.0),))
    a_pi = departure_angle(spec, 0, T_PI)
    a_0 = departure_angle(spec, 0, T0)
    # slope -1/beta: degrees pi apart map to angles pi/2 apart
    assert abs(a_0.theta_affine - a_pi.theta_affine) == pytest.approx(math.pi / 2, abs=1e-15)


def test_arrival_one_zero_against_evaluation_oracle():
    eps = 1e-6
    # W = 1 - s: positive left of the zero, negative right of it
    assert evaluate(ONE_ZERO, 1.0 - eps).phase == pytest.approx(0.0, abs=1e-12)
    assert evaluate(ONE_ZERO, 1.0 + eps).phase == pytest.approx(math.pi, abs=1e-12)
    assert arrival_angle(ONE_ZERO, 0, T0).theta == pytest.approx(math.pi, abs=1e-15)
    assert arrival_angle(ONE_ZERO, 0, T_PI).theta == pytest.approx(0.0, abs=1e-12)


def test_arrival_fractional_zero_same_ray():
    spec = MeromorphicSpec(form=Form.BODE, zeros=(ZeroTerm(ComplexPoint(1.0, 0.0), 0.5),))
    a_0 = arrival_angle(spec, 0, T0)
    a_pi = arrival_angle(spec, 0, T_PI)
    # slope +1/gamma = 2: degrees pi apart differ by 2*pi, the same ray
    assert a_pi.theta_affine - a_0.theta_affine == pytest.approx(2 * math.pi, abs=1e-15)
    assert a_pi.theta == pytest.approx(a_0.theta, abs=1e-12)


def test_opposite_gaps():
    assert opposite_gap_pole(1.0) == math.pi
    assert opposite_gap_pole(2.0) == 2 * math.pi
    assert opposite_gap_pole(0.5) == 0.5 * math.pi
    assert opposite_gap_zero(1.0) == math.pi
    assert opposite_gap_zero(3.0) == 3 * math.pi
    assert opposite_gap_zero(0.25) == 0.25 * math.pi
    with pytest.raises(NonPositiveExponent):
        opposite_gap_pole(0.0)
    with pytest.raises(NonPositiveExponent):
        opposite_gap_zero(-1.0)


def test_departure_fan_single_pole():
    spec = named_rational("single_pole")
    fan = departure_fan(spec, 0, [T0, T_HALF, T_PI, T_3HALF])
    # theta = pi - degree
    assert [a.theta for _, a in fan.entries] == pytest.approx(
        [math.pi, math.pi / 2, 0.0, 3 * math.pi / 2], abs=1e-12)
    degrees = [t.degree for t, _ in fan.entries]
    assert degrees == sorted(degrees)


def test_fan_trivial_sizes():
    spec = named_rational("single_pole")
    assert len(departure_fan(spec, 0, [T_PI]).entries) == 1
    assert arrival_fan(ONE_ZERO, 0, []).entries == ()


def test_fan_repeated_pole_covers_full_turn():
    spec = MeromorphicSpec(form=Form.BODE, poles=(PoleTerm(ComplexPoint(1.0, 0.0), 2.0),))
    width = 2 * 2.0 * math.pi  # one 2*beta*pi window
    targets = [PhaseTarget.from_degree(i * width / 8) for i in range(8)]
    fan = departure_fan(spec, 0, targets)
    thetas = sorted(a.theta for _, a in fan.entries)
    assert len(set(round(t, 9) for t in thetas)) == 8
    gaps = [b - a for a, b in zip(thetas, thetas[1:])]
    assert gaps == pytest.approx([2 * math.pi / 8] * 7, abs=1e-9)


def test_fan_affine_law():
    for name in ("single_pole", "three_pole", "fractional_pole"):
        spec = named_rational(name)
        for k, pole in enumerate(spec.poles):
            width = 2 * pole.exponent * math.pi
            targets = [PhaseTarget.from_degree(i * width / 16) for i in range(16)]
            fan = departure_fan(spec, k, targets)
            for (t1, a1), (t2, a2) in zip(fan.entries, fan.entries[1:]):
                resid = (a2.theta_affine - a1.theta_affine) * pole.exponent \
                    + (t2.degree - t1.degree)
                assert abs(resid) <= 1e-12


def test_is_simple_by_gap():
    assert is_simple_by_gap(math.pi, 1e-9)
    assert not is_simple_by_gap(math.pi / 2, 1e-9)
    assert is_simple_by_gap(2 * math.pi, 1e-9)
    assert not is_simple_by_gap(0.0, 1e-9)
    assert not is_simple_by_gap(-math.pi, 1e-9)


def test_degenerate_geometry_and_index_errors():
    spec = named_rational("single_pole")
    with pytest.raises(InvalidIndex):
        departure_angle(spec, 3, T_PI)
    with pytest.raises(InvalidIndex):
        arrival_angle(spec, 0, T_PI)  # no zeros at all
    clash = MeromorphicSpec(
        form=Form.BODE,
        zeros=(ZeroTerm(ComplexPoint(1.0, 0.0), 0.5),),
        poles=(PoleTerm(ComplexPoint(1.0, 0.0), 1.0),),
    )
    with pytest.raises(DegenerateGeometry):
        departure_angle(clash, 0, T_PI)


def test_direction_angle_metadata():
    spec = named_rational("single_pole")
    angle = departure_angle(spec, 0, T_PI)
    assert angle.kind is AngleKind.DEPARTURE
    assert angle.anchor_index == 0
    assert 0.0 <= angle.theta < 2 * math.pi
    assert angle.degree is T_PI


def test_root_form_drops_bode_constants():
    # two_pole = 1/(s(s+1)): departures onto the segment (-1, 0)
    spec = named_rational("two_pole")
    assert departure_angle(spec, 0, T_PI).theta == pytest.approx(math.pi, abs=1e-12)
    assert departure_angle(spec, 1, T_PI).theta == pytest.approx(0.0, abs=1e-12)
    # oracle: W(-0.5) = 1/(-0.25) < 0, so the segment really is the pi locus
    assert evaluate(spec, -0.5).phase == pytest.approx(math.pi, abs=1e-15)
