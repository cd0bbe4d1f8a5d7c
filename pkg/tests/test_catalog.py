from __future__ import annotations

import cmath
import math
import random

import pytest

from merolocus.catalog import (
    BLACK_BOX_NAMES,
    RATIONAL_NAMES,
    VALIDITY_REGION,
    ZETA_ZERO_ORDINATES,
    as_black_box_spec,
    catalog_listing,
    eta,
    finite_difference_log_derivative,
    gamma,
    named_rational,
    xi,
    xi_reality_check,
    zeta,
)
from merolocus.errors import OutOfValidityRegion, UnknownFunction
from merolocus.model import Form, ValueKind, wrap_angle
from merolocus.phase import PhaseTarget, gain


# -- independent oracles ----------------------------------------------------------

# Bernoulli numbers for the Stirling oracle only
_STIRLING_B = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66)


def stirling_log_gamma(z: complex, shift: int = 24) -> complex:
    """Independent log-Gamma oracle: recurrence shift + Stirling series.
    Distinct route from the package's Lanczos evaluation."""
    acc = 0j
    w = z
    for _ in range(shift):
        acc -= cmath.log(w)
        w += 1
    out = (w - 0.5) * cmath.log(w) - w + 0.5 * math.log(2 * math.pi)
    for k, b in enumerate(_STIRLING_B, start=1):
        out += b / ((2 * k) * (2 * k - 1) * w ** (2 * k - 1))
    return out + acc


def zeta2_partial_sum_oracle() -> float:
    """sum n^-2 with the Euler-Maclaurin tail from M = N+1:
    sum_{n>=M} n^-2 = 1/M + 1/(2 M^2) + 1/(6 M^3) - 1/(30 M^5) + O(M^-7)."""
    n_terms = 20000
    partial = sum(1.0 / (n * n) for n in range(1, n_terms + 1))
    m = float(n_terms + 1)
    tail = 1.0 / m + 1.0 / (2.0 * m * m) + 1.0 / (6.0 * m ** 3) - 1.0 / (30.0 * m ** 5)
    return partial + tail


def alternating_harmonic_oracle() -> float:
    """eta(1) via the alternating series with the Boole-summation tail:
    sum_{n>=M} (-1)^(n-M)/n = 1/(2M) + 1/(4M^2) - 1/(8M^4) + ..."""
    n_terms = 4000
    partial = sum((-1.0) ** (n - 1) / n for n in range(1, n_terms + 1))
    m = float(n_terms + 1)
    correction = ((-1.0) ** n_terms) * (0.5 / m + 0.25 / (m * m) - 0.125 / m ** 4)
    return partial + correction


def eta_acceleration_oracle(s: complex, n_terms: int = 60) -> complex:
    """Euler-transform acceleration of sum (-1)^(k-1) k^-s; independent of the
    package's Borwein weights."""
    # forward differences of a_k = (k+1)^-s, Euler transform sum d^j a_0 / 2^{j+1}
    row = [cmath.exp(-s * math.log(k + 1)) for k in range(n_terms)]
    total = 0j
    power = 0.5
    for _ in range(n_terms):
        total += power * row[0]
        row = [row[i] - row[i + 1] for i in range(len(row) - 1)]
        power *= 0.5
    return total


# -- zeta ----------------------------------------------------------------------------


def test_zeta_two_against_partial_sum_oracle():
    oracle = zeta2_partial_sum_oracle()
    value = zeta(2.0).as_complex()
    assert abs(value - oracle) <= 1e-11
    assert abs(value - math.pi ** 2 / 6.0) <= 1e-10
    assert value.imag == 0.0


def test_zeta_zero_value_via_eta_route():
    # zeta(0) = eta(0)/(1 - 2): independent acceleration oracle
    oracle = eta_acceleration_oracle(0j) / (1.0 - 2.0)
    assert abs(oracle - (-0.5)) <= 1e-9
    assert abs(zeta(0.0).as_complex() - (-0.5)) <= 1e-10


def test_zeta_pole_flagged():
    assert zeta(1.0).kind is ValueKind.POLE


def test_zeta_region_contract():
    with pytest.raises(OutOfValidityRegion):
        zeta(6.0)
    with pytest.raises(OutOfValidityRegion):
        zeta(complex(0.5, 51.0))


def test_zeta_vs_eta_identity_dual_route(rng):
    # eta and zeta are evaluated by different series; the identity
    # eta = (1 - 2^{1-s}) zeta is a genuine cross-check
    worst = 0.0
    for _ in range(100):
        s = complex(rng.uniform(-5.0, 5.0), rng.uniform(-50.0, 50.0))
        if abs(s - 1.0) < 1e-3:
            continue
        lhs = eta(s).as_complex()
        rhs = (1.0 - cmath.exp((1.0 - s) * math.log(2.0))) * zeta(s).as_complex()
        scale = max(1.0, abs(lhs))
        worst = max(worst, abs(lhs - rhs) / scale)
    assert worst <= 1e-9


# -- eta ------------------------------------------------------------------------------


def test_eta_special_values():
    assert abs(eta(1.0).as_complex() - alternating_harmonic_oracle()) <= 1e-10
    assert abs(eta(1.0).as_complex() - math.log(2.0)) <= 1e-10
    assert abs(eta(2.0).as_complex() - math.pi ** 2 / 12.0) <= 1e-10
    assert abs(eta(0.0).as_complex() - 0.5) <= 1e-10


# -- gamma -----------------------------------------------------------------------------


def test_gamma_classical_values():
    assert abs(gamma(0.5).as_complex() - math.sqrt(math.pi)) <= 1e-13
    assert abs(gamma(5.0).as_complex() - 24.0) <= 24.0 * 1e-12
    assert gamma(0.0).kind is ValueKind.POLE
    assert gamma(-3.0).kind is ValueKind.POLE


def test_gamma_against_stirling_oracle(rng):
    for _ in range(60):
        s = complex(rng.uniform(-4.5, 5.0), rng.uniform(-40.0, 40.0))
        if s.imag == 0 and s.real <= 0 and abs(s.real - round(s.real)) < 1e-3:
            continue
        mine = gamma(s)
        oracle_log = stirling_log_gamma(s)
        rel = abs(mine.log_magnitude - oracle_log.real)
        assert rel <= 1e-12 * max(1.0, abs(oracle_log.real))
        assert abs(wrap_angle(mine.phase - oracle_log.imag)) <= 1e-11


# -- xi --------------------------------------------------------------------------------


def test_xi_value_composed_from_independent_oracles():
    # xi(1/2) = 1/2 * (1/2) * (-1/2) * Gamma(1/4) * pi^(-1/4) * zeta(1/2),
    # with zeta(1/2) from the eta acceleration oracle and Gamma from Stirling
    zeta_half = eta_acceleration_oracle(0.5 + 0j) / (1.0 - 2.0 ** 0.5)
    gamma_quarter = cmath.exp(stirling_log_gamma(0.25 + 0j))
    oracle = 0.5 * 0.5 * (-0.5) * gamma_quarter * math.pi ** -0.25 * zeta_half
    assert abs(oracle.real - 0.497120778) <= 1e-7
    value = xi(0.5).as_complex()
    assert abs(value - oracle) <= 1e-8
    assert value.imag == 0.0


def test_xi_reality_on_critical_line():
    assert xi_reality_check([0.0]) == 0.0
    assert xi_reality_check([5.0, 10.0, 20.0]) <= 1e-9
    # at the first zero |xi| itself collapses; the guarded ratio stays finite
    guarded = xi_reality_check([ZETA_ZERO_ORDINATES[0]])
    assert math.isfinite(guarded)


def test_xi_functional_equation_spot_check():
    a = xi(complex(0.3, 2.0)).as_complex()
    b = xi(complex(0.7, -2.0)).as_complex()
    assert abs(a - b) <= 1e-9 * abs(a)


def test_xi_conjugate_symmetry(rng):
    for _ in range(100):
        s = complex(rng.uniform(-5.0, 5.0), rng.uniform(-50.0, 50.0))
        a = xi(s).as_complex()
        b = xi(s.conjugate()).as_complex()
        assert abs(b.real - a.real) <= 1e-10 * max(1.0, abs(a))
        assert abs(b.imag + a.imag) <= 1e-10 * max(1.0, abs(a))


def test_xi_smooth_through_cancellation_points():
    # the zeta pole cancels (s-1); Gamma poles cancel trivial zeros
    from merolocus.catalog import _xi_patch, _xi_value_direct

    assert abs(xi(1.0).as_complex() - 0.5) <= 1e-10
    assert abs(xi(0.0).as_complex() - 0.5) <= 1e-10
    for center in (-2.0, -4.0):
        assert math.isfinite(xi(center).as_complex().real)
        # patch and direct evaluation agree at the same points near the
        # activation edge (both well-defined slightly off the center)
        for offset in (0.019, 0.012 + 0.009j, -0.018j):
            s = center + offset
            direct = _xi_value_direct(s)
            patched = _xi_patch(center).value(s)
            assert abs(patched - direct) <= 1e-10 * abs(direct)


# -- finite-difference log-derivative ---------------------------------------------------


def test_fd_log_derivative_matches_higher_order_stencil():
    for name in BLACK_BOX_NAMES:
        box = as_black_box_spec(name)
        s = complex(2.3, 3.7)
        base = finite_difference_log_derivative(box, s)
        # five-point stencil on log W as the higher-order reference
        h = 1e-3

        def logw(x: complex) -> complex:
            v = box.value_at(x)
            return complex(v.log_magnitude, v.phase)

        num = (-logw(s + 2 * h) + 8 * logw(s + h) - 8 * logw(s - h) + logw(s - 2 * h))
        stencil = num / (12 * h)
        assert abs(base - stencil) <= 1e-6 * max(1.0, abs(stencil))


# -- zero table provenance ----------------------------------------------------------------


def _zeta_complex(s: complex) -> complex:
    return zeta(s).as_complex()


def _winding_count(x0: float, x1: float, y0: float, y1: float, per_edge: int = 500) -> float:
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1),
               complex(x0, y0)]
    total = 0.0
    prev = None
    for a, b in zip(corners, corners[1:]):
        for i in range(per_edge):
            z = a + (b - a) * i / per_edge
            ph = cmath.phase(_zeta_complex(z))
            if prev is not None:
                total += wrap_angle(ph - prev)
            prev = ph
    total += wrap_angle(cmath.phase(_zeta_complex(corners[0])) - prev)
    return total / (2 * math.pi)


def _newton_refine(guess: complex, steps: int = 50) -> complex:
    z = guess
    for _ in range(steps):
        f = _zeta_complex(z)
        h = 1e-7
        d1 = (_zeta_complex(z + h) - _zeta_complex(z - h)) / (2 * h)
        d2 = (_zeta_complex(z + h / 2) - _zeta_complex(z - h / 2)) / h
        derivative = (4 * d2 - d1) / 3
        step = f / derivative
        z -= step
        if abs(step) <= 1e-14 * max(1.0, abs(z)):
            break
    return z


def test_zero_table_recomputed_by_argument_principle():
    windows = ((13.0, 15.0), (20.0, 22.0), (24.0, 26.0))
    for (lo, hi), embedded in zip(windows, ZETA_ZERO_ORDINATES):
        count = _winding_count(-1.0, 2.0, lo, hi)
        assert count == pytest.approx(1.0, abs=1e-6)
        refined = _newton_refine(complex(0.5, 0.5 * (lo + hi)))
        assert abs(refined - complex(0.5, embedded)) <= 1e-9
        assert abs(_zeta_complex(refined)) <= 1e-12


# -- black-box adapters ---------------------------------------------------------------------


def test_black_box_gain_at_zeta_pole():
    box = as_black_box_spec("zeta")
    assert gain(box, 1.0).k == 0.0
    assert box.value_at(0.5 + ZETA_ZERO_ORDINATES[0] * 1j).kind is ValueKind.ZERO


def test_black_box_registry():
    assert set(BLACK_BOX_NAMES) == {"eta", "gamma", "xi", "zeta"}
    with pytest.raises(UnknownFunction):
        as_black_box_spec("airy")
    for name in BLACK_BOX_NAMES:
        box = as_black_box_spec(name)
        for loc, _ in (*box.known_zeros, *box.known_poles):
            assert box.validity_region.contains(loc)


def test_critical_line_in_zero_and_pi_locus_union():
    # between consecutive nontrivial zeros the xi function is real with
    # alternating sign, so the critical line lies on degree-0 / degree-pi loci
    box = as_black_box_spec("xi")
    t1, t2, t3 = ZETA_ZERO_ORDINATES
    expected_units = {0.5 * t1: 0.0, 0.5 * (t1 + t2): 1.0, 0.5 * (t2 + t3): 0.0}
    for t, units in expected_units.items():
        value = box.value_at(complex(0.5, t))
        target = PhaseTarget.from_pi_units(units)
        assert abs(wrap_angle(value.phase - target.alpha)) <= 1e-9


def test_named_rational_catalog():
    assert named_rational("single_pole").poles[0].location.sigma == 1.0
    three = named_rational("three_pole")
    assert three.form is Form.ROOT
    assert [p.location.sigma for p in three.poles] == [0.0, -1.0, -2.0]
    pair = named_rational("pole_zero_pair")
    assert pair.zeros[0].location.sigma == 2.0
    frac = named_rational("fractional_pole")
    assert frac.poles[0].exponent == 0.5
    with pytest.raises(UnknownFunction):
        named_rational("four_pole")
    assert set(RATIONAL_NAMES) == {
        "single_pole", "pole_zero_pair", "two_pole", "three_pole", "fractional_pole"}


def test_catalog_listing_shape():
    listing = catalog_listing()
    assert set(listing) == {"rational", "black_box"}
    assert set(listing["rational"]) == set(RATIONAL_NAMES)
    assert listing["black_box"]["zeta"]["known_poles"] == [
        {"re": 1.0, "im": 0.0, "exponent": 1.0}]
    region = listing["black_box"]["xi"]["validity_region"]
    assert region == {"sigma_min": -5.0, "sigma_max": 5.0, "t_min": -50.0, "t_max": 50.0}
