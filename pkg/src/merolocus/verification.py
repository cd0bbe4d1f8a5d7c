"""The acceptance suite: ten numbered criteria over the built-in catalog.

Each criterion is a function returning a CheckResult with a pass flag and a
detail dict; run_acceptance() executes all of them with a fixed seed so the
CLI `verify` command and the test suite share one implementation and one
outcome.  Criterion 8 is known-failing: the constant-phase loci leaving the
finite zeta pole all terminate at the trivial zero s = -2, so no launch from
s = 1 can capture the first nontrivial zero; the check still runs the stated
protocol, reports the observed termini, and demonstrates the capture through
a boundary launch from the infinite-pole side instead (see the README).
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass, field

from .angles import arrival_angle, departure_angle, departure_fan, arrival_fan, opposite_gap_pole, opposite_gap_zero
from .catalog import (
    RATIONAL_NAMES,
    ZETA_ZERO_ORDINATES,
    as_black_box_spec,
    eta,
    named_rational,
    xi,
    xi_reality_check,
    zeta,
)
from .errors import CorrectorDivergence, MerolocusError
from .model import (
    ComplexPoint,
    Form,
    MeromorphicSpec,
    PoleTerm,
    ZeroTerm,
    wrap_angle,
)
from .phase import PhaseTarget, principal_phase, unwrap_phase_along
from .tracer import (
    EndpointKind,
    TraceConfig,
    Window,
    continue_through_saddle,
    grid_scan_oracle,
    trace_from_point,
    trace_from_pole,
    verify_curve,
)

DEFAULT_SEED = 20240803

#: degree grid the acceptance criteria sweep at every anchor (units of pi)
DEGREE_UNITS = (0.0, 0.5, 1.0, 1.5)

#: which (spec, degree) pairs have a locus at the pole under the per-factor
#: principal-branch convention; a pole of exponent beta < 1 only attains a
#: 2*pi*beta wide arc of wrapped phases nearby (sign analysis for
#: (1-s)^(-1/2): attainable wrapped phases are [-pi/2, pi/2)), so for the
#: fractional pole the pi/2 and pi loci do not exist
EXPECTED_EXISTENCE = {
    "single_pole": {0.0: True, 0.5: True, 1.0: True, 1.5: True},
    "pole_zero_pair": {0.0: True, 0.5: True, 1.0: True, 1.5: True},
    "two_pole": {0.0: True, 0.5: True, 1.0: True, 1.5: True},
    "three_pole": {0.0: True, 0.5: True, 1.0: True, 1.5: True},
    "fractional_pole": {0.0: True, 0.5: False, 1.0: False, 1.5: True},
}


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    elapsed_s: float
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number}: {self.name}"

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "elapsed_s": self.elapsed_s,
            "detail": self.detail,
        }


def _launch_exists(spec: MeromorphicSpec, pole_index: int, target: PhaseTarget,
                   radius: float = 1e-4) -> bool:
    """A degree departs a pole iff the wrapped residual at the formula launch
    point is small (O(radius) for genuine launches, O(1) otherwise)."""
    theta = departure_angle(spec, pole_index, target).theta
    pole = spec.poles[pole_index].location.as_complex()
    s = pole + radius * cmath.exp(1j * theta)
    residual = wrap_angle(principal_phase(spec, s) - target.alpha)
    return abs(residual) < 0.3


def _existing_cases():
    """(name, spec, pole_index, units, target) for every locus that exists."""
    for name in RATIONAL_NAMES:
        spec = named_rational(name)
        for pole_index in range(len(spec.poles)):
            for units in DEGREE_UNITS:
                target = PhaseTarget.from_pi_units(units)
                if _launch_exists(spec, pole_index, target):
                    yield name, spec, pole_index, units, target


def check_phase_soundness() -> CheckResult:
    """1. Every traced point satisfies the phase condition to 1e-8; <= 1 s/curve."""
    t0 = time.perf_counter()
    worst = 0.0
    slowest = 0.0
    n_curves = 0
    existence_ok = True
    observed: dict[str, dict[float, bool]] = {n: {} for n in RATIONAL_NAMES}
    failures: list[str] = []
    for name in RATIONAL_NAMES:
        spec = named_rational(name)
        for pole_index in range(len(spec.poles)):
            for units in DEGREE_UNITS:
                target = PhaseTarget.from_pi_units(units)
                exists = _launch_exists(spec, pole_index, target)
                if pole_index == 0:
                    observed[name][units] = exists
                if not exists:
                    continue
                t_curve = time.perf_counter()
                curves = [trace_from_pole(spec, pole_index, target)]
                if curves[0].terminus.kind is EndpointKind.SADDLE:
                    curves.extend(continue_through_saddle(spec, curves[0]))
                dt = time.perf_counter() - t_curve
                slowest = max(slowest, dt)
                for curve in curves:
                    n_curves += 1
                    report = verify_curve(spec, curve, tol=1e-8)
                    worst = max(worst, report.max_residual)
                    if not report.passed:
                        failures.append(f"{name} pole {pole_index} deg {units}pi")
    for name, expected in EXPECTED_EXISTENCE.items():
        if observed[name] != expected:
            existence_ok = False
            failures.append(f"existence pattern mismatch for {name}: {observed[name]}")
    passed = not failures and worst <= 1e-8 and slowest <= 1.0 and existence_ok
    return CheckResult(1, "phase-condition soundness along traced curves", passed,
                       time.perf_counter() - t0,
                       {"curves": n_curves, "max_residual": worst,
                        "slowest_curve_s": slowest, "failures": failures,
                        "existence": {k: {str(u): v for u, v in d.items()}
                                      for k, d in observed.items()}})


def check_formula_agreement() -> CheckResult:
    """2. Closed-form departure/arrival angles match launch secants to 1e-3."""
    t0 = time.perf_counter()
    worst_dep = 0.0
    worst_arr = 0.0
    n_cases = 0
    failures: list[str] = []
    for name, spec, pole_index, units, target in _existing_cases():
        theta = departure_angle(spec, pole_index, target).theta
        curve = trace_from_pole(spec, pole_index, target)
        pole = spec.poles[pole_index].location.as_complex()
        secant = cmath.phase(curve.points[0].s.as_complex() - pole)
        dev = abs(wrap_angle(secant - theta))
        worst_dep = max(worst_dep, dev)
        n_cases += 1
        if dev > 1e-3:
            failures.append(f"departure {name} pole {pole_index} deg {units}pi: dev {dev:.2e}")

    def arrival_secant_dev(spec, zero_index, target, curve) -> float:
        z = spec.zeros[zero_index].location.as_complex()
        theta = arrival_angle(spec, zero_index, target).theta
        # compare at the stored point nearest the stated 1e-4 radius
        best = min(curve.points, key=lambda p: abs(abs(p.s.as_complex() - z) - 1e-4))
        secant = cmath.phase(best.s.as_complex() - z)
        return abs(wrap_angle(secant - theta))

    pzp = named_rational("pole_zero_pair")
    t_pi = PhaseTarget.from_pi_units(1.0)
    curve = trace_from_pole(pzp, 0, t_pi)
    if curve.terminus.kind is not EndpointKind.ZERO:
        failures.append("pole_zero_pair degree pi did not arrive at its zero")
    else:
        dev = arrival_secant_dev(pzp, 0, t_pi, curve)
        worst_arr = max(worst_arr, dev)
        n_cases += 1
        if dev > 1e-3:
            failures.append(f"arrival pole_zero_pair deg 1pi: dev {dev:.2e}")
    # zero-only spec (1 - s): manual launches onto both real-axis loci
    zero_spec = MeromorphicSpec(form=Form.BODE, zeros=(ZeroTerm(ComplexPoint(1.0, 0.0), 1.0),))
    for units, start in ((0.0, 0.25 + 0.0j), (1.0, 1.75 + 0.0j)):
        target = PhaseTarget.from_pi_units(units)
        curve = trace_from_point(zero_spec, start, target)
        if curve.terminus.kind is not EndpointKind.ZERO:
            failures.append(f"(1-s) degree {units}pi manual trace missed the zero")
            continue
        dev = arrival_secant_dev(zero_spec, 0, target, curve)
        worst_arr = max(worst_arr, dev)
        n_cases += 1
        if dev > 1e-3:
            failures.append(f"arrival (1-s) deg {units}pi: dev {dev:.2e}")
    passed = not failures
    return CheckResult(2, "departure/arrival formulas vs measured launch secants", passed,
                       time.perf_counter() - t0,
                       {"cases": n_cases, "worst_departure_dev": worst_dep,
                        "worst_arrival_dev": worst_arr, "failures": failures})


def _semicircle_measure(fn, anchor: complex, theta0: float, ccw: bool,
                        radius: float = 1e-4, samples: int = 64) -> float:
    """Unwrapped phase at theta0 minus the phase at the opposite direction,
    connected along the chosen semicircular arc."""
    sign = 1.0 if ccw else -1.0
    path = [anchor + radius * cmath.exp(1j * (theta0 + sign * math.pi * k / samples))
            for k in range(samples + 1)]
    unwrapped = unwrap_phase_along(fn, path)
    return unwrapped[0] - unwrapped[-1]


def _arc_crosses(theta0: float, ccw: bool, cut_direction: float) -> bool:
    start = theta0 if ccw else theta0 - math.pi
    rel = (cut_direction - start) % (2.0 * math.pi)
    return 1e-9 < rel < math.pi - 1e-9


def _opposite_gap_measured(fn, anchor: complex, theta0: float, at_pole: bool,
                           cut_direction: float) -> float:
    """Empirical Thm-1.18/1.19 gap: the degrees of the loci on a direction and
    its opposite, connected by continuous unwrapping along the semicircle that
    avoids the anchor factor's own branch cut (a fractional exponent jumps by
    a non-multiple of 2*pi across it, which would corrupt the branch)."""
    ccw = not _arc_crosses(theta0, True, cut_direction)
    measured = _semicircle_measure(fn, anchor, theta0, ccw)
    if at_pole:
        return measured if ccw else -measured
    return -measured if ccw else measured


def check_opposite_gaps() -> CheckResult:
    """3. Opposite-direction degree gaps: beta*pi at poles, gamma*pi at zeros."""
    t0 = time.perf_counter()
    failures: list[str] = []
    worst = 0.0
    details = {}
    for exponent in (0.5, 1.0, 2.0):
        # formula side is the closed-form product itself
        if opposite_gap_pole(exponent) != exponent * math.pi:
            failures.append(f"opposite_gap_pole({exponent}) not exact")
        if opposite_gap_zero(exponent) != exponent * math.pi:
            failures.append(f"opposite_gap_zero({exponent}) not exact")
        pole_spec = MeromorphicSpec(
            form=Form.BODE, poles=(PoleTerm(ComplexPoint(1.0, 0.0), exponent),))
        base = PhaseTarget.from_pi_units(0.25)
        theta = departure_angle(pole_spec, 0, base).theta
        # the (1 - s) factor's principal branch jumps across the ray at
        # direction arg(z) = 0 from the anchor
        gap = _opposite_gap_measured(pole_spec, 1.0 + 0j, theta, True, 0.0)
        dev = abs(gap - exponent * math.pi)
        worst = max(worst, dev)
        details[f"pole_beta_{exponent}"] = gap
        if dev > 1e-3:
            failures.append(f"pole gap beta={exponent}: {gap} vs {exponent*math.pi}")
        # trace both opposite launches with their own measured degrees
        short = TraceConfig(max_points=40)
        for psi in (theta, theta + math.pi):
            launch = 1.0 + 1e-4 * cmath.exp(1j * psi)
            measured = PhaseTarget.from_degree(principal_phase(pole_spec, launch))
            curve = trace_from_pole(pole_spec, 0, measured, short)
            report = verify_curve(pole_spec, curve, tol=1e-8)
            if not report.passed:
                failures.append(f"opposite launch trace failed, beta={exponent}, psi={psi:.3f}")
        zero_spec = MeromorphicSpec(
            form=Form.BODE, zeros=(ZeroTerm(ComplexPoint(1.0, 0.0), exponent),))
        theta_z = arrival_angle(zero_spec, 0, base).theta
        gap_z = _opposite_gap_measured(zero_spec, 1.0 + 0j, theta_z, False, 0.0)
        dev = abs(gap_z - exponent * math.pi)
        worst = max(worst, dev)
        details[f"zero_gamma_{exponent}"] = gap_z
        if dev > 1e-3:
            failures.append(f"zero gap gamma={exponent}: {gap_z} vs {exponent*math.pi}")
    return CheckResult(3, "opposite-direction degree gaps (beta*pi, gamma*pi)",
                       not failures, time.perf_counter() - t0,
                       {"worst_gap_deviation": worst, "gaps": details,
                        "failures": failures})


def check_fan_monotonicity() -> CheckResult:
    """4. 16-degree fans: exact affine law, strict clockwise ordering."""
    t0 = time.perf_counter()
    failures: list[str] = []
    worst_affine = 0.0
    n_fans = 0

    def fan_checks(entries, exponent: float, at_pole: bool, label: str) -> None:
        nonlocal worst_affine, n_fans
        n_fans += 1
        affine = [a.theta_affine for _, a in entries]
        degrees = [t.degree for t, _ in entries]
        sign = 1.0 if at_pole else -1.0
        for i in range(1, len(entries)):
            resid = abs((affine[i] - affine[i - 1]) * sign * exponent
                        + (degrees[i] - degrees[i - 1]))
            worst_affine = max(worst_affine, resid)
            if resid > 1e-12:
                failures.append(f"{label}: affine residual {resid:.2e}")
        deltas = [affine[i] - affine[i - 1] for i in range(1, len(entries))]
        if at_pole and not all(d < 0 for d in deltas):
            failures.append(f"{label}: pole fan not strictly clockwise in degree")
        if not at_pole and not all(d > 0 for d in deltas):
            failures.append(f"{label}: zero fan not strictly counterclockwise in degree")
        normalized = sorted(a.theta for _, a in entries)
        spacing = [b - a for a, b in zip(normalized, normalized[1:])]
        expected = 2.0 * math.pi / len(entries)
        if any(abs(d - expected) > 1e-9 for d in spacing):
            failures.append(f"{label}: fan does not cover [0, 2pi) evenly")

    for name in RATIONAL_NAMES:
        spec = named_rational(name)
        for pole_index, pole in enumerate(spec.poles):
            width = 2.0 * pole.exponent * math.pi
            targets = [PhaseTarget.from_degree(i * width / 16.0) for i in range(16)]
            fan = departure_fan(spec, pole_index, targets)
            fan_checks(fan.entries, pole.exponent, True, f"{name} pole {pole_index}")
        for zero_index, zero in enumerate(spec.zeros):
            width = 2.0 * zero.exponent * math.pi
            targets = [PhaseTarget.from_degree(i * width / 16.0) for i in range(16)]
            fan = arrival_fan(spec, zero_index, targets)
            fan_checks(fan.entries, zero.exponent, False, f"{name} zero {zero_index}")
    return CheckResult(4, "fan affinity and clockwise monotonicity", not failures,
                       time.perf_counter() - t0,
                       {"fans": n_fans, "worst_affine_residual": worst_affine,
                        "failures": failures})


def check_gain_endpoints() -> CheckResult:
    """5. Complete pole->zero curves: K from <= 1e-4 to >= 1e4, monotone."""
    t0 = time.perf_counter()
    failures: list[str] = []
    config = TraceConfig(launch_radius=1e-5)
    curve = trace_from_pole(named_rational("pole_zero_pair"), 0,
                            PhaseTarget.from_pi_units(1.0), config)
    report = verify_curve(named_rational("pole_zero_pair"), curve, tol=1e-8)
    if curve.terminus.kind is not EndpointKind.ZERO:
        failures.append("pole_zero_pair degree pi is not a pole->zero curve")
    if not report.k_monotone:
        failures.append("gain not strictly monotone on the saddle-free curve")
    if not report.k_first <= 1e-4:
        failures.append(f"initial K {report.k_first} above 1e-4")
    if not report.k_last >= 1e4:
        failures.append(f"final K {report.k_last} below 1e4")
    # repeated pole with a saddle on the way: coverage across the segments
    beta2 = MeromorphicSpec(
        form=Form.BODE,
        zeros=(ZeroTerm(ComplexPoint(3.0, 0.0), 1.0),),
        poles=(PoleTerm(ComplexPoint(1.0, 0.0), 2.0),),
    )
    primary = trace_from_pole(beta2, 0, PhaseTarget.from_pi_units(1.0), config)
    segments = [primary]
    captured = False
    k_min, k_max = math.inf, 0.0
    if primary.terminus.kind is EndpointKind.SADDLE:
        segments.extend(continue_through_saddle(beta2, primary, config=config))
    for seg in segments:
        if not seg.points:
            continue
        rep = verify_curve(beta2, seg, tol=1e-8)
        if not rep.k_monotone:
            failures.append("segment gain not monotone on the beta=2 example")
        k_min = min(k_min, rep.k_first)
        k_max = max(k_max, rep.k_last)
        captured = captured or seg.terminus.kind is EndpointKind.ZERO
    if not captured:
        failures.append("beta=2 example never captured its zero")
    if not (k_min <= 1e-4 and k_max >= 1e4):
        failures.append(f"beta=2 coverage [{k_min}, {k_max}] misses [1e-4, 1e4]")
    return CheckResult(5, "gain endpoints and interval coverage on pole->zero curves",
                       not failures, time.perf_counter() - t0,
                       {"pzp_k_first": report.k_first, "pzp_k_last": report.k_last,
                        "beta2_k_range": [k_min, k_max], "failures": failures})


def check_oracle_equivalence() -> CheckResult:
    """6. Tracer vs brute-force grid oracle on pole_zero_pair degree pi."""
    t0 = time.perf_counter()
    failures: list[str] = []
    spec = named_rational("pole_zero_pair")
    target = PhaseTarget.from_pi_units(1.0)
    window = Window(0.0, 3.0, -1.0, 1.0)
    resolution = 600
    # band half-width delta/|W'/W| stays under one cell on the segment, so
    # the oracle returns exactly the on-segment grid points
    delta = 0.01
    hits = grid_scan_oracle(spec, window, resolution, target, delta)
    cell = 2.0 * max(3.0 / resolution, 2.0 / resolution)
    on_axis = all(p.t == 0.0 for p, _ in hits)
    inside = all(1.0 < p.sigma < 2.0 for p, _ in hits)
    if not (on_axis and inside):
        failures.append("oracle points leave the analytic segment (1,2) x {0}")
    if not hits:
        failures.append("oracle found no points")
    curve = trace_from_pole(spec, 0, target)
    path = [p.s.as_complex() for p in curve.points]

    def dist_to_polyline(w: complex) -> float:
        best = math.inf
        for a, b in zip(path, path[1:]):
            u = b - a
            denom = (u.real ** 2 + u.imag ** 2) or 1e-300
            proj = ((w - a).real * u.real + (w - a).imag * u.imag) / denom
            proj = min(1.0, max(0.0, proj))
            best = min(best, abs(w - (a + proj * u)))
        return best

    worst_oracle = max(dist_to_polyline(p.as_complex()) for p, _ in hits) if hits else math.inf
    hit_points = [p.as_complex() for p, _ in hits]
    worst_trace = max(min(abs(w - hp) for hp in hit_points) for w in path) if hits else math.inf
    if worst_oracle > cell:
        failures.append(f"oracle point {worst_oracle:.4f} from the polyline (> {cell})")
    if worst_trace > cell:
        failures.append(f"traced point {worst_trace:.4f} from the oracle set (> {cell})")
    return CheckResult(6, "grid-scan oracle and tracer mutually within 2 cells",
                       not failures, time.perf_counter() - t0,
                       {"oracle_points": len(hits), "max_oracle_to_curve": worst_oracle,
                        "max_curve_to_oracle": worst_trace, "two_cells": cell,
                        "failures": failures})


def check_saddle_location() -> CheckResult:
    """7. three_pole 180-degree locus stops at the root of 3s^2 + 6s + 2."""
    t0 = time.perf_counter()
    failures: list[str] = []
    expected = -1.0 + 1.0 / math.sqrt(3.0)
    spec = named_rational("three_pole")
    target = PhaseTarget.from_pi_units(1.0)
    locations = {}
    for pole_index in (0, 1):
        curve = trace_from_pole(spec, pole_index, target)
        if curve.terminus.kind is not EndpointKind.SADDLE or curve.saddle_event is None:
            failures.append(f"three_pole pole {pole_index} did not stop at a saddle")
            continue
        loc = curve.saddle_event.location.as_complex()
        locations[pole_index] = (loc.real, loc.imag)
        if abs(loc - expected) > 1e-4:
            failures.append(f"saddle at {loc}, expected {expected} +- 1e-4")
        branches = continue_through_saddle(spec, curve)
        if len(branches) != 2:
            failures.append(f"expected 2 saddle continuations, got {len(branches)}")
    return CheckResult(7, "saddle location on the three-pole 180-degree locus",
                       not failures, time.perf_counter() - t0,
                       {"expected": expected, "located": locations, "failures": failures})


def check_zeta_tracing() -> CheckResult:
    """8. Stated protocol: launch from the finite zeta pole toward the upper
    half-plane; capture 1/2 + 14.1347i within 1e-3.  Known spec defect (the
    pole's whole fan terminates at the trivial zero -2); the result records
    the observed termini and a passing boundary-launch demonstration."""
    t0 = time.perf_counter()
    zb = as_black_box_spec("zeta")
    rho1 = complex(0.5, ZETA_ZERO_ORDINATES[0])
    config = TraceConfig(max_points=40000)
    captured = False
    termini: list[str] = []
    # the spec's own degree choice: principal phase at the launch point aimed
    # at the first zero, plus an upward sweep of candidate degrees
    aim = (rho1 - 1.0) / abs(rho1 - 1.0)
    launch_targets = [PhaseTarget.from_degree(
        principal_phase(zb, 1.0 + config.launch_radius * aim))]
    launch_targets += [
        PhaseTarget.from_degree(principal_phase(
            zb, 1.0 + config.launch_radius * cmath.exp(1j * math.pi * frac)))
        for frac in [k / 17.0 for k in range(1, 17)]
    ]
    best_dist = math.inf
    for target in launch_targets:
        try:
            curve = trace_from_pole(zb, 0, target, config)
        except CorrectorDivergence as exc:
            termini.append(f"deg {target}: {exc}")
            continue
        last = curve.points[-1].s.as_complex()
        best_dist = min(best_dist, abs(last - rho1))
        termini.append(f"deg {target}: {curve.terminus.describe()}")
        if abs(last - rho1) <= 1e-3:
            captured = True
            break
    elapsed = time.perf_counter() - t0
    # paper-consistent demonstration: the loci received by rho_1 originate at
    # the infinite pole; launch one from the left validity edge instead
    t1 = time.perf_counter()
    boundary = complex(-4.999, 13.8909018322042)
    side_target = PhaseTarget.from_degree(principal_phase(zb, boundary))
    side = trace_from_point(zb, boundary, side_target, config)
    side_last = side.points[-1].s.as_complex()
    side_ok = (side.terminus.kind is EndpointKind.ZERO
               and abs(side_last - rho1) <= 1e-3
               and (time.perf_counter() - t1) <= 30.0)
    passed = captured and elapsed <= 30.0
    return CheckResult(8, "zeta trace from the finite pole captures the first "
                          "nontrivial zero (known spec defect)", passed, elapsed,
                       {"captured_from_finite_pole": captured,
                        "best_distance_to_rho1": best_dist,
                        "observed_termini": sorted(set(termini)),
                        "analysis": "every locus leaving the finite pole at s=1 "
                                    "is received by the trivial zero s=-2; the "
                                    "loci received by rho_1 originate at the "
                                    "infinite pole (see decisions ledger)",
                        "boundary_launch": {
                            "start": [boundary.real, boundary.imag],
                            "degree": str(side_target),
                            "terminus": side.terminus.describe(),
                            "distance_to_rho1": abs(side_last - rho1),
                            "passed": side_ok,
                        }})


def check_xi_reality(seed: int) -> CheckResult:
    """9. xi real on the critical line; xi(s) = xi(1-s) to 1e-9 relative."""
    t0 = time.perf_counter()
    failures: list[str] = []
    worst_reality = xi_reality_check([0.0, 5.0, 10.0, 20.0])
    if worst_reality > 1e-9:
        failures.append(f"critical-line reality ratio {worst_reality:.2e}")
    rng = random.Random(seed)
    worst_sym = 0.0
    for _ in range(100):
        s = complex(rng.uniform(-4.0, 5.0), rng.uniform(-50.0, 50.0))
        a = xi(s).as_complex()
        b = xi(1.0 - s).as_complex()
        rel = abs(a - b) / abs(a)
        worst_sym = max(worst_sym, rel)
        if rel > 1e-9:
            failures.append(f"functional symmetry at {s}: rel {rel:.2e}")
    return CheckResult(9, "xi reality on the critical line and xi(s) = xi(1-s)",
                       not failures, time.perf_counter() - t0,
                       {"max_reality_ratio": worst_reality,
                        "max_symmetry_rel": worst_sym, "failures": failures})


def check_special_values() -> CheckResult:
    """10. zeta(2) = pi^2/6 and eta(1) = ln 2 to 1e-10."""
    t0 = time.perf_counter()
    z2 = zeta(2.0).as_complex()
    e1 = eta(1.0).as_complex()
    dz = abs(z2 - (math.pi ** 2 / 6.0))
    de = abs(e1 - math.log(2.0))
    passed = dz <= 1e-10 and de <= 1e-10 and abs(z2.imag) == 0.0 and abs(e1.imag) == 0.0
    return CheckResult(10, "special values zeta(2) and eta(1)", passed,
                       time.perf_counter() - t0,
                       {"zeta2_error": dz, "eta1_error": de})


def run_acceptance(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    return [
        check_phase_soundness(),
        check_formula_agreement(),
        check_opposite_gaps(),
        check_fan_monotonicity(),
        check_gain_endpoints(),
        check_oracle_equivalence(),
        check_saddle_location(),
        check_zeta_tracing(),
        check_xi_reality(seed),
        check_special_values(),
    ]


def acceptance_report(results: list[CheckResult], seed: int) -> dict:
    return {
        "seed": seed,
        "passed": all(r.passed for r in results),
        "criteria": [r.to_dict() for r in results],
    }
