"""Constant-degree locus tracing by predictor-corrector continuation.

Loci are level curves of the phase of W, i.e. integral curves of the gradient
of log|W|.  The predictor steps along the unit descent direction
-conj(W'/W)/|W'/W| (phase-stationary to first order, gain K strictly
increasing), and each step is followed by a scalar Newton correction
transverse to the tangent driving the wrapped phase residual below the
corrector tolerance.  A curve starts just off a pole along the closed-form
departure angle and ends at a zero (capture), at the escape radius, at a
saddle of |W| (a zero of W'), or at the step limit.

Saddles are not discussed by the underlying theory; they are detected here by
a break in gain monotonicity between accepted points, located by Newton on
W'/W, and the outgoing rays follow from the argument of (W'/W)' assuming a
simple zero of W'.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .angles import _bracket_common, arrival_angle, departure_angle
from .errors import (
    CorrectorDivergence,
    InvalidIndex,
    MerolocusError,
    NotRegularPoint,
    OutOfValidityRegion,
)
from .model import (
    TWO_PI,
    ComplexPoint,
    MeromorphicSpec,
    PointLike,
    ValueKind,
    to_complex,
    wrap_angle,
)
from .phase import PhaseTarget, gain_of_value


@dataclass(frozen=True)
class Window:
    """Axis-aligned rectangle sigma in [sigma_min, sigma_max], t in [t_min, t_max]."""

    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self) -> None:
        if not (self.sigma_min < self.sigma_max and self.t_min < self.t_max):
            raise ValueError("window must have positive extent on both axes")

    def contains(self, s: PointLike, margin: float = 0.0) -> bool:
        c = to_complex(s)
        return (
            self.sigma_min - margin <= c.real <= self.sigma_max + margin
            and self.t_min - margin <= c.imag <= self.t_max + margin
        )


@dataclass(frozen=True)
class TraceConfig:
    launch_radius: float = 1e-4
    step_init: float = 1e-3
    step_min: float = 1e-9
    step_max: float = 0.1
    corrector_tol: float = 1e-10
    capture_radius: float = 1e-6
    escape_radius: float = 1e3
    saddle_threshold: float = 1e-8
    max_points: int = 100_000

    def __post_init__(self) -> None:
        if not (0 < self.step_min <= self.step_init <= self.step_max):
            raise ValueError("need 0 < step_min <= step_init <= step_max")
        for name in ("launch_radius", "corrector_tol", "capture_radius", "escape_radius",
                     "saddle_threshold"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_points < 2:
            raise ValueError("max_points must be at least 2")


DEFAULT_CONFIG = TraceConfig()


class EndpointKind(Enum):
    POLE = "pole"
    ZERO = "zero"
    INFINITY = "infinity"
    SADDLE = "saddle"
    STEP_LIMIT = "step-limit"
    REGION_EDGE = "region-edge"
    FAILED = "failed"


@dataclass(frozen=True)
class Endpoint:
    kind: EndpointKind
    index: int | None = None
    location: ComplexPoint | None = None
    detail: str = ""

    def describe(self) -> str:
        bits = [self.kind.value]
        if self.index is not None:
            bits.append(f"#{self.index}")
        if self.location is not None:
            bits.append(f"({self.location.sigma:.6g},{self.location.t:.6g})")
        if self.detail:
            bits.append(self.detail)
        return " ".join(bits)


@dataclass(frozen=True)
class CurvePoint:
    s: ComplexPoint
    k: float
    residual: float


@dataclass(frozen=True)
class SaddleEvent:
    location: ComplexPoint
    incoming_direction: float
    outgoing_directions: tuple[float, ...]


@dataclass
class LocusCurve:
    degree: PhaseTarget
    points: list[CurvePoint]
    origin: Endpoint
    terminus: Endpoint
    saddle_event: SaddleEvent | None = None

    def path(self) -> list[complex]:
        return [p.s.as_complex() for p in self.points]

    def gains(self) -> list[float]:
        return [p.k for p in self.points]

    @property
    def failed(self) -> bool:
        return self.terminus.kind is EndpointKind.FAILED


# -- local helpers ------------------------------------------------------------


def _value_and_residual(fn, x: complex, alpha: float):
    v = fn.value_at(x)
    if v.kind is not ValueKind.REGULAR:
        return None
    return v, wrap_angle(v.phase - alpha)


def _correct(fn, x: complex, alpha: float, d: complex, tol: float, max_move: float,
             max_iter: int = 12):
    """Newton along the fixed direction d; returns (point, iterations) or None."""
    for it in range(max_iter):
        vr = _value_and_residual(fn, x, alpha)
        if vr is None:
            return None
        _, r = vr
        if abs(r) <= tol:
            return x, it
        try:
            ld = fn.log_derivative_at(x)
        except NotRegularPoint:
            return None
        g = (ld * d).imag
        if g == 0.0 or not math.isfinite(g):
            return None
        delta = -r / g
        if abs(delta) > max_move:
            return None
        x = x + delta * d
    vr = _value_and_residual(fn, x, alpha)
    if vr is not None and abs(vr[1]) <= tol:
        return x, max_iter
    return None


def _log_second_derivative(fn, x: complex) -> complex:
    if hasattr(fn, "log_second_derivative_at"):
        return fn.log_second_derivative_at(x)
    h = 1e-5 * (1.0 + abs(x))
    anchors = [loc.as_complex() for loc, _ in (*fn.zero_anchors(), *fn.pole_anchors())]
    if anchors:
        h = min(h, 0.2 * min(abs(x - a) for a in anchors))
    h = max(h, 1e-12)
    return (fn.log_derivative_at(x + h) - fn.log_derivative_at(x - h)) / (2.0 * h)


def _locate_saddle(fn, guess: complex) -> complex | None:
    """Newton for W'/W = 0; quadratic once bracketed by the crossing check."""
    x = guess
    for _ in range(80):
        try:
            ld = fn.log_derivative_at(x)
            ldd = _log_second_derivative(fn, x)
        except (NotRegularPoint, OutOfValidityRegion):
            return None
        if ldd == 0 or not (cmath.isfinite(ld) and cmath.isfinite(ldd)):
            return None
        step = -ld / ldd
        x = x + step
        if abs(step) <= 1e-15 * max(1.0, abs(x)):
            return x
    return None


def _saddle_outgoing(fn, sad: complex) -> tuple[float, ...]:
    """Downhill rays of |W| at a simple zero of W': two opposite directions
    (pi - arg L'')/2 + {0, pi}."""
    c = _log_second_derivative(fn, sad)
    if c == 0 or not cmath.isfinite(c):
        return ()
    base = 0.5 * (math.pi - cmath.phase(c))
    return (base % TWO_PI, (base + math.pi) % TWO_PI)


def _anchor_distances(anchors: Sequence[tuple[complex, float]], x: complex) -> float:
    if not anchors:
        return math.inf
    return min(abs(x - a) for a, _ in anchors)


def _zero_anchor_list(fn) -> list[tuple[complex, float, int | None]]:
    """(location, exponent, index) with index None for the implicit origin zero."""
    out = []
    zero_terms = len(getattr(fn, "zeros", ()))
    for idx, (loc, exponent) in enumerate(fn.zero_anchors()):
        index: int | None = idx
        if isinstance(fn, MeromorphicSpec) and idx >= zero_terms:
            index = None  # origin_order anchor, not a ZeroTerm
        out.append((loc.as_complex(), exponent, index))
    return out


def _arrival_direction_set(fn, zero_index: int | None, target: PhaseTarget,
                           config: TraceConfig) -> tuple[float, ...] | None:
    """Candidate receiving directions at a zero anchor, or None to skip the
    direction-consistency check (distance-only capture)."""
    if isinstance(fn, MeromorphicSpec) and zero_index is not None:
        gamma = fn.zeros[zero_index].exponent
        try:
            base = arrival_angle(fn, zero_index, target).theta
        except MerolocusError:
            return None
        span = max(2, int(math.ceil(gamma)) + 1)
        dirs = {base % TWO_PI}
        for m in range(-span, span + 1):
            dirs.add((base + TWO_PI * m / gamma) % TWO_PI)
        return tuple(sorted(dirs))
    anchors = fn.zero_anchors()
    if zero_index is None or zero_index >= len(anchors):
        return None
    z = anchors[zero_index][0].as_complex()
    radius = max(10.0 * config.capture_radius, 1e-5)
    try:
        return tuple(numeric_anchor_directions(fn, z, target, radius))
    except MerolocusError:
        return None


def numeric_anchor_directions(fn, anchor: PointLike, target: PhaseTarget, radius: float,
                              samples: int = 720) -> list[float]:
    """Directions around an anchor where the wrapped phase meets the target
    degree, from dense circle sampling plus bisection refinement.  This is the
    angle path for black-box functions, whose factored form is unavailable."""
    a = to_complex(anchor)
    thetas = [TWO_PI * k / samples for k in range(samples + 1)]
    phases: list[float] = []
    for th in thetas:
        v = fn.value_at(a + radius * cmath.exp(1j * th))
        if v.kind is not ValueKind.REGULAR:
            raise NotRegularPoint("sampling circle touches another anchor; shrink the radius")
        phases.append(v.phase)
    unwrapped = [phases[0]]
    for ph in phases[1:]:
        delta = wrap_angle(ph - unwrapped[-1])
        k = round((unwrapped[-1] + delta - ph) / TWO_PI)
        unwrapped.append(ph + TWO_PI * k)

    def residual_at(th: float) -> float:
        v = fn.value_at(a + radius * cmath.exp(1j * th))
        return wrap_angle(v.phase - target.alpha)

    found: list[float] = []
    for i in range(samples):
        u0, u1 = unwrapped[i], unwrapped[i + 1]
        if u1 == u0:
            continue
        lo, hi = (u0, u1) if u0 <= u1 else (u1, u0)
        m_lo = math.ceil((lo - target.alpha) / TWO_PI - 1e-12)
        m_hi = math.floor((hi - target.alpha) / TWO_PI + 1e-12)
        if m_hi < m_lo:
            continue
        tlo, thi = thetas[i], thetas[i + 1]
        rlo = residual_at(tlo)
        if rlo == 0.0:
            found.append(tlo % TWO_PI)
            continue
        for _ in range(60):
            mid = 0.5 * (tlo + thi)
            rmid = residual_at(mid)
            if rmid == 0.0:
                tlo = thi = mid
                break
            if (rmid > 0) == (rlo > 0):
                tlo, rlo = mid, rmid
            else:
                thi = mid
        found.append((0.5 * (tlo + thi)) % TWO_PI)
    out: list[float] = []
    for th in sorted(found):
        if not out or min(abs(th - prev) for prev in out) > 1e-6:
            out.append(th)
    # the closed circle can report the same crossing near 0 and near 2*pi
    if len(out) > 1 and abs((out[0] + TWO_PI) - out[-1]) < 1e-6:
        out.pop()
    return out


def _launch_direction(fn, pole_index: int, target: PhaseTarget, config: TraceConfig) -> float:
    poles = fn.pole_anchors()
    loc, beta = poles[pole_index]
    if isinstance(fn, MeromorphicSpec):
        if pole_index < len(fn.poles):
            return departure_angle(fn, pole_index, target).theta
        # origin_order pole anchor: root-style factor s^{-beta}, no Bode constant
        rest = _bracket_common(fn, 0j, ("origin", -1))
        return ((rest - target.degree) / beta) % TWO_PI
    dirs = numeric_anchor_directions(fn, loc, target, config.launch_radius)
    if not dirs:
        raise CorrectorDivergence(
            f"no direction at pole #{pole_index} attains degree {target}"
        )
    return dirs[0]


# -- the tracer ---------------------------------------------------------------


def _run_trace(fn, start: complex, target: PhaseTarget, config: TraceConfig,
               origin: Endpoint, initial_dir: complex,
               launch_move: float | None = None) -> LocusCurve:
    alpha = target.alpha
    tol = config.corrector_tol
    zero_anchors = _zero_anchor_list(fn)
    all_anchors = [(z, g) for z, g, _ in zero_anchors]
    all_anchors += [(loc.as_complex(), e) for loc, e in fn.pole_anchors()]
    arrival_cache: dict[int | None, tuple[float, ...] | None] = {}

    # a tight launch cap doubles as the existence test for anchor launches:
    # a degree with no locus through the launch point has an O(1) residual
    # that no small transverse move can fix
    launched = _correct(fn, start, alpha, 1j * initial_dir, tol,
                        max_move=launch_move if launch_move is not None
                        else 0.5 * config.launch_radius)
    if launched is None:
        raise CorrectorDivergence(
            f"launch correction failed at {start:.6g}: no locus of degree {target} there"
        )
    s, _ = launched
    v0, r0 = _value_and_residual(fn, s, alpha)
    points = [CurvePoint(ComplexPoint(s.real, s.imag), gain_of_value(v0), r0)]
    prev_dir = initial_dir
    h = config.step_init
    terminus: Endpoint | None = None
    saddle_event: SaddleEvent | None = None

    def stop_at_saddle(seed: complex, incoming: float) -> bool:
        nonlocal terminus, saddle_event
        sad = _locate_saddle(fn, seed)
        if sad is None:
            return False
        vr = _value_and_residual(fn, sad, alpha)
        if vr is None or abs(vr[1]) > 1e-6:
            return False
        if abs(sad - points[-1].s.as_complex()) > 8.0 * max(h, config.step_init):
            return False
        points.append(CurvePoint(ComplexPoint(sad.real, sad.imag), gain_of_value(vr[0]), vr[1]))
        saddle_event = SaddleEvent(
            location=ComplexPoint(sad.real, sad.imag),
            incoming_direction=incoming,
            outgoing_directions=_saddle_outgoing(fn, sad),
        )
        terminus = Endpoint(EndpointKind.SADDLE, None, saddle_event.location)
        return True

    while terminus is None and len(points) < config.max_points:
        s = points[-1].s.as_complex()
        try:
            ld = fn.log_derivative_at(s)
        except OutOfValidityRegion:
            terminus = Endpoint(EndpointKind.REGION_EDGE)
            break
        mag = abs(ld)
        scale = min(_anchor_distances(all_anchors, s), 1.0 + abs(s))
        if mag * scale < config.saddle_threshold:
            if stop_at_saddle(s, cmath.phase(prev_dir)):
                break
        tangent = -ld.conjugate() / mag
        if (tangent * prev_dir.conjugate()).real < 0.0:
            # descent points backward at an accepted point: we sit past a saddle
            if stop_at_saddle(s, cmath.phase(prev_dir)):
                break
            raise CorrectorDivergence(f"descent field reverses at {s:.6g} with no saddle found")

        h_try = h
        dz = _anchor_distances([(z, g) for z, g, _ in zero_anchors], s)
        if dz < 4.0 * h_try:
            h_try = max(min(h_try, 0.5 * dz), 0.25 * config.capture_radius)

        accepted = None
        while accepted is None:
            predicted = s + h_try * tangent
            try:
                result = _correct(fn, predicted, alpha, 1j * tangent, tol, max_move=h_try)
                ok = result is not None
                if ok:
                    x, iters = result
                    vr = _value_and_residual(fn, x, alpha)
                    forward = (x - s).real * tangent.real + (x - s).imag * tangent.imag
                    ok = vr is not None and forward > 0.0
            except OutOfValidityRegion:
                terminus = Endpoint(EndpointKind.REGION_EDGE)
                break
            if ok:
                kx = gain_of_value(vr[0])
                if kx <= points[-1].k:
                    # gain monotonicity broke: a saddle lies between s and x
                    if stop_at_saddle(0.5 * (s + x), cmath.phase(x - s)):
                        break
                    ok = False
            if ok:
                accepted = (x, vr[0], vr[1], iters)
                break
            h_try *= 0.5
            h = max(0.5 * h, config.step_min)
            if h_try < config.step_min:
                exc = CorrectorDivergence(
                    f"corrector failed below the minimum step near {s:.6g}"
                )
                exc.partial = LocusCurve(  # type: ignore[attr-defined]
                    degree=target, points=points, origin=origin,
                    terminus=Endpoint(EndpointKind.FAILED, detail=str(exc)),
                )
                raise exc
        if terminus is not None or accepted is None:
            break

        x, vx, rx, iters = accepted
        points.append(CurvePoint(ComplexPoint(x.real, x.imag), gain_of_value(vx), rx))
        prev_dir = (x - s) / abs(x - s)

        if abs(x) > config.escape_radius:
            terminus = Endpoint(EndpointKind.INFINITY)
            break
        for z, _gamma, index in zero_anchors:
            if abs(x - z) <= config.capture_radius:
                if index not in arrival_cache:
                    arrival_cache[index] = _arrival_direction_set(fn, index, target, config)
                dirs = arrival_cache[index]
                approach = cmath.phase(x - z)
                if dirs is None or min(abs(wrap_angle(approach - th)) for th in dirs) <= 0.2:
                    terminus = Endpoint(EndpointKind.ZERO, index, ComplexPoint(z.real, z.imag))
                    break
        if terminus is not None:
            break
        if iters <= 2:
            h = min(2.0 * h, config.step_max)
        elif iters >= 5:
            h = max(0.5 * h, config.step_min)

    if terminus is None:
        terminus = Endpoint(EndpointKind.STEP_LIMIT)
    return LocusCurve(degree=target, points=points, origin=origin, terminus=terminus,
                      saddle_event=saddle_event)


def trace_from_pole(fn, pole_index: int, target: PhaseTarget,
                    config: TraceConfig | None = None) -> LocusCurve:
    """Trace the target-degree locus out of a pole until a zero captures it,
    it escapes, meets a saddle, or hits the step limit."""
    config = config or DEFAULT_CONFIG
    poles = fn.pole_anchors()
    if not 0 <= pole_index < len(poles):
        raise InvalidIndex(f"pole index {pole_index} out of range ({len(poles)} anchors)")
    loc, _beta = poles[pole_index]
    p = loc.as_complex()
    theta = _launch_direction(fn, pole_index, target, config)
    direction = cmath.exp(1j * theta)
    start = p + config.launch_radius * direction
    origin = Endpoint(EndpointKind.POLE, pole_index, loc)
    return _run_trace(fn, start, target, config, origin, direction)


def trace_from_point(fn, start: PointLike, target: PhaseTarget,
                     config: TraceConfig | None = None,
                     origin: Endpoint | None = None) -> LocusCurve:
    """Manual launch (e.g. for loci entering from infinity): starts at a
    user-supplied boundary point and follows the descent of |W|.  The start
    only needs to lie near the target locus; the launch correction may move
    it up to two initial steps transversally."""
    config = config or DEFAULT_CONFIG
    sc = to_complex(start)
    ld = fn.log_derivative_at(sc)
    direction = -ld.conjugate() / abs(ld)
    origin = origin or Endpoint(EndpointKind.INFINITY)
    return _run_trace(fn, sc, target, config, origin, direction,
                      launch_move=2.0 * config.step_init)


def trace_fan(fn, pole_index: int, degrees: Sequence[PhaseTarget],
              config: TraceConfig | None = None) -> list[LocusCurve]:
    """One trace per degree, in input order; per-curve failures become curves
    with a "failed" terminus instead of aborting the siblings."""
    poles = fn.pole_anchors()
    if not 0 <= pole_index < len(poles):
        raise InvalidIndex(f"pole index {pole_index} out of range ({len(poles)} anchors)")
    loc = poles[pole_index][0]
    out: list[LocusCurve] = []
    for tgt in degrees:
        try:
            out.append(trace_from_pole(fn, pole_index, tgt, config))
        except MerolocusError as exc:
            out.append(
                LocusCurve(
                    degree=tgt,
                    points=[],
                    origin=Endpoint(EndpointKind.POLE, pole_index, loc),
                    terminus=Endpoint(EndpointKind.FAILED,
                                      detail=f"{type(exc).__name__}: {exc}"),
                )
            )
    return out


def continue_through_saddle(fn, curve: LocusCurve, event: SaddleEvent | None = None,
                            config: TraceConfig | None = None) -> list[LocusCurve]:
    """Restart one trace per outgoing saddle ray (excluding the reversal of
    the incoming branch), preserving the degree target."""
    config = config or DEFAULT_CONFIG
    event = event or curve.saddle_event
    if event is None or curve.terminus.kind is not EndpointKind.SADDLE:
        raise ValueError("curve did not terminate at a saddle")
    sad = event.location.as_complex()
    reverse = wrap_angle(event.incoming_direction + math.pi)
    out: list[LocusCurve] = []
    for psi in event.outgoing_directions:
        if abs(wrap_angle(psi - reverse)) <= 0.3:
            continue
        direction = cmath.exp(1j * psi)
        start = sad + config.launch_radius * direction
        origin = Endpoint(EndpointKind.SADDLE, None, event.location)
        try:
            out.append(_run_trace(fn, start, curve.degree, config, origin, direction))
        except MerolocusError as exc:
            out.append(
                LocusCurve(
                    degree=curve.degree,
                    points=[],
                    origin=origin,
                    terminus=Endpoint(EndpointKind.FAILED,
                                      detail=f"{type(exc).__name__}: {exc}"),
                )
            )
    return out


# -- verification -------------------------------------------------------------


@dataclass
class CurveReport:
    degree_pi_units: float
    n_points: int
    max_residual: float
    residual_tol: float
    k_monotone: bool
    k_first: float
    k_last: float
    initial_direction: float | None
    origin: str
    terminus: str
    passed: bool

    def to_dict(self) -> dict:
        return {
            "degree_pi_units": self.degree_pi_units,
            "n_points": self.n_points,
            "max_residual": self.max_residual,
            "residual_tol": self.residual_tol,
            "k_monotone": self.k_monotone,
            "k_first": self.k_first,
            "k_last": self.k_last,
            "initial_direction": self.initial_direction,
            "origin": self.origin,
            "terminus": self.terminus,
            "passed": self.passed,
        }


def verify_curve(fn, curve: LocusCurve, tol: float = 1e-8) -> CurveReport:
    """Independent re-check of a traced curve: residuals are recomputed from
    the function, gain monotonicity re-measured, endpoints summarized."""
    if not curve.points:
        raise ValueError("cannot verify an empty curve")
    max_residual = 0.0
    gains: list[float] = []
    for pt in curve.points:
        vr = _value_and_residual(fn, pt.s.as_complex(), curve.degree.alpha)
        if vr is None:
            max_residual = math.inf
            gains.append(math.nan)
            continue
        v, r = vr
        max_residual = max(max_residual, abs(r))
        gains.append(gain_of_value(v))
    monotone = all(b > a for a, b in zip(gains, gains[1:]))
    initial_direction = None
    if curve.origin.location is not None and len(curve.points) >= 1:
        delta = curve.points[0].s.as_complex() - curve.origin.location.as_complex()
        if delta != 0:
            initial_direction = cmath.phase(delta) % TWO_PI
    return CurveReport(
        degree_pi_units=curve.degree.pi_units,
        n_points=len(curve.points),
        max_residual=max_residual,
        residual_tol=tol,
        k_monotone=monotone,
        k_first=gains[0],
        k_last=gains[-1],
        initial_direction=initial_direction,
        origin=curve.origin.describe(),
        terminus=curve.terminus.describe(),
        passed=max_residual <= tol,
    )


def grid_scan_oracle(fn, window: Window, resolution: int, target: PhaseTarget,
                     delta: float) -> list[tuple[ComplexPoint, float]]:
    """Brute-force locus membership on a grid, independent of the tracer.

    ``resolution`` counts cells per axis; the grid includes both window edges
    (resolution+1 points per axis), so axis-aligned loci fall exactly on grid
    rows when the window is centered on them.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if not delta > 0:
        raise ValueError("delta must be positive")
    hits: list[tuple[ComplexPoint, float]] = []
    dx = (window.sigma_max - window.sigma_min) / resolution
    dy = (window.t_max - window.t_min) / resolution
    for iy in range(resolution + 1):
        t = window.t_min + iy * dy
        for ix in range(resolution + 1):
            sc = complex(window.sigma_min + ix * dx, t)
            v = fn.value_at(sc)
            if v.kind is not ValueKind.REGULAR:
                continue
            r = wrap_angle(v.phase - target.alpha)
            if abs(r) < delta:
                hits.append((ComplexPoint(sc.real, sc.imag), r))
    return hits
