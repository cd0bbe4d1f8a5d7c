"""Built-in functions and named examples.

Rational control-theory specs come back as factored MeromorphicSpec values;
zeta, eta, gamma and the completed xi function are black boxes evaluated to
an absolute-error contract of 1e-10 inside the desk-scale validity rectangle
sigma in [-5, 5], |t| <= 50, and adapted into the gain/phase/tracing pipeline
through known-anchor tables.

Algorithms: zeta by Euler-Maclaurin summation with the remainder bound driving
the truncation; eta by Borwein-style Chebyshev acceleration of the alternating
series (kept independent of zeta so the eta = (1 - 2^{1-s}) zeta identity is a
real cross-check); gamma by the 15-term Lanczos approximation with reflection
for sigma < 1/2; xi composed in log space as (s-1) Gamma(s/2+1) pi^{-s/2}
zeta(s), with local Taylor patches where the factors trade poles for zeros.

The embedded nontrivial zeta zeros were recomputed for this package by
argument-principle winding counts over bracketing rectangles followed by
Newton refinement on zeta (tests repeat that derivation).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import OutOfValidityRegion, UnknownFunction
from .model import (
    ComplexPoint,
    EntireFactor,
    Form,
    FunctionValue,
    MeromorphicSpec,
    PointLike,
    PoleTerm,
    SNAP_RADIUS_DEFAULT,
    ValueKind,
    ZeroTerm,
    principal_log,
    to_complex,
    wrap_angle,
)
from .tracer import Window

#: Accuracy rectangle shared by the analytic builtins.
VALIDITY_REGION = Window(-5.0, 5.0, -50.0, 50.0)

#: Contracted absolute evaluator error inside the region.
EVALUATOR_ABS_ERROR = 1e-10

# Internal truncation targets run well below the contract to leave headroom
# for the composed functions.
_ZETA_TARGET = 1e-13

_LN2 = math.log(2.0)

# B_{2k} for k = 1..15, exact.
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730), Fraction(8553103, 6), Fraction(-23749461029, 870),
    Fraction(8615841276005, 14322),
]
_B2K = [float(b) for b in _BERNOULLI]

# First three nontrivial zeta zeros (imaginary parts), recomputed via the
# argument principle + Newton refinement; see tests/test_catalog.py.
ZETA_ZERO_ORDINATES = (
    14.134725141734693,
    21.022039638771552,
    25.01085758014569,
)


def _require_in_region(s: complex, name: str) -> None:
    if not VALIDITY_REGION.contains(s):
        raise OutOfValidityRegion(
            f"{name} accuracy contract holds for sigma in [-5, 5], |t| <= 50; got {s}"
        )


# -- Riemann zeta by Euler-Maclaurin ------------------------------------------


def _zeta_em_parts(s: complex, n_terms: int, m_terms: int) -> tuple[complex, complex, float]:
    """(partial value without the pole term, pole coefficient N^{1-s}, bound).

    zeta(s) = sum_{n<N} n^-s + N^-s/2 + N^{1-s}/(s-1) + corrections; the
    N^{1-s} piece is returned separately so (s-1)*zeta(s) can be formed
    without cancellation at s = 1.  The returned bound is the standard
    |next term| * |s+2M+1|/(sigma+2M+1) remainder estimate.
    """
    acc = 0j
    for n in range(1, n_terms):
        acc += cmath.exp(-s * math.log(n))
    n_to_minus_s = cmath.exp(-s * math.log(n_terms))
    acc += 0.5 * n_to_minus_s
    pole_coeff = n_to_minus_s * n_terms  # N^{1-s}
    # correction terms t_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    term = _B2K[0] / 2.0 * s * (n_to_minus_s / n_terms)
    acc += term
    inv_n2 = 1.0 / (n_terms * n_terms)
    for k in range(1, m_terms):
        ratio = (_B2K[k] / _B2K[k - 1]) * inv_n2 / ((2 * k + 1) * (2 * k + 2))
        term = term * ratio * (s + (2 * k - 1)) * (s + 2 * k)
        acc += term
    k = m_terms
    next_term = term * (_B2K[k] / _B2K[k - 1]) * inv_n2 / ((2 * k + 1) * (2 * k + 2)) \
        * (s + (2 * k - 1)) * (s + 2 * k)
    denom = s.real + 2 * m_terms + 1
    bound = abs(next_term) * (abs(s + 2 * m_terms + 1) / denom if denom > 0 else 10.0)
    return acc, pole_coeff, bound


def _zeta_em_right(s: complex, want_star: bool) -> complex:
    """zeta(s), or (s-1)*zeta(s) when want_star (stable through s = 1)."""
    n_terms = max(20, int(math.ceil(2.0 * abs(s.imag))))
    m_terms = 14
    for _ in range(6):
        acc, pole_coeff, bound = _zeta_em_parts(s, n_terms, m_terms)
        if bound <= _ZETA_TARGET:
            break
        n_terms = int(math.ceil(1.5 * n_terms))
    if want_star:
        return acc * (s - 1.0) + pole_coeff
    return acc + pole_coeff / (s - 1.0)


def _chi(s: complex) -> complex:
    """Functional-equation factor: zeta(s) = chi(s) * zeta(1-s)."""
    return (
        cmath.exp(s * _LN2)
        * cmath.exp((s - 1.0) * math.log(math.pi))
        * cmath.sin(0.5 * math.pi * s)
        * cmath.exp(_log_gamma_right(1.0 - s))
    )


def _zeta_em(s: complex, want_star: bool) -> complex:
    """Euler-Maclaurin zeta.  Left of sigma = 0 the summation terms n^{-s}
    grow like n^{|sigma|} and their roundoff swamps the 1e-10 contract, so the
    value is reflected through the functional equation onto sigma >= 1 where
    the terms are bounded; the trivial zeros then inherit the full relative
    accuracy of sin(pi s / 2)."""
    if s.real >= 0.0:
        return _zeta_em_right(s, want_star)
    value = _chi(s) * _zeta_em_right(1.0 - s, want_star=False)
    return value * (s - 1.0) if want_star else value


def zeta(s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> FunctionValue:
    """Riemann zeta inside the validity region; the point s = 1 comes back
    flagged as kind=Pole."""
    sc = to_complex(s)
    _require_in_region(sc, "zeta")
    if abs(sc - 1.0) <= snap:
        return FunctionValue.pole()
    return FunctionValue.from_complex(_zeta_em(sc, want_star=False))


def zeta_star(s: PointLike) -> complex:
    """(s-1)*zeta(s): entire in the region, exact through the pole."""
    sc = to_complex(s)
    _require_in_region(sc, "zeta")
    return _zeta_em(sc, want_star=True)


# -- Dirichlet eta by accelerated alternating series ---------------------------


def _borwein_weights(n: int) -> tuple[float, ...]:
    """d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), exact integers."""
    d = []
    acc = 0
    for i in range(n + 1):
        acc += (
            math.factorial(n + i - 1) * (4 ** i)
            // (math.factorial(n - i) * math.factorial(2 * i))
        )
        d.append(float(n * acc))
    return tuple(d)


_BORWEIN_CACHE: dict[int, tuple[float, ...]] = {}


def _eta_borwein_right(s: complex) -> complex:
    # error ~ (3+sqrt 8)^-n inflated by e^{pi|t|/2}; n padded accordingly
    n = 40 + int(math.ceil(0.92 * abs(s.imag)))
    if n not in _BORWEIN_CACHE:
        _BORWEIN_CACHE[n] = _borwein_weights(n)
    d = _BORWEIN_CACHE[n]
    acc = 0j
    sign = 1.0
    for k in range(n):
        acc += sign * (d[n] - d[k]) * cmath.exp(-s * math.log(k + 1))
        sign = -sign
    return acc / d[n]


def _eta_accelerated(s: complex) -> complex:
    """Accelerated alternating series; reflected onto sigma >= 1 for negative
    sigma (same roundoff reason as zeta) via
    eta(s) = chi(s) * (1 - 2^{1-s})/(1 - 2^s) * eta(1-s),
    which keeps eta independent of the zeta evaluator."""
    if s.real >= -0.25:
        return _eta_borwein_right(s)
    ratio = (1.0 - cmath.exp((1.0 - s) * _LN2)) / (1.0 - cmath.exp(s * _LN2))
    return _chi(s) * ratio * _eta_borwein_right(1.0 - s)


def eta(s: PointLike) -> FunctionValue:
    """Dirichlet eta (alternating zeta), entire; independent of zeta()."""
    sc = to_complex(s)
    _require_in_region(sc, "eta")
    return FunctionValue.from_complex(_eta_accelerated(sc))


# -- gamma by Lanczos ----------------------------------------------------------

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def _log_gamma_right(z: complex) -> complex:
    """log Gamma for Re z >= 0.5 (principal branch of each log factor)."""
    zz = z - 1.0
    series = _LANCZOS_C[0] + 0j
    for i in range(1, len(_LANCZOS_C)):
        series += _LANCZOS_C[i] / (zz + i)
    base = zz + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (zz + 0.5) * cmath.log(base) - base + cmath.log(series)


def log_gamma(z: complex) -> complex:
    """log Gamma(z) with reflection for Re z < 0.5; Im part is a principal
    per-factor composition, not the continuous lgamma branch."""
    if z.real >= 0.5:
        return _log_gamma_right(z)
    return math.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - _log_gamma_right(1.0 - z)


def gamma(s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> FunctionValue:
    """Gamma function; non-positive integers come back flagged as kind=Pole."""
    sc = to_complex(s)
    if sc.real <= 0.25:
        nearest = round(sc.real)
        if nearest <= 0 and abs(sc - nearest) <= snap:
            return FunctionValue.pole()
    return FunctionValue.regular(log_gamma(sc))


# -- completed xi ---------------------------------------------------------------


def _xi_log_direct(s: complex) -> complex:
    """log xi via (s-1) Gamma(s/2+1) pi^{-s/2} zeta(s); the (s-1)*zeta product
    is formed stably through zeta_star, so only the Gamma poles at s = -2, -4
    (cancelled by trivial zeta zeros) need the Taylor patches."""
    return (
        principal_log(zeta_star(s))
        + log_gamma(0.5 * s + 1.0)
        - 0.5 * s * math.log(math.pi)
    )


@dataclass
class _TaylorPatch:
    """Local Taylor model of an analytic function, built from trapezoid sums
    of samples on a circle; bridges the pole/zero cancellations of xi."""

    center: complex
    coeffs: tuple[complex, ...]
    activation: float

    @classmethod
    def build(cls, f: Callable[[complex], complex], center: complex, radius: float = 0.5,
              n_coeffs: int = 26, samples: int = 128, activation: float = 0.02,
              real_symmetric: bool = True) -> "_TaylorPatch":
        vals = [f(center + radius * cmath.exp(2j * math.pi * k / samples)) for k in range(samples)]
        coeffs = []
        for j in range(n_coeffs):
            acc = 0j
            for k, v in enumerate(vals):
                acc += v * cmath.exp(-2j * math.pi * j * k / samples)
            c = acc / (samples * radius ** j)
            if real_symmetric:
                c = complex(c.real, 0.0)
            coeffs.append(c)
        return cls(center=center, coeffs=tuple(coeffs), activation=activation)

    def value(self, s: complex) -> complex:
        u = s - self.center
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc


# zeta_star keeps s = 1 regular, so only the Gamma-pole/trivial-zero
# cancellations need patches
_XI_PATCH_CENTERS = (-2.0, -4.0)
_XI_PATCHES: dict[float, _TaylorPatch] = {}


def _xi_value_direct(s: complex) -> complex:
    return cmath.exp(_xi_log_direct(s))


def _xi_patch(center: float) -> _TaylorPatch:
    patch = _XI_PATCHES.get(center)
    if patch is None:
        patch = _TaylorPatch.build(_xi_value_direct, complex(center, 0.0))
        _XI_PATCHES[center] = patch
    return patch


def xi(s: PointLike) -> FunctionValue:
    """Completed xi: xi(s) = 1/2 s(s-1) Gamma(s/2) pi^{-s/2} zeta(s), entire;
    real on the real axis and on the critical line."""
    sc = to_complex(s)
    _require_in_region(sc, "xi")
    for center in _XI_PATCH_CENTERS:
        if abs(sc - center) <= 0.02:
            return FunctionValue.from_complex(_xi_patch(center).value(sc))
    return FunctionValue.regular(_xi_log_direct(sc))


def xi_reality_check(t_samples: list[float] | tuple[float, ...]) -> float:
    """max over samples of |Im xi(1/2 + it)| / max(|xi|, 1e-300)."""
    worst = 0.0
    for t in t_samples:
        value = xi(complex(0.5, t))
        w = value.as_complex()
        ratio = abs(w.imag) / max(abs(w), 1e-300)
        worst = max(worst, ratio)
    return worst


# -- black-box adapters ----------------------------------------------------------


@dataclass(frozen=True)
class BlackBoxFunction:
    """An analytic builtin adapted to the locus machinery: log-polar
    evaluator, a log-derivative rule (finite differences by default), and
    independently computed anchor tables inside a validity rectangle."""

    id: str
    evaluator: Callable[[complex], FunctionValue]
    validity_region: Window
    known_zeros: tuple[tuple[ComplexPoint, float], ...] = ()
    known_poles: tuple[tuple[ComplexPoint, float], ...] = ()
    log_derivative_fn: Callable[[complex], complex] | None = None

    def __post_init__(self) -> None:
        for loc, _ in (*self.known_zeros, *self.known_poles):
            if not self.validity_region.contains(loc):
                raise ValueError(f"anchor {loc} outside the validity region of {self.id}")

    # the FunctionModel surface shared with MeromorphicSpec ------------------

    def zero_anchors(self) -> list[tuple[ComplexPoint, float]]:
        return list(self.known_zeros)

    def pole_anchors(self) -> list[tuple[ComplexPoint, float]]:
        return list(self.known_poles)

    def value_at(self, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> FunctionValue:
        sc = to_complex(s)
        for loc, _ in self.known_zeros:
            if abs(sc - loc.as_complex()) <= snap:
                return FunctionValue.zero()
        for loc, _ in self.known_poles:
            if abs(sc - loc.as_complex()) <= snap:
                return FunctionValue.pole()
        return self.evaluator(sc)

    def is_regular_at(self, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> bool:
        return self.value_at(s, snap).kind is ValueKind.REGULAR

    def log_derivative_at(self, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> complex:
        sc = to_complex(s)
        if self.log_derivative_fn is not None:
            return self.log_derivative_fn(sc)
        return finite_difference_log_derivative(self, sc)


def finite_difference_log_derivative(fn, s: complex, h: float | None = None) -> complex:
    """Central differences of log W with branch-consistent phase differences,
    Richardson-combined: (4 D(h/2) - D(h)) / 3.

    The stencil must stay well inside the distance to the nearest anchor:
    log W varies like log(s - z) there, and a straddling stencil biases the
    slope enough to stall Newton correctors."""

    def diff(step: float) -> complex:
        vp = fn.value_at(s + step)
        vm = fn.value_at(s - step)
        if vp.kind is not ValueKind.REGULAR or vm.kind is not ValueKind.REGULAR:
            raise OutOfValidityRegion("finite-difference stencil hit a singular point")
        re = (vp.log_magnitude - vm.log_magnitude) / (2.0 * step)
        im = wrap_angle(vp.phase - vm.phase) / (2.0 * step)
        return complex(re, im)

    if h is None:
        h = 1e-6 * (1.0 + abs(s))
        anchors = [loc.as_complex() for loc, _ in (*fn.zero_anchors(), *fn.pole_anchors())]
        if anchors:
            nearest = min(abs(s - a) for a in anchors)
            h = min(h, 0.2 * nearest)
        h = max(h, 1e-13)
    return (4.0 * diff(0.5 * h) - diff(h)) / 3.0


def _zeta_zero_table() -> tuple[tuple[ComplexPoint, float], ...]:
    nontrivial = []
    for t in ZETA_ZERO_ORDINATES:
        nontrivial.append((ComplexPoint(0.5, t), 1.0))
        nontrivial.append((ComplexPoint(0.5, -t), 1.0))
    trivial = [(ComplexPoint(-2.0, 0.0), 1.0), (ComplexPoint(-4.0, 0.0), 1.0)]
    return tuple(nontrivial + trivial)


def _eta_line_zeros() -> tuple[tuple[ComplexPoint, float], ...]:
    # eta = (1 - 2^{1-s}) zeta vanishes on sigma = 1 at t = 2 pi k / ln 2
    out = []
    k = 1
    while True:
        t = 2.0 * math.pi * k / _LN2
        if t > VALIDITY_REGION.t_max:
            break
        out.append((ComplexPoint(1.0, t), 1.0))
        out.append((ComplexPoint(1.0, -t), 1.0))
        k += 1
    return tuple(out)


def _build_zeta_box() -> BlackBoxFunction:
    return BlackBoxFunction(
        id="zeta",
        evaluator=lambda sc: zeta(sc),
        validity_region=VALIDITY_REGION,
        known_zeros=_zeta_zero_table(),
        known_poles=((ComplexPoint(1.0, 0.0), 1.0),),
    )


def _build_eta_box() -> BlackBoxFunction:
    return BlackBoxFunction(
        id="eta",
        evaluator=lambda sc: eta(sc),
        validity_region=VALIDITY_REGION,
        known_zeros=_zeta_zero_table() + _eta_line_zeros(),
        known_poles=(),
    )


def _build_gamma_box() -> BlackBoxFunction:
    poles = tuple(
        (ComplexPoint(float(-k), 0.0), 1.0)
        for k in range(0, int(-VALIDITY_REGION.sigma_min) + 1)
    )
    return BlackBoxFunction(
        id="gamma",
        evaluator=lambda sc: gamma(sc),
        validity_region=VALIDITY_REGION,
        known_zeros=(),
        known_poles=poles,
    )


def _build_xi_box() -> BlackBoxFunction:
    nontrivial = tuple(
        (ComplexPoint(0.5, sign * t), 1.0)
        for t in ZETA_ZERO_ORDINATES
        for sign in (1.0, -1.0)
    )
    return BlackBoxFunction(
        id="xi",
        evaluator=lambda sc: xi(sc),
        validity_region=VALIDITY_REGION,
        known_zeros=nontrivial,
        known_poles=(),
    )


_BLACK_BOX_BUILDERS: dict[str, Callable[[], BlackBoxFunction]] = {
    "zeta": _build_zeta_box,
    "eta": _build_eta_box,
    "gamma": _build_gamma_box,
    "xi": _build_xi_box,
}
_BLACK_BOX_CACHE: dict[str, BlackBoxFunction] = {}


def as_black_box_spec(fn_id: str) -> BlackBoxFunction:
    """Adapter registry: gain, phase, residual and tracing all operate through
    the evaluator; anchor angles come from local-phase sampling because the
    factored-form formulas are unavailable."""
    if fn_id not in _BLACK_BOX_BUILDERS:
        raise UnknownFunction(f"no registered black box named {fn_id!r}")
    if fn_id not in _BLACK_BOX_CACHE:
        _BLACK_BOX_CACHE[fn_id] = _BLACK_BOX_BUILDERS[fn_id]()
    return _BLACK_BOX_CACHE[fn_id]


# -- named rational examples -----------------------------------------------------


def named_rational(name: str) -> MeromorphicSpec:
    """Regression corpus of small control-theory style specs."""
    if name == "single_pole":  # W = 1/(1-s)
        return MeromorphicSpec(form=Form.BODE, poles=(PoleTerm(ComplexPoint(1.0, 0.0), 1.0),))
    if name == "pole_zero_pair":  # W = (1-s/2)/(1-s)
        return MeromorphicSpec(
            form=Form.BODE,
            zeros=(ZeroTerm(ComplexPoint(2.0, 0.0), 1.0),),
            poles=(PoleTerm(ComplexPoint(1.0, 0.0), 1.0),),
        )
    if name == "two_pole":  # W = 1/(s(s+1))
        return MeromorphicSpec(
            form=Form.ROOT,
            poles=(PoleTerm(ComplexPoint(0.0, 0.0), 1.0), PoleTerm(ComplexPoint(-1.0, 0.0), 1.0)),
        )
    if name == "three_pole":  # W = 1/(s(s+1)(s+2))
        return MeromorphicSpec(
            form=Form.ROOT,
            poles=(
                PoleTerm(ComplexPoint(0.0, 0.0), 1.0),
                PoleTerm(ComplexPoint(-1.0, 0.0), 1.0),
                PoleTerm(ComplexPoint(-2.0, 0.0), 1.0),
            ),
        )
    if name == "fractional_pole":  # W = (1-s)^(-1/2)
        return MeromorphicSpec(form=Form.BODE, poles=(PoleTerm(ComplexPoint(1.0, 0.0), 0.5),))
    raise UnknownFunction(f"no rational example named {name!r}")


RATIONAL_NAMES = ("single_pole", "pole_zero_pair", "two_pole", "three_pole", "fractional_pole")
BLACK_BOX_NAMES = tuple(sorted(_BLACK_BOX_BUILDERS))


def catalog_listing() -> dict:
    """JSON-ready listing of builtins and the embedded zero tables."""
    return {
        "rational": {
            name: {
                "poles": [
                    {"re": p.location.sigma, "im": p.location.t, "exponent": p.exponent}
                    for p in named_rational(name).poles
                ],
                "zeros": [
                    {"re": z.location.sigma, "im": z.location.t, "exponent": z.exponent}
                    for z in named_rational(name).zeros
                ],
                "form": named_rational(name).form.value,
            }
            for name in RATIONAL_NAMES
        },
        "black_box": {
            name: {
                "validity_region": {
                    "sigma_min": as_black_box_spec(name).validity_region.sigma_min,
                    "sigma_max": as_black_box_spec(name).validity_region.sigma_max,
                    "t_min": as_black_box_spec(name).validity_region.t_min,
                    "t_max": as_black_box_spec(name).validity_region.t_max,
                },
                "known_zeros": [
                    {"re": loc.sigma, "im": loc.t, "exponent": e}
                    for loc, e in as_black_box_spec(name).known_zeros
                ],
                "known_poles": [
                    {"re": loc.sigma, "im": loc.t, "exponent": e}
                    for loc, e in as_black_box_spec(name).known_poles
                ],
            }
            for name in BLACK_BOX_NAMES
        },
    }
