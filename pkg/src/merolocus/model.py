"""Factored meromorphic function model.

A function is represented in the factored form

    W(s) = G(s) * s^k * prod_l (1 - s/z_l)^gamma_l G_lz(s)
                      / prod_j (1 - s/p_j)^beta_j  G_jp(s)      (Bode form)

or with root-form factors (s - z_l)^gamma_l / (s - p_j)^beta_j.  G and the
per-term corrections are entire factors exp(c_0 + c_1 s + ... + c_D s^D),
optionally carrying a Weierstrass elementary-factor order for truncated
infinite products.  The explicit s^k factor (``origin_order``) covers zeros
and poles at the origin, which the Bode factors cannot express.

Evaluation is carried in log-polar form (log-magnitude, phase), summing one
logarithm per factor, so values survive arbitrarily close to poles without
overflow.  Non-integer exponents use the principal branch of each factor's
logarithm; the total phase is the per-factor sum, which makes W single-valued
for a given spec even where individual powers are multivalued.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Sequence, Union

from .errors import NotRegularPoint

TWO_PI = 2.0 * math.pi

#: Default radius inside which an evaluation point snaps onto a zero/pole.
SNAP_RADIUS_DEFAULT = 1e-12


def wrap_angle(x: float) -> float:
    """Map an angle to the principal range (-pi, pi].

    Built on math.remainder so exact multiples of pi stay exact; the tie at
    -pi is attributed to the positive side.
    """
    r = math.remainder(x, TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


def principal_arg(w: complex) -> float:
    """Principal argument in (-pi, pi]; folds atan2's -pi (negative real axis
    approached from below zero) onto +pi for determinism."""
    a = cmath.phase(w)
    if a <= -math.pi:
        a += TWO_PI
    return a


def principal_log(w: complex) -> complex:
    """log|w| + i*Arg(w) with the (-pi, pi] argument convention."""
    return complex(math.log(abs(w)), principal_arg(w))


PointLike = Union["ComplexPoint", complex, float, int]


def to_complex(s: PointLike) -> complex:
    if isinstance(s, ComplexPoint):
        return s.as_complex()
    return complex(s)


@dataclass(frozen=True)
class ComplexPoint:
    """A point s = sigma + i t of the extended plane.

    Coordinates must be finite unless ``at_infinity`` is set, in which case
    sigma/t are only a direction hint and the point cannot be evaluated.
    """

    sigma: float
    t: float = 0.0
    at_infinity: bool = False

    def __post_init__(self) -> None:
        if not self.at_infinity:
            if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
                raise ValueError("finite coordinates required unless at_infinity is set")

    @classmethod
    def of(cls, value: PointLike) -> "ComplexPoint":
        if isinstance(value, ComplexPoint):
            return value
        c = complex(value)
        return cls(c.real, c.imag)

    def as_complex(self) -> complex:
        if self.at_infinity:
            raise ValueError("point at infinity has no finite complex value")
        return complex(self.sigma, self.t)

    def __complex__(self) -> complex:
        return self.as_complex()

    def distance_to(self, other: PointLike) -> float:
        return abs(self.as_complex() - to_complex(other))


class Form(Enum):
    """Normalization of the factored representation."""

    BODE = "bode"   # factors (1 - s/z)^gamma, value 1 at the origin
    ROOT = "root"   # factors (s - z)^gamma


class ValueKind(Enum):
    REGULAR = "regular"
    ZERO = "zero"
    POLE = "pole"


@dataclass(frozen=True)
class FunctionValue:
    """W(s) in log-polar form: log|W|, principal phase, and a kind flag.

    kind=ZERO iff log_magnitude = -inf, kind=POLE iff +inf; the phase field
    is 0.0 at singular points (undefined there).
    """

    log_magnitude: float
    phase: float
    kind: ValueKind = ValueKind.REGULAR

    @classmethod
    def regular(cls, log_value: complex) -> "FunctionValue":
        return cls(log_value.real, wrap_angle(log_value.imag), ValueKind.REGULAR)

    @classmethod
    def zero(cls) -> "FunctionValue":
        return cls(-math.inf, 0.0, ValueKind.ZERO)

    @classmethod
    def pole(cls) -> "FunctionValue":
        return cls(math.inf, 0.0, ValueKind.POLE)

    @classmethod
    def from_complex(cls, w: complex) -> "FunctionValue":
        if w == 0:
            return cls.zero()
        if cmath.isinf(w):
            return cls.pole()
        return cls.regular(principal_log(w))

    @property
    def magnitude(self) -> float:
        if self.log_magnitude > 709.0:
            return math.inf
        return math.exp(self.log_magnitude)

    def as_complex(self) -> complex:
        """Reconstruct u + iv.  Exact cardinal phases (0, +-pi/2, pi) map to
        exact axis values so real/imaginary-axis symmetry survives rounding."""
        if self.kind is ValueKind.ZERO:
            return 0j
        if self.kind is ValueKind.POLE:
            raise NotRegularPoint("no finite complex value at a pole")
        m = self.magnitude
        ph = self.phase
        if ph == 0.0:
            return complex(m, 0.0)
        if ph == math.pi:
            return complex(-m, 0.0)
        half_pi = 0.5 * math.pi
        if ph == half_pi:
            return complex(0.0, m)
        if ph == -half_pi:
            return complex(0.0, -m)
        return complex(m * math.cos(ph), m * math.sin(ph))


def _poly_eval(coeffs: Sequence[complex], s: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def _poly_derivative(coeffs: Sequence[complex]) -> tuple[complex, ...]:
    return tuple(k * c for k, c in enumerate(coeffs))[1:]


def _poly_combine(a: Sequence[complex], b: Sequence[complex], sign: float) -> tuple[complex, ...]:
    n = max(len(a), len(b))
    out = [0j] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += sign * c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_add(a: Sequence[complex], b: Sequence[complex]) -> tuple[complex, ...]:
    return _poly_combine(a, b, 1.0)


def _poly_sub(a: Sequence[complex], b: Sequence[complex]) -> tuple[complex, ...]:
    return _poly_combine(a, b, -1.0)


@dataclass(frozen=True)
class EntireFactor:
    """exp(c_0 + c_1 s + ... + c_D s^D), never zero at finite points.

    ``weierstrass_order`` is meaningful when the factor is attached to a
    zero/pole term: order n adds the elementary-factor exponent
    exp(exponent * sum_{k=1..n} (s/z)^k / k) for convergence of truncated
    infinite products.
    """

    exponent_polynomial: tuple[complex, ...] = ()
    weierstrass_order: int | None = None

    def __post_init__(self) -> None:
        coeffs = tuple(complex(c) for c in self.exponent_polynomial)
        object.__setattr__(self, "exponent_polynomial", coeffs)
        if self.weierstrass_order is not None and self.weierstrass_order < 0:
            raise ValueError("weierstrass_order must be non-negative")

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponent_polynomial) and not self.weierstrass_order

    def log_at(self, s: complex) -> complex:
        return _poly_eval(self.exponent_polynomial, s)

    def log_derivative_at(self, s: complex) -> complex:
        return _poly_eval(_poly_derivative(self.exponent_polynomial), s)


def _validated_term(term: "ZeroTerm | PoleTerm") -> None:
    if term.location.at_infinity:
        raise ValueError("zero/pole locations must be finite")
    if not (term.exponent > 0 and math.isfinite(term.exponent)):
        raise ValueError("term exponent must be positive and finite")
    if (
        term.correction is not None
        and term.correction.weierstrass_order
        and term.location.as_complex() == 0
    ):
        raise ValueError("Weierstrass correction undefined for a term at the origin")


@dataclass(frozen=True)
class ZeroTerm:
    location: ComplexPoint
    exponent: float = 1.0
    correction: EntireFactor | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "location", ComplexPoint.of(self.location))
        _validated_term(self)


@dataclass(frozen=True)
class PoleTerm:
    location: ComplexPoint
    exponent: float = 1.0
    correction: EntireFactor | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "location", ComplexPoint.of(self.location))
        _validated_term(self)


def _term_log(term: ZeroTerm | PoleTerm, s: complex, form: Form) -> complex:
    """Per-factor principal log of (base)^exponent * correction."""
    z = term.location.as_complex()
    base = (1.0 - s / z) if form is Form.BODE else (s - z)
    if base == 0:
        raise ValueError(
            "evaluation exactly on a coincident zero/pole location; run cancel_coincident first"
        )
    out = term.exponent * principal_log(base)
    if term.correction is not None:
        out += term.correction.log_at(s)
        n = term.correction.weierstrass_order or 0
        if n:
            u = s / z
            upow = 1.0 + 0j
            acc = 0j
            for k in range(1, n + 1):
                upow *= u
                acc += upow / k
            out += term.exponent * acc
    return out


def _term_log_derivative(term: ZeroTerm | PoleTerm, s: complex) -> complex:
    # d/ds [exponent*log(1 - s/z)] = d/ds [exponent*log(s - z)] = exponent/(s - z)
    z = term.location.as_complex()
    out = term.exponent / (s - z)
    if term.correction is not None:
        out += term.correction.log_derivative_at(s)
        n = term.correction.weierstrass_order or 0
        if n:
            spow = 1.0 + 0j
            acc = 0j
            zpow = z
            for _ in range(1, n + 1):
                acc += spow / zpow
                spow *= s
                zpow *= z
            out += term.exponent * acc
    return out


def _wsum_poly(z: complex, order: int, scale: float) -> tuple[complex, ...]:
    """Coefficients of scale * sum_{k=1..order} (s/z)^k / k as a polynomial in s."""
    coeffs = [0j]
    zpow = z
    for k in range(1, order + 1):
        coeffs.append(scale / (k * zpow))
        zpow *= z
    return tuple(coeffs)


@dataclass(frozen=True)
class MeromorphicSpec:
    """Immutable factored representation of W(s); see the module docstring."""

    form: Form = Form.BODE
    prefactor: EntireFactor = field(default_factory=EntireFactor)
    origin_order: float = 0.0
    zeros: tuple[ZeroTerm, ...] = ()
    poles: tuple[PoleTerm, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "zeros", tuple(self.zeros))
        object.__setattr__(self, "poles", tuple(self.poles))
        if not math.isfinite(self.origin_order):
            raise ValueError("origin_order must be finite")
        if self.form is Form.BODE:
            for term in (*self.zeros, *self.poles):
                if term.location.as_complex() == 0:
                    raise ValueError("Bode form cannot hold a term at the origin; use origin_order")
        # coincident equal-exponent zero/pole pairs are representable so that
        # cancel_coincident can repair them, but evaluating exactly on such a
        # removable location raises until the spec is cancelled

    # -- anchors -----------------------------------------------------------

    def zero_anchors(self) -> list[tuple[ComplexPoint, float]]:
        out = [(zt.location, zt.exponent) for zt in self.zeros]
        if self.origin_order > 0:
            out.append((ComplexPoint(0.0, 0.0), self.origin_order))
        return out

    def pole_anchors(self) -> list[tuple[ComplexPoint, float]]:
        out = [(pt.location, pt.exponent) for pt in self.poles]
        if self.origin_order < 0:
            out.append((ComplexPoint(0.0, 0.0), -self.origin_order))
        return out

    # -- evaluation --------------------------------------------------------

    def _classify(self, s: complex, snap: float) -> ValueKind:
        net = 0.0
        hit = False
        if self.origin_order != 0.0 and abs(s) <= snap:
            net += self.origin_order
            hit = True
        for zt in self.zeros:
            if abs(s - zt.location.as_complex()) <= snap:
                net += zt.exponent
                hit = True
        for pt in self.poles:
            if abs(s - pt.location.as_complex()) <= snap:
                net -= pt.exponent
                hit = True
        if not hit or net == 0.0:
            return ValueKind.REGULAR
        return ValueKind.ZERO if net > 0 else ValueKind.POLE

    def is_regular_at(self, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> bool:
        return self._classify(to_complex(s), snap) is ValueKind.REGULAR

    def value_at(self, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> FunctionValue:
        sc = to_complex(s)
        kind = self._classify(sc, snap)
        if kind is ValueKind.ZERO:
            return FunctionValue.zero()
        if kind is ValueKind.POLE:
            return FunctionValue.pole()
        log_w = self.prefactor.log_at(sc)
        if self.origin_order != 0.0:
            log_w += self.origin_order * principal_log(sc)
        for zt in self.zeros:
            log_w += _term_log(zt, sc, self.form)
        for pt in self.poles:
            log_w -= _term_log(pt, sc, self.form)
        return FunctionValue.regular(log_w)

    def phase_terms_at(self, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> list[float]:
        sc = to_complex(s)
        if self._classify(sc, snap) is not ValueKind.REGULAR:
            raise NotRegularPoint(f"phase terms undefined at singular point {sc}")
        terms: list[float] = []
        if not self.prefactor.is_trivial:
            terms.append(self.prefactor.log_at(sc).imag)
        if self.origin_order != 0.0:
            terms.append(self.origin_order * principal_arg(sc))
        for zt in self.zeros:
            terms.append(_term_log(zt, sc, self.form).imag)
        for pt in self.poles:
            terms.append(-_term_log(pt, sc, self.form).imag)
        return terms

    def log_derivative_at(self, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> complex:
        sc = to_complex(s)
        if self._classify(sc, snap) is not ValueKind.REGULAR:
            raise NotRegularPoint(f"log-derivative undefined at singular point {sc}")
        out = self.prefactor.log_derivative_at(sc)
        if self.origin_order != 0.0:
            out += self.origin_order / sc
        for zt in self.zeros:
            out += _term_log_derivative(zt, sc)
        for pt in self.poles:
            out -= _term_log_derivative(pt, sc)
        return out

    def log_second_derivative_at(self, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> complex:
        """d/ds of W'/W; drives Newton refinement of saddle locations."""
        sc = to_complex(s)
        if self._classify(sc, snap) is not ValueKind.REGULAR:
            raise NotRegularPoint(f"log-derivative undefined at singular point {sc}")
        out = _poly_eval(_poly_derivative(_poly_derivative(self.prefactor.exponent_polynomial)), sc)
        if self.origin_order != 0.0:
            out -= self.origin_order / (sc * sc)
        for sign, terms in ((1.0, self.zeros), (-1.0, self.poles)):
            for term in terms:
                z = term.location.as_complex()
                acc = -term.exponent / ((sc - z) * (sc - z))
                if term.correction is not None:
                    acc += _poly_eval(
                        _poly_derivative(_poly_derivative(term.correction.exponent_polynomial)), sc
                    )
                    n = term.correction.weierstrass_order or 0
                    if n:
                        wd = _poly_derivative(_wsum_poly(z, n, term.exponent))
                        acc += _poly_eval(_poly_derivative(wd), sc)
                out += sign * acc
        return out

    # -- cancellation ------------------------------------------------------

    def cancelled(self) -> "MeromorphicSpec":
        """Cancel coincident zero/pole locations by subtracting exponents.

        Correction polynomials subtract; per-term Weierstrass sums are folded
        into the survivor's explicit correction polynomial, and a fully
        cancelled pair's leftover entire factor moves into the prefactor.
        """
        zero_locs = {zt.location.as_complex() for zt in self.zeros}
        pole_locs = {pt.location.as_complex() for pt in self.poles}
        shared = zero_locs & pole_locs
        if not shared:
            return self

        def bundle(terms):
            """Net exponent and combined log-polynomial of same-location terms."""
            exponent = 0.0
            poly: tuple[complex, ...] = ()
            for term in terms:
                exponent += term.exponent
                if term.correction is not None:
                    corr = term.correction
                    poly = _poly_add(poly, corr.exponent_polynomial)
                    if corr.weierstrass_order:
                        w = _wsum_poly(
                            term.location.as_complex(), corr.weierstrass_order, term.exponent
                        )
                        poly = _poly_add(poly, w)
            return exponent, poly

        new_zeros: list[ZeroTerm] = []
        new_poles: list[PoleTerm] = []
        prefactor_poly = tuple(self.prefactor.exponent_polynomial)
        handled: set[complex] = set()

        for zt in self.zeros:
            loc = zt.location.as_complex()
            if loc not in shared:
                new_zeros.append(zt)
                continue
            if loc in handled:
                continue
            handled.add(loc)
            gamma, zpoly = bundle([t for t in self.zeros if t.location.as_complex() == loc])
            beta, ppoly = bundle([t for t in self.poles if t.location.as_complex() == loc])
            net_poly = _poly_sub(zpoly, ppoly)
            net = gamma - beta
            if net > 0:
                corr = EntireFactor(net_poly) if net_poly else None
                new_zeros.append(ZeroTerm(zt.location, net, corr))
            elif net < 0:
                corr = EntireFactor(tuple(-c for c in net_poly)) if net_poly else None
                new_poles.append(PoleTerm(zt.location, -net, corr))
            else:
                prefactor_poly = _poly_add(prefactor_poly, net_poly)

        for pt in self.poles:
            if pt.location.as_complex() not in shared:
                new_poles.append(pt)

        return MeromorphicSpec(
            form=self.form,
            prefactor=EntireFactor(prefactor_poly, self.prefactor.weierstrass_order),
            origin_order=self.origin_order,
            zeros=tuple(new_zeros),
            poles=tuple(new_poles),
        )


# -- spec-level operation names ---------------------------------------------


def evaluate(fn, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> FunctionValue:
    """W(s) in log-polar form; poles and zeros are flagged results, not errors."""
    return fn.value_at(s, snap)


def log_derivative(fn, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> complex:
    """W'(s)/W(s) from the factored form (or the function's own rule)."""
    return fn.log_derivative_at(s, snap)


def phase_terms(spec: MeromorphicSpec, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> list[float]:
    """Per-factor phase contributions; their sum is the principal phase mod 2*pi."""
    return spec.phase_terms_at(s, snap)


def is_regular_point(fn, s: PointLike, snap: float = SNAP_RADIUS_DEFAULT) -> bool:
    return fn.is_regular_at(s, snap)


def cancel_coincident(spec: MeromorphicSpec) -> MeromorphicSpec:
    return spec.cancelled()


# -- serialization -----------------------------------------------------------


def _factor_to_dict(factor: EntireFactor) -> dict:
    out: dict = {"exponent_poly": [[c.real, c.imag] for c in factor.exponent_polynomial]}
    if factor.weierstrass_order:
        out["weierstrass_order"] = factor.weierstrass_order
    return out


def _factor_from_dict(d: dict | None) -> EntireFactor | None:
    if d is None:
        return None
    poly = tuple(complex(re, im) for re, im in d.get("exponent_poly", []))
    return EntireFactor(poly, d.get("weierstrass_order"))


def _term_to_dict(term: ZeroTerm | PoleTerm) -> dict:
    out = {
        "re": term.location.sigma,
        "im": term.location.t,
        "exponent": term.exponent,
    }
    if term.correction is not None:
        out["correction"] = _factor_to_dict(term.correction)
    return out


def spec_to_dict(spec: MeromorphicSpec) -> dict:
    return {
        "form": spec.form.value,
        "prefactor": _factor_to_dict(spec.prefactor),
        "origin_order": spec.origin_order,
        "zeros": [_term_to_dict(t) for t in spec.zeros],
        "poles": [_term_to_dict(t) for t in spec.poles],
    }


def spec_from_dict(data: dict) -> MeromorphicSpec:
    form = Form(data.get("form", "bode"))
    prefactor = _factor_from_dict(data.get("prefactor")) or EntireFactor()
    zeros = tuple(
        ZeroTerm(
            ComplexPoint(float(t["re"]), float(t.get("im", 0.0))),
            float(t.get("exponent", 1.0)),
            _factor_from_dict(t.get("correction")),
        )
        for t in data.get("zeros", [])
    )
    poles = tuple(
        PoleTerm(
            ComplexPoint(float(t["re"]), float(t.get("im", 0.0))),
            float(t.get("exponent", 1.0)),
            _factor_from_dict(t.get("correction")),
        )
        for t in data.get("poles", [])
    )
    return MeromorphicSpec(
        form=form,
        prefactor=prefactor,
        origin_order=float(data.get("origin_order", 0.0)),
        zeros=zeros,
        poles=poles,
    )


def spec_to_json(spec: MeromorphicSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2, sort_keys=True)


def dump_spec(spec: MeromorphicSpec, path: str | Path) -> None:
    Path(path).write_text(spec_to_json(spec) + "\n", encoding="utf-8")


def load_spec(path: str | Path) -> MeromorphicSpec:
    return spec_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
