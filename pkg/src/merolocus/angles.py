"""Closed-form departure/arrival angles, degree gaps and fan ordering.

At a repeated pole P_k of exponent beta_k the locus of degree 2*q*pi + alpha
leaves along

    theta = (R_k - degree) / beta_k,
    R_k   = arg G(P_k) + beta_k*arg(-p_k) - arg G_kp(P_k)
          + sum_l [gamma_l*arg(P_k - z_l) - gamma_l*arg(-z_l) + arg G_lz(P_k)]
          - sum_{j!=k} [beta_j*arg(P_k - p_j) - beta_j*arg(-p_j) + arg G_jp(P_k)],

and a zero Z_k of exponent gamma_k receives along theta = (degree + S_k)/gamma_k
with the dual bracket.  The arg(-z)/arg(-p) constants are the Bode-form
normalization terms and are dropped for root-form specs.  Angles are affine
in the degree (slope -1/beta_k at poles, +1/gamma_k at zeros), which is
exactly the clockwise monotonicity of the emitted/received fans; the affine
value is kept alongside the [0, 2*pi)-normalized one because wrapping would
destroy the linear law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DegenerateGeometry, InvalidIndex, NonPositiveExponent
from .model import (
    SNAP_RADIUS_DEFAULT,
    TWO_PI,
    Form,
    MeromorphicSpec,
    PoleTerm,
    ZeroTerm,
    principal_arg,
)
from .phase import PhaseTarget


class AngleKind(Enum):
    DEPARTURE = "departure"
    ARRIVAL = "arrival"


@dataclass(frozen=True)
class DirectionAngle:
    """A departure/arrival direction, counterclockwise from the positive real
    axis.  ``theta`` is normalized to [0, 2*pi); ``theta_affine`` is the raw
    affine-in-degree value used for ordering and monotonicity checks."""

    theta: float
    kind: AngleKind
    anchor_index: int
    degree: PhaseTarget
    theta_affine: float


@dataclass(frozen=True)
class AngleFan:
    """Directions of one anchor over a list of degrees, sorted by degree."""

    anchor_index: int
    kind: AngleKind
    entries: tuple[tuple[PhaseTarget, DirectionAngle], ...]

    def degrees(self) -> list[float]:
        return [t.degree for t, _ in self.entries]

    def angles(self) -> list[float]:
        return [a.theta for _, a in self.entries]


def _normalize(theta: float) -> float:
    r = theta % TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


def _correction_arg(term: ZeroTerm | PoleTerm, at: complex) -> float:
    """Unwrapped arg of the term's entire correction at a point, matching the
    per-factor convention of the evaluator."""
    if term.correction is None:
        return 0.0
    out = term.correction.log_at(at).imag
    n = term.correction.weierstrass_order or 0
    if n:
        z = term.location.as_complex()
        u = at / z
        upow = 1.0 + 0j
        acc = 0j
        for k in range(1, n + 1):
            upow *= u
            acc += upow / k
        out += term.exponent * acc.imag
    return out


def _check_separation(spec: MeromorphicSpec, at: complex, skip: tuple[str, int]) -> None:
    snap = SNAP_RADIUS_DEFAULT
    for idx, zt in enumerate(spec.zeros):
        if skip == ("zero", idx):
            continue
        if abs(zt.location.as_complex() - at) <= snap:
            raise DegenerateGeometry(f"zero {idx} coincides with the anchor at {at}")
    for idx, pt in enumerate(spec.poles):
        if skip == ("pole", idx):
            continue
        if abs(pt.location.as_complex() - at) <= snap:
            raise DegenerateGeometry(f"pole {idx} coincides with the anchor at {at}")
    if spec.origin_order != 0.0 and skip[0] != "origin" and abs(at) <= snap:
        raise DegenerateGeometry("origin factor coincides with the anchor")


def _bracket_common(spec: MeromorphicSpec, at: complex, skip: tuple[str, int]) -> float:
    """arg G + origin + zero-sum - pole-sum with the anchor's own term left out."""
    bode = spec.form is Form.BODE
    total = spec.prefactor.log_at(at).imag
    if spec.origin_order != 0.0 and skip[0] != "origin":
        total += spec.origin_order * principal_arg(at)
    for idx, zt in enumerate(spec.zeros):
        if skip == ("zero", idx):
            continue
        z = zt.location.as_complex()
        total += zt.exponent * principal_arg(at - z)
        if bode:
            total -= zt.exponent * principal_arg(-z)
        total += _correction_arg(zt, at)
    for idx, pt in enumerate(spec.poles):
        if skip == ("pole", idx):
            continue
        p = pt.location.as_complex()
        total -= pt.exponent * principal_arg(at - p)
        if bode:
            total += pt.exponent * principal_arg(-p)
        total -= _correction_arg(pt, at)
    return total


def departure_angle(
    spec: MeromorphicSpec, pole_index: int, target: PhaseTarget
) -> DirectionAngle:
    """Angle of origination of the target-degree locus at pole ``pole_index``."""
    if not isinstance(spec, MeromorphicSpec):
        raise TypeError("closed-form angles need a factored MeromorphicSpec")
    if not 0 <= pole_index < len(spec.poles):
        raise InvalidIndex(f"pole index {pole_index} out of range")
    pole = spec.poles[pole_index]
    p = pole.location.as_complex()
    _check_separation(spec, p, ("pole", pole_index))
    rest = _bracket_common(spec, p, ("pole", pole_index))
    if spec.form is Form.BODE:
        rest += pole.exponent * principal_arg(-p)
    rest -= _correction_arg(pole, p)
    theta_affine = (rest - target.degree) / pole.exponent
    return DirectionAngle(
        theta=_normalize(theta_affine),
        kind=AngleKind.DEPARTURE,
        anchor_index=pole_index,
        degree=target,
        theta_affine=theta_affine,
    )


def arrival_angle(spec: MeromorphicSpec, zero_index: int, target: PhaseTarget) -> DirectionAngle:
    """Angle of receiving of the target-degree locus at zero ``zero_index``."""
    if not isinstance(spec, MeromorphicSpec):
        raise TypeError("closed-form angles need a factored MeromorphicSpec")
    if not 0 <= zero_index < len(spec.zeros):
        raise InvalidIndex(f"zero index {zero_index} out of range")
    zero = spec.zeros[zero_index]
    z = zero.location.as_complex()
    _check_separation(spec, z, ("zero", zero_index))
    rest = -_bracket_common(spec, z, ("zero", zero_index))
    if spec.form is Form.BODE:
        rest += zero.exponent * principal_arg(-z)
    rest -= _correction_arg(zero, z)
    theta_affine = (target.degree + rest) / zero.exponent
    return DirectionAngle(
        theta=_normalize(theta_affine),
        kind=AngleKind.ARRIVAL,
        anchor_index=zero_index,
        degree=target,
        theta_affine=theta_affine,
    )


def opposite_gap_pole(beta_k: float) -> float:
    """Degree gap alpha_1 - alpha_2 between the two loci a pole emits in
    opposite directions: beta_k * pi."""
    if not beta_k > 0:
        raise NonPositiveExponent(f"pole exponent must be positive, got {beta_k}")
    return beta_k * math.pi


def opposite_gap_zero(gamma_k: float) -> float:
    """Degree gap alpha_2 - alpha_1 between the two loci a zero receives from
    opposite directions: gamma_k * pi."""
    if not gamma_k > 0:
        raise NonPositiveExponent(f"zero exponent must be positive, got {gamma_k}")
    return gamma_k * math.pi


def departure_fan(
    spec: MeromorphicSpec, pole_index: int, degrees: Sequence[PhaseTarget]
) -> AngleFan:
    ordered = sorted(degrees, key=lambda t: t.degree)
    entries = tuple((t, departure_angle(spec, pole_index, t)) for t in ordered)
    return AngleFan(anchor_index=pole_index, kind=AngleKind.DEPARTURE, entries=entries)


def arrival_fan(spec: MeromorphicSpec, zero_index: int, degrees: Sequence[PhaseTarget]) -> AngleFan:
    ordered = sorted(degrees, key=lambda t: t.degree)
    entries = tuple((t, arrival_angle(spec, zero_index, t)) for t in ordered)
    return AngleFan(anchor_index=zero_index, kind=AngleKind.ARRIVAL, entries=entries)


def is_simple_by_gap(gap: float, tol: float = 1e-9) -> bool:
    """Simplicity criterion of a repeated anchor, applied verbatim: the gap of
    an opposite-direction pair is a positive integer multiple of pi."""
    if not gap > 0:
        return False
    n = round(gap / math.pi)
    return n >= 1 and abs(gap - n * math.pi) <= tol
