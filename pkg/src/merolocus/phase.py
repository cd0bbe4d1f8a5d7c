"""Gain, phase and the phase-angle-condition residual.

The gain K is the reciprocal of |W(s)|: 0 at poles, +inf at zeros.  A point
belongs to the locus of degree 2*q*pi + alpha exactly when its phase satisfies
the phase-angle condition, tested here through a wrapped residual.  All
wrapped angles use the single principal range (-pi, pi]; residuals landing
exactly on pi are attributed to the positive side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NotRegularPoint, UnwrapAliasing
from .model import (
    TWO_PI,
    FunctionValue,
    PointLike,
    ValueKind,
    wrap_angle,
)

#: Default tolerance for locus-membership tests (radians).
PHASE_TOL_DEFAULT = 1e-8


@dataclass(frozen=True)
class PhaseTarget:
    """A locus degree 2*q*pi + alpha with alpha in (-pi, pi].

    The pair (q, alpha) and the full degree determine each other uniquely;
    ``unit_value`` is the unit complex number (a, b) the scaled function must
    attain on the locus.
    """

    alpha: float
    q: int = 0

    def __post_init__(self) -> None:
        if not (-math.pi < self.alpha <= math.pi):
            raise ValueError(f"alpha must lie in (-pi, pi], got {self.alpha}")

    @classmethod
    def from_degree(cls, degree: float) -> "PhaseTarget":
        alpha = wrap_angle(degree)
        q = int(round((degree - alpha) / TWO_PI))
        return cls(alpha, q)

    @classmethod
    def from_pi_units(cls, units: float) -> "PhaseTarget":
        return cls.from_degree(units * math.pi)

    @property
    def degree(self) -> float:
        return TWO_PI * self.q + self.alpha

    @property
    def pi_units(self) -> float:
        return self.degree / math.pi

    @property
    def unit_value(self) -> tuple[float, float]:
        d = self.degree
        return (math.cos(d), math.sin(d))

    def __str__(self) -> str:
        return f"{self.pi_units:g}pi"


@dataclass(frozen=True)
class GainValue:
    """K = 1/|W(s)|, non-negative, +inf at zeros of W and 0 at its poles."""

    k: float


def _safe_exp(x: float) -> float:
    if x > 709.0:
        return math.inf
    return math.exp(x)


def gain(fn, s: PointLike) -> GainValue:
    value = fn.value_at(s)
    return GainValue(_safe_exp(-value.log_magnitude))


def gain_of_value(value: FunctionValue) -> float:
    return _safe_exp(-value.log_magnitude)


def principal_phase(fn, s: PointLike) -> float:
    value = fn.value_at(s)
    if value.kind is not ValueKind.REGULAR:
        raise NotRegularPoint(f"phase undefined at a {value.kind.value} of the function")
    return value.phase


def unwrap_phase_along(fn, path: Sequence[PointLike]) -> list[float]:
    """Continuous phase along a path, resolving the 2*q*pi branch ambiguity.

    The caller guarantees consecutive points are close enough that the true
    phase change stays below pi; a wrapped jump of exactly pi is reported as
    UnwrapAliasing (insufficient path resolution).
    """
    phases = [principal_phase(fn, s) for s in path]
    if not phases:
        return []
    out = [phases[0]]
    for ph in phases[1:]:
        delta = wrap_angle(ph - out[-1])
        if delta == math.pi:
            raise UnwrapAliasing("consecutive principal phases differ by exactly pi")
        # reconstruct as ph + 2*pi*k so each value is congruent to the
        # principal phase without accumulating float drift
        k = round((out[-1] + delta - ph) / TWO_PI)
        out.append(ph + TWO_PI * k)
    return out


def phase_residual(fn, s: PointLike, target: PhaseTarget) -> float:
    """Wrapped difference between the phase at s and the target degree.

    Zero exactly when s satisfies the phase-angle condition for some branch q.
    """
    return wrap_angle(principal_phase(fn, s) - target.alpha)


def satisfies_phase_condition(
    fn, s: PointLike, target: PhaseTarget, tol: float = PHASE_TOL_DEFAULT
) -> bool:
    if not tol > 0:
        raise ValueError("tol must be positive")
    return abs(phase_residual(fn, s, target)) <= tol
