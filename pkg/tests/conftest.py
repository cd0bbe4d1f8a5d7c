from __future__ import annotations

import cmath
import random

import pytest

from merolocus.model import ComplexPoint, EntireFactor, Form, MeromorphicSpec, PoleTerm, ZeroTerm


def random_rational_spec(rng: random.Random) -> MeromorphicSpec:
    """Small random factored spec with well-separated anchors."""
    form = rng.choice((Form.BODE, Form.ROOT))
    locations: list[complex] = []

    def fresh_location() -> ComplexPoint:
        while True:
            w = complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
            if abs(w) < 0.2:  # keep Bode-legal and away from the origin factor
                continue
            if all(abs(w - seen) > 0.3 for seen in locations):
                locations.append(w)
                return ComplexPoint(w.real, w.imag)

    def random_exponent() -> float:
        return rng.choice((0.5, 1.0, 2.0, round(rng.uniform(0.3, 2.5), 3)))

    zeros = tuple(ZeroTerm(fresh_location(), random_exponent())
                  for _ in range(rng.randint(0, 2)))
    poles = tuple(PoleTerm(fresh_location(), random_exponent())
                  for _ in range(rng.randint(1, 3)))
    prefactor = EntireFactor()
    if rng.random() < 0.4:
        prefactor = EntireFactor((complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)),
                                  complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))))
    origin_order = 0.0
    if form is Form.ROOT and rng.random() < 0.3:
        origin_order = rng.choice((-1.0, 1.0, 2.0))
    return MeromorphicSpec(form=form, prefactor=prefactor, origin_order=origin_order,
                           zeros=zeros, poles=poles)


def direct_product_value(spec: MeromorphicSpec, s: complex) -> complex:
    """Independent evaluation oracle: raw complex products with principal
    powers (cmath's ** uses the same principal branch per factor)."""
    w = cmath.exp(sum(c * s ** k for k, c in enumerate(spec.prefactor.exponent_polynomial)))
    if spec.origin_order:
        w *= s ** spec.origin_order
    for term in spec.zeros:
        z = term.location.as_complex()
        base = (1.0 - s / z) if spec.form is Form.BODE else (s - z)
        w *= base ** term.exponent
        if term.correction is not None:
            w *= cmath.exp(sum(c * s ** k
                               for k, c in enumerate(term.correction.exponent_polynomial)))
            n = term.correction.weierstrass_order or 0
            if n:
                w *= cmath.exp(term.exponent * sum((s / z) ** k / k for k in range(1, n + 1)))
    for term in spec.poles:
        p = term.location.as_complex()
        base = (1.0 - s / p) if spec.form is Form.BODE else (s - p)
        w /= base ** term.exponent
        if term.correction is not None:
            w /= cmath.exp(sum(c * s ** k
                               for k, c in enumerate(term.correction.exponent_polynomial)))
            n = term.correction.weierstrass_order or 0
            if n:
                w /= cmath.exp(term.exponent * sum((s / p) ** k / k for k in range(1, n + 1)))
    return w


def regular_sample_points(spec: MeromorphicSpec, rng: random.Random, count: int,
                          min_anchor_distance: float = 0.05) -> list[complex]:
    anchors = [loc.as_complex() for loc, _ in (*spec.zero_anchors(), *spec.pole_anchors())]
    if spec.origin_order:
        anchors.append(0j)
    out: list[complex] = []
    while len(out) < count:
        s = complex(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0))
        if spec.origin_order and abs(s) < min_anchor_distance:
            continue
        if all(abs(s - a) >= min_anchor_distance for a in anchors):
            out.append(s)
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240803)
