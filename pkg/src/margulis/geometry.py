"""Hyperbolic geometry in the upper half-space model.

Points are (z, t) with z the horizontal complex coordinate and t > 0 the
height.  Orientation-preserving isometries are unit-determinant 2x2
complex matrices acting by the Poincare extension of the Moebius action;
both signs of a matrix act identically, and every formula used here is
sign-invariant.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Union

import gmpy2

from .numerics import DOUBLE, EXTENDED, acosh1p, check_precision, extended_context, sinh_minus_x

#: Tolerance on |det - 1| enforced at construction.
DET_TOL = 1e-12


@dataclass(frozen=True)
class Point:
    """A point of the upper half-space model: horizontal coordinate z, height t > 0."""

    z: complex
    t: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "t", float(self.t))
        if not (math.isfinite(self.t) and self.t > 0.0):
            raise ValueError(f"height must be positive and finite, got {self.t}")
        if not (math.isfinite(self.z.real) and math.isfinite(self.z.imag)):
            raise ValueError("horizontal coordinate must be finite")


#: Conventional basepoint j = (0, 1).
ORIGIN = Point(0j, 1.0)


@dataclass(frozen=True)
class Isometry:
    """A 2x2 complex matrix (a b; c d) of unit determinant."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        det = self.a * self.d - self.b * self.c
        # the tolerance scales with |ad| + |bc|: that product magnitude is the
        # best determinant accuracy doubles can deliver for large entries
        scale = max(1.0, abs(self.a * self.d) + abs(self.b * self.c))
        if abs(det - 1.0) > DET_TOL * scale:
            raise ValueError(
                f"matrix determinant {det} is not 1 within {DET_TOL} (relative); "
                "use Isometry.normalized to rescale"
            )

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(1, 0, 0, 1)

    @classmethod
    def normalized(cls, a: complex, b: complex, c: complex, d: complex) -> "Isometry":
        """Scale an invertible matrix to unit determinant (sign is arbitrary)."""
        det = complex(a) * complex(d) - complex(b) * complex(c)
        if abs(det) < 1e-30:
            raise ValueError("matrix is singular; cannot normalize")
        s = cmath.sqrt(det)
        return cls(a / s, b / s, c / s, d / s)

    def inverse(self) -> "Isometry":
        return Isometry(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        # renormalized so that long composition chains cannot drift out of
        # the determinant tolerance; the sign of sqrt(det) is immaterial
        return Isometry.normalized(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)


def distance(p: Point, q: Point) -> float:
    """Hyperbolic distance: cosh d = 1 + (|z_p - z_q|^2 + (t_p - t_q)^2) / (2 t_p t_q)."""
    u = (abs(p.z - q.z) ** 2 + (p.t - q.t) ** 2) / (2.0 * p.t * q.t)
    return acosh1p(u)


def apply(g: Isometry, p: Point) -> Point:
    """Poincare extension: w = z + t j maps to (a w + b)(c w + d)^-1."""
    cz_d = g.c * p.z + g.d
    den = abs(cz_d) ** 2 + abs(g.c) ** 2 * p.t**2
    z = ((g.a * p.z + g.b) * cz_d.conjugate() + g.a * g.c.conjugate() * p.t**2) / den
    return Point(z, p.t / den)


def displacement(g: Isometry, p: Point) -> float:
    """How far g moves p: distance(p, g.p)."""
    return distance(p, apply(g, p))


def ball_volume(r: float, precision: str = DOUBLE) -> float:
    """Volume pi*(sinh(2r) - 2r) of a hyperbolic ball of radius r.

    Strictly increasing, 0 at r = 0.  The extended mode evaluates at
    256-bit precision before rounding to a double, which certifies the
    small-radius constants used by the packing argument.
    """
    check_precision(precision)
    if r < 0.0:
        raise ValueError("radius must be nonnegative")
    if precision == EXTENDED:
        with extended_context():
            x = 2 * gmpy2.mpfr(r)
            return float(gmpy2.const_pi() * (gmpy2.sinh(x) - x))
    return math.pi * sinh_minus_x(2.0 * r)


@dataclass(frozen=True)
class Triangle:
    """A hyperbolic triangle given by its three side lengths."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, float(getattr(self, name)))
        sides = (self.a, self.b, self.c)
        if not all(math.isfinite(s) and s > 0.0 for s in sides):
            raise ValueError(f"side lengths must be positive and finite, got {sides}")
        if not (
            self.a < self.b + self.c
            and self.b < self.a + self.c
            and self.c < self.a + self.b
        ):
            raise ValueError(f"sides {sides} violate the strict triangle inequality")

    @property
    def shortest(self) -> float:
        return min(self.a, self.b, self.c)


def _angle(opposite: float, s1: float, s2: float) -> float:
    # law of cosines; the clamp absorbs rounding at near-degenerate triangles
    cos_angle = (math.cosh(s1) * math.cosh(s2) - math.cosh(opposite)) / (
        math.sinh(s1) * math.sinh(s2)
    )
    return math.acos(min(1.0, max(-1.0, cos_angle)))


def triangle_area(t: Triangle) -> float:
    """Angle-defect area pi - (alpha + beta + gamma).

    Always below both pi and the shortest side length.
    """
    alpha = _angle(t.a, t.b, t.c)
    beta = _angle(t.b, t.a, t.c)
    gamma = _angle(t.c, t.a, t.b)
    return math.pi - (alpha + beta + gamma)


def ideal_cap_area(x1: float, x2: float) -> float:
    """Area arcsin(x2) - arcsin(x1) of the ideal triangle over a unit-semicircle chord.

    The chord runs between the points of the upper unit semicircle with
    abscissas x1 < x2, and the two remaining sides are vertical rays; the
    area equals the Euclidean arc length, hence is always below pi.
    """
    if not (-1.0 < x1 < x2 < 1.0):
        raise ValueError(f"need -1 < x1 < x2 < 1, got x1={x1}, x2={x2}")
    return math.asin(x2) - math.asin(x1)


def jorgensen_value(x: Isometry, y: Isometry) -> float:
    """|tr(X)^2 - 4| + |tr(X Y X^-1 Y^-1) - 2|.

    For a discrete non-elementary two-generator group the value is >= 1;
    this is a diagnostic, not enforced here.
    """
    commutator = x @ y @ x.inverse() @ y.inverse()
    tx = x.trace
    return abs(tx * tx - 4.0) + abs(commutator.trace - 2.0)


def _matrix_from_pairs(pairs: object, key: str) -> Isometry:
    if (
        not isinstance(pairs, list)
        or len(pairs) != 4
        or not all(isinstance(e, list) and len(e) == 2 for e in pairs)
    ):
        raise ValueError(
            f"matrix {key!r} must be four [re, im] pairs listing a, b, c, d row-major"
        )
    a, b, c, d = (complex(float(e[0]), float(e[1])) for e in pairs)
    return Isometry(a, b, c, d)


def parse_generator_matrices(source: Union[str, dict]) -> tuple[Isometry, Isometry, Point]:
    """Parse the generator-matrix JSON {"x": [[re,im]*4], "y": [[re,im]*4]}.

    An optional "basepoint": [re, im, t] entry overrides the default (0, 1).
    The determinant tolerance applies after parsing; matrices far from unit
    determinant are rejected.
    """
    data = json.loads(source) if isinstance(source, str) else source
    if not isinstance(data, dict):
        raise ValueError("generator JSON must be an object with keys 'x' and 'y'")
    for key in ("x", "y"):
        if key not in data:
            raise ValueError(f"generator JSON is missing the {key!r} matrix")
    x = _matrix_from_pairs(data["x"], "x")
    y = _matrix_from_pairs(data["y"], "y")
    basepoint = ORIGIN
    if "basepoint" in data:
        bp = data["basepoint"]
        if not (isinstance(bp, list) and len(bp) == 3):
            raise ValueError("basepoint must be [re, im, t]")
        basepoint = Point(complex(float(bp[0]), float(bp[1])), float(bp[2]))
    return x, y, basepoint
