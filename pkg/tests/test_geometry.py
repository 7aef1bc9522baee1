"""Tests for the upper half-space model primitives."""

import math
import random

import pytest
import scipy.integrate
import sympy

from margulis.geometry import (
    ORIGIN,
    Isometry,
    Point,
    Triangle,
    apply,
    ball_volume,
    displacement,
    distance,
    ideal_cap_area,
    jorgensen_value,
    parse_generator_matrices,
    triangle_area,
)

from _oracles import ball_volume_series_oracle


def random_isometry(rng: random.Random) -> Isometry:
    while True:
        entries = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)]
        if abs(entries[0] * entries[3] - entries[1] * entries[2]) > 0.1:
            return Isometry.normalized(*entries)


def random_point(rng: random.Random) -> Point:
    return Point(complex(rng.uniform(-3, 3), rng.uniform(-3, 3)), math.exp(rng.uniform(-2, 2)))


class TestPoint:
    def test_rejects_nonpositive_height(self):
        with pytest.raises(ValueError):
            Point(0j, 0.0)
        with pytest.raises(ValueError):
            Point(0j, -1.0)


class TestDistance:
    def test_vertical_geodesic(self):
        assert distance(Point(0j, 1.0), Point(0j, math.e)) == pytest.approx(1.0, abs=1e-14)

    def test_zero_iff_equal(self):
        p = Point(1 + 2j, 0.7)
        assert distance(p, p) == 0.0
        assert distance(p, Point(1 + 2j, 0.7000001)) > 0.0

    def test_horizontal_pair(self):
        # cosh d = 1 + |3+4i|^2 / 2 = 13.5, plugged independently
        got = distance(Point(0j, 1.0), Point(3 + 4j, 1.0))
        assert got == pytest.approx(math.acosh(13.5), rel=1e-14)

    def test_symmetry(self):
        rng = random.Random(7)
        for _ in range(50):
            p, q = random_point(rng), random_point(rng)
            assert distance(p, q) == pytest.approx(distance(q, p), rel=1e-14)

    def test_tiny_displacement_precision(self):
        # u = 1e-18 is far below sqrt(eps); the naive acosh(1+u) would return 0
        p = Point(0j, 1.0)
        q = Point(0j, 1.0 + 1e-9)
        d = distance(p, q)
        assert d == pytest.approx(abs(math.log(1.0 + 1e-9)), rel=1e-6)
        assert d > 0.0


class TestApply:
    def test_identity_fixes_everything(self):
        rng = random.Random(11)
        for _ in range(20):
            p = random_point(rng)
            q = apply(Isometry.identity(), p)
            assert q.z == pytest.approx(p.z, abs=1e-15)
            assert q.t == pytest.approx(p.t, rel=1e-15)

    def test_loxodromic_along_axis(self):
        g = Isometry(math.exp(0.5), 0, 0, math.exp(-0.5))
        q = apply(g, Point(0j, 1.0))
        assert q.z == pytest.approx(0j, abs=1e-15)
        assert q.t == pytest.approx(math.e, rel=1e-14)

    def test_parabolic_translation(self):
        q = apply(Isometry(1, 1, 0, 1), Point(0j, 1.0))
        assert q.z == pytest.approx(1 + 0j, abs=1e-15)
        assert q.t == pytest.approx(1.0, rel=1e-15)

    def test_preserves_distance(self):
        rng = random.Random(13)
        for _ in range(200):
            g = random_isometry(rng)
            p, q = random_point(rng), random_point(rng)
            assert distance(apply(g, p), apply(g, q)) == pytest.approx(
                distance(p, q), abs=1e-9
            )

    def test_composition_acts_as_product(self):
        rng = random.Random(17)
        for _ in range(50):
            g, h = random_isometry(rng), random_isometry(rng)
            p = random_point(rng)
            lhs = apply(g @ h, p)
            rhs = apply(g, apply(h, p))
            assert lhs.z == pytest.approx(rhs.z, abs=1e-10)
            assert lhs.t == pytest.approx(rhs.t, rel=1e-10)


class TestDisplacement:
    def test_identity(self):
        assert displacement(Isometry.identity(), ORIGIN) == 0.0

    def test_on_axis_equals_translation_length(self):
        g = Isometry(math.exp(0.5), 0, 0, math.exp(-0.5))
        assert displacement(g, Point(0j, 1.0)) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("t", [0.5, 1.0, 10.0, 1e4])
    def test_parabolic_formula(self, t):
        # direct substitution: cosh d = 1 + 1/(2 t^2)
        g = Isometry(1, 1, 0, 1)
        expected = math.acosh(1.0 + 1.0 / (2.0 * t * t)) if t < 1e3 else math.sqrt(
            1.0 / (t * t)
        ) * (1.0 - 1.0 / (24.0 * t * t))
        assert displacement(g, Point(0j, t)) == pytest.approx(expected, rel=1e-7)

    def test_equivariance(self):
        rng = random.Random(19)
        for _ in range(100):
            g, h = random_isometry(rng), random_isometry(rng)
            p = random_point(rng)
            assert displacement(h @ g @ h.inverse(), apply(h, p)) == pytest.approx(
                displacement(g, p), abs=1e-9
            )


class TestBallVolume:
    def test_meyerhoff_radius(self):
        assert ball_volume(0.052) == pytest.approx(0.000589, rel=1e-3)

    def test_extended_against_series_oracle(self):
        lib = ball_volume(0.052, precision="extended")
        assert abs(lib - 0.00058930) <= 1e-8
        assert lib == pytest.approx(float(ball_volume_series_oracle(0.052)), rel=1e-15)

    def test_zero(self):
        assert ball_volume(0.0) == 0.0

    def test_unit_radius(self):
        oracle = float(ball_volume_series_oracle(1.0))
        assert ball_volume(1.0) == pytest.approx(oracle, rel=1e-12)
        assert ball_volume(1.0) == pytest.approx(math.pi * (math.sinh(2.0) - 2.0), rel=1e-12)

    def test_strictly_increasing(self):
        radii = [0.001, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0]
        volumes = [ball_volume(r) for r in radii]
        assert all(a < b for a, b in zip(volumes, volumes[1:]))

    @pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
    def test_matches_shell_quadrature(self, r):
        ref, err = scipy.integrate.quad(lambda s: 4.0 * math.pi * math.sinh(s) ** 2, 0.0, r)
        assert err < 1e-12 * ref
        assert ball_volume(r) == pytest.approx(ref, rel=1e-9)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ball_volume(-0.1)


class TestTriangleArea:
    def test_euclidean_degeneration(self):
        areas = [triangle_area(Triangle(s, s, s)) for s in (1e-1, 1e-2, 1e-3)]
        assert all(a > 0.0 for a in areas)
        # hyperbolic equilateral area ~ sqrt(3)/4 * s^2 for small s
        assert areas[2] == pytest.approx(math.sqrt(3) / 4 * 1e-6, rel=1e-2)

    def test_equilateral_angle_roundtrip(self):
        # pick the angles first (pi/5 each), recover the side by the dual
        # law of cosines, and check the defect comes back as pi - 3*pi/5
        alpha = math.pi / 5
        side = math.acosh(
            (math.cos(alpha) + math.cos(alpha) ** 2) / (math.sin(alpha) ** 2)
        )
        area = triangle_area(Triangle(side, side, side))
        assert area == pytest.approx(math.pi - 3 * alpha, rel=1e-12)

    def test_shortest_side_bound_at_meyerhoff_scale(self):
        rng = random.Random(23)
        for _ in range(200):
            b = rng.uniform(0.104, 5.0)
            c = rng.uniform(abs(b - 0.104) + 1e-9, min(b + 0.104, 10.0) - 1e-9)
            tri = Triangle(0.104, b, c)
            assert tri.shortest <= 0.104
            assert triangle_area(tri) < 0.104

    def test_property_random_triangles(self):
        rng = random.Random(29)
        count = 0
        while count < 10000:
            sides = sorted(rng.uniform(1e-3, 10.0) for _ in range(3))
            if sides[2] >= sides[0] + sides[1]:
                continue
            tri = Triangle(*sides)
            area = triangle_area(tri)
            assert area < min(math.pi, sides[0]) + 1e-9
            assert area < math.pi
            count += 1

    def test_symmetry(self):
        base = triangle_area(Triangle(1.0, 2.0, 2.5))
        for perm in [(2.0, 2.5, 1.0), (2.5, 1.0, 2.0), (1.0, 2.5, 2.0)]:
            assert triangle_area(Triangle(*perm)) == pytest.approx(base, abs=1e-12)

    def test_rejects_invalid(self):
        with pytest.raises(ValueError):
            Triangle(1.0, 1.0, 2.0)
        with pytest.raises(ValueError):
            Triangle(1.0, 1.0, 2.5)
        with pytest.raises(ValueError):
            Triangle(0.0, 1.0, 1.0)


class TestIdealCapArea:
    def test_semicircle_limit(self):
        eps = 1e-12
        area = ideal_cap_area(-1 + eps, 1 - eps)
        assert area < math.pi
        assert area == pytest.approx(math.pi, abs=1e-5)

    def test_arcsin_values(self):
        assert ideal_cap_area(0.0, 0.5) == pytest.approx(math.pi / 6, rel=1e-14)

    def test_general_evaluation(self):
        assert ideal_cap_area(-0.3, 0.7) == pytest.approx(
            math.asin(0.7) + math.asin(0.3), rel=1e-14
        )

    def test_rejects_bad_arguments(self):
        for x1, x2 in [(-1.0, 0.5), (0.0, 1.0), (0.5, 0.2), (0.3, 0.3)]:
            with pytest.raises(ValueError):
                ideal_cap_area(x1, x2)


FIGURE_EIGHT = {
    "x": [[1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
    "y": [[1.0, 0.0], [0.0, 0.0], [-0.5, math.sqrt(3) / 2], [1.0, 0.0]],
}


class TestJorgensenValue:
    def test_identity_pair_is_zero(self):
        i = Isometry.identity()
        assert jorgensen_value(i, i) == 0.0

    def test_figure_eight_exactly_one(self):
        # exact symbolic commutator trace: 2 + omega^2 with |omega^2| = 1
        omega = sympy.Rational(-1, 2) + sympy.I * sympy.sqrt(3) / 2
        xs = sympy.Matrix([[1, 1], [0, 1]])
        ys = sympy.Matrix([[1, 0], [omega, 1]])
        comm = xs * ys * xs.inv() * ys.inv()
        exact = sympy.Abs(sympy.trace(xs) ** 2 - 4) + sympy.Abs(
            sympy.simplify(sympy.trace(comm)) - 2
        )
        assert sympy.simplify(exact - 1) == 0

        x, y, _ = parse_generator_matrices(FIGURE_EIGHT)
        value = jorgensen_value(x, y)
        assert value == pytest.approx(1.0, abs=1e-12)
        assert value >= 1.0 - 1e-12

    def test_equal_loxodromics(self):
        k = 1.7
        g = Isometry(k, 0, 0, 1 / k)
        expected = abs((k + 1 / k) ** 2 - 4)
        assert jorgensen_value(g, g) == pytest.approx(expected, rel=1e-12)

    def test_conjugation_invariance(self):
        rng = random.Random(31)
        for _ in range(100):
            x, y, h = (random_isometry(rng) for _ in range(3))
            v1 = jorgensen_value(x, y)
            v2 = jorgensen_value(h @ x @ h.inverse(), h @ y @ h.inverse())
            assert v2 == pytest.approx(v1, abs=1e-9 * max(1.0, v1))


class TestIsometryValidation:
    def test_rejects_non_unit_determinant(self):
        with pytest.raises(ValueError, match="determinant"):
            Isometry(2, 0, 0, 1)

    def test_normalized_rescales(self):
        g = Isometry.normalized(2, 0, 0, 2)
        assert g.a * g.d - g.b * g.c == pytest.approx(1.0, abs=1e-14)

    def test_normalized_rejects_singular(self):
        with pytest.raises(ValueError):
            Isometry.normalized(1, 1, 1, 1)

    def test_inverse(self):
        rng = random.Random(37)
        g = random_isometry(rng)
        prod = g @ g.inverse()
        assert prod.a == pytest.approx(1.0, abs=1e-12) or prod.a == pytest.approx(
            -1.0, abs=1e-12
        )
        assert abs(prod.b) < 1e-12 and abs(prod.c) < 1e-12


class TestGeneratorJson:
    def test_parses_matrices_and_default_basepoint(self):
        x, y, basepoint = parse_generator_matrices(
            '{"x": [[1,0],[2,0],[0,0],[1,0]], "y": [[1,0],[0,0],[2,0],[1,0]]}'
        )
        assert x.b == 2 + 0j and y.c == 2 + 0j
        assert basepoint == ORIGIN

    def test_explicit_basepoint(self):
        _, _, basepoint = parse_generator_matrices(
            {"x": [[1, 0], [1, 0], [0, 0], [1, 0]],
             "y": [[1, 0], [0, 1], [0, 0], [1, 0]],
             "basepoint": [0.5, -0.25, 2.0]}
        )
        assert basepoint.z == 0.5 - 0.25j
        assert basepoint.t == 2.0

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            parse_generator_matrices('{"x": [[1,0],[2,0],[0,0]], "y": []}')
        with pytest.raises(ValueError):
            parse_generator_matrices('{"x": [[1,0],[2,0],[0,0],[1,0]]}')
        with pytest.raises(ValueError):
            parse_generator_matrices("[1, 2, 3]")

    def test_rejects_far_from_unit_determinant(self):
        with pytest.raises(ValueError, match="determinant"):
            parse_generator_matrices(
                '{"x": [[2,0],[0,0],[0,0],[2,0]], "y": [[1,0],[0,0],[0,0],[1,0]]}'
            )
