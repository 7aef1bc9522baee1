"""Named invariant checks behind `margulis verify`.

Each check is a small, self-contained property exercised at desk scale
with fixed seeds, so repeated runs print byte-identical reports.  The
full acceptance-scale versions (bigger grids, tighter budgets) live in
the test suite; these are the fast operational versions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bounds, freegroup, geometry, packing
from .numerics import EXTENDED

_SEED = 20240901


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(name: str, fn: Callable[[], str]) -> CheckResult:
    try:
        detail = fn() or ""
    except Exception as exc:  # a raising check is a failing check
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, True, detail)


def log_uniform_grid(count: int, low: float = 0.1005, high: float = 0.5493) -> list[float]:
    """Deterministic log-uniform lambda grid on [low, high]."""
    if count == 1:
        return [low]
    ratio = math.log(high) - math.log(low)
    return [math.exp(math.log(low) + ratio * i / (count - 1)) for i in range(count)]


# ----------------------------------------------------------------- freegroup


def _random_letters(rng: random.Random, max_len: int = 40) -> list[int]:
    return [rng.randrange(4) for _ in range(rng.randrange(max_len + 1))]


def freegroup_suite() -> list[CheckResult]:
    rng = random.Random(_SEED)
    results = []

    def ball_counts() -> str:
        for n in range(1, 11):
            expected = 2 * (3**n - 1) + 1
            got = freegroup.enumerate_ball(n).size
            if got != expected:
                raise AssertionError(f"ball radius {n}: {got} words, expected {expected}")
        return "n <= 10, exact"

    results.append(_check("ball counts 2(3^n-1)+1", ball_counts))

    def cyclic_counts() -> str:
        checked = 0
        for word in freegroup.enumerate_ball(4):
            for k in range(1, 9):
                count = freegroup.count_cyclic_powers(word, k)
                if count > 2 * k + 1:
                    raise AssertionError(f"count {count} > 2k+1 for {word}, k={k}")
                if (count == 2 * k + 1) != (len(word) == 1):
                    raise AssertionError(
                        f"equality pattern wrong for {word}, k={k}: count={count}"
                    )
                checked += 1
        return f"{checked} (word, k) pairs"

    results.append(_check("cyclic subgroup counts <= 2k+1 on V4, k <= 8", cyclic_counts))

    def roundtrip() -> str:
        for word in freegroup.enumerate_ball(6):
            conj, core = freegroup.cyclic_reduce(word)
            back = freegroup.concat(conj, freegroup.concat(core, freegroup.invert(conj)))
            if back != word:
                raise AssertionError(f"roundtrip failed for {word}")
            first, last = (core.letters[0], core.letters[-1]) if core.letters else (0, 0)
            if core.letters and len(core) > 1 and first == last ^ 1:
                raise AssertionError(f"core {core} not cyclically reduced")
        return "all words of length <= 6"

    results.append(_check("cyclic reduction round-trips on V6", roundtrip))

    def idempotent() -> str:
        for _ in range(500):
            letters = _random_letters(rng)
            reduced = freegroup.reduce(letters)
            if freegroup.reduce(reduced.letters) != reduced:
                raise AssertionError(f"reduce not idempotent on {letters}")
            if len(reduced) > len(letters):
                raise AssertionError("reduction increased length")
        return "500 random letter strings"

    results.append(_check("reduce is idempotent and never lengthens", idempotent))

    def concat_props() -> str:
        for _ in range(500):
            a = freegroup.reduce(_random_letters(rng, 20))
            b = freegroup.reduce(_random_letters(rng, 20))
            c = freegroup.reduce(_random_letters(rng, 20))
            ab = freegroup.concat(a, b)
            if len(ab) > len(a) + len(b):
                raise AssertionError(f"concat lengthened: {a} * {b}")
            if freegroup.concat(ab, c) != freegroup.concat(a, freegroup.concat(b, c)):
                raise AssertionError(f"concat not associative on {a}, {b}, {c}")
            if not freegroup.concat(a, freegroup.invert(a)).is_identity:
                raise AssertionError(f"a * a^-1 != 1 for {a}")
        return "500 random triples"

    results.append(_check("concat subadditive, associative, inverse-cancelling", concat_props))
    return results


# ------------------------------------------------------------------ geometry


def _random_isometry(rng: random.Random) -> geometry.Isometry:
    while True:
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        d = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(a * d - b * c) > 0.1:
            return geometry.Isometry.normalized(a, b, c, d)


def _random_point(rng: random.Random) -> geometry.Point:
    return geometry.Point(
        complex(rng.uniform(-3, 3), rng.uniform(-3, 3)), math.exp(rng.uniform(-2, 2))
    )


def shell_volume_quadrature(r: float, nodes: int = 96) -> float:
    """4*pi*integral_0^r sinh(s)^2 ds by Gauss-Legendre; oracle for ball_volume."""
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    s = 0.5 * r * (xs + 1.0)
    return float(4.0 * math.pi * 0.5 * r * np.sum(ws * np.sinh(s) ** 2))


def geometry_suite() -> list[CheckResult]:
    rng = random.Random(_SEED + 1)
    results = []

    def preserves_distance() -> str:
        worst = 0.0
        for _ in range(200):
            g = _random_isometry(rng)
            p, q = _random_point(rng), _random_point(rng)
            before = geometry.distance(p, q)
            after = geometry.distance(geometry.apply(g, p), geometry.apply(g, q))
            worst = max(worst, abs(before - after))
        if worst >= 1e-9:
            raise AssertionError(f"distance distortion {worst:.3g} >= 1e-9")
        return f"200 random maps, worst distortion {worst:.2e}"

    results.append(_check("isometries preserve distance", preserves_distance))

    def volume_quadrature() -> str:
        for r in (0.1, 0.5, 1.0, 2.0):
            lib = geometry.ball_volume(r)
            ref = shell_volume_quadrature(r)
            if abs(lib - ref) > 1e-9 * ref:
                raise AssertionError(f"ball_volume({r}) = {lib} vs quadrature {ref}")
        return "r in {0.1, 0.5, 1, 2}, rel 1e-9"

    results.append(_check("ball volume matches shell quadrature", volume_quadrature))

    def triangle_bound() -> str:
        count = 0
        while count < 10000:
            sides = sorted(rng.uniform(1e-3, 10.0) for _ in range(3))
            if sides[2] >= sides[0] + sides[1]:
                continue
            tri = geometry.Triangle(*sides)
            area = geometry.triangle_area(tri)
            if not area < min(math.pi, tri.shortest) + 1e-9:
                raise AssertionError(f"area {area} not below min(pi, L) for {tri}")
            count += 1
        return "10000 random triangles"

    results.append(_check("triangle area < min(pi, shortest side)", triangle_bound))

    def triangle_symmetry() -> str:
        for _ in range(200):
            sides = sorted(rng.uniform(0.05, 5.0) for _ in range(3))
            if sides[2] >= sides[0] + sides[1]:
                continue
            a, b, c = sides
            areas = {
                round(geometry.triangle_area(geometry.Triangle(*perm)), 12)
                for perm in ((a, b, c), (b, c, a), (c, a, b), (a, c, b))
            }
            if len(areas) != 1:
                raise AssertionError(f"area not symmetric on {sides}: {areas}")
        return "side permutations agree to 1e-12"

    results.append(_check("triangle area symmetric under permutation", triangle_symmetry))

    def jorgensen_invariant() -> str:
        for _ in range(100):
            x, y, h = (_random_isometry(rng) for _ in range(3))
            v1 = geometry.jorgensen_value(x, y)
            v2 = geometry.jorgensen_value(
                h @ x @ h.inverse(), h @ y @ h.inverse()
            )
            if abs(v1 - v2) > 1e-9 * max(1.0, abs(v1)):
                raise AssertionError(f"jorgensen value changed under conjugation: {v1} vs {v2}")
        return "100 random conjugations"

    results.append(_check("jorgensen value conjugation-invariant", jorgensen_invariant))

    def displacement_equivariant() -> str:
        for _ in range(100):
            g, h = _random_isometry(rng), _random_isometry(rng)
            p = _random_point(rng)
            d1 = geometry.displacement(g, p)
            d2 = geometry.displacement(h @ g @ h.inverse(), geometry.apply(h, p))
            if abs(d1 - d2) > 1e-9 * max(1.0, d1):
                raise AssertionError(f"displacement not equivariant: {d1} vs {d2}")
        return "100 random conjugations"

    results.append(_check("displacement equivariant under conjugation", displacement_equivariant))
    return results


# -------------------------------------------------------------------- bounds


def bounds_suite(grid_points: int = 100) -> list[CheckResult]:
    grid = log_uniform_grid(grid_points)
    results = []
    memo: dict[str, list[int]] = {}

    def n_values() -> list[int]:
        if "ns" not in memo:
            memo["ns"] = [bounds.compute_n(bounds.BoundParams(lam)) for lam in grid]
        return memo["ns"]

    def definition() -> str:
        ns = n_values()
        for lam, n in zip(grid, ns):
            params = bounds.BoundParams(lam)
            if bounds.margulis_gap(n, params) < 0.0:
                raise AssertionError(f"gap negative at N({lam}) = {n}")
            if n > 1 and bounds.margulis_gap(n - 1, params) >= 0.0:
                raise AssertionError(f"gap nonnegative at N({lam}) - 1 = {n - 1}")
        return f"{len(grid)} grid points, N up to {max(ns)}"

    results.append(_check("gap sign pattern at N(lambda) on the grid", definition))

    def majorant() -> str:
        for lam, n in zip(grid, n_values()):
            if not n < bounds.nestimate(bounds.BoundParams(lam)):
                raise AssertionError(f"N({lam}) = {n} not below 1 + 110*beta*log(beta)")
        return "strict integer-vs-real comparison"

    results.append(_check("N(lambda) < 1 + 110*beta*log(beta)", majorant))

    def monotone() -> str:
        ns = n_values()
        for i in range(1, len(ns)):
            if ns[i] < ns[i - 1]:
                raise AssertionError(f"N({grid[i]}) = {ns[i]} < N({grid[i-1]}) = {ns[i-1]}")
        return "nondecreasing along the grid"

    results.append(_check("N(lambda) monotone in lambda", monotone))

    def dominance() -> str:
        for lam, n in zip(grid, n_values()):
            params = bounds.BoundParams(lam)
            exact = lam * (8.0 * n - 2.0)
            closed = bounds.volume_bound_closed(params)
            if not exact <= closed:
                raise AssertionError(f"exact bound {exact} > closed form {closed} at {lam}")
        return "exact <= closed form on the grid"

    results.append(_check("volume bound dominance", dominance))

    def precision_agreement() -> str:
        for lam, n in zip(grid, n_values()):
            n_ext = bounds.compute_n(bounds.BoundParams(lam), EXTENDED)
            if n_ext != n:
                raise AssertionError(f"double N = {n} vs extended N = {n_ext} at {lam}")
        return "identical integers in both modes"

    results.append(_check("double and extended N(lambda) agree", precision_agreement))

    def rank_routes() -> str:
        for lam in grid[:: max(1, len(grid) // 20)]:
            params = bounds.BoundParams(lam)
            ib = bounds.index_bound(params)
            direct = bounds.rank_bound(params)
            via_index = bounds.rank_from_index(2, math.floor(ib))
            if not via_index >= direct - 1.0:
                raise AssertionError(f"rank routes inconsistent at {lam}: {via_index} vs {direct}")
        return "floor-index route within 1 of direct route"

    results.append(_check("two rank-bound routes consistent", rank_routes))

    def sign_diagnostic() -> str:
        for lam in (grid[0], 0.104, 0.3, grid[-1]):
            dips = bounds.gap_sign_diagnostic(bounds.BoundParams(lam))
            if dips:
                raise AssertionError(f"non-monotone gap signs past N at lambda={lam}: {dips}")
        return "no dips within 64 past N(lambda)"

    results.append(_check("gap signs stay nonnegative just past N(lambda)", sign_diagnostic))
    return results


# ------------------------------------------------------------------- packing


SANOV_PAIR = {
    "x": [[1.0, 0.0], [2.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
    "y": [[1.0, 0.0], [0.0, 0.0], [2.0, 0.0], [1.0, 0.0]],
}

COMMUTING_PARABOLIC_PAIR = {
    "x": [[1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
    "y": [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [1.0, 0.0]],
}


def packing_suite(grid_points: int = 40) -> list[CheckResult]:
    results = []

    def coset_paths() -> str:
        for n in range(1, 41):
            exact = packing._coset_lower_exact(n)
            logdom = packing._coset_lower_logdomain(n)
            if abs(exact - logdom) > 1e-12 * max(1.0, abs(exact)):
                raise AssertionError(f"paths disagree at n={n}: {exact} vs {logdom}")
        return "n <= 40, rel 1e-12"

    results.append(_check("coset bound: exact and log-domain paths agree", coset_paths))

    def certificate() -> str:
        params = bounds.BoundParams(0.104)
        value = packing.packing_certificate(params, EXTENDED)
        if not 5330.0 < value < 5334.0:
            raise AssertionError(f"certificate {value} outside (5330, 5334)")
        return f"pi/vol(b) = {value:.6f}"

    results.append(_check("constant certificate pi/vol(b) < 5334 at mu = 0.104", certificate))

    def margins() -> str:
        worst = math.inf
        for lam in log_uniform_grid(grid_points):
            report = packing.packing_chain_check(bounds.BoundParams(lam))
            worst = min(worst, report.margin)
            if report.margin != report.coset_lower - report.volume_ratio:
                raise AssertionError("margin field inconsistent")
        return f"smallest margin {worst:.6f}"

    results.append(_check("packing margin >= 0 on the grid", margins))

    def commutator_found() -> str:
        pair = packing.GeneratorPair.from_json(COMMUTING_PARABOLIC_PAIR)
        word = packing.search_relation(pair, 6)
        if word is None or str(word) != "xyXY":
            raise AssertionError(f"expected the commutator xyXY, got {word}")
        return "xyXY at length 4"

    results.append(_check("commuting parabolic pair yields the length-4 commutator", commutator_found))

    def sanov_free() -> str:
        pair = packing.GeneratorPair.from_json(SANOV_PAIR)
        word = packing.search_relation(pair, 8, tol=1e-6)
        if word is not None:
            raise AssertionError(f"unexpected relation {word} for a free pair")
        return "no relation up to length 8 at tol 1e-6"

    results.append(_check("free (Sanov) pair has no short relation", sanov_free))
    return results


SUITES = {
    "freegroup": freegroup_suite,
    "geometry": geometry_suite,
    "bounds": bounds_suite,
    "packing": packing_suite,
}


def run_suites(names: list[str]) -> tuple[list[tuple[str, CheckResult]], bool]:
    """Run the named suites; returns (labelled results, all passed)."""
    labelled: list[tuple[str, CheckResult]] = []
    for name in names:
        for result in SUITES[name]():
            labelled.append((name, result))
    return labelled, all(result.passed for _, result in labelled)
