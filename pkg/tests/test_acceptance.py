"""Acceptance gate: every headline quantitative claim at its stated tolerance.

Each criterion prints one PASS/FAIL line (run pytest with -s to see them)
and enforces its wall-clock budget.  Expected values marked as derived
were computed with the independent mpmath oracles in _oracles.py.
"""

import math
import random
import time

import sympy

from margulis.bounds import BoundParams, compute_n, margulis_gap, nestimate
from margulis.freegroup import ReducedWord, count_cyclic_powers, enumerate_ball
from margulis.geometry import Triangle, ball_volume, jorgensen_value, triangle_area, Isometry
from margulis.packing import GeneratorPair, packing_certificate, search_relation
from margulis.verify import COMMUTING_PARABOLIC_PAIR, SANOV_PAIR, log_uniform_grid

from _oracles import ball_volume_series_oracle

_GRID = log_uniform_grid(500, 0.1005, 0.5493)
_cache: dict = {}


def _grid_ns() -> list[int]:
    if "ns" not in _cache:
        _cache["ns"] = [compute_n(BoundParams(lam)) for lam in _GRID]
    return _cache["ns"]


def _criterion(number: int, label: str, budget: float, body) -> None:
    start = time.perf_counter()
    try:
        body()
    except BaseException:
        print(f"criterion {number:2d} ({label}): FAIL")
        raise
    elapsed = time.perf_counter() - start
    within = elapsed < budget
    status = "PASS" if within else "FAIL (over budget)"
    print(f"criterion {number:2d} ({label}): {status} [{elapsed:.2f}s, budget {budget:g}s]")
    assert within, f"{label}: {elapsed:.2f}s exceeded the {budget:g}s budget"


def test_criterion_01_word_count_identity():
    def body():
        for n in range(1, 13):
            assert enumerate_ball(n).size == 2 * (3**n - 1) + 1

    _criterion(1, "word-count identity, n <= 12", 10.0, body)


def test_criterion_02_cyclic_power_counts():
    def body():
        words = list(enumerate_ball(4))
        assert len(words) == 161
        for word in words:
            for k in range(1, 9):
                count = count_cyclic_powers(word, k)
                assert count <= 2 * k + 1
                assert (count == 2 * k + 1) == (len(word) == 1)

    _criterion(2, "cyclic subgroup counts <= 2k+1 on V4, k <= 8", 5.0, body)


def test_criterion_03_ball_volume_constant():
    def body():
        assert abs(ball_volume(0.052) - 0.000589) <= 1e-3 * 0.000589
        extended = ball_volume(0.052, precision="extended")
        assert abs(extended - 0.00058930) <= 1e-8
        oracle = float(ball_volume_series_oracle(0.052))
        assert abs(extended - oracle) <= 1e-15

    _criterion(3, "ball-volume constant at radius 0.052", 1.0, body)


def test_criterion_04_packing_constant_certificate():
    def body():
        value = packing_certificate(BoundParams(0.104), precision="extended")
        assert 5330.0 < value < 5334.0

    _criterion(4, "packing constant certificate pi/vol(b) < 5334", 1.0, body)


def test_criterion_05_threshold_definition_and_precision():
    def body():
        ns = _grid_ns()
        for lam, n in zip(_GRID, ns):
            params = BoundParams(lam)
            assert margulis_gap(n, params) >= 0.0
            assert n == 1 or margulis_gap(n - 1, params) < 0.0
            assert compute_n(params, "extended") == n

    _criterion(5, "N(lambda) definition + dual-precision agreement, 500 points", 30.0, body)


def test_criterion_06_nestimate_majorant():
    def body():
        anchor = 1.0 + 110.0 * 1.11 * math.log(1.11)
        assert abs(anchor - 13.7) <= 0.05
        for lam, n in zip(_GRID, _grid_ns()):
            assert n < nestimate(BoundParams(lam))

    _criterion(6, "N(lambda) < 1 + 110*beta*log(beta) on the grid", 5.0, body)


def test_criterion_07_volume_bound_dominance():
    def body():
        for lam, n in zip(_GRID, _grid_ns()):
            b = 1.0 / (math.log(3.0) - 2.0 * lam)
            exact = lam * (8.0 * n - 2.0)
            closed = lam * (6.0 + 880.0 * b * math.log(b))
            assert exact <= closed

    _criterion(7, "exact volume bound <= closed form on the grid", 5.0, body)


def test_criterion_08_triangle_area_property():
    def body():
        rng = random.Random(20240901)
        count = 0
        while count < 10000:
            sides = sorted(rng.uniform(1e-3, 10.0) for _ in range(3))
            if sides[2] >= sides[0] + sides[1]:
                continue
            area = triangle_area(Triangle(*sides))
            assert area < min(math.pi, sides[0]) + 1e-9
            count += 1

    _criterion(8, "triangle area < min(pi, shortest side), 10^4 samples", 5.0, body)


def test_criterion_09_jorgensen_values():
    def body():
        # exact derivation: tr X = 2, tr[X,Y] - 2 = omega^2 with |omega| = 1
        omega = sympy.Rational(-1, 2) + sympy.I * sympy.sqrt(3) / 2
        xs = sympy.Matrix([[1, 1], [0, 1]])
        ys = sympy.Matrix([[1, 0], [omega, 1]])
        comm = xs * ys * xs.inv() * ys.inv()
        exact = sympy.Abs(sympy.trace(xs) ** 2 - 4) + sympy.Abs(
            sympy.simplify(sympy.trace(comm)) - 2
        )
        assert sympy.simplify(exact - 1) == 0

        x = Isometry(1, 1, 0, 1)
        y = Isometry(1, 0, complex(-0.5, math.sqrt(3) / 2), 1)
        value = jorgensen_value(x, y)
        assert value >= 1.0 - 1e-12
        assert abs(value - 1.0) <= 1e-12
        assert jorgensen_value(Isometry.identity(), Isometry.identity()) == 0.0

    _criterion(9, "jorgensen value: figure-eight pair >= 1, identity pair 0", 1.0, body)


def test_criterion_10_relation_search():
    def body():
        commuting = GeneratorPair.from_json(COMMUTING_PARABOLIC_PAIR)
        word = search_relation(commuting, 8)
        assert word == ReducedWord.from_string("xyXY")
        # the budget 8*N(lambda) >= 8 covers length 4 for every lambda in range
        assert len(word) <= 8

        sanov = GeneratorPair.from_json(SANOV_PAIR)
        assert search_relation(sanov, 12, tol=1e-6) is None

    _criterion(10, "relation search: commutator found, Sanov pair free to 12", 60.0, body)
