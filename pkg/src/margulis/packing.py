"""The packing-argument verification chain and short-relation search.

Two independent quantities meet at N = N(lambda): a coset-counting lower
bound 2(3^N - 1)/(4N + 1) and the volume ratio vol(B)/vol(b) of a large
hyperbolic ball to a small one.  packing_chain_check certifies that the
counting bound stays on top (log-domain margin >= 0) and that the
constant driving it satisfies pi/vol(b) < 2*packing_constant.

search_relation enumerates reduced words in two matrix generators in
(length, lex) order, looking for the shortest word whose product lands on
+I or -I in PSL(2, C).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import gmpy2

from .bounds import BoundParams, compute_n
from .freegroup import ENUMERATION_CAP, ReducedWord
from .geometry import Isometry, Point, ball_volume, parse_generator_matrices
from .numerics import (
    DOUBLE,
    EXTENDED,
    LOG3,
    check_precision,
    extended_context,
    log_sinh_minus_x,
)

_LOG2 = math.log(2.0)

#: Exact big-integer evaluation of the coset bound is used up to this N.
_EXACT_COSET_LIMIT = 40


class PackingInconsistencyError(RuntimeError):
    """The packing chain failed to close; this signals a bug or degenerate input."""


@dataclass(frozen=True)
class GeneratorPair:
    """Two matrix generators and the basepoint their displacements refer to."""

    x: Isometry
    y: Isometry
    basepoint: Point

    @classmethod
    def from_json(cls, source: Union[str, dict]) -> "GeneratorPair":
        x, y, basepoint = parse_generator_matrices(source)
        return cls(x, y, basepoint)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "GeneratorPair":
        return cls.from_json(Path(path).read_text())


@dataclass(frozen=True)
class PackingReport:
    """Log-domain record of the chain check at N = n: margin = coset_lower - volume_ratio."""

    n: int
    coset_lower: float
    volume_ratio: float
    margin: float


def _coset_lower_exact(n: int) -> float:
    return math.log(2 * (3**n - 1)) - math.log(4 * n + 1)


def _coset_lower_logdomain(n: int) -> float:
    return n * LOG3 + _LOG2 - math.log(4 * n + 1) + math.log1p(-math.exp(-n * LOG3))


def coset_lower_bound(n: int) -> float:
    """log of 2(3^n - 1)/(4n + 1), the coset-count lower bound at radius n.

    Exact big-integer numerator for n <= 40, log-domain evaluation beyond.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n <= _EXACT_COSET_LIMIT:
        return _coset_lower_exact(n)
    return _coset_lower_logdomain(n)


def packing_certificate(params: BoundParams, precision: str = DOUBLE) -> float:
    """pi / vol(ball of radius mu/2); must stay below 2*packing_constant."""
    return math.pi / ball_volume(params.mu / 2.0, precision)


def packing_chain_check(params: BoundParams, precision: str = DOUBLE) -> PackingReport:
    """Certify that the counting/volume contradiction is blocked at N(lambda).

    Checks pi/vol(b) < 2*packing_constant and
    2(3^N - 1)/(4N + 1) >= vol(B)/vol(b) with B of radius N*lambda + mu/2,
    both in the log domain.  A failed certificate or a negative margin is
    never expected for sane parameters and raises PackingInconsistencyError.
    """
    check_precision(precision)
    n = compute_n(params, precision)
    certificate = packing_certificate(params, precision)
    if not certificate < 2.0 * params.packing_constant:
        raise PackingInconsistencyError(
            f"constant certificate failed: pi/vol(b) = {certificate:.6g} is not below "
            f"2*packing_constant = {2.0 * params.packing_constant:.6g} (mu = {params.mu})"
        )
    coset_lower = coset_lower_bound(n)
    if precision == EXTENDED:
        with extended_context():
            xe = 2 * n * gmpy2.mpfr(params.lam) + gmpy2.mpfr(params.mu)
            me = gmpy2.mpfr(params.mu)
            volume_ratio = float(
                gmpy2.log(gmpy2.sinh(xe) - xe) - gmpy2.log(gmpy2.sinh(me) - me)
            )
    else:
        x = 2.0 * n * params.lam + params.mu
        volume_ratio = log_sinh_minus_x(x) - log_sinh_minus_x(params.mu)
    margin = coset_lower - volume_ratio
    if margin < 0.0:
        raise PackingInconsistencyError(
            f"packing margin {margin:.6g} < 0 at N = {n}, lambda = {params.lam}; "
            "this contradicts the threshold definition and indicates a bug"
        )
    return PackingReport(n=n, coset_lower=coset_lower, volume_ratio=volume_ratio, margin=margin)


def relation_length_bound(params: BoundParams, precision: str = DOUBLE) -> int:
    """The guaranteed relation-length budget 8*N(lambda)."""
    return 8 * compute_n(params, precision)


def _mul(
    m: tuple[complex, complex, complex, complex],
    g: tuple[complex, complex, complex, complex],
) -> tuple[complex, complex, complex, complex]:
    a, b, c, d = m
    e, f, h, k = g
    return (a * e + b * h, a * f + b * k, c * e + d * h, c * f + d * k)


def _pm_identity_distance(m: tuple[complex, complex, complex, complex]) -> float:
    a, b, c, d = m
    off = max(abs(b), abs(c))
    return min(max(abs(a - 1.0), abs(d - 1.0), off), max(abs(a + 1.0), abs(d + 1.0), off))


def _is_pm_identity(m: tuple[complex, complex, complex, complex], tol: float) -> bool:
    # cheap prefilter at 2*tol, then the real decision on the matrix
    # rescaled to unit determinant (accumulated drift is ~1e-14 at most)
    if _pm_identity_distance(m) >= 2.0 * tol:
        return False
    a, b, c, d = m
    s = cmath.sqrt(a * d - b * c)
    return _pm_identity_distance((a / s, b / s, c / s, d / s)) < tol


def _dfs(
    mats: tuple,
    target: int,
    depth: int,
    last: int,
    m: tuple,
    buf: list[int],
    tol: float,
) -> Optional[list[int]]:
    if depth == target:
        return buf if _is_pm_identity(m, tol) else None
    for letter in range(4):
        if letter == last ^ 1:
            continue
        buf[depth] = letter
        hit = _dfs(mats, target, depth + 1, letter, _mul(m, mats[letter]), buf, tol)
        if hit is not None:
            return hit
    return None


def search_relation(
    gens: GeneratorPair,
    max_length: int,
    tol: float = 1e-9,
    cap: int = ENUMERATION_CAP,
) -> Optional[ReducedWord]:
    """The shortest reduced word w with w(x, y) within tol of +I or -I.

    Words are tried in (length, lex) order with incrementally maintained
    prefix products, so ties resolve deterministically to the first word in
    enumeration order.  Returns None when no word of length <= max_length
    evaluates to the identity in PSL(2, C).

    The guaranteed budget 8*N(lambda) usually exceeds any enumerable
    length; max_length is the practical cap and is refused beyond the
    enumeration cap.
    """
    if max_length < 1:
        raise ValueError(f"max_length must be a positive integer, got {max_length}")
    if max_length > cap:
        raise ValueError(
            f"max_length {max_length} exceeds the enumeration cap {cap} "
            f"(4*3^{max_length - 1} words at the top length); raise cap explicitly "
            "if you really have the time and memory"
        )
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    mats = (
        gens.x.entries(),
        gens.x.inverse().entries(),
        gens.y.entries(),
        gens.y.inverse().entries(),
    )
    identity = (1 + 0j, 0j, 0j, 1 + 0j)
    for target in range(1, max_length + 1):
        buf = [0] * target
        hit = _dfs(mats, target, 0, -2, identity, buf, tol)
        if hit is not None:
            return ReducedWord(tuple(hit))
    return None


def evaluate_word(gens: GeneratorPair, word: ReducedWord) -> Isometry:
    """The matrix w(x, y), multiplying letters left to right."""
    m = (1 + 0j, 0j, 0j, 1 + 0j)
    mats = (
        gens.x.entries(),
        gens.x.inverse().entries(),
        gens.y.entries(),
        gens.y.inverse().entries(),
    )
    for letter in word.letters:
        m = _mul(m, mats[letter])
    return Isometry.normalized(*m)
