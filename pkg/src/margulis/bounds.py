"""Margulis-number bound computations.

The central object is the integer threshold N(lambda): the smallest
positive integer N with

    (3^N - 1)/(4N + 1)  >=  packing_constant * (sinh(2 N lambda + mu) - (2 N lambda + mu)),

evaluated in the log domain so that nothing overflows for N up to 1e8.
From N(lambda) follow the volume bound lambda*(8N - 2), its closed-form
majorant lambda*(6 + 880*beta*log(beta)) with beta = 1/(log 3 - 2 lambda),
and the index and rank bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import gmpy2
import numpy as np

from .numerics import (
    DOUBLE,
    EXTENDED,
    HALF_LOG3,
    LOG3,
    check_precision,
    extended_context,
    log_sinh_minus_x,
    log_sinh_minus_x_np,
)


class DomainError(ValueError):
    """An argument violates a stated hypothesis of the bound being computed."""


@dataclass(frozen=True)
class BoundParams:
    """Scalar inputs to the bound computations.

    lam is the displacement bound; mu defaults to Meyerhoff's universal
    Margulis constant 0.104.  weeks_volume defaults to the volume of the
    Weeks manifold; only the leading "0.94" of that constant is forced by
    the derivation, so the full default value is documented here as
    external knowledge and kept configurable rather than hard-coded into
    any formula.
    """

    lam: float
    mu: float = 0.104
    packing_constant: float = 2667.0
    weeks_volume: float = 0.9427073628

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and 0.0 < self.lam < HALF_LOG3):
            raise DomainError(
                f"lambda must lie strictly inside (0, log(3)/2 = {HALF_LOG3:.9f}), "
                f"got {self.lam}; at or beyond the boundary the threshold "
                "inequality is never eventually satisfied"
            )
        if not (math.isfinite(self.mu) and self.mu > 0.0):
            raise DomainError(f"mu must be positive, got {self.mu}")
        if not (math.isfinite(self.packing_constant) and self.packing_constant > 0.0):
            raise DomainError(f"packing constant must be positive, got {self.packing_constant}")
        if not (math.isfinite(self.weeks_volume) and self.weeks_volume > 0.0):
            raise DomainError(f"weeks_volume must be positive, got {self.weeks_volume}")


@dataclass(frozen=True)
class BoundsReport:
    """All bound outputs for one lambda.

    The closed-form fields (nestimate, volume_closed) require lambda > 0.1
    and are None below that; rank_bound is None when the index bound drops
    below 1 and the rank statement is vacuous (rank <= 2 already).
    """

    lam: float
    n_of_lambda: int
    beta: float
    nestimate: Optional[float]
    relation_length_bound: int
    volume_exact: float
    volume_closed: Optional[float]
    index_bound: float
    rank_bound: Optional[float]


def _beta(lam: float) -> float:
    return 1.0 / (LOG3 - 2.0 * lam)


def margulis_gap(n: int, params: BoundParams, precision: str = DOUBLE) -> float:
    """log LHS - log RHS of the threshold inequality at integer n >= 1.

    The inequality holds at n iff the gap is >= 0 (exact zero counts as
    satisfied).  Both sides are evaluated in the log domain.
    """
    check_precision(precision)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if precision == EXTENDED:
        return float(_gap_extended(n, params))
    log_lhs = n * LOG3 + math.log1p(-math.exp(-n * LOG3)) - math.log(4.0 * n + 1.0)
    x = 2.0 * n * params.lam + params.mu
    return log_lhs - math.log(params.packing_constant) - log_sinh_minus_x(x)


def _gap_extended(n: int, params: BoundParams) -> "gmpy2.mpfr":
    """The gap at 256-bit precision, with an exact big-integer left side."""
    with extended_context():
        lam = gmpy2.mpfr(params.lam)
        mu = gmpy2.mpfr(params.mu)
        x = 2 * n * lam + mu
        log_lhs = gmpy2.log(gmpy2.mpz(3) ** n - 1) - gmpy2.log(4 * n + 1)
        log_rhs = gmpy2.log(gmpy2.mpfr(params.packing_constant)) + gmpy2.log(
            gmpy2.sinh(x) - x
        )
        return log_lhs - log_rhs


def _gap_block(ns: np.ndarray, params: BoundParams) -> np.ndarray:
    log_lhs = ns * LOG3 + np.log1p(-np.exp(-ns * LOG3)) - np.log(4.0 * ns + 1.0)
    x = 2.0 * ns * params.lam + params.mu
    return log_lhs - math.log(params.packing_constant) - log_sinh_minus_x_np(x)


# Guard band for the extended scan: double-precision gap values within the
# band have their sign recomputed at 256 bits.  The double evaluation's
# absolute error is below ~40*eps*n (terms grow like n*log3), so the band
# is a couple of orders of magnitude wider than any achievable error.
def _sign_guard(ns: np.ndarray) -> np.ndarray:
    return 1e-9 + 1e-12 * ns


_FIRST_BLOCK = 4096
_MAX_BLOCK = 1 << 20


def compute_n(params: BoundParams, precision: str = DOUBLE) -> int:
    """The smallest positive integer N at which the threshold inequality holds.

    A linear scan from N = 1, by construction: the inequality is eventually
    satisfied for every lambda < log(3)/2, but nothing guarantees the
    satisfying set is upward-closed, and the definition asks for the least
    N.  In extended mode every sign decision is certified: double values
    are trusted only outside a conservative guard band, values inside the
    band are re-evaluated at 256-bit precision, and the postcondition
    (gap(N) >= 0, gap(N-1) < 0) is re-checked at 256 bits.
    """
    check_precision(precision)
    n_found = None
    n0 = 1
    block = _FIRST_BLOCK
    while n_found is None:
        ns = np.arange(n0, n0 + block, dtype=np.float64)
        gaps = _gap_block(ns, params)
        if precision == DOUBLE:
            hits = np.nonzero(gaps >= 0.0)[0]
            if hits.size:
                n_found = int(ns[hits[0]])
        else:
            guard = _sign_guard(ns)
            candidates = np.nonzero(gaps >= -guard)[0]
            for i in candidates:
                n = int(ns[i])
                if gaps[i] >= guard[i] or _gap_extended(n, params) >= 0:
                    n_found = n
                    break
        n0 += block
        block = min(2 * block, _MAX_BLOCK)

    if precision == DOUBLE:
        ok = margulis_gap(n_found, params) >= 0.0 and (
            n_found == 1 or margulis_gap(n_found - 1, params) < 0.0
        )
    else:
        ok = _gap_extended(n_found, params) >= 0 and (
            n_found == 1 or _gap_extended(n_found - 1, params) < 0
        )
    if not ok:
        raise RuntimeError(
            f"scan postcondition violated at N = {n_found} (lambda = {params.lam}); "
            "this indicates an evaluation bug, please report it"
        )
    return n_found


def gap_sign_diagnostic(
    params: BoundParams, window: int = 64, precision: str = DOUBLE
) -> list[int]:
    """Integers in (N, N + window] where the gap dips negative again.

    Whether the satisfying set is upward-closed is an open question; the
    linear scan does not depend on it, and this diagnostic reports any
    non-monotone sign pattern observed just past the threshold.  Expected
    to return an empty list.
    """
    n = compute_n(params, precision)
    return [
        m for m in range(n + 1, n + window + 1) if margulis_gap(m, params, precision) < 0.0
    ]


def nestimate(params: BoundParams) -> float:
    """Closed-form majorant 1 + 110*beta*log(beta) of N(lambda), for lambda > 0.1."""
    if not params.lam > 0.1:
        raise DomainError(
            f"nestimate requires lambda in (0.1, log(3)/2), got {params.lam}: "
            "below 0.1 the estimate's derivation does not apply"
        )
    b = _beta(params.lam)
    return 1.0 + 110.0 * b * math.log(b)


def volume_bound_exact(params: BoundParams, precision: str = DOUBLE) -> float:
    """Volume bound lambda * (8*N(lambda) - 2)."""
    return params.lam * (8.0 * compute_n(params, precision) - 2.0)


def volume_bound_closed(params: BoundParams) -> float:
    """Closed-form volume bound lambda*(6 + (880/(log3 - 2 lambda)) * log(1/(log3 - 2 lambda))).

    Requires lambda > 0.1 (it is derived from the nestimate majorant, whose
    hypothesis is lambda in (0.1, log(3)/2)).
    """
    if not params.lam > 0.1:
        raise DomainError(
            f"closed-form volume bound requires lambda in (0.1, log(3)/2), got {params.lam}"
        )
    b = _beta(params.lam)
    return params.lam * (6.0 + 880.0 * b * math.log(b))


def index_bound(params: BoundParams, precision: str = DOUBLE) -> float:
    """Bound lambda*(8N - 2)/V0 on the index of a rank-2 subgroup."""
    return volume_bound_exact(params, precision) / params.weeks_volume


def rank_bound(params: BoundParams, precision: str = DOUBLE) -> float:
    """Bound 2 + log2(lambda*(8N - 2)/V0) on the rank of the fundamental group."""
    ib = index_bound(params, precision)
    if ib < 1.0:
        raise DomainError(
            f"rank bound is vacuous: index bound {ib:.6g} < 1 (rank <= 2 already)"
        )
    return 2.0 + math.log2(ib)


def rank_from_index(subgroup_rank: int, index: int) -> float:
    """Rank bound subgroup_rank + log2(index) from a finite-index subgroup."""
    if subgroup_rank < 1:
        raise ValueError(f"subgroup rank must be a positive integer, got {subgroup_rank}")
    if index < 1:
        raise ValueError(f"index must be a positive integer, got {index}")
    return subgroup_rank + math.log2(index)


def volume_from_relation(relation_length: int, lam: float) -> float:
    """Volume bound (relation_length - 2) * min(pi, lambda) from a short relation.

    Relations of length below 4 cannot occur for a torsion-free non-cyclic
    two-generator group, so such lengths are rejected.
    """
    if relation_length < 4:
        raise DomainError(
            f"relation length must be >= 4, got {relation_length}: a shorter "
            "relation would force a cyclic quotient or a torsion element"
        )
    if not lam > 0.0:
        raise DomainError(f"lambda must be positive, got {lam}")
    return (relation_length - 2.0) * min(math.pi, lam)


def full_report(params: BoundParams, precision: str = DOUBLE) -> BoundsReport:
    """Every bound for one lambda, mutually consistent by construction.

    For lambda <= 0.1 only the exact-route fields are populated; the
    closed-form fields are None.  rank_bound is None when vacuous.
    """
    n = compute_n(params, precision)
    b = _beta(params.lam)
    volume_exact = params.lam * (8.0 * n - 2.0)
    ib = volume_exact / params.weeks_volume
    rb = 2.0 + math.log2(ib) if ib >= 1.0 else None
    if params.lam > 0.1:
        nest: Optional[float] = nestimate(params)
        closed: Optional[float] = volume_bound_closed(params)
    else:
        nest = None
        closed = None
    return BoundsReport(
        lam=params.lam,
        n_of_lambda=n,
        beta=b,
        nestimate=nest,
        relation_length_bound=8 * n,
        volume_exact=volume_exact,
        volume_closed=closed,
        index_bound=ib,
        rank_bound=rb,
    )
