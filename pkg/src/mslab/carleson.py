"""Interpolation-theoretic scalars on interior point sequences.

The separation quality of a finite sequence is measured by the Carleson
constant

    delta(L) = min_n prod_{k != n} |(l_n - l_k)/(1 - conj(l_k) l_n)|,

the embedding health by the double-sum statistic

    sup_m sum_n (1-|l_m|^2)(1-|l_n|^2)/|1 - conj(l_m) l_n|^2,

and the price of interpolation by the classical bound

    phi(delta) = (2 - delta^2 + 2 sqrt(1 - delta^2)) / delta^2,

which dominates the interpolation constant of any sequence with Carleson
constant delta.  ``interpolation_threshold`` inverts phi: given a target
gamma in (0,1) it returns the separation level above which phi < 1/gamma.

Boundary points are rejected throughout; the pseudohyperbolic metric
degenerates on the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericDomainError
from .points import PointSequence, UnitPoint

# Above this size, per-point products are formed as exp of summed logs to
# dodge underflow for strongly clustered sequences.
_LOG_PRODUCT_CUTOFF = 64


@dataclass(frozen=True)
class CarlesonReport:
    """Separation and embedding diagnostics for one sequence."""

    delta: float
    embedding_sup: float
    witness_index: int

    def to_json_dict(self) -> dict:
        return {
            "delta": self.delta,
            "embedding_sup": self.embedding_sup,
            "witness_index": self.witness_index,
        }


def _interior_value(p: complex | UnitPoint) -> complex:
    if isinstance(p, UnitPoint):
        if p.is_boundary:
            raise NumericDomainError(
                "pseudohyperbolic metric degenerates at boundary points"
            )
        return p.value
    z = complex(p)
    if abs(z) >= 1.0 - 1e-14:
        raise NumericDomainError(
            "pseudohyperbolic metric degenerates at boundary points"
        )
    return z


def pseudohyperbolic(lam: complex | UnitPoint, mu: complex | UnitPoint) -> float:
    """Pseudohyperbolic distance |(l - m)/(1 - conj(m) l)| of interior points."""
    a = _interior_value(lam)
    b = _interior_value(mu)
    return abs((a - b) / (1.0 - b.conjugate() * a))


def _require_interior(seq: PointSequence) -> list[complex]:
    if len(seq) == 0:
        raise NumericDomainError("empty point sequence")
    return [_interior_value(p) for p in seq.points]


def carleson_constant(seq: PointSequence) -> float:
    """Carleson separation constant of a finite interior sequence."""
    return carleson_report(seq).delta


def carleson_report(seq: PointSequence) -> CarlesonReport:
    """Carleson constant with witness, plus the embedding double sum."""
    vals = _require_interior(seq)
    n = len(vals)
    use_logs = n > _LOG_PRODUCT_CUTOFF

    best = math.inf
    witness = seq.ids[0]
    for i in range(n):
        if use_logs:
            acc = 0.0
            for j in range(n):
                if j != i:
                    d = abs((vals[i] - vals[j]) / (1.0 - vals[j].conjugate() * vals[i]))
                    acc += math.log(d) if d > 0.0 else -math.inf
            prod = math.exp(acc) if acc > -math.inf else 0.0
        else:
            prod = 1.0
            for j in range(n):
                if j != i:
                    prod *= abs(
                        (vals[i] - vals[j]) / (1.0 - vals[j].conjugate() * vals[i])
                    )
        if prod < best:
            best = prod
            witness = seq.ids[i]
    if n == 1:
        best = 1.0  # empty product

    sup = 0.0
    for i in range(n):
        row = 0.0
        wi = 1.0 - abs(vals[i]) ** 2
        for j in range(n):
            wj = 1.0 - abs(vals[j]) ** 2
            row += wi * wj / abs(1.0 - vals[i].conjugate() * vals[j]) ** 2
        sup = max(sup, row)
    return CarlesonReport(delta=best, embedding_sup=sup, witness_index=witness)


def embedding_sup(seq: PointSequence) -> float:
    """Max row sum of the embedding double-sum statistic."""
    return carleson_report(seq).embedding_sup


def earl_bound(delta: float) -> float:
    """Interpolation-constant bound phi(delta); decreasing, phi(1) = 1."""
    if not 0.0 < delta <= 1.0:
        raise NumericDomainError(f"separation must lie in (0, 1], got {delta!r}")
    d2 = delta * delta
    return (2.0 - d2 + 2.0 * math.sqrt(max(0.0, 1.0 - d2))) / d2


def interpolation_threshold(gamma: float, tol: float = 1e-12) -> float:
    """The separation level delta* with phi(delta*) = 1/gamma.

    Bisection on [1e-9, 1]; phi is strictly decreasing so the bracket is
    self-verifying.  The upper end of the final bracket is returned, so
    phi(delta) < 1/gamma holds for every delta > delta*.
    """
    if not 0.0 < gamma < 1.0:
        raise NumericDomainError(f"gamma must lie in (0, 1), got {gamma!r}")
    target = 1.0 / gamma
    lo, hi = 1e-9, 1.0
    if earl_bound(lo) < target:
        return lo  # gamma so small that any positive separation works
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if earl_bound(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi
