"""Adaptive Simpson quadrature for smooth real integrands."""

from __future__ import annotations

from typing import Callable

from .errors import NumericDomainError


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-14,
    max_depth: int = 60,
) -> float:
    """Integrate f over [a, b] by recursive Simpson bisection.

    The usual |S2 - S1| <= 15*tol acceptance test, with tolerance split
    across halves.  Raises if the recursion depth limit is hit (integrand
    too rough for the requested tolerance).
    """
    if b == a:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    scale = max(abs(whole), abs_tol)
    return _simpson_rec(
        f, a, b, fa, fm, fb, whole, rel_tol * scale + abs_tol, max_depth
    )


def _simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth) -> float:
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0:
        raise NumericDomainError("adaptive quadrature failed to converge")
    if abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return _simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _simpson_rec(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )
