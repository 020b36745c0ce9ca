"""Boundary argument tracking, level sets, and Clark-family machinery.

On any boundary arc free of spectrum, a nonconstant inner function has a
strictly increasing continuous argument branch whose rate is the angular
derivative |Theta'|.  Tracking that branch gives guaranteed, complete
enumeration of every level set {Theta = alpha} by monotone bisection: each
2*pi of argument increase contains exactly one solution.

A level set carries a Clark family: the points tau_n, their angular
derivatives, and the weights a_n = 1/|Theta'(tau_n)| of the associated
boundary measure.  For a complete family these weights reproduce the
Herglotz transform

    Re (alpha + Theta(z))/(alpha - Theta(z))
        = sum_n a_n (1 - |z|^2)/|tau_n - z|^2,

which ``herglotz_residual`` checks pointwise.  Near a singular atom the
level points accumulate, so enumeration is capped and the family flagged
``truncated``; a truncated family no longer certifies the identity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, NumericDomainError
from .inner import InnerFunction, boundary_derivative, derivative, eval_inner
from .points import TWO_PI, PointSequence, UnitPoint, normalize_angle
from .quadrature import adaptive_simpson

# Refinement targets for argument-branch sampling.
_MAX_WRAP_INCREMENT = math.pi / 4.0
_SLOPE_REL_TOL = 5e-7
_MAX_BRANCH_SAMPLES = 1 << 20


@dataclass(frozen=True)
class ArgBranch:
    """Continuous increasing branch of arg Theta(e^{i theta}) on one arc.

    Dense samples plus monotone piecewise-linear interpolation; consecutive
    sampled increments stay below pi/4, so principal-argument differences
    within a cell are unambiguous.
    """

    arc: tuple[float, float]
    thetas: np.ndarray
    values: np.ndarray

    @property
    def total_increase(self) -> float:
        return float(self.values[-1] - self.values[0])

    def value_at(self, theta: float) -> float:
        return float(np.interp(theta, self.thetas, self.values))


@dataclass(frozen=True)
class ClarkFamily:
    """Level set of Theta at a unimodular alpha, with weights 1/|Theta'|."""

    alpha: complex
    points: tuple[UnitPoint, ...]
    derivs: tuple[float, ...]
    weights: tuple[float, ...]
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.points)

    @property
    def angles(self) -> tuple[float, ...]:
        return tuple(p.angle for p in self.points)

    def to_json_dict(self) -> dict:
        return {
            "alpha": [self.alpha.real, self.alpha.imag],
            "points": list(self.angles),
            "derivs": list(self.derivs),
            "weights": list(self.weights),
            "truncated": self.truncated,
        }


def _principal_arg(theta: InnerFunction, angle: float) -> float:
    return cmath.phase(eval_inner(theta, cmath.exp(1j * angle)))


def _deriv_at(theta: InnerFunction, angle: float) -> float:
    return boundary_derivative(theta, cmath.exp(1j * angle))


def _check_arc_clear(theta: InnerFunction, lo: float, hi: float) -> None:
    for a, _ in theta.singular_atoms:
        for shift in (a, a + TWO_PI, a - TWO_PI):
            if lo - 1e-13 <= shift <= hi + 1e-13:
                raise NumericDomainError(
                    f"arc [{lo}, {hi}] touches the singular atom at angle {a}"
                )


def _seed_angles(theta: InnerFunction, lo: float, hi: float) -> list[float]:
    """Initial sample angles: a uniform grid plus clusters at the angles of
    near-boundary zeros, where the argument rate spikes."""
    span = hi - lo
    n0 = max(32, 16 + 8 * theta.degree)
    grid = [lo + span * i / n0 for i in range(n0 + 1)]
    for eta in theta.blaschke_zeros:
        gap = 1.0 - abs(eta)
        if gap < 0.25:
            base = cmath.phase(eta)
            for shift in (base, base + TWO_PI, base - TWO_PI):
                for j in range(-8, 9):
                    t = shift + 0.5 * j * gap
                    if lo < t < hi:
                        grid.append(t)
    return sorted(set(grid))


def build_arg_branch(theta: InnerFunction, arc: tuple[float, float]) -> ArgBranch:
    """Adaptively sampled increasing argument branch on a spectrum-free arc.

    Each cell is refined until its wrapped increment is below pi/4, its
    width times the sampled rate is safely below a half turn, and the cell
    secant matches the midpoint rate to the branch slope tolerance.
    """
    lo, hi = float(arc[0]), float(arc[1])
    if not hi > lo:
        raise ConfigError("arc must have positive length")
    if hi - lo > TWO_PI + 1e-12:
        raise ConfigError("arc cannot exceed a full turn")
    if theta.is_constant:
        raise NumericDomainError("constant inner function has no argument branch")
    _check_arc_clear(theta, lo, hi)

    angles = _seed_angles(theta, lo, hi)
    princ = {t: _principal_arg(theta, t) for t in angles}
    deriv = {t: _deriv_at(theta, t) for t in angles}

    def cell_ok(a: float, b: float) -> bool:
        d = (princ[b] - princ[a]) % TWO_PI
        if d >= _MAX_WRAP_INCREMENT:
            return False
        m = 0.5 * (a + b)
        dm = deriv.get(m)
        if dm is None:
            deriv[m] = dm = _deriv_at(theta, m)
            princ[m] = _principal_arg(theta, m)
        h = b - a
        if h * max(deriv[a], dm, deriv[b]) >= 0.5 * math.pi:
            return False
        secant = d / h
        return abs(secant - dm) <= _SLOPE_REL_TOL * dm

    stack = [(angles[i], angles[i + 1]) for i in range(len(angles) - 1)]
    accepted: list[tuple[float, float]] = []
    while stack:
        a, b = stack.pop()
        if cell_ok(a, b):
            accepted.append((a, b))
            continue
        m = 0.5 * (a + b)
        if m <= a or m >= b or len(princ) > _MAX_BRANCH_SAMPLES:
            raise NumericDomainError("argument branch refinement exhausted")
        if m not in princ:
            princ[m] = _principal_arg(theta, m)
            deriv[m] = _deriv_at(theta, m)
        stack.append((a, m))
        stack.append((m, b))

    accepted.sort()
    thetas = [accepted[0][0]] + [cell[1] for cell in accepted]
    values = [princ[thetas[0]]]
    for a, b in accepted:
        values.append(values[-1] + (princ[b] - princ[a]) % TWO_PI)
    th = np.asarray(thetas)
    vals = np.asarray(values)
    if np.any(np.diff(vals) <= 0.0):
        raise NumericDomainError("argument branch is not strictly increasing")
    return ArgBranch(arc=(lo, hi), thetas=th, values=vals)


def _branch_value_exact(
    theta: InnerFunction, branch: ArgBranch, angle: float, cell: int
) -> float:
    """True branch value inside sample cell ``cell`` (increment < pi/4)."""
    base_angle = float(branch.thetas[cell])
    base_val = float(branch.values[cell])
    inc = (_principal_arg(theta, angle) - _principal_arg(theta, base_angle)) % TWO_PI
    return base_val + inc


def _solve_on_branch(
    theta: InnerFunction, branch: ArgBranch, target_value: float, tol: float = 1e-12
) -> float:
    """Monotone bisection for branch(theta) = target_value."""
    vals = branch.values
    if target_value < float(vals[0]):
        if float(vals[0]) - target_value > 1e-8:
            raise NumericDomainError("level target below the branch range")
        return float(branch.thetas[0])
    if target_value > float(vals[-1]):
        if target_value - float(vals[-1]) > 1e-8:
            raise NumericDomainError("level target above the branch range")
        return float(branch.thetas[-1])
    idx = int(np.searchsorted(vals, target_value, side="right")) - 1
    idx = max(0, min(idx, len(vals) - 2))
    a = float(branch.thetas[idx])
    b = float(branch.thetas[idx + 1])
    fa = float(vals[idx])
    fb = float(vals[idx + 1])
    if not fa <= target_value <= fb:
        raise NumericDomainError("level target escaped its bracket")
    # refine in branch-value space as well: the value gap, not the angle
    # gap, bounds the residual |Theta(tau) - alpha| where the rate is large
    for _ in range(200):
        if b - a <= tol and fb - fa <= 1e-12:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:  # double-precision floor
            break
        fm = _branch_value_exact(theta, branch, m, idx)
        if fm < target_value:
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def _trim_to_budget(
    theta: InnerFunction, lo: float, hi: float, budget: float
) -> tuple[float, float, bool]:
    """Cut an atom-bounded arc so its argument increase stays within budget.

    The increase diverges at the atoms, so each side is cut where the
    integral of the rate from the midpoint reaches half the budget.
    """
    mid = 0.5 * (lo + hi)
    rate = lambda t: _deriv_at(theta, t)  # noqa: E731

    def cut(side_end: float, toward_mid: float) -> tuple[float, bool]:
        # integral of rate over [c, mid] (or [mid, c]) as c -> side_end
        def increase(c: float) -> float:
            a, b = (c, toward_mid) if c < toward_mid else (toward_mid, c)
            return adaptive_simpson(rate, a, b, rel_tol=1e-6)

        span = abs(side_end - toward_mid)
        prev = toward_mid
        for k in range(1, 48):
            c = side_end + (toward_mid - side_end) * 0.5**k
            if increase(c) > 0.5 * budget:
                # bisect between c (too much) and prev (within budget)
                far, near = c, prev
                for _ in range(30):
                    m = 0.5 * (far + near)
                    if increase(m) > 0.5 * budget:
                        far = m
                    else:
                        near = m
                    if abs(far - near) <= 1e-3 * span:
                        break
                return near, True
            prev = c
        return prev, True  # machine-precision close to the atom

    c_lo, t1 = cut(lo, mid)
    c_hi, t2 = cut(hi, mid)
    return c_lo, c_hi, (t1 or t2)


def _level_branches(
    theta: InnerFunction, max_points_per_arc: int
) -> tuple[list[ArgBranch], bool, bool]:
    """Argument branches covering the solvable part of the circle.

    Returns (branches, truncated, full_circle).  Pure Blaschke data gives a
    single full-circle branch; atom-bounded arcs are trimmed so each carries
    at most ``max_points_per_arc`` turns of argument.
    """
    if not theta.singular_atoms:
        return [build_arg_branch(theta, (0.0, TWO_PI))], False, True
    atoms = sorted(a for a, _ in theta.singular_atoms)
    budget = TWO_PI * (max_points_per_arc + 1)
    branches: list[ArgBranch] = []
    truncated = False
    for i, a in enumerate(atoms):
        b = atoms[(i + 1) % len(atoms)]
        if i + 1 == len(atoms):
            b = b + TWO_PI
        c_lo, c_hi, cut_flag = _trim_to_budget(theta, a, b, budget)
        truncated = truncated or cut_flag
        if c_hi - c_lo > 0.0:
            branches.append(build_arg_branch(theta, (c_lo, c_hi)))
    return branches, truncated, False


def _solutions_for_target(
    theta: InnerFunction,
    branches: list[ArgBranch],
    target_arg: float,
    full_circle: bool,
    max_points_per_arc: int,
) -> tuple[list[float], bool]:
    """Angles solving arg Theta = target_arg (mod 2*pi) on the branches."""
    solutions: list[float] = []
    capped = False
    for branch in branches:
        v0 = float(branch.values[0])
        v1 = float(branch.values[-1])
        k = math.ceil((v0 - target_arg) / TWO_PI)
        if full_circle:
            # any run of degree-many consecutive sheets carries the complete
            # root set mod 2*pi; enumerating exactly that many sidesteps all
            # float-noise bookkeeping at the wrap seam
            count = int(round((v1 - v0) / TWO_PI))
            if count > max_points_per_arc:
                count = max_points_per_arc
                capped = True
            for j in range(count):
                target = target_arg + TWO_PI * (k + j)
                solutions.append(
                    normalize_angle(_solve_on_branch(theta, branch, target))
                )
        else:
            found = 0
            while found < max_points_per_arc:
                target = target_arg + TWO_PI * k
                if target > v1:
                    break
                solutions.append(
                    normalize_angle(_solve_on_branch(theta, branch, target))
                )
                k += 1
                found += 1
            if found >= max_points_per_arc:
                capped = True
    return solutions, capped


def _family_from_angles(
    theta: InnerFunction, alpha: complex, angles: list[float], truncated: bool
) -> ClarkFamily:
    pts: list[UnitPoint] = []
    derivs: list[float] = []
    weights: list[float] = []
    for ang in sorted(angles):
        p = UnitPoint.boundary(ang)
        val = eval_inner(theta, p)
        d = boundary_derivative(theta, p)
        # the achievable residual is floored by the rate times one ulp of angle
        tol = max(1e-10, 8.0 * d * 2.3e-16 * max(1.0, abs(ang)))
        if abs(val - alpha) > tol:
            raise NumericDomainError(
                f"level point at angle {ang} misses alpha: residual {abs(val - alpha)!r}"
            )
        pts.append(p)
        derivs.append(d)
        weights.append(1.0 / d)
    return ClarkFamily(
        alpha=alpha,
        points=tuple(pts),
        derivs=tuple(derivs),
        weights=tuple(weights),
        truncated=truncated,
    )


def level_sets(
    theta: InnerFunction,
    alphas: Sequence[complex],
    max_points_per_arc: int = 512,
) -> list[ClarkFamily]:
    """Level sets for several unimodular values, sharing one branch build.

    Pure Blaschke data is solved on the full circle and enumeration is
    complete (one point per 2*pi of argument increase, i.e. the degree).
    Arcs between singular atoms are trimmed to an argument budget so at
    most ``max_points_per_arc`` points per arc are produced per level; such
    families are flagged truncated.
    """
    if theta.is_constant:
        raise NumericDomainError("constant inner function has no level sets")
    values = []
    for alpha in alphas:
        alpha = complex(alpha)
        if abs(abs(alpha) - 1.0) > 1e-12:
            raise ConfigError(
                f"level value must be unimodular, got |alpha| = {abs(alpha)!r}"
            )
        values.append(alpha)
    branches, trimmed, full_circle = _level_branches(theta, max_points_per_arc)
    if full_circle:
        branch = branches[0]
        increase = float(branch.values[-1] - branch.values[0])
        if int(round(increase / TWO_PI)) != theta.degree:
            raise NumericDomainError(
                f"argument increase {increase} inconsistent with degree {theta.degree}"
            )
    families = []
    for alpha in values:
        angles, capped = _solutions_for_target(
            theta, branches, cmath.phase(alpha), full_circle, max_points_per_arc
        )
        if full_circle and not capped and len(angles) != theta.degree:
            raise NumericDomainError(
                f"found {len(angles)} level points, expected {theta.degree}"
            )
        families.append(_family_from_angles(theta, alpha, angles, trimmed or capped))
    return families


def level_set(
    theta: InnerFunction,
    alpha: complex,
    max_points_per_arc: int = 512,
) -> ClarkFamily:
    """All boundary solutions of Theta = alpha, with derivatives and weights."""
    return level_sets(theta, [alpha], max_points_per_arc)[0]


def herglotz_residual(
    theta: InnerFunction, family: ClarkFamily, z: complex | UnitPoint
) -> float:
    """Gap between the Herglotz transform and the family's Poisson sum at z.

    Small (<= 1e-8) only for complete families; a truncated family misses
    mass near the spectrum and its residual does not certify anything.
    """
    w = z.value if isinstance(z, UnitPoint) else complex(z)
    if abs(w) >= 1.0:
        raise NumericDomainError("Herglotz residual needs an interior point")
    val = eval_inner(theta, w)
    lhs = ((family.alpha + val) / (family.alpha - val)).real
    rhs = 0.0
    for p, a_n in zip(family.points, family.weights):
        rhs += a_n * (1.0 - abs(w) ** 2) / abs(p.value - w) ** 2
    return abs(lhs - rhs)


def stability_margin(
    theta: InnerFunction, family: ClarkFamily, seq: PointSequence
) -> list[float]:
    """Per-index perturbation ratios |lambda_n - tau_n| * |Theta'(tau_n)|.

    The pairing is by position, never re-matched: a silent nearest-point
    rematch would hide exactly the violations this measures.
    """
    if len(seq) != len(family.points):
        raise ConfigError(
            f"sequence length {len(seq)} does not match family size {len(family.points)}"
        )
    out = []
    for (_pid, lam), tau, d in zip(seq, family.points, family.derivs):
        out.append(abs(lam.value - tau.value) * d)
    return out


def variation_along_path(
    theta: InnerFunction,
    tau: complex | UnitPoint,
    lam: complex | UnitPoint,
    via: Sequence[complex] | None = None,
) -> float:
    """Integral of |Theta'| along the path from tau to lam.

    The path is the straight segment by default; ``via`` inserts polyline
    waypoints (useful to route around spectrum points).  The analytic
    derivative comes from differentiating the product/atom representation;
    every segment must stay clear of the spectrum.
    """
    a = tau.value if isinstance(tau, UnitPoint) else complex(tau)
    b = lam.value if isinstance(lam, UnitPoint) else complex(lam)
    nodes = [a] + [complex(w) for w in (via or ())] + [b]
    total = 0.0
    for start, end in zip(nodes, nodes[1:]):
        if start == end:
            continue
        for p in theta.spectrum_points():
            if _segment_distance(start, end, p) < 1e-12:
                raise NumericDomainError(
                    f"path from {start} to {end} hits the spectrum at {p}"
                )
        chord = end - start

        def integrand(t: float, base: complex = start, step: complex = chord) -> float:
            return abs(derivative(theta, base + t * step))

        total += abs(chord) * adaptive_simpson(integrand, 0.0, 1.0, rel_tol=1e-8)
    return total


def _segment_distance(a: complex, b: complex, p: complex) -> float:
    """Euclidean distance from point p to the segment [a, b]."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))
