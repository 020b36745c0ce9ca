"""Decomposition engines that split kernel families into certified parts.

Two pipelines are implemented.

``split_by_interpolation`` covers the regime where the sequence stays
uniformly off the spectrum, i.e. gamma = sup |Theta(lambda_n)| < 1.  Any
part with Carleson constant delta_j has interpolation constant at most
phi(delta_j), so the distance from Theta to B_j H^inf is bounded by
gamma * phi(delta_j); once that product is below 1 the part's normalized
kernels form a Riesz basic sequence.  The splitter therefore drives every
part's separation above the threshold delta* with phi(delta*) = 1/gamma,
by greedy covering plus recursive two-way splits, and emits the full
certificate chain per part.

``decompose_by_squares`` covers points that approach the boundary.  It
builds the N level sets {Theta = e^{2pi i l/N}}, cuts the circle into arcs
carrying equal angular mass 1/N, erects a Carleson square over each arc,
and classifies each point: inside a square it joins that square's level
bucket (within a bucket, sub-parts take at most one point per square, so
each sub-part is a small perturbation of one Clark family); outside all
squares it lies in the uncovered region, where |Theta| stays below a
measurable delta < 1 and the interpolation splitter applies.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from .carleson import carleson_constant, earl_bound, interpolation_threshold, pseudohyperbolic
from .clark import ClarkFamily, level_sets, stability_margin
from .errors import CertificationError, ConfigError, NumericDomainError
from .gram import FrameBounds, extremal_eigs, gram
from .inner import InnerFunction, boundary_derivative, eval_inner, spectrum_distance
from .points import TWO_PI, PointSequence, UnitPoint, normalize_angle
from .quadrature import adaptive_simpson

ThetaLike = InnerFunction | Callable[[complex], complex]

_ARC_MASS_REL_TOL = 1e-6
_GAMMA_CEILING = 1.0 - 1e-14


# ---------------------------------------------------------------------------
# Partition containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartCertificate:
    """Per-part certificate data; interpolation fields are None on square parts."""

    gamma: float | None = None
    delta_j: float | None = None
    earl_value: float | None = None
    dist_bound: float | None = None
    frame_bounds: FrameBounds | None = None

    def to_json_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "delta_j": self.delta_j,
            "earl_value": self.earl_value,
            "dist_bound": self.dist_bound,
            "frame_bounds": None
            if self.frame_bounds is None
            else self.frame_bounds.to_json_dict(),
        }


@dataclass(frozen=True)
class PartitionPart:
    ids: tuple[int, ...]
    route: str
    certificate: PartCertificate
    stability_margins: tuple[float, ...] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "ids": list(self.ids),
            "route": self.route,
            "certificate": self.certificate.to_json_dict(),
        }
        if self.stability_margins is not None:
            out["stability_margins"] = list(self.stability_margins)
        return out


@dataclass(frozen=True)
class Partition:
    parts: tuple[PartitionPart, ...]
    global_info: dict = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def all_ids(self) -> tuple[int, ...]:
        out: list[int] = []
        for part in self.parts:
            out.extend(part.ids)
        return tuple(sorted(out))

    def to_json_dict(self) -> dict:
        return {
            "parts": [p.to_json_dict() for p in self.parts],
            "global": dict(self.global_info),
            "flags": list(self.flags),
        }


# ---------------------------------------------------------------------------
# Interpolation-constant splitting
# ---------------------------------------------------------------------------

def greedy_interpolating_cover(seq: PointSequence, delta_floor: float) -> list[PointSequence]:
    """Partition into parts with Carleson constant >= delta_floor.

    First-fit greedy over points in decreasing modulus order, followed by
    re-verification of every part.  Singletons have constant 1, so the
    cover always succeeds.
    """
    if len(seq) == 0:
        raise NumericDomainError("cannot cover an empty sequence")
    order = sorted(
        zip(seq.ids, seq.points), key=lambda ip: (-abs(ip[1].value), ip[0])
    )
    bins: list[list[tuple[int, UnitPoint]]] = []
    for pid, pt in order:
        placed = False
        for part in bins:
            trial = PointSequence.from_points(
                [p for _, p in part] + [pt], [i for i, _ in part] + [pid]
            )
            if carleson_constant(trial) >= delta_floor:
                part.append((pid, pt))
                placed = True
                break
        if not placed:
            bins.append([(pid, pt)])
    parts = [seq.subset(i for i, _ in part) for part in bins]
    for part in parts:
        got = carleson_constant(part)
        if got < delta_floor - 1e-15:
            raise NumericDomainError(
                f"greedy cover verification failed: delta {got} < floor {delta_floor}"
            )
    return parts


def mills_split(seq: PointSequence) -> tuple[PointSequence, PointSequence]:
    """Split a sequence in two without losing separation.

    Heuristic: the two pseudohyperbolically closest points seed different
    halves; remaining points go, in decreasing modulus order, to the half
    maximizing their minimum distance to it.  Dropping points can only
    raise each factor's Carleson constant, so min(delta_1, delta_2) >=
    delta always holds; the sqrt(delta) quality target is the caller's to
    check (re-splitting recursively when missed).
    """
    n = len(seq)
    if n == 0:
        raise NumericDomainError("cannot split an empty sequence")
    if n == 1:
        return seq, PointSequence((), ())
    pairs = list(zip(seq.ids, seq.points))
    best = (math.inf, 0, 1)
    for i in range(n):
        for j in range(i + 1, n):
            d = pseudohyperbolic(pairs[i][1], pairs[j][1])
            if d < best[0]:
                best = (d, i, j)
    _, i0, j0 = best
    a_members = [pairs[i0]]
    b_members = [pairs[j0]]
    rest = [pairs[k] for k in range(n) if k not in (i0, j0)]
    rest.sort(key=lambda ip: (-abs(ip[1].value), ip[0]))
    for pid, pt in rest:
        da = min(pseudohyperbolic(pt, q) for _, q in a_members)
        db = min(pseudohyperbolic(pt, q) for _, q in b_members)
        if da > db or (da == db and len(a_members) <= len(b_members)):
            a_members.append((pid, pt))
        else:
            b_members.append((pid, pt))
    return (
        seq.subset(i for i, _ in a_members),
        seq.subset(i for i, _ in b_members),
    )


def _theta_values(theta: ThetaLike, seq: PointSequence) -> list[complex]:
    if isinstance(theta, InnerFunction):
        return [eval_inner(theta, p) for p in seq.points]
    return [complex(theta(p.value)) for p in seq.points]


def split_by_interpolation(
    theta: ThetaLike,
    seq: PointSequence,
    *,
    gamma_floor: float = 0.0,
    cover_floor_cap: float = 0.1,
    max_depth: int = 20,
    attach_frame_bounds: bool = True,
    route: str = "interp",
) -> Partition:
    """Split into parts whose certificates give gamma * phi(delta_j) < 1.

    Requires the off-spectrum condition gamma = max |Theta(lambda_n)| < 1
    (gamma_floor lets a caller impose a larger certified bound, e.g. a
    region-wide sup).  Theta may be an inner-function record or a plain
    evaluator; frame bounds are attached per part only for records.
    """
    if len(seq) == 0:
        raise NumericDomainError("cannot split an empty sequence")
    values = _theta_values(theta, seq)
    gamma_points = max(abs(v) for v in values)
    gamma = max(gamma_points, gamma_floor)
    if gamma >= _GAMMA_CEILING:
        raise CertificationError(
            f"off-spectrum condition violated: max |Theta(lambda)| = {gamma} is not < 1"
        )
    delta_all = carleson_constant(seq)
    delta_star = 0.0 if gamma == 0.0 else interpolation_threshold(gamma)

    flags: list[str] = []
    if delta_all >= delta_star:
        initial = [seq]
    else:
        initial = greedy_interpolating_cover(seq, min(delta_all, cover_floor_cap))

    final: list[PointSequence] = []
    stack = [(part, 0) for part in initial]
    while stack:
        part, depth = stack.pop()
        if len(part) == 0:
            continue
        delta_j = carleson_constant(part)
        if delta_j >= delta_star and gamma * earl_bound(delta_j) < 1.0:
            final.append(part)
            continue
        if depth >= max_depth:
            raise CertificationError(
                f"split recursion exceeded depth {max_depth} (gamma = {gamma})"
            )
        half_a, half_b = mills_split(part)
        if len(half_b) == 0:  # singleton that still failed: impossible, guard anyway
            raise CertificationError(
                f"cannot certify singleton part at gamma = {gamma}"
            )
        if min(carleson_constant(half_a), carleson_constant(half_b)) < math.sqrt(delta_j) - 1e-12:
            flags.append(
                f"mills sqrt-target missed at depth {depth} (delta {delta_j:.6g}); re-splitting"
            )
        stack.append((half_a, depth + 1))
        stack.append((half_b, depth + 1))

    final.sort(key=lambda part: min(part.ids))
    parts = []
    for part in final:
        delta_j = carleson_constant(part)
        phi = earl_bound(delta_j)
        fb = None
        if attach_frame_bounds and isinstance(theta, InnerFunction):
            fb = extremal_eigs(gram(theta, part))
        parts.append(
            PartitionPart(
                ids=tuple(part.ids),
                route=route,
                certificate=PartCertificate(
                    gamma=gamma,
                    delta_j=delta_j,
                    earl_value=phi,
                    dist_bound=gamma * phi,
                    frame_bounds=fb,
                ),
            )
        )
    return Partition(
        parts=tuple(parts),
        global_info={
            "gamma": gamma,
            "delta_star": delta_star,
            "delta_input": delta_all,
        },
        flags=tuple(flags),
    )


# ---------------------------------------------------------------------------
# Arc and square systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    """One boundary arc: (lo, hi] in angle, tagged by its hi endpoint.

    ``hi`` is the designated level-set endpoint; ``lo`` may be negative for
    the arc wrapping through angle zero.  ``mass`` is the independently
    integrated angular mass, verified against 1/N.
    """

    lo: float
    hi: float
    level: int
    mass: float
    hi_derivative: float

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains_angle(self, angle: float) -> bool:
        if self.length >= TWO_PI - 1e-12:
            return True
        # a point within angle tolerance of lo belongs to the previous arc
        # (this arc's lo is that arc's designated hi endpoint)
        d = normalize_angle(angle - self.lo)
        return 1e-12 < d <= self.length + 1e-12


@dataclass(frozen=True)
class ArcSystem:
    level_count: int
    arcs: tuple[Arc, ...]
    truncated: bool = False

    @property
    def total_mass(self) -> float:
        return sum(a.mass for a in self.arcs)


@dataclass(frozen=True)
class CarlesonSquare:
    """Radial box over one arc: angles (lo, hi], radius >= 1 - |J|/(2 pi)."""

    arc_index: int
    lo: float
    hi: float
    level: int
    inner_radius: float
    anchor_angle: float
    anchor_derivative: float

    def contains(self, z: complex | UnitPoint) -> bool:
        w = z.value if isinstance(z, UnitPoint) else complex(z)
        r = abs(w)
        if r < self.inner_radius or r > 1.0 + 1e-14:
            return False
        if self.hi - self.lo >= TWO_PI - 1e-12:
            return True
        d = normalize_angle(cmath.phase(w) - self.lo)
        return 1e-12 < d <= (self.hi - self.lo) + 1e-12


@dataclass(frozen=True)
class SquareSystem:
    level_count: int
    squares: tuple[CarlesonSquare, ...]
    truncated: bool = False

    def square_of(self, z: complex | UnitPoint) -> CarlesonSquare | None:
        for sq in self.squares:
            if sq.contains(z):
                return sq
        return None

    def by_level(self, level: int) -> list[CarlesonSquare]:
        return [sq for sq in self.squares if sq.level == level]


def build_arc_system(
    theta: InnerFunction, level_count: int, max_points_per_arc: int = 512
) -> ArcSystem:
    """Cut the circle into arcs of angular mass 1/N at the N level sets.

    The level sets at e^{2 pi i l / N} are merged and sorted; consecutive
    points bound the arcs, each tagged by the level of its hi endpoint.
    Per-arc mass is re-integrated independently and checked against 1/N.
    Arcs that would contain a singular atom are dropped and the system is
    flagged truncated.
    """
    if level_count < 1:
        raise ConfigError("level count must be at least 1")
    if theta.is_constant:
        raise NumericDomainError("constant inner function admits no arc system")
    alphas = [cmath.exp(2j * math.pi * l / level_count) for l in range(1, level_count + 1)]
    families = level_sets(theta, alphas, max_points_per_arc)
    truncated = any(f.truncated for f in families)

    tagged: list[tuple[float, int, float]] = []  # (angle, level, derivative)
    for l, fam in zip(range(1, level_count + 1), families):
        for p, d in zip(fam.points, fam.derivs):
            tagged.append((p.angle, l, d))
    tagged.sort()
    n_pts = len(tagged)
    if n_pts < 1:
        raise NumericDomainError("no level points found")
    for i in range(1, n_pts):
        if tagged[i][0] - tagged[i - 1][0] < 1e-11:
            raise NumericDomainError(
                f"level points at angles {tagged[i - 1][0]} and {tagged[i][0]} collide"
            )

    rate = lambda t: boundary_derivative(theta, cmath.exp(1j * t)) / TWO_PI  # noqa: E731
    atom_angles = [a for a, _ in theta.singular_atoms]
    arcs: list[Arc] = []
    target = 1.0 / level_count
    for i in range(n_pts):
        hi, level, hi_deriv = tagged[i]
        lo = tagged[i - 1][0] if i > 0 else tagged[-1][0] - TWO_PI
        # atoms never coincide with level points, so a wrapped offset in
        # (0, length) means the atom sits strictly inside this arc
        contains_atom = any(
            normalize_angle(a - lo) < (hi - lo) + 1e-15 for a in atom_angles
        )
        if contains_atom:
            truncated = True
            continue
        mass = adaptive_simpson(rate, lo, hi, rel_tol=1e-9)
        if abs(mass - target) > _ARC_MASS_REL_TOL * target:
            if truncated:
                # an end arc next to a truncation cut can lose its partner
                # point; surrender it along with the already-cut zone
                continue
            raise NumericDomainError(
                f"arc mass check failed: got {mass}, expected {target}"
            )
        arcs.append(Arc(lo=lo, hi=hi, level=level, mass=mass, hi_derivative=hi_deriv))
    return ArcSystem(level_count=level_count, arcs=tuple(arcs), truncated=truncated)


def build_squares(arcs: ArcSystem) -> SquareSystem:
    """Carleson square over each arc, depth equal to the arc's turn fraction."""
    squares = []
    for idx, arc in enumerate(arcs.arcs):
        squares.append(
            CarlesonSquare(
                arc_index=idx,
                lo=arc.lo,
                hi=arc.hi,
                level=arc.level,
                inner_radius=1.0 - arc.length / TWO_PI,
                anchor_angle=normalize_angle(arc.hi),
                anchor_derivative=arc.hi_derivative,
            )
        )
    return SquareSystem(
        level_count=arcs.level_count, squares=tuple(squares), truncated=arcs.truncated
    )


@dataclass(frozen=True)
class UncoveredRegionReport:
    """Sampled boundary diagnostics of the region left under the squares."""

    delta: float
    log_modulus_worst_const: float
    samples: int


def uncovered_region_report(
    theta: InnerFunction, squares: SquareSystem, samples: int = 4096
) -> UncoveredRegionReport:
    """Max |Theta| over the in-disk boundary of the uncovered region.

    The boundary consists of the squares' inner sides plus the radial
    segments joining adjacent squares of different depths; by the maximum
    principle the sampled max bounds |Theta| throughout the region (up to
    sampling resolution).  Also records the worst constant C for which
    log|Theta(z)| <= -C (1-|z|) |Theta'(z/|z|)| held on the samples.
    """
    sqs = squares.squares
    if not sqs:
        raise NumericDomainError("square system is empty")
    per_side = max(8, math.ceil(samples / len(sqs)))
    worst_delta = 0.0
    worst_const = math.inf
    count = 0

    def visit(z: complex) -> None:
        nonlocal worst_delta, worst_const, count
        mod = abs(eval_inner(theta, z))
        worst_delta = max(worst_delta, mod)
        r = abs(z)
        if 0.0 < r < 1.0:
            zeta = z / r
            deriv = boundary_derivative(theta, zeta)
            if mod == 0.0:
                c = math.inf
            else:
                c = -math.log(mod) / ((1.0 - r) * deriv)
            worst_const = min(worst_const, c)
        count += 1

    for sq in sqs:
        length = sq.hi - sq.lo
        for j in range(per_side):
            ang = sq.lo + length * (j + 0.5) / per_side
            visit(sq.inner_radius * cmath.exp(1j * ang))
    # radial joints between adjacent squares of different depth
    for i, sq in enumerate(sqs):
        nxt = sqs[(i + 1) % len(sqs)]
        r_lo = min(sq.inner_radius, nxt.inner_radius)
        r_hi = max(sq.inner_radius, nxt.inner_radius)
        if r_hi - r_lo < 1e-15:
            continue
        ang = sq.hi
        for j in range(8):
            r = r_lo + (r_hi - r_lo) * (j + 0.5) / 8
            visit(r * cmath.exp(1j * ang))
    return UncoveredRegionReport(
        delta=worst_delta, log_modulus_worst_const=worst_const, samples=count
    )


def uncovered_region_delta(
    theta: InnerFunction, squares: SquareSystem, samples: int = 4096
) -> float:
    """Sampled sup of |Theta| over the uncovered region's in-disk boundary."""
    return uncovered_region_report(theta, squares, samples).delta


def count_per_square(
    squares: SquareSystem, seq: PointSequence
) -> tuple[int, list[int]]:
    """Exact membership counts per square; first element is the max count."""
    counts = [0] * len(squares.squares)
    for _, p in seq:
        sq = squares.square_of(p)
        if sq is not None:
            counts[sq.arc_index] += 1
    return (max(counts) if counts else 0), counts


# ---------------------------------------------------------------------------
# Full square-pipeline decomposition
# ---------------------------------------------------------------------------

def _arc_rate_spread(theta: InnerFunction, arc: Arc, grid: int = 32) -> float:
    """max/min of |Theta'| over a subgrid of one arc (rate comparability)."""
    vals = []
    for j in range(grid):
        ang = arc.lo + arc.length * (j + 0.5) / grid
        vals.append(boundary_derivative(theta, cmath.exp(1j * ang)))
    return max(vals) / min(vals)


def rate_comparability(theta: InnerFunction, arcs: ArcSystem, grid: int = 32) -> float:
    """Worst per-arc max/min ratio of the boundary rate |Theta'|."""
    return max(_arc_rate_spread(theta, arc, grid) for arc in arcs.arcs)


def select_level_count(
    theta: InnerFunction,
    *,
    delta_ceiling: float = 0.9,
    spread_ceiling: float = 4.0,
    start: int = 8,
    limit: int = 256,
    samples: int = 2048,
) -> int:
    """Smallest power-of-two N at which the square system is usable.

    Usable means: the uncovered region's sampled sup of |Theta| is below
    ``delta_ceiling`` and the per-arc rate spread stays below
    ``spread_ceiling``.  The two criteria pull in opposite directions (the
    spread improves with N while the sublevel sup creeps toward 1), so when
    no N meets the health margin the spread-qualified N with the smallest
    sup below 1 is taken instead; certificates stay valid for any sup < 1.
    """
    best: tuple[float, int] | None = None
    n = start
    while n <= limit:
        arcs = build_arc_system(theta, n)
        squares = build_squares(arcs)
        delta = uncovered_region_delta(theta, squares, samples)
        if rate_comparability(theta, arcs) <= spread_ceiling:
            if delta < delta_ceiling:
                return n
            if delta < 1.0 - 1e-9 and (best is None or delta < best[0]):
                best = (delta, n)
        n *= 2
    if best is not None:
        return best[1]
    raise CertificationError(
        f"no usable level count up to {limit}: sublevel bound or rate spread failed"
    )


def decompose_by_squares(
    theta: InnerFunction,
    seq: PointSequence,
    level_count: int | None = None,
    *,
    samples: int = 4096,
    max_depth: int = 20,
    max_points_per_arc: int = 512,
) -> Partition:
    """Classify points into Carleson-square buckets and an uncovered bucket.

    Square-bucket points are grouped by level and spread into sub-parts
    with at most one point per square; each sub-part gets exact Gram frame
    bounds and stability margins against its squares' anchor points.  The
    uncovered bucket is routed through the interpolation splitter with the
    region-wide modulus bound as its gamma.  If that bound reaches 1 the
    bucket is emitted uncertified and flagged; a larger level count fixes
    it.
    """
    if len(seq) == 0:
        raise NumericDomainError("cannot decompose an empty sequence")
    if theta.is_constant:
        raise NumericDomainError("constant inner function: nothing to decompose")
    for pid, p in seq:
        if spectrum_distance(theta, p.value) <= 1e-13:
            raise NumericDomainError(f"point {pid} lies on the spectrum")

    if level_count is None:
        level_count = select_level_count(theta, samples=samples)
    arcs = build_arc_system(theta, level_count, max_points_per_arc)
    squares = build_squares(arcs)
    region = uncovered_region_report(theta, squares, samples)

    flags: list[str] = []
    if squares.truncated:
        flags.append("square system truncated near the spectrum")
    if region.delta >= 0.9:
        flags.append(
            f"uncovered-region modulus bound {region.delta:.6f} exceeds the 0.9 health margin"
        )

    uncovered_ids: list[int] = []
    bucket: dict[int, dict[int, list[int]]] = {}  # level -> arc_index -> ids
    for pid, p in seq:
        sq = squares.square_of(p)
        if sq is None:
            if p.is_boundary:
                raise NumericDomainError(
                    f"boundary point {pid} escaped every square; "
                    "the uncovered region is interior-only"
                )
            uncovered_ids.append(pid)
        else:
            bucket.setdefault(sq.level, {}).setdefault(sq.arc_index, []).append(pid)

    max_count, _counts = count_per_square(squares, seq)
    parts: list[PartitionPart] = []

    if uncovered_ids:
        sub = seq.subset(uncovered_ids)
        gamma_pts = max(abs(eval_inner(theta, p)) for p in sub.points)
        gamma_used = max(region.delta, gamma_pts)
        if gamma_used >= _GAMMA_CEILING:
            flags.append(
                f"sublevel bound failed at level count {level_count} "
                f"(delta = {gamma_used}); uncovered bucket left uncertified - increase N"
            )
            parts.append(
                PartitionPart(
                    ids=tuple(sorted(uncovered_ids)),
                    route="uncovered:uncertified",
                    certificate=PartCertificate(
                        gamma=gamma_used,
                        frame_bounds=extremal_eigs(gram(theta, sub)),
                    ),
                )
            )
        else:
            inner_partition = split_by_interpolation(
                theta,
                sub,
                gamma_floor=region.delta,
                max_depth=max_depth,
                route="uncovered:interp",
            )
            flags.extend(inner_partition.flags)
            parts.extend(inner_partition.parts)

    square_by_index = {sq.arc_index: sq for sq in squares.squares}
    for level in sorted(bucket):
        per_square = bucket[level]
        for ids in per_square.values():
            ids.sort()
        depth = max(len(ids) for ids in per_square.values())
        alpha = cmath.exp(2j * math.pi * level / level_count)
        for m in range(depth):
            owner: dict[int, int] = {}  # id -> arc_index
            for arc_index in sorted(per_square):
                ids = per_square[arc_index]
                if m < len(ids):
                    owner[ids[m]] = arc_index
            part_seq = seq.subset(owner)
            # index-matched anchor family: each point against its own
            # square's designated level point
            anchors = []
            derivs = []
            for pid, _lam in part_seq:
                sq = square_by_index[owner[pid]]
                anchors.append(UnitPoint.boundary(sq.anchor_angle))
                derivs.append(sq.anchor_derivative)
            anchor_family = ClarkFamily(
                alpha=alpha,
                points=tuple(anchors),
                derivs=tuple(derivs),
                weights=tuple(1.0 / d for d in derivs),
            )
            margins = stability_margin(theta, anchor_family, part_seq)
            parts.append(
                PartitionPart(
                    ids=tuple(part_seq.ids),
                    route=f"square:{level}:{m + 1}",
                    certificate=PartCertificate(
                        frame_bounds=extremal_eigs(gram(theta, part_seq))
                    ),
                    stability_margins=tuple(margins),
                )
            )

    partition = Partition(
        parts=tuple(parts),
        global_info={
            "level_count": level_count,
            "max_per_square": max_count,
            "delta_uncovered": region.delta,
        },
        flags=tuple(flags),
    )
    if partition.all_ids() != tuple(sorted(seq.ids)):
        raise NumericDomainError("partition failed to cover the sequence exactly")
    return partition
