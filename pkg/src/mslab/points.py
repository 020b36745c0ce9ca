"""Points of the closed unit disk and labelled point sequences.

A ``UnitPoint`` is either an interior point (|z| < 1) or a boundary point.
Boundary points are stored canonically by their angle in [0, 2*pi) so that
repeated trigonometric round trips cannot drift the modulus away from 1.

A ``PointSequence`` is an ordered list of pairwise distinct unit points with
stable integer labels; decompositions refer back to points by label.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConfigError

TWO_PI = 2.0 * math.pi

# |z| within this distance of 1 is treated as a boundary point.
BOUNDARY_TOL = 1e-14

# Boundary points closer than this (in angle) are considered equal.
ANGLE_TOL = 1e-12


def normalize_angle(theta: float) -> float:
    """Reduce an angle to the canonical window [0, 2*pi)."""
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:  # fmod can round up to 2*pi
        theta -= TWO_PI
    return theta


def angle_distance(a: float, b: float) -> float:
    """Shortest angular distance between two angles, in [0, pi]."""
    d = abs(normalize_angle(a) - normalize_angle(b))
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class UnitPoint:
    """A point of the closed disk, tagged interior or boundary.

    ``angle`` is None for interior points; boundary points carry their
    canonical angle and a value recomputed as exp(i*angle).
    """

    value: complex
    angle: float | None = None

    @staticmethod
    def interior(z: complex) -> "UnitPoint":
        z = complex(z)
        if abs(z) >= 1.0 - BOUNDARY_TOL:
            raise ConfigError(f"interior point must satisfy |z| < 1, got |z| = {abs(z)!r}")
        return UnitPoint(z, None)

    @staticmethod
    def boundary(angle: float) -> "UnitPoint":
        a = normalize_angle(float(angle))
        return UnitPoint(cmath.exp(1j * a), a)

    @staticmethod
    def from_complex(z: complex) -> "UnitPoint":
        """Classify a raw complex number as interior or boundary."""
        z = complex(z)
        r = abs(z)
        if r < 1.0 - BOUNDARY_TOL:
            return UnitPoint(z, None)
        if r <= 1.0 + BOUNDARY_TOL:
            return UnitPoint.boundary(cmath.phase(z))
        raise ConfigError(f"point lies outside the closed disk: |z| = {r!r}")

    @property
    def is_boundary(self) -> bool:
        return self.angle is not None

    @property
    def is_interior(self) -> bool:
        return self.angle is None

    def close_to(self, other: "UnitPoint") -> bool:
        """Equality up to the canonical tolerances."""
        if self.is_boundary and other.is_boundary:
            return angle_distance(self.angle, other.angle) <= ANGLE_TOL
        if self.is_boundary != other.is_boundary:
            return False
        return abs(self.value - other.value) <= BOUNDARY_TOL


@dataclass(frozen=True)
class PointSequence:
    """Ordered, labelled sequence of pairwise distinct unit points."""

    points: tuple[UnitPoint, ...]
    ids: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.points) != len(self.ids):
            raise ConfigError("points and ids must have equal length")
        if len(set(self.ids)) != len(self.ids):
            raise ConfigError("point ids must be unique")
        seen: dict[complex, int] = {}
        for pid, p in zip(self.ids, self.points):
            key = complex(p.value)
            if key in seen:
                raise ConfigError(
                    f"points {seen[key]} and {pid} coincide; sequence points must be distinct"
                )
            seen[key] = pid

    @staticmethod
    def from_points(points: Iterable[UnitPoint], ids: Sequence[int] | None = None) -> "PointSequence":
        pts = tuple(points)
        if ids is None:
            ids = tuple(range(len(pts)))
        return PointSequence(pts, tuple(int(i) for i in ids))

    @staticmethod
    def from_complex(values: Iterable[complex], ids: Sequence[int] | None = None) -> "PointSequence":
        return PointSequence.from_points(
            (UnitPoint.from_complex(z) for z in values), ids
        )

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(zip(self.ids, self.points))

    @property
    def values(self) -> tuple[complex, ...]:
        return tuple(p.value for p in self.points)

    def interior_only(self) -> "PointSequence":
        """The subsequence of interior points (labels preserved)."""
        kept = [(i, p) for i, p in zip(self.ids, self.points) if p.is_interior]
        return PointSequence(tuple(p for _, p in kept), tuple(i for i, _ in kept))

    def subset(self, ids: Iterable[int]) -> "PointSequence":
        """The subsequence with the given labels, in this sequence's order."""
        want = set(ids)
        missing = want - set(self.ids)
        if missing:
            raise ConfigError(f"unknown point ids: {sorted(missing)}")
        kept = [(i, p) for i, p in zip(self.ids, self.points) if i in want]
        return PointSequence(tuple(p for _, p in kept), tuple(i for i, _ in kept))

    def point_by_id(self, pid: int) -> UnitPoint:
        for i, p in zip(self.ids, self.points):
            if i == pid:
                return p
        raise ConfigError(f"unknown point id: {pid}")
