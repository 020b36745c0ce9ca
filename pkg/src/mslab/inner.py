"""Inner functions with finite data, and the kernel geometry they induce.

An inner function is represented here by a finite Blaschke zero list plus a
finite list of boundary atoms for the singular part:

    Theta(z) = prod_n b_{z_n}(z) * exp(-sum_k m_k (tau_k + z)/(tau_k - z)),

with the single Blaschke factor

    b_eta(z) = (|eta|/eta) * (eta - z)/(1 - conj(eta) z),      b_0(z) := z.

Every quantity below (point evaluation, reproducing kernel, kernel norms,
boundary derivatives) is then an exact finite expression in this data.  The
spectrum of such a representation is the finite set of zeros and atom
positions; evaluation on a boundary atom is refused rather than regularized.

The reproducing kernel of the associated model subspace is

    k_lambda(z) = (1 - conj(Theta(lambda)) Theta(z)) / (1 - conj(lambda) z),

with squared norm (1 - |Theta(lambda)|^2)/(1 - |lambda|^2) at interior
points, and |Theta'(zeta)| at boundary points, where

    |Theta'(zeta)| = sum_n (1 - |z_n|^2)/|zeta - z_n|^2
                   + 2 sum_k m_k / |zeta - tau_k|^2

is also the angular derivative of arg Theta(e^{i theta}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConfigError, NumericDomainError, OnSpectrumError
from .points import ANGLE_TOL, UnitPoint, angle_distance, normalize_angle

# Guard for the kernel's diagonal singularity 1 - conj(lambda) z = 0.
_DIAG_GUARD = 1e-14


@dataclass(frozen=True)
class InnerFunction:
    """Finite Blaschke zeros plus an atomic singular part.

    ``blaschke_zeros``: interior zeros, multiplicities by repetition.
    ``singular_atoms``: (angle, mass) pairs, masses positive, angles
    pairwise distinct.
    """

    blaschke_zeros: tuple[complex, ...] = field(default_factory=tuple)
    singular_atoms: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        zeros = tuple(complex(z) for z in self.blaschke_zeros)
        for z in zeros:
            if abs(z) >= 1.0:
                raise ConfigError(f"Blaschke zero must be strictly interior, got {z!r}")
        atoms = tuple((normalize_angle(float(a)), float(m)) for a, m in self.singular_atoms)
        for a, m in atoms:
            if m <= 0.0:
                raise ConfigError(f"atom mass must be positive, got {m!r}")
        for i in range(len(atoms)):
            for j in range(i + 1, len(atoms)):
                if angle_distance(atoms[i][0], atoms[j][0]) <= ANGLE_TOL:
                    raise ConfigError("atom angles must be pairwise distinct")
        object.__setattr__(self, "blaschke_zeros", zeros)
        object.__setattr__(self, "singular_atoms", atoms)

    @property
    def degree(self) -> int:
        """Number of Blaschke zeros, with multiplicity."""
        return len(self.blaschke_zeros)

    @property
    def is_constant(self) -> bool:
        return not self.blaschke_zeros and not self.singular_atoms

    def spectrum_points(self) -> tuple[complex, ...]:
        """Zeros and atom positions as points of the closed disk."""
        return self.blaschke_zeros + tuple(
            cmath.exp(1j * a) for a, _ in self.singular_atoms
        )

    def to_json_dict(self) -> dict:
        return {
            "blaschke_zeros": [[z.real, z.imag] for z in self.blaschke_zeros],
            "singular_atoms": [
                {"angle": a, "mass": m} for a, m in self.singular_atoms
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "InnerFunction":
        if not isinstance(data, dict):
            raise ConfigError("inner function data must be an object")
        unknown = set(data) - {"blaschke_zeros", "singular_atoms"}
        if unknown:
            raise ConfigError(f"unknown inner function keys: {sorted(unknown)}")
        zeros = [complex(re, im) for re, im in data.get("blaschke_zeros", [])]
        atoms = [(d["angle"], d["mass"]) for d in data.get("singular_atoms", [])]
        return InnerFunction(tuple(zeros), tuple(atoms))


def _as_complex(z: complex | UnitPoint) -> complex:
    return z.value if isinstance(z, UnitPoint) else complex(z)


def _blaschke_factor(eta: complex, z: complex) -> complex:
    if eta == 0:
        return z
    return (abs(eta) / eta) * (eta - z) / (1.0 - eta.conjugate() * z)


def _check_off_atoms(theta: InnerFunction, z: complex) -> None:
    if not theta.singular_atoms:
        return
    if abs(abs(z) - 1.0) > 1e-9:
        return
    ang = cmath.phase(z)
    for a, _ in theta.singular_atoms:
        if angle_distance(ang, a) <= ANGLE_TOL:
            raise OnSpectrumError(
                f"evaluation at singular atom (angle {a!r}) is on the spectrum"
            )


def eval_inner(theta: InnerFunction, z: complex | UnitPoint) -> complex:
    """Evaluate the inner function at a point off its boundary spectrum.

    Interior points always work; boundary points must avoid the atoms.
    """
    w = _as_complex(z)
    _check_off_atoms(theta, w)
    result = complex(1.0)
    for eta in theta.blaschke_zeros:
        result *= _blaschke_factor(eta, w)
    if theta.singular_atoms:
        s = complex(0.0)
        for a, m in theta.singular_atoms:
            tau = cmath.exp(1j * a)
            s += m * (tau + w) / (tau - w)
        result *= cmath.exp(-s)
    return result


def log_derivative(theta: InnerFunction, z: complex | UnitPoint) -> complex:
    """Theta'(z)/Theta(z), from the factorwise logarithmic derivative.

    Valid off the zeros and atoms; combined with ``eval_inner`` this gives
    the analytic derivative anywhere off the spectrum.
    """
    w = _as_complex(z)
    _check_off_atoms(theta, w)
    total = complex(0.0)
    for eta in theta.blaschke_zeros:
        denom = (eta - w) * (1.0 - eta.conjugate() * w)
        if denom == 0:
            raise OnSpectrumError(f"derivative requested at Blaschke zero {eta!r}")
        total += (abs(eta) ** 2 - 1.0) / denom
    for a, m in theta.singular_atoms:
        tau = cmath.exp(1j * a)
        total += -2.0 * m * tau / (tau - w) ** 2
    return total


def derivative(theta: InnerFunction, z: complex | UnitPoint) -> complex:
    """Analytic derivative Theta'(z), off the spectrum."""
    w = _as_complex(z)
    return eval_inner(theta, w) * log_derivative(theta, w)


def boundary_derivative(theta: InnerFunction, zeta: complex | UnitPoint) -> float:
    """Angular derivative |Theta'| at a boundary point.

        |Theta'(zeta)| = sum_n (1-|z_n|^2)/|zeta - z_n|^2
                       + 2 sum_k m_k / |zeta - tau_k|^2

    Returns +inf when zeta coincides with an atom.
    """
    w = _as_complex(zeta)
    if abs(abs(w) - 1.0) > 1e-9:
        raise NumericDomainError(
            f"boundary derivative needs a boundary point, got |z| = {abs(w)!r}"
        )
    ang = cmath.phase(w)
    total = 0.0
    for eta in theta.blaschke_zeros:
        total += (1.0 - abs(eta) ** 2) / abs(w - eta) ** 2
    for a, m in theta.singular_atoms:
        if angle_distance(ang, a) <= ANGLE_TOL:
            return math.inf
        tau = cmath.exp(1j * a)
        total += 2.0 * m / abs(w - tau) ** 2
    return total


def kernel_norm_sq(theta: InnerFunction, lam: complex | UnitPoint) -> float:
    """Squared norm of the reproducing kernel at a point.

    Interior: (1 - |Theta(lambda)|^2)/(1 - |lambda|^2).  Boundary: the
    angular derivative.  A boundary point sitting on an atom is an error.
    """
    if isinstance(lam, UnitPoint) and lam.is_boundary:
        val = boundary_derivative(theta, lam)
        if math.isinf(val):
            raise OnSpectrumError("kernel norm requested at a singular atom")
        return val
    w = _as_complex(lam)
    r = abs(w)
    if r >= 1.0 - 1e-12:
        val = boundary_derivative(theta, w / r)
        if math.isinf(val):
            raise OnSpectrumError("kernel norm requested at a singular atom")
        return val
    v = eval_inner(theta, w)
    return (1.0 - abs(v) ** 2) / (1.0 - r * r)


def kernel(
    theta: InnerFunction,
    lam: complex | UnitPoint,
    z: complex | UnitPoint,
) -> complex:
    """Reproducing kernel k_lambda(z) of the model subspace of Theta.

    Hermitian in its arguments: kernel(lam, z) == conj(kernel(z, lam)).
    The diagonal goes through the same closed form as ``kernel_norm_sq``.
    """
    lw = _as_complex(lam)
    zw = _as_complex(z)
    if lw == zw:
        return complex(kernel_norm_sq(theta, lam))
    denom = 1.0 - lw.conjugate() * zw
    num = 1.0 - eval_inner(theta, lw).conjugate() * eval_inner(theta, zw)
    if abs(denom) < _DIAG_GUARD and (denom == 0 or abs(num) > 1e-10):
        # z is numerically at the reflection 1/conj(lambda) without the
        # numerator vanishing along with it; the formula has no limit here.
        raise NumericDomainError(
            f"kernel evaluated too close to the diagonal singularity: |1 - conj(l)z| = {abs(denom)!r}"
        )
    return num / denom


def spectrum_distance(theta: InnerFunction, w: complex | UnitPoint) -> float:
    """Euclidean distance from a point to the zero/atom set.

    +inf for a constant representation (empty spectrum).
    """
    pts = theta.spectrum_points()
    if not pts:
        return math.inf
    v = _as_complex(w)
    return min(abs(v - p) for p in pts)


def normalized_values(
    theta: InnerFunction,
    points: Sequence[UnitPoint],
    ids: Sequence[int] | None = None,
) -> tuple[list[complex], list[float]]:
    """Theta values and kernel norms squared for a batch of points.

    Shared by Gram assembly and the decomposition drivers so each point is
    evaluated exactly once.  When ids are given, numeric errors are
    annotated with the offending point's id.
    """
    vals: list[complex] = []
    norms: list[float] = []
    for idx, p in enumerate(points):
        try:
            vals.append(eval_inner(theta, p))
            norms.append(kernel_norm_sq(theta, p))
        except NumericDomainError as exc:
            if ids is not None:
                raise type(exc)(f"point {ids[idx]}: {exc}") from exc
            raise
    return vals, norms
