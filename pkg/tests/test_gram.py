import cmath
import math

import numpy as np
import pytest

from conftest import eig_extremes_oracle, random_blaschke

from mslab.errors import NumericDomainError
from mslab.gram import (
    FrameBounds,
    GramMatrix,
    bessel_constant_estimate,
    extremal_eigs,
    gram,
    hankel_distance_lb,
    riesz_verdict,
)
from mslab.inner import InnerFunction, eval_inner
from mslab.points import PointSequence, UnitPoint

TWO_PI = 2.0 * math.pi


def _random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2.0


def _clark_points(n: int) -> PointSequence:
    return PointSequence.from_points(
        [UnitPoint.boundary(TWO_PI * k / n) for k in range(n)]
    )


# ---------------------------------------------------------------------------
# gram assembly
# ---------------------------------------------------------------------------

def test_gram_identity_for_cube_roots() -> None:
    z3 = InnerFunction(blaschke_zeros=(0, 0, 0))
    g = gram(z3, _clark_points(3))
    assert np.max(np.abs(g.entries - np.eye(3))) <= 1e-12


def test_gram_singleton() -> None:
    z2 = InnerFunction(blaschke_zeros=(0, 0))
    g = gram(z2, PointSequence.from_complex([0.2 + 0.1j]))
    assert g.entries.shape == (1, 1)
    assert g.entries[0, 0] == pytest.approx(1.0)


def test_gram_example_entry() -> None:
    z2 = InnerFunction(blaschke_zeros=(0, 0))
    g = gram(z2, PointSequence.from_complex([0.0, 0.5]))
    assert g.entries[0, 1] == pytest.approx(1.0 / math.sqrt(1.25))


def test_gram_unusable_norm_names_the_point() -> None:
    constant = InnerFunction()  # identically 1, kernels vanish
    with pytest.raises(NumericDomainError, match="point 0"):
        gram(constant, PointSequence.from_complex([0.3]))


def test_gram_matrix_validation() -> None:
    bad = np.array([[1.0, 0.5], [0.4, 1.0]], dtype=np.complex128)
    with pytest.raises(NumericDomainError):
        GramMatrix(bad, (0, 1))


# ---------------------------------------------------------------------------
# extremal eigenvalues
# ---------------------------------------------------------------------------

def test_eigs_identity() -> None:
    fb = extremal_eigs(GramMatrix(np.eye(5, dtype=np.complex128), tuple(range(5))))
    assert fb == FrameBounds(1.0, 1.0, 5)


def test_eigs_two_by_two_closed_form() -> None:
    for g_off in (0.1, 0.45, 0.894427190999916):
        m = np.array([[1.0, g_off], [g_off, 1.0]], dtype=np.complex128)
        fb = extremal_eigs(m)
        assert fb.lambda_min == pytest.approx(1.0 - g_off, rel=1e-12)
        assert fb.lambda_max == pytest.approx(1.0 + g_off, rel=1e-12)


def test_eigs_match_numpy_oracle() -> None:
    rng = np.random.default_rng(12)
    for n in (1, 2, 3, 5, 8, 13, 21, 40):
        a = _random_hermitian(rng, n)
        lo, hi = eig_extremes_oracle(a)
        fb = extremal_eigs(a)
        scale = max(1.0, abs(lo), abs(hi))
        assert abs(fb.lambda_min - lo) <= 1e-10 * scale
        assert abs(fb.lambda_max - hi) <= 1e-10 * scale


def test_eigs_reject_non_hermitian() -> None:
    with pytest.raises(NumericDomainError):
        extremal_eigs(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128))


def test_eigs_large_section_power_iteration_path() -> None:
    # sections above the Jacobi cutoff go through shifted power iteration
    n = 600
    rng = np.random.default_rng(15)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    v /= np.linalg.norm(v)
    spike = 3.0
    a = np.eye(n, dtype=np.complex128) + spike * np.outer(v, v.conj())
    a = (a + a.conj().T) / 2.0
    fb = extremal_eigs(a)
    assert fb.lambda_max == pytest.approx(1.0 + spike, rel=1e-9)
    assert fb.lambda_min == pytest.approx(1.0, rel=1e-9)


def test_interlacing_under_point_addition() -> None:
    rng = np.random.default_rng(13)
    theta = random_blaschke(rng, 4)
    pts = [
        0.9 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, TWO_PI))
        for _ in range(8)
    ]
    seq_small = PointSequence.from_complex(pts[:-1])
    seq_big = PointSequence.from_complex(pts)
    small = extremal_eigs(gram(theta, seq_small))
    big = extremal_eigs(gram(theta, seq_big))
    assert big.lambda_min <= small.lambda_min + 1e-10
    assert big.lambda_max >= small.lambda_max - 1e-10


def test_frame_operator_subadditivity() -> None:
    rng = np.random.default_rng(14)
    theta = random_blaschke(rng, 3)
    pts = [
        0.85 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, TWO_PI))
        for _ in range(10)
    ]
    union = PointSequence.from_complex(pts)
    first = union.subset(range(5))
    second = union.subset(range(5, 10))
    lam_union = extremal_eigs(gram(theta, union)).lambda_max
    lam_1 = extremal_eigs(gram(theta, first)).lambda_max
    lam_2 = extremal_eigs(gram(theta, second)).lambda_max
    assert lam_union <= lam_1 + lam_2 + 1e-10


# ---------------------------------------------------------------------------
# verdicts and Bessel estimates
# ---------------------------------------------------------------------------

def test_certificate_soundness_clark_family() -> None:
    z6 = InnerFunction(blaschke_zeros=(0,) * 6)
    verdict, fb = riesz_verdict(z6, _clark_points(6), floor=0.99)
    assert verdict == "certified_riesz"
    assert fb.lambda_min == pytest.approx(1.0, abs=1e-12)
    assert fb.lambda_max == pytest.approx(1.0, abs=1e-12)


def test_verdict_indeterminate_for_close_pair() -> None:
    z2 = InnerFunction(blaschke_zeros=(0, 0))
    seq = PointSequence.from_complex([0.4, 0.4 + 1e-6])
    verdict, fb = riesz_verdict(z2, seq, floor=0.1)
    assert verdict == "indeterminate"
    assert fb.lambda_min < 0.1


def test_verdict_empty_rejected() -> None:
    z2 = InnerFunction(blaschke_zeros=(0, 0))
    with pytest.raises(NumericDomainError):
        riesz_verdict(z2, PointSequence((), ()), floor=0.5)


def test_bessel_estimate_orthonormal() -> None:
    z4 = InnerFunction(blaschke_zeros=(0,) * 4)
    assert bessel_constant_estimate(z4, _clark_points(4)) == pytest.approx(1.0)


def test_bessel_estimate_near_duplicate_pair() -> None:
    z2 = InnerFunction(blaschke_zeros=(0, 0))
    est = bessel_constant_estimate(z2, PointSequence.from_complex([0.3, 0.3 + 1e-7]))
    assert est == pytest.approx(2.0, abs=1e-4)


def test_bessel_estimate_interleaved_clark_families() -> None:
    n = 6
    zn = InnerFunction(blaschke_zeros=(0,) * n)
    first = [TWO_PI * k / n for k in range(n)]
    second = [(TWO_PI * k + math.pi / n) / n for k in range(n)]
    seq = PointSequence.from_points(
        [UnitPoint.boundary(a) for a in first + second]
    )
    est = bessel_constant_estimate(zn, seq)
    oracle = eig_extremes_oracle(gram(zn, seq).entries)[1]
    assert est == pytest.approx(oracle, rel=1e-10)
    assert 1.0 < est <= 2.0 + 1e-12


# ---------------------------------------------------------------------------
# Hankel lower bound
# ---------------------------------------------------------------------------

def test_hankel_symbol_in_hardy_space_gives_zero() -> None:
    zeros = (0.3, -0.4j)
    theta = InnerFunction(blaschke_zeros=zeros)
    seq = PointSequence.from_complex(list(zeros))
    assert hankel_distance_lb(theta, seq, 8) <= 1e-12


def test_hankel_conjugate_z() -> None:
    # constant symbol against the Blaschke factor z: u = conj(z)
    seq = PointSequence.from_complex([0.0])
    for n in (1, 3, 6):
        assert hankel_distance_lb(InnerFunction(), seq, n) == pytest.approx(1.0)


def test_hankel_monotone_in_section_size() -> None:
    theta = InnerFunction(blaschke_zeros=(0, 0))
    seq = PointSequence.from_complex([0.5])
    values = [hankel_distance_lb(theta, seq, n) for n in (1, 2, 4, 8, 16)]
    for a, b in zip(values, values[1:]):
        assert b >= a - 1e-9


def _lawson_sup_distance(u: np.ndarray, z: np.ndarray, degree: int, iters: int = 200) -> float:
    """Minimax distance of boundary samples u to polynomials of degree <= degree.

    Lawson's iteratively reweighted least squares; returns the achieved
    sup-norm, an upper bound for dist(u, H^inf).
    """
    vander = np.vander(z, degree + 1, increasing=True)
    weights = np.ones(len(z)) / len(z)
    best = math.inf
    for _ in range(iters):
        w = np.sqrt(weights)
        coeffs, *_ = np.linalg.lstsq(vander * w[:, None], u * w, rcond=None)
        resid = np.abs(u - vander @ coeffs)
        best = min(best, float(np.max(resid)))
        weights = weights * resid
        total = np.sum(weights)
        if total <= 0:
            break
        weights = weights / total
    return best


def test_hankel_lower_bound_against_minimax_oracle() -> None:
    theta = InnerFunction(blaschke_zeros=(0, 0))  # z^2
    seq = PointSequence.from_complex([0.5])
    bound = hankel_distance_lb(theta, seq, 24)
    angles = TWO_PI * np.arange(2**12) / 2**12
    z = np.exp(1j * angles)
    b = (0.5 - z) / (1.0 - 0.5 * z)
    u = z**2 * np.conj(b)
    oracle = _lawson_sup_distance(u, z, 30)
    assert bound <= oracle + 1e-3


def test_hankel_rejects_boundary_points() -> None:
    theta = InnerFunction(blaschke_zeros=(0,))
    with pytest.raises(NumericDomainError):
        hankel_distance_lb(theta, PointSequence.from_points([UnitPoint.boundary(0.3)]), 2)


def test_hankel_atom_grid_offset() -> None:
    # atom exactly on a would-be grid node: the grid shifts, result stays finite
    theta = InnerFunction(singular_atoms=((0.0, 0.8),))
    seq = PointSequence.from_complex([0.4])
    val = hankel_distance_lb(theta, seq, 4)
    assert 0.0 <= val <= 1.0 + 1e-9
