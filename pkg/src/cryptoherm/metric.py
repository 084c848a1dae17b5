"""Quasiparity, charge and metric construction with factorization checks.

Everything here is a spectral sum over one biorthogonal system.  With
reference (kappa = 1) vectors written r1_n, l1_n and current vectors
r_n = kappa_n r1_n, l_n = l1_n / conj(kappa_n), the three operators are

    Q = sum_n r_n  q_n adjoint(l_n)      q_n = q1_n / |kappa_n|^2
    C = sum_n l_n  q_n adjoint(r_n)      q1_n = 1 / <r1_n | P | r1_n>
    Theta = sum_n l_n adjoint(l_n)       (= sum_n l1_n |kappa_n|^-2 adjoint(l1_n))

so the whole kappa dependence is carried by the stored columns plus the
|kappa|^-2 weight in the coefficients.  Sums are accumulated strictly in
index order, keeping outputs bit-reproducible.

The factorization identities Theta = P Q = C P = adjoint(Q) adjoint(P)
= adjoint(P) adjoint(C) hold exactly when P intertwines H with its
adjoint; ``verify_factorizations`` measures all four residuals plus the
hermiticity of Theta, normalized by ||Theta||_F.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
from numpy.typing import NDArray

from .biortho import BiorthogonalSystem, renormalize
from .errors import (
    ConjugationMismatch,
    DimensionMismatch,
    NonRealQuasiparity,
    VanishingOverlap,
)
from .linalg import (
    ComplexMatrix,
    DEFAULT_TOL,
    Tolerance,
    as_complex_matrix,
    frobenius,
)
from .models import PseudoMetric

#: overlaps smaller than this times ||P||_F * ||v||^2 are refused
OVERLAP_FACTOR = 1e-10

#: relative imaginary part above which a coefficient is not "real"
REALITY_REL = 1e-10

#: charge coefficients must conjugate-match quasiparity this tightly
CONJUGACY_REL = 1e-12

#: fixed key order of the residual map
RESIDUAL_KEYS = ("theta_hermitian", "pq", "cp", "qdag_pdag", "pdag_cdag")


@dataclass(frozen=True)
class CoefficientSet:
    """Quasiparity and charge coefficients of one system/candidate pair."""

    q: NDArray[np.complex128]
    c: NDArray[np.complex128]


@dataclass(frozen=True)
class MetricBundle:
    """All operators built from one system plus their identity residuals."""

    theta: ComplexMatrix
    quasiparity: ComplexMatrix
    charge: ComplexMatrix
    coeffs: CoefficientSet
    residuals: Mapping[str, float]


def _candidate_matrix(p) -> ComplexMatrix:
    if isinstance(p, PseudoMetric):
        return p.matrix
    return as_complex_matrix(p, "pseudometric")


def _reference_right(system: BiorthogonalSystem) -> ComplexMatrix:
    """Undo the cumulative rescaling: columns of unit norm, fixed phase."""
    return system.right / system.kappa[None, :]


def _inverse_overlaps(system: BiorthogonalSystem, p: ComplexMatrix) -> NDArray[np.complex128]:
    """1 / <v_n|P|v_n> over the reference right vectors v_n."""
    v = _reference_right(system)
    if p.shape[0] != system.dim:
        raise DimensionMismatch(
            f"candidate dimension {p.shape[0]} != system dimension {system.dim}"
        )
    pnorm = frobenius(p)
    out = np.empty(system.dim, dtype=np.complex128)
    for n in range(system.dim):
        vn = v[:, n]
        overlap = np.vdot(vn, p @ vn)
        floor = OVERLAP_FACTOR * pnorm * float(np.vdot(vn, vn).real)
        if abs(overlap) < floor:
            raise VanishingOverlap(
                f"<v_{n}|P|v_{n}> = {overlap:.3e} below floor {floor:.3e}; "
                "the metric would be singular along this direction",
                index=n,
                overlap=complex(overlap),
            )
        out[n] = 1.0 / overlap
    return out


def reference_quasiparity_coeffs(
    system: BiorthogonalSystem, p
) -> NDArray[np.complex128]:
    """Coefficients of the kappa = 1 system, before any rescaling."""
    return _inverse_overlaps(system, _candidate_matrix(p))


def quasiparity_coeffs(system: BiorthogonalSystem, p) -> NDArray[np.complex128]:
    """q_n of the current system: reference value divided by |kappa_n|^2."""
    q1 = reference_quasiparity_coeffs(system, p)
    return q1 / np.abs(system.kappa) ** 2


def charge_coeffs(system: BiorthogonalSystem, p) -> NDArray[np.complex128]:
    """c_n from the adjoint-candidate overlaps, cross-checked against conj(q_n)."""
    pm = _candidate_matrix(p)
    c1 = _inverse_overlaps(system, pm.conj().T)
    c = c1 / np.abs(system.kappa) ** 2
    q = quasiparity_coeffs(system, pm)
    worst = float(np.max(np.abs(c - np.conj(q))))
    if worst > CONJUGACY_REL * float(np.max(np.abs(q))):
        raise ConjugationMismatch(
            f"charge coefficients deviate from conj(quasiparity) by {worst:.3e}"
        )
    return c


def coefficient_set(system: BiorthogonalSystem, p) -> CoefficientSet:
    """Both coefficient families as one validated record."""
    return CoefficientSet(
        q=quasiparity_coeffs(system, p),
        c=charge_coeffs(system, p),
    )


def _spectral_sum(
    kets: ComplexMatrix, weights: NDArray[np.complex128], bras: ComplexMatrix
) -> ComplexMatrix:
    # fixed n = 0..N-1 accumulation order for bit-reproducible output
    n = kets.shape[1]
    acc = np.zeros((kets.shape[0], kets.shape[0]), dtype=np.complex128)
    for k in range(n):
        acc += weights[k] * np.outer(kets[:, k], bras[:, k].conj())
    return acc


def build_quasiparity(system: BiorthogonalSystem, p) -> ComplexMatrix:
    """Q = sum_n right_n q_n adjoint(left_n); satisfies Q right_n = q_n right_n."""
    q = quasiparity_coeffs(system, p)
    return _spectral_sum(system.right, q, system.left)


def build_charge(system: BiorthogonalSystem, p) -> ComplexMatrix:
    """C = sum_n left_n q_n adjoint(right_n); adjoint(C) right_n = c_n right_n.

    The weight is the quasiparity coefficient (the charge coefficients
    enter through the adjoint relation); charge_coeffs is still invoked
    so its overlap and conjugacy validation gates this builder too.
    """
    charge_coeffs(system, p)
    q = quasiparity_coeffs(system, p)
    return _spectral_sum(system.left, q, system.right)


def build_metric(system: BiorthogonalSystem) -> ComplexMatrix:
    """Theta = sum_n left_n adjoint(left_n) over the current columns.

    Equals the reference-vector sum weighted by 1/|kappa_n|^2, so pure
    kappa phases leave it untouched.  Hermitian positive definite by
    construction whenever the system is complete.
    """
    ones = np.ones(system.dim, dtype=np.complex128)
    return _spectral_sum(system.left, ones, system.left)


def verify_factorizations(theta, p, q, c, tol: Tolerance = DEFAULT_TOL) -> dict[str, float]:
    """Residuals of the four factorizations plus hermiticity of theta.

    Keys are fixed ("theta_hermitian", "pq", "cp", "qdag_pdag",
    "pdag_cdag"); every value is normalized by ||theta||_F.
    """
    th = as_complex_matrix(theta, "theta")
    pm = _candidate_matrix(p)
    qm = as_complex_matrix(q, "quasiparity")
    cm = as_complex_matrix(c, "charge")
    for other in (pm, qm, cm):
        if other.shape != th.shape:
            raise DimensionMismatch(
                f"operator shape {other.shape} != theta shape {th.shape}"
            )
    scale = frobenius(th)
    if scale == 0.0:
        raise ValueError("theta is zero; factorization residuals are undefined")
    return {
        "theta_hermitian": frobenius(th - th.conj().T) / scale,
        "pq": frobenius(pm @ qm - th) / scale,
        "cp": frobenius(cm @ pm - th) / scale,
        "qdag_pdag": frobenius(qm.conj().T @ pm.conj().T - th) / scale,
        "pdag_cdag": frobenius(pm.conj().T @ cm.conj().T - th) / scale,
    }


def involutive_normalization(
    system: BiorthogonalSystem, p
) -> tuple[NDArray[np.complex128], BiorthogonalSystem]:
    """Choose kappa so that the quasiparity coefficients become +-1.

    Returns the canonical kappa_n = sqrt(|q1_n|) (real positive, phases
    dropped since they affect nothing) together with the system rescaled
    to it.  Requires every reference coefficient q1_n to be real up to a
    relative imaginary part of 1e-10; otherwise no kappa works and
    NonRealQuasiparity reports the offending levels.
    """
    q1 = reference_quasiparity_coeffs(system, p)
    rel_imag = np.abs(q1.imag) / np.abs(q1)
    bad = np.flatnonzero(rel_imag > REALITY_REL)
    if bad.size:
        raise NonRealQuasiparity(
            "quasiparity coefficients are not real at levels "
            f"{bad.tolist()} (relative imaginary parts "
            f"{[float(rel_imag[i]) for i in bad]})",
            indices=bad.tolist(),
        )
    target = np.sqrt(np.abs(q1.real)).astype(np.complex128)
    rescaled = renormalize(system, target / system.kappa)
    return target, rescaled


def build_bundle(system: BiorthogonalSystem, p, tol: Tolerance = DEFAULT_TOL) -> MetricBundle:
    """Assemble theta, Q, C, the coefficients and the residual map at once."""
    pm = _candidate_matrix(p)
    coeffs = coefficient_set(system, pm)
    theta = build_metric(system)
    quasiparity = _spectral_sum(system.right, coeffs.q, system.left)
    charge = _spectral_sum(system.left, coeffs.q, system.right)
    residuals = verify_factorizations(theta, pm, quasiparity, charge, tol)
    return MetricBundle(
        theta=theta,
        quasiparity=quasiparity,
        charge=charge,
        coeffs=coeffs,
        residuals=residuals,
    )
