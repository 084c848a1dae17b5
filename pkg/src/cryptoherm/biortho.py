"""Biorthogonal eigensystem construction and rescaling.

For a diagonalizable matrix ``H`` with real non-degenerate spectrum the
solver returns paired column families ``right`` / ``left`` such that

    H right_n  = E_n right_n,
    adjoint(H) left_n = E_n left_n,
    adjoint(left_m) @ right_n = delta_mn,

with energies strictly ascending.  In the reference normalization each
right column has unit Euclidean norm and its largest-modulus entry is
real positive; the left column absorbs the biorthonormalization
rescaling.  All freedom left after that is the diagonal rescaling

    right_n -> kappa_n right_n,   left_n -> left_n / conj(kappa_n),

which ``renormalize`` applies while tracking the cumulative ``kappa``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray

from .errors import (
    ComplexSpectrum,
    ConjugationMismatch,
    ConvergenceFailure,
    DegenerateSpectrum,
    DimensionMismatch,
    ZeroKappa,
)
from .linalg import (
    ComplexMatrix,
    DEFAULT_TOL,
    Tolerance,
    as_complex_matrix,
    eig,
    frobenius,
)

#: eigenvalue clusters and pairing mismatches tighter than this times
#: ||H||_F count as spectrum obstructions (exceptional-point territory)
SPECTRUM_FACTOR = 1e-8

#: an exactly defective pair is split by the eigensolver by roughly
#: sqrt(machine eps) * ||H||, i.e. ~1.5e-8 * ||H||, so the cluster
#: detection floor has to sit above that or exceptional points leak
#: through as spuriously split spectra
_CLUSTER_FLOOR = 10.0 * float(np.sqrt(np.finfo(np.float64).eps))

#: hard caps the solver enforces on its own output
BIORTHO_RESIDUAL_CAP = 1e-10
COMPLETENESS_RESIDUAL_CAP = 1e-9

#: tie-break window when picking the phase-anchor entry of a column
_ANCHOR_TIE = 1e-12


@dataclass(frozen=True)
class BiorthogonalSystem:
    """Paired eigenbases of H and adjoint(H) with their rescaling state.

    ``right[:, n]`` and ``left[:, n]`` belong to ``energies[n]``;
    ``kappa[n]`` is the cumulative rescaling applied on top of the
    reference normalization (all ones straight out of the solver).
    """

    energies: NDArray[np.float64]
    right: ComplexMatrix
    left: ComplexMatrix
    kappa: NDArray[np.complex128]

    @property
    def dim(self) -> int:
        return int(self.energies.shape[0])


def _fix_column_phases(vectors: ComplexMatrix) -> ComplexMatrix:
    """Rotate each column so its largest-modulus entry is real positive.

    The anchor is the first index whose modulus is within a relative
    tie-break window of the column maximum, which keeps the choice
    stable across backends that order degenerate maxima differently.
    """
    out = vectors.copy()
    for n in range(out.shape[1]):
        mags = np.abs(out[:, n])
        top = float(mags.max())
        if top == 0.0:
            raise ConvergenceFailure(f"eigenvector column {n} is zero")
        anchor = int(np.argmax(mags >= top * (1.0 - _ANCHOR_TIE)))
        phase = out[anchor, n] / abs(out[anchor, n])
        out[:, n] = out[:, n] / phase
    return out


def solve_biorthogonal(h, tol: Tolerance = DEFAULT_TOL) -> BiorthogonalSystem:
    """Build the reference-normalized biorthogonal system of ``h``.

    Degeneracy is screened before reality so that an exceptional point,
    whose numerically split eigenvalues may wander slightly off the real
    axis, is reported as DegenerateSpectrum rather than ComplexSpectrum.
    """
    a = as_complex_matrix(h, "hamiltonian")
    n = a.shape[0]
    scale = frobenius(a)
    cluster = max(SPECTRUM_FACTOR, _CLUSTER_FLOOR) * scale

    values, right = eig(a)

    if n > 1:
        sep = np.abs(values[:, None] - values[None, :])
        np.fill_diagonal(sep, np.inf)
        gap = float(sep.min())
        if gap < cluster:
            raise DegenerateSpectrum(
                f"eigenvalue gap {gap:.3e} below cluster threshold {cluster:.3e}",
                gap=gap,
                threshold=cluster,
            )

    imag_worst = float(np.max(np.abs(values.imag)))
    if imag_worst > tol.bound(scale):
        raise ComplexSpectrum(
            f"spectrum is not real: max |Im E| = {imag_worst:.3e} "
            f"exceeds {tol.bound(scale):.3e}",
            eigenvalues=values,
        )
    energies = values.real.astype(np.float64)

    left_values, left_vecs = eig(a.conj().T)

    # pair each right eigenvalue with the conjugate of an unused left one
    left_cols = np.empty_like(right)
    used = np.zeros(n, dtype=bool)
    for k in range(n):
        dist = np.abs(np.conj(left_values) - values[k])
        dist[used] = np.inf
        m = int(np.argmin(dist))
        if dist[m] > cluster:
            raise ConjugationMismatch(
                f"no adjoint eigenvalue conjugate-matches E_{k} = {values[k]:.6g} "
                f"(best distance {dist[m]:.3e})"
            )
        used[m] = True
        left_cols[:, k] = left_vecs[:, m]

    right = _fix_column_phases(right)

    # scale left columns so that adjoint(left_n) @ right_n = 1
    for k in range(n):
        overlap = np.vdot(left_cols[:, k], right[:, k])
        if abs(overlap) < 1e-14:
            raise ConvergenceFailure(
                f"left/right overlap for level {k} vanished ({abs(overlap):.3e}); "
                "system is numerically defective"
            )
        left_cols[:, k] = left_cols[:, k] / np.conj(overlap)

    system = BiorthogonalSystem(
        energies=energies,
        right=np.ascontiguousarray(right),
        left=np.ascontiguousarray(left_cols),
        kappa=np.ones(n, dtype=np.complex128),
    )

    resid = biorthonormality_residual(system)
    if resid > BIORTHO_RESIDUAL_CAP:
        raise ConvergenceFailure(
            f"biorthonormality residual {resid:.3e} exceeds cap {BIORTHO_RESIDUAL_CAP:.0e}"
        )
    comp = completeness_residual(system)
    if comp > COMPLETENESS_RESIDUAL_CAP:
        raise ConvergenceFailure(
            f"completeness residual {comp:.3e} exceeds cap {COMPLETENESS_RESIDUAL_CAP:.0e}"
        )
    return system


def biorthonormality_residual(system: BiorthogonalSystem) -> float:
    """Frobenius norm of adjoint(left) @ right minus the identity."""
    n = system.dim
    return frobenius(system.left.conj().T @ system.right - np.eye(n))


def completeness_residual(system: BiorthogonalSystem) -> float:
    """Frobenius deviation of sum_n right_n adjoint(left_n) from the identity.

    Kappa-independent, since each term carries kappa_n / kappa_n.
    Accumulated level by level in index order so the rounding pattern is
    reproducible.
    """
    n = system.dim
    acc = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        acc += np.outer(system.right[:, k], system.left[:, k].conj())
    return frobenius(acc - np.eye(n))


def renormalize(system: BiorthogonalSystem, kappa) -> BiorthogonalSystem:
    """Apply the diagonal rescaling right_n *= kappa_n, left_n /= conj(kappa_n).

    The returned system keeps biorthonormality exactly (each bra still
    carries the inverse of its ket's factor) and records the cumulative
    coefficients; energies are untouched.
    """
    k = np.asarray(kappa, dtype=np.complex128)
    if k.shape != (system.dim,):
        raise DimensionMismatch(
            f"kappa must have shape ({system.dim},), got {k.shape}"
        )
    if not np.all(np.isfinite(k.real)) or not np.all(np.isfinite(k.imag)):
        raise ZeroKappa("kappa contains non-finite entries")
    if np.any(k == 0):
        raise ZeroKappa("kappa contains zero entries")
    return replace(
        system,
        right=system.right * k[None, :],
        left=system.left / np.conj(k)[None, :],
        kappa=system.kappa * k,
    )
