"""Dense Gramian computation: Lyapunov solves, quadrature, PSD Cholesky.

These are the intrusive oracles of the toolkit.  The generalized
equations

    A P E* + E P A* + B B* = 0        (controllability)
    A* Q E + E* Q A + C* C = 0        (observability)

are reduced to standard Lyapunov form with E-solves (E is required to be
invertible) and handed to a Bartels-Stewart solver.  Conjugate transpose
is used throughout; for real data it coincides with plain transpose.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

from ._linalg import hermitian_part, readonly
from .exceptions import (
    EigFailure,
    NotPSD,
    PoleOnAxis,
    SolveFailure,
    UnstablePencil,
    ValidationError,
)

CONTROLLABILITY = "controllability"
OBSERVABILITY = "observability"

# Relative eigenvalue floor below which a Gramian candidate is rejected.
PSD_TOL = 1e-10
# Rank threshold for the pivoted factorization, relative to trace.
RANK_TOL = 1e-12


@dataclass(frozen=True)
class Gramian:
    """Hermitian PSD Gramian matrix tagged with its side."""

    matrix: np.ndarray
    side: str

    def __post_init__(self):
        if self.side not in (CONTROLLABILITY, OBSERVABILITY):
            raise ValidationError(f"unknown Gramian side {self.side!r}")
        object.__setattr__(self, "matrix", readonly(np.asarray(self.matrix)))


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-trapezoidal factor L with real nonnegative diagonal, M = L L*."""

    L: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "L", readonly(np.asarray(self.L)))

    @property
    def rank(self):
        return self.L.shape[1]


def _pencil_eigenvalues(A, E):
    try:
        vals = sla.eigvals(A, E)
    except (sla.LinAlgError, ValueError) as exc:
        raise EigFailure(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise EigFailure("pencil has infinite eigenvalues (singular E)")
    return vals


def solve_lyapunov(A, E, F, side):
    """Solve the generalized Lyapunov equation for one Gramian.

    F is B for the controllability side and C for the observability
    side.  The result is symmetrized and checked against the residual
    bound ``1e-8 * (|A||X||E| + |FF*|)``.
    """
    A = np.asarray(A)
    E = np.asarray(E)
    F = np.asarray(F)
    if side not in (CONTROLLABILITY, OBSERVABILITY):
        raise ValidationError(f"unknown Gramian side {side!r}")
    worst = _pencil_eigenvalues(A, E).real.max()
    if worst >= 0.0:
        raise UnstablePencil(f"pencil eigenvalue with Re = {worst:.3e} >= 0")

    try:
        if side == CONTROLLABILITY:
            # (E^{-1}A) X + X (E^{-1}A)* = -(E^{-1}B)(E^{-1}B)*
            Ah = sla.solve(E, A)
            Fh = sla.solve(E, F)
            X = sla.solve_continuous_lyapunov(Ah, -Fh @ Fh.conj().T)
        else:
            # (AE^{-1})* X + X (AE^{-1}) = -(CE^{-1})*(CE^{-1})
            Ah = sla.solve(E.T, A.T).T
            Fh = sla.solve(E.T, F.T).T
            X = sla.solve_continuous_lyapunov(Ah.conj().T, -Fh.conj().T @ Fh)
    except (sla.LinAlgError, ValueError) as exc:
        raise SolveFailure(str(exc)) from exc

    X = hermitian_part(X)
    if side == CONTROLLABILITY:
        resid = A @ X @ E.conj().T + E @ X @ A.conj().T + F @ F.conj().T
    else:
        resid = A.conj().T @ X @ E + E.conj().T @ X @ A + F.conj().T @ F
    bound = 1e-8 * (
        np.linalg.norm(A) * np.linalg.norm(X) * np.linalg.norm(E)
        + np.linalg.norm(F) ** 2
    )
    if np.linalg.norm(resid) > bound:
        raise SolveFailure(
            f"Lyapunov residual {np.linalg.norm(resid):.3e} exceeds bound {bound:.3e}"
        )
    return Gramian(X, side)


def gramian_quadrature(sys, side, node_count):
    """Approximate a Gramian by Gauss-Legendre quadrature of its frequency integral.

    The improper integral over the frequency axis is mapped to a finite
    interval with a scaled tangent substitution w = L tan(t),
    t in (-pi/2, pi/2), Jacobian L sec^2(t).  The scale L is the
    geometric mean of the smallest and largest pole magnitudes, which
    centres the node density on the system dynamics; with the unscaled
    substitution, poles much closer to the axis than to unit distance
    stall convergence long before round-off.

    Converges to the ``solve_lyapunov`` result as node_count grows.
    Nodes are accumulated in a fixed order so results are reproducible.
    """
    if node_count < 2:
        raise ValidationError("node_count must be at least 2")
    if side not in (CONTROLLABILITY, OBSERVABILITY):
        raise ValidationError(f"unknown Gramian side {side!r}")
    spectrum = _pencil_eigenvalues(sys.A, sys.E)
    if spectrum.real.max() >= 0.0:
        raise PoleOnAxis(
            f"pole with Re = {spectrum.real.max():.3e} on or right of the imaginary axis"
        )
    mags = np.abs(spectrum)
    scale = float(np.sqrt(mags.min() * mags.max()))

    nodes, weights = np.polynomial.legendre.leggauss(node_count)
    theta = nodes * (np.pi / 2)
    weights = weights * (np.pi / 2)

    n = sys.n
    acc = np.zeros((n, n), dtype=np.complex128)
    E, A = sys.E, sys.A
    for t, w in zip(theta, weights):
        omega = scale * np.tan(t)
        jac = scale / np.cos(t) ** 2
        M = 1j * omega * E - A
        if side == CONTROLLABILITY:
            F = sla.solve(M, sys.B)
        else:
            F = sla.solve(M.conj().T, sys.C.conj().T)
        acc += (w * jac / (2 * np.pi)) * (F @ F.conj().T)
    return Gramian(hermitian_part(acc), side)


def cholesky_psd(M):
    """Cholesky-factor a Hermitian PSD matrix, tolerating rank deficiency.

    Positive-definite input yields the unique standard lower factor with
    positive diagonal.  Singular input falls back to a symmetric-pivoted
    factorization truncated at numerical rank (pivot threshold
    ``RANK_TOL * trace``), re-triangularized so the returned n-by-k
    factor is lower-trapezoidal with real nonnegative diagonal.
    """
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValidationError(f"expected a square matrix, got {M.shape}")
    scale = np.linalg.norm(M, 2) if n else 0.0
    if np.linalg.norm(M - M.conj().T) > 1e-8 * max(scale, 1e-300):
        raise ValidationError("matrix is not Hermitian within tolerance")
    H = hermitian_part(M)
    if n == 0 or scale == 0.0:
        return CholeskyFactor(np.zeros((n, 0), dtype=np.complex128))
    lam = np.linalg.eigvalsh(H)
    if lam.min() < -PSD_TOL * scale:
        raise NotPSD(f"eigenvalue {lam.min():.3e} below -{PSD_TOL:.0e} * norm")

    Hc = np.asarray(H, dtype=np.complex128, order="F")
    L, info = lapack.zpotrf(Hc, lower=1, clean=1)
    if info == 0:
        return CholeskyFactor(L)

    # semidefinite: pivoted factorization P^T H P = L L*
    L, piv, rank, info = lapack.zpstrf(Hc, lower=1, tol=RANK_TOL * np.trace(Hc).real)
    if info < 0:
        raise SolveFailure(f"pivoted Cholesky failed with info={info}")
    Z = np.zeros((n, rank), dtype=np.complex128)
    Z[piv - 1, :] = np.tril(L)[:, :rank]
    # re-triangularize: Z = R* Q* with R* lower-trapezoidal, then fix phases
    _, R = sla.qr(Z.conj().T, mode="economic")
    Lo = R.conj().T
    for j in range(rank):
        d = Lo[j, j]
        if d != 0:
            Lo[:, j] *= np.conj(d) / abs(d)
            Lo[j, j] = abs(d)
    return CholeskyFactor(np.tril(Lo))
