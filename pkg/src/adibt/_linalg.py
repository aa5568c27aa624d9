"""Internal dense linear-algebra helpers."""

import numpy as np
from scipy.linalg import lapack

from .exceptions import NumericalError

# Reciprocal-condition floor below which a shifted pencil counts as singular.
RCOND_SINGULAR = 1e-14


def as_matrix(x, name, dtype=None):
    """Coerce to a 2-D float64/complex128 array, preserving realness."""
    arr = np.asarray(x)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a matrix, got ndim={arr.ndim}")
    if dtype is None:
        dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
    return np.array(arr, dtype=dtype, order="C")


def readonly(arr):
    arr = np.array(arr, order="C")
    arr.flags.writeable = False
    return arr


def lu_factor_checked(M, on_singular):
    """LU-factor M, raising `on_singular` when M is numerically singular.

    Singularity is judged by the LAPACK 1-norm reciprocal condition
    estimate falling below RCOND_SINGULAR.
    """
    Mc = np.asarray(M, dtype=np.complex128, order="F")
    anorm = np.abs(Mc).sum(axis=0).max() if Mc.size else 0.0
    lu, piv, info = lapack.zgetrf(Mc)
    if info > 0:
        raise on_singular
    rcond, info = lapack.zgecon(lu, anorm)
    if info != 0 or not np.isfinite(rcond) or rcond < RCOND_SINGULAR:
        raise on_singular
    return lu, piv


def lu_solve(lu_piv, B):
    lu, piv = lu_piv
    Bc = np.asarray(B, dtype=np.complex128, order="F")
    x, info = lapack.zgetrs(lu, piv, Bc)
    if info != 0:
        raise NumericalError("triangular solve failed")
    return x


def solve_checked(M, B, on_singular):
    """Solve M X = B with a singularity check; never forms an inverse."""
    return lu_solve(lu_factor_checked(M, on_singular), B)


def cond_1norm(M):
    """1-norm condition estimate; inf for a numerically singular matrix."""
    Mc = np.asarray(M, dtype=np.complex128, order="F")
    anorm = np.abs(Mc).sum(axis=0).max() if Mc.size else 0.0
    lu, piv, info = lapack.zgetrf(Mc)
    if info > 0:
        return np.inf
    rcond, info = lapack.zgecon(lu, anorm)
    if info != 0 or rcond <= 0.0 or not np.isfinite(rcond):
        return np.inf
    return 1.0 / rcond


def hermitian_part(M):
    return (M + M.conj().T) / 2


def svd_sign_fixed(M):
    """SVD with a deterministic phase convention.

    Each left singular vector is rotated so that its largest-magnitude
    entry (first such index on ties) is real and positive; the matching
    right singular vector absorbs the conjugate phase, leaving U @ S @ Vh
    unchanged.  Makes repeated factorizations of equal inputs bit-identical.
    """
    U, s, Vh = np.linalg.svd(np.asarray(M, dtype=np.complex128))
    U = U.copy()
    Vh = Vh.copy()
    for j in range(min(U.shape[1], Vh.shape[0])):
        i = int(np.argmax(np.abs(U[:, j])))
        piv = U[i, j]
        if piv != 0:
            phase = piv / abs(piv)
            U[:, j] *= np.conj(phase)
            Vh[j, :] *= phase
    return U, s, Vh
