"""ADI shift sets and the low-rank machinery built from them.

The small "shift-space" Gramians need no system knowledge at all: with
s_a = diag(-a_1, ..., -a_k) and a row of ones l_a, the Lyapunov equation

    -s_a* X - X s_a + l_a^T l_a = 0

has the closed-form Cauchy/Pick solution X[i, j] = 1 / (-conj(a_i) - a_j),
which is Hermitian positive definite for distinct left-half-plane shifts.
Inverting X and Cholesky-factoring gives the z factors that weight the
rational Krylov bases; their Kronecker expansion aligns one copy of z per
system input (or output) with the block ordering used by the Loewner
interim model.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from ._linalg import hermitian_part, lu_factor_checked, lu_solve, readonly
from .exceptions import (
    IllConditionedPick,
    NonNegativeRealPart,
    PoleHit,
    RepeatedShift,
    ShapeMismatch,
    ValidationError,
)
from .lyapunov import CONTROLLABILITY, OBSERVABILITY, CholeskyFactor
from .sampling import same_point

# Pick-matrix condition cap; clustered shifts silently poison z beyond it.
PICK_CONDITION_CAP = 1e14


@dataclass(frozen=True)
class ShiftSet:
    """Validated ADI shifts: k alphas (controllability), l betas (observability)."""

    alphas: tuple
    betas: tuple
    m: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))
        object.__setattr__(self, "betas", tuple(complex(b) for b in self.betas))
        _check_one_side(self.alphas, "alpha")
        _check_one_side(self.betas, "beta")
        if self.m < 1 or self.p < 1:
            raise ValidationError("m and p must be positive")
        if self.k * self.m != self.l * self.p:
            raise ShapeMismatch(
                f"k*m = {self.k}*{self.m} differs from l*p = {self.l}*{self.p}"
            )

    @property
    def k(self):
        return len(self.alphas)

    @property
    def l(self):
        return len(self.betas)

    @property
    def order(self):
        return self.k * self.m


def _check_one_side(shifts, label):
    if not shifts:
        raise ValidationError(f"empty {label} shift list")
    for s in shifts:
        if s.real >= 0.0:
            raise NonNegativeRealPart(f"{label} shift {s} has Re >= 0")
    for i, a in enumerate(shifts):
        for b in shifts[i + 1 :]:
            if same_point(a, b):
                raise RepeatedShift(f"repeated {label} shift {a}")


def validate_shifts(alphas, betas, m, p):
    """Construct a ShiftSet, checking sign, distinctness and k*m == l*p."""
    return ShiftSet(tuple(alphas), tuple(betas), m, p)


@dataclass(frozen=True)
class LowRankFactor:
    """Tall factor Z with Z Z* approximating a Gramian."""

    Z: np.ndarray
    side: str

    def __post_init__(self):
        if self.side not in (CONTROLLABILITY, OBSERVABILITY):
            raise ValidationError(f"unknown factor side {self.side!r}")
        object.__setattr__(self, "Z", readonly(np.asarray(self.Z, dtype=np.complex128)))

    @property
    def rank(self):
        return self.Z.shape[1]


def pick_inverse_gramian(shifts):
    """Closed-form solution X[i, j] = 1 / (-conj(s_i) - s_j) of the shift-space Lyapunov equation."""
    s = np.asarray([complex(x) for x in shifts])
    _check_one_side(tuple(s), "pick")
    return 1.0 / (-np.conj(s)[:, None] - s[None, :])


def small_cholesky(shifts):
    """Positive-diagonal lower Cholesky factor z of the inverted Pick matrix.

    Computed entirely from one side's shifts: X = pick_inverse_gramian,
    then X^{-1} via its own Cholesky (L^{-*} L^{-1} keeps the inverse
    Hermitian positive definite in floating point), then the factor of
    the result.  Deterministic: repeated calls are bit-identical.
    """
    X = pick_inverse_gramian(shifts)
    cond = np.linalg.cond(X)
    if not np.isfinite(cond) or cond > PICK_CONDITION_CAP:
        raise IllConditionedPick(f"Pick matrix condition {cond:.3e} exceeds {PICK_CONDITION_CAP:.0e}")
    try:
        L = sla.cholesky(X, lower=True)
        Linv = sla.solve_triangular(L, np.eye(len(X)), lower=True)
        inv = hermitian_part(Linv.conj().T @ Linv)
        z = sla.cholesky(inv, lower=True)
    except sla.LinAlgError as exc:
        raise IllConditionedPick(str(exc)) from exc
    return CholeskyFactor(z)


def expand_kron(z, d):
    """Block-diagonal expansion with d copies of z (identity Kronecker z)."""
    if d < 1:
        raise ValidationError("block count must be at least 1")
    zm = z.L if isinstance(z, CholeskyFactor) else np.asarray(z)
    return np.kron(np.eye(d), zm)


def intrusive_lowrank_factors(sys, shifts):
    """Rational-Krylov low-rank Gramian factors of a known realization.

    Builds the block projectors column by column,

        V[:, (j_in)*k + j] = (-a_j E - A)^{-1} B[:, j_in]
        W[:, (i_out)*l + i] = (-b_i E* - A*)^{-1} C[i_out, :]*

    (shift index fastest, input/output index outermost -- the same
    ordering the block Loewner interim model uses), then applies the
    Kronecker-expanded shift-space factors so that V Zhat_p (V Zhat_p)*
    approximates P and likewise for Q.
    """
    alphas, betas = shifts.alphas, shifts.betas
    k, l = shifts.k, shifts.l
    n, m, p = sys.n, sys.m, sys.p
    if (m, p) != (shifts.m, shifts.p):
        raise ShapeMismatch(
            f"shift set targets (m, p) = ({shifts.m}, {shifts.p}), system has ({m}, {p})"
        )

    V = np.zeros((n, k * m), dtype=np.complex128)
    for j, a in enumerate(alphas):
        lu = lu_factor_checked(-a * sys.E - sys.A, PoleHit(f"-alpha = {-a} is a pole"))
        X = lu_solve(lu, sys.B)
        for j_in in range(m):
            V[:, j_in * k + j] = X[:, j_in]

    W = np.zeros((n, l * p), dtype=np.complex128)
    for i, b in enumerate(betas):
        M = (-b * sys.E - sys.A).conj().T
        lu = lu_factor_checked(M, PoleHit(f"-beta = {-b} is a pole"))
        X = lu_solve(lu, sys.C.conj().T)
        for i_out in range(p):
            W[:, i_out * l + i] = X[:, i_out]

    zp = small_cholesky(alphas)
    zq = small_cholesky(betas)
    Ztp = V @ expand_kron(zp, m)
    Ztq = W @ expand_kron(zq, p)
    return LowRankFactor(Ztp, CONTROLLABILITY), LowRankFactor(Ztq, OBSERVABILITY)
