"""Dense descriptor LTI systems and their transfer-function evaluation.

A system is the quadruple (E, A, B, C) with transfer function
G(s) = C (sE - A)^{-1} B.  Reduced-order models reuse the same type at a
smaller state dimension.  All values are immutable; every operation here
is a pure function, safe for concurrent use.
"""

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg as sla

from ._linalg import as_matrix, cond_1norm, lu_factor_checked, lu_solve, readonly
from .exceptions import (
    DimensionMismatch,
    EigFailure,
    GenerationFailure,
    PoleHit,
    SingularE,
)

# Condition-estimate cap above which E counts as unusable.
E_CONDITION_CAP = 1e12


@dataclass(frozen=True)
class DescriptorSystem:
    """Realization (E, A, B, C); E and A are n-by-n, B is n-by-m, C is p-by-n."""

    E: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    validated: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "E", readonly(as_matrix(self.E, "E")))
        object.__setattr__(self, "A", readonly(as_matrix(self.A, "A")))
        object.__setattr__(self, "B", readonly(as_matrix(self.B, "B")))
        object.__setattr__(self, "C", readonly(as_matrix(self.C, "C")))

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def m(self):
        return self.B.shape[1]

    @property
    def p(self):
        return self.C.shape[0]


@dataclass(frozen=True)
class PoleSpectrum:
    """Generalized eigenvalues of (A, E), sorted by (Re, Im) ascending."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", readonly(np.asarray(self.values, dtype=np.complex128)))

    def __len__(self):
        return len(self.values)


def validate_system(sys):
    """Check dimension consistency and E-invertibility.

    Returns the same realization flagged as validated.  Raises
    DimensionMismatch for inconsistent shapes and SingularE when the
    1-norm condition estimate of E exceeds ``E_CONDITION_CAP``.
    """
    E, A, B, C = sys.E, sys.A, sys.B, sys.C
    n = A.shape[0]
    if A.shape != (n, n) or E.shape != (n, n):
        raise DimensionMismatch(f"E and A must be square and equal-sized, got {E.shape} and {A.shape}")
    if B.shape[0] != n:
        raise DimensionMismatch(f"B has {B.shape[0]} rows, expected {n}")
    if C.shape[1] != n:
        raise DimensionMismatch(f"C has {C.shape[1]} columns, expected {n}")
    if n < 1 or B.shape[1] < 1 or C.shape[0] < 1:
        raise DimensionMismatch("state, input and output counts must all be positive")
    cond = cond_1norm(E)
    if cond > E_CONDITION_CAP:
        raise SingularE(f"condition estimate of E is {cond:.3e} (cap {E_CONDITION_CAP:.0e})")
    return replace(sys, validated=True)


def _shifted_pencil_lu(sys, s):
    M = s * sys.E - sys.A
    return lu_factor_checked(M, PoleHit(f"s = {s} is numerically a pole"))


def eval_transfer(sys, s):
    """Evaluate G(s) = C (sE - A)^{-1} B by one linear solve with m right-hand sides."""
    lu = _shifted_pencil_lu(sys, complex(s))
    return sys.C @ lu_solve(lu, sys.B)


def eval_transfer_derivative(sys, s):
    """Evaluate G'(s) = -C (sE - A)^{-1} E (sE - A)^{-1} B via two successive solves."""
    lu = _shifted_pencil_lu(sys, complex(s))
    X = lu_solve(lu, sys.B)
    return -sys.C @ lu_solve(lu, sys.E @ X)


def poles(sys):
    """Generalized eigenvalues of (A, E), ascending by real part, ties by imaginary part."""
    try:
        vals = sla.eigvals(sys.A, sys.E)
    except (sla.LinAlgError, ValueError) as exc:
        raise EigFailure(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise EigFailure("pencil has infinite eigenvalues (singular E)")
    order = np.lexsort((vals.imag, vals.real))
    return PoleSpectrum(vals[order])


def random_stable_system(n, m, p, seed):
    """Deterministic random stable test system.

    Eigenvalues are drawn with real parts uniform in [-2, -0.1] (complex
    ones in conjugate pairs, imaginary parts in [-1, 1]), rotated by a
    random orthogonal similarity into a real A; E = I + 0.1 R with R
    uniform in [-1, 1] and cond(E) < 100; B, C dense uniform in [-1, 1].
    Draws are rejected until every pencil eigenvalue satisfies
    Re < -1e-6; after 100 attempts GenerationFailure is raised.
    """
    if n < 1 or m < 1 or p < 1:
        raise DimensionMismatch("n, m, p must all be at least 1")
    rng = np.random.default_rng(seed)
    for _ in range(100):
        blocks = []
        count = 0
        while count < n:
            re = rng.uniform(-2.0, -0.1)
            if n - count >= 2 and rng.random() < 0.5:
                im = rng.uniform(0.1, 1.0)
                blocks.append(np.array([[re, im], [-im, re]]))
                count += 2
            else:
                blocks.append(np.array([[re]]))
                count += 1
        T, _ = np.linalg.qr(rng.normal(size=(n, n)))
        A = T @ sla.block_diag(*blocks) @ T.T
        E = np.eye(n) + 0.1 * rng.uniform(-1.0, 1.0, (n, n))
        if np.linalg.cond(E) >= 100:
            continue
        B = rng.uniform(-1.0, 1.0, (n, m))
        C = rng.uniform(-1.0, 1.0, (p, n))
        sys = DescriptorSystem(E, A, B, C)
        if poles(sys).values.real.max() < -1e-6:
            return validate_system(sys)
    raise GenerationFailure(f"no stable draw in 100 attempts for n={n}, m={m}, p={p}")
