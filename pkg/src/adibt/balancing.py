"""Balanced square-root reduction.

One SVD drives everything: given factors Zq, Zp with Zq Zq* ~ Q and
Zp Zp* ~ P, the singular values of Zq* E Zp are the (approximate) Hankel
singular values, and the leading singular vectors give the projection
matrices W = Zq U1 S1^{-1/2}, V = Zp V1 S1^{-1/2}.  The same routine
serves the intrusive path (full Cholesky factors of exact Gramians, the
original realization) and the data-driven path (shift-space factors, the
interim interpolant) -- only the inputs change.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import readonly, svd_sign_fixed
from .adi import LowRankFactor, expand_kron
from .exceptions import DimensionMismatch, RankDeficient, ValidationError
from .lyapunov import (
    CONTROLLABILITY,
    OBSERVABILITY,
    CholeskyFactor,
    cholesky_psd,
    solve_lyapunov,
)
from .model import DescriptorSystem

# Singular values below this fraction of the largest may not be inverted.
INVERT_TOL = 1e-12
# Default relative singular-value cutoff when no explicit order is given.
DEFAULT_ORDER_TOL = 1e-8


@dataclass(frozen=True)
class BalancingSVD:
    """Partitioned, sign-fixed SVD of Zq* E Zp."""

    U1: np.ndarray
    S1: np.ndarray
    V1: np.ndarray
    discarded: np.ndarray

    def __post_init__(self):
        for name in ("U1", "S1", "V1", "discarded"):
            object.__setattr__(self, name, readonly(np.asarray(getattr(self, name))))

    @property
    def order(self):
        return self.S1.shape[0]

    @property
    def all_values(self):
        return np.concatenate([self.S1, self.discarded])


@dataclass(frozen=True)
class ProjectionPair:
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "left", readonly(np.asarray(self.left)))
        object.__setattr__(self, "right", readonly(np.asarray(self.right)))


def _factor_matrix(Z):
    if isinstance(Z, CholeskyFactor):
        return Z.L
    if isinstance(Z, LowRankFactor):
        return Z.Z
    return np.asarray(Z)


def balancing_svd(Zq, E, Zp, order=None, tol=None):
    """Sign-fixed SVD of Zq* E Zp, partitioned at the requested order.

    Either an explicit ``order`` or a relative cutoff ``tol`` (kept
    values satisfy s_i >= tol * s_1) selects the partition; with neither,
    DEFAULT_ORDER_TOL applies.  Raises RankDeficient when the requested
    order exceeds the numerical rank (threshold INVERT_TOL * s_1): those
    singular values may not be square-root-inverted.
    """
    Zq = _factor_matrix(Zq)
    Zp = _factor_matrix(Zp)
    E = np.asarray(E)
    if Zq.shape[0] != E.shape[0] or Zp.shape[0] != E.shape[1]:
        raise DimensionMismatch(
            f"factor/matrix shapes {Zq.shape}, {E.shape}, {Zp.shape} are inconsistent"
        )
    U, s, Vh = svd_sign_fixed(Zq.conj().T @ E @ Zp)
    if s.size == 0 or s[0] == 0.0:
        raise RankDeficient("balancing matrix is zero")
    rank = int(np.count_nonzero(s >= INVERT_TOL * s[0]))
    if order is None:
        cutoff = DEFAULT_ORDER_TOL if tol is None else float(tol)
        if not 0.0 < cutoff < 1.0:
            raise ValidationError(f"tolerance must lie in (0, 1), got {cutoff}")
        order = int(np.count_nonzero(s >= cutoff * s[0]))
        order = min(order, rank)
    else:
        if tol is not None:
            raise ValidationError("give either an explicit order or a tolerance, not both")
        order = int(order)
    if order < 1:
        raise RankDeficient("requested order is empty")
    if order > rank:
        raise RankDeficient(
            f"order {order} exceeds numerical rank {rank} of the balancing matrix"
        )
    return BalancingSVD(
        U1=U[:, :order],
        S1=s[:order],
        V1=Vh[:order, :].conj().T,
        discarded=s[order:],
    )


def projection_pair(svd, Zp, Zq):
    """Projection matrices W = Zq U1 S1^{-1/2}, V = Zp V1 S1^{-1/2}."""
    scale = 1.0 / np.sqrt(svd.S1)
    return ProjectionPair(
        left=_factor_matrix(Zq) @ svd.U1 * scale,
        right=_factor_matrix(Zp) @ svd.V1 * scale,
    )


def project_rom(realization, svd, Zp, Zq):
    """Apply the Petrov-Galerkin projection from a balancing SVD.

    By construction the reduced E equals the identity up to round-off;
    the computed matrix is returned as-is rather than snapped.
    """
    pair = projection_pair(svd, Zp, Zq)
    W, V = pair.left, pair.right
    return DescriptorSystem(
        E=W.conj().T @ realization.E @ V,
        A=W.conj().T @ realization.A @ V,
        B=W.conj().T @ realization.B,
        C=realization.C @ V,
    )


def _gramian_cholesky_factors(sys):
    P = solve_lyapunov(sys.A, sys.E, sys.B, CONTROLLABILITY)
    Q = solve_lyapunov(sys.A, sys.E, sys.C, OBSERVABILITY)
    return cholesky_psd(P.matrix), cholesky_psd(Q.matrix)


def hankel_singular_values(sys):
    """All Hankel singular values: singular values of Zq* E Zp for exact Gramians."""
    Zp, Zq = _gramian_cholesky_factors(sys)
    vals = np.linalg.svd(Zq.L.conj().T @ sys.E @ Zp.L, compute_uv=False)
    if Zp.rank < sys.n or Zq.rank < sys.n:
        # rank-deficient Gramians: pad with exact zeros to n values
        vals = np.concatenate([vals, np.zeros(sys.n - vals.size)])
    return vals


def intrusive_balanced_truncation(sys, order=None, tol=None):
    """Classical balanced truncation via exact Gramians.

    Returns the reduced model and the complete Hankel singular value
    list of the input system.
    """
    Zp, Zq = _gramian_cholesky_factors(sys)
    svd = balancing_svd(Zq, sys.E, Zp, order=order, tol=tol)
    rom = project_rom(sys, svd, Zp, Zq)
    return rom, svd.all_values


def hsv_estimates_from_data(interim, z_p, z_q, m=None, p=None):
    """Hankel singular value estimates from samples and shifts alone.

    Singular values (descending) of (I_p kron z_q)* E_r (I_m kron z_p),
    where E_r is the interim model's divided-difference matrix.  The
    values indicate a suitable final order; they are weighted by two
    approximate factors at once and are typically rougher than the
    reduced model's own Hankel singular values.
    """
    m = interim.realization.m if m is None else int(m)
    p = interim.realization.p if p is None else int(p)
    Zph = expand_kron(z_p, m)
    Zqh = expand_kron(z_q, p)
    Er = interim.realization.E
    if Zqh.shape[0] != Er.shape[0] or Zph.shape[0] != Er.shape[1]:
        raise DimensionMismatch(
            f"expanded factors {Zqh.shape}, {Zph.shape} do not match E_r {Er.shape}"
        )
    return np.linalg.svd(Zqh.conj().T @ Er @ Zph, compute_uv=False)
