"""End-to-end reduction paths and comparison utilities.

Three routes to a reduced model:

* ``intrusive_balanced_truncation`` (in balancing): exact Gramians.
* ``reduce_adi_intrusive``: low-rank Gramian factors from shifted solves
  against the original realization.
* ``reduce_data_driven``: the same reduction computed purely from
  transfer-function samples at the mirrored shifts.  Its signature has
  no system parameter -- non-intrusiveness is enforced by the interface,
  not by convention.
"""

from dataclasses import dataclass

import numpy as np

from .adi import expand_kron, intrusive_lowrank_factors, small_cholesky
from .balancing import balancing_svd, hankel_singular_values, project_rom
from .exceptions import DimensionMismatch, PoleHit, UnstablePencil
from .loewner import build_block_loewner
from .model import eval_transfer
from .sampling import same_point


@dataclass(frozen=True)
class SamplingPlan:
    """Evaluation points the data-driven path needs for a given shift set."""

    points: tuple
    derivative_points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(complex(s) for s in self.points))
        object.__setattr__(
            self, "derivative_points", tuple(complex(s) for s in self.derivative_points)
        )


@dataclass(frozen=True)
class ComparisonReport:
    """Pointwise transfer-function deviation of two models over a grid."""

    grid: tuple
    deviations: tuple          # one entry per grid point; None marks a pole hit
    max_deviation: float
    hsv_a: np.ndarray | None   # None when the model is unstable
    hsv_b: np.ndarray | None


def required_samples(shifts):
    """Mirror images of all shifts, deduplicated; common mirrors need derivatives.

    Points are listed alpha-mirrors first, then beta-mirrors, keeping
    the first occurrence of coinciding values, so plans are
    deterministic for a given shift set.
    """
    mirrors = [-a for a in shifts.alphas] + [-b for b in shifts.betas]
    points = []
    for s in mirrors:
        if not any(same_point(t, s) for t in points):
            points.append(s)
    derivative_points = [
        s
        for s in points
        if any(same_point(s, -a) for a in shifts.alphas)
        and any(same_point(s, -b) for b in shifts.betas)
    ]
    return SamplingPlan(tuple(points), tuple(derivative_points))


def reduce_adi_intrusive(sys, shifts, order=None, tol=None):
    """Low-rank balanced truncation from shifted solves against a known realization."""
    Ztp, Ztq = intrusive_lowrank_factors(sys, shifts)
    svd = balancing_svd(Ztq, sys.E, Ztp, order=order, tol=tol)
    return project_rom(sys, svd, Ztp, Ztq)


def reduce_data_driven(ds, shifts, order=None, tol=None):
    """Low-rank balanced truncation computed from samples and shifts alone.

    Builds the block interpolant from the dataset, weights it with the
    shift-space Cholesky factors (which never see the system), and
    applies the balanced square-root step to the interim model.
    """
    interim = build_block_loewner(ds, shifts)
    Zph = expand_kron(small_cholesky(shifts.alphas), shifts.m)
    Zqh = expand_kron(small_cholesky(shifts.betas), shifts.p)
    realization = interim.realization
    svd = balancing_svd(Zqh, realization.E, Zph, order=order, tol=tol)
    return project_rom(realization, svd, Zph, Zqh)


def default_grid():
    """100 logarithmically spaced points on the imaginary axis, 1e-3 to 1e3 rad/s."""
    return 1j * np.logspace(-3.0, 3.0, 100)


def parse_grid_spec(spec):
    """Parse 'log:LO:HI:N' into an imaginary-axis grid."""
    parts = spec.split(":")
    if len(parts) != 4 or parts[0] != "log":
        raise ValueError(f"grid spec must look like log:1e-3:1e3:100, got {spec!r}")
    lo, hi, count = float(parts[1]), float(parts[2]), int(parts[3])
    if lo <= 0 or hi <= 0 or count < 1:
        raise ValueError(f"grid spec bounds must be positive, got {spec!r}")
    return 1j * np.logspace(np.log10(lo), np.log10(hi), count)


def compare_roms(a, b, grid=None):
    """Evaluate two models on a grid and report their relative deviation.

    The per-point deviation is ||Ga - Gb||_F / max(||Ga||_F, ||Gb||_F);
    pole hits are recorded as None and skipped in the maximum.  Hankel
    singular values of each model are included when it is stable, None
    otherwise (stability of reduced models is reported, never assumed).
    """
    if (a.p, a.m) != (b.p, b.m):
        raise DimensionMismatch(
            f"models have different I/O geometry: ({a.p}, {a.m}) vs ({b.p}, {b.m})"
        )
    if grid is None:
        grid = default_grid()
    grid = tuple(complex(s) for s in grid)
    deviations = []
    for s in grid:
        try:
            Ga = eval_transfer(a, s)
            Gb = eval_transfer(b, s)
        except PoleHit:
            deviations.append(None)
            continue
        ref = max(np.linalg.norm(Ga), np.linalg.norm(Gb))
        deviations.append(0.0 if ref == 0.0 else float(np.linalg.norm(Ga - Gb) / ref))
    valid = [d for d in deviations if d is not None]
    max_dev = max(valid) if valid else float("nan")

    def _hsv(sysm):
        try:
            return hankel_singular_values(sysm)
        except UnstablePencil:
            return None

    return ComparisonReport(
        grid=grid,
        deviations=tuple(deviations),
        max_deviation=max_dev,
        hsv_a=_hsv(a),
        hsv_b=_hsv(b),
    )
