"""Interpolatory reduced models built from data.

Two constructions live here.  The tangential one takes scalar data
c_i G(mu_i) b_j along chosen directions; the block one consumes full
matrix samples G(-a_j), G(-b_i) at the mirror images of a shift set and
produces the interim model whose divided-difference matrices are, entry
for entry, the rational-Krylov projections W^T E V and W^T A V that the
intrusive route would compute.

Ordering contract for the block case (fixed; everything downstream
depends on it): rows are grouped output-major with the left-shift index
fastest, columns input-major with the right-shift index fastest.  Row
(i_out * l + i) of B_r is row i_out of G(-b_i); column (j_in * k + j) of
C_r is column j_in of G(-a_j).  This is exactly the layout under which
the Kronecker-expanded shift-space factors (one z block per input or
output) line up with the interim matrices.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from ._linalg import cond_1norm
from .exceptions import (
    DuplicatePoint,
    MissingHermiteData,
    NearCoincidentShiftWarning,
    PoleHit,
    ShapeMismatch,
    SingularPencilWarning,
    ValidationError,
)
from .model import DescriptorSystem, eval_transfer
from .sampling import dataset_lookup, same_point

# Distinct shifts closer than this (relative) trigger a conditioning warning.
NEAR_COINCIDENT_TOL = 1e-8


@dataclass(frozen=True)
class TangentialData:
    """Directional interpolation data.

    right: triples (sigma_j, b_j, G(sigma_j) b_j) with b_j an m-vector;
    left: triples (mu_i, c_i, c_i G(mu_i)) with c_i a p-covector;
    hermite: {(i, j): c_i G'(sigma_j) b_j} for coincident sigma_j == mu_i.
    """

    right: tuple
    left: tuple
    hermite: dict

    def __post_init__(self):
        right = tuple((complex(s), np.asarray(b, dtype=np.complex128).ravel(),
                       np.asarray(w, dtype=np.complex128).ravel()) for s, b, w in self.right)
        left = tuple((complex(s), np.asarray(c, dtype=np.complex128).ravel(),
                      np.asarray(v, dtype=np.complex128).ravel()) for s, c, v in self.left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "hermite", dict(self.hermite))
        if len(right) != len(left):
            raise ShapeMismatch(f"{len(right)} right points vs {len(left)} left points")
        if not right:
            raise ValidationError("empty interpolation data")
        m = right[0][1].size
        p = left[0][1].size
        for s, b, w in right:
            if b.size != m or w.size != p:
                raise ShapeMismatch(f"right data at {s} has inconsistent direction sizes")
        for s, c, v in left:
            if c.size != p or v.size != m:
                raise ShapeMismatch(f"left data at {s} has inconsistent direction sizes")
        for pts, label in ((right, "sigma"), (left, "mu")):
            for i, a in enumerate(pts):
                for b in pts[i + 1 :]:
                    if same_point(a[0], b[0]):
                        raise DuplicatePoint(f"repeated {label} point {a[0]}")

    @property
    def order(self):
        return len(self.right)


def build_tangential_loewner(data):
    """Assemble the tangential interpolant's realization.

    The pencil entries are the classic divided differences of the
    directional samples; coincident left/right points take the Hermite
    form and require the matching derivative entry.  A warning (not an
    error) is issued when the resulting pencil is singular at one of its
    own interpolation points: that can legitimately happen for redundant
    data and is handled downstream by rank-revealing reduction.
    """
    r = data.order
    Er = np.empty((r, r), dtype=np.complex128)
    Ar = np.empty((r, r), dtype=np.complex128)
    Br = np.empty((r, data.right[0][1].size), dtype=np.complex128)
    Cr = np.empty((data.right[0][2].size, r), dtype=np.complex128)
    for i, (mu, c, v) in enumerate(data.left):
        Br[i, :] = v
        for j, (sigma, b, w) in enumerate(data.right):
            if same_point(sigma, mu):
                if (i, j) not in data.hermite:
                    raise MissingHermiteData(
                        f"sigma_{j} == mu_{i} == {sigma} but no derivative entry"
                    )
                d = complex(data.hermite[(i, j)])
                cw = c @ w
                Er[i, j] = -d
                Ar[i, j] = -(cw + sigma * d)
            else:
                cw = c @ w
                vb = v @ b
                Er[i, j] = -(cw - vb) / (sigma - mu)
                Ar[i, j] = -(sigma * cw - mu * vb) / (sigma - mu)
    for j, (sigma, b, w) in enumerate(data.right):
        Cr[:, j] = w
    rom = DescriptorSystem(Er, Ar, Br, Cr)
    for s, _, _ in data.right + data.left:
        if cond_1norm(s * Er - Ar) == np.inf:
            warnings.warn(
                f"pencil singular at interpolation point {s}", SingularPencilWarning
            )
            break
    return rom


@dataclass(frozen=True)
class InterimROM:
    """Block-interpolatory interim model with its point and ordering metadata."""

    realization: DescriptorSystem
    right_points: tuple  # mirrors -a_j, j = 1..k
    left_points: tuple   # mirrors -b_i, i = 1..l
    ordering: str = "output-major/input-major, shift-minor"

    def __post_init__(self):
        object.__setattr__(self, "right_points", tuple(complex(s) for s in self.right_points))
        object.__setattr__(self, "left_points", tuple(complex(s) for s in self.left_points))
        r = self.realization.n
        k, l = len(self.right_points), len(self.left_points)
        m, p = self.realization.m, self.realization.p
        if r != k * m or r != l * p:
            raise ShapeMismatch(
                f"order {r} inconsistent with k*m = {k}*{m}, l*p = {l}*{p}"
            )

    @property
    def k(self):
        return len(self.right_points)

    @property
    def l(self):
        return len(self.left_points)


def build_block_loewner(ds, shifts):
    """Build the interim interpolant from samples at the mirrored shifts.

    Needs G at every -a_j and -b_i; where a_j == b_i it needs G' at the
    common mirror point and uses the Hermite entries instead of divided
    differences.  Requires k*m == l*p (enforced by the shift set).
    """
    if (ds.m, ds.p) != (shifts.m, shifts.p):
        raise ShapeMismatch(
            f"dataset geometry ({ds.p}, {ds.m}) differs from shift target ({shifts.p}, {shifts.m})"
        )
    alphas = np.asarray(shifts.alphas)
    betas = np.asarray(shifts.betas)
    k, l, m, p = shifts.k, shifts.l, ds.m, ds.p

    coincident = np.zeros((l, k), dtype=bool)
    for i, b in enumerate(betas):
        for j, a in enumerate(alphas):
            if same_point(a, b):
                coincident[i, j] = True
            elif abs(a - b) < NEAR_COINCIDENT_TOL * (1.0 + abs(a)):
                warnings.warn(
                    f"shifts alpha = {a} and beta = {b} nearly coincide",
                    NearCoincidentShiftWarning,
                )

    Ga = np.stack([dataset_lookup(ds, -a).value for a in alphas])   # (k, p, m)
    Gb = np.stack([dataset_lookup(ds, -b).value for b in betas])    # (l, p, m)
    Gda = {
        j: dataset_lookup(ds, -alphas[j], need_derivative=True).derivative
        for j in range(k)
        if coincident[:, j].any()
    }

    den = alphas[None, :] - betas[:, None]                          # (l, k)
    with np.errstate(divide="ignore", invalid="ignore"):
        Ef = (Ga[None, :] - Gb[:, None]) / den[:, :, None, None]
        Af = -(alphas[None, :, None, None] * Ga[None, :]
               - betas[:, None, None, None] * Gb[:, None]) / den[:, :, None, None]
    for i, j in zip(*np.nonzero(coincident)):
        Ef[i, j] = -Gda[j]
        Af[i, j] = alphas[j] * Gda[j] - Ga[j]

    # (l, k, p, m) -> rows (i_out, i), cols (j_in, j)
    Er = Ef.transpose(2, 0, 3, 1).reshape(p * l, m * k)
    Ar = Af.transpose(2, 0, 3, 1).reshape(p * l, m * k)
    Br = Gb.transpose(1, 0, 2).reshape(p * l, m)
    Cr = Ga.transpose(1, 2, 0).reshape(p, m * k)

    return InterimROM(
        realization=DescriptorSystem(Er, Ar, Br, Cr),
        right_points=tuple(-a for a in alphas),
        left_points=tuple(-b for b in betas),
    )


def interpolation_residuals(rom, ds, points):
    """Relative Frobenius mismatch between a model and stored samples.

    Returns one residual per requested point, aligned with the input
    order.  A pole hit at a point is reported as inf rather than raised.
    """
    out = []
    for s in points:
        sample = dataset_lookup(ds, s)
        try:
            approx = eval_transfer(rom, s)
        except PoleHit:
            out.append(np.inf)
            continue
        ref = np.linalg.norm(sample.value)
        if ref == 0.0:
            out.append(float(np.linalg.norm(approx)))
        else:
            out.append(float(np.linalg.norm(approx - sample.value) / ref))
    return out
