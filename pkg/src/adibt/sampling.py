"""Transfer-function sample datasets.

A dataset is the only object the non-intrusive reduction path is allowed
to read.  ``sample_model`` is the intrusive oracle that manufactures
datasets from a known realization; everything else treats datasets as
opaque collections of (point, value, derivative) records.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import readonly
from .exceptions import (
    AmbiguousMatch,
    DuplicatePoint,
    MissingDerivative,
    MissingSample,
    PoleHit,
    ValidationError,
)
from .model import eval_transfer, eval_transfer_derivative

# Relative tolerance under which two evaluation points count as the same.
MATCH_TOL = 1e-12


def same_point(a, b):
    """True when b lies within the matching tolerance of a."""
    return abs(a - b) <= MATCH_TOL * (1.0 + abs(a))


@dataclass(frozen=True)
class SamplePoint:
    s: complex
    value: np.ndarray
    derivative: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "value", readonly(np.asarray(self.value, dtype=np.complex128)))
        if self.derivative is not None:
            object.__setattr__(
                self, "derivative", readonly(np.asarray(self.derivative, dtype=np.complex128))
            )


@dataclass(frozen=True)
class SampleDataset:
    """Immutable collection of p-by-m samples sharing one I/O geometry."""

    p: int
    m: int
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        shape = (self.p, self.m)
        for pt in self.points:
            if pt.value.shape != shape:
                raise ValidationError(
                    f"sample at {pt.s} has shape {pt.value.shape}, dataset declares {shape}"
                )
            if pt.derivative is not None and pt.derivative.shape != shape:
                raise ValidationError(
                    f"derivative at {pt.s} has shape {pt.derivative.shape}, dataset declares {shape}"
                )
        for i, a in enumerate(self.points):
            for b in self.points[i + 1 :]:
                if same_point(a.s, b.s):
                    raise DuplicatePoint(f"points {a.s} and {b.s} coincide")

    def __len__(self):
        return len(self.points)


def sample_model(sys, points, derivative_points=()):
    """Evaluate G (and G' where requested) at the given points.

    The intrusive sampling oracle: every downstream consumer sees only
    the resulting dataset.  ``derivative_points`` must be a subset of
    ``points`` under the matching tolerance.
    """
    points = [complex(s) for s in points]
    derivative_points = [complex(s) for s in derivative_points]
    for i, a in enumerate(points):
        for b in points[i + 1 :]:
            if same_point(a, b):
                raise DuplicatePoint(f"requested points {a} and {b} coincide")
    for d in derivative_points:
        if not any(same_point(s, d) for s in points):
            raise ValidationError(f"derivative point {d} is not among the sample points")
    records = []
    for s in points:
        try:
            value = eval_transfer(sys, s)
            deriv = None
            if any(same_point(s, d) for d in derivative_points):
                deriv = eval_transfer_derivative(sys, s)
        except PoleHit as exc:
            raise PoleHit(f"sample point {s}: {exc}") from exc
        records.append(SamplePoint(s, value, deriv))
    return SampleDataset(p=sys.p, m=sys.m, points=tuple(records))


def dataset_lookup(ds, s, need_derivative=False):
    """Return the unique stored sample matching s."""
    s = complex(s)
    hits = [pt for pt in ds.points if same_point(s, pt.s)]
    if not hits:
        raise MissingSample(f"no sample at {s}")
    if len(hits) > 1:
        raise AmbiguousMatch(f"{len(hits)} stored points match {s}")
    pt = hits[0]
    if need_derivative and pt.derivative is None:
        raise MissingDerivative(f"sample at {pt.s} stores no derivative")
    return pt
