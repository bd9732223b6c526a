"""Observable operators built from outcome values and amplitude kernels.

A measurement along direction c with real outcome values (r_plus, r_minus)
is represented, in the projection basis of an intermediate direction, by the
2x2 Hermitian matrix

    r[p, p'] = sum over u of conj(X[p, u]) * r(u) * X[p', u]

with X = xi_half(intermediate, c).  In matrix form that is
conj(X) @ diag(r_plus, r_minus) @ X.T; the eigenvalues are exactly the
outcome values.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .directions import Direction
from .kernels import xi_half


@dataclass(frozen=True)
class OutcomeValues:
    """The two real values a dichotomic measurement can return."""

    r_plus: float
    r_minus: float

    def __post_init__(self) -> None:
        for name in ("r_plus", "r_minus"):
            v = getattr(self, name)
            if isinstance(v, complex) or not isinstance(v, numbers.Real):
                raise ValueError(f"{name} must be a real number, got {v!r}")
            v = float(v)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    def as_array(self) -> np.ndarray:
        return np.array([self.r_plus, self.r_minus])


SPIN_PROJECTION_VALUES = OutcomeValues(1.0, -1.0)


@dataclass(frozen=True)
class MeasurementSpec:
    """Measurement directions and outcome values for both subsystems."""

    c1: Direction
    c2: Direction
    values1: OutcomeValues
    values2: OutcomeValues


def r_matrix(
    intermediate: Direction, measured: Direction, values: OutcomeValues
) -> np.ndarray:
    """Observable block for one subsystem in the ``intermediate`` basis.

    Hermitian 2x2 with eigenvalues {r_plus, r_minus}.  Changing the
    intermediate direction conjugates the block by the corresponding
    direction-change matrix, so expectation values built from it cannot
    depend on that choice.
    """
    x = xi_half(intermediate, measured)
    return x.conj() @ np.diag(values.as_array()) @ x.T


def spin_projection_operator(intermediate: Direction, measured: Direction) -> np.ndarray:
    """The values (+1, -1) special case of ``r_matrix``.

    In the z basis (intermediate at the pole) it takes the familiar form
    ((cos t, sin t e^{-ip}), (sin t e^{ip}, -cos t)) for a measurement
    along (t, p).
    """
    return r_matrix(intermediate, measured, SPIN_PROJECTION_VALUES)


def operator_pair(
    spec: MeasurementSpec, d: Direction, f: Direction
) -> tuple[np.ndarray, np.ndarray]:
    """Blocks for both subsystems, the first in the d basis, the second in f."""
    return (
        r_matrix(d, spec.c1, spec.values1),
        r_matrix(f, spec.c2, spec.values2),
    )
