"""Joint outcome amplitudes, probabilities and expectation values.

Two independent routes to the same expectation value live here.  The oracle
route never touches a matrix: it composes the joint amplitude

    Psi(u, v) = sum over (m1, m2) of chi(label; m1, m2)
                * xi_half(z, c1)[m1, u] * xi_half(z, c2)[m2, v]

squares it into probabilities and averages the outcome value products.  The
matrix route sandwiches the Kronecker product of the two observable blocks
between assembled state tensors.  They agree identically, and the matrix
route is additionally independent of the intermediate directions (d, f) it
is evaluated in; ``verify_basis_invariance`` measures both facts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .directions import Direction, Z_AXIS
from .kernels import B_INDEX_ORDER, CompoundLabel, SpinHalfLabel, chi, xi_half
from .operators import (
    MeasurementSpec,
    OutcomeValues,
    SPIN_PROJECTION_VALUES,
    operator_pair,
)
from .states import assemble_state

# Largest imaginary part tolerated when a mathematically real quadratic form
# is evaluated in floating point.
IMAG_TOLERANCE = 1e-12

_PROB_SUM_TOLERANCE = 1e-12


class InternalConsistencyError(RuntimeError):
    """A computed quantity violated an exact identity beyond tolerance."""


@dataclass(frozen=True)
class ExpectationReport:
    """Dual-route expectation value plus the residuals tying the routes together.

    ``residual`` is the gap between the matrix and oracle routes at the
    first evaluation point; ``basis_invariance_residual`` is the spread of
    the matrix route over all sampled (d, f) pairs.
    """

    value_matrix_path: float
    value_oracle_path: float
    probabilities: tuple[float, float, float, float]
    residual: float
    basis_invariance_residual: float

    def __post_init__(self) -> None:
        p = self.probabilities
        if len(p) != 4:
            raise ValueError("expected four outcome probabilities")
        if any(v < 0.0 or v > 1.0 + _PROB_SUM_TOLERANCE for v in p):
            raise ValueError(f"probabilities out of range: {p}")
        if abs(sum(p) - 1.0) > _PROB_SUM_TOLERANCE:
            raise ValueError(f"probabilities must sum to 1, got {sum(p)!r}")


def amplitude_psi(
    label: CompoundLabel,
    c1: Direction,
    c2: Direction,
    u: SpinHalfLabel,
    v: SpinHalfLabel,
) -> complex:
    """Joint amplitude for outcomes (u, v) along (c1, c2)."""
    x1 = xi_half(Z_AXIS, c1)
    x2 = xi_half(Z_AXIS, c2)
    total = 0j
    for m1, m2 in B_INDEX_ORDER:
        total += chi(label, m1, m2) * x1[m1.index, u.index] * x2[m2.index, v.index]
    return total


def outcome_probabilities(
    label: CompoundLabel, c1: Direction, c2: Direction
) -> np.ndarray:
    """The four joint outcome probabilities |Psi(u, v)|^2 in B_INDEX_ORDER.

    Nonnegative with unit sum to rounding.
    """
    return np.array(
        [abs(amplitude_psi(label, c1, c2, u, v)) ** 2 for u, v in B_INDEX_ORDER]
    )


def expectation_oracle(label: CompoundLabel, spec: MeasurementSpec) -> float:
    """Expectation value as the probability-weighted sum of value products."""
    p = outcome_probabilities(label, spec.c1, spec.c2)
    r1 = spec.values1.as_array()
    r2 = spec.values2.as_array()
    total = 0.0
    for k, (u, v) in enumerate(B_INDEX_ORDER):
        total += p[k] * r1[u.index] * r2[v.index]
    return total


def expectation_matrix(
    label: CompoundLabel,
    spec: MeasurementSpec,
    d: Direction = Z_AXIS,
    f: Direction = Z_AXIS,
) -> float:
    """Expectation value as a quadratic form in the (d, f) product basis.

    The form is mathematically real; if rounding leaves an imaginary part
    above IMAG_TOLERANCE an InternalConsistencyError is raised.
    """
    psi = assemble_state(label, d, f).tensor
    r1, r2 = operator_pair(spec, d, f)
    value = complex(np.vdot(psi, np.kron(r1, r2) @ psi))
    if abs(value.imag) > IMAG_TOLERANCE:
        raise InternalConsistencyError(
            f"expectation value has imaginary part {value.imag!r}"
        )
    return value.real


def verify_basis_invariance(
    label: CompoundLabel,
    spec: MeasurementSpec,
    grid: Iterable[tuple[Direction, Direction]],
) -> ExpectationReport:
    """Evaluate both routes over a grid of (d, f) pairs and report residuals.

    The value fields come from the first grid point; the invariance residual
    is the max-min spread of the matrix route over the whole grid (zero for
    a single-point grid).
    """
    pairs = list(grid)
    if not pairs:
        raise ValueError("grid of (d, f) pairs must be nonempty")
    values = [expectation_matrix(label, spec, d, f) for d, f in pairs]
    oracle = expectation_oracle(label, spec)
    probs = outcome_probabilities(label, spec.c1, spec.c2)
    return ExpectationReport(
        value_matrix_path=values[0],
        value_oracle_path=oracle,
        probabilities=tuple(float(p) for p in probs),
        residual=abs(values[0] - oracle),
        basis_invariance_residual=max(values) - min(values),
    )


def singlet_expectation(c1: Direction, c2: Direction) -> float:
    """Spin-projection correlation of the singlet, equal to -cos(angle between)."""
    label = CompoundLabel(0, 0, Z_AXIS)
    spec = MeasurementSpec(c1, c2, SPIN_PROJECTION_VALUES, SPIN_PROJECTION_VALUES)
    return expectation_oracle(label, spec)


def chsh_value(a: Direction, a_prime: Direction, b: Direction, b_prime: Direction) -> float:
    """CHSH combination E(a,b) + E(a,b') + E(a',b) - E(a',b') for the singlet.

    With E(x, y) = -cos(angle between x and y) the combination is bounded by
    2*sqrt(2) in magnitude, and the bound is attained for coplanar settings
    45 degrees apart.
    """
    return (
        singlet_expectation(a, b)
        + singlet_expectation(a, b_prime)
        + singlet_expectation(a_prime, b)
        - singlet_expectation(a_prime, b_prime)
    )
