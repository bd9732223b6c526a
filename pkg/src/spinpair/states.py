"""Assembly of coupled-pair vector states.

A compound state (s, M) referred to the axis ``a`` is a chi-weighted sum of
four Kronecker products, one per pair of projection labels:

    tensor = sum over (m1, m2) of chi(label; m1, m2) * eta1(m1) (x) eta2(m2)

where eta1 is taken along the first intermediate direction d and eta2 along
the second one f.  Components follow B_INDEX_ORDER with the first subsystem
major.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .directions import Direction, Z_AXIS
from .kernels import B_INDEX_ORDER, CompoundLabel, chi, eta_from_z


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class StateTerm:
    """One summand of an assembled state: coefficient times eta1 (x) eta2."""

    coefficient: complex
    eta1: np.ndarray
    eta2: np.ndarray


@dataclass(frozen=True, eq=False)
class StateAssembly:
    """A compound state together with the terms it was assembled from.

    ``terms`` holds one StateTerm per joint label in B_INDEX_ORDER and
    ``tensor`` is their sum, a unit-norm complex 4-vector.
    """

    label: CompoundLabel
    intermediate1: Direction
    intermediate2: Direction
    terms: tuple[StateTerm, ...]
    tensor: np.ndarray


def assemble_state(label: CompoundLabel, d: Direction, f: Direction) -> StateAssembly:
    """Build the state (s, M) along ``label.axis`` in the (d, f) product basis.

    The coefficients are exactly the ``chi`` outputs, the per-subsystem
    vectors exactly the ``eta_from_z`` outputs; no rescaling happens here.
    """
    terms = []
    tensor = np.zeros(4, dtype=complex)
    for m1, m2 in B_INDEX_ORDER:
        coeff = chi(label, m1, m2)
        eta1 = eta_from_z(m1, d)
        eta2 = eta_from_z(m2, f)
        tensor += coeff * np.kron(eta1, eta2)
        terms.append(StateTerm(coeff, _readonly(eta1), _readonly(eta2)))
    return StateAssembly(label, d, f, tuple(terms), _readonly(tensor))


def reduce_axis_aligned(
    label: CompoundLabel, d: Direction, f: Direction
) -> StateAssembly:
    """Assemble a state whose axis is the z direction.

    With the axis at (0, 0) the chi coefficients collapse to the constant
    coupling pattern (single terms for M = +-1, symmetric and antisymmetric
    1/sqrt(2) combinations for (1, 0) and (0, 0)), so the assembly reduces
    to fixed combinations of eta products.  Raises ValueError when the
    label's axis is not exactly (0, 0).
    """
    if label.axis != Z_AXIS:
        raise ValueError(
            f"axis-aligned reduction requires axis (0, 0), got {label.axis}"
        )
    return assemble_state(label, d, f)


def gram_matrix(states: Sequence[StateAssembly]) -> np.ndarray:
    """Matrix of pairwise inner products, conjugate-linear in the first slot.

    All states must share the quantization axis and both intermediate
    directions.  For the four states (1, +1), (1, 0), (1, -1), (0, 0) on a
    common axis the result is the 4x4 identity to rounding.
    """
    if not states:
        raise ValueError("gram_matrix needs at least one state")
    first = states[0]
    for st in states[1:]:
        if (
            st.label.axis != first.label.axis
            or st.intermediate1 != first.intermediate1
            or st.intermediate2 != first.intermediate2
        ):
            raise ValueError(
                "all states must share the axis and both intermediate directions"
            )
    n = len(states)
    g = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            g[i, j] = np.vdot(states[i].tensor, states[j].tensor)
    return g
