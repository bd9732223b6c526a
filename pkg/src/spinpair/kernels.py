"""Closed-form probability-amplitude kernels.

Everything in this module is a transition table between projection labels.
``xi_half`` is the spin-1/2 direction-change matrix that the rest of the
package is built from, ``eta_from_z`` selects its rows for a z-axis start,
``zeta_spin1`` is the spin-1 analogue used for the total spin of a coupled
pair, ``clebsch_gordan_half_half`` couples two spin-1/2 projections, and
``chi`` composes the last two into coupling coefficients referred to an
arbitrary quantization axis.

All functions are pure; return values are plain numbers or fresh numpy
arrays.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .directions import Direction

SQRT_HALF = math.sqrt(0.5)


class SpinHalfLabel(Enum):
    """Spin projection +1/2 (PLUS) or -1/2 (MINUS) along a stated direction.

    The enum value doubles as the row/column index used throughout, so the
    amplitude matrices are always ordered (plus, minus).
    """

    PLUS = 0
    MINUS = 1

    @property
    def index(self) -> int:
        return self.value

    @property
    def m(self) -> float:
        """Projection quantum number, +1/2 or -1/2."""
        return 0.5 if self is SpinHalfLabel.PLUS else -0.5


PLUS = SpinHalfLabel.PLUS
MINUS = SpinHalfLabel.MINUS

# Fixed ordering of the four joint projection labels of the pair; the first
# subsystem index is major.  Tensors, probability quadruples and coefficient
# lists all follow this order.
B_INDEX_ORDER: tuple[tuple[SpinHalfLabel, SpinHalfLabel], ...] = (
    (PLUS, PLUS),
    (PLUS, MINUS),
    (MINUS, PLUS),
    (MINUS, MINUS),
)


@dataclass(frozen=True)
class CompoundLabel:
    """Total-spin state label (s, M) referred to the quantization axis."""

    s: int
    M: int
    axis: Direction

    def __post_init__(self) -> None:
        if self.s not in (0, 1):
            raise ValueError(f"total spin s must be 0 or 1, got {self.s!r}")
        if self.M not in range(-self.s, self.s + 1):
            raise ValueError(f"M must satisfy |M| <= s, got M={self.M!r} for s={self.s}")


def xi_half(initial: Direction, final: Direction) -> np.ndarray:
    """Spin-1/2 direction-change amplitude matrix.

    Entry (p, u) is the amplitude for finding projection u along ``final``
    given projection p along ``initial``; rows and columns are ordered
    (plus, minus).  Explicitly, with half-angles c = cos(theta/2),
    s = sin(theta/2) and the phase w = exp(i (phi_i - phi_f)),

        (+,+)  c_i c_f + w s_i s_f
        (+,-) -c_i s_f + w s_i c_f
        (-,+) -s_i c_f + w c_i s_f
        (-,-)  s_i s_f + w c_i c_f

    The matrix is unitary, swapping the two directions conjugate-transposes
    it, and chaining through any intermediate direction composes as a matrix
    product.

    Parameters
    ----------
    initial, final : Direction
        Direction along which the projection is known, then measured.

    Returns
    -------
    numpy.ndarray
        Complex 2x2 matrix.
    """
    ci = math.cos(initial.theta / 2.0)
    si = math.sin(initial.theta / 2.0)
    cf = math.cos(final.theta / 2.0)
    sf = math.sin(final.theta / 2.0)
    w = cmath.exp(1j * (initial.phi - final.phi))
    return np.array(
        [
            [ci * cf + w * si * sf, -ci * sf + w * si * cf],
            [-si * cf + w * ci * sf, si * sf + w * ci * cf],
        ]
    )


def eta_from_z(m: SpinHalfLabel, final: Direction) -> np.ndarray:
    """Amplitude pair from a z-axis projection ``m`` to both ``final`` outcomes.

    Equals the corresponding row of ``xi_half(Z_AXIS, final)``:
    (cos(theta/2), -sin(theta/2)) for plus and
    (sin(theta/2), cos(theta/2)) * exp(-i phi) for minus.  Each pair has
    unit norm.
    """
    c = math.cos(final.theta / 2.0)
    s = math.sin(final.theta / 2.0)
    if m is PLUS:
        return np.array([c + 0j, -s + 0j])
    w = cmath.exp(-1j * final.phi)
    return np.array([s * w, c * w])


_M_SPIN1 = (1, 0, -1)


def zeta_spin1(M: int, a: Direction) -> np.ndarray:
    """Spin-1 direction-change amplitudes from projection M along ``a``.

    Returns the three amplitudes to the z-axis projections, ordered
    M_l = (+1, 0, -1).  Each triple has unit norm and the three triples for
    M = +1, 0, -1 form a unitary 3x3 matrix.
    """
    if M not in _M_SPIN1:
        raise ValueError(f"spin-1 projection M must be +1, 0 or -1, got {M!r}")
    th = a.theta
    c2 = math.cos(th / 2.0) ** 2
    s2 = math.sin(th / 2.0) ** 2
    s = math.sin(th)
    em = cmath.exp(-1j * a.phi)
    ep = cmath.exp(1j * a.phi)
    if M == 1:
        return np.array([c2 * em, SQRT_HALF * s + 0j, s2 * ep])
    if M == 0:
        return np.array([-SQRT_HALF * s * em, math.cos(th) + 0j, SQRT_HALF * s * ep])
    return np.array([-s2 * em, SQRT_HALF * s + 0j, -c2 * ep])


def clebsch_gordan_half_half(
    s: int, M: int, m1: SpinHalfLabel, m2: SpinHalfLabel
) -> float:
    """Coupling coefficient of two spin-1/2 projections to total spin (s, M).

    Zero whenever m1 + m2 != M.  The nonzero values are 1 for the stretched
    triplet states, 1/sqrt(2) for both orderings feeding (1, 0), and
    +-1/sqrt(2) for the singlet, the minus sign on the (minus, plus) slot.
    """
    if s not in (0, 1) or M not in range(-s, s + 1):
        raise ValueError(f"invalid total-spin labels s={s!r}, M={M!r}")
    if m1.m + m2.m != M:
        return 0.0
    if s == 1:
        return SQRT_HALF if M == 0 else 1.0
    return SQRT_HALF if m1 is PLUS else -SQRT_HALF


def chi(label: CompoundLabel, m1: SpinHalfLabel, m2: SpinHalfLabel) -> complex:
    """Coupling coefficient of the pair state (s, M) along ``label.axis``.

    For s = 1 this chains the spin-1 direction change from the axis down to
    the z basis through all three intermediate projections:

        chi = sum over M_l of zeta_spin1(M, axis)[M_l] * CG(1, M_l; m1, m2)

    For s = 0 the state carries no direction dependence and the bare
    coupling coefficient is returned.  The four values for the joint labels
    in ``B_INDEX_ORDER`` always have unit sum of squared moduli.
    """
    if label.s == 0:
        return complex(clebsch_gordan_half_half(0, 0, m1, m2))
    z = zeta_spin1(label.M, label.axis)
    total = 0j
    for zl, ml in zip(z, _M_SPIN1):
        total += zl * clebsch_gordan_half_half(1, ml, m1, m2)
    return complex(total)
