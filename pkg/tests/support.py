"""Shared strategies and draw helpers for the test suite."""

from __future__ import annotations

import math

from hypothesis import strategies as st

from spinpair import CompoundLabel, Direction

ANGLE_SPAN = 8.0 * math.pi

raw_angles = st.floats(
    min_value=-ANGLE_SPAN, max_value=ANGLE_SPAN, allow_nan=False, allow_infinity=False
)
directions = st.builds(Direction, raw_angles, raw_angles)

label_numbers = st.sampled_from(((1, 1), (1, 0), (1, -1), (0, 0)))
compound_labels = st.builds(
    lambda sm, axis: CompoundLabel(sm[0], sm[1], axis), label_numbers, directions
)


def draw_direction(rng) -> Direction:
    return Direction(rng.uniform(0.0, math.pi), rng.uniform(0.0, 2.0 * math.pi))


def four_labels(axis: Direction) -> list[CompoundLabel]:
    return [
        CompoundLabel(1, 1, axis),
        CompoundLabel(1, 0, axis),
        CompoundLabel(1, -1, axis),
        CompoundLabel(0, 0, axis),
    ]
