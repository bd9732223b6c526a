"""Self-verification sweeps behind the command line ``verify`` entry point.

Each check draws its samples from a shared seeded generator, records the
worst residual it saw and passes when that residual is within tolerance.
Kernel and engine functions are looked up through their modules at call
time, so a harness that swaps one out (to confirm the suite notices) does
not need to reload anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import expectation, kernels, operators, states
from .directions import Direction, Z_AXIS, angle_between
from .kernels import B_INDEX_ORDER, MINUS, PLUS, CompoundLabel, SQRT_HALF
from .operators import MeasurementSpec, OutcomeValues

DEFAULT_TOLERANCES: dict[str, float] = {
    "kernel_unitarity": 1e-12,
    "kernel_hermiticity": 1e-12,
    "kernel_composition": 1e-12,
    "zeta_normalization": 1e-12,
    "clebsch_gordan_table": 1e-15,
    "clebsch_gordan_orthonormality": 1e-15,
    "chi_completeness": 1e-12,
    "state_normalization": 1e-12,
    "state_orthonormality": 1e-12,
    "standard_form_states": 1e-15,
    "standard_form_operators": 1e-15,
    "axis_aligned_states": 1e-12,
    "operator_hermiticity": 1e-12,
    "operator_spectrum": 1e-10,
    "operator_covariance": 1e-12,
    "oracle_equivalence": 1e-10,
    "basis_invariance": 1e-10,
    "probability_completeness": 1e-12,
    "singlet_cosine_law": 1e-10,
    "singlet_rotation_invariance": 1e-12,
    "chsh_extremum": 1e-10,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool


def _result(name: str, samples: int, worst: float, tol: float) -> CheckResult:
    worst = float(worst)
    return CheckResult(name, samples, worst, tol, bool(worst <= tol))


def _random_direction(rng: np.random.Generator) -> Direction:
    return Direction(rng.uniform(0.0, math.pi), rng.uniform(0.0, 2.0 * math.pi))


def _four_labels(axis: Direction) -> list[CompoundLabel]:
    return [
        CompoundLabel(1, 1, axis),
        CompoundLabel(1, 0, axis),
        CompoundLabel(1, -1, axis),
        CompoundLabel(0, 0, axis),
    ]


def _random_spec(rng: np.random.Generator) -> MeasurementSpec:
    return MeasurementSpec(
        _random_direction(rng),
        _random_direction(rng),
        OutcomeValues(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)),
        OutcomeValues(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)),
    )


# ---------------------------------------------------------------------------
# kernel identities


def _check_kernel_unitarity(rng, tol, samples=1000):
    worst = 0.0
    eye = np.eye(2)
    for _ in range(samples):
        x = kernels.xi_half(_random_direction(rng), _random_direction(rng))
        worst = max(worst, np.max(np.abs(x @ x.conj().T - eye)))
    return _result("kernel_unitarity", samples, worst, tol)


def _check_kernel_hermiticity(rng, tol, samples=1000):
    worst = 0.0
    for _ in range(samples):
        i, f = _random_direction(rng), _random_direction(rng)
        worst = max(
            worst, np.max(np.abs(kernels.xi_half(f, i) - kernels.xi_half(i, f).conj().T))
        )
    return _result("kernel_hermiticity", samples, worst, tol)


def _check_kernel_composition(rng, tol, samples=1000):
    worst = 0.0
    for _ in range(samples):
        a, b, c = (_random_direction(rng) for _ in range(3))
        direct = kernels.xi_half(a, c)
        chained = kernels.xi_half(a, b) @ kernels.xi_half(b, c)
        worst = max(worst, np.max(np.abs(direct - chained)))
    return _result("kernel_composition", samples, worst, tol)


def _check_zeta_normalization(rng, tol, samples=100):
    worst = 0.0
    for _ in range(samples):
        a = _random_direction(rng)
        for m in (1, 0, -1):
            z = kernels.zeta_spin1(m, a)
            worst = max(worst, abs(np.sum(np.abs(z) ** 2) - 1.0))
    return _result("zeta_normalization", 3 * samples, worst, tol)


def _check_clebsch_gordan_table(rng, tol, samples=16):
    cg = kernels.clebsch_gordan_half_half
    expected = [
        (1, 1, PLUS, PLUS, 1.0),
        (1, 1, PLUS, MINUS, 0.0),
        (1, 1, MINUS, PLUS, 0.0),
        (1, 1, MINUS, MINUS, 0.0),
        (1, 0, PLUS, PLUS, 0.0),
        (1, 0, PLUS, MINUS, SQRT_HALF),
        (1, 0, MINUS, PLUS, SQRT_HALF),
        (1, 0, MINUS, MINUS, 0.0),
        (1, -1, PLUS, PLUS, 0.0),
        (1, -1, PLUS, MINUS, 0.0),
        (1, -1, MINUS, PLUS, 0.0),
        (1, -1, MINUS, MINUS, 1.0),
        (0, 0, PLUS, PLUS, 0.0),
        (0, 0, PLUS, MINUS, SQRT_HALF),
        (0, 0, MINUS, PLUS, -SQRT_HALF),
        (0, 0, MINUS, MINUS, 0.0),
    ]
    worst = max(abs(cg(s, M, m1, m2) - want) for s, M, m1, m2, want in expected)
    return _result("clebsch_gordan_table", len(expected), worst, tol)


def _check_clebsch_gordan_orthonormality(rng, tol, samples=1):
    rows = []
    for s, M in ((1, 1), (1, 0), (1, -1), (0, 0)):
        rows.append(
            [kernels.clebsch_gordan_half_half(s, M, m1, m2) for m1, m2 in B_INDEX_ORDER]
        )
    t = np.array(rows)
    worst = np.max(np.abs(t @ t.T - np.eye(4)))
    return _result("clebsch_gordan_orthonormality", samples, worst, tol)


def _check_chi_completeness(rng, tol, samples=100):
    worst = 0.0
    for _ in range(samples):
        for label in _four_labels(_random_direction(rng)):
            total = sum(
                abs(kernels.chi(label, m1, m2)) ** 2 for m1, m2 in B_INDEX_ORDER
            )
            worst = max(worst, abs(total - 1.0))
    return _result("chi_completeness", 4 * samples, worst, tol)


# ---------------------------------------------------------------------------
# assembled states


def _check_state_normalization(rng, tol, samples=100):
    worst = 0.0
    for _ in range(samples):
        d, f = _random_direction(rng), _random_direction(rng)
        for label in _four_labels(_random_direction(rng)):
            t = states.assemble_state(label, d, f).tensor
            worst = max(worst, abs(np.vdot(t, t).real - 1.0))
    return _result("state_normalization", 4 * samples, worst, tol)


def _check_state_orthonormality(rng, tol, samples=100):
    worst = 0.0
    eye = np.eye(4)
    for _ in range(samples):
        axis, d, f = (_random_direction(rng) for _ in range(3))
        four = [states.assemble_state(lb, d, f) for lb in _four_labels(axis)]
        worst = max(worst, np.max(np.abs(states.gram_matrix(four) - eye)))
    return _result("state_orthonormality", samples, worst, tol)


_STANDARD_TENSORS = (
    np.array([1.0, 0.0, 0.0, 0.0], dtype=complex),
    np.array([0.0, SQRT_HALF, SQRT_HALF, 0.0], dtype=complex),
    np.array([0.0, 0.0, 0.0, -1.0], dtype=complex),
    np.array([0.0, SQRT_HALF, -SQRT_HALF, 0.0], dtype=complex),
)


def _check_standard_form_states(rng, tol, samples=4):
    worst = 0.0
    for label, want in zip(_four_labels(Z_AXIS), _STANDARD_TENSORS):
        got = states.assemble_state(label, Z_AXIS, Z_AXIS).tensor
        worst = max(worst, np.max(np.abs(got - want)))
    return _result("standard_form_states", samples, worst, tol)


def _check_standard_form_operators(rng, tol, samples=200):
    worst = 0.0
    values = OutcomeValues(1.0, -1.0)
    for _ in range(samples):
        c = _random_direction(rng)
        want = np.array(
            [
                [math.cos(c.theta), math.sin(c.theta) * np.exp(-1j * c.phi)],
                [math.sin(c.theta) * np.exp(1j * c.phi), -math.cos(c.theta)],
            ]
        )
        got = operators.r_matrix(Z_AXIS, c, values)
        worst = max(worst, np.max(np.abs(got - want)))
    return _result("standard_form_operators", samples, worst, tol)


def _check_axis_aligned_states(rng, tol, samples=100):
    coeff_patterns = (
        np.array([1.0, 0.0, 0.0, 0.0]),
        np.array([0.0, SQRT_HALF, SQRT_HALF, 0.0]),
        np.array([0.0, 0.0, 0.0, -1.0]),
        np.array([0.0, SQRT_HALF, -SQRT_HALF, 0.0]),
    )
    worst = 0.0
    for _ in range(samples):
        d, f = _random_direction(rng), _random_direction(rng)
        etas = {
            (k, m): kernels.eta_from_z(m, dir_)
            for k, dir_ in (("d", d), ("f", f))
            for m in (PLUS, MINUS)
        }
        for label, pattern in zip(_four_labels(Z_AXIS), coeff_patterns):
            asm = states.reduce_axis_aligned(label, d, f)
            coeffs = np.array([t.coefficient for t in asm.terms])
            worst = max(worst, np.max(np.abs(coeffs - pattern)))
            want = np.zeros(4, dtype=complex)
            for c, (m1, m2) in zip(pattern, B_INDEX_ORDER):
                want += c * np.kron(etas[("d", m1)], etas[("f", m2)])
            worst = max(worst, np.max(np.abs(asm.tensor - want)))
    return _result("axis_aligned_states", 4 * samples, worst, tol)


# ---------------------------------------------------------------------------
# observable operators


def _check_operator_hermiticity(rng, tol, samples=300):
    worst = 0.0
    for _ in range(samples):
        r = operators.r_matrix(
            _random_direction(rng),
            _random_direction(rng),
            OutcomeValues(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)),
        )
        worst = max(worst, np.max(np.abs(r - r.conj().T)))
    return _result("operator_hermiticity", samples, worst, tol)


def _check_operator_spectrum(rng, tol, samples=300):
    worst = 0.0
    for _ in range(samples):
        values = OutcomeValues(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
        r = operators.r_matrix(_random_direction(rng), _random_direction(rng), values)
        eig = np.sort(np.linalg.eigvalsh(r))
        want = np.sort(values.as_array())
        worst = max(worst, np.max(np.abs(eig - want)))
    return _result("operator_spectrum", samples, worst, tol)


def _check_operator_covariance(rng, tol, samples=300):
    # Rebasing the block from intermediate d1 to d2 conjugates it by the
    # complex conjugate of the direction-change matrix between them.
    worst = 0.0
    for _ in range(samples):
        d1, d2, c = (_random_direction(rng) for _ in range(3))
        values = OutcomeValues(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
        r1 = operators.r_matrix(d1, c, values)
        r2 = operators.r_matrix(d2, c, values)
        v = kernels.xi_half(d2, d1).conj()
        worst = max(worst, np.max(np.abs(r2 - v @ r1 @ v.conj().T)))
    return _result("operator_covariance", samples, worst, tol)


# ---------------------------------------------------------------------------
# expectation engine


def _check_oracle_equivalence(rng, tol, samples=1000):
    worst = 0.0
    for _ in range(samples):
        s, M = ((1, 1), (1, 0), (1, -1), (0, 0))[rng.integers(0, 4)]
        label = CompoundLabel(s, M, _random_direction(rng))
        spec = _random_spec(rng)
        d, f = _random_direction(rng), _random_direction(rng)
        matrix = expectation.expectation_matrix(label, spec, d, f)
        oracle = expectation.expectation_oracle(label, spec)
        worst = max(worst, abs(matrix - oracle))
    return _result("oracle_equivalence", samples, worst, tol)


def _check_basis_invariance(rng, tol, samples=100):
    worst = 0.0
    for _ in range(samples):
        s, M = ((1, 1), (1, 0), (1, -1), (0, 0))[rng.integers(0, 4)]
        label = CompoundLabel(s, M, _random_direction(rng))
        spec = _random_spec(rng)
        ds = [_random_direction(rng) for _ in range(5)]
        fs = [_random_direction(rng) for _ in range(5)]
        report = expectation.verify_basis_invariance(label, spec, product(ds, fs))
        worst = max(worst, report.basis_invariance_residual)
    return _result("basis_invariance", samples, worst, tol)


def _check_probability_completeness(rng, tol, samples=100):
    worst = 0.0
    for _ in range(samples):
        c1, c2 = _random_direction(rng), _random_direction(rng)
        for label in _four_labels(_random_direction(rng)):
            p = expectation.outcome_probabilities(label, c1, c2)
            worst = max(worst, abs(float(np.sum(p)) - 1.0))
            worst = max(worst, max(0.0, float(np.max(p)) - 1.0))
            worst = max(worst, max(0.0, -float(np.min(p))))
    return _result("probability_completeness", 4 * samples, worst, tol)


def _check_singlet_cosine_law(rng, tol, samples=181):
    worst = 0.0
    label = CompoundLabel(0, 0, Z_AXIS)
    vals = OutcomeValues(1.0, -1.0)
    for theta in np.linspace(0.0, math.pi, samples):
        c1 = Z_AXIS
        c2 = Direction(float(theta), 0.0)
        spec = MeasurementSpec(c1, c2, vals, vals)
        d, f = _random_direction(rng), _random_direction(rng)
        want = -math.cos(angle_between(c1, c2))
        worst = max(worst, abs(expectation.expectation_matrix(label, spec, d, f) - want))
        worst = max(worst, abs(expectation.expectation_oracle(label, spec) - want))
    return _result("singlet_cosine_law", samples, worst, tol)


def _check_singlet_rotation_invariance(rng, tol, samples=100):
    worst = 0.0
    for _ in range(samples):
        c1, c2 = _random_direction(rng), _random_direction(rng)
        delta = rng.uniform(0.0, 2.0 * math.pi)
        base = expectation.singlet_expectation(c1, c2)
        turned = expectation.singlet_expectation(
            Direction(c1.theta, c1.phi + delta), Direction(c2.theta, c2.phi + delta)
        )
        worst = max(worst, abs(base - turned))
    return _result("singlet_rotation_invariance", samples, worst, tol)


def _check_chsh_extremum(rng, tol, samples=1):
    # Coplanar settings 45 degrees apart saturate the 2*sqrt(2) bound; the
    # sign of the combination depends on which settings are primed.
    s = expectation.chsh_value(
        Direction(math.pi / 2, 0.0),
        Direction(0.0, 0.0),
        Direction(math.pi / 4, 0.0),
        Direction(3.0 * math.pi / 4, 0.0),
    )
    worst = abs(abs(s) - 2.0 * math.sqrt(2.0))
    return _result("chsh_extremum", samples, worst, tol)


_CHECKS = (
    ("kernel_unitarity", _check_kernel_unitarity),
    ("kernel_hermiticity", _check_kernel_hermiticity),
    ("kernel_composition", _check_kernel_composition),
    ("zeta_normalization", _check_zeta_normalization),
    ("clebsch_gordan_table", _check_clebsch_gordan_table),
    ("clebsch_gordan_orthonormality", _check_clebsch_gordan_orthonormality),
    ("chi_completeness", _check_chi_completeness),
    ("state_normalization", _check_state_normalization),
    ("state_orthonormality", _check_state_orthonormality),
    ("standard_form_states", _check_standard_form_states),
    ("standard_form_operators", _check_standard_form_operators),
    ("axis_aligned_states", _check_axis_aligned_states),
    ("operator_hermiticity", _check_operator_hermiticity),
    ("operator_spectrum", _check_operator_spectrum),
    ("operator_covariance", _check_operator_covariance),
    ("oracle_equivalence", _check_oracle_equivalence),
    ("basis_invariance", _check_basis_invariance),
    ("probability_completeness", _check_probability_completeness),
    ("singlet_cosine_law", _check_singlet_cosine_law),
    ("singlet_rotation_invariance", _check_singlet_rotation_invariance),
    ("chsh_extremum", _check_chsh_extremum),
)


def check_names() -> tuple[str, ...]:
    return tuple(name for name, _ in _CHECKS)


def run_verification(
    seed: int = 0, overrides: dict[str, float] | None = None
) -> list[CheckResult]:
    """Run every check with a generator seeded once at the start.

    ``overrides`` replaces the default tolerance of the named checks.
    Unknown names raise KeyError so a typo cannot silently relax anything.
    """
    overrides = dict(overrides or {})
    for name in overrides:
        if name not in DEFAULT_TOLERANCES:
            raise KeyError(f"unknown check name {name!r}")
    rng = np.random.default_rng(seed)
    results = []
    for name, fn in _CHECKS:
        tol = overrides.get(name, DEFAULT_TOLERANCES[name])
        results.append(fn(rng, tol))
    return results
