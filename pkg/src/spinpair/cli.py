"""Command line front end.

Subcommands
-----------
state          assemble a compound state and print its tensor
operator       build the observable blocks for both subsystems
probabilities  joint outcome probabilities for two measurement directions
expect         expectation value via the matrix and probability routes
verify         run the self-verification suite (exit 2 on any failure)
scan           sweep one angle parameter, one record per point

Angles are radians unless suffixed with ``deg`` (``--c2 60deg,0``).  A JSON
config file supplies defaults for any flag; flags given on the command line
win.  Output goes to stdout as JSON Lines or CSV; complex numbers appear as
(re, im) pairs in JSON and as paired _re/_im columns in CSV.  Every record
carries a timestamp field, which is the only part of the output that varies
between identically configured runs.

Exit status: 0 success, 1 usage error, 2 verification failure, 3 internal
consistency error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Any

import numpy as np

from . import __version__, verify as verify_mod
from .directions import Direction, Z_AXIS
from .expectation import (
    InternalConsistencyError,
    expectation_matrix,
    expectation_oracle,
    outcome_probabilities,
    verify_basis_invariance,
)
from .kernels import CompoundLabel
from .operators import MeasurementSpec, OutcomeValues, operator_pair
from .states import assemble_state

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_INTERNAL = 3

_SWEEP_PARAMS = tuple(
    f"{obj}.{field}" for obj in ("a", "c1", "c2", "d", "f") for field in ("theta", "phi")
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UsageError(message)


@dataclass(frozen=True)
class SweepSpec:
    param: str
    start: float
    stop: float
    steps: int


@dataclass(frozen=True)
class RunConfig:
    command: str
    output_format: str = "json"
    seed: int | None = None
    tolerances: dict[str, float] | None = None
    label: CompoundLabel | None = None
    spec: MeasurementSpec | None = None
    d: Direction = Z_AXIS
    f: Direction = Z_AXIS
    grid: int = 1
    sweep: SweepSpec | None = None


# ---------------------------------------------------------------------------
# field parsing


def _parse_float(token, field: str) -> float:
    try:
        return float(token)
    except (TypeError, ValueError):
        raise UsageError(f"{field}: malformed number {token!r}") from None


def _parse_angle(token, field: str) -> float:
    if isinstance(token, bool):
        raise UsageError(f"{field}: malformed angle {token!r}")
    if isinstance(token, (int, float)):
        return float(token)
    text = str(token).strip()
    if text.lower().endswith("deg"):
        return math.radians(_parse_float(text[:-3], field))
    return _parse_float(text, field)


def _parse_direction(value, field: str) -> Direction:
    if isinstance(value, Direction):
        return value
    if isinstance(value, dict):
        extra = set(value) - {"theta", "phi"}
        if extra:
            raise UsageError(f"{field}: unknown keys {sorted(extra)}")
        return Direction(
            _parse_angle(value.get("theta", 0.0), f"{field}.theta"),
            _parse_angle(value.get("phi", 0.0), f"{field}.phi"),
        )
    if isinstance(value, str):
        parts = value.split(",")
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise UsageError(f"{field}: expected 'theta,phi', got {value!r}")
    if len(parts) != 2:
        raise UsageError(f"{field}: expected two comma-separated angles, got {value!r}")
    return Direction(
        _parse_angle(parts[0], f"{field}.theta"), _parse_angle(parts[1], f"{field}.phi")
    )


def _parse_values(value, field: str) -> OutcomeValues:
    if isinstance(value, OutcomeValues):
        return value
    if isinstance(value, dict):
        extra = set(value) - {"plus", "minus"}
        if extra:
            raise UsageError(f"{field}: unknown keys {sorted(extra)}")
        pair = (value.get("plus", 1.0), value.get("minus", -1.0))
    elif isinstance(value, str):
        pair = value.split(",")
    elif isinstance(value, (list, tuple)):
        pair = list(value)
    else:
        raise UsageError(f"{field}: expected 'r_plus,r_minus', got {value!r}")
    if len(pair) != 2:
        raise UsageError(f"{field}: expected two comma-separated values, got {value!r}")
    try:
        return OutcomeValues(
            _parse_float(pair[0], f"{field}.plus"), _parse_float(pair[1], f"{field}.minus")
        )
    except ValueError as exc:
        raise UsageError(f"{field}: {exc}") from None


def _parse_tolerances(entries, field: str) -> dict[str, float]:
    out: dict[str, float] = {}
    if entries is None:
        return out
    if isinstance(entries, dict):
        items = entries.items()
    else:
        items = []
        for entry in entries:
            if "=" not in str(entry):
                raise UsageError(f"{field}: expected NAME=VALUE, got {entry!r}")
            name, _, value = str(entry).partition("=")
            items.append((name.strip(), value))
    for name, value in items:
        if name not in verify_mod.DEFAULT_TOLERANCES:
            raise UsageError(f"{field}: unknown check {name!r}")
        out[name] = _parse_float(value, f"{field}.{name}")
    return out


# ---------------------------------------------------------------------------
# argument and config handling


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with defaults for any flag")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--seed", type=int, default=None)

    label_args = argparse.ArgumentParser(add_help=False)
    label_args.add_argument("--s", default=None, help="total spin, 0 or 1")
    label_args.add_argument("--M", default=None, help="magnetic quantum number")
    label_args.add_argument("--a", default=None, help="quantization axis 'theta,phi'")

    df_args = argparse.ArgumentParser(add_help=False)
    df_args.add_argument("--d", default=None, help="first intermediate direction")
    df_args.add_argument("--f", default=None, help="second intermediate direction")

    meas_args = argparse.ArgumentParser(add_help=False)
    meas_args.add_argument("--c1", default=None, help="first measured direction")
    meas_args.add_argument("--c2", default=None, help="second measured direction")

    value_args = argparse.ArgumentParser(add_help=False)
    value_args.add_argument("--r1", default=None, help="outcome values 'plus,minus'")
    value_args.add_argument("--r2", default=None, help="outcome values 'plus,minus'")

    parser = _Parser(
        prog="spinpair",
        description="States, observables and correlations of a coupled spin-1/2 pair.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("state", parents=[common, label_args, df_args])
    sub.add_parser("operator", parents=[common, df_args, meas_args, value_args])
    sub.add_parser("probabilities", parents=[common, label_args, meas_args])

    expect = sub.add_parser(
        "expect", parents=[common, label_args, df_args, meas_args, value_args]
    )
    expect.add_argument(
        "--grid",
        default=None,
        help="sample an NxN grid of intermediate pairs for the invariance residual",
    )

    verify = sub.add_parser("verify", parents=[common])
    verify.add_argument(
        "--tol",
        action="append",
        default=None,
        metavar="NAME=VALUE",
        help="override one check tolerance (repeatable)",
    )

    scan = sub.add_parser(
        "scan", parents=[common, label_args, df_args, meas_args, value_args]
    )
    scan.add_argument("--param", default=None, help="one of " + ", ".join(_SWEEP_PARAMS))
    scan.add_argument("--start", default=None)
    scan.add_argument("--stop", default=None)
    scan.add_argument("--steps", default=None)
    return parser


def _load_config_file(path: str) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path!r} ({exc})") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--config: invalid JSON in {path!r} ({exc})") from None
    if not isinstance(data, dict):
        raise UsageError("--config: top level must be a JSON object")
    return data


def _parse_int(token, field: str) -> int:
    try:
        return int(str(token), 10)
    except (TypeError, ValueError):
        raise UsageError(f"{field}: malformed integer {token!r}") from None


def parse_config(argv=None) -> RunConfig:
    """Turn argv (plus an optional config file) into a validated RunConfig."""
    args = _build_parser().parse_args(argv)
    file_cfg = _load_config_file(args.config) if args.config else {}

    def opt(key: str, fallback=None):
        value = getattr(args, key, None)
        if value is None:
            value = file_cfg.get(key, fallback)
        return value

    command = args.command
    output_format = opt("format", "json")
    if output_format not in ("json", "csv"):
        raise UsageError(f"--format: expected json or csv, got {output_format!r}")
    seed = opt("seed")
    if seed is not None:
        seed = _parse_int(seed, "--seed")

    config = RunConfig(command=command, output_format=output_format, seed=seed)

    if command in ("state", "probabilities", "expect", "scan"):
        s = opt("s")
        M = opt("M")
        if s is None:
            raise UsageError(f"--s is required for {command}")
        if M is None:
            raise UsageError(f"--M is required for {command}")
        try:
            label = CompoundLabel(
                _parse_int(s, "--s"),
                _parse_int(M, "--M"),
                _parse_direction(opt("a", "0,0"), "--a"),
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        config = replace(config, label=label)

    if command in ("operator", "probabilities", "expect", "scan"):
        c1 = opt("c1")
        c2 = opt("c2")
        if c1 is None or c2 is None:
            raise UsageError(f"--c1 and --c2 are required for {command}")
        spec = MeasurementSpec(
            _parse_direction(c1, "--c1"),
            _parse_direction(c2, "--c2"),
            _parse_values(opt("r1", "1,-1"), "--r1"),
            _parse_values(opt("r2", "1,-1"), "--r2"),
        )
        config = replace(config, spec=spec)

    if command in ("state", "operator", "expect", "scan"):
        config = replace(
            config,
            d=_parse_direction(opt("d", "0,0"), "--d"),
            f=_parse_direction(opt("f", "0,0"), "--f"),
        )

    if command == "expect":
        grid = _parse_int(opt("grid", 1), "--grid")
        if grid < 1:
            raise UsageError("--grid: must be at least 1")
        config = replace(config, grid=grid)

    if command == "verify":
        config = replace(config, tolerances=_parse_tolerances(opt("tol"), "--tol"))

    if command == "scan":
        param = opt("param")
        if param is None:
            raise UsageError("--param is required for scan")
        if param not in _SWEEP_PARAMS:
            raise UsageError(
                f"--param: unknown parameter {param!r}, expected one of "
                + ", ".join(_SWEEP_PARAMS)
            )
        start = opt("start")
        stop = opt("stop")
        steps = opt("steps")
        if start is None or stop is None or steps is None:
            raise UsageError("--start, --stop and --steps are required for scan")
        steps = _parse_int(steps, "--steps")
        if steps < 2:
            raise UsageError("--steps: must be at least 2")
        sweep = SweepSpec(
            param,
            _parse_angle(start, "--start"),
            _parse_angle(stop, "--stop"),
            steps,
        )
        config = replace(config, sweep=sweep)

    return config


# ---------------------------------------------------------------------------
# output encoding


def _to_jsonable(value):
    if isinstance(value, dict):
        return {k: _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [_to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, complex):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _flatten(record: dict[str, Any]) -> dict[str, Any]:
    flat: dict[str, Any] = {}

    def add(key: str, value):
        if isinstance(value, np.ndarray):
            if value.ndim == 1:
                for i, v in enumerate(value.tolist()):
                    add(f"{key}_{i}", v)
            elif value.ndim == 2:
                for i in range(value.shape[0]):
                    for j in range(value.shape[1]):
                        add(f"{key}_{i}{j}", value[i, j].item())
            else:
                raise ValueError(f"cannot flatten array of shape {value.shape}")
        elif isinstance(value, (list, tuple)):
            for i, v in enumerate(value):
                add(f"{key}_{i}", v)
        elif isinstance(value, complex):
            flat[f"{key}_re"] = float(value.real)
            flat[f"{key}_im"] = float(value.imag)
        elif isinstance(value, np.floating):
            flat[key] = float(value)
        elif isinstance(value, (np.integer, np.bool_)):
            flat[key] = value.item()
        else:
            flat[key] = value
    for k, v in record.items():
        add(k, v)
    return flat


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def emit_records(records, output_format: str, out) -> None:
    if output_format == "json":
        for record in records:
            out.write(json.dumps(_to_jsonable(record), separators=(",", ":")) + "\n")
        return
    rows = [_flatten(r) for r in records]
    header = list(rows[0])
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if list(row) != header:
            raise ValueError("records in one CSV stream must share a schema")
        writer.writerow([_cell(row[k]) for k in header])


# ---------------------------------------------------------------------------
# commands


def _echo_direction(prefix: str, d: Direction) -> dict[str, float]:
    return {f"{prefix}_theta": d.theta, f"{prefix}_phi": d.phi}


def _echo_label(label: CompoundLabel) -> dict[str, Any]:
    return {"s": label.s, "M": label.M, **_echo_direction("a", label.axis)}


def _echo_values(prefix: str, v: OutcomeValues) -> dict[str, float]:
    return {f"{prefix}_plus": v.r_plus, f"{prefix}_minus": v.r_minus}


def _echo_spec(spec: MeasurementSpec) -> dict[str, Any]:
    return {
        **_echo_direction("c1", spec.c1),
        **_echo_direction("c2", spec.c2),
        **_echo_values("r1", spec.values1),
        **_echo_values("r2", spec.values2),
    }


def _metadata(config: RunConfig, timestamp: str) -> dict[str, Any]:
    return {"version": __version__, "seed": config.seed, "timestamp": timestamp}


def _expect_payload(label, spec, d, f) -> dict[str, Any]:
    report = verify_basis_invariance(label, spec, [(d, f)])
    return {
        "value_matrix_path": report.value_matrix_path,
        "value_oracle_path": report.value_oracle_path,
        "residual": report.residual,
        "basis_invariance_residual": report.basis_invariance_residual,
        "probabilities": list(report.probabilities),
    }


def _cmd_state(config: RunConfig, timestamp: str):
    asm = assemble_state(config.label, config.d, config.f)
    record = {
        "command": "state",
        **_echo_label(config.label),
        **_echo_direction("d", config.d),
        **_echo_direction("f", config.f),
        "coefficients": np.array([t.coefficient for t in asm.terms]),
        "tensor": asm.tensor,
        "norm_sq": float(np.vdot(asm.tensor, asm.tensor).real),
        **_metadata(config, timestamp),
    }
    return [record], EXIT_OK


def _cmd_operator(config: RunConfig, timestamp: str):
    r1, r2 = operator_pair(config.spec, config.d, config.f)
    record = {
        "command": "operator",
        **_echo_direction("d", config.d),
        **_echo_direction("f", config.f),
        **_echo_spec(config.spec),
        "r1": r1,
        "r2": r2,
        **_metadata(config, timestamp),
    }
    return [record], EXIT_OK


def _cmd_probabilities(config: RunConfig, timestamp: str):
    p = outcome_probabilities(config.label, config.spec.c1, config.spec.c2)
    record = {
        "command": "probabilities",
        **_echo_label(config.label),
        **_echo_direction("c1", config.spec.c1),
        **_echo_direction("c2", config.spec.c2),
        "probabilities": p,
        "prob_sum": float(np.sum(p)),
        **_metadata(config, timestamp),
    }
    return [record], EXIT_OK


def _grid_pairs(config: RunConfig):
    if config.grid == 1:
        return [(config.d, config.f)]
    rng = np.random.default_rng(config.seed or 0)

    def rand():
        return Direction(rng.uniform(0.0, math.pi), rng.uniform(0.0, 2.0 * math.pi))

    ds = [config.d] + [rand() for _ in range(config.grid - 1)]
    fs = [config.f] + [rand() for _ in range(config.grid - 1)]
    return [(d, f) for d in ds for f in fs]


def _cmd_expect(config: RunConfig, timestamp: str):
    report = verify_basis_invariance(config.label, config.spec, _grid_pairs(config))
    record = {
        "command": "expect",
        **_echo_label(config.label),
        **_echo_direction("d", config.d),
        **_echo_direction("f", config.f),
        **_echo_spec(config.spec),
        "grid": config.grid,
        "value_matrix_path": report.value_matrix_path,
        "value_oracle_path": report.value_oracle_path,
        "residual": report.residual,
        "basis_invariance_residual": report.basis_invariance_residual,
        "probabilities": list(report.probabilities),
        **_metadata(config, timestamp),
    }
    return [record], EXIT_OK


def _cmd_verify(config: RunConfig, timestamp: str):
    seed = 0 if config.seed is None else config.seed
    results = verify_mod.run_verification(seed, config.tolerances)
    records = []
    for res in results:
        records.append(
            {
                "command": "verify",
                "check": res.name,
                "samples": res.samples,
                "max_residual": res.max_residual,
                "tolerance": res.tolerance,
                "passed": res.passed,
                "version": __version__,
                "seed": seed,
                "timestamp": timestamp,
            }
        )
    failed = [r.name for r in results if not r.passed]
    summary = f"{len(results) - len(failed)}/{len(results)} checks passed (seed={seed})"
    if failed:
        summary += "; FAILED: " + ", ".join(failed)
    print(summary, file=sys.stderr)
    return records, (EXIT_VERIFY if failed else EXIT_OK)


def _apply_sweep(config: RunConfig, value: float) -> RunConfig:
    obj, _, field = config.sweep.param.partition(".")

    def moved(direction: Direction) -> Direction:
        if field == "theta":
            return Direction(value, direction.phi)
        return Direction(direction.theta, value)

    if obj == "a":
        label = config.label
        return replace(
            config, label=CompoundLabel(label.s, label.M, moved(label.axis))
        )
    if obj == "c1":
        return replace(config, spec=replace(config.spec, c1=moved(config.spec.c1)))
    if obj == "c2":
        return replace(config, spec=replace(config.spec, c2=moved(config.spec.c2)))
    if obj == "d":
        return replace(config, d=moved(config.d))
    return replace(config, f=moved(config.f))


def _cmd_scan(config: RunConfig, timestamp: str):
    records = []
    for value in np.linspace(config.sweep.start, config.sweep.stop, config.sweep.steps):
        point = _apply_sweep(config, float(value))
        records.append(
            {
                "command": "scan",
                "param": config.sweep.param,
                "value": float(value),
                **_echo_label(point.label),
                **_echo_direction("d", point.d),
                **_echo_direction("f", point.f),
                **_echo_spec(point.spec),
                **_expect_payload(point.label, point.spec, point.d, point.f),
                **_metadata(config, timestamp),
            }
        )
    return records, EXIT_OK


_COMMANDS = {
    "state": _cmd_state,
    "operator": _cmd_operator,
    "probabilities": _cmd_probabilities,
    "expect": _cmd_expect,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


def run(config: RunConfig) -> int:
    """Execute a parsed RunConfig, writing records to stdout."""
    timestamp = datetime.now(timezone.utc).isoformat()
    records, code = _COMMANDS[config.command](config, timestamp)
    emit_records(records, config.output_format, sys.stdout)
    return code


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run(config)
    except InternalConsistencyError as exc:
        record = {
            "command": config.command,
            "error": "internal-consistency",
            "detail": str(exc),
            "version": __version__,
            "seed": config.seed,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        emit_records([record], config.output_format, sys.stdout)
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def console_main() -> None:
    raise SystemExit(main())
