"""Command-line interface: coefficient scans, Hamiltonians, oracle checks, cancellation.

Configuration is a line-oriented ``key = value`` file with ``#`` comments and
one optional ``[field]`` section describing the laser geometry.  Unknown keys
are errors.  Physical constants are accepted as ``*_khz_over_2pi`` keys and
converted to angular frequencies once at parse time.  All emitted data files
are byte-deterministic: fixed headers, fixed ordering, floats rendered with 17
significant digits.

Exit codes: 0 success, 1 oracle-diff threshold failure, 2 configuration error,
3 numeric-domain error (pole proximity), 4 infeasible tensor cancellation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bichromatic import (
    BichromaticSpec,
    CancellationInfeasibleError,
    combined_coefficients,
    merit_scan,
    rephasing_length,
    solve_tensor_cancellation,
)
from .cg_oracle import oracle_vs_analytic_deviation
from .field_configs import (
    CounterPropCross,
    PerpendicularSoc,
    RawVector,
    SingleCircular,
    SingleLinear,
    assemble_heff,
    field_at,
)
from .hyperfine import AtomParams, derive_constants
from .shift_coefficients import (
    ComplexDetuning,
    PoleProximityError,
    a_coefficients,
    b_coefficients,
    offpole_grid,
)
from .spin_algebra import HalfInteger, make_spin_operators

TWO_PI = 2.0 * math.pi
ORACLE_DIFF_THRESHOLD = 1e-10


class ConfigError(ValueError):
    """Configuration parse or validation failure (CLI exit code 2)."""


def _sr87() -> AtomParams:
    ahf_prime = TWO_PI * -260085e3
    bhf = TWO_PI * -35667e3
    trial = AtomParams(HalfInteger(9), ahf_prime, bhf, 0.0, 1.0)
    a_hf = derive_constants(trial).a_hf
    # linewidth pinned through the loss ratio 3e-5 of the merged constant
    return AtomParams(HalfInteger(9), ahf_prime, bhf, 3e-5 * abs(a_hf), 1.0)


ATOM_PRESETS = {"sr87": _sr87}


@dataclass
class FieldSpec:
    """Raw [field] section values before they become a concrete geometry."""

    kind: Optional[str] = None
    amplitude: float = 1.0
    wavenumber: float = 1.0
    handedness: int = +1
    delta_omega: float = 0.0
    e: Optional[tuple[complex, complex, complex]] = None
    position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    time: float = 0.0


@dataclass
class RunConfig:
    """Validated key/value configuration for one CLI run."""

    atom: Optional[str] = None
    spin_twice: Optional[int] = None
    ahf_prime_khz_over_2pi: Optional[float] = None
    bhf_khz_over_2pi: Optional[float] = None
    linewidth_khz_over_2pi: Optional[float] = None
    loss_ratio: Optional[float] = None
    dge_sq: Optional[float] = None
    gamma: Optional[float] = None
    gamma_bar: Optional[float] = None
    delta_bar: Optional[float] = None
    delta_min: Optional[float] = None
    delta_max: Optional[float] = None
    steps: Optional[int] = None
    include_a: bool = False
    scan: bool = False
    delta_alpha: Optional[float] = None
    delta_beta: Optional[float] = None
    delta_small_min: Optional[float] = None
    delta_small_max: Optional[float] = None
    delta_small_steps: Optional[int] = None
    delta_rad_per_s: Optional[float] = None
    out: Optional[str] = None
    field_spec: Optional[FieldSpec] = None


def _parse_float(value: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"expected a number, got {value!r}") from exc


def _parse_int(value: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"expected an integer, got {value!r}") from exc


def _parse_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    raise ConfigError(f"expected true or false, got {value!r}")


def _parse_handedness(value: str) -> int:
    if value in ("+", "+1"):
        return +1
    if value in ("-", "-1"):
        return -1
    raise ConfigError(f"expected + or -, got {value!r}")


def _parse_complex3(value: str) -> tuple[complex, complex, complex]:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"expected three comma-separated complex numbers, got {value!r}")
    try:
        x, y, z = (complex(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad complex component in {value!r}") from exc
    return (x, y, z)


def _parse_float3(value: str) -> tuple[float, float, float]:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"expected three comma-separated numbers, got {value!r}")
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad component in {value!r}") from exc
    return (x, y, z)


_MAIN_KEYS = {
    "atom": ("atom", str),
    "spin_twice": ("spin_twice", _parse_int),
    "ahf_prime_khz_over_2pi": ("ahf_prime_khz_over_2pi", _parse_float),
    "bhf_khz_over_2pi": ("bhf_khz_over_2pi", _parse_float),
    "linewidth_khz_over_2pi": ("linewidth_khz_over_2pi", _parse_float),
    "loss_ratio": ("loss_ratio", _parse_float),
    "dge_sq": ("dge_sq", _parse_float),
    "gamma": ("gamma", _parse_float),
    "gamma_bar": ("gamma_bar", _parse_float),
    "delta_bar": ("delta_bar", _parse_float),
    "delta_min": ("delta_min", _parse_float),
    "delta_max": ("delta_max", _parse_float),
    "steps": ("steps", _parse_int),
    "include_a": ("include_a", _parse_bool),
    "scan": ("scan", _parse_bool),
    "delta_alpha": ("delta_alpha", _parse_float),
    "delta_beta": ("delta_beta", _parse_float),
    "delta_small_min": ("delta_small_min", _parse_float),
    "delta_small_max": ("delta_small_max", _parse_float),
    "delta_small_steps": ("delta_small_steps", _parse_int),
    "delta_rad_per_s": ("delta_rad_per_s", _parse_float),
    "out": ("out", str),
}

_FIELD_KEYS = {
    "kind": ("kind", str),
    "amplitude": ("amplitude", _parse_float),
    "wavenumber": ("wavenumber", _parse_float),
    "handedness": ("handedness", _parse_handedness),
    "delta_omega": ("delta_omega", _parse_float),
    "e": ("e", _parse_complex3),
    "position": ("position", _parse_float3),
    "time": ("time", _parse_float),
}


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration file body."""
    config = RunConfig()
    section = None
    seen: set[tuple[Optional[str], str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if line != "[field]":
                raise ConfigError(f"line {lineno}: unknown section {line}")
            section = "field"
            if config.field_spec is None:
                config.field_spec = FieldSpec()
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        table = _FIELD_KEYS if section == "field" else _MAIN_KEYS
        if key not in table:
            where = " in [field]" if section == "field" else ""
            raise ConfigError(f"line {lineno}: unknown key {key!r}{where}")
        if (section, key) in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        seen.add((section, key))
        attr, parser = table[key]
        try:
            parsed = parser(value)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
        if section == "field":
            setattr(config.field_spec, attr, parsed)
        else:
            setattr(config, attr, parsed)
    _validate(config)
    return config


def _validate(config: RunConfig) -> None:
    if config.atom is not None and config.atom not in ATOM_PRESETS:
        raise ConfigError(f"atom: unknown preset {config.atom!r}")
    if config.atom is not None and config.ahf_prime_khz_over_2pi is not None:
        raise ConfigError("atom: preset conflicts with explicit ahf_prime_khz_over_2pi")
    if config.spin_twice is not None and config.spin_twice < 1:
        raise ConfigError("spin_twice: must be at least 1")
    if config.steps is not None and config.steps < 1:
        raise ConfigError("steps: must be at least 1")
    if (config.delta_min is None) != (config.delta_max is None):
        raise ConfigError("delta_min/delta_max: both must be given")
    if config.delta_min is not None and not config.delta_min < config.delta_max:
        raise ConfigError("delta_min: must be strictly below delta_max")
    if config.delta_small_steps is not None and config.delta_small_steps < 1:
        raise ConfigError("delta_small_steps: must be at least 1")
    if (config.delta_small_min is None) != (config.delta_small_max is None):
        raise ConfigError("delta_small_min/delta_small_max: both must be given")
    if (config.delta_small_min is not None
            and not config.delta_small_min < config.delta_small_max):
        raise ConfigError("delta_small_min: must be strictly below delta_small_max")
    if config.gamma_bar is not None and config.gamma_bar < 0:
        raise ConfigError("gamma_bar: must be non-negative")
    if config.loss_ratio is not None and config.loss_ratio < 0:
        raise ConfigError("loss_ratio: must be non-negative")
    if config.field_spec is not None and config.field_spec.kind is not None:
        _build_field(config.field_spec)  # reject bad geometry early


def resolve_atom(config: RunConfig) -> Optional[AtomParams]:
    """Concrete atom constants, from the preset or the explicit physical keys."""
    if config.atom is not None:
        return ATOM_PRESETS[config.atom]()
    if config.ahf_prime_khz_over_2pi is None:
        return None
    if config.spin_twice is None:
        raise ConfigError("spin_twice: required with explicit atom constants")
    ahf_prime = TWO_PI * config.ahf_prime_khz_over_2pi * 1e3
    bhf = TWO_PI * (config.bhf_khz_over_2pi or 0.0) * 1e3
    dge_sq = config.dge_sq if config.dge_sq is not None else 1.0
    trial = AtomParams(HalfInteger(config.spin_twice), ahf_prime, bhf, 0.0, dge_sq)
    if config.linewidth_khz_over_2pi is not None:
        linewidth = TWO_PI * config.linewidth_khz_over_2pi * 1e3
    elif config.loss_ratio is not None:
        linewidth = config.loss_ratio * abs(derive_constants(trial).a_hf)
    else:
        linewidth = 0.0
    return AtomParams(HalfInteger(config.spin_twice), ahf_prime, bhf, linewidth, dge_sq)


def resolve_spin_gamma(config: RunConfig) -> tuple[HalfInteger, float, float]:
    """(spin, gamma, gamma_bar) from the preset, explicit constants, or bare overrides."""
    atom = resolve_atom(config)
    if atom is not None:
        consts = derive_constants(atom)
        spin = atom.spin
        gamma = config.gamma if config.gamma is not None else consts.gamma
        if config.gamma_bar is not None:
            gamma_bar = config.gamma_bar
        else:
            gamma_bar = atom.linewidth / abs(consts.a_hf)
        return spin, gamma, gamma_bar
    if config.spin_twice is None:
        raise ConfigError("spin_twice: required (or give an atom preset)")
    if config.gamma is None:
        raise ConfigError("gamma: required without atom constants")
    return (HalfInteger(config.spin_twice), config.gamma,
            config.gamma_bar if config.gamma_bar is not None else 0.0)


def _build_field(spec: FieldSpec):
    if spec.kind is None:
        raise ConfigError("kind: required in [field] section")
    if spec.kind == "single_linear":
        return SingleLinear(spec.amplitude, spec.wavenumber)
    if spec.kind == "single_circular":
        return SingleCircular(spec.amplitude, spec.wavenumber, spec.handedness)
    if spec.kind == "counterprop_cross":
        return CounterPropCross(spec.amplitude, spec.wavenumber)
    if spec.kind == "perpendicular_soc":
        return PerpendicularSoc(spec.amplitude, spec.wavenumber, spec.delta_omega)
    if spec.kind == "raw":
        if spec.e is None:
            raise ConfigError("e: required for kind = raw")
        return RawVector(spec.e)
    raise ConfigError(f"kind: unknown field geometry {spec.kind!r}")


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # canonicalize the negative zero
    return f"{x:.17g}"


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _matrix_json(matrix: np.ndarray) -> list:
    return [[_pair(matrix[r, c]) for c in range(matrix.shape[1])] for r in range(matrix.shape[0])]


@dataclass(frozen=True)
class ScanRow:
    """One line of the coefficient scan CSV."""

    delta_bar: float
    b0: complex
    b1: complex
    b2: complex
    status: str


SCAN_HEADER = "delta_bar,re_b0,im_b0,re_b1,im_b1,re_b2,im_b2,status"
BICHROMATIC_HEADER = "delta_small_bar,w_alpha,re_b1_sum,im_b0_sum,ratio,status"


def run_scan(config: RunConfig) -> str:
    """Coefficient scan over an ascending detuning grid, rendered as CSV text."""
    spin, gamma, gamma_bar = resolve_spin_gamma(config)
    if config.delta_min is None or config.steps is None:
        raise ConfigError("delta_min/delta_max/steps: required for scan")
    grid = np.linspace(config.delta_min, config.delta_max, config.steps)
    nan = float("nan")
    lines = [SCAN_HEADER]
    for delta_bar in grid:
        try:
            bset = b_coefficients(spin, gamma, ComplexDetuning.of(float(delta_bar), gamma_bar))
            row = ScanRow(float(delta_bar), bset.c0, bset.c1, bset.c2, "ok")
        except PoleProximityError:
            z = complex(nan, nan)
            row = ScanRow(float(delta_bar), z, z, z, "pole")
        values = [row.delta_bar,
                  row.b0.real, row.b0.imag,
                  row.b1.real, row.b1.imag,
                  row.b2.real, row.b2.imag]
        lines.append(",".join(_fmt(v) for v in values) + f",{row.status}")
    return "\n".join(lines) + "\n"


def _run_coeffs(config: RunConfig) -> tuple[str, int]:
    spin, gamma, gamma_bar = resolve_spin_gamma(config)
    if config.delta_bar is None:
        raise ConfigError("delta_bar: required for coeffs")
    det = ComplexDetuning.of(config.delta_bar, gamma_bar)
    bset = b_coefficients(spin, gamma, det)
    payload = {
        "spin_twice": spin.twice,
        "gamma": gamma,
        "gamma_bar": gamma_bar,
        "delta_bar": config.delta_bar,
        "b": {"b0": _pair(bset.c0), "b1": _pair(bset.c1), "b2": _pair(bset.c2)},
    }
    if config.include_a:
        aset = a_coefficients(spin, gamma, det)
        payload["a"] = {"a0": _pair(aset.c0), "a1": _pair(aset.c1), "a2": _pair(aset.c2)}
    return json.dumps(payload, indent=2) + "\n", 0


def _run_heff(config: RunConfig) -> tuple[str, int]:
    spin, gamma, gamma_bar = resolve_spin_gamma(config)
    if config.delta_bar is None:
        raise ConfigError("delta_bar: required for heff")
    if config.field_spec is None:
        raise ConfigError("[field] section: required for heff")
    geometry = _build_field(config.field_spec)
    e = field_at(geometry, config.field_spec.position, config.field_spec.time)
    ops = make_spin_operators(spin)
    bset = b_coefficients(spin, gamma, ComplexDetuning.of(config.delta_bar, gamma_bar))
    heff = assemble_heff(bset, e, ops)
    payload = {
        "dim": ops.dimension,
        "matrix": _matrix_json(heff.matrix),
        "parts": {
            "scalar": _matrix_json(heff.parts.scalar),
            "vector": _matrix_json(heff.parts.vector),
            "tensor": _matrix_json(heff.parts.tensor),
        },
    }
    return json.dumps(payload, indent=2) + "\n", 0


def _run_oracle_diff(config: RunConfig) -> tuple[str, int]:
    spin, gamma, gamma_bar = resolve_spin_gamma(config)
    lo = config.delta_min if config.delta_min is not None else -8.0
    hi = config.delta_max if config.delta_max is not None else 6.0
    n = config.steps if config.steps is not None else 200
    grid = offpole_grid(spin, gamma, lo, hi, n, clearance=0.05)
    deviation = oracle_vs_analytic_deviation(spin, gamma, grid, gamma_bar)
    ok = deviation <= ORACLE_DIFF_THRESHOLD
    text = (
        f"max_relative_deviation = {_fmt(deviation)}\n"
        f"threshold = {_fmt(ORACLE_DIFF_THRESHOLD)}\n"
        f"status = {'PASS' if ok else 'FAIL'}\n"
    )
    return text, 0 if ok else 1


def _run_bichromatic(config: RunConfig) -> tuple[str, int]:
    spin, gamma, gamma_bar = resolve_spin_gamma(config)
    if config.scan:
        lo = config.delta_small_min if config.delta_small_min is not None else 0.5
        hi = config.delta_small_max if config.delta_small_max is not None else 5.0
        n = config.delta_small_steps if config.delta_small_steps is not None else 91
        grid = np.linspace(lo, hi, n)
        rows = merit_scan(spin, gamma, gamma_bar, grid)
        lines = [BICHROMATIC_HEADER]
        for row in rows:
            values = [row.delta_small, row.w_alpha, row.re_b1_sum, row.im_b0_sum, row.ratio]
            lines.append(",".join(_fmt(v) for v in values) + f",{row.status}")
        return "\n".join(lines) + "\n", 0
    if config.delta_alpha is None or config.delta_beta is None:
        raise ConfigError("delta_alpha/delta_beta: required for bichromatic without scan")
    w_alpha, w_beta = solve_tensor_cancellation(
        config.delta_alpha, config.delta_beta, spin, gamma, gamma_bar
    )
    spec = BichromaticSpec(config.delta_alpha, config.delta_beta, w_alpha, w_beta, gamma_bar)
    combined = combined_coefficients(spec, spin, gamma)
    payload = {
        "w_alpha": w_alpha,
        "w_beta": w_beta,
        "b_sum": {
            "b0": _pair(combined.c0),
            "b1": _pair(combined.c1),
            "b2": _pair(combined.c2),
        },
    }
    return json.dumps(payload, indent=2) + "\n", 0


def _run_rephasing(config: RunConfig) -> tuple[str, int]:
    if config.delta_rad_per_s is not None:
        delta = config.delta_rad_per_s
    elif config.delta_bar is not None:
        atom = resolve_atom(config)
        if atom is None:
            raise ConfigError("atom: required to convert delta_bar to a physical frequency")
        delta = config.delta_bar * abs(derive_constants(atom).a_hf)
    else:
        raise ConfigError("delta_rad_per_s or delta_bar: required for rephasing")
    if delta <= 0:
        raise ConfigError("delta_rad_per_s: must be positive")
    return f"rephasing_length_m = {_fmt(rephasing_length(delta))}\n", 0


_SUBCOMMANDS = {
    "coeffs": _run_coeffs,
    "scan": lambda cfg: (run_scan(cfg), 0),
    "heff": _run_heff,
    "oracle-diff": _run_oracle_diff,
    "bichromatic": _run_bichromatic,
    "rephasing": _run_rephasing,
}


def run_subcommand(name: str, config: RunConfig) -> tuple[str, int]:
    """Execute one subcommand against a validated configuration."""
    if name not in _SUBCOMMANDS:
        raise ConfigError(f"unknown subcommand {name!r}")
    return _SUBCOMMANDS[name](config)


def _merge_flags(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    if args.atom is not None:
        config.atom = args.atom
    if args.delta_bar is not None:
        config.delta_bar = args.delta_bar
    if args.gamma_bar is not None:
        config.gamma_bar = args.gamma_bar
    if args.scan:
        config.scan = True
    if args.out is not None:
        config.out = args.out
    _validate(config)
    return config


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nucshift",
        description="Light-induced effective Hamiltonians for nuclear spins",
    )
    parser.add_argument("subcommand", choices=sorted(_SUBCOMMANDS))
    parser.add_argument("--config", help="path to a key = value configuration file")
    parser.add_argument("--atom", help="atom preset name (e.g. sr87)")
    parser.add_argument("--delta-bar", type=float, dest="delta_bar",
                        help="dimensionless detuning override")
    parser.add_argument("--gamma-bar", type=float, dest="gamma_bar",
                        help="dimensionless linewidth override")
    parser.add_argument("--scan", action="store_true",
                        help="bichromatic: run the merit scan instead of a single solve")
    parser.add_argument("--out", help="write the data file here instead of stdout")
    args = parser.parse_args(argv)

    try:
        if args.config is not None:
            with open(args.config, "r", encoding="utf-8") as fh:
                config = parse_config(fh.read())
        else:
            config = RunConfig()
        config = _merge_flags(config, args)
        text, code = run_subcommand(args.subcommand, config)
    except ConfigError as exc:
        print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
        return 2
    except PoleProximityError as exc:
        print(json.dumps({"error": "pole", "message": str(exc)}), file=sys.stderr)
        return 3
    except CancellationInfeasibleError as exc:
        print(json.dumps({"error": "infeasible", "message": str(exc)}), file=sys.stderr)
        return 4
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return 1

    if config.out is not None:
        try:
            with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
