"""Bichromatic tensor-shift cancellation and the vector-shift-to-loss figure of merit.

Two fields far apart in frequency add their effective Hamiltonians (the cross
terms oscillate fast and average out; that validity condition is the caller's
responsibility and is not simulated here).  Weighted so the real tensor
coefficients cancel, the pair keeps a finite vector shift while the tensor
shift vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .shift_coefficients import (
    POLE_EPSILON,
    CoeffForm,
    ComplexDetuning,
    PoleProximityError,
    PolarizabilitySet,
    b_coefficients,
)
from .hyperfine import hf_energies
from .spin_algebra import HalfInteger

SPEED_OF_LIGHT = 299792458.0  # m/s


class CancellationInfeasibleError(ValueError):
    """Raised when the two real tensor coefficients share a sign and cannot cancel."""


@dataclass(frozen=True)
class BichromaticSpec:
    """Two detunings with intensity weights normalized to unit total."""

    delta_alpha: float
    delta_beta: float
    weight_alpha: float
    weight_beta: float
    gamma_bar: float = 0.0

    def __post_init__(self):
        for w in (self.weight_alpha, self.weight_beta):
            if not 0.0 <= w <= 1.0:
                raise ValueError("weights must lie in [0, 1]")
        if abs(self.weight_alpha + self.weight_beta - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        if self.gamma_bar < 0:
            raise ValueError("gamma_bar must be non-negative")


def _guard_poles(spin: HalfInteger, gamma: float, delta_bar: float) -> None:
    # real-part distance: the scan must flag on-pole rows even with losses on
    en = hf_energies(spin, gamma)
    for e in en.as_tuple():
        if abs(delta_bar - e) <= POLE_EPSILON:
            raise PoleProximityError(
                f"detuning {delta_bar} within {POLE_EPSILON} of hyperfine pole at {e}"
            )


def combined_coefficients(spec: BichromaticSpec, spin, gamma: float) -> PolarizabilitySet:
    """Intensity-weighted sum of the b coefficients of the two fields."""
    spin = HalfInteger.coerce(spin)
    _guard_poles(spin, gamma, spec.delta_alpha)
    _guard_poles(spin, gamma, spec.delta_beta)
    b_alpha = b_coefficients(spin, gamma, ComplexDetuning.of(spec.delta_alpha, spec.gamma_bar))
    b_beta = b_coefficients(spin, gamma, ComplexDetuning.of(spec.delta_beta, spec.gamma_bar))
    wa, wb = spec.weight_alpha, spec.weight_beta
    return PolarizabilitySet(
        form=CoeffForm.B_FORM,
        c0=wa * b_alpha.c0 + wb * b_beta.c0,
        c1=wa * b_alpha.c1 + wb * b_beta.c1,
        c2=wa * b_alpha.c2 + wb * b_beta.c2,
    )


def solve_tensor_cancellation(delta_alpha: float, delta_beta: float, spin, gamma: float,
                              gamma_bar: float = 0.0) -> tuple[float, float]:
    """Weights in (0, 1) summing to 1 that zero the combined real tensor coefficient.

    Requires Re b2 at the two detunings to have opposite signs; otherwise the
    cancellation is impossible and CancellationInfeasibleError is raised.
    """
    spin = HalfInteger.coerce(spin)
    _guard_poles(spin, gamma, delta_alpha)
    _guard_poles(spin, gamma, delta_beta)
    b2_alpha = b_coefficients(spin, gamma, ComplexDetuning.of(delta_alpha, gamma_bar)).c2.real
    b2_beta = b_coefficients(spin, gamma, ComplexDetuning.of(delta_beta, gamma_bar)).c2.real
    if b2_alpha == 0.0 or b2_beta == 0.0 or (b2_alpha > 0) == (b2_beta > 0):
        raise CancellationInfeasibleError(
            f"Re b2 values {b2_alpha} and {b2_beta} do not have opposite signs"
        )
    w_alpha = abs(b2_beta) / (abs(b2_alpha) + abs(b2_beta))
    return w_alpha, 1.0 - w_alpha


@dataclass(frozen=True)
class MeritRow:
    """One detuning-imbalance point of the cancellation scan."""

    delta_small: float
    w_alpha: float
    re_b1_sum: float
    im_b0_sum: float
    ratio: float
    status: str  # "ok" | "pole" | "same-sign"


def merit_scan(spin, gamma: float, gamma_bar: float, delta_grid) -> list[MeritRow]:
    """Sweep the symmetric detuning imbalance around the central hyperfine line.

    For every delta in delta_grid the two detunings are e_mid +- delta; the
    tensor cancellation is solved and the vector-shift-to-loss ratio
    Re b1 / Im b0 recorded.  Infeasible points are kept as rows with a status
    marker instead of being dropped.
    """
    spin = HalfInteger.coerce(spin)
    e_mid = hf_energies(spin, gamma).e_mid
    rows: list[MeritRow] = []
    nan = float("nan")
    for delta_small in delta_grid:
        delta_small = float(delta_small)
        if delta_small <= 0:
            raise ValueError("detuning imbalance must be positive")
        d_alpha = e_mid + delta_small
        d_beta = e_mid - delta_small
        try:
            w_alpha, w_beta = solve_tensor_cancellation(d_alpha, d_beta, spin, gamma, gamma_bar)
        except PoleProximityError:
            rows.append(MeritRow(delta_small, nan, nan, nan, nan, "pole"))
            continue
        except CancellationInfeasibleError:
            rows.append(MeritRow(delta_small, nan, nan, nan, nan, "same-sign"))
            continue
        spec = BichromaticSpec(d_alpha, d_beta, w_alpha, w_beta, gamma_bar)
        combined = combined_coefficients(spec, spin, gamma)
        re_b1 = combined.c1.real
        im_b0 = combined.c0.imag
        if im_b0 != 0.0:
            ratio = re_b1 / im_b0
        else:
            ratio = math.copysign(math.inf, re_b1) if re_b1 != 0.0 else nan
        rows.append(MeritRow(delta_small, w_alpha, re_b1, im_b0, ratio, "ok"))
    return rows


def local_ratio_optima(rows: list[MeritRow]) -> list[int]:
    """Indices of rows where |ratio| peaks against both feasible neighbours."""
    peaks = []
    for k in range(1, len(rows) - 1):
        trio = rows[k - 1 : k + 2]
        if any(r.status != "ok" for r in trio):
            continue
        left, mid, right = (abs(r.ratio) for r in trio)
        if mid >= left and mid >= right and not math.isnan(mid):
            peaks.append(k)
    return peaks


def rephasing_length(delta_physical: float, speed_of_light: float = SPEED_OF_LIGHT) -> float:
    """Shortest mirror displacement after which the two lattices rephase: pi*c/(2*delta)."""
    if delta_physical <= 0:
        raise ValueError("frequency difference must be positive")
    return math.pi * speed_of_light / (2.0 * delta_physical)
