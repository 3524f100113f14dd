"""QAM symbol planning with duty-cycle pre-distortion, and EVM simulation.

Constellation magnitude is delivered by scaling the pulse width: the
first-harmonic amplitude follows ``sin(alpha*pi/3) / sin(pi/3)``, which
compresses relative to the naive "alpha-dB equals back-off-dB" rule.
Pre-distortion inverts that law (optionally folding in circuit-efficiency
droop) so each symbol lands on its target magnitude.  Symbol phase is set by
the quadrature drive and is treated as exact, entering the simulation as a
complex rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sin

import numpy as np

from .array_model import ArrayConfig
from .circuit_model import MAX_DUTY, CircuitParams, circuit_efficiency
from .harmonic_analysis import array_factor
from .schedule_design import design_schedule

#: Bisection width at which the pre-distortion root is accepted.
ROOT_TOL = 1e-10


@dataclass(frozen=True)
class SymbolPlan:
    """Transmit plan for one constellation point."""

    symbol: complex
    duty_ratio: float
    carrier_phase: float
    magnitude_target: float


def amplitude_of_alpha(alpha: float) -> float:
    """Normalized first-harmonic amplitude at duty-cycle ratio alpha.

    Strictly increasing on (0, 1] with amplitude_of_alpha(1) = 1.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    return sin(alpha * pi / 3) / sin(pi / 3)


def _response(alpha: float, circuit: CircuitParams | None) -> float:
    amp = amplitude_of_alpha(alpha)
    if circuit is None:
        return amp
    droop = circuit_efficiency(circuit, MAX_DUTY * alpha) / circuit_efficiency(circuit, MAX_DUTY)
    return amp * np.sqrt(droop)


def predistort_alpha(target_amplitude: float, circuit: CircuitParams | None = None) -> float:
    """Duty-cycle ratio whose delivered amplitude equals the target.

    Inverts ``amplitude_of_alpha`` by bisection to within ``ROOT_TOL``.  With
    ``circuit`` given, the circuit-efficiency droop (square-rooted into the
    amplitude domain) is folded into the response before inversion, which
    always yields a duty ratio at least as large as the ideal one.
    """
    if not 0 < target_amplitude <= 1:
        raise ValueError("target amplitude must lie in (0, 1]")
    if target_amplitude >= _response(1.0, circuit):
        if target_amplitude > _response(1.0, circuit):
            raise ValueError("target unreachable: response at alpha=1 falls short")
        return 1.0
    lo, hi = 1e-12, 1.0
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        if _response(mid, circuit) < target_amplitude:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def plan_constellation(
    points,
    predistort: bool,
    circuit: CircuitParams | None = None,
) -> list[SymbolPlan]:
    """Map constellation points to duty ratios and carrier phases.

    Magnitude targets are the point magnitudes normalized by the largest one.
    With ``predistort`` the duty ratio inverts the amplitude law; without it
    the naive rule ``10*log10(alpha) = 20*log10(target)`` is applied, i.e.
    ``alpha = target**2``.
    """
    symbols = [complex(p) for p in points]
    if not symbols:
        raise ValueError("constellation is empty")
    peak = max(abs(z) for z in symbols)
    if peak <= 0:
        raise ValueError("constellation has no nonzero symbol")
    plans = []
    for z in symbols:
        if abs(z) == 0:
            raise ValueError("zero-magnitude symbol cannot be planned")
        target = abs(z) / peak
        alpha = predistort_alpha(target, circuit) if predistort else target**2
        plans.append(SymbolPlan(z, alpha, float(np.angle(z)), target))
    return plans


@dataclass(frozen=True)
class ConstellationResult:
    received: np.ndarray
    evm_rms_percent: float


def simulate_constellation(
    plans: list[SymbolPlan],
    config: ArrayConfig,
    steer_angle: float,
) -> ConstellationResult:
    """Drive each plan through the designed array and measure the EVM.

    For every plan the schedule at its duty ratio is built, the first
    harmonic is evaluated at the steering angle, normalized by the peak-mode
    response, and rotated by the carrier phase.  The quadrature drive makes
    the phase exact by construction, so only the magnitude law distorts.
    EVM is the RMS error over the RMS of the normalized reference
    constellation, in percent.
    """
    if not plans:
        raise ValueError("no symbol plans to simulate")
    reference = abs(array_factor(design_schedule(config, steer_angle, 1.0), 1, steer_angle))
    magnitude_cache: dict[float, float] = {}
    received = []
    for plan in plans:
        mag = magnitude_cache.get(plan.duty_ratio)
        if mag is None:
            schedule = design_schedule(config, steer_angle, plan.duty_ratio)
            mag = abs(array_factor(schedule, 1, steer_angle)) / reference
            magnitude_cache[plan.duty_ratio] = mag
        received.append(mag * np.exp(1j * plan.carrier_phase))
    received = np.array(received)
    ideal = np.array([p.magnitude_target * np.exp(1j * p.carrier_phase) for p in plans])
    evm = 100.0 * np.sqrt(np.mean(np.abs(received - ideal) ** 2) / np.mean(np.abs(ideal) ** 2))
    return ConstellationResult(received, float(evm))
