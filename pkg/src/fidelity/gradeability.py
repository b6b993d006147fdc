"""Toy stochastic gradeability test.

A single-equation force balance stands in for full vehicle/terramechanics
physics: the vehicle holds a grade when

    eta * (tan(phi) + c * A / (W * cos(theta))) + roughness >= tan(theta) + f_r

with ``theta = atan(grade / 100)``. The critical angle (CA) is found by
bisection on 30-70 % grade down to a 0.25 % bracket, and Monte Carlo
draws of the soil parameters turn it into a distribution. Default soil and
vehicle numbers below are illustrative, not measured.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import FidelityError, NotMonotoneError
from .metrics import SampleSummary, summarize

GRADE_LO = 30.0
GRADE_HI = 70.0
GRADE_RESOLUTION = 0.25
MAX_FRICTION_ANGLE = 45.0


@dataclass(frozen=True)
class SoilParams:
    cohesion: float  # kPa
    friction_angle: float  # degrees
    roughness_seed: int = 0
    roughness_std: float = 0.0  # additive perturbation on the tractive coefficient

    def __post_init__(self):
        if self.cohesion < 0:
            raise FidelityError("cohesion must be >= 0")
        if not 0.0 <= self.friction_angle <= MAX_FRICTION_ANGLE:
            raise FidelityError(f"friction angle must lie in [0, {MAX_FRICTION_ANGLE}] degrees")
        if self.roughness_std < 0:
            raise FidelityError("roughness_std must be >= 0")

    @property
    def roughness(self) -> float:
        if self.roughness_std == 0:
            return 0.0
        return float(np.random.default_rng(self.roughness_seed).normal(0.0, self.roughness_std))


@dataclass(frozen=True)
class VehicleConfig:
    weight: float = 50.0  # kN
    contact_area: float = 0.4  # m^2
    rolling_resistance: float = 0.02
    tire_efficiency: float = 1.0

    def __post_init__(self):
        if self.weight <= 0 or self.contact_area <= 0:
            raise FidelityError("weight and contact area must be > 0")
        if not 0.0 <= self.rolling_resistance < 0.3:
            raise FidelityError("rolling resistance must lie in [0, 0.3)")
        if not 0.0 < self.tire_efficiency <= 1.0:
            raise FidelityError("tire efficiency must lie in (0, 1]")


@dataclass(frozen=True)
class SoilDistribution:
    """Normal soil draws, clipped to physical bounds. Defaults are illustrative."""

    cohesion_mean: float = 2.0
    cohesion_std: float = 0.5
    friction_mean: float = 30.0
    friction_std: float = 1.5
    roughness_std: float = 0.01

    def __post_init__(self):
        if min(self.cohesion_std, self.friction_std, self.roughness_std) < 0:
            raise FidelityError("distribution stds must be >= 0")
        if self.cohesion_mean < 0 or not 0 <= self.friction_mean <= MAX_FRICTION_ANGLE:
            raise FidelityError("distribution means outside physical bounds")

    def draw(self, rng: np.random.Generator) -> SoilParams:
        c = max(0.0, float(rng.normal(self.cohesion_mean, self.cohesion_std)))
        phi = min(max(float(rng.normal(self.friction_mean, self.friction_std)), 0.0), MAX_FRICTION_ANGLE)
        return SoilParams(c, phi, int(rng.integers(0, 2**63 - 1)), self.roughness_std)


@dataclass(frozen=True)
class GradeabilityResult:
    critical_angle: float
    iterations: int
    bracket: tuple[float, float]
    censored: str | None = None  # "censored-high" / "censored-low"


def tractive_coefficient(vehicle: VehicleConfig, soil: SoilParams, grade: float) -> float:
    theta = math.atan(grade / 100.0)
    mu = vehicle.tire_efficiency * (
        math.tan(math.radians(soil.friction_angle))
        + soil.cohesion * vehicle.contact_area / (vehicle.weight * math.cos(theta))
    )
    return mu + soil.roughness


def can_climb(vehicle: VehicleConfig, soil: SoilParams, grade: float) -> bool:
    """True when traction covers slope plus rolling resistance at ``grade`` percent."""
    if not 0.0 <= grade <= 100.0:
        raise FidelityError(f"grade must lie in [0, 100] %, got {grade}")
    return tractive_coefficient(vehicle, soil, grade) >= grade / 100.0 + vehicle.rolling_resistance


def bisect_predicate(
    climbs: Callable[[float], bool],
    lo: float = GRADE_LO,
    hi: float = GRADE_HI,
    resolution: float = GRADE_RESOLUTION,
) -> GradeabilityResult:
    """Bisection on a monotone pass/fail predicate; reports the final bracket midpoint."""
    ok_lo, ok_hi = climbs(lo), climbs(hi)
    if ok_hi and not ok_lo:
        raise NotMonotoneError("predicate not monotone: passes at upper bracket but fails at lower")
    if ok_hi:
        return GradeabilityResult(hi, 0, (lo, hi), "censored-high")
    if not ok_lo:
        return GradeabilityResult(lo, 0, (lo, hi), "censored-low")
    a, b, it = lo, hi, 0
    while b - a > resolution:
        mid = 0.5 * (a + b)
        if climbs(mid):
            a = mid
        else:
            b = mid
        it += 1
    return GradeabilityResult(0.5 * (a + b), it, (a, b))


def critical_angle(vehicle: VehicleConfig, soil: SoilParams) -> GradeabilityResult:
    return bisect_predicate(lambda g: can_climb(vehicle, soil, g))


@dataclass(frozen=True)
class MonteCarloResult:
    samples: tuple[float, ...]
    summary: SampleSummary
    censored_high: int = 0
    censored_low: int = 0
    flags: tuple[str, ...] = ()


def monte_carlo_ca(
    vehicle: VehicleConfig,
    soil_dist: SoilDistribution,
    runs: int,
    seed: int,
) -> MonteCarloResult:
    """CA distribution over ``runs`` soil draws.

    Each run gets its own child of ``SeedSequence(seed)``, so run ``k`` sees
    the same soil no matter how many runs are requested or in what order
    they execute.
    """
    if runs < 30:
        raise FidelityError("runs must be >= 30")
    children = np.random.SeedSequence(seed).spawn(runs)
    results = [critical_angle(vehicle, soil_dist.draw(np.random.default_rng(ch))) for ch in children]
    samples = tuple(r.critical_angle for r in results)
    high = sum(r.censored == "censored-high" for r in results)
    low = sum(r.censored == "censored-low" for r in results)
    flags = ("degenerate distribution",) if runs in (high, low) else ()
    return MonteCarloResult(samples, summarize(samples), high, low, flags)
