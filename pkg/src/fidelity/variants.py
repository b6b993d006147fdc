"""A 150% coil-spring model: four switchable features, 16 variants, cost-aware selection.

The spring physics is textbook helical-spring mechanics with invented
constants; only the feature list and the selection logic matter here.
With every feature on, ``[1, 1, 1, 1]`` is the referent variant.

Features
    temperature_dependence  shear modulus and allowable stress derate linearly above 20 C
    end_condition           buckling uses the spring's end-condition factor (else 1, hinged ends)
    buckling_heuristic      slenderness/deflection screen
    buckling_calculation    critical-deflection curve; overrides the heuristic when both are on
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Sequence

from .errors import FidelityError

REFERENCE_TEMPERATURE = 20.0
FAILURE_MODES = ("none", "break", "bottom-out", "buckle")

BASE_COST = 1.0
FEATURE_COSTS = {
    "temperature_dependence": 0.5,
    "end_condition": 0.25,
    "buckling_heuristic": 0.25,
    "buckling_calculation": 1.0,
}

# Critical-deflection curve for steel (E/G = 2.6):
# y_cr / L0 = C1 * (1 - sqrt(1 - C2 / lambda_eff**2)), stable when lambda_eff**2 <= C2.
E_OVER_G = 2.6
CURVE_C1 = E_OVER_G / (2 * (E_OVER_G - 1))
CURVE_C2 = 2 * math.pi**2 * (E_OVER_G - 1) / (2 + E_OVER_G)
HEURISTIC_SLENDERNESS = 2.63
HEURISTIC_DEFLECTION = 0.25


@dataclass(frozen=True, order=True)
class VariantFlags:
    temperature_dependence: bool = False
    end_condition: bool = False
    buckling_heuristic: bool = False
    buckling_calculation: bool = False

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> VariantFlags:
        if len(bits) != 4:
            raise FidelityError("variant needs exactly 4 feature bits")
        return cls(*(bool(b) for b in bits))

    @property
    def bits(self) -> tuple[int, int, int, int]:
        return tuple(int(v) for v in asdict(self).values())

    @property
    def label(self) -> str:
        return "[" + ", ".join(str(b) for b in self.bits) + "]"

    @property
    def enabled(self) -> int:
        return sum(self.bits)

    def cost(self, feature_costs: dict[str, float] | None = None, base: float = BASE_COST) -> float:
        costs = FEATURE_COSTS if feature_costs is None else feature_costs
        return base + sum(costs[name] for name, on in asdict(self).items() if on)


REFERENT = VariantFlags(True, True, True, True)
ALL_VARIANTS = tuple(VariantFlags.from_bits(b) for b in itertools.product((0, 1), repeat=4))


@dataclass(frozen=True)
class CoilSpringSpec:
    wire_diameter: float = 4.0  # mm
    coil_diameter: float = 30.0  # mm
    active_coils: int = 8
    free_length: float = 60.0  # mm
    shear_modulus: float = 79300.0  # MPa at 20 C
    temp_coefficient: float = 4e-4  # 1/C
    allowable_stress: float = 700.0  # MPa at 20 C
    end_condition_factor: float = 0.7  # one end fixed, one hinged

    def __post_init__(self):
        positive = ("wire_diameter", "coil_diameter", "free_length", "shear_modulus", "allowable_stress")
        bad = [name for name in positive if not getattr(self, name) > 0]
        if bad:
            raise FidelityError(f"spring parameters must be > 0: {', '.join(bad)}")
        if self.active_coils < 2:
            raise FidelityError("active_coils must be >= 2")
        if self.temp_coefficient < 0:
            raise FidelityError("temp_coefficient must be >= 0")
        if not 0 < self.end_condition_factor <= 2:
            raise FidelityError("end_condition_factor must lie in (0, 2]")
        if not self.coil_diameter > self.wire_diameter:
            raise FidelityError("coil diameter must exceed wire diameter")
        if not self.active_coils * self.wire_diameter < self.free_length:
            raise FidelityError("solid length must be shorter than free length")

    @property
    def solid_length(self) -> float:
        return self.active_coils * self.wire_diameter

    @property
    def spring_index(self) -> float:
        return self.coil_diameter / self.wire_diameter

    @property
    def wahl_factor(self) -> float:
        c = self.spring_index
        return (4 * c - 1) / (4 * c - 4) + 0.615 / c


@dataclass(frozen=True)
class SpringResponse:
    deformation: float
    failure_mode: str
    cost_units: float


def _derate(spec: CoilSpringSpec, temperature: float) -> float:
    factor = 1.0 - spec.temp_coefficient * (temperature - REFERENCE_TEMPERATURE)
    if factor <= 0:
        raise FidelityError(f"temperature {temperature} C derates the material below zero")
    return factor


def critical_deflection_ratio(effective_slenderness: float) -> float:
    """Buckling-onset ``deflection / free_length``; ``inf`` when the spring is absolutely stable."""
    if effective_slenderness**2 <= CURVE_C2:
        return math.inf
    return CURVE_C1 * (1.0 - math.sqrt(1.0 - CURVE_C2 / effective_slenderness**2))


def evaluate_variant(
    spec: CoilSpringSpec,
    flags: VariantFlags,
    load: float,
    temperature: float = REFERENCE_TEMPERATURE,
    feature_costs: dict[str, float] | None = None,
) -> SpringResponse:
    """Deformation and failure mode of one spring variant under a static axial load."""
    if load < 0:
        raise FidelityError("load must be >= 0")
    derate = _derate(spec, temperature) if flags.temperature_dependence else 1.0
    G = spec.shear_modulus * derate
    d, D, Na, L0 = spec.wire_diameter, spec.coil_diameter, spec.active_coils, spec.free_length
    k = G * d**4 / (8 * D**3 * Na)
    delta = load / k
    cost = flags.cost(feature_costs)

    stress = 8 * load * D * spec.wahl_factor / (math.pi * d**3)
    if stress > spec.allowable_stress * derate:
        mode = "break"
    elif delta >= L0 - spec.solid_length:
        mode = "bottom-out"
    else:
        nu = spec.end_condition_factor if flags.end_condition else 1.0
        slenderness = L0 / D
        buckles = False
        if flags.buckling_calculation:
            buckles = delta / L0 > critical_deflection_ratio(nu * slenderness)
        elif flags.buckling_heuristic:
            buckles = slenderness > HEURISTIC_SLENDERNESS / nu and delta / L0 > HEURISTIC_DEFLECTION
        mode = "buckle" if buckles else "none"
    return SpringResponse(delta, mode, cost)


@dataclass(frozen=True)
class DoEGrid:
    loads: tuple[float, ...]
    temperatures: tuple[float, ...]
    length_multipliers: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        if not (self.loads and self.temperatures and self.length_multipliers):
            raise FidelityError("DoE grid must be non-empty on every axis")
        if any(m <= 0 for m in self.length_multipliers):
            raise FidelityError("length multipliers must be > 0")

    def points(self) -> list[tuple[float, float, float]]:
        return list(itertools.product(self.loads, self.temperatures, self.length_multipliers))


DEFAULT_GRID = DoEGrid(
    loads=(0.0, 125.0, 250.0, 375.0, 500.0),
    temperatures=(20.0, 50.0, 80.0, 110.0, 140.0),
    length_multipliers=(1.0, 2.0, 3.0, 4.0),
)


@dataclass(frozen=True)
class DoERow:
    point: int
    load: float
    temperature: float
    length_multiplier: float
    flags: VariantFlags
    response: SpringResponse


def doe_run(
    spec: CoilSpringSpec,
    grid: DoEGrid = DEFAULT_GRID,
    feature_costs: dict[str, float] | None = None,
) -> list[DoERow]:
    """Full-factorial evaluation of all 16 variants, ordered by (point, variant)."""
    rows = []
    for i, (load, temp, mult) in enumerate(grid.points()):
        point_spec = replace(spec, free_length=spec.free_length * mult)
        for flags in ALL_VARIANTS:
            rows.append(DoERow(i, load, temp, mult, flags, evaluate_variant(point_spec, flags, load, temp, feature_costs)))
    return rows


def _selection_key(row: DoERow):
    return (row.response.cost_units, row.flags.enabled, row.flags.bits)


def accepts(candidate: SpringResponse, referent: SpringResponse, epsilon: float) -> bool:
    return (
        abs(candidate.deformation - referent.deformation) <= epsilon
        and candidate.failure_mode == referent.failure_mode
    )


@dataclass(frozen=True)
class SelectionReport:
    chosen: tuple[VariantFlags, ...]
    cost_ratio: float
    epsilon: float
    chosen_cost: float
    referent_cost: float
    accepted: tuple[tuple[int, VariantFlags, bool], ...] = field(default=(), repr=False)


def group_by_point(table: Iterable[DoERow]) -> dict[int, list[DoERow]]:
    groups: dict[int, list[DoERow]] = {}
    for row in table:
        groups.setdefault(row.point, []).append(row)
    return groups


def select_cheapest_acceptable(table: Sequence[DoERow], epsilon: float) -> SelectionReport:
    """Per DoE point, the cheapest variant that matches the referent's deformation and failure mode.

    Ties on cost go to fewer enabled features, then to lexicographic flag
    order. The referent always accepts itself, so every point gets a choice.
    """
    if not epsilon >= 0:
        raise FidelityError("epsilon must be >= 0")
    chosen, accepted = [], []
    chosen_cost = referent_cost = 0.0
    for point, rows in sorted(group_by_point(table).items()):
        ref = next((r for r in rows if r.flags == REFERENT), None)
        if ref is None:
            raise FidelityError(f"DoE point {point} has no referent row")
        ok = [r for r in rows if accepts(r.response, ref.response, epsilon)]
        accepted.extend((point, r.flags, r in ok) for r in rows)
        best = min(ok, key=_selection_key)
        chosen.append(best.flags)
        chosen_cost += best.response.cost_units
        referent_cost += ref.response.cost_units
    return SelectionReport(tuple(chosen), chosen_cost / referent_cost, epsilon, chosen_cost, referent_cost, tuple(accepted))


def max_deflection(table: Iterable[DoERow]) -> float:
    return max(r.response.deformation for r in table if r.flags == REFERENT)


def disagreement_points(table: Sequence[DoERow], feature: str, epsilon: float) -> set[int]:
    """Points where switching ``feature`` off (all else on) is no longer acceptable."""
    off = replace(REFERENT, **{feature: False})
    out = set()
    for point, rows in group_by_point(table).items():
        by_flags = {r.flags: r.response for r in rows}
        if not accepts(by_flags[off], by_flags[REFERENT], epsilon):
            out.add(point)
    return out
