"""Scenario-dependent fidelity: validity ranges over an input domain and per-region scores."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import FidelityError
from .metrics import FidelityScore, SampleSummary, fidelity_score

Fn = Callable[[float], float]


@dataclass(frozen=True)
class ScenarioDomain:
    lo: float
    hi: float
    resolution: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise FidelityError(f"domain needs lo < hi, got [{self.lo}, {self.hi}]")
        if not self.resolution > 0:
            raise FidelityError("resolution must be > 0")
        if (self.hi - self.lo) / self.resolution < 2 - 1e-9:
            raise FidelityError("domain must span at least two resolution steps")

    def grid(self) -> np.ndarray:
        """Points ``lo, lo + res, ...`` with ``hi`` always the last entry."""
        steps = (self.hi - self.lo) / self.resolution
        k = math.floor(steps + 1e-9)
        pts = self.lo + self.resolution * np.arange(k + 1)
        if abs(steps - round(steps)) <= 1e-9:
            pts[-1] = self.hi
        elif pts[-1] < self.hi:
            pts = np.append(pts, self.hi)
        return pts

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class ProductDomain:
    """Axis-aligned box; validity is evaluated one axis at a time."""

    axes: tuple[ScenarioDomain, ...]

    def axis(self, i: int) -> ScenarioDomain:
        return self.axes[i]


@dataclass(frozen=True)
class ResponseTrace:
    inputs: tuple[float, ...]
    outputs: tuple[float, ...]

    def __post_init__(self):
        if len(self.inputs) != len(self.outputs):
            raise FidelityError("inputs and outputs differ in length")
        if any(b <= a for a, b in zip(self.inputs, self.inputs[1:])):
            raise FidelityError("trace inputs must be strictly increasing")


@dataclass(frozen=True)
class Criterion:
    kind: str = "relative-error"
    threshold: float = 0.01

    def __post_init__(self):
        if self.kind not in ("relative-error", "absolute-error"):
            raise FidelityError(f"unknown criterion kind {self.kind!r}")
        if not self.threshold > 0:
            raise FidelityError("criterion threshold must be > 0")

    def holds(self, model_value: float, referent_value: float) -> bool:
        diff = abs(model_value - referent_value)
        if self.kind == "absolute-error":
            return diff <= self.threshold
        if referent_value == 0:
            # 0/0 counts as agreement so a model is always valid against itself
            return model_value == 0
        return diff / abs(referent_value) <= self.threshold


@dataclass(frozen=True)
class ValidityRange:
    intervals: tuple[tuple[float, float], ...]
    criterion: Criterion
    domain: ScenarioDomain

    @property
    def total_width(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def interval_containing(self, x: float) -> tuple[float, float] | None:
        for lo, hi in self.intervals:
            if lo <= x <= hi:
                return (lo, hi)
        return None


def _evaluate(fn: Fn, x: float, label: str) -> float:
    y = float(fn(x))
    if not math.isfinite(y):
        raise FidelityError(f"{label} returned non-finite value at x={x!r}")
    return y


def trace(model_fn: Fn, domain: ScenarioDomain) -> ResponseTrace:
    xs = domain.grid()
    ys = [_evaluate(model_fn, float(x), "model") for x in xs]
    return ResponseTrace(tuple(float(x) for x in xs), tuple(ys))


def _refine(ok: Callable[[float], bool], valid_x: float, invalid_x: float, tol: float) -> float:
    """Shrink a valid/invalid pair to width <= tol; returns the valid end."""
    while abs(invalid_x - valid_x) > tol:
        mid = 0.5 * (valid_x + invalid_x)
        if ok(mid):
            valid_x = mid
        else:
            invalid_x = mid
    return valid_x


def validity_range(
    model_fn: Fn,
    referent_fn: Fn,
    domain: ScenarioDomain,
    criterion: Criterion | None = None,
) -> ValidityRange:
    """Maximal sub-intervals of ``domain`` on which the model satisfies ``criterion``.

    The domain grid is classified point by point, then each valid/invalid
    transition is bisected down to ``resolution / 100``. Reported endpoints
    are the valid side of the final bracket. Excursions narrower than one
    grid step are not detected.
    """
    criterion = criterion or Criterion()
    tol = domain.resolution / 100.0

    def ok(x: float) -> bool:
        return criterion.holds(_evaluate(model_fn, x, "model"), _evaluate(referent_fn, x, "referent"))

    xs = [float(x) for x in domain.grid()]
    flags = [ok(x) for x in xs]
    intervals: list[tuple[float, float]] = []
    i = 0
    while i < len(xs):
        if not flags[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(xs) and flags[j + 1]:
            j += 1
        lo = xs[i] if i == 0 else _refine(ok, xs[i], xs[i - 1], tol)
        hi = xs[j] if j == len(xs) - 1 else _refine(ok, xs[j], xs[j + 1], tol)
        intervals.append((lo, hi))
        i = j + 1
    return ValidityRange(tuple(intervals), criterion, domain)


def fidelity_map(
    model_samples_by_region: Sequence[tuple[ScenarioDomain, SampleSummary]],
    referent_by_region: Sequence[tuple[ScenarioDomain, SampleSummary]],
) -> list[tuple[ScenarioDomain, FidelityScore]]:
    """Per-region fidelity of a model whose regions align one-to-one with the referent's."""
    if len(model_samples_by_region) != len(referent_by_region):
        raise FidelityError(
            f"region count mismatch: model has {len(model_samples_by_region)}, "
            f"referent has {len(referent_by_region)}"
        )
    mismatched = [
        f"#{k}: {m_dom} vs {r_dom}"
        for k, ((m_dom, _), (r_dom, _)) in enumerate(zip(model_samples_by_region, referent_by_region))
        if m_dom != r_dom
    ]
    if mismatched:
        raise FidelityError("misaligned regions " + "; ".join(mismatched))
    return [
        (dom, fidelity_score(m, r))
        for (dom, m), (_, r) in zip(model_samples_by_region, referent_by_region)
    ]
