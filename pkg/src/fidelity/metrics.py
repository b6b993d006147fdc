"""Distribution summaries, the mean/variance fidelity score and model rankings."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateError, FidelityError

# Smallest positive normal double; scores are clamped here instead of underflowing to 0.
_TINY = np.finfo(float).tiny
_BELOW_ONE = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class SampleSummary:
    mean: float
    std: float
    n: int = 1
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if not (math.isfinite(self.mean) and math.isfinite(self.std)):
            raise FidelityError(f"non-finite summary ({self.mean}, {self.std})")
        if self.std < 0:
            raise FidelityError(f"negative standard deviation {self.std}")
        if self.n < 1:
            raise FidelityError(f"sample count must be >= 1, got {self.n}")


@dataclass(frozen=True)
class FidelityScore:
    """Fidelity triple of one model against a referent.

    ``log_f`` keeps the unclamped natural log of ``f``; ``f`` itself is
    clamped to the smallest normal double so it never reaches 0.
    """

    f: float
    f_a: float
    f_v: float
    percent_error: float | None
    log_f: float = 0.0


@dataclass(frozen=True)
class ModelRecord:
    name: str
    summary: SampleSummary
    information_tags: frozenset[str] = frozenset()
    cost: float | None = None

    def __post_init__(self):
        if self.cost is not None and self.cost < 0:
            raise FidelityError(f"model {self.name!r}: negative cost")
        object.__setattr__(self, "information_tags", frozenset(self.information_tags))


@dataclass(frozen=True)
class Ranking:
    entries: tuple[tuple[str, float], ...]
    mode: str = "absolute"
    tie_policy: str = "lexicographic-name"
    ties: tuple[tuple[str, ...], ...] = field(default=())

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.entries]


def summarize(samples: Iterable[float], bias_corrected: bool = True) -> SampleSummary:
    """Mean and standard deviation of scalar output samples.

    With ``bias_corrected`` the divisor is ``n - 1``. A single sample under
    that convention gets ``std = 0`` and a warning entry on the summary.
    """
    x = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples, dtype=float)
    if x.size == 0:
        raise FidelityError("no samples")
    if not np.all(np.isfinite(x)):
        raise FidelityError("non-finite samples")
    n = int(x.size)
    mean = float(math.fsum(x) / n)
    notes: tuple[str, ...] = ()
    if n == 1 and bias_corrected:
        warnings.warn("single sample: bias-corrected std defined as 0", RuntimeWarning, stacklevel=2)
        std = 0.0
        notes = ("single-sample-std",)
    else:
        # scale deviations first so tiny spreads don't underflow to 0 when squared
        dev = x - mean
        scale = float(np.max(np.abs(dev)))
        if np.all(x == x[0]) or scale == 0.0:
            std = 0.0
        else:
            std = scale * float(np.sqrt(np.sum((dev / scale) ** 2) / (n - 1 if bias_corrected else n)))
    return SampleSummary(mean, std, n, notes)


def _log_accuracy(model: SampleSummary, referent: SampleSummary) -> float:
    if referent.std <= 0:
        raise DegenerateError("degenerate referent: referent std must be > 0")
    z = (model.mean - referent.mean) / referent.std
    return -0.5 * z * z


def _log_variability(model: SampleSummary, referent: SampleSummary) -> float:
    if model.std <= 0 or referent.std <= 0:
        raise DegenerateError("degenerate variance: both stds must be > 0")
    d = model.std - referent.std
    # (d/s_m)*(d/s_r) instead of d**2/(s_m*s_r): avoids overflow/underflow of the product
    return -(d / model.std) * (d / referent.std)


def _exp_score(log_value: float, exact: bool) -> float:
    if exact:
        return 1.0
    return min(max(math.exp(log_value), _TINY), _BELOW_ONE)


def accuracy_component(model: SampleSummary, referent: SampleSummary) -> float:
    """``exp(-0.5 * ((m_mean - r_mean) / r_std) ** 2)``, in (0, 1]."""
    log_fa = _log_accuracy(model, referent)
    return _exp_score(log_fa, model.mean == referent.mean)


def variability_component(model: SampleSummary, referent: SampleSummary) -> float:
    """``exp(-(m_std - r_std) ** 2 / (m_std * r_std))``; symmetric in its arguments."""
    log_fv = _log_variability(model, referent)
    return _exp_score(log_fv, model.std == referent.std)


def percent_error(model: SampleSummary, referent: SampleSummary) -> float | None:
    if referent.mean == 0:
        return None
    return 100.0 * abs(model.mean - referent.mean) / abs(referent.mean)


def fidelity_score(model: SampleSummary, referent: SampleSummary) -> FidelityScore:
    """Score a model's output distribution against the referent's.

    ``f = f_a * f_v`` is formed in log space so that products near the
    bottom of the double range (scores of 1e-9 and far smaller)
    keep their relative precision.
    """
    log_fa = _log_accuracy(model, referent)
    log_fv = _log_variability(model, referent)
    same_mean = model.mean == referent.mean
    same_std = model.std == referent.std
    log_f = log_fa + log_fv
    return FidelityScore(
        f=_exp_score(log_f, same_mean and same_std),
        f_a=_exp_score(log_fa, same_mean),
        f_v=_exp_score(log_fv, same_std),
        percent_error=percent_error(model, referent),
        log_f=log_f,
    )


def binary_entropy(p: float) -> float:
    if p in (0.0, 1.0):
        return 0.0
    return -(p * math.log2(p) + (1 - p) * math.log2(1 - p))


def predictor_information(success_rate: float) -> float:
    """Information (bits) carried by a binary predictor with the given hit rate.

    ``1 - H2(p)``: a predictor that is wrong 80% of the time is as useful as
    one that is right 80% of the time, because its output can be inverted.
    """
    if not 0.0 <= success_rate <= 1.0 or math.isnan(success_rate):
        raise FidelityError(f"success rate must lie in [0, 1], got {success_rate}")
    return 1.0 - binary_entropy(success_rate)


def _check_registry(models: Sequence[ModelRecord]) -> None:
    if not models:
        raise FidelityError("ranking needs at least one model")
    seen: set[str] = set()
    dupes = sorted({m.name for m in models if m.name in seen or seen.add(m.name)})
    if dupes:
        raise FidelityError(f"duplicate model names: {', '.join(dupes)}")


def _tie_groups(entries: list[tuple[str, float]], keys: list) -> tuple[tuple[str, ...], ...]:
    groups: dict = {}
    for (name, _), key in zip(entries, keys):
        groups.setdefault(key, []).append(name)
    return tuple(tuple(g) for g in groups.values() if len(g) > 1)


def rank_absolute(models: Sequence[ModelRecord], referent: SampleSummary) -> Ranking:
    """Order models by their fidelity score against the referent (descending)."""
    _check_registry(models)
    scored = [(m.name, fidelity_score(m.summary, referent)) for m in models]
    scored.sort(key=lambda item: (-item[1].log_f, item[0]))
    entries = [(name, s.f) for name, s in scored]
    keys = [s.log_f for _, s in scored]
    return Ranking(tuple(entries), "absolute", ties=_tie_groups(entries, keys))


def score_difference_matrix(scores: Sequence[float]) -> np.ndarray:
    """Pairwise relative fidelity ``D[i, j] = f_i - f_j``."""
    f = np.asarray(scores, dtype=float)
    return f[:, None] - f[None, :]


def rank_relative(models: Sequence[ModelRecord], referent: SampleSummary) -> Ranking:
    """Order models by pairwise score differences instead of raw scores.

    Primary key is the row sum of the difference matrix. Rounded row sums
    are monotone in ``f`` but can merge near-equal scores, so the count of
    strictly positive pairwise differences breaks such ties before names do.
    """
    _check_registry(models)
    scores = [fidelity_score(m.summary, referent) for m in models]
    # log-space differences keep order information when several f clamp to the floor
    d = score_difference_matrix([s.log_f for s in scores])
    row_sums = [math.fsum(row) for row in d]
    wins = (d > 0).sum(axis=1).tolist()
    order = sorted(range(len(models)), key=lambda i: (-row_sums[i], -wins[i], models[i].name))
    entries = [(models[i].name, scores[i].f) for i in order]
    keys = [(row_sums[i], wins[i]) for i in order]
    return Ranking(tuple(entries), "relative", ties=_tie_groups(entries, keys))
