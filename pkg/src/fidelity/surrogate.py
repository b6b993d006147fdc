"""Polynomial surrogates: equispaced interpolants, Taylor models, least-squares fits.

All three live in one type, :class:`PolynomialModel`, stored as monomial
coefficients about a center point. Also here: the equispaced interpolation
error bound and a Monte Carlo check that a surrogate never scores above
the referent it was built from.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateError, FidelityError
from .metrics import fidelity_score, summarize
from .scenario import ScenarioDomain

MAX_INTERPOLATION_DEGREE = 12
COND_LIMIT = 1e12
PROVENANCES = ("interpolant", "taylor", "least-squares")

Derivatives = Callable[[float, int], Sequence[float]]


@dataclass(frozen=True)
class PolynomialModel:
    center: float
    coefficients: tuple[float, ...]
    provenance: str = "interpolant"

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise FidelityError("polynomial needs at least one coefficient")
        if self.provenance not in PROVENANCES:
            raise FidelityError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        t = np.asarray(x, dtype=float) - self.center
        acc = np.zeros_like(t) + self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * t + c
        return float(acc) if acc.ndim == 0 else acc

    def derivative(self, order: int = 1) -> PolynomialModel:
        coeffs = list(self.coefficients)
        for _ in range(order):
            coeffs = [k * c for k, c in enumerate(coeffs)][1:] or [0.0]
        return PolynomialModel(self.center, tuple(coeffs), self.provenance)


@dataclass(frozen=True)
class ErrorBound:
    bound: float
    derivative_bound: float
    degree: int
    spacing: float


def _newton_to_monomial(nodes: np.ndarray, newton: np.ndarray, center: float) -> np.ndarray:
    # Horner over the Newton basis, with each factor (x - x_j) written as (t - (x_j - center))
    shifts = nodes - center
    poly = np.array([newton[-1]])
    for k in range(len(newton) - 2, -1, -1):
        grown = np.zeros(len(poly) + 1)
        grown[1:] += poly
        grown[:-1] -= shifts[k] * poly
        grown[0] += newton[k]
        poly = grown
    return poly


def divided_differences(nodes: np.ndarray, values: np.ndarray) -> np.ndarray:
    coef = np.array(values, dtype=float)
    n = len(nodes)
    for j in range(1, n):
        coef[j:] = (coef[j:] - coef[j - 1:-1]) / (nodes[j:] - nodes[:n - j])
    return coef


def interpolate_equispaced(referent_fn: Callable[[float], float], a: float, b: float, n: int) -> PolynomialModel:
    """Degree-``n`` interpolant through ``n + 1`` equally spaced nodes on ``[a, b]``."""
    if not a < b:
        raise FidelityError(f"need a < b, got [{a}, {b}]")
    if n < 1:
        raise FidelityError("degree must be >= 1")
    if n > MAX_INTERPOLATION_DEGREE:
        raise FidelityError(
            f"degree {n} exceeds the cap of {MAX_INTERPOLATION_DEGREE}; use a lower degree"
        )
    center = 0.5 * (a + b)
    nodes = np.linspace(a, b, n + 1)
    cond = np.linalg.cond(np.vander(nodes - center, increasing=True))
    if not cond < COND_LIMIT:
        raise FidelityError(
            f"node system nearly singular (condition {cond:.3g}); use a lower degree or a narrower interval"
        )
    values = np.array([float(referent_fn(float(x))) for x in nodes])
    if not np.all(np.isfinite(values)):
        raise FidelityError("referent returned non-finite values at interpolation nodes")
    coeffs = _newton_to_monomial(nodes, divided_differences(nodes, values), center)
    model = PolynomialModel(center, tuple(coeffs), "interpolant")
    residual = float(np.max(np.abs(model(nodes) - values)))
    if residual > 1e-9 * max(1.0, float(np.max(np.abs(values)))):
        raise FidelityError(f"interpolant misses its nodes by {residual:.3g}; use a lower degree")
    return model


def interpolation_error_bound(M: float, n: int, a: float, b: float) -> ErrorBound:
    """``M * h**(n+1) / (4 * (n+1))`` with node spacing ``h = (b - a) / n``."""
    if M < 0:
        raise FidelityError("derivative bound M must be >= 0")
    if n < 1:
        raise FidelityError("degree must be >= 1")
    if not a < b:
        raise FidelityError(f"need a < b, got [{a}, {b}]")
    h = (b - a) / n
    return ErrorBound(M * h ** (n + 1) / (4 * (n + 1)), M, n, h)


def derivative_bound(derivatives: Derivatives, order: int, a: float, b: float, points: int = 10001) -> float:
    """Dense-sample estimate of ``max |f^(order)|`` on ``[a, b]``."""
    xs = np.linspace(a, b, points)
    return float(max(abs(derivatives(float(x), order)[order]) for x in xs))


def max_abs_error(fn: Callable, model: Callable, a: float, b: float, points: int = 10001) -> float:
    xs = np.linspace(a, b, points)
    f = np.array([float(fn(float(x))) for x in xs])
    return float(np.max(np.abs(f - model(xs))))


def taylor_model(derivatives_at_a: Sequence[float], a: float) -> PolynomialModel:
    """Taylor polynomial from ``[f(a), f'(a), ..., f^(n)(a)]``."""
    if len(derivatives_at_a) == 0:
        raise FidelityError("taylor_model needs at least f(a)")
    coeffs = tuple(float(d) / math.factorial(k) for k, d in enumerate(derivatives_at_a))
    return PolynomialModel(float(a), coeffs, "taylor")


def taylor_family(derivatives: Derivatives, a: float, orders: Sequence[int]) -> list[PolynomialModel]:
    """One Taylor model per requested order, all expanded about ``a``."""
    if not orders:
        raise FidelityError("orders must be non-empty")
    if any(k < 0 for k in orders):
        raise FidelityError("orders must be >= 0")
    return [taylor_model(list(derivatives(a, k))[: k + 1], a) for k in orders]


def sin_derivatives(a: float, n: int) -> list[float]:
    cycle = (math.sin(a), math.cos(a), -math.sin(a), -math.cos(a))
    return [cycle[k % 4] for k in range(n + 1)]


def exp_derivatives(a: float, n: int) -> list[float]:
    return [math.exp(a)] * (n + 1)


def polynomial_derivatives(poly: PolynomialModel) -> Derivatives:
    def derivs(x: float, n: int) -> list[float]:
        out, p = [], poly
        for _ in range(n + 1):
            out.append(float(p(x)))
            p = p.derivative()
        return out

    return derivs


def fit_least_squares(data: Sequence[tuple[float, float]], degree: int) -> PolynomialModel:
    """Least-squares polynomial of the given degree, centered on the mean abscissa."""
    if degree < 0:
        raise FidelityError("degree must be >= 0")
    xy = np.asarray(data, dtype=float)
    if xy.ndim != 2 or xy.shape[1] != 2:
        raise FidelityError("data must be a sequence of (x, y) pairs")
    if len(xy) <= degree:
        raise FidelityError(f"need more than {degree} points for degree {degree}, got {len(xy)}")
    x, y = xy[:, 0], xy[:, 1]
    if degree > 0 and np.all(x == x[0]):
        raise FidelityError("x values are all identical")
    center = float(np.mean(x))
    t = x - center
    scale = float(np.max(np.abs(t))) or 1.0
    V = np.vander(t / scale, degree + 1, increasing=True)
    sol, _, rank, _ = np.linalg.lstsq(V, y, rcond=None)
    if rank < degree + 1:
        raise FidelityError(f"rank-deficient least-squares system (rank {rank} < {degree + 1})")
    coeffs = sol / scale ** np.arange(degree + 1)
    return PolynomialModel(center, tuple(coeffs), "least-squares")


def rmse(model: Callable, data: Sequence[tuple[float, float]]) -> float:
    xy = np.asarray(data, dtype=float)
    return float(np.sqrt(np.mean((model(xy[:, 0]) - xy[:, 1]) ** 2)))


def cubic_noise_data(n: int, noise_std: float, seed: int, lo: float = -1.5, hi: float = 1.5) -> list[tuple[float, float]]:
    """``n`` samples of ``x**3 - x`` plus Gaussian noise at uniformly drawn x."""
    rng = np.random.default_rng(seed)
    x = np.sort(rng.uniform(lo, hi, n))
    y = x**3 - x + rng.normal(0.0, noise_std, n)
    return list(zip(x.tolist(), y.tolist()))


def overfit_demo(
    train_seed: int = 11,
    holdout_seed: int = 12,
    n: int = 30,
    noise_std: float = 0.2,
    degrees: Sequence[int] = (3, 9),
) -> dict:
    """Train/holdout RMSE per degree on cubic-plus-noise data.

    The holdout set is an independent sample of the same size at its own seed.
    """
    train = cubic_noise_data(n, noise_std, train_seed)
    holdout = cubic_noise_data(n, noise_std, holdout_seed)
    out = {"train_seed": train_seed, "holdout_seed": holdout_seed, "n": n, "noise_std": noise_std, "fits": []}
    for deg in degrees:
        model = fit_least_squares(train, deg)
        out["fits"].append(
            {"degree": deg, "train_rmse": rmse(model, train), "holdout_rmse": rmse(model, holdout)}
        )
    return out


def surrogate_fidelity_check(
    surrogate: Callable,
    referent_fn: Callable[[float], float],
    domain: ScenarioDomain,
    noise_std: float = 0.0,
    mc_runs: int = 1000,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo fidelity of a surrogate and of its referent, both scored against the referent.

    Inputs are drawn uniformly over the domain. Optional output noise uses a
    single shared draw for both streams, so an exact surrogate still scores 1.
    """
    if mc_runs < 100:
        raise FidelityError("mc_runs must be >= 100")
    if noise_std < 0:
        raise FidelityError("noise_std must be >= 0")
    input_seq, noise_seq = np.random.SeedSequence(seed).spawn(2)
    xs = np.random.default_rng(input_seq).uniform(domain.lo, domain.hi, mc_runs)
    noise = np.random.default_rng(noise_seq).normal(0.0, noise_std, mc_runs) if noise_std > 0 else 0.0
    ref_out = np.array([float(referent_fn(float(x))) for x in xs]) + noise
    if isinstance(surrogate, PolynomialModel):
        sur_out = surrogate(xs) + noise
    else:
        sur_out = np.array([float(surrogate(float(x))) for x in xs]) + noise
    ref = summarize(ref_out)
    sur = summarize(sur_out)
    for label, s in (("referent", ref), ("surrogate", sur)):
        if s.std == 0:
            raise DegenerateError(f"{label} output stream has zero variance")
    f_sur = fidelity_score(sur, ref).f
    if np.any(sur_out != ref_out):
        # distinct outputs with coincident summaries still carry less information
        f_sur = min(f_sur, math.nextafter(1.0, 0.0))
    return f_sur, fidelity_score(ref, ref).f
