# %% [markdown]
# # Surrogates: interpolation error, Taylor families, overfitting
#
# An equispaced interpolant of degree n obeys
# `|f - p| <= M h^(n+1) / (4 (n+1))`, where M bounds the (n+1)-th derivative.

# %%
import math

from fidelity.scenario import Criterion, ScenarioDomain, validity_range
from fidelity.surrogate import (
    derivative_bound,
    interpolate_equispaced,
    interpolation_error_bound,
    max_abs_error,
    overfit_demo,
    sin_derivatives,
    surrogate_fidelity_check,
    taylor_family,
)

a, b = 0.0, math.pi
dom = ScenarioDomain(a, b, 0.01)
print("deg  max error    bound        f_surrogate")
for n in range(2, 9):
    p = interpolate_equispaced(math.sin, a, b, n)
    M = derivative_bound(sin_derivatives, n + 1, a, b)
    err = max_abs_error(math.sin, p, a, b)
    bound = interpolation_error_bound(M, n, a, b).bound
    f_sur, _ = surrogate_fidelity_check(p, math.sin, dom, mc_runs=2000, seed=0)
    print(f"{n:>3}  {err:.3e}  {bound:.3e}  {f_sur:.12f}")

# %% [markdown]
# Taylor models of sin about x = 1: higher order, wider range of validity.

# %%
wide = ScenarioDomain(-2 * math.pi, 2 * math.pi, 0.01)
for order, m in zip((1, 3, 5, 7), taylor_family(sin_derivatives, 1.0, [1, 3, 5, 7])):
    lo, hi = validity_range(m, math.sin, wide, Criterion("relative-error", 0.01)).interval_containing(1.0)
    print(f"order {order}: valid on [{lo:.3f}, {hi:.3f}]  width {hi - lo:.3f}")

# %% [markdown]
# A degree-9 fit to 30 noisy cubic samples beats the degree-3 fit on its
# training data and loses on fresh data.

# %%
for fit in overfit_demo(11, 12)["fits"]:
    print(f"degree {fit['degree']}: train RMSE {fit['train_rmse']:.4f}, holdout RMSE {fit['holdout_rmse']:.4f}")
