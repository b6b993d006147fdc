# %% [markdown]
# # Monte Carlo gradeability
#
# Soil cohesion and friction angle are drawn from normal distributions; for
# each draw the critical angle is bisected on 30-70 % grade to 0.25 %.
# Tire variants differ only in a traction efficiency factor. The vehicle
# and soil numbers are illustrative.

# %%
import numpy as np

from fidelity.gradeability import SoilDistribution, VehicleConfig, monte_carlo_ca
from fidelity.metrics import fidelity_score

soil = SoilDistribution()
referent = monte_carlo_ca(VehicleConfig(tire_efficiency=1.0), soil, runs=1000, seed=42)
print(f"referent: mean {referent.summary.mean:.3f} %, std {referent.summary.std:.3f} %")

for eta in (0.85, 0.9, 0.95, 0.98):
    variant = monte_carlo_ca(VehicleConfig(tire_efficiency=eta), soil, runs=1000, seed=42)
    s = fidelity_score(variant.summary, referent.summary)
    print(f"eta {eta:.2f}: mean {variant.summary.mean:.3f}  f {s.f:.3g}  (f_a {s.f_a:.3g}, f_v {s.f_v:.3g})")

# %% [markdown]
# Histogram data for plotting, 1 % grade bins.

# %%
counts, edges = np.histogram(referent.samples, bins=np.arange(30, 71, 1))
for lo, c in zip(edges, counts):
    if c:
        print(f"{lo:>4.0f}% {'#' * (c // 5)}")
