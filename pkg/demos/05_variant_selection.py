# %% [markdown]
# # Picking the cheapest adequate spring model
#
# The coil-spring model has four switchable features. With all of them on
# it is the referent. At each DoE point we keep the cheapest variant whose
# deformation is within epsilon of the referent's and whose failure
# prediction matches.

# %%
from collections import Counter

from fidelity.variants import (
    DEFAULT_GRID,
    FEATURE_COSTS,
    CoilSpringSpec,
    disagreement_points,
    doe_run,
    max_deflection,
    select_cheapest_acceptable,
)

spec = CoilSpringSpec()
table = doe_run(spec, DEFAULT_GRID)
eps = 0.01 * max_deflection(table)
report = select_cheapest_acceptable(table, eps)
print(f"epsilon {eps:.3f} mm -> cost ratio {report.cost_ratio:.3f}")
for flags, n in Counter(v.label for v in report.chosen).most_common():
    print(f"  {flags}: chosen at {n} points")

# %% [markdown]
# Which features matter where: switch one off (all others on) and list
# the DoE points where that variant stops being acceptable.

# %%
points = DEFAULT_GRID.points()
for feature in FEATURE_COSTS:
    hits = disagreement_points(table, feature, eps)
    temps = sorted({points[i][1] for i in hits})
    lengths = sorted({points[i][2] for i in hits})
    print(f"{feature:<24} {len(hits):>3} points; temperatures {temps}; length multipliers {lengths}")

# %% [markdown]
# A looser tolerance never costs more.

# %%
for e in (0.0, 0.1, eps, 1.0, 5.0):
    print(f"eps {e:6.3f}: cost ratio {select_cheapest_acceptable(table, e).cost_ratio:.3f}")
