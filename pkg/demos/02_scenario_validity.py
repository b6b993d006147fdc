# %% [markdown]
# # Where is a model valid?
#
# `y = x` is a fine stand-in for `sin(x)` near zero and a poor one elsewhere.
# A validity range makes that statement precise for a chosen criterion.

# %%
import math

from fidelity.metrics import SampleSummary
from fidelity.scenario import Criterion, ScenarioDomain, fidelity_map, trace, validity_range

domain = ScenarioDomain(0.0, 1.5, 0.01)
one_percent = Criterion("relative-error", 0.01)
vr = validity_range(lambda x: x, math.sin, domain, one_percent)
print("y = x within 1% of sin(x) on:", [(round(a, 4), round(b, 4)) for a, b in vr.intervals])

for threshold in (0.001, 0.01, 0.05, 0.2):
    vr = validity_range(lambda x: x, math.sin, domain, Criterion("relative-error", threshold))
    print(f"  threshold {threshold:>5}: valid up to {vr.intervals[0][1]:.4f} rad")

# %% [markdown]
# A trace is just the model sampled on the domain grid, handy for plotting.

# %%
t = trace(math.sin, ScenarioDomain(0.0, math.pi / 2, math.pi / 8))
for x, y in zip(t.inputs, t.outputs):
    print(f"{x:.4f}  {y:.4f}")

# %% [markdown]
# The same model can score perfectly in one experimental frame and terribly
# in another.

# %%
low, high = ScenarioDomain(0, 10, 1), ScenarioDomain(10, 20, 1)
model = [(low, SampleSummary(1.0, 0.1)), (high, SampleSummary(2.0, 0.1))]
ref = [(low, SampleSummary(1.0, 0.1)), (high, SampleSummary(1.0, 0.1))]
for dom, score in fidelity_map(model, ref):
    print(f"[{dom.lo}, {dom.hi}]  f = {score.f:.3g}")
