import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from fidelity.errors import FidelityError
from fidelity.metrics import SampleSummary, fidelity_score
from fidelity.scenario import (
    Criterion,
    ProductDomain,
    ResponseTrace,
    ScenarioDomain,
    fidelity_map,
    trace,
    validity_range,
)

from conftest import REFERENT

SMALL_ANGLE_EDGE = brentq(lambda x: (x - math.sin(x)) / math.sin(x) - 0.01, 0.1, 1.0)


def test_domain_validation():
    with pytest.raises(FidelityError):
        ScenarioDomain(1, 0, 0.1)
    with pytest.raises(FidelityError):
        ScenarioDomain(0, 1, 0.75)
    with pytest.raises(FidelityError):
        ScenarioDomain(0, 1, 0)


def test_trace_examples():
    t = trace(lambda x: x, ScenarioDomain(0, 1, 0.5))
    assert t.inputs == (0.0, 0.5, 1.0) and t.outputs == t.inputs
    t = trace(math.sin, ScenarioDomain(0, math.pi / 2, math.pi / 4))
    assert np.allclose(t.outputs, [0, 0.70711, 1.0], atol=1e-5)
    t = trace(lambda x: x * x, ScenarioDomain(-1, 1, 0.5))
    assert np.allclose(t.outputs, [1, 0.25, 0, 0.25, 1])


def test_trace_includes_hi_off_grid():
    t = trace(lambda x: x, ScenarioDomain(0, 1, 0.3))
    assert t.inputs[-1] == 1.0
    assert np.allclose(t.inputs, [0, 0.3, 0.6, 0.9, 1.0])


def test_trace_nonfinite_names_input():
    with pytest.raises(FidelityError, match="x=0.0"):
        trace(lambda x: 1 / x if x else math.inf, ScenarioDomain(0, 1, 0.5))


def test_response_trace_invariants():
    with pytest.raises(FidelityError):
        ResponseTrace((0.0, 0.0), (1.0, 2.0))
    with pytest.raises(FidelityError):
        ResponseTrace((0.0,), (1.0, 2.0))


def test_small_angle_validity():
    vr = validity_range(lambda x: x, math.sin, ScenarioDomain(0, 1.5, 0.01), Criterion("relative-error", 0.01))
    assert len(vr.intervals) == 1
    lo, hi = vr.intervals[0]
    assert lo == 0.0
    assert abs(hi - SMALL_ANGLE_EDGE) <= 0.0005
    assert abs(hi - 0.2441) <= 0.0005


def test_self_validity_and_offset():
    dom = ScenarioDomain(0, 1.5, 0.01)
    assert validity_range(math.sin, math.sin, dom).intervals == ((0.0, 1.5),)
    assert validity_range(lambda x: x + 10, math.sin, dom).intervals == ()


def test_absolute_criterion():
    vr = validity_range(lambda x: x, lambda x: 0.0, ScenarioDomain(-1, 1, 0.01), Criterion("absolute-error", 0.25))
    (lo, hi), = vr.intervals
    assert lo == pytest.approx(-0.25, abs=1e-4) and hi == pytest.approx(0.25, abs=1e-4)


def test_criterion_validation():
    with pytest.raises(FidelityError):
        Criterion("relative-error", 0)
    with pytest.raises(FidelityError):
        Criterion("squared", 0.1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_self_validity_random_polynomials(seed):
    c = np.random.default_rng(seed).normal(size=4)
    f = lambda x: float(np.polyval(c, x))
    dom = ScenarioDomain(-2, 2, 0.05)
    assert validity_range(f, f, dom).intervals == ((-2.0, 2.0),)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.001, 0.2), st.floats(0.05, 1.0))
def test_threshold_monotonicity(t_small, frac):
    dom = ScenarioDomain(-3, 3, 0.02)
    big = Criterion("relative-error", t_small / frac)
    small = Criterion("relative-error", t_small)
    model = lambda x: x - x**3 / 6
    wide = validity_range(model, math.sin, dom, big)
    narrow = validity_range(model, math.sin, dom, small)
    assert narrow.total_width <= wide.total_width + 1e-12
    for lo, hi in narrow.intervals:
        assert any(a - 1e-12 <= lo and hi <= b + 1e-12 for a, b in wide.intervals)


def test_refined_endpoints_straddle_boundary():
    dom = ScenarioDomain(-1.5, 1.5, 0.01)
    crit = Criterion("relative-error", 0.01)
    model = lambda x: x
    vr = validity_range(model, math.sin, dom, crit)
    tol = dom.resolution / 100
    for lo, hi in vr.intervals:
        for edge, outward in ((lo, -1), (hi, 1)):
            assert crit.holds(model(edge), math.sin(edge))
            if dom.lo < edge < dom.hi:
                out = edge + outward * 2 * tol
                assert not crit.holds(model(out), math.sin(out))


def test_fidelity_map_examples():
    a, b = ScenarioDomain(0, 1, 0.1), ScenarioDomain(1, 2, 0.1)
    res = fidelity_map(
        [(a, SampleSummary(1.0, 0.1)), (b, SampleSummary(2.0, 0.1))],
        [(a, SampleSummary(1.0, 0.1)), (b, SampleSummary(1.0, 0.1))],
    )
    assert res[0][1].f == 1.0
    assert res[1][1].f == pytest.approx(math.exp(-50), rel=1e-12)
    assert res[1][1].f == pytest.approx(1.93e-22, rel=0.01)

    dom = ScenarioDomain(30, 70, 0.25)
    (d, s), = fidelity_map([(dom, SampleSummary(46.191, 0.982))], [(dom, SampleSummary(*REFERENT))])
    assert s == fidelity_score(SampleSummary(46.191, 0.982), SampleSummary(*REFERENT))


def test_fidelity_map_misaligned():
    a, b = ScenarioDomain(0, 1, 0.1), ScenarioDomain(1, 2, 0.1)
    s = SampleSummary(1.0, 0.1)
    with pytest.raises(FidelityError, match="misaligned"):
        fidelity_map([(a, s)], [(b, s)])
    with pytest.raises(FidelityError, match="mismatch"):
        fidelity_map([(a, s)], [(a, s), (b, s)])


def test_product_domain_axes():
    box = ProductDomain((ScenarioDomain(0, 1, 0.1), ScenarioDomain(-1, 1, 0.5)))
    vr = validity_range(lambda x: x, lambda x: x, box.axis(1))
    assert vr.intervals == ((-1.0, 1.0),)
