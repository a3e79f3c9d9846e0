import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from magnonsim.errors import ValidationError
from magnonsim.resonance import (
    Resonance,
    ResonanceSet,
    annotate_sweep,
    resonance_set,
    single_magnon_detunings,
    two_magnon_detunings,
)
from magnonsim.sweep import AxisSpec, SweepRecord, SweepResult
from magnonsim.liouvillian import SystemParams


def detunings(resonances):
    return [r.detuning for r in resonances]


def test_single_magnon_collapses_without_dispersive_shift():
    values = detunings(single_magnon_detunings(-20.0, 0.0, 15.0))
    assert values[0] == 0.0 and values[1] == 0.0  # the (+,-) / (-,+) pair exactly
    b = math.hypot(20.0, 15.0)
    assert values[2] == pytest.approx(b, abs=0) and values[3] == pytest.approx(-b, abs=0)


def test_single_magnon_reference_arithmetic():
    values = detunings(single_magnon_detunings(-20.0, 45.0, 15.0))
    assert values[0] == pytest.approx(23.29455265819088, abs=1e-12)
    assert values[1] == pytest.approx(-23.29455265819088, abs=1e-12)
    assert values[2] == pytest.approx(48.29455265819088, abs=1e-12)
    assert values[3] == pytest.approx(-48.29455265819088, abs=1e-12)


def test_single_magnon_degenerate_pairs():
    values = detunings(single_magnon_detunings(0.0, 7.0, 0.0))
    assert sorted(values) == [-7.0, -7.0, 7.0, 7.0]


def test_two_magnon_reference_arithmetic():
    values = detunings(two_magnon_detunings(-20.0, 45.0, 15.0))
    assert values[0] == pytest.approx(33.92539669997049, abs=1e-12)
    assert values[1] == pytest.approx(-33.92539669997049, abs=1e-12)
    assert values[2] == pytest.approx(46.42539669997049, abs=1e-12)
    assert values[3] == pytest.approx(-46.42539669997049, abs=1e-12)


def test_two_magnon_collapse_without_dispersive_shift():
    values = detunings(two_magnon_detunings(-20.0, 0.0, 15.0))
    b = math.hypot(20.0, 15.0)
    assert values[0] == 0.0 and values[1] == 0.0
    assert values[2] == pytest.approx(b / 2.0, abs=0)
    assert values[3] == pytest.approx(-b / 2.0, abs=0)


@given(
    st.floats(min_value=-50, max_value=50),
    st.floats(min_value=0, max_value=50),
    st.floats(min_value=0, max_value=30),
    st.floats(min_value=0.1, max_value=8.0),
)
def test_homogeneity_degree_one(delta_q, chi, omega_s, scale):
    for maker in (single_magnon_detunings, two_magnon_detunings):
        base = detunings(maker(delta_q, chi, omega_s))
        scaled = detunings(maker(scale * delta_q, scale * chi, scale * omega_s))
        for b, s in zip(base, scaled):
            assert s == pytest.approx(scale * b, rel=1e-12, abs=1e-12)


@given(
    st.floats(min_value=-50, max_value=50),
    st.floats(min_value=0, max_value=50),
    st.floats(min_value=0, max_value=30),
)
def test_sign_flip_pairing_exact(delta_q, chi, omega_s):
    for maker in (single_magnon_detunings, two_magnon_detunings):
        values = detunings(maker(delta_q, chi, omega_s))
        assert values[0] == -values[1]
        assert values[2] == -values[3]


def test_labels_and_orders():
    res = resonance_set(-20.0, 45.0, 15.0)
    assert [r.order for r in res.single_magnon] == [1, 1, 1, 1]
    assert [r.order for r in res.two_magnon] == [2, 2, 2, 2]
    assert res.single_magnon[0].label == "|g,0> -> |g,1>"
    assert res.single_magnon[1].label == "|e,0> -> |e,1>"
    assert res.single_magnon[2].label == "|e,0> -> |g,1>"
    assert res.single_magnon[3].label == "|g,0> -> |e,1>"
    assert len(res.all()) == 8


def _synthetic_sweep(grid, g2_values):
    axis = AxisSpec("delta_m", float(grid[0]), float(grid[-1]), len(grid))
    records = tuple(
        SweepRecord(
            axis_values=(float(x),),
            g2_zero=g2,
            log10_g2=None if g2 is None or g2 <= 0 else math.log10(g2),
            p_n=(1.0, 0.0, 0.0, 0.0, 0.0),
            mean_magnon=0.0,
            qubit_excitation=0.0,
            residual_norm=0.0,
        )
        for x, g2 in zip(grid, g2_values)
    )
    return SweepResult(base=SystemParams(), axes=(axis,), records=records)


def test_annotation_exact_hit():
    grid = np.linspace(-5.0, 5.0, 11)
    g2 = 1.0 + (grid - 1.0) ** 2  # single minimum exactly at a grid point
    sweep = _synthetic_sweep(grid, g2)
    res = ResonanceSet(single_magnon=(Resonance("|g,0> -> |g,1>", 1, 1.0),), two_magnon=())
    [annotation] = annotate_sweep(sweep, res)
    assert annotation.in_range
    assert annotation.extremum_kind == "min"
    assert annotation.distance == 0.0
    assert annotation.nearest_detuning == 1.0


def test_annotation_empty_set():
    grid = np.linspace(-5.0, 5.0, 11)
    sweep = _synthetic_sweep(grid, np.ones_like(grid))
    assert annotate_sweep(sweep, ResonanceSet((), ())) == []


def test_annotation_out_of_range():
    grid = np.linspace(-5.0, 5.0, 11)
    sweep = _synthetic_sweep(grid, np.ones_like(grid))
    res = ResonanceSet(single_magnon=(Resonance("x", 1, 40.0),), two_magnon=())
    [annotation] = annotate_sweep(sweep, res)
    assert not annotation.in_range
    assert annotation.distance is None


def test_annotation_without_extremum_in_window():
    grid = np.linspace(-5.0, 5.0, 11)
    g2 = np.linspace(0.5, 1.5, 11)  # strictly monotone: no local extremum anywhere
    sweep = _synthetic_sweep(grid, g2)
    res = ResonanceSet(single_magnon=(Resonance("x", 1, 0.0),), two_magnon=())
    [annotation] = annotate_sweep(sweep, res)
    assert annotation.in_range
    assert annotation.extremum_kind is None
    assert annotation.distance is None


def test_annotation_skips_undefined_points():
    grid = np.linspace(-5.0, 5.0, 11)
    g2 = [None] * 11
    sweep = _synthetic_sweep(grid, g2)
    res = ResonanceSet(single_magnon=(Resonance("x", 1, 0.0),), two_magnon=())
    [annotation] = annotate_sweep(sweep, res)
    assert annotation.extremum_kind is None


def test_annotation_requires_detuning_axis():
    axis = AxisSpec("chi_qm", 0.0, 1.0, 3)
    sweep = SweepResult(base=SystemParams(), axes=(axis,), records=())
    with pytest.raises(ValidationError):
        annotate_sweep(sweep, ResonanceSet((), ()))
