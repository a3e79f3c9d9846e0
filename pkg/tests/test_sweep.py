import io

import numpy as np
import pytest

from magnonsim import sweep as sw
from magnonsim.errors import BracketError, SweepFailureError, ValidationError
from magnonsim.liouvillian import SystemParams
from magnonsim.steadystate import solve_steady


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(parameter="n_fock", start=0, stop=1, points=2),
        dict(parameter="delta_m", start=1.0, stop=0.0, points=3),
        dict(parameter="delta_m", start=0.0, stop=1.0, points=0),
        dict(parameter="delta_m", start=0.0, stop=1.0, points=3, spacing="log"),
    ],
)
def test_axis_validation(kwargs):
    with pytest.raises(ValidationError):
        sw.AxisSpec(**kwargs)


def test_axis_values():
    axis = sw.AxisSpec("delta_m", -1.0, 1.0, 5)
    assert np.array_equal(axis.values(), np.linspace(-1, 1, 5))
    single = sw.AxisSpec("chi_qm", 3.0, 3.0, 1)
    assert np.array_equal(single.values(), np.array([3.0]))


def test_degenerate_grid_matches_single_solve():
    base = SystemParams()
    result = sw.run_sweep(base, [sw.AxisSpec("delta_m", 4.0, 4.0, 1)])
    assert len(result.records) == 1
    record = result.records[0]
    single = solve_steady(base.replace(delta_m=4.0))
    assert record.g2_zero == pytest.approx(single.g2_zero, rel=1e-12)
    assert record.mean_magnon == pytest.approx(single.mean_magnon, rel=1e-12)
    assert record.residual_norm < sw.RECORD_RESIDUAL_LIMIT


def test_row_major_ordering_and_indexing():
    base = SystemParams()
    axes = [sw.AxisSpec("delta_m", -1.0, 1.0, 3), sw.AxisSpec("chi_qm", 0.0, 2.0, 2)]
    result = sw.run_sweep(base, axes)
    assert len(result.records) == 6
    expected_order = [(-1, 0), (-1, 2), (0, 0), (0, 2), (1, 0), (1, 2)]
    for record, (v1, v2) in zip(result.records, expected_order):
        assert record.axis_values == (pytest.approx(v1), pytest.approx(v2))
    assert result.record(2, 1).axis_values == (pytest.approx(1.0), pytest.approx(2.0))
    with pytest.raises(ValidationError):
        result.record(3, 0)
    with pytest.raises(ValidationError):
        result.record(0)


def test_two_dimensional_grid_restricts_to_one_dimensional():
    base = SystemParams()
    grid2 = sw.run_sweep(
        base,
        [sw.AxisSpec("delta_m", -10.0, 10.0, 5), sw.AxisSpec("chi_qm", 10.0, 30.0, 3)],
    )
    for j, chi in enumerate(np.linspace(10.0, 30.0, 3)):
        line = sw.run_sweep(
            base.replace(chi_qm=float(chi)), [sw.AxisSpec("delta_m", -10.0, 10.0, 5)]
        )
        for i in range(5):
            rec2 = grid2.record(i, j)
            rec1 = line.records[i]
            assert rec2.g2_zero == pytest.approx(rec1.g2_zero, abs=1e-12)
            assert rec2.mean_magnon == pytest.approx(rec1.mean_magnon, abs=1e-12)
            assert rec2.qubit_excitation == pytest.approx(rec1.qubit_excitation, abs=1e-12)


def _csv_text(result) -> str:
    buffer = io.StringIO()
    sw.write_csv(result, buffer)
    return buffer.getvalue()


def test_worker_count_does_not_change_output():
    base = SystemParams()
    axes = [sw.AxisSpec("delta_m", -5.0, 5.0, 7)]
    serial = _csv_text(sw.run_sweep(base, axes, workers=1))
    parallel = _csv_text(sw.run_sweep(base, axes, workers=2))
    assert serial == parallel


def test_csv_shape_and_determinism(tmp_path):
    base = SystemParams()
    axes = [sw.AxisSpec("delta_m", -1.0, 1.0, 2), sw.AxisSpec("chi_qm", 1.0, 2.0, 2)]
    result = sw.run_sweep(base, axes)
    path = tmp_path / "grid.csv"
    sw.write_csv(result, path)
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    assert len(lines) == 5  # header + 4 records
    assert lines[0] == ",".join(sw.CSV_COLUMNS_2D)
    assert "\r" not in text and text.endswith("\n")
    rerun = sw.run_sweep(base, axes)
    assert _csv_text(rerun) == text


def test_csv_round_trips_floats():
    base = SystemParams()
    result = sw.run_sweep(base, [sw.AxisSpec("delta_m", -1.0, 1.0, 3)])
    lines = _csv_text(result).splitlines()
    for record, line in zip(result.records, lines[1:]):
        fields = line.split(",")
        assert float(fields[0]) == record.axis_values[0]
        assert float(fields[1]) == record.g2_zero
        assert float(fields[-1]) == record.residual_norm


def test_undefined_g2_renders_as_empty_fields():
    base = SystemParams(omega_s=0.0)
    result = sw.run_sweep(base, [sw.AxisSpec("omega_d", 0.0, 0.1, 2)])
    assert result.records[0].g2_zero is None
    assert result.records[1].g2_zero is not None
    lines = _csv_text(result).splitlines()
    first = lines[1].split(",")
    assert first[1] == "" and first[2] == ""  # g2 and log10_g2 empty
    assert first[0] != "" and all(field != "" for field in first[3:])


def test_grid_size_and_axis_count_limits():
    base = SystemParams()
    with pytest.raises(ValidationError):
        sw.run_sweep(base, [])
    with pytest.raises(ValidationError):
        sw.run_sweep(
            base,
            [
                sw.AxisSpec("delta_m", 0.0, 1.0, 2),
                sw.AxisSpec("chi_qm", 0.0, 1.0, 2),
                sw.AxisSpec("m_th", 0.0, 1.0, 2),
            ],
        )
    with pytest.raises(ValidationError):
        sw.run_sweep(base, [sw.AxisSpec("delta_m", 0.0, 1.0, 2)], workers=0)
    with pytest.raises(ValidationError):
        sw.run_sweep(
            base,
            [
                sw.AxisSpec("delta_m", 0.0, 1.0, 1001),
                sw.AxisSpec("chi_qm", 0.0, 1.0, 1001),
            ],
        )


def test_persistent_failure_aborts_with_coordinates(monkeypatch):
    def always_fails(params, method="direct"):
        raise ValidationError("forced failure")

    monkeypatch.setattr(sw, "solve_steady", always_fails)
    with pytest.raises(SweepFailureError) as exc_info:
        sw.run_sweep(SystemParams(), [sw.AxisSpec("delta_m", 2.5, 3.5, 2)])
    assert exc_info.value.coordinates == (2.5,)


@pytest.mark.parametrize("chi", [20.0, 35.0, 50.0])
def test_both_statistics_regimes_in_strong_coupling_cuts(chi):
    # Strong dispersive coupling produces antibunched and bunched detunings
    # in the same cut, so the g2 = 1 level set crosses it.
    base = SystemParams(chi_qm=chi)
    result = sw.run_sweep(base, [sw.AxisSpec("delta_m", -60.0, 60.0, 121)])
    values = [r.g2_zero for r in result.records if r.g2_zero is not None]
    assert any(v < 1.0 for v in values)
    assert any(v > 1.0 for v in values)


def test_unity_contour_nonempty_above_coupling_ten():
    # Over the coupling range >= 10 the detuning-coupling region holds both
    # statistics regimes, so the g2 = 1 contour is nonempty there.  (At
    # exactly chi_qm = 10 the cut stays just above 1; antibunching first
    # appears near chi_qm = 12.)
    base = SystemParams()
    result = sw.run_sweep(
        base,
        [sw.AxisSpec("delta_m", -60.0, 60.0, 41), sw.AxisSpec("chi_qm", 10.0, 50.0, 9)],
    )
    values = [r.g2_zero for r in result.records if r.g2_zero is not None]
    assert any(v < 1.0 for v in values)
    assert any(v > 1.0 for v in values)


def test_thermal_threshold_magnon_channel():
    base = SystemParams()  # antibunched operating point
    result = sw.thermal_threshold(base, "m_th", hi=0.05)
    assert 0.002 <= result.crossing <= 0.006
    assert result.g2_at_zero < 1.0 < result.g2_at_hi
    assert result.iterations <= 40
    assert len(result.evaluations) >= 3
    occupations = [occ for occ, _ in result.evaluations]
    assert occupations[0] == 0.0 and occupations[1] == 0.05


def test_thermal_threshold_bisection_tolerance():
    result = sw.thermal_threshold(SystemParams(), "m_th", hi=0.05, rel_tol=1e-3)
    lo_bound = result.crossing * (1.0 - 1e-3)
    hi_bound = result.crossing * (1.0 + 1e-3)
    solved_below = [g for occ, g in result.evaluations if occ <= lo_bound]
    solved_above = [g for occ, g in result.evaluations if occ >= hi_bound]
    assert max(solved_below) < 1.0
    assert min(solved_above) > 1.0


def test_thermal_threshold_bracket_error_reports_endpoints():
    bunched = SystemParams(chi_qm=40.0, delta_m=38.0)  # already above 1 at zero noise
    with pytest.raises(BracketError) as exc_info:
        sw.thermal_threshold(bunched, "m_th", hi=0.05)
    message = str(exc_info.value)
    assert "m_th = 0" in message and "0.05" in message


def test_thermal_threshold_validation():
    with pytest.raises(ValidationError):
        sw.thermal_threshold(SystemParams(), "kappa_m", hi=0.1)
    with pytest.raises(ValidationError):
        sw.thermal_threshold(SystemParams(), "m_th", hi=0.0)
