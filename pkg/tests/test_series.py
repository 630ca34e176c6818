import pytest
from hypothesis import given, settings, strategies as st

from qmap.metrics import MapMetrics
from qmap.series import (Baseline, MetricSeries, SeriesEntry, build_series,
                         detect_disruption)
from qmap.synth import fig2b_like, fig2c_like, gen_motif_map, gen_random_map

from conftest import SHOCK_INDEX, disruption_maps


def density_series(values):
    return MetricSeries(tuple(SeriesEntry(f"t{t}", MapMetrics(10, 10, 1.0, v, None, None))
                              for t, v in enumerate(values)))


def test_constant_series_equals_averages():
    m = gen_random_map(8, 15, 1)
    s = build_series([m.replace(period=p) for p in "abc"])
    for metric in ("n_concepts", "n_links", "ratio", "density", "avg_closeness"):
        vals = s.values(metric)
        assert len(set(vals)) == 1 and s.averages[metric] == vals[0]
    assert s.averages["complexity"] is None
    assert detect_disruption(s).flags == ()


def test_link_average():
    maps = [gen_motif_map({"edge": k}, 20, period=str(i)) for i, k in enumerate([10, 10, 6, 10])]
    assert build_series(maps).averages["n_links"] == 9.0


def test_complexity_column_uses_frames():
    a, b = fig2b_like(), fig2c_like()
    s = build_series([a.to_map(), b.to_map()], [a, b], ["x", "y"])
    assert s.values("complexity") == [3, 2]
    assert s.periods == ["x", "y"]


def test_duplicate_periods_rejected():
    m = gen_random_map(5, 4, 0, period="2020")
    with pytest.raises(ValueError):
        build_series([m, m])


def test_paper_sized_drop_is_flagged():
    rep = detect_disruption(density_series([0.42, 0.24]))
    (flag,) = rep.flags
    assert flag.period == "t1" and flag.metric == "density"
    assert flag.relative_drop == pytest.approx(0.18 / 0.42)
    assert round(flag.relative_drop, 2) == 0.43
    assert flag.baseline == 0.42


def test_small_dip_not_flagged():
    assert detect_disruption(density_series([1.0, 1.0, 0.9, 1.0])).flags == ()


def test_threshold_bounds():
    s = density_series([1.0, 0.5])
    for bad in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            detect_disruption(s, bad)
    with pytest.raises(ValueError):
        detect_disruption(density_series([1.0]))


def test_baselines():
    s = density_series([1.0, 1.0, 0.2, 0.2, 0.2])
    prev = detect_disruption(s, baseline="prev")
    assert [f.period for f in prev.flags] == ["t2"]
    trail = detect_disruption(s, baseline="trailing:3")
    # t3: mean(1, 1, .2) = .7333 -> drop .727; t4: mean(1, .2, .2) = .4667 -> .571
    assert [f.period for f in trail.flags] == ["t2", "t3", "t4"]
    assert trail.flags[1].baseline == pytest.approx(2.2 / 3)
    overall = detect_disruption(s, baseline="overall")
    assert [f.period for f in overall.flags] == ["t2", "t3", "t4"]
    assert overall.flags[0].baseline == pytest.approx(0.52)
    assert str(Baseline.parse("trailing:4")) == "trailing:4"
    for bad in ("trailing", "trailing:x", "prev:2", "median", "trailing:0"):
        with pytest.raises(ValueError):
            Baseline.parse(bad)


def test_two_sided():
    s = density_series([1.0, 1.6, 1.6])
    assert detect_disruption(s).flags == ()
    (flag,) = detect_disruption(s, two_sided=True).flags
    assert flag.direction == "rise" and flag.relative_drop == pytest.approx(0.6)


def test_missing_values_are_skipped():
    s = density_series([1.0, None, 0.1])
    assert detect_disruption(s).flags == ()


def test_flag_order_period_then_metric():
    rep = detect_disruption(build_series(disruption_maps()))
    keys = [(f.period, f.metric) for f in rep.flags]
    assert keys == sorted(keys)
    assert rep.flagged_periods() == [str(2015 + SHOCK_INDEX)]


@settings(max_examples=100)
@given(st.lists(st.floats(0.01, 100), min_size=2, max_size=10), st.floats(0.01, 1000))
def test_flags_scale_invariant(values, factor):
    a = detect_disruption(density_series(values))
    b = detect_disruption(density_series([v * factor for v in values]))
    assert [(f.period, f.metric) for f in a.flags] == [(f.period, f.metric) for f in b.flags]
    for fa, fb in zip(a.flags, b.flags):
        assert fa.relative_drop == pytest.approx(fb.relative_drop, rel=1e-9)


@settings(max_examples=100)
@given(st.floats(0.3, 0.99), st.integers(2, 8), st.integers(1, 7), st.floats(0.1, 10))
def test_single_drop_single_flag(d, n, at, level):
    at = min(at, n - 1)
    values = [level] * n
    values[at] = level * (1 - d)
    flags = detect_disruption(density_series(values), threshold=0.3).flags
    assert [f.period for f in flags] == [f"t{at}"]
    assert abs(flags[0].relative_drop - d) <= 1e-12


@settings(max_examples=100)
@given(st.lists(st.floats(0.01, 100), min_size=2, max_size=10),
       st.floats(0.01, 0.98), st.floats(0.01, 0.98))
def test_threshold_monotone(values, t1, t2):
    lo, hi = sorted((t1, t2))
    s = density_series(values)
    assert set(detect_disruption(s, hi).flags) <= set(detect_disruption(s, lo).flags)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=6))
def test_ratio_constant_under_uniform_scaling(factors):
    maps = [gen_motif_map({"path:3": 2 * f, "cycle:4": f}, period=str(i))
            for i, f in enumerate(factors)]
    ratios = build_series(maps).values("ratio")
    assert all(abs(r - ratios[0]) <= 1e-12 for r in ratios)
