"""Smoke tests for the python bindings: a thin pass over every exposed
operation, checking values against the same anchors the C++ suites use."""

import math

import pytest

import biomon


def test_eval_recovery_anchors():
    model = biomon.RecoveryModel(a=60, d=180, theta=0.1)
    assert biomon.eval_recovery(model, 0.0) == 180.0
    assert abs(biomon.eval_recovery(model, 10.0) - 104.14553294057308) < 1e-12
    assert abs(biomon.eval_recovery(model, 1e6) - 60.0) < 1e-9
    with pytest.raises(ValueError):
        biomon.eval_recovery(model, -1.0)


def test_fit_recovery_roundtrip():
    series = biomon.gen_recovery(a=60, d=180, theta=0.05, noise_sigma=0, n=61, dt=5, seed=1)
    fit = biomon.fit_recovery(series)
    assert fit.converged
    assert abs(fit.model.a - 60) / 60 < 1e-6
    assert abs(fit.model.d - 180) / 180 < 1e-6
    assert abs(fit.model.theta - 0.05) / 0.05 < 1e-6


def test_recovery_time():
    model = biomon.RecoveryModel(a=60, d=180, theta=0.1)
    assert abs(biomon.recovery_time(model, math.exp(-1)) - 10.0) < 1e-12
    fast = biomon.RecoveryModel(a=60, d=180, theta=0.2)
    assert biomon.recovery_time(fast, 0.05) < biomon.recovery_time(model, 0.05)


def test_validate_series_sorts_and_rejects():
    series = biomon.make_series("s1", "hr", [1.0, 0.0], [98.0, 100.0], "bpm")
    assert [s.t for s in series.samples] == [0.0, 1.0]
    with pytest.raises(ValueError):
        biomon.make_series("s1", "hr", [0.0, 0.0], [1.0, 2.0])


def test_classify_zones():
    band = biomon.ThresholdBand("glucose", lower_normal=75, upper_normal=200, upper_risk=250)
    assert biomon.classify(120, band) == biomon.Zone.normal
    assert biomon.classify(75, band) == biomon.Zone.normal
    assert biomon.classify(230, band) == biomon.Zone.abnormal
    assert biomon.classify(260, band) == biomon.Zone.risk


def test_trend_and_crossing():
    series = biomon.gen_drift(start_value=100, slope=0.5, noise_sigma=0, n=60, dt=1, seed=1)
    trend = biomon.fit_trend(series, 60.0)
    assert abs(trend.slope - 0.5) < 1e-12
    band = biomon.ThresholdBand("indicator", upper_normal=150)
    crossing = biomon.forecast_crossing(series, band, 60.0, 100.0)
    assert crossing is not None
    assert abs(crossing.t_cross - 100.0) < 1e-9
    forecast = biomon.forecast_value(trend, 100.0, 0.95)
    assert abs(forecast.value - 150.0) < 1e-9
    replay = biomon.replay_alerts(series, band, 60.0, 100.0)
    kinds = [a.kind for a in replay.alerts]
    assert kinds.count(biomon.AlertKind.predicted_crossing) == 1


def test_predictors_roundtrip():
    matrix = biomon.gen_panel([2.0, 0.0, -1.5, 0.0, 0.0, 0.0], m=200, noise_sigma=0.5, seed=5)
    report = biomon.fit_linear(matrix)
    assert report.ranking[0] == "f1"
    assert report.ranking[1] == "f3"
    top = biomon.rank_predictors(report, 0.1)
    assert top[0][0] == "f1"
    corr = biomon.correlation_matrix(matrix, include_target=True)
    assert corr.dim == 7
    pairs = biomon.significant_correlations(corr, 200, 0.05)
    names = {frozenset((corr.names[p.i], corr.names[p.j])) for p in pairs}
    assert frozenset(("f1", "target")) in names


def test_sequential_update():
    est = biomon.SequentialEstimate(0.0, 1.0, 0)
    est = biomon.sequential_update(est, 1.0, 1.0)
    assert est.mean == 0.5
    assert est.variance == 0.5
    assert est.n_obs == 1


def test_activity_pipeline():
    stream = biomon.gen_accel(
        [biomon.LocationProfile("leg_l", 2.0, 1.0, 0.1),
         biomon.LocationProfile("arm_r", 1.0, 1.0, 0.1)],
        n=200, dt=0.05, seed=9)
    features = biomon.window_features(stream, 2.0)
    assert features, "expected at least one window"
    ranking = biomon.load_distribution(features)
    assert ranking[0][0] == "leg_l"
    points = [[f.mean_magnitude, f.variance, f.rms_jerk] for f in features]
    result = biomon.kmeans(points, 2, seed=1)
    assert len(result.assignments) == len(points)
    assert all(result.ss_history[i] <= result.ss_history[i - 1] + 1e-12
               for i in range(1, len(result.ss_history)))


def test_generators_deterministic():
    a = biomon.gen_recovery(a=60, d=180, theta=0.05, noise_sigma=2, n=50, dt=1, seed=7)
    b = biomon.gen_recovery(a=60, d=180, theta=0.05, noise_sigma=2, n=50, dt=1, seed=7)
    assert a == b
    with pytest.raises(ValueError):
        biomon.gen_recovery(a=180, d=60, theta=0.05, noise_sigma=0, n=10, dt=1, seed=0)


def test_stats_quantiles():
    assert abs(biomon.normal_quantile(0.975) - 1.9599639845400543) < 1e-9
    assert abs(biomon.t_quantile(0.975, 28) - 2.048407141795244) < 1e-10
