import json
import math

import numpy as np
import pytest

import nisac


UPLINK_CONFIG = {
    "experiment_kind": "uplink_region",
    "designs": ["oma", "pure_noma", "semi_noma"],
    "gamma_c": 3.0,
    "gamma_s": 1.0,
    "seed": 42,
    "num_points": 5,
}


def test_module_identity():
    assert isinstance(nisac.__version__, str) and nisac.__version__
    assert "splitmix64" in nisac.rng_id


def test_exp_integral_e1():
    assert nisac.exp_integral_e1(1.0) == pytest.approx(0.21938393439552026, rel=1e-12)
    with pytest.raises(RuntimeError):
        nisac.exp_integral_e1(0.0)


def test_uplink_closed_form():
    budget = nisac.LinkBudget(gamma_s=1.0, gamma_c=3.0)
    split = nisac.ResourceSplit(alpha_s=0.0, alpha_c=0.5, alpha_m=0.5)
    point = nisac.uplink_point("semi_noma", split, budget)
    assert point.sensing_rate == pytest.approx(0.25, abs=1e-12)
    assert point.comm_rate == pytest.approx(1.6609640474436811, abs=1e-9)


def test_split_must_sum_to_one():
    with pytest.raises(ValueError, match="must equal 1"):
        nisac.ResourceSplit(alpha_s=0.5, alpha_c=0.5, alpha_m=0.5)


def test_frontier_rows_are_dicts():
    budget = nisac.LinkBudget(gamma_s=1.0, gamma_c=3.0)
    result = nisac.frontier("semi_noma", budget, 11)
    assert len(result.rows) == 11
    row = result.rows[0]
    assert row["design"] == "semi_noma"
    assert set(row) >= {"sweep_param", "sensing_value", "comm_value", "pareto", "status"}
    assert all(r["status"] == "ok" for r in result.rows)


def test_steering_vector_numpy():
    a = nisac.steering_vector(nisac.ArrayGeometry(4, 0.5), 0.0)
    assert isinstance(a, np.ndarray)
    assert a.shape == (4,)
    assert a.dtype == np.complex128
    np.testing.assert_allclose(a, np.ones(4), atol=1e-12)


def test_channel_draw_determinism():
    geom = nisac.ArrayGeometry(3, 0.5)
    first = nisac.draw_rayleigh_channels(geom, 2, 0.3, seed=7)
    second = nisac.draw_rayleigh_channels(geom, 2, 0.3, seed=7)
    for a, b in zip(first.user_channels, second.user_channels):
        np.testing.assert_array_equal(a, b)


def test_run_experiment_from_config_text():
    config = nisac.parse_config(json.dumps(UPLINK_CONFIG))
    assert config.seed == 42
    result = nisac.run_experiment(config)
    assert len(result.rows) == 15
    csv = result.to_csv()
    assert csv.startswith("design,sweep_param,sensing_value,comm_value,pareto,status")
    meta = json.loads(result.metadata_json)
    assert meta["config"]["channel"]["gamma_c"] == 3.0


def test_unknown_config_key_raises_value_error():
    bad = dict(UPLINK_CONFIG)
    bad["gamm_c"] = 3.0
    with pytest.raises(ValueError, match="gamm_c"):
        nisac.parse_config(json.dumps(bad))


def test_load_config_missing_file_raises_os_error(tmp_path):
    with pytest.raises(OSError):
        nisac.load_config(tmp_path / "nope.json")


def test_emit_round_trip(tmp_path):
    result = nisac.run_experiment(nisac.parse_config(json.dumps(UPLINK_CONFIG)))
    nisac.emit(result, tmp_path, ["csv", "json"])
    assert (tmp_path / "region.csv").read_text().startswith("design,")
    loaded = nisac.load_region_json(tmp_path / "region.json")
    assert [r["comm_value"] for r in loaded.rows] == [r["comm_value"] for r in result.rows]


def test_downlink_tradeoff_point_scalar():
    channels = nisac.ChannelSet([np.array([1.0 + 0.0j])])
    settings = nisac.OptimizerSettings()
    settings.restarts = 4
    point = nisac.tradeoff_point(
        "sdma_baseline",
        channels,
        nisac.ArrayGeometry(1, 0.5),
        nisac.SensingMetricSpec(),
        power=10.0,
        constraint=5.0,
        settings=settings,
        seed=17,
    )
    assert point.comm_value == pytest.approx(math.log2(11.0), rel=1e-6)
