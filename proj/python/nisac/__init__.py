"""NOMA-ISAC tradeoff region toolkit."""

from nisac._core import (
    ArrayGeometry,
    BeamformerSet,
    ChannelSet,
    DownlinkPoint,
    ExperimentConfig,
    LinkBudget,
    OptimizerSettings,
    RegionResult,
    ResourceSplit,
    SensingMetricSpec,
    UplinkPoint,
    __version__,
    comm_rate_mixed,
    default_decoding_order,
    design_split,
    draw_rayleigh_channels,
    emit,
    ergodic_frontier,
    exp_integral_e1,
    frontier,
    load_config,
    load_region_json,
    parse_config,
    rates_noma_empowered,
    rates_noma_inspired,
    rates_sdma,
    region_sweep_downlink,
    reir,
    rng_id,
    run_experiment,
    sensing_metric,
    steering_vector,
    tradeoff_point,
    transmit_covariance,
    uplink_point,
)

__all__ = [
    "ArrayGeometry",
    "BeamformerSet",
    "ChannelSet",
    "DownlinkPoint",
    "ExperimentConfig",
    "LinkBudget",
    "OptimizerSettings",
    "RegionResult",
    "ResourceSplit",
    "SensingMetricSpec",
    "UplinkPoint",
    "__version__",
    "comm_rate_mixed",
    "default_decoding_order",
    "design_split",
    "draw_rayleigh_channels",
    "emit",
    "ergodic_frontier",
    "exp_integral_e1",
    "frontier",
    "load_config",
    "load_region_json",
    "parse_config",
    "rates_noma_empowered",
    "rates_noma_inspired",
    "rates_sdma",
    "region_sweep_downlink",
    "reir",
    "rng_id",
    "run_experiment",
    "sensing_metric",
    "steering_vector",
    "tradeoff_point",
    "transmit_covariance",
    "uplink_point",
]
