#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nisac/channel.hpp"
#include "nisac/numerics.hpp"
#include "nisac/region.hpp"
#include "nisac/rng.hpp"

namespace nisac {

enum class DownlinkDesignKind {
    kNomaEmpowered,
    kSdmaBaseline,
    kNomaInspired,
    kIdealSenic,
    kNoSenic,
};

const char* to_string(DownlinkDesignKind kind);
DownlinkDesignKind downlink_design_from_string(const std::string& name);

// The inspired family transmits one additional sensing waveform v; the
// empowered design and the SDMA baseline sense over the user precoders only.
bool design_uses_sensing_precoder(DownlinkDesignKind kind);

struct BeamformerSet {
    std::vector<CVector> user_precoders;
    std::optional<CVector> sensing_precoder;

    double total_power() const;
    void validate(double power_budget) const;
};

enum class SensingMetricKind { kGainAtTarget, kBeampatternMse };

struct SensingMetricSpec {
    SensingMetricKind kind = SensingMetricKind::kGainAtTarget;
    double target_angle = 0.0;
    double mainlobe_halfwidth = 5.0 * 3.14159265358979323846 / 180.0;  // mse only
    int angle_grid = 181;

    void validate() const;
    bool maximized() const { return kind == SensingMetricKind::kGainAtTarget; }
};

struct DownlinkPoint {
    double sensing_value = 0.0;
    double comm_value = 0.0;
    std::vector<double> per_user_rates;
    double multicast_rate = 0.0;
    BeamformerSet beamformers;
};

// R_x = sum_k w_k w_k^H + v v^H; the sensing functionality sees the full
// superimposed waveform covariance.
CMatrix transmit_covariance(const BeamformerSet& beamformers);

// gain_at_target: a(theta_t)^H R a(theta_t).
// beampattern_mse: (1/L) sum_l (eta* d_l - p_l)^2 with the scale eta* >= 0
// solved in closed form against the ideal mainlobe indicator d.
double sensing_metric(const CMatrix& covariance, const SensingMetricSpec& spec,
                      const ArrayGeometry& geometry);

// Everyone treats everyone else as noise.
std::vector<double> rates_sdma(const ChannelSet& channels, const BeamformerSet& beamformers);

// Ascending channel norm, ties by user index: weakest user decoded first.
std::vector<int> default_decoding_order(const ChannelSet& channels);

// Superposition coding with SIC: the stream at decoding position p is decoded
// by every user at position >= p against the streams at positions > p, and
// its rate is the minimum of those decoding rates.
std::vector<double> rates_noma_empowered(const ChannelSet& channels,
                                         const BeamformerSet& beamformers,
                                         const std::vector<int>& order);

struct InspiredRates {
    std::vector<double> per_user;
    double multicast = 0.0;
};

// noma_inspired: v carries a multicast message decoded first by every user
// and removed via SIC before the private streams. ideal_senic removes v for
// free and carries no message; no_senic leaves v as interference.
InspiredRates rates_noma_inspired(const ChannelSet& channels, const BeamformerSet& beamformers,
                                  DownlinkDesignKind mode);

// min-user rate for the empowered/SDMA designs; sum of private rates plus
// K * multicast for the inspired family.
double comm_value(DownlinkDesignKind design, const std::vector<double>& per_user_rates,
                  double multicast_rate);

// --- optimizer plumbing, exposed so tests can certify the solver ---

BeamformerSet unpack_beamformers(const RVector& x, int num_antennas, int num_users,
                                 bool with_sensing_precoder);
RVector pack_beamformers(const BeamformerSet& beamformers);

// max(0, tau - gain) for the gain metric, max(0, mse - tau) for the MSE one.
double constraint_violation(const BeamformerSet& beamformers, const SensingMetricSpec& spec,
                            const ArrayGeometry& geometry, double constraint);

// comm_value(x) - penalty_weight * violation(x)^2 over realified beamformers.
Objective penalized_objective(DownlinkDesignKind design, const ChannelSet& channels,
                              const ArrayGeometry& geometry, const SensingMetricSpec& spec,
                              double constraint, double penalty_weight);

// Maximizes the design's comm_value subject to total power <= power and the
// sensing constraint, by projected gradient ascent on a quadratic penalty
// whose weight doubles until the violation drops below 1e-6 (at most 20
// doublings). Multi-start: MRT-toward-users, steer-toward-target, optional
// caller-provided warm start, then seeded random feasible points.
DownlinkPoint tradeoff_point(DownlinkDesignKind design, const ChannelSet& channels,
                             const ArrayGeometry& geometry, const SensingMetricSpec& spec,
                             double power, double constraint, const OptimizerSettings& settings,
                             RngSeed seed, const BeamformerSet* warm_start = nullptr);

// One tradeoff_point per constraint level (sorted ascending), each warm
// started from the previous level. Failures are recorded per row, dominated
// points are flagged rather than removed.
RegionResult region_sweep_downlink(DownlinkDesignKind design, const ChannelSet& channels,
                                   const ArrayGeometry& geometry, const SensingMetricSpec& spec,
                                   double power, const std::vector<double>& constraint_levels,
                                   const OptimizerSettings& settings, RngSeed seed);

}  // namespace nisac
