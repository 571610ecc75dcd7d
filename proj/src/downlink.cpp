#include "nisac/downlink.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "nisac/errors.hpp"

namespace nisac {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kFeasibilityTol = 1e-6;
}  // namespace

const char* to_string(DownlinkDesignKind kind) {
    switch (kind) {
        case DownlinkDesignKind::kNomaEmpowered:
            return "noma_empowered";
        case DownlinkDesignKind::kSdmaBaseline:
            return "sdma_baseline";
        case DownlinkDesignKind::kNomaInspired:
            return "noma_inspired";
        case DownlinkDesignKind::kIdealSenic:
            return "ideal_senic";
        case DownlinkDesignKind::kNoSenic:
            return "no_senic";
    }
    return "?";
}

DownlinkDesignKind downlink_design_from_string(const std::string& name) {
    if (name == "noma_empowered") {
        return DownlinkDesignKind::kNomaEmpowered;
    }
    if (name == "sdma_baseline") {
        return DownlinkDesignKind::kSdmaBaseline;
    }
    if (name == "noma_inspired") {
        return DownlinkDesignKind::kNomaInspired;
    }
    if (name == "ideal_senic") {
        return DownlinkDesignKind::kIdealSenic;
    }
    if (name == "no_senic") {
        return DownlinkDesignKind::kNoSenic;
    }
    throw ValidationError("unknown downlink design '" + name + "'");
}

bool design_uses_sensing_precoder(DownlinkDesignKind kind) {
    switch (kind) {
        case DownlinkDesignKind::kNomaEmpowered:
        case DownlinkDesignKind::kSdmaBaseline:
            return false;
        case DownlinkDesignKind::kNomaInspired:
        case DownlinkDesignKind::kIdealSenic:
        case DownlinkDesignKind::kNoSenic:
            return true;
    }
    return false;
}

double BeamformerSet::total_power() const {
    double power = 0.0;
    for (const CVector& w : user_precoders) {
        power += w.squaredNorm();
    }
    if (sensing_precoder) {
        power += sensing_precoder->squaredNorm();
    }
    return power;
}

void BeamformerSet::validate(double power_budget) const {
    if (user_precoders.empty()) {
        throw ValidationError("BeamformerSet: needs at least one user precoder");
    }
    const Eigen::Index dim = user_precoders.front().size();
    for (const CVector& w : user_precoders) {
        if (w.size() != dim) {
            throw DimensionMismatch("BeamformerSet: precoders of unequal dimension");
        }
    }
    if (sensing_precoder && sensing_precoder->size() != dim) {
        throw DimensionMismatch("BeamformerSet: sensing precoder dimension mismatch");
    }
    if (total_power() > power_budget + 1e-9) {
        throw ValidationError("BeamformerSet: total power " + std::to_string(total_power()) +
                              " exceeds budget " + std::to_string(power_budget));
    }
}

void SensingMetricSpec::validate() const {
    if (angle_grid < 3) {
        throw ValidationError("SensingMetricSpec: angle_grid must be >= 3");
    }
    if (kind == SensingMetricKind::kBeampatternMse && !(mainlobe_halfwidth > 0.0)) {
        throw ValidationError("SensingMetricSpec: mainlobe_halfwidth must be > 0");
    }
    if (!(target_angle >= -kPi / 2 - 1e-12 && target_angle <= kPi / 2 + 1e-12)) {
        throw ValidationError("SensingMetricSpec: target_angle outside [-pi/2, pi/2]");
    }
}

CMatrix transmit_covariance(const BeamformerSet& beamformers) {
    if (beamformers.user_precoders.empty()) {
        throw ValidationError("transmit_covariance: empty beamformer set");
    }
    const Eigen::Index dim = beamformers.user_precoders.front().size();
    CMatrix covariance = CMatrix::Zero(dim, dim);
    for (const CVector& w : beamformers.user_precoders) {
        covariance.noalias() += w * w.adjoint();
    }
    if (beamformers.sensing_precoder) {
        covariance.noalias() += *beamformers.sensing_precoder * beamformers.sensing_precoder->adjoint();
    }
    return covariance;
}

namespace {

// Real part of a^H R a without the per-call symmetry check; R is Hermitian by
// construction everywhere this is used.
double quad_form(const CVector& a, const CMatrix& r) { return a.dot(r * a).real(); }

double beampattern_mse(const CMatrix& covariance, const SensingMetricSpec& spec,
                       const ArrayGeometry& geometry) {
    const int grid = spec.angle_grid;
    std::vector<double> pattern(grid);
    std::vector<bool> mainlobe(grid);
    int mainlobe_count = 0;
    double mainlobe_sum = 0.0;
    for (int l = 0; l < grid; ++l) {
        const double theta = -kPi / 2 + kPi * l / (grid - 1);
        pattern[l] = quad_form(steering_vector(geometry, theta), covariance);
        mainlobe[l] = std::abs(theta - spec.target_angle) <= spec.mainlobe_halfwidth;
        if (mainlobe[l]) {
            ++mainlobe_count;
            mainlobe_sum += pattern[l];
        }
    }
    // Least-squares scale of the ideal pattern, clamped at zero.
    const double eta = mainlobe_count > 0 ? std::max(0.0, mainlobe_sum / mainlobe_count) : 0.0;
    double mse = 0.0;
    for (int l = 0; l < grid; ++l) {
        const double residual = (mainlobe[l] ? eta : 0.0) - pattern[l];
        mse += residual * residual;
    }
    return mse / grid;
}

}  // namespace

double sensing_metric(const CMatrix& covariance, const SensingMetricSpec& spec,
                      const ArrayGeometry& geometry) {
    spec.validate();
    geometry.validate();
    if (covariance.rows() != geometry.num_antennas || covariance.cols() != geometry.num_antennas) {
        throw DimensionMismatch("sensing_metric: covariance is " +
                                std::to_string(covariance.rows()) + "x" +
                                std::to_string(covariance.cols()) + " but the array has " +
                                std::to_string(geometry.num_antennas) + " elements");
    }
    if (spec.kind == SensingMetricKind::kGainAtTarget) {
        return hermitian_quadratic_form(steering_vector(geometry, spec.target_angle), covariance);
    }
    return beampattern_mse(covariance, spec, geometry);
}

namespace {

void check_channels_match(const ChannelSet& channels, const BeamformerSet& beamformers) {
    channels.validate();
    if (static_cast<int>(beamformers.user_precoders.size()) != channels.num_users()) {
        throw DimensionMismatch("one precoder per user required");
    }
    if (beamformers.user_precoders.front().size() != channels.user_channels.front().size()) {
        throw DimensionMismatch("precoder and channel dimensions differ");
    }
}

// cross(i, j) = |h_i^H w_j|^2
Eigen::MatrixXd cross_gains(const ChannelSet& channels, const std::vector<CVector>& precoders) {
    const int num_users = channels.num_users();
    const int num_streams = static_cast<int>(precoders.size());
    Eigen::MatrixXd cross(num_users, num_streams);
    for (int i = 0; i < num_users; ++i) {
        for (int j = 0; j < num_streams; ++j) {
            cross(i, j) = std::norm(channels.user_channels[i].dot(precoders[j]));
        }
    }
    return cross;
}

}  // namespace

std::vector<double> rates_sdma(const ChannelSet& channels, const BeamformerSet& beamformers) {
    check_channels_match(channels, beamformers);
    if (beamformers.sensing_precoder) {
        throw DesignMismatch("rates_sdma: design carries no sensing precoder");
    }
    const int num_users = channels.num_users();
    const Eigen::MatrixXd cross = cross_gains(channels, beamformers.user_precoders);
    std::vector<double> rates(num_users);
    for (int k = 0; k < num_users; ++k) {
        double interference = channels.noise_power;
        for (int j = 0; j < num_users; ++j) {
            if (j != k) {
                interference += cross(k, j);
            }
        }
        rates[k] = std::log2(1.0 + cross(k, k) / interference);
    }
    return rates;
}

std::vector<int> default_decoding_order(const ChannelSet& channels) {
    channels.validate();
    std::vector<int> order(channels.num_users());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return channels.user_channels[a].norm() < channels.user_channels[b].norm();
    });
    return order;
}

std::vector<double> rates_noma_empowered(const ChannelSet& channels,
                                         const BeamformerSet& beamformers,
                                         const std::vector<int>& order) {
    check_channels_match(channels, beamformers);
    if (beamformers.sensing_precoder) {
        throw DesignMismatch("rates_noma_empowered: design carries no sensing precoder");
    }
    const int num_users = channels.num_users();
    if (static_cast<int>(order.size()) != num_users) {
        throw InvalidPermutation("decoding order has wrong length");
    }
    std::vector<int> position(num_users, -1);
    for (int p = 0; p < num_users; ++p) {
        const int user = order[p];
        if (user < 0 || user >= num_users || position[user] != -1) {
            throw InvalidPermutation("decoding order is not a permutation of the users");
        }
        position[user] = p;
    }
    const Eigen::MatrixXd cross = cross_gains(channels, beamformers.user_precoders);
    std::vector<double> rates(num_users);
    for (int k = 0; k < num_users; ++k) {
        // Every user decoding at or after stream k's position must decode it
        // against the streams cancelled later; the stream rate is the worst
        // of those decoding rates.
        double rate = std::numeric_limits<double>::infinity();
        for (int i = 0; i < num_users; ++i) {
            if (position[i] < position[k]) {
                continue;
            }
            double interference = channels.noise_power;
            for (int j = 0; j < num_users; ++j) {
                if (position[j] > position[k]) {
                    interference += cross(i, j);
                }
            }
            rate = std::min(rate, std::log2(1.0 + cross(i, k) / interference));
        }
        rates[k] = rate;
    }
    return rates;
}

InspiredRates rates_noma_inspired(const ChannelSet& channels, const BeamformerSet& beamformers,
                                  DownlinkDesignKind mode) {
    check_channels_match(channels, beamformers);
    if (!design_uses_sensing_precoder(mode)) {
        throw DesignMismatch("rates_noma_inspired: mode does not carry a sensing precoder");
    }
    if (!beamformers.sensing_precoder) {
        throw DesignMismatch("rates_noma_inspired: sensing precoder missing");
    }
    const int num_users = channels.num_users();
    const Eigen::MatrixXd cross = cross_gains(channels, beamformers.user_precoders);
    Eigen::VectorXd sensing_gain(num_users);
    for (int i = 0; i < num_users; ++i) {
        sensing_gain[i] = std::norm(channels.user_channels[i].dot(*beamformers.sensing_precoder));
    }

    InspiredRates result;
    result.per_user.resize(num_users);
    for (int k = 0; k < num_users; ++k) {
        double interference = channels.noise_power;
        for (int j = 0; j < num_users; ++j) {
            if (j != k) {
                interference += cross(k, j);
            }
        }
        if (mode == DownlinkDesignKind::kNoSenic) {
            interference += sensing_gain[k];
        }
        result.per_user[k] = std::log2(1.0 + cross(k, k) / interference);
    }

    if (mode == DownlinkDesignKind::kNomaInspired) {
        // Multicast stream decoded first at every user, private streams still
        // superimposed underneath.
        double multicast = std::numeric_limits<double>::infinity();
        for (int i = 0; i < num_users; ++i) {
            double denom = channels.noise_power;
            for (int j = 0; j < num_users; ++j) {
                denom += cross(i, j);
            }
            multicast = std::min(multicast, std::log2(1.0 + sensing_gain[i] / denom));
        }
        result.multicast = multicast;
    }
    return result;
}

double comm_value(DownlinkDesignKind design, const std::vector<double>& per_user_rates,
                  double multicast_rate) {
    if (per_user_rates.empty()) {
        throw ValidationError("comm_value: no user rates");
    }
    switch (design) {
        case DownlinkDesignKind::kNomaEmpowered:
        case DownlinkDesignKind::kSdmaBaseline:
            return *std::min_element(per_user_rates.begin(), per_user_rates.end());
        case DownlinkDesignKind::kNomaInspired:
        case DownlinkDesignKind::kIdealSenic:
        case DownlinkDesignKind::kNoSenic: {
            double sum = 0.0;
            for (const double r : per_user_rates) {
                sum += r;
            }
            return sum + static_cast<double>(per_user_rates.size()) * multicast_rate;
        }
    }
    throw Error("comm_value: unreachable");
}

BeamformerSet unpack_beamformers(const RVector& x, int num_antennas, int num_users,
                                 bool with_sensing_precoder) {
    const Eigen::Index expected =
        2 * static_cast<Eigen::Index>(num_antennas) * (num_users + (with_sensing_precoder ? 1 : 0));
    if (x.size() != expected) {
        throw DimensionMismatch("unpack_beamformers: expected " + std::to_string(expected) +
                                " coordinates, got " + std::to_string(x.size()));
    }
    std::vector<CVector> vectors = unrealify(x, num_antennas);
    BeamformerSet beamformers;
    beamformers.user_precoders.assign(vectors.begin(), vectors.begin() + num_users);
    if (with_sensing_precoder) {
        beamformers.sensing_precoder = vectors.back();
    }
    return beamformers;
}

RVector pack_beamformers(const BeamformerSet& beamformers) {
    std::vector<CVector> vectors = beamformers.user_precoders;
    if (beamformers.sensing_precoder) {
        vectors.push_back(*beamformers.sensing_precoder);
    }
    return realify(vectors);
}

double constraint_violation(const BeamformerSet& beamformers, const SensingMetricSpec& spec,
                            const ArrayGeometry& geometry, double constraint) {
    if (spec.kind == SensingMetricKind::kGainAtTarget) {
        const CVector a = steering_vector(geometry, spec.target_angle);
        double gain = 0.0;
        for (const CVector& w : beamformers.user_precoders) {
            gain += std::norm(a.dot(w));
        }
        if (beamformers.sensing_precoder) {
            gain += std::norm(a.dot(*beamformers.sensing_precoder));
        }
        return std::max(0.0, constraint - gain);
    }
    const double mse = sensing_metric(transmit_covariance(beamformers), spec, geometry);
    return std::max(0.0, mse - constraint);
}

namespace {

// Shared evaluation context captured by the objective closures.
struct DesignProblem {
    DownlinkDesignKind design;
    ChannelSet channels;
    ArrayGeometry geometry;
    SensingMetricSpec spec;
    int num_users = 0;
    bool has_sensing_precoder = false;
    std::vector<int> order;

    DesignProblem(DownlinkDesignKind d, ChannelSet c, const ArrayGeometry& g,
                  const SensingMetricSpec& s)
        : design(d), channels(std::move(c)), geometry(g), spec(s) {
        num_users = channels.num_users();
        has_sensing_precoder = design_uses_sensing_precoder(design);
        if (design == DownlinkDesignKind::kNomaEmpowered) {
            order = default_decoding_order(channels);
        }
    }

    double comm(const BeamformerSet& b) const {
        switch (design) {
            case DownlinkDesignKind::kNomaEmpowered:
                return comm_value(design, rates_noma_empowered(channels, b, order), 0.0);
            case DownlinkDesignKind::kSdmaBaseline:
                return comm_value(design, rates_sdma(channels, b), 0.0);
            default: {
                const InspiredRates rates = rates_noma_inspired(channels, b, design);
                return comm_value(design, rates.per_user, rates.multicast);
            }
        }
    }

    BeamformerSet unpack(const RVector& x) const {
        return unpack_beamformers(x, geometry.num_antennas, num_users, has_sensing_precoder);
    }
};

RVector ball_projection(const RVector& x, double power) {
    const double norm_sq = x.squaredNorm();
    if (norm_sq <= power) {
        return x;
    }
    return x * std::sqrt(power / norm_sq);
}

}  // namespace

Objective penalized_objective(DownlinkDesignKind design, const ChannelSet& channels,
                              const ArrayGeometry& geometry, const SensingMetricSpec& spec,
                              double constraint, double penalty_weight) {
    auto problem = std::make_shared<DesignProblem>(design, channels, geometry, spec);
    return [problem, constraint, penalty_weight](const RVector& x) {
        const BeamformerSet b = problem->unpack(x);
        const double violation =
            constraint_violation(b, problem->spec, problem->geometry, constraint);
        return problem->comm(b) - penalty_weight * violation * violation;
    };
}

DownlinkPoint tradeoff_point(DownlinkDesignKind design, const ChannelSet& channels,
                             const ArrayGeometry& geometry, const SensingMetricSpec& spec,
                             double power, double constraint, const OptimizerSettings& settings,
                             RngSeed seed, const BeamformerSet* warm_start) {
    geometry.validate();
    spec.validate();
    channels.validate();
    if (!(power > 0.0)) {
        throw ValidationError("tradeoff_point: power must be > 0");
    }
    if (channels.user_channels.front().size() != geometry.num_antennas) {
        throw DimensionMismatch("tradeoff_point: channel dimension vs array size");
    }
    const DesignProblem problem(design, channels, geometry, spec);
    const int num_users = problem.num_users;
    const bool has_v = problem.has_sensing_precoder;
    const int num_vectors = num_users + (has_v ? 1 : 0);
    const CVector target = steering_vector(geometry, spec.target_angle);

    const Projector project = [power](const RVector& x) { return ball_projection(x, power); };

    const double per_vector_amp = std::sqrt(power / num_vectors);
    const CVector steer_dir = target / target.norm();
    BeamformerSet steer;
    BeamformerSet mrt;
    for (int k = 0; k < num_users; ++k) {
        steer.user_precoders.push_back(per_vector_amp * steer_dir);
        const CVector& h = channels.user_channels[k];
        const double hn = h.norm();
        mrt.user_precoders.push_back(hn > 0.0 ? CVector(per_vector_amp * h / hn)
                                              : CVector(per_vector_amp * steer_dir));
    }
    if (has_v) {
        steer.sensing_precoder = per_vector_amp * steer_dir;
        mrt.sensing_precoder = per_vector_amp * steer_dir;
    }

    // Feasibility pre-check, plus an always-feasible anchor point.
    RVector anchor;
    if (spec.kind == SensingMetricKind::kGainAtTarget) {
        const double max_gain = power * geometry.num_antennas;
        if (constraint > max_gain + 1e-9) {
            throw InfeasibleConstraint("gain constraint " + std::to_string(constraint) +
                                       " exceeds the beampattern bound " +
                                       std::to_string(max_gain));
        }
        anchor = pack_beamformers(steer);  // full power toward the target: gain = P*M
    } else {
        const Objective sensing_only = [&problem](const RVector& x) {
            return -sensing_metric(transmit_covariance(problem.unpack(x)), problem.spec,
                                   problem.geometry);
        };
        const SolveResult pre =
            projected_gradient_max(sensing_only, project, pack_beamformers(steer), settings,
                                   {seed.seed, seed.stream_id + 7001}, {pack_beamformers(mrt)});
        if (-pre.value > constraint + 1e-9) {
            throw InfeasibleConstraint("mse constraint " + std::to_string(constraint) +
                                       " below the attainable minimum " +
                                       std::to_string(-pre.value));
        }
        anchor = pre.argument;
    }

    const auto violation_at = [&](const RVector& x) {
        return constraint_violation(problem.unpack(x), spec, geometry, constraint);
    };

    struct {
        RVector x;
        double comm = -std::numeric_limits<double>::infinity();
        bool found = false;
    } best_feasible;
    const auto consider = [&](const RVector& x) {
        if (violation_at(x) < kFeasibilityTol) {
            const double c = problem.comm(problem.unpack(x));
            if (!best_feasible.found || c > best_feasible.comm) {
                best_feasible.x = x;
                best_feasible.comm = c;
                best_feasible.found = true;
            }
        }
    };
    consider(anchor);

    std::vector<RVector> extra_starts = {pack_beamformers(steer)};
    if (warm_start) {
        extra_starts.push_back(project(pack_beamformers(*warm_start)));
    }

    double penalty_weight = 1.0;
    SolveResult best = projected_gradient_max(
        penalized_objective(design, channels, geometry, spec, constraint, penalty_weight), project,
        pack_beamformers(mrt), settings, seed, extra_starts);
    consider(best.argument);

    OptimizerSettings refine = settings;
    refine.restarts = std::min(settings.restarts, 4);
    for (int doubling = 0; doubling < 20 && violation_at(best.argument) >= kFeasibilityTol;
         ++doubling) {
        penalty_weight *= 2.0;
        best = projected_gradient_max(
            penalized_objective(design, channels, geometry, spec, constraint, penalty_weight),
            project, best.argument, refine, {seed.seed, seed.stream_id + 101 + doubling},
            {anchor});
        consider(best.argument);
    }
    if (!best_feasible.found) {
        throw SolverFailed("no beamformer with sensing violation below 1e-6 found");
    }

    DownlinkPoint point;
    point.beamformers = problem.unpack(best_feasible.x);
    point.beamformers.validate(power);
    switch (design) {
        case DownlinkDesignKind::kNomaEmpowered:
            point.per_user_rates =
                rates_noma_empowered(channels, point.beamformers, problem.order);
            break;
        case DownlinkDesignKind::kSdmaBaseline:
            point.per_user_rates = rates_sdma(channels, point.beamformers);
            break;
        default: {
            const InspiredRates rates = rates_noma_inspired(channels, point.beamformers, design);
            point.per_user_rates = rates.per_user;
            point.multicast_rate = rates.multicast;
            break;
        }
    }
    point.comm_value = comm_value(design, point.per_user_rates, point.multicast_rate);
    point.sensing_value = sensing_metric(transmit_covariance(point.beamformers), spec, geometry);
    return point;
}

RegionResult region_sweep_downlink(DownlinkDesignKind design, const ChannelSet& channels,
                                   const ArrayGeometry& geometry, const SensingMetricSpec& spec,
                                   double power, const std::vector<double>& constraint_levels,
                                   const OptimizerSettings& settings, RngSeed seed) {
    if (constraint_levels.empty()) {
        throw ValidationError("region_sweep_downlink: empty constraint grid");
    }
    if (!std::is_sorted(constraint_levels.begin(), constraint_levels.end())) {
        throw ValidationError("region_sweep_downlink: constraint levels must ascend");
    }
    RegionResult result;
    std::optional<BeamformerSet> warm;
    for (const double level : constraint_levels) {
        RegionRow row;
        row.design = to_string(design);
        row.sweep_param = level;
        try {
            const DownlinkPoint point =
                tradeoff_point(design, channels, geometry, spec, power, level, settings, seed,
                               warm ? &*warm : nullptr);
            row.sensing_value = point.sensing_value;
            row.comm_value = point.comm_value;
            for (std::size_t k = 0; k < point.per_user_rates.size(); ++k) {
                row.aux["rate_" + std::to_string(k)] = point.per_user_rates[k];
            }
            if (design_uses_sensing_precoder(design)) {
                row.aux["multicast_rate"] = point.multicast_rate;
            }
            warm = point.beamformers;
        } catch (const InfeasibleConstraint&) {
            row.status = "infeasible";
            row.pareto = false;
        } catch (const SolverFailed&) {
            row.status = "solver_failed";
            row.pareto = false;
        }
        result.rows.push_back(std::move(row));
    }
    flag_pareto(result.rows, spec.maximized());
    return result;
}

}  // namespace nisac
