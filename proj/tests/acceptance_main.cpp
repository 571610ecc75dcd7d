// Acceptance gate: one pass/fail line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nisac/channel.hpp"
#include "nisac/downlink.hpp"
#include "nisac/errors.hpp"
#include "nisac/experiment.hpp"
#include "nisac/numerics.hpp"
#include "nisac/region.hpp"
#include "nisac/rng.hpp"
#include "nisac/uplink.hpp"

using namespace nisac;

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct Outcome {
    bool pass = true;
    std::string detail;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = lo + (hi - lo) * i / (n - 1);
    }
    return grid;
}

LinkBudget random_budget(RandomStream& rs) {
    LinkBudget b;
    b.gamma_c = 0.5 + 19.5 * rs.next_unit();
    b.gamma_s = 0.1 + 9.9 * rs.next_unit();
    return b;
}

// 1. Closed-form uplink operating points at the canonical budget.
Outcome criterion1() {
    LinkBudget budget;
    budget.gamma_c = 3.0;
    budget.gamma_s = 1.0;
    const UplinkPoint semi = uplink_point(UplinkDesignKind::kSemiNoma, {0.0, 0.5, 0.5}, budget);
    const UplinkPoint pure = uplink_point(UplinkDesignKind::kPureNoma, {0.0, 0.0, 1.0}, budget);
    const UplinkPoint oma = uplink_point(UplinkDesignKind::kOma, {0.5, 0.5, 0.0}, budget);

    const double semi_rc = 0.5 * std::log2(4.0) + 0.5 * std::log2(2.5);
    const double pure_rc = std::log2(2.5);
    Outcome out;
    out.pass = near(semi.sensing_rate, 0.25, 1e-9) && near(semi.comm_rate, semi_rc, 1e-9) &&
               near(pure.sensing_rate, 0.5, 1e-9) && near(pure.comm_rate, pure_rc, 1e-9) &&
               near(oma.sensing_rate, 0.25, 1e-9) && near(oma.comm_rate, 1.0, 1e-9) &&
               near(semi.comm_rate, 1.660964, 1e-6) && near(pure.comm_rate, 1.321928, 1e-6);
    out.detail = "semi (" + fmt(semi.sensing_rate) + ", " + fmt(semi.comm_rate) + "), pure (" +
                 fmt(pure.sensing_rate) + ", " + fmt(pure.comm_rate) + "), oma (" +
                 fmt(oma.sensing_rate) + ", " + fmt(oma.comm_rate) + ")";
    return out;
}

// 2. Semi-NOMA frontier dominates OMA pointwise and reaches the pure-NOMA
//    point and both OMA endpoints exactly.
Outcome criterion2() {
    RandomStream rs({4242, 0});
    Outcome out;
    double min_strict_gap = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 5 && out.pass; ++rep) {
        const LinkBudget budget = random_budget(rs);
        const RegionResult semi = frontier(UplinkDesignKind::kSemiNoma, budget, 101);
        const RegionResult oma = frontier(UplinkDesignKind::kOma, budget, 101);
        for (int i = 0; i < 101; ++i) {
            const double gap = semi.rows[i].comm_value - oma.rows[i].comm_value;
            if (gap < 0.0 || (i > 0 && gap <= 0.0)) {
                out.pass = false;
                out.detail = "dominance broken at budget " + std::to_string(rep) + ", beta " +
                             fmt(semi.rows[i].sweep_param);
                break;
            }
            if (i > 0) {
                min_strict_gap = std::min(min_strict_gap, gap);
            }
        }
        if (!out.pass) {
            break;
        }
        const UplinkPoint pure =
            uplink_point(UplinkDesignKind::kPureNoma, {0.0, 0.0, 1.0}, budget);
        const UplinkPoint semi_all_sensing =
            uplink_point(UplinkDesignKind::kSemiNoma, {1.0, 0.0, 0.0}, budget);
        const bool pure_contained = semi.rows[100].sensing_value == pure.sensing_rate &&
                                    semi.rows[100].comm_value == pure.comm_rate;
        const bool comm_endpoint = semi.rows[0].sensing_value == oma.rows[0].sensing_value &&
                                   semi.rows[0].comm_value == oma.rows[0].comm_value;
        const bool sensing_endpoint =
            semi_all_sensing.sensing_rate == oma.rows[100].sensing_value &&
            semi_all_sensing.comm_rate == oma.rows[100].comm_value;
        if (!pure_contained || !comm_endpoint || !sensing_endpoint) {
            out.pass = false;
            out.detail = "endpoint containment broken at budget " + std::to_string(rep);
        }
    }
    if (out.pass) {
        out.detail = "5 budgets, 101-point grids, min strict gap " + fmt(min_strict_gap);
    }
    return out;
}

// 3. Pure NOMA beats OMA when sensing has priority and loses when
//    communication does.
Outcome criterion3() {
    RandomStream rs({4242, 0});
    std::vector<LinkBudget> budgets;
    LinkBudget canonical;
    canonical.gamma_c = 3.0;
    canonical.gamma_s = 1.0;
    budgets.push_back(canonical);
    for (int rep = 0; rep < 5; ++rep) {
        budgets.push_back(random_budget(rs));
    }
    Outcome out;
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        const LinkBudget& budget = budgets[i];
        const double pure_rc =
            uplink_point(UplinkDesignKind::kPureNoma, {0.0, 0.0, 1.0}, budget).comm_rate;
        const double oma_sensing_prior =
            uplink_point(UplinkDesignKind::kOma, {1.0, 0.0, 0.0}, budget).comm_rate;
        const double oma_comm_prior =
            uplink_point(UplinkDesignKind::kOma, {0.0, 1.0, 0.0}, budget).comm_rate;
        if (!(oma_sensing_prior == 0.0 && pure_rc > oma_sensing_prior &&
              pure_rc < oma_comm_prior)) {
            out.pass = false;
            out.detail = "ordering broken at budget " + std::to_string(i);
            return out;
        }
    }
    out.detail = "R_c ordering holds on the canonical and 5 random budgets";
    return out;
}

// 4. Ergodic Monte Carlo mean vs the analytic exponential-fading oracle.
Outcome criterion4() {
    LinkBudget budget;
    budget.gamma_c = 1.0;
    budget.gamma_s = 1.0;
    const RegionResult erg =
        ergodic_frontier(UplinkDesignKind::kSemiNoma, 1.0, budget, 1000000, {1000, 0}, 2);
    const RegionRow& row = erg.rows[0];
    const double oracle = std::exp(1.0) * exp_integral_e1(1.0) / kLn2;
    const double half_width = row.aux.at("mc_half_width");
    Outcome out;
    out.pass = row.sweep_param == 0.0 && row.sensing_value == 0.0 &&
               std::abs(row.comm_value - oracle) <= half_width;
    out.detail = "mean " + fmt(row.comm_value) + " vs oracle " + fmt(oracle) +
                 ", half-width " + fmt(half_width);
    return out;
}

// 5. Analytic semi-NOMA split vs exhaustive epsilon-constraint grid search
//    over the resource simplex.
Outcome criterion5() {
    RandomStream rs({4343, 0});
    Outcome out;
    double worst_value_gap = 0.0;
    for (int rep = 0; rep < 5 && out.pass; ++rep) {
        const LinkBudget budget = random_budget(rs);
        const double log_c = std::log2(1.0 + budget.gamma_c);
        for (int bi = 0; bi <= 20 && out.pass; ++bi) {
            const double beta = bi / 20.0;
            const double target = reir(beta, budget);
            const Objective comm_under_constraint = [&](const RVector& x) {
                const double sensing_share = std::min(1.0, x[0] + x[2]);
                if (reir(sensing_share, budget) < target - 1e-12) {
                    return -1e300;
                }
                return x[1] * log_c + comm_rate_mixed(std::min(1.0, x[2]), budget);
            };
            const SolveResult grid = grid_argmax(
                comm_under_constraint, {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, 201, true);
            const double analytic = (1.0 - beta) * log_c + comm_rate_mixed(beta, budget);
            const bool value_ok = near(grid.value, analytic, 1e-9);
            const bool split_ok = near(grid.argument[0], 0.0, 1e-9) &&
                                  near(grid.argument[1], 1.0 - beta, 1e-9) &&
                                  near(grid.argument[2], beta, 1e-9);
            worst_value_gap = std::max(worst_value_gap, std::abs(grid.value - analytic));
            if (!value_ok || !split_ok) {
                out.pass = false;
                out.detail = "grid disagrees at budget " + std::to_string(rep) + ", beta " +
                             fmt(beta) + ": grid " + fmt(grid.value) + " vs analytic " +
                             fmt(analytic);
            }
        }
    }
    if (out.pass) {
        out.detail = "5 budgets, 21 epsilon levels, worst value gap " + fmt(worst_value_gap);
    }
    return out;
}

// 6. Overloaded downlink: NOMA comm value dominates SDMA across a gain sweep.
Outcome criterion6() {
    const ArrayGeometry geometry{2, 0.5};
    SensingMetricSpec spec;
    OptimizerSettings sweep_settings;
    sweep_settings.restarts = 48;
    sweep_settings.max_iters = 500;
    sweep_settings.tol = 1e-7;
    OptimizerSettings heavy = sweep_settings;
    heavy.restarts = 256;
    heavy.max_iters = 800;
    heavy.polish_hops = 12;
    const int num_draws = 20;
    // At tau = P*M the feasible set shrinks to a measure-zero manifold where
    // the penalty solver parks both designs on the same steering anchor, so
    // the sweep stops at 0.9 * P * M.
    const std::vector<double> taus = linspace(0.0, 18.0, 8);

    Outcome out;
    std::vector<double> mean_margin(taus.size(), 0.0);
    double worst_pair = std::numeric_limits<double>::infinity();
    int escalated = 0;
    for (int d = 0; d < num_draws; ++d) {
        const std::uint64_t seed = 5000 + static_cast<std::uint64_t>(d);
        const ChannelSet channels = draw_rayleigh_channels(geometry, 3, {0.0}, {seed, 0});
        const RegionResult noma = region_sweep_downlink(
            DownlinkDesignKind::kNomaEmpowered, channels, geometry, spec, 10.0, taus,
            sweep_settings, {seed, 11});
        const RegionResult sdma = region_sweep_downlink(
            DownlinkDesignKind::kSdmaBaseline, channels, geometry, spec, 10.0, taus,
            sweep_settings, {seed, 12});
        for (std::size_t t = 0; t < taus.size(); ++t) {
            if (noma.rows[t].status != "ok" || sdma.rows[t].status != "ok") {
                out.pass = false;
                out.detail = "solver failure at draw " + std::to_string(d) + ", tau " +
                             fmt(taus[t]);
                return out;
            }
            double noma_comm = noma.rows[t].comm_value;
            double sdma_comm = sdma.rows[t].comm_value;
            // Close races are re-solved at higher effort. Every solve returns
            // an achievable rate, so each design keeps its best point.
            if (noma_comm - sdma_comm < 0.02) {
                ++escalated;
                for (const std::uint64_t stream : {13, 14}) {
                    noma_comm = std::max(
                        noma_comm, tradeoff_point(DownlinkDesignKind::kNomaEmpowered, channels,
                                                  geometry, spec, 10.0, taus[t], heavy,
                                                  {seed, stream})
                                       .comm_value);
                }
                for (const std::uint64_t stream : {15, 16}) {
                    sdma_comm = std::max(
                        sdma_comm, tradeoff_point(DownlinkDesignKind::kSdmaBaseline, channels,
                                                  geometry, spec, 10.0, taus[t], heavy,
                                                  {seed, stream})
                                       .comm_value);
                }
            }
            const double margin = noma_comm - sdma_comm;
            worst_pair = std::min(worst_pair, margin);
            mean_margin[t] += margin / num_draws;
            if (margin < -1e-3) {
                out.pass = false;
                out.detail = "NOMA lost by " + fmt(-margin) + " at draw " + std::to_string(d) +
                             ", tau " + fmt(taus[t]);
                return out;
            }
        }
    }
    double min_mean = std::numeric_limits<double>::infinity();
    for (const double m : mean_margin) {
        min_mean = std::min(min_mean, m);
    }
    out.pass = min_mean > 0.0;
    out.detail = "20 draws x 8 levels, worst pair margin " + fmt(worst_pair) +
                 ", smallest mean margin " + fmt(min_mean) + ", " + std::to_string(escalated) +
                 " close pairs re-solved";
    return out;
}

// 7. High channel correlation costs NOMA less than it costs SDMA.
Outcome criterion7() {
    const ArrayGeometry geometry{4, 0.5};
    SensingMetricSpec spec;
    OptimizerSettings settings;
    settings.restarts = 6;
    settings.max_iters = 400;
    settings.tol = 1e-7;
    const double tau = 20.0;  // midpoint of the reachable gain range
    const int num_draws = 20;

    double degradation_noma = 0.0;
    double degradation_sdma = 0.0;
    for (int d = 0; d < num_draws; ++d) {
        const std::uint64_t seed = 6000 + static_cast<std::uint64_t>(d);
        // Same seed for both correlation levels: common random numbers.
        const ChannelSet low = draw_rayleigh_channels(geometry, 2, {0.1}, {seed, 0});
        const ChannelSet high = draw_rayleigh_channels(geometry, 2, {0.95}, {seed, 0});
        for (const DownlinkDesignKind design :
             {DownlinkDesignKind::kNomaEmpowered, DownlinkDesignKind::kSdmaBaseline}) {
            const std::uint64_t id = 20 + static_cast<std::uint64_t>(design);
            const double comm_low =
                tradeoff_point(design, low, geometry, spec, 10.0, tau, settings, {seed, id})
                    .comm_value;
            const double comm_high =
                tradeoff_point(design, high, geometry, spec, 10.0, tau, settings, {seed, id + 40})
                    .comm_value;
            const double drop = (comm_low - comm_high) / num_draws;
            if (design == DownlinkDesignKind::kNomaEmpowered) {
                degradation_noma += drop;
            } else {
                degradation_sdma += drop;
            }
        }
    }
    Outcome out;
    out.pass = degradation_noma < degradation_sdma;
    out.detail = "mean comm drop going to rho 0.95: NOMA " + fmt(degradation_noma) +
                 " vs SDMA " + fmt(degradation_sdma);
    return out;
}

// 8. Decoding the sensing waveform never hurts at fixed beamformers, and the
//    optimized design keeps the advantage.
Outcome criterion8() {
    Outcome out;
    const ArrayGeometry small{3, 0.5};
    for (int rep = 0; rep < 100; ++rep) {
        const std::uint64_t seed = 7000 + static_cast<std::uint64_t>(rep);
        const ChannelSet channels = draw_rayleigh_channels(small, 2, {0.0}, {seed, 0});
        RandomStream rs({seed, 1});
        BeamformerSet b;
        for (int k = 0; k < 2; ++k) {
            CVector w(3);
            for (int i = 0; i < 3; ++i) {
                w[i] = rs.next_cscg(1.0);
            }
            b.user_precoders.push_back(w);
        }
        CVector v(3);
        for (int i = 0; i < 3; ++i) {
            v[i] = rs.next_cscg(1.0);
        }
        b.sensing_precoder = v;

        const InspiredRates inspired =
            rates_noma_inspired(channels, b, DownlinkDesignKind::kNomaInspired);
        const InspiredRates ideal =
            rates_noma_inspired(channels, b, DownlinkDesignKind::kIdealSenic);
        const InspiredRates none = rates_noma_inspired(channels, b, DownlinkDesignKind::kNoSenic);
        const double v_inspired = comm_value(DownlinkDesignKind::kNomaInspired,
                                             inspired.per_user, inspired.multicast);
        const double v_ideal =
            comm_value(DownlinkDesignKind::kIdealSenic, ideal.per_user, ideal.multicast);
        const double v_none =
            comm_value(DownlinkDesignKind::kNoSenic, none.per_user, none.multicast);
        if (!(v_inspired >= v_none && v_inspired >= v_ideal)) {
            out.pass = false;
            out.detail = "fixed-beamformer inequality broken at rep " + std::to_string(rep);
            return out;
        }
    }

    const ArrayGeometry geometry{4, 0.5};
    SensingMetricSpec spec;
    OptimizerSettings settings;
    settings.restarts = 6;
    settings.max_iters = 400;
    settings.tol = 1e-7;
    const std::vector<double> taus = linspace(0.0, 40.0, 5);
    double worst_gap = std::numeric_limits<double>::infinity();
    for (int d = 0; d < 10; ++d) {
        const std::uint64_t seed = 7100 + static_cast<std::uint64_t>(d);
        const ChannelSet channels = draw_rayleigh_channels(geometry, 2, {0.0}, {seed, 0});
        const RegionResult inspired = region_sweep_downlink(
            DownlinkDesignKind::kNomaInspired, channels, geometry, spec, 10.0, taus, settings,
            {seed, 41});
        const RegionResult none = region_sweep_downlink(
            DownlinkDesignKind::kNoSenic, channels, geometry, spec, 10.0, taus, settings,
            {seed, 42});
        for (std::size_t t = 0; t < taus.size(); ++t) {
            if (inspired.rows[t].status != "ok" || none.rows[t].status != "ok") {
                out.pass = false;
                out.detail = "solver failure at draw " + std::to_string(d);
                return out;
            }
            const double gap = inspired.rows[t].comm_value - none.rows[t].comm_value;
            worst_gap = std::min(worst_gap, gap);
            if (gap < -1e-3) {
                out.pass = false;
                out.detail = "optimized advantage broken at draw " + std::to_string(d) +
                             ", tau " + fmt(taus[t]) + " (gap " + fmt(gap) + ")";
                return out;
            }
        }
    }
    out.detail = "100 fixed sets exact, optimized worst gap " + fmt(worst_gap);
    return out;
}

// Analytic gradient of the penalized min-rate objective for the SDMA design,
// coded independently of the library implementation.
RVector sdma_penalized_gradient(const ChannelSet& channels, const ArrayGeometry& geometry,
                                const SensingMetricSpec& spec, double tau, double mu,
                                const RVector& x) {
    const int num_users = channels.num_users();
    const int m = geometry.num_antennas;
    const std::vector<CVector> w = unrealify(x, m);
    const CVector a = steering_vector(geometry, spec.target_angle);

    int worst = 0;
    double worst_rate = std::numeric_limits<double>::infinity();
    std::vector<double> signal(num_users), interference(num_users);
    for (int k = 0; k < num_users; ++k) {
        signal[k] = std::norm(channels.user_channels[k].dot(w[k]));
        interference[k] = channels.noise_power;
        for (int j = 0; j < num_users; ++j) {
            if (j != k) {
                interference[k] += std::norm(channels.user_channels[k].dot(w[j]));
            }
        }
        const double rate = std::log2(1.0 + signal[k] / interference[k]);
        if (rate < worst_rate) {
            worst_rate = rate;
            worst = k;
        }
    }

    const CVector& h = channels.user_channels[worst];
    const double s = signal[worst];
    const double i_noise = interference[worst];
    std::vector<CVector> grad(num_users, CVector::Zero(m));
    grad[worst] = (2.0 / (kLn2 * (i_noise + s))) * (h * h.dot(w[worst]));
    for (int j = 0; j < num_users; ++j) {
        if (j != worst) {
            grad[j] = (-2.0 * s / (kLn2 * i_noise * (i_noise + s))) * (h * h.dot(w[j]));
        }
    }

    double gain = 0.0;
    for (int j = 0; j < num_users; ++j) {
        gain += std::norm(a.dot(w[j]));
    }
    const double violation = std::max(0.0, tau - gain);
    if (violation > 0.0) {
        for (int j = 0; j < num_users; ++j) {
            grad[j] += 4.0 * mu * violation * (a * a.dot(w[j]));
        }
    }
    return realify(grad);
}

// 9. Solver certification: exhaustive grid agreement plus analytic gradients.
Outcome criterion9() {
    Outcome out;
    const ArrayGeometry scalar_array{1, 0.5};
    SensingMetricSpec spec;
    OptimizerSettings settings;
    settings.restarts = 6;
    settings.max_iters = 400;
    settings.tol = 1e-7;
    const double power = 10.0;
    double worst_rel = 0.0;
    RandomStream tau_stream({8100, 0});
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t seed = 8000 + static_cast<std::uint64_t>(i);
        const ChannelSet channels = draw_rayleigh_channels(scalar_array, 1, {0.0}, {seed, 0});
        const double tau = 0.9 * power * tau_stream.next_unit();
        const DownlinkPoint point = tradeoff_point(DownlinkDesignKind::kSdmaBaseline, channels,
                                                   scalar_array, spec, power, tau, settings,
                                                   {seed, 5});
        const double h2 = channels.user_channels[0].squaredNorm();
        const Objective boxed = [&](const RVector& x) {
            const double used = x[0] * x[0] + x[1] * x[1];
            if (used > power * (1.0 + 1e-12) || used < tau) {
                return -1e300;
            }
            return std::log2(1.0 + h2 * used / channels.noise_power);
        };
        const double edge = std::sqrt(power);
        const SolveResult grid =
            grid_argmax(boxed, {{-edge, edge}, {-edge, edge}}, 1001, false);
        const double rel = std::abs(point.comm_value - grid.value) / std::abs(grid.value);
        worst_rel = std::max(worst_rel, rel);
        if (rel > 0.02) {
            out.pass = false;
            out.detail = "solver off the grid optimum by " + fmt(100.0 * rel) +
                         "% at instance " + std::to_string(i);
            return out;
        }
    }

    const ArrayGeometry geometry{2, 0.5};
    SensingMetricSpec angled;
    angled.target_angle = 0.3;
    const double mu = 3.0;
    const ChannelSet channels = draw_rayleigh_channels(geometry, 2, {0.0}, {8200, 0});
    double worst_grad_rel = 0.0;
    int checked = 0;
    std::uint64_t attempt = 0;
    while (checked < 20) {
        RandomStream rs({8300, attempt++});
        RVector x(8);
        for (int i = 0; i < 8; ++i) {
            x[i] = 2.0 * rs.next_gaussian();
        }
        // Alternate between an active and an inactive penalty term.
        double gain = 0.0;
        const CVector a = steering_vector(geometry, angled.target_angle);
        const std::vector<CVector> w = unrealify(x, 2);
        for (const CVector& wk : w) {
            gain += std::norm(a.dot(wk));
        }
        const double tau = (checked % 2 == 0) ? gain + 2.0 : gain - 2.0;
        if (std::abs(tau - gain) < 1e-3) {
            continue;
        }
        std::vector<double> rates;
        for (int k = 0; k < 2; ++k) {
            double denom = channels.noise_power;
            for (int j = 0; j < 2; ++j) {
                if (j != k) {
                    denom += std::norm(channels.user_channels[k].dot(w[j]));
                }
            }
            rates.push_back(std::log2(
                1.0 + std::norm(channels.user_channels[k].dot(w[k])) / denom));
        }
        if (std::abs(rates[0] - rates[1]) < 1e-5) {
            continue;  // min-rate kink; the gradient is not defined there
        }
        const Objective f =
            penalized_objective(DownlinkDesignKind::kSdmaBaseline, channels, geometry, angled,
                                tau, mu);
        const RVector numeric = finite_difference_gradient(f, x, 1e-6);
        const RVector analytic =
            sdma_penalized_gradient(channels, geometry, angled, tau, mu, x);
        const double rel = (numeric - analytic).norm() / std::max(analytic.norm(), 1e-12);
        worst_grad_rel = std::max(worst_grad_rel, rel);
        if (rel > 1e-5) {
            out.pass = false;
            out.detail = "gradient mismatch " + fmt(rel) + " at point " +
                         std::to_string(checked);
            return out;
        }
        ++checked;
    }
    out.detail = "grid worst rel gap " + fmt(worst_rel) + ", gradient worst rel diff " +
                 fmt(worst_grad_rel);
    return out;
}

// 10. Byte-identical repeated runs through the full experiment driver.
Outcome criterion10() {
    const auto run_csv = [](const char* text) {
        const ExperimentConfig config = parse_config(nlohmann::json::parse(text));
        return render_csv(run_experiment(config));
    };
    const char* downlink = R"({
        "experiment_kind": "downlink_region",
        "designs": ["sdma_baseline", "noma_empowered"],
        "seed": 7,
        "channel": {"num_antennas": 2, "num_users": 2, "total_power": 10.0},
        "sweep": {"num_points": 4},
        "optimizer": {"restarts": 4, "max_iters": 250}
    })";
    const char* ergodic = R"({
        "experiment_kind": "uplink_ergodic_region",
        "designs": ["semi_noma"],
        "gamma_c": 2.0,
        "gamma_s": 1.0,
        "seed": 11,
        "trials": 2000,
        "num_points": 5
    })";
    Outcome out;
    const std::string downlink_first = run_csv(downlink);
    const std::string downlink_second = run_csv(downlink);
    const std::string ergodic_first = run_csv(ergodic);
    const std::string ergodic_second = run_csv(ergodic);
    out.pass = downlink_first == downlink_second && ergodic_first == ergodic_second;
    out.detail = out.pass ? "downlink and ergodic uplink CSVs identical across reruns"
                          : "rerun produced different bytes";
    return out;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*run)();
    };
    const Entry entries[] = {
        {"uplink closed-form operating points", criterion1},
        {"semi-NOMA frontier dominates OMA and contains the endpoint designs", criterion2},
        {"pure-NOMA ordering between sensing-prior and communication-prior use", criterion3},
        {"ergodic Monte Carlo mean matches the analytic fading oracle", criterion4},
        {"analytic semi-NOMA split matches the exhaustive simplex grid", criterion5},
        {"overloaded downlink: NOMA dominates SDMA across the gain sweep", criterion6},
        {"high channel correlation costs NOMA less than SDMA", criterion7},
        {"sensing-waveform SIC never hurts and survives optimization", criterion8},
        {"solver certified against grid search and analytic gradients", criterion9},
        {"end-to-end runs are byte-identical across repeats", criterion10},
    };

    int failures = 0;
    for (std::size_t i = 0; i < std::size(entries); ++i) {
        Outcome outcome;
        try {
            outcome = entries[i].run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("threw: ") + e.what();
        }
        std::printf("%s criterion %zu: %s (%s)\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                    entries[i].name, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) {
            ++failures;
        }
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
