#include "nisac/uplink.hpp"

#include <cmath>

#include "nisac/errors.hpp"
#include "nisac/numerics.hpp"

namespace nisac {

const char* to_string(UplinkDesignKind kind) {
    switch (kind) {
        case UplinkDesignKind::kOma:
            return "oma";
        case UplinkDesignKind::kPureNoma:
            return "pure_noma";
        case UplinkDesignKind::kSemiNoma:
            return "semi_noma";
    }
    return "?";
}

UplinkDesignKind uplink_design_from_string(const std::string& name) {
    if (name == "oma") {
        return UplinkDesignKind::kOma;
    }
    if (name == "pure_noma") {
        return UplinkDesignKind::kPureNoma;
    }
    if (name == "semi_noma") {
        return UplinkDesignKind::kSemiNoma;
    }
    throw ValidationError("unknown uplink design '" + name + "'");
}

void ResourceSplit::validate() const {
    if (!(alpha_s >= 0.0 && alpha_c >= 0.0 && alpha_m >= 0.0)) {
        throw ValidationError("ResourceSplit: fractions must be nonnegative");
    }
    if (std::abs(alpha_s + alpha_c + alpha_m - 1.0) > 1e-9) {
        throw ValidationError("ResourceSplit: alpha_s + alpha_c + alpha_m must equal 1 "
                              "within 1e-9 (got " +
                              std::to_string(alpha_s + alpha_c + alpha_m) + ")");
    }
}

double reir(double alpha, const LinkBudget& budget) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("reir: alpha must lie in [0,1]");
    }
    return 0.5 * alpha * std::log2(1.0 + budget.kappa * budget.gamma_s);
}

double comm_rate_mixed(double alpha_m, const LinkBudget& budget) {
    if (!(alpha_m >= 0.0 && alpha_m <= 1.0)) {
        throw DomainError("comm_rate_mixed: alpha_m must lie in [0,1]");
    }
    return alpha_m * std::log2(1.0 + budget.gamma_c / (1.0 + budget.rho_resid * budget.gamma_s));
}

UplinkPoint uplink_point(UplinkDesignKind design, const ResourceSplit& split,
                         const LinkBudget& budget) {
    split.validate();
    switch (design) {
        case UplinkDesignKind::kOma:
            if (split.alpha_m != 0.0) {
                throw SplitDesignMismatch("oma requires alpha_m = 0");
            }
            break;
        case UplinkDesignKind::kPureNoma:
            if (split.alpha_s != 0.0 || split.alpha_c != 0.0 || split.alpha_m != 1.0) {
                throw SplitDesignMismatch("pure_noma requires the split (0, 0, 1)");
            }
            break;
        case UplinkDesignKind::kSemiNoma:
            break;
    }
    UplinkPoint point;
    point.split = split;
    point.sensing_rate = reir(split.alpha_s + split.alpha_m, budget);
    point.comm_rate =
        split.alpha_c * std::log2(1.0 + budget.gamma_c) + comm_rate_mixed(split.alpha_m, budget);
    return point;
}

ResourceSplit design_split(UplinkDesignKind design, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError("design_split: beta must lie in [0,1]");
    }
    switch (design) {
        case UplinkDesignKind::kOma:
            return {beta, 1.0 - beta, 0.0};
        case UplinkDesignKind::kPureNoma:
            return {0.0, 0.0, 1.0};
        case UplinkDesignKind::kSemiNoma:
            return {0.0, 1.0 - beta, beta};
    }
    throw Error("design_split: unreachable");
}

namespace {

RegionRow point_row(UplinkDesignKind design, double beta, const UplinkPoint& point) {
    RegionRow row;
    row.design = to_string(design);
    row.sweep_param = beta;
    row.sensing_value = point.sensing_rate;
    row.comm_value = point.comm_rate;
    row.aux["alpha_s"] = point.split.alpha_s;
    row.aux["alpha_c"] = point.split.alpha_c;
    row.aux["alpha_m"] = point.split.alpha_m;
    return row;
}

}  // namespace

RegionResult frontier(UplinkDesignKind design, const LinkBudget& budget, int num_points) {
    if (num_points < 2) {
        throw ValidationError("frontier: num_points must be >= 2");
    }
    budget.validate();
    RegionResult result;
    result.rows.reserve(num_points);
    for (int i = 0; i < num_points; ++i) {
        const double beta = static_cast<double>(i) / (num_points - 1);
        const ResourceSplit split = design_split(design, beta);
        result.rows.push_back(point_row(design, beta, uplink_point(design, split, budget)));
    }
    flag_pareto(result.rows);
    return result;
}

RegionResult ergodic_frontier(UplinkDesignKind design, double mean_gamma_c,
                              const LinkBudget& budget_template, std::uint64_t trials,
                              RngSeed seed, int num_points, const FadingDraw& draw) {
    if (trials < 100) {
        throw InsufficientTrials("ergodic_frontier: need at least 100 trials");
    }
    if (!(mean_gamma_c > 0.0)) {
        throw DomainError("ergodic_frontier: mean_gamma_c must be > 0");
    }
    const FadingDraw& effective_draw =
        draw ? draw : FadingDraw(&exponential_snr_draw);
    RegionResult result = frontier(design, budget_template, num_points);
    for (RegionRow& row : result.rows) {
        ResourceSplit split{row.aux.at("alpha_s"), row.aux.at("alpha_c"), row.aux.at("alpha_m")};
        const MonteCarloMean mc = monte_carlo_mean(
            [&](std::uint64_t trial, RngSeed s) {
                LinkBudget faded = budget_template;
                faded.gamma_c = effective_draw(mean_gamma_c, trial, s);
                return uplink_point(design, split, faded).comm_rate;
            },
            trials, seed);
        row.comm_value = mc.mean;
        row.aux["mc_half_width"] = mc.half_width_95;
    }
    flag_pareto(result.rows);
    return result;
}

}  // namespace nisac
