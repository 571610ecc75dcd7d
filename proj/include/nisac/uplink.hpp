#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "nisac/channel.hpp"
#include "nisac/region.hpp"
#include "nisac/rng.hpp"

namespace nisac {

enum class UplinkDesignKind { kOma, kPureNoma, kSemiNoma };

const char* to_string(UplinkDesignKind kind);
UplinkDesignKind uplink_design_from_string(const std::string& name);

// Fractions of the normalized radio resource given to the sensing-only,
// communication-only, and mixed blocks. Must sum to 1.
struct ResourceSplit {
    double alpha_s = 0.0;
    double alpha_c = 0.0;
    double alpha_m = 0.0;

    void validate() const;
};

struct UplinkPoint {
    double sensing_rate = 0.0;
    double comm_rate = 0.0;
    ResourceSplit split;
};

// Radar estimation information rate over a resource share alpha:
// (alpha/2) * log2(1 + kappa * gamma_s).
double reir(double alpha, const LinkBudget& budget);

// Communication rate earned inside the mixed block, where the message is
// decoded first and therefore against the (possibly pre-subtracted) echo:
// alpha_m * log2(1 + gamma_c / (1 + rho_resid * gamma_s)).
double comm_rate_mixed(double alpha_m, const LinkBudget& budget);

// Sensing is echo-interference-free in the mixed block after the
// communication-first cancellation, so R_s accrues over alpha_s + alpha_m.
UplinkPoint uplink_point(UplinkDesignKind design, const ResourceSplit& split,
                         const LinkBudget& budget);

// The split each design uses at sweep position beta in [0,1].
ResourceSplit design_split(UplinkDesignKind design, double beta);

// Sensing-versus-communication frontier over a uniform beta grid. For the
// semi design the Pareto-optimal split at each beta is (0, 1-beta, beta):
// moving mass from the mixed block to the sensing-only block keeps R_s fixed
// and strictly loses communication rate whenever gamma_c > 0.
RegionResult frontier(UplinkDesignKind design, const LinkBudget& budget, int num_points);

using FadingDraw = std::function<double(double mean_snr, std::uint64_t trial, RngSeed seed)>;

// Frontier with the communication rate replaced by its Monte Carlo mean over
// Rayleigh-faded gamma_c draws; the sensing echo stays deterministic. Rows
// carry the 95% half-width in aux["mc_half_width"]. An alternative draw
// function may be supplied (test hook for degenerate fading).
RegionResult ergodic_frontier(UplinkDesignKind design, double mean_gamma_c,
                              const LinkBudget& budget_template, std::uint64_t trials,
                              RngSeed seed, int num_points, const FadingDraw& draw = {});

}  // namespace nisac
