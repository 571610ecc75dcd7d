#include "nisac/channel.hpp"

#include <cmath>

#include "nisac/errors.hpp"

namespace nisac {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ArrayGeometry::validate() const {
    if (num_antennas < 1) {
        throw ValidationError("ArrayGeometry: num_antennas must be >= 1");
    }
    if (!(element_spacing > 0.0)) {
        throw ValidationError("ArrayGeometry: element_spacing must be > 0");
    }
}

void CorrelationSpec::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw ValidationError("CorrelationSpec: rho must lie in [0,1]");
    }
}

void ChannelSet::validate() const {
    if (user_channels.empty()) {
        throw ValidationError("ChannelSet: needs at least one user channel");
    }
    const Eigen::Index dim = user_channels.front().size();
    for (const CVector& h : user_channels) {
        if (h.size() != dim) {
            throw DimensionMismatch("ChannelSet: user channels of unequal dimension");
        }
        if (!h.allFinite()) {
            throw ValidationError("ChannelSet: non-finite channel entry");
        }
    }
    if (!(noise_power > 0.0)) {
        throw ValidationError("ChannelSet: noise_power must be > 0");
    }
}

void LinkBudget::validate() const {
    if (!(gamma_s >= 0.0)) {
        throw ValidationError("LinkBudget: gamma_s must be >= 0");
    }
    if (!(gamma_c >= 0.0)) {
        throw ValidationError("LinkBudget: gamma_c must be >= 0");
    }
    if (!(kappa > 0.0)) {
        throw ValidationError("LinkBudget: kappa must be > 0");
    }
    if (!(rho_resid >= 0.0 && rho_resid <= 1.0)) {
        throw ValidationError("LinkBudget: rho_resid must lie in [0,1]");
    }
    if (!(total_power > 0.0)) {
        throw ValidationError("LinkBudget: total_power must be > 0");
    }
}

CVector steering_vector(const ArrayGeometry& geometry, double theta) {
    geometry.validate();
    if (!(theta >= -kPi / 2 - 1e-12 && theta <= kPi / 2 + 1e-12)) {
        throw AngleOutOfRange("steering_vector: theta " + std::to_string(theta) +
                              " outside [-pi/2, pi/2]");
    }
    CVector a(geometry.num_antennas);
    const double phase_step = 2.0 * kPi * geometry.element_spacing * std::sin(theta);
    for (int m = 0; m < geometry.num_antennas; ++m) {
        a[m] = std::polar(1.0, phase_step * m);
    }
    return a;
}

ChannelSet draw_rayleigh_channels(const ArrayGeometry& geometry, int num_users,
                                  const CorrelationSpec& spec, RngSeed seed,
                                  double noise_power) {
    geometry.validate();
    spec.validate();
    if (num_users < 1) {
        throw ValidationError("draw_rayleigh_channels: num_users must be >= 1");
    }
    const int m = geometry.num_antennas;
    ChannelSet set;
    set.noise_power = noise_power;
    set.user_channels.reserve(num_users);
    // Each user's raw vector comes from its own substream, so adding users
    // never disturbs the channels already drawn.
    auto draw_raw = [&](int user) {
        RandomStream stream(seed, static_cast<std::uint64_t>(user));
        CVector h(m);
        for (int i = 0; i < m; ++i) {
            h[i] = stream.next_cscg(1.0);
        }
        return h;
    };
    const CVector h1 = draw_raw(0);
    set.user_channels.push_back(h1);
    const double rho = spec.rho;
    for (int k = 1; k < num_users; ++k) {
        if (rho >= 1.0) {
            set.user_channels.push_back(h1);  // exact copy at the degenerate endpoint
            continue;
        }
        const CVector g = draw_raw(k);
        set.user_channels.push_back(rho * h1 + std::sqrt(1.0 - rho * rho) * g);
    }
    set.validate();
    return set;
}

double exponential_snr_draw(double mean_snr, std::uint64_t trial, RngSeed seed) {
    if (!(mean_snr > 0.0)) {
        throw DomainError("exponential_snr_draw: mean_snr must be > 0");
    }
    RandomStream stream(seed, trial);
    return mean_snr * (-std::log(stream.next_unit_open()));
}

}  // namespace nisac
