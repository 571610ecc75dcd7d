#pragma once

#include <cstdint>
#include <vector>

#include "nisac/numerics.hpp"
#include "nisac/rng.hpp"

namespace nisac {

// Uniform linear array, element spacing in wavelengths.
struct ArrayGeometry {
    int num_antennas = 1;
    double element_spacing = 0.5;

    void validate() const;
};

// Pairwise channel correlation coefficient in [0,1].
struct CorrelationSpec {
    double rho = 0.0;

    void validate() const;
};

struct ChannelSet {
    std::vector<CVector> user_channels;
    double noise_power = 1.0;

    int num_users() const { return static_cast<int>(user_channels.size()); }
    void validate() const;
};

// Scalar link parameters shared by both link directions. gamma_s is the
// sensing-echo SNR at the ISAC receiver, gamma_c the uplink communication
// SNR, kappa the sensing processing gain inside the rate logarithm, and
// rho_resid the fraction of echo power left after predictive subtraction
// (1 = no subtraction). total_power is the downlink transmit budget.
struct LinkBudget {
    double gamma_s = 0.0;
    double gamma_c = 0.0;
    double kappa = 1.0;
    double rho_resid = 1.0;
    double total_power = 1.0;

    void validate() const;
};

// ULA response a(theta), entry m = exp(i*2*pi*spacing*m*sin(theta)).
CVector steering_vector(const ArrayGeometry& geometry, double theta);

// User 1 has i.i.d. unit-variance CSCG entries; user k >= 2 is
// rho*h1 + sqrt(1-rho^2)*g_k with independent g_k. rho=1 copies h1 exactly.
ChannelSet draw_rayleigh_channels(const ArrayGeometry& geometry, int num_users,
                                  const CorrelationSpec& spec, RngSeed seed,
                                  double noise_power = 1.0);

// mean_snr * (-ln u) with u uniform on (0,1] from the trial substream.
double exponential_snr_draw(double mean_snr, std::uint64_t trial, RngSeed seed);

}  // namespace nisac
