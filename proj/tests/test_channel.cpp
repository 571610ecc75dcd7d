#include <doctest.h>

#include <cmath>
#include <complex>

#include "nisac/channel.hpp"
#include "nisac/errors.hpp"

using namespace nisac;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("steering_vector closed forms") {
    const ArrayGeometry g{2, 0.5};
    const CVector broadside = steering_vector(g, 0.0);
    CHECK(std::abs(broadside[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(broadside[1] - std::complex<double>(1.0, 0.0)) < 1e-12);

    const CVector endfire = steering_vector(g, kPi / 2);
    CHECK(std::abs(endfire[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(endfire[1] - std::complex<double>(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("steering_vector entries are unit-modulus and norm^2 = M") {
    const ArrayGeometry g{8, 0.5};
    for (const double theta : {-1.5, -0.7, 0.0, 0.3, 1.1}) {
        const CVector a = steering_vector(g, theta);
        REQUIRE(a.size() == 8);
        for (int m = 0; m < 8; ++m) {
            CHECK(std::abs(std::abs(a[m]) - 1.0) < 1e-12);
        }
        CHECK(a.squaredNorm() == doctest::Approx(8.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(steering_vector(g, 2.0), AngleOutOfRange);
    CHECK_THROWS_AS(steering_vector(g, -2.0), AngleOutOfRange);
}

TEST_CASE("draw_rayleigh_channels determinism and prefix stability") {
    const ArrayGeometry g{4, 0.5};
    const ChannelSet a = draw_rayleigh_channels(g, 3, {0.3}, {123, 0});
    const ChannelSet b = draw_rayleigh_channels(g, 3, {0.3}, {123, 0});
    const ChannelSet wider = draw_rayleigh_channels(g, 5, {0.3}, {123, 0});
    const ChannelSet other = draw_rayleigh_channels(g, 3, {0.3}, {124, 0});
    for (int k = 0; k < 3; ++k) {
        CHECK((a.user_channels[k] - b.user_channels[k]).norm() == 0.0);
        CHECK((a.user_channels[k] - wider.user_channels[k]).norm() == 0.0);
    }
    CHECK((a.user_channels[0] - other.user_channels[0]).norm() > 0.0);
}

TEST_CASE("draw_rayleigh_channels rho=1 copies user 1 exactly") {
    const ArrayGeometry g{6, 0.5};
    const ChannelSet set = draw_rayleigh_channels(g, 4, {1.0}, {77, 2});
    for (int k = 1; k < 4; ++k) {
        CHECK((set.user_channels[k] - set.user_channels[0]).norm() == 0.0);
    }
}

TEST_CASE("empirical pairwise correlation increases with rho") {
    const ArrayGeometry g{8, 0.5};
    const int draws = 10000;
    double means[3] = {0.0, 0.0, 0.0};
    const double rhos[3] = {0.0, 0.5, 0.9};
    for (int r = 0; r < 3; ++r) {
        for (int d = 0; d < draws; ++d) {
            const ChannelSet set =
                draw_rayleigh_channels(g, 2, {rhos[r]}, {static_cast<std::uint64_t>(d), 555});
            const auto& h1 = set.user_channels[0];
            const auto& h2 = set.user_channels[1];
            means[r] += std::norm(h1.dot(h2)) / (h1.squaredNorm() * h2.squaredNorm());
        }
        means[r] /= draws;
    }
    CHECK(means[0] < means[1]);
    CHECK(means[1] < means[2]);
    // Independent vectors: the expected normalized magnitude stays small.
    CHECK(std::sqrt(means[0]) < 0.4);
    CHECK(means[2] > 0.7);
}

TEST_CASE("per-user channel power is unit variance per entry") {
    const ArrayGeometry g{4, 0.5};
    const int draws = 100000;
    double power[2] = {0.0, 0.0};
    for (int d = 0; d < draws; ++d) {
        const ChannelSet set =
            draw_rayleigh_channels(g, 2, {0.6}, {static_cast<std::uint64_t>(d), 901});
        power[0] += set.user_channels[0].squaredNorm();
        power[1] += set.user_channels[1].squaredNorm();
    }
    // ||h||^2 is Gamma(M, 1): sd = sqrt(M), so 3 sigma of the mean over n draws.
    const double bound = 3.0 * std::sqrt(4.0 / draws);
    CHECK(std::abs(power[0] / draws - 4.0) < bound);
    CHECK(std::abs(power[1] / draws - 4.0) < bound);
}

TEST_CASE("exponential_snr_draw sample mean and determinism") {
    const int n = 1000000;
    double sum = 0.0;
    for (int t = 0; t < n; ++t) {
        const double v = exponential_snr_draw(1.0, static_cast<std::uint64_t>(t), {31, 0});
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(std::abs(sum / n - 1.0) < 0.006);

    CHECK(exponential_snr_draw(2.5, 17, {9, 1}) == exponential_snr_draw(2.5, 17, {9, 1}));
    CHECK(exponential_snr_draw(0.0001, 3, {9, 1}) >= 0.0);
    CHECK_THROWS_AS(exponential_snr_draw(0.0, 0, {1, 0}), DomainError);
}

TEST_CASE("validation errors for the channel types") {
    CHECK_THROWS_AS((ArrayGeometry{0, 0.5}).validate(), ValidationError);
    CHECK_THROWS_AS((ArrayGeometry{2, 0.0}).validate(), ValidationError);
    CHECK_THROWS_AS(CorrelationSpec{1.5}.validate(), ValidationError);
    CHECK_THROWS_AS(CorrelationSpec{-0.1}.validate(), ValidationError);

    ChannelSet empty;
    CHECK_THROWS_AS(empty.validate(), ValidationError);
    ChannelSet ragged;
    ragged.user_channels.push_back(CVector::Ones(2));
    ragged.user_channels.push_back(CVector::Ones(3));
    CHECK_THROWS_AS(ragged.validate(), DimensionMismatch);

    LinkBudget bad;
    bad.kappa = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    LinkBudget negative;
    negative.gamma_s = -1.0;
    CHECK_THROWS_AS(negative.validate(), ValidationError);
    CHECK_THROWS_AS(draw_rayleigh_channels({4, 0.5}, 0, {0.0}, {1, 0}), ValidationError);
}
