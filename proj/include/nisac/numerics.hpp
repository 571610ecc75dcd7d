#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "nisac/errors.hpp"
#include "nisac/rng.hpp"

namespace nisac {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

struct OptimizerSettings {
    int max_iters = 2000;
    double step_init = 0.1;
    double step_shrink = 0.5;
    double tol = 1e-8;
    int restarts = 16;
    double finite_diff_eps = 1e-6;
    int polish_hops = 6;
};

struct SolveResult {
    RVector argument;
    double value = 0.0;
    bool converged = false;
    long iterations = 0;
    int restarts_used = 0;
};

bool is_hermitian(const CMatrix& m, double tol = 1e-10);

// Smallest eigenvalue of a Hermitian matrix; used to validate the PSD tag.
double min_eigenvalue_hermitian(const CMatrix& m);

// Re(a^H R a) for Hermitian R. Raises NotHermitian when the symmetry is off
// by more than 1e-10 and an internal-consistency Error when the imaginary
// residue exceeds 1e-9 * (1 + |result|).
double hermitian_quadratic_form(const CVector& a, const CMatrix& r);

// E1(x) = int_x^inf exp(-t)/t dt for x > 0, absolute error below 1e-10.
// Series expansion for x <= 1, modified-Lentz continued fraction above.
double exp_integral_e1(double x);

using Objective = std::function<double(const RVector&)>;
using Projector = std::function<RVector(const RVector&)>;
using GradientFn = std::function<RVector(const RVector&)>;

RVector finite_difference_gradient(const Objective& f, const RVector& x, double eps);

// Multi-start projected gradient ascent with backtracking. Start points are
// project(x0), project(each extra start), then seeded random points until
// settings.restarts starts exist. A step is accepted only if it does not
// decrease the objective; gradients come from central finite differences
// unless an analytic gradient is supplied. After the start sweep the best
// point is polished with settings.polish_hops seeded perturb-and-reascend
// hops, which lets piecewise-smooth objectives escape kink points where the
// monotone line search stalls. polish_hops = 0 disables the stage.
SolveResult projected_gradient_max(const Objective& objective, const Projector& project,
                                   const RVector& x0, const OptimizerSettings& settings,
                                   RngSeed seed = {},
                                   const std::vector<RVector>& extra_starts = {},
                                   const GradientFn& gradient = nullptr);

struct MonteCarloMean {
    double mean = 0.0;
    double half_width_95 = 0.0;
};

// Sample mean and 1.96*std/sqrt(n) accumulated in ascending trial order with
// compensated summation. Each trial's randomness must derive only from
// (seed, trial_index), which makes the result independent of execution order.
MonteCarloMean monte_carlo_mean(const std::function<double(std::uint64_t, RngSeed)>& sampler,
                                std::uint64_t trials, RngSeed seed);

// Exhaustive grid maximization over a per-coordinate box, optionally
// restricted to the probability simplex (coordinate sum 1 within 1e-9).
// Ties break toward the lexicographically smallest argument.
SolveResult grid_argmax(const Objective& objective,
                        const std::vector<std::pair<double, double>>& box, int points_per_dim,
                        bool simplex_constraint = false);

// Interleaved (re, im) realification used to hand complex decision variables
// to the real-valued optimizer.
RVector realify(const std::vector<CVector>& vectors);
std::vector<CVector> unrealify(const RVector& x, Eigen::Index vector_dim);

}  // namespace nisac
