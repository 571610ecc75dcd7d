#include "nisac/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nisac {

bool is_hermitian(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

double min_eigenvalue_hermitian(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double hermitian_quadratic_form(const CVector& a, const CMatrix& r) {
    if (r.rows() != r.cols() || a.size() != r.rows()) {
        throw DimensionMismatch("hermitian_quadratic_form: vector length " +
                                std::to_string(a.size()) + " vs matrix " +
                                std::to_string(r.rows()) + "x" + std::to_string(r.cols()));
    }
    if (!is_hermitian(r)) {
        throw NotHermitian("hermitian_quadratic_form: matrix is not conjugate-symmetric");
    }
    const std::complex<double> q = a.dot(r * a);  // Eigen's dot conjugates the left factor
    const double result = q.real();
    if (std::abs(q.imag()) >= 1e-9 * (1.0 + std::abs(result))) {
        throw Error("hermitian_quadratic_form: imaginary residue " + std::to_string(q.imag()));
    }
    return result;
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) {
        throw DomainError("exp_integral_e1: x must be positive, got " + std::to_string(x));
    }
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
        constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
        double sum = 0.0;
        double power_over_factorial = 1.0;
        for (int k = 1; k <= 64; ++k) {
            power_over_factorial *= x / k;
            const double term = power_over_factorial / k * ((k % 2 != 0) ? 1.0 : -1.0);
            sum += term;
            if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) {
                break;
            }
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    // Continued fraction E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    // evaluated with the modified Lentz scheme.
    constexpr double kTiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    return h * std::exp(-x);
}

RVector finite_difference_gradient(const Objective& f, const RVector& x, double eps) {
    RVector grad(x.size());
    RVector probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + eps;
        const double up = f(probe);
        probe[i] = x[i] - eps;
        const double down = f(probe);
        probe[i] = x[i];
        grad[i] = (up - down) / (2.0 * eps);
    }
    return grad;
}

namespace {

struct AscentOutcome {
    RVector x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

double checked_eval(const Objective& f, const RVector& x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw NonFiniteObjective("objective returned a non-finite value");
    }
    return v;
}

AscentOutcome ascend(const Objective& f, const Projector& project, const GradientFn& gradient,
                     const RVector& start, const OptimizerSettings& settings) {
    AscentOutcome out;
    out.x = project(start);
    out.value = checked_eval(f, out.x);
    double step = settings.step_init;
    const double step_floor = 1e-14 * settings.step_init;
    for (; out.iterations < settings.max_iters; ++out.iterations) {
        const RVector g = gradient
                              ? gradient(out.x)
                              : finite_difference_gradient(f, out.x, settings.finite_diff_eps);
        if (!g.allFinite()) {
            throw NonFiniteObjective("gradient evaluation produced a non-finite value");
        }
        if (g.norm() == 0.0) {
            out.converged = true;
            break;
        }
        double trial = step;
        bool accepted = false;
        RVector candidate;
        double candidate_value = 0.0;
        while (trial >= step_floor) {
            candidate = project(out.x + trial * g);
            candidate_value = checked_eval(f, candidate);
            if (candidate_value >= out.value) {
                accepted = true;
                break;
            }
            trial *= settings.step_shrink;
        }
        if (!accepted) {
            out.converged = true;
            break;
        }
        const double improvement = candidate_value - out.value;
        const double movement = (candidate - out.x).norm();
        out.x = std::move(candidate);
        out.value = candidate_value;
        if (improvement <= settings.tol * (1.0 + std::abs(out.value)) &&
            movement <= settings.tol * (1.0 + out.x.norm())) {
            out.converged = true;
            ++out.iterations;
            break;
        }
        step = std::min(trial / settings.step_shrink, settings.step_init * 1e3);
    }
    return out;
}

}  // namespace

SolveResult projected_gradient_max(const Objective& objective, const Projector& project,
                                   const RVector& x0, const OptimizerSettings& settings,
                                   RngSeed seed, const std::vector<RVector>& extra_starts,
                                   const GradientFn& gradient) {
    std::vector<RVector> starts;
    starts.reserve(static_cast<std::size_t>(std::max(settings.restarts, 1)) + extra_starts.size());
    starts.push_back(project(x0));
    {
        const RVector twice = project(starts.front());
        if ((twice - starts.front()).norm() > 1e-12 * (1.0 + starts.front().norm())) {
            throw Error("projected_gradient_max: projection map is not idempotent");
        }
    }
    double scale = 1.0;
    for (const RVector& e : extra_starts) {
        starts.push_back(project(e));
        scale = std::max(scale, starts.back().norm());
    }
    scale = std::max(scale, starts.front().norm());
    while (static_cast<int>(starts.size()) < std::max(settings.restarts, 1)) {
        RandomStream stream(seed, starts.size());
        RVector g(x0.size());
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            g[i] = stream.next_gaussian();
        }
        starts.push_back(project(scale * g));
    }

    SolveResult best;
    best.value = -std::numeric_limits<double>::infinity();
    best.restarts_used = static_cast<int>(starts.size());
    for (const RVector& start : starts) {
        AscentOutcome outcome = ascend(objective, project, gradient, start, settings);
        best.iterations += outcome.iterations;
        if (outcome.value > best.value) {
            best.value = outcome.value;
            best.argument = std::move(outcome.x);
            best.converged = outcome.converged;
        }
    }

    // Perturb-and-reascend hops around the incumbent. The monotone line search
    // stalls on kinks of piecewise-smooth objectives; a nudge restarts it from
    // a nearby point on a smooth piece. Hop trial ids sit far above the
    // restart range so the two stages never share random draws.
    if (settings.polish_hops > 0 && best.argument.size() > 0) {
        double radius = 0.2 * (1.0 + best.argument.norm());
        for (int hop = 0; hop < settings.polish_hops; ++hop) {
            RandomStream stream(seed, 0x100000 + static_cast<std::uint64_t>(hop));
            RVector nudge(best.argument.size());
            for (Eigen::Index i = 0; i < nudge.size(); ++i) {
                nudge[i] = stream.next_gaussian();
            }
            AscentOutcome outcome =
                ascend(objective, project, gradient, best.argument + radius * nudge, settings);
            best.iterations += outcome.iterations;
            if (outcome.value > best.value) {
                best.value = outcome.value;
                best.argument = std::move(outcome.x);
                best.converged = outcome.converged;
                radius = std::min(2.0 * radius, 1.0 + best.argument.norm());
            } else {
                radius *= 0.5;
            }
        }
    }
    return best;
}

namespace {

// Neumaier-compensated accumulator.
struct Compensated {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    double total() const { return sum + comp; }
};

}  // namespace

MonteCarloMean monte_carlo_mean(const std::function<double(std::uint64_t, RngSeed)>& sampler,
                                std::uint64_t trials, RngSeed seed) {
    if (trials < 2) {
        throw InsufficientTrials("monte_carlo_mean: need at least 2 trials, got " +
                                 std::to_string(trials));
    }
    Compensated sum;
    Compensated sum_sq;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double v = sampler(t, seed);
        sum.add(v);
        sum_sq.add(v * v);
    }
    const double n = static_cast<double>(trials);
    MonteCarloMean result;
    result.mean = sum.total() / n;
    const double variance =
        std::max(0.0, (sum_sq.total() - n * result.mean * result.mean) / (n - 1.0));
    result.half_width_95 = 1.96 * std::sqrt(variance / n);
    return result;
}

SolveResult grid_argmax(const Objective& objective,
                        const std::vector<std::pair<double, double>>& box, int points_per_dim,
                        bool simplex_constraint) {
    const int dim = static_cast<int>(box.size());
    if (dim < 1 || dim > 4) {
        throw GridTooLarge("grid_argmax: dimension must be in [1,4], got " + std::to_string(dim));
    }
    if (points_per_dim < 1 || points_per_dim > 2001) {
        throw GridTooLarge("grid_argmax: points_per_dim must be in [1,2001], got " +
                           std::to_string(points_per_dim));
    }
    for (const auto& [lo, hi] : box) {
        if (!(lo <= hi)) {
            throw Error("grid_argmax: box interval with lo > hi");
        }
    }
    constexpr double kSimplexTol = 1e-9;
    std::vector<std::vector<double>> values(dim);
    for (int d = 0; d < dim; ++d) {
        values[d].resize(points_per_dim);
        const double lo = box[d].first;
        const double hi = box[d].second;
        for (int i = 0; i < points_per_dim; ++i) {
            values[d][i] =
                points_per_dim == 1 ? lo : lo + (hi - lo) * i / (points_per_dim - 1);
        }
    }
    // Minimum possible contribution of dims d..end, for pruning subtrees that
    // already overshoot the simplex sum.
    std::vector<double> lo_tail(dim + 1, 0.0);
    for (int d = dim - 1; d >= 0; --d) {
        lo_tail[d] = lo_tail[d + 1] + box[d].first;
    }

    SolveResult best;
    best.value = -std::numeric_limits<double>::infinity();
    best.converged = true;
    best.restarts_used = 1;
    RVector point(dim);
    bool found = false;

    const std::function<void(int, double)> visit = [&](int d, double partial_sum) {
        if (simplex_constraint && partial_sum + lo_tail[d] > 1.0 + kSimplexTol) {
            return;
        }
        if (d == dim) {
            if (simplex_constraint && std::abs(partial_sum - 1.0) > kSimplexTol) {
                return;
            }
            ++best.iterations;
            const double v = objective(point);
            if (!found || v > best.value) {
                best.value = v;
                best.argument = point;
                found = true;
            }
            return;
        }
        for (int i = 0; i < points_per_dim; ++i) {
            point[d] = values[d][i];
            visit(d + 1, partial_sum + point[d]);
        }
    };
    visit(0, 0.0);

    if (!found) {
        throw Error("grid_argmax: no grid point satisfies the simplex constraint");
    }
    return best;
}

RVector realify(const std::vector<CVector>& vectors) {
    Eigen::Index total = 0;
    for (const CVector& v : vectors) {
        total += v.size();
    }
    RVector x(2 * total);
    Eigen::Index k = 0;
    for (const CVector& v : vectors) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            x[k++] = v[i].real();
            x[k++] = v[i].imag();
        }
    }
    return x;
}

std::vector<CVector> unrealify(const RVector& x, Eigen::Index vector_dim) {
    if (vector_dim <= 0 || x.size() % (2 * vector_dim) != 0) {
        throw DimensionMismatch("unrealify: length " + std::to_string(x.size()) +
                                " is not a multiple of 2*" + std::to_string(vector_dim));
    }
    const Eigen::Index count = x.size() / (2 * vector_dim);
    std::vector<CVector> vectors(count, CVector(vector_dim));
    Eigen::Index k = 0;
    for (Eigen::Index v = 0; v < count; ++v) {
        for (Eigen::Index i = 0; i < vector_dim; ++i) {
            vectors[v][i] = {x[k], x[k + 1]};
            k += 2;
        }
    }
    return vectors;
}

}  // namespace nisac
