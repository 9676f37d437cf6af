// fields.cpp -- Poisson random field variants: pmf series with their
// quadrature fallbacks, drifted laws, and exact termwise FDE residuals.

#include "fracfields/fields.hpp"

#include <cmath>
#include <limits>

#include "fracfields/quadrature.hpp"
#include "fracfields/specfun.hpp"

namespace fracfields {

namespace {

// e^{-mu} mu^n / n!
double poisson_weight(long long n, double mu) {
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(mu) - mu - log_gamma(n + 1.0));
}

// A one-axis clock value distribution: either a point mass (degenerate
// index) or an absolutely continuous law on (0,inf).
struct ClockLaw {
    bool is_delta;
    double point;
    std::function<double(double)> pdf;
};

ClockLaw inverse_stable_clock(StableIndex b, double t) {
    if (b.alpha == 1.0) return {true, t, {}};
    return {false, 0.0, [b, t](double x) {
                return inverse_stable_density(b, x, t, kDensitySeriesControl);
            }};
}

ClockLaw stable_clock(StableIndex a, double t) {
    if (a.alpha == 1.0) return {true, t, {}};
    return {false, 0.0, [a, t](double x) {
                return x <= 0.0 ? 0.0 : stable_density(a, x, t, kDensitySeriesControl);
            }};
}

// E K(X, Y) for independent clock values X, Y.
double mix_expectation(const std::function<double(double, double)>& kernel,
                       const ClockLaw& d1, const ClockLaw& d2, double tol) {
    if (d1.is_delta && d2.is_delta) return kernel(d1.point, d2.point);
    if (d1.is_delta)
        return integrate_semi_infinite(
                   [&](double y) { return kernel(d1.point, y) * d2.pdf(y); }, 1e-10, tol,
                   8000)
            .value;
    if (d2.is_delta)
        return integrate_semi_infinite(
                   [&](double x) { return kernel(x, d2.point) * d1.pdf(x); }, 1e-10, tol,
                   8000)
            .value;
    return integrate_semi_infinite(
               [&](double x) {
                   double fx = d1.pdf(x);
                   if (fx <= 0.0) return 0.0;
                   double inner =
                       integrate_semi_infinite(
                           [&](double y) { return kernel(x, y) * d2.pdf(y); }, 1e-11,
                           tol * 0.1, 4000)
                           .value;
                   return fx * inner;
               },
               1e-10, tol, 8000)
        .value;
}

[[noreturn]] void throw_nonconvergence(const char* fn, const SeriesControl& ctl) {
    throw NonConvergenceError(std::string(fn) + ": series did not meet the stopping rule within " +
                              std::to_string(ctl.max_terms) + " terms");
}

} // namespace

long long PointPattern::count_in(const Rectangle& r) const {
    long long c = 0;
    for (const auto& [x, y] : points)
        if (x > r.s1 && x <= r.t1 && y > r.s2 && y <= r.t2) ++c;
    return c;
}

double prf_pmf(const FieldModel& model, long long n, double t1, double t2) {
    if (!model.identity_clocks())
        throw std::invalid_argument("prf_pmf: model must have identity clocks");
    if (n < 0 || t1 < 0.0 || t2 < 0.0)
        throw std::invalid_argument("prf_pmf: need n >= 0, t1 >= 0, t2 >= 0");
    return poisson_weight(n, model.lambda * t1 * t2);
}

PointPattern sample_prf_points(double lambda, const Rectangle& window, RngState& rng) {
    if (!(lambda > 0.0)) throw std::invalid_argument("sample_prf_points: lambda > 0");
    PointPattern pat{window, {}};
    long long count = rng.poisson(lambda * window.area());
    pat.points.reserve(count);
    for (long long i = 0; i < count; ++i) {
        double x = window.s1 + rng.uniform() * (window.t1 - window.s1);
        double y = window.s2 + rng.uniform() * (window.t2 - window.s2);
        pat.points.emplace_back(x, y);
    }
    return pat;
}

long long rectangle_increment(long long n_t1t2, long long n_s1t2, long long n_t1s2,
                              long long n_s1s2) {
    return n_t1t2 - n_s1t2 - n_t1s2 + n_s1s2;
}

namespace {

// At beta1 = 1 the pmf is (-1)^n/n! e^{-u} Q_n(u) with u = t1 (lam t2)^{a1}
// and Q_n the polynomial from n-fold lambda-differentiation of e^{-u}:
// Q_0 = 1, Q_{n+1} = sum_j q_j ((j a1 - n) u^j - a1 u^{j+1}).  Evaluating
// this way stays finite for arbitrarily large u, where the power series
// around 0 overflows long before it cancels.
double degenerate_caputo_pmf(double lambda, double a1, long long n, double t1,
                             double t2) {
    double u = t1 * std::pow(lambda * t2, a1);
    std::vector<double> q{1.0};
    for (long long m = 0; m < n; ++m) {
        std::vector<double> next(q.size() + 1, 0.0);
        for (std::size_t j = 0; j < q.size(); ++j) {
            next[j] += q[j] * (static_cast<double>(j) * a1 - static_cast<double>(m));
            next[j + 1] -= q[j] * a1;
        }
        q = std::move(next);
    }
    // (-1)^n/n! e^{-u} sum_j q_j u^j, each term in log magnitude
    double log_u = u > 0.0 ? std::log(u) : 0.0;
    KahanSum s;
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (q[j] == 0.0 || (u == 0.0 && j > 0)) continue;
        double lt = -u + static_cast<double>(j) * log_u - log_gamma(n + 1.0) +
                    std::log(std::abs(q[j]));
        double sign = (q[j] > 0.0 ? 1.0 : -1.0) * ((n % 2 == 0) ? 1.0 : -1.0);
        s.add(sign * std::exp(lt));
    }
    double v = s.value();
    return v < 0.0 ? 0.0 : v;
}

} // namespace

double tc_prf_pmf(double lambda, StableIndex alpha1, StableIndex beta1, long long n,
                  double t1, double t2, const SeriesControl& ctl) {
    if (!(lambda > 0.0)) throw std::invalid_argument("tc_prf_pmf: lambda > 0");
    if (n < 0 || t1 < 0.0 || t2 < 0.0)
        throw std::invalid_argument("tc_prf_pmf: need n >= 0 and nonnegative times");
    if (t1 == 0.0 || t2 == 0.0) return n == 0 ? 1.0 : 0.0;
    // The alternating series cancels ~2u/ln10 digits at beta1 = 1; switch to
    // the differentiated-exponential form once that bites.
    if (beta1.alpha == 1.0 && t1 * std::pow(lambda * t2, alpha1.alpha) > 12.0)
        return degenerate_caputo_pmf(lambda, alpha1.alpha, n, t1, t2);
    double a1 = alpha1.alpha, b1 = beta1.alpha;
    double log_y = b1 * std::log(t1) + a1 * std::log(t2) + a1 * std::log(lambda);
    double log_nfac = log_gamma(n + 1.0);
    SeriesAccumulator acc;
    // (a1 k)_n vanishes identically for k < n when a1 = 1; skip the exact
    // leading zeros so they cannot satisfy the stopping rule.
    long long k0 = (a1 == 1.0) ? n : 0;
    for (long long k = k0; k < k0 + ctl.max_terms; ++k) {
        auto [lff, fsign] = log_falling_factorial(a1 * k, static_cast<int>(n));
        double term;
        if (std::isinf(lff)) {
            term = 0.0;
        } else {
            double lt = lff + k * log_y - log_nfac - log_gamma(k * b1 + 1.0);
            int sign = fsign * (((k + n) % 2 == 0) ? 1 : -1);
            term = sign * std::exp(lt);
        }
        if (acc.add(term, ctl)) return acc.finish().value;
    }
    throw_nonconvergence("tc_prf_pmf", ctl);
}

namespace {

// Shared divergence detector for the restricted-convergence pmf series.
struct DivergenceWatch {
    double prev = std::numeric_limits<double>::infinity();
    int streak = 0;
    void feed(double abs_term, int index, double abs_tol) {
        if (index > 10 && abs_term > prev && abs_term > abs_tol) {
            if (++streak >= 3)
                throw DivergenceError("series diverges; quadrature fallback required");
        } else {
            streak = 0;
        }
        prev = abs_term;
    }
};

// Series route of the double-fractional pmf; throws DivergenceError outside
// its convergence region.
double double_fractional_series(double lambda, double b1, double b2, long long n,
                                double t1, double t2, const SeriesControl& ctl) {
    double log_x = std::log(lambda) + b1 * std::log(t1) + b2 * std::log(t2);
    double log_nfac = log_gamma(n + 1.0);
    SeriesAccumulator acc;
    DivergenceWatch watch;
    for (long long k = n; k < n + ctl.max_terms; ++k) {
        double lt = 2.0 * log_gamma(k + 1.0) - log_nfac - log_gamma(k - n + 1.0) +
                    k * log_x - log_gamma(k * b1 + 1.0) - log_gamma(k * b2 + 1.0);
        double term = (((k - n) % 2 == 0) ? 1.0 : -1.0) * std::exp(lt);
        watch.feed(std::abs(term), static_cast<int>(k - n), ctl.abs_tol);
        if (acc.add(term, ctl)) return acc.finish().value;
    }
    throw_nonconvergence("double_fractional_pmf", ctl);
}

// Series route of the stable/inverse-stable pmf.
double stable_inverse_series(double lambda, double a1, double b2, long long n, double t1,
                             double t2, const SeriesControl& ctl) {
    double log_x = std::log(t1) + a1 * b2 * std::log(t2);
    double log_nfac = log_gamma(n + 1.0);
    SeriesAccumulator acc;
    DivergenceWatch watch;
    long long k0 = (a1 == 1.0) ? n : 0;
    for (long long k = k0; k < k0 + ctl.max_terms; ++k) {
        auto [lff, fsign] = log_falling_factorial(a1 * k, static_cast<int>(n));
        double term;
        if (std::isinf(lff)) {
            term = 0.0;
        } else {
            double lt = log_gamma(a1 * k + 1.0) + lff + a1 * k * std::log(lambda) +
                        k * log_x - log_nfac - log_gamma(k + 1.0) -
                        log_gamma(a1 * b2 * k + 1.0);
            int sign = fsign * (((k + n) % 2 == 0) ? 1 : -1);
            term = sign * std::exp(lt);
        }
        watch.feed(std::abs(term), static_cast<int>(k - k0), ctl.abs_tol);
        if (acc.add(term, ctl)) return acc.finish().value;
    }
    throw_nonconvergence("stable_inverse_pmf", ctl);
}

} // namespace

BranchedValue double_fractional_pmf(double lambda, StableIndex beta1, StableIndex beta2,
                                    long long n, double t1, double t2,
                                    const SeriesControl& ctl) {
    if (!(lambda > 0.0)) throw std::invalid_argument("double_fractional_pmf: lambda > 0");
    if (n < 0 || t1 < 0.0 || t2 < 0.0)
        throw std::invalid_argument("double_fractional_pmf: bad arguments");
    if (t1 == 0.0 || t2 == 0.0) return {n == 0 ? 1.0 : 0.0, EvalBranch::series};
    try {
        return {double_fractional_series(lambda, beta1.alpha, beta2.alpha, n, t1, t2, ctl),
                EvalBranch::series};
    } catch (const DivergenceError&) {
        auto kernel = [lambda, n](double x, double y) {
            return poisson_weight(n, lambda * x * y);
        };
        double v = mix_expectation(kernel, inverse_stable_clock(beta1, t1),
                                   inverse_stable_clock(beta2, t2), 1e-8);
        return {v < 0.0 ? 0.0 : v, EvalBranch::quadrature};
    }
}

BranchedValue stable_inverse_pmf(double lambda, StableIndex alpha1, StableIndex beta2,
                                 long long n, double t1, double t2,
                                 const SeriesControl& ctl) {
    if (!(lambda > 0.0)) throw std::invalid_argument("stable_inverse_pmf: lambda > 0");
    if (n < 0 || t1 < 0.0 || t2 < 0.0)
        throw std::invalid_argument("stable_inverse_pmf: bad arguments");
    if (t1 == 0.0 || t2 == 0.0) return {n == 0 ? 1.0 : 0.0, EvalBranch::series};
    try {
        return {stable_inverse_series(lambda, alpha1.alpha, beta2.alpha, n, t1, t2, ctl),
                EvalBranch::series};
    } catch (const DivergenceError&) {
        auto kernel = [lambda, n](double x, double y) {
            return poisson_weight(n, lambda * x * y);
        };
        double v = mix_expectation(kernel, stable_clock(alpha1, t1),
                                   inverse_stable_clock(beta2, t2), 1e-8);
        return {v < 0.0 ? 0.0 : v, EvalBranch::quadrature};
    }
}

double tc_prf_tail(double lambda, StableIndex alpha1, StableIndex beta1, long long n_max,
                   double t1, double t2) {
    if (t1 == 0.0 || t2 == 0.0) return 0.0;
    double dof = static_cast<double>(n_max) + 1.0;
    auto tail_given_clock = [&](double s) {
        double mu = lambda * s * t2;
        return mu <= 0.0 ? 0.0 : regularized_gamma_p(dof, mu);
    };
    if (alpha1.alpha == 1.0 && beta1.alpha == 1.0) return tail_given_clock(t1);
    std::function<double(double)> pdf;
    if (beta1.alpha == 1.0)
        pdf = [&](double s) { return s <= 0.0 ? 0.0 : stable_density(alpha1, s, t1); };
    else if (alpha1.alpha == 1.0)
        pdf = [&](double s) { return inverse_stable_density(beta1, s, t1); };
    else
        pdf = [&](double s) {
            return s <= 0.0 ? 0.0 : composition_density(alpha1, beta1, s, t1);
        };
    return integrate_semi_infinite([&](double s) { return tail_given_clock(s) * pdf(s); },
                                   1e-9, 1e-7, 8000)
        .value;
}

double stable_inverse_tail(double lambda, StableIndex alpha1, StableIndex beta2,
                           long long n_max, double t1, double t2) {
    if (t1 == 0.0 || t2 == 0.0) return 0.0;
    double dof = static_cast<double>(n_max) + 1.0;
    SeriesControl ctl;
    auto kernel = [&](double x, double y) {
        double mu = lambda * x * y;
        return mu <= 0.0 ? 0.0 : regularized_gamma_p(dof, mu);
    };
    return mix_expectation(kernel, stable_clock(alpha1, t1),
                           inverse_stable_clock(beta2, t2), 1e-8);
}

double double_fractional_tail(double lambda, StableIndex beta1, StableIndex beta2,
                              long long n_max, double t1, double t2) {
    if (t1 == 0.0 || t2 == 0.0) return 0.0;
    double dof = static_cast<double>(n_max) + 1.0;
    SeriesControl ctl;
    auto kernel = [&](double x, double y) {
        double mu = lambda * x * y;
        return mu <= 0.0 ? 0.0 : regularized_gamma_p(dof, mu);
    };
    return mix_expectation(kernel, inverse_stable_clock(beta1, t1),
                           inverse_stable_clock(beta2, t2), 1e-8);
}

DriftedAtomDistribution drifted_prf_dist(const FieldModel& model, double t1, double t2) {
    if (!model.identity_clocks())
        throw std::invalid_argument("drifted_prf_dist: model must have identity clocks");
    if (t1 < 0.0 || t2 < 0.0)
        throw std::invalid_argument("drifted_prf_dist: nonnegative times required");
    DriftedAtomDistribution d;
    d.offset = model.drift_a * t1 * t2;
    double mu = model.lambda * t1 * t2;
    double w = std::exp(-mu);
    double cum = 0.0;
    long long k = 0;
    while (cum < 1.0 - 1e-12) {
        d.weights.push_back(w);
        cum += w;
        ++k;
        w *= mu / k;
        if (k > 400000) break; // unreachable for sane intensities
    }
    return d;
}

double drifted_prf_laplace(double lambda, double a, double eta, double t1, double t2) {
    return std::exp(-eta * a * t1 * t2 - lambda * t1 * t2 * (1.0 - std::exp(-eta)));
}

BranchedValue typeI_laplace(double lambda, double a, StableIndex beta1, StableIndex beta2,
                            double eta, double t1, double t2, const SeriesControl& ctl) {
    if (!(eta > 0.0)) throw std::invalid_argument("typeI_laplace: eta > 0");
    if (t1 == 0.0 || t2 == 0.0) return {1.0, EvalBranch::series};
    double c = lambda * (1.0 - std::exp(-eta)) + a * eta;
    double x = -c * std::pow(t1, beta1.alpha) * std::pow(t2, beta2.alpha);
    WrightParams p;
    p.upper = {{1.0, 1.0}, {1.0, 1.0}};
    p.lower = {{1.0, beta1.alpha}, {1.0, beta2.alpha}};
    try {
        return {generalized_wright(p, x, ctl), EvalBranch::series};
    } catch (const DivergenceError&) {
        auto kernel = [c](double u, double v) { return std::exp(-c * u * v); };
        double v = mix_expectation(kernel, inverse_stable_clock(beta1, t1),
                                   inverse_stable_clock(beta2, t2), 1e-8);
        return {v, EvalBranch::quadrature};
    }
}

BranchedValue typeII_laplace(double lambda, double a, StableIndex alpha, StableIndex beta,
                             double eta, double t1, double t2, const SeriesControl& ctl) {
    if (!(eta > 0.0)) throw std::invalid_argument("typeII_laplace: eta > 0");
    if (t1 == 0.0 || t2 == 0.0) return {1.0, EvalBranch::series};
    double c = lambda * (1.0 - std::exp(-eta)) + a * eta;
    double x = -t1 * std::pow(t2, alpha.alpha * beta.alpha) * std::pow(c, alpha.alpha);
    WrightParams p;
    p.upper = {{1.0, alpha.alpha}};
    p.lower = {{1.0, alpha.alpha * beta.alpha}};
    try {
        return {generalized_wright(p, x, ctl), EvalBranch::series};
    } catch (const DivergenceError&) {
        // Conditioning on L_beta(t2) = y leaves exp(-t1 (y c)^alpha).
        double aa = alpha.alpha;
        auto kernel = [c, t1, aa](double y) {
            return std::exp(-t1 * std::pow(y * c, aa));
        };
        if (beta.alpha == 1.0) return {kernel(t2), EvalBranch::quadrature};
        double v = integrate_semi_infinite(
                       [&](double y) {
                           return kernel(y) *
                                  inverse_stable_density(beta, y, t2,
                                                         kDensitySeriesControl);
                       },
                       1e-12, 1e-8, 6000)
                       .value;
        return {v, EvalBranch::quadrature};
    }
}

double typeIII_laplace(double lambda, double a, StableIndex gamma_idx, StableIndex alpha,
                       StableIndex beta, double eta, double t1, double t2,
                       const SeriesControl& ctl) {
    if (!(eta > 0.0)) throw std::invalid_argument("typeIII_laplace: eta > 0");
    double load = std::pow(lambda * t2, gamma_idx.alpha) *
                      std::pow(1.0 - std::exp(-eta), gamma_idx.alpha) +
                  std::pow(eta * a * t2, alpha.alpha);
    if (beta.alpha == 1.0) return std::exp(-load * t1);
    return mittag_leffler(beta.alpha, 1.0, -load * std::pow(t1, beta.alpha), ctl);
}

double typeIII_density(double lambda, double a, StableIndex gamma_idx, StableIndex alpha,
                       StableIndex beta, double x, double t1, double t2) {
    if (!(x > 0.0)) throw std::invalid_argument("typeIII_density: x > 0");
    if (!(t1 > 0.0) || !(t2 > 0.0))
        throw std::invalid_argument("typeIII_density: t1, t2 > 0");
    if (!(a > 0.0)) throw std::domain_error("typeIII_density: drift a must be > 0");
    if (gamma_idx.alpha == 1.0 || alpha.alpha == 1.0 || beta.alpha == 1.0)
        throw std::domain_error("typeIII_density: indices must be < 1");
    double scale = std::pow(a * t2, alpha.alpha);
    StableIndex unit(1.0);
    KahanSum total;
    for (long long n = 0; n < x; ++n) {
        auto integrand = [&](double s) {
            if (s <= 0.0) return 0.0;
            double w = tc_prf_pmf(lambda, gamma_idx, unit, n, s, t2);
            if (w <= 0.0) return 0.0;
            return w * stable_density(alpha, x - n, scale * s) *
                   inverse_stable_density(beta, s, t1);
        };
        total.add(integrate_semi_infinite(integrand, 1e-12, 1e-6, 4000).value);
    }
    double v = total.value();
    return v < 0.0 ? 0.0 : v;
}

double typeIII_tail_mass(double lambda, double a, StableIndex gamma_idx,
                         StableIndex alpha, StableIndex beta, double x, double t1,
                         double t2) {
    if (!(x > 0.0)) throw std::invalid_argument("typeIII_tail_mass: x > 0");
    long long nx = static_cast<long long>(std::floor(x));
    double scale = std::pow(a * t2, alpha.alpha);
    StableIndex unit(1.0);
    // {count <= floor(x), count + drift > x}: conditionally independent
    // layers given the shared clock value s.
    KahanSum total;
    for (long long n = 0; n <= nx; ++n) {
        auto integrand = [&](double s) {
            if (s <= 0.0) return 0.0;
            double w = tc_prf_pmf(lambda, gamma_idx, unit, n, s, t2);
            if (w <= 0.0) return 0.0;
            double surv = stable_survival(alpha, x - n, scale * s);
            if (surv <= 0.0) return 0.0;
            return w * surv * inverse_stable_density(beta, s, t1);
        };
        total.add(integrate_semi_infinite(integrand, 1e-11, 1e-7, 4000).value);
    }
    // {count > floor(x)} implies value > x outright.
    total.add(tc_prf_tail(lambda, gamma_idx, beta, nx, t1, t2));
    return total.value();
}

double caputo_fde_residual(double lambda, StableIndex alpha1, StableIndex beta1,
                           long long n, double t1, double t2, const SeriesControl& ctl) {
    if (!(t1 > 0.0)) throw std::invalid_argument("caputo_fde_residual: t1 > 0");
    if (t2 < 0.0) throw std::invalid_argument("caputo_fde_residual: t2 >= 0");
    if (t2 == 0.0) return 0.0; // pmf is delta_{n0} uniformly in t1
    double a1 = alpha1.alpha, b1 = beta1.alpha;
    double log_c = a1 * (std::log(lambda) + std::log(t2));
    double log_nfac = log_gamma(n + 1.0);

    // LHS: termwise Caputo derivative in t1 of the pmf series.
    SeriesAccumulator acc;
    long long k0 = (a1 == 1.0) ? std::max<long long>(n, 1) : 1;
    for (long long k = k0; k < k0 + ctl.max_terms; ++k) {
        auto [lff, fsign] = log_falling_factorial(a1 * k, static_cast<int>(n));
        double term;
        if (std::isinf(lff)) {
            term = 0.0;
        } else {
            double lt = lff + k * log_c + (k - 1) * b1 * std::log(t1) - log_nfac -
                        log_gamma((k - 1) * b1 + 1.0);
            int sign = fsign * (((k + n) % 2 == 0) ? 1 : -1);
            term = sign * std::exp(lt);
        }
        if (acc.add(term, ctl)) break;
        if (k + 1 == k0 + ctl.max_terms) throw_nonconvergence("caputo_fde_residual", ctl);
    }
    double lhs = acc.finish().value;

    // RHS: -(lam t2)^{a1} (I-B)^{a1} p(n), a finite sum since p(<0) = 0.
    KahanSum rhs_sum;
    for (long long r = 0; r <= n; ++r) {
        double w = binomial_coefficient(a1, static_cast<int>(r));
        double p = tc_prf_pmf(lambda, alpha1, beta1, n - r, t1, t2, ctl);
        rhs_sum.add(((r % 2 == 0) ? 1.0 : -1.0) * w * p);
    }
    double rhs = -std::exp(log_c) * rhs_sum.value();
    return lhs - rhs;
}

double pgf_ode_residual(double lambda, StableIndex alpha1, StableIndex beta1, double u,
                        double t1, double t2, const SeriesControl& ctl) {
    if (!(std::abs(u) < 1.0)) throw std::invalid_argument("pgf_ode_residual: |u| < 1");
    if (!(t1 > 0.0)) throw std::invalid_argument("pgf_ode_residual: t1 > 0");
    double a1 = alpha1.alpha, b1 = beta1.alpha;
    double forcing = std::pow(lambda * t2 * (1.0 - u), a1);
    double c = -forcing;
    double g = mittag_leffler(b1, 1.0, c * std::pow(t1, b1), ctl);

    SeriesAccumulator acc;
    double log_ac = std::log(forcing == 0.0 ? 1.0 : forcing);
    for (int k = 1; k <= ctl.max_terms; ++k) {
        double term;
        if (forcing == 0.0) {
            term = 0.0;
        } else {
            double lt = k * log_ac + (k - 1) * b1 * std::log(t1) -
                        log_gamma((k - 1) * b1 + 1.0);
            term = ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(lt);
        }
        if (acc.add(term, ctl)) break;
        if (k == ctl.max_terms) throw_nonconvergence("pgf_ode_residual", ctl);
    }
    double lhs = acc.finish().value;
    return lhs + forcing * g;
}

double double_caputo_recursion_residual(double lambda, StableIndex beta1,
                                        StableIndex beta2, long long n, double t1,
                                        double t2, const SeriesControl& ctl) {
    if (!(t1 > 0.0) || !(t2 > 0.0))
        throw std::invalid_argument("double_caputo_recursion_residual: t1, t2 > 0");
    double b1 = beta1.alpha, b2 = beta2.alpha;
    double log_lam = std::log(lambda);
    double log_nfac = log_gamma(n + 1.0);

    SeriesAccumulator acc;
    DivergenceWatch watch;
    long long k0 = std::max<long long>(n, 1);
    for (long long k = k0; k < k0 + ctl.max_terms; ++k) {
        double lt = 2.0 * log_gamma(k + 1.0) - log_nfac - log_gamma(k - n + 1.0) +
                    k * log_lam + (k - 1) * (b1 * std::log(t1) + b2 * std::log(t2)) -
                    log_gamma((k - 1) * b1 + 1.0) - log_gamma((k - 1) * b2 + 1.0);
        double term = (((k - n) % 2 == 0) ? 1.0 : -1.0) * std::exp(lt);
        watch.feed(std::abs(term), static_cast<int>(k - k0), ctl.abs_tol);
        if (acc.add(term, ctl)) break;
        if (k + 1 == k0 + ctl.max_terms)
            throw_nonconvergence("double_caputo_recursion_residual", ctl);
    }
    double lhs = acc.finish().value;

    auto pmf = [&](long long m) {
        if (m < 0) return 0.0;
        return double_fractional_series(lambda, b1, b2, m, t1, t2, ctl);
    };
    double rhs = (n + 1) * lambda * pmf(n + 1) - (2 * n + 1) * lambda * pmf(n) +
                 n * lambda * pmf(n - 1);
    return lhs - rhs;
}

long long sample_field_count(const FieldModel& model, double t1, double t2,
                             RngState& rng) {
    double u1 = t1 <= 0.0 ? 0.0 : sample_time_change(model.clock1, t1, rng);
    double u2 = t2 <= 0.0 ? 0.0 : sample_time_change(model.clock2, t2, rng);
    return rng.poisson(model.lambda * u1 * u2);
}

double sample_field_value(const FieldModel& model, double t1, double t2, RngState& rng) {
    double u1 = t1 <= 0.0 ? 0.0 : sample_time_change(model.clock1, t1, rng);
    double u2 = t2 <= 0.0 ? 0.0 : sample_time_change(model.clock2, t2, rng);
    long long count = rng.poisson(model.lambda * u1 * u2);
    return count + model.drift_a * u1 * u2;
}

double sample_type3_value(double lambda, double a, StableIndex gamma_idx,
                          StableIndex alpha, StableIndex beta, double t1, double t2,
                          RngState& rng) {
    double clock = sample_inverse_stable(beta, t1, rng);
    double h_gamma = sample_stable(gamma_idx, clock, rng);
    double h_alpha = sample_stable(alpha, clock, rng);
    long long count = rng.poisson(lambda * h_gamma * t2);
    return count + a * h_alpha * t2;
}

} // namespace fracfields
