// samplers.hpp -- one-sided stable subordinators, their inverses, the
// composition clock S_alpha(L_beta(t)), and bivariate time changes: exact
// samplers plus density / Laplace-transform evaluators.
#pragma once

#include <functional>
#include <vector>

#include "fracfields/quadrature.hpp"
#include "fracfields/rng.hpp"
#include "fracfields/series.hpp"

namespace fracfields {

// Index of a one-sided stable subordinator; alpha = 1 is the degenerate
// clock S_1(t) = t and is handled exactly everywhere (no limiting numerics).
struct StableIndex {
    double alpha;
    explicit StableIndex(double a) : alpha(a) {
        if (!(a > 0.0) || a > 1.0)
            throw std::invalid_argument("StableIndex: alpha must lie in (0, 1]");
    }
};

// One-axis random clock.
struct TimeChangeSpec {
    enum class Tag { identity, stable, inverse_stable, composition };
    Tag tag = Tag::identity;
    StableIndex alpha{1.0}; // stable index (outer index for composition)
    StableIndex beta{1.0};  // inverse-stable index (inner index for composition)

    static TimeChangeSpec identity() { return {}; }
    static TimeChangeSpec stable(double a) {
        TimeChangeSpec s;
        s.tag = Tag::stable;
        s.alpha = StableIndex(a);
        return s;
    }
    static TimeChangeSpec inverse_stable(double b) {
        TimeChangeSpec s;
        s.tag = Tag::inverse_stable;
        s.beta = StableIndex(b);
        return s;
    }
    static TimeChangeSpec composition(double a, double b) {
        TimeChangeSpec s;
        s.tag = Tag::composition;
        s.alpha = StableIndex(a);
        s.beta = StableIndex(b);
        return s;
    }
};

// Two-coordinate clock: independent marginals, or one source of randomness
// driving both coordinates (comonotone corner).
struct BivariatePairSpec {
    enum class Tag { independent, common };
    Tag tag = Tag::independent;
    TimeChangeSpec spec1;
    TimeChangeSpec spec2; // ignored for tag == common

    static BivariatePairSpec independent(TimeChangeSpec a, TimeChangeSpec b) {
        return {Tag::independent, a, b};
    }
    static BivariatePairSpec common(TimeChangeSpec s) { return {Tag::common, s, s}; }
};

// S_alpha(1) via the Kanter two-variate representation (uniform angle +
// exponential); Laplace transform E e^{-eta S} = e^{-eta^alpha}.
double sample_standard_stable(StableIndex idx, RngState& rng);

// S_alpha(t) = t^{1/alpha} S_alpha(1); exactly t when alpha = 1.
double sample_stable(StableIndex idx, double t, RngState& rng);

// L_alpha(t) realized as (t / S_alpha(1))^alpha; exactly t when alpha = 1.
double sample_inverse_stable(StableIndex idx, double t, RngState& rng);

// H^{alpha,beta}(t) = S_alpha(L_beta(t)) with independent draws.
double sample_composition(StableIndex alpha, StableIndex beta, double t, RngState& rng);

double sample_time_change(const TimeChangeSpec& spec, double t, RngState& rng);

// The density series need long budgets in their cancellation band just
// below the tail cutoff.
inline constexpr SeriesControl kDensitySeriesControl{1e-14, 1e-14, 8000};

// Density of S_alpha(t): g_alpha(x,t) = alpha t x^{-1} f_alpha(t, x).
double stable_density(StableIndex idx, double x, double t,
                      const SeriesControl& ctl = kDensitySeriesControl);

// Density of L_alpha(t): f_alpha(x,t) = t^{-alpha} W_{-alpha,1-alpha}(-x t^{-alpha}).
double inverse_stable_density(StableIndex idx, double x, double t,
                              const SeriesControl& ctl = kDensitySeriesControl);

// Pr{S_alpha(tau) > v} by the convergent large-argument series; exact at
// alpha = 1 (degenerate clock).
double stable_survival(StableIndex idx, double v, double tau,
                       const SeriesControl& ctl = kDensitySeriesControl);

// Density of H^{alpha,beta}(t): the mixing integral of g_alpha against
// f_beta by adaptive quadrature over (0, inf); relative target 1e-6.
double composition_density(StableIndex alpha, StableIndex beta, double x, double t);

// E e^{-eta H^{alpha,beta}(t)} = E_{beta,1}(-t^beta eta^alpha).
double composition_laplace(StableIndex alpha, StableIndex beta, double eta, double t,
                           const SeriesControl& ctl = SeriesControl{});

using BernsteinFn = std::function<double(double)>;
using BivariateBernsteinFn = std::function<double(double, double)>;

// Double Laplace transform of a generic composition with Laplace exponents
// sigma (outer) and rho (inner): rho(z) / (z (sigma(eta) + rho(z))).
double generic_composition_double_laplace(const BernsteinFn& sigma_exponent,
                                          const BernsteinFn& rho_exponent, double eta,
                                          double z);

// One draw of the bivariate clock (L1(t1), L2(t2)).
std::pair<double, double> sample_bivariate_time_change(const BivariatePairSpec& pair,
                                                       double t1, double t2,
                                                       RngState& rng);

// Space-time double Laplace transform of (H1(t1), H2(t2)) driven by the
// exponent triple (B1, B2, B); marginal consistency B(x,0)=B1(x),
// B(0,y)=B2(y) is probed to 1e-10 before evaluating.
double bivariate_composition_double_laplace(const BernsteinFn& B1, const BernsteinFn& B2,
                                            const BivariateBernsteinFn& B, double eta1,
                                            double eta2, double z1, double z2);

// One stable path observed at two times: (S(u1), S(u2)) via nested
// independent increments.  Exact in distribution.
std::pair<double, double> sample_stable_path_pair(StableIndex idx, double u1, double u2,
                                                  RngState& rng);

// First passage times of one stable-subordinator path across each level
// (levels ascending).  The walk advances in du steps, so each returned value
// overshoots the true passage time by at most du.
std::vector<double> inverse_stable_first_passages(StableIndex idx,
                                                  const std::vector<double>& levels,
                                                  double du, RngState& rng);

} // namespace fracfields
