#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracfields/moments.hpp"
#include "fracfields/quadrature.hpp"
#include "fracfields/specfun.hpp"
#include "fracfields/verify.hpp"

using namespace fracfields;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("inverse-stable clock moments") {
    // deterministic clock
    auto m1 = inverse_stable_moments(StableIndex(1.0), 0.5, 2.0);
    CHECK(m1.mean_s == 0.5);
    CHECK(m1.mean_t == 2.0);
    CHECK(m1.variance_t == 0.0);
    CHECK(m1.cross_cov == 0.0);

    auto m = inverse_stable_moments(StableIndex(0.5), 1.0, 1.0);
    CHECK(m.mean_t == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-12));
    CHECK(m.variance_t == doctest::Approx(2.0 - 4.0 / kPi).epsilon(1e-12));

    // frozen 30-digit reference for Cov(L(1/2), L(1)) at beta = 1/2
    auto c = inverse_stable_moments(StableIndex(0.5), 0.5, 1.0);
    CHECK(c.cross_cov == doctest::Approx(0.41799357002668459113).epsilon(1e-9));

    // swapped times give the same answer
    auto cs = inverse_stable_moments(StableIndex(0.5), 1.0, 0.5);
    CHECK(cs.cross_cov == doctest::Approx(c.cross_cov).epsilon(1e-14));
}

TEST_CASE("covariance quadrature agrees with a 1e4-panel trapezoid oracle") {
    for (double b : {0.4, 0.6, 0.8}) {
        double s = 0.7, t = 1.9;
        auto m = inverse_stable_moments(StableIndex(b), s, t);
        // oracle on the substituted integrand (bounded at both ends)
        double upper = std::pow(s, b);
        double integral = trapezoid(
            [&](double u) {
                double x = std::pow(u, 1.0 / b);
                return (std::pow(std::max(t - x, 0.0), b) +
                        std::pow(std::max(s - x, 0.0), b)) /
                       b;
            },
            0.0, upper, 10000);
        double oracle = integral / (gamma_fn(b + 1.0) * gamma_fn(b)) -
                        std::pow(s * t, b) / std::pow(gamma_fn(b + 1.0), 2);
        CHECK(m.cross_cov == doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("beta -> 1 continuity of the clock moments") {
    auto m = inverse_stable_moments(StableIndex(0.999), 0.5, 1.0);
    CHECK(std::abs(m.mean_t - 1.0) <= 1e-2);
    CHECK(std::abs(m.mean_s - 0.5) <= 1e-2);
    CHECK(std::abs(m.variance_t) <= 1e-2);
    CHECK(std::abs(m.cross_cov) <= 1e-2);
}

TEST_CASE("Cauchy-Schwarz for the clock autocovariance") {
    for (double b : {0.3, 0.5, 0.7, 0.9}) {
        for (double s : {0.3, 0.8}) {
            for (double t : {1.0, 2.5}) {
                auto m = inverse_stable_moments(StableIndex(b), s, t);
                CHECK(m.cross_cov * m.cross_cov <=
                      m.variance_s * m.variance_t * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("time-changed bivariate Levy covariance matrix") {
    OuterMoments outer{1.0, 2.0, 1.0, 2.0, 2.0};
    auto m = inverse_stable_moments(StableIndex(0.5), 1.0, 1.0);
    // independent clocks: off-diagonal vanishes
    auto indep = tclp_cov_matrix(outer, m.mean_t, m.variance_t, m.mean_t, m.variance_t, 0.0);
    CHECK(indep[0][1] == 0.0);
    CHECK(indep[1][0] == 0.0);
    CHECK(indep[0][0] ==
          doctest::Approx(m.mean_t * 1.0 + m.variance_t * 1.0).epsilon(1e-12));

    // centered outer: diagonal reduces to E L Var Y
    OuterMoments centered{0.0, 0.0, 1.5, 2.5, 0.0};
    auto cm = tclp_cov_matrix(centered, m.mean_t, m.variance_t, m.mean_t, m.variance_t,
                              m.variance_t);
    CHECK(cm[0][0] == doctest::Approx(m.mean_t * 1.5).epsilon(1e-12));
    CHECK(cm[0][1] == 0.0);
}

TEST_CASE("time-changed bivariate Levy autocovariance") {
    auto m = inverse_stable_moments(StableIndex(0.5), 0.5, 1.0);
    auto m_t = inverse_stable_moments(StableIndex(0.5), 1.0, 1.0);
    OuterMoments poisson_outer{1.0, 1.0, 1.0, 1.0, 1.0};

    // s = t reproduces the covariance-matrix diagonal
    double diag = tclp_autocov(poisson_outer, 1, 1, m_t.variance_t, m_t.mean_t);
    auto matrix = tclp_cov_matrix(poisson_outer, m_t.mean_t, m_t.variance_t, m_t.mean_t,
                                  m_t.variance_t, 0.0);
    CHECK(diag == doctest::Approx(matrix[0][0]).epsilon(1e-12));

    // centered independent coordinates are uncorrelated
    OuterMoments centered{0.0, 0.0, 1.0, 1.0, 0.0};
    CHECK(tclp_autocov(centered, 1, 2, 0.0, 0.0) == 0.0);

    // Poisson outer: lambda^2 Cov(L(s),L(t)) + lambda E L(s)
    double expect = 1.0 * m.cross_cov + 1.0 * m.mean_s;
    CHECK(tclp_autocov(poisson_outer, 1, 1, m.cross_cov, m.mean_s) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(tclp_autocov(poisson_outer, 0, 1, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("two-parameter time-changed Levy moments") {
    // identity clocks: product moments are deterministic
    auto r = tp_tc_levy_moments(3.0, 5.0, 2.0 * 1.5, 0.0, 0.5 * 0.4, 0.0);
    CHECK(r.mean == doctest::Approx(3.0 * 3.0));
    CHECK(r.variance == doctest::Approx(5.0 * 3.0));
    CHECK(r.autocov == doctest::Approx(0.2 * 5.0));

    // centered outer: autocov = E L1L2(s) Var Y and the correlation ratio
    auto c = tp_tc_levy_moments(0.0, 2.0, 1.3, 0.7, 0.9, 0.4);
    CHECK(c.autocov == doctest::Approx(0.9 * 2.0));
    CHECK(c.variance == doctest::Approx(1.3 * 2.0));
    double corr = c.autocov / std::sqrt((0.9 * 2.0) * (1.3 * 2.0));
    CHECK(corr == doctest::Approx(std::sqrt(0.9 / 1.3)).epsilon(1e-12));
}

TEST_CASE("fractional PRF moments") {
    // unit indices reduce to the plain Poisson field
    auto plain = fprf_moments(2.0, StableIndex(1.0), StableIndex(1.0), 0.5, 0.6, 1.5, 2.0);
    CHECK(plain.mean == doctest::Approx(2.0 * 1.5 * 2.0).epsilon(1e-12));
    CHECK(plain.variance == doctest::Approx(2.0 * 1.5 * 2.0).epsilon(1e-12));
    CHECK(plain.autocov == doctest::Approx(2.0 * 0.5 * 0.6).epsilon(1e-12));

    // beta = 1/2 pair at the unit square: mean 4 lambda / pi
    auto half = fprf_moments(1.0, StableIndex(0.5), StableIndex(0.5), 1.0, 1.0, 1.0, 1.0);
    CHECK(half.mean == doctest::Approx(4.0 / kPi).epsilon(1e-12));
    // variance from the displayed gamma expression
    double mean2 = 4.0 / kPi;
    double var_expect =
        mean2 + 1.0 * (4.0 / (gamma_fn(2.0) * gamma_fn(2.0)) -
                       1.0 / std::pow(gamma_fn(1.5), 4));
    CHECK(half.variance == doctest::Approx(var_expect).epsilon(1e-10));
    // autocovariance at s = t collapses to the variance
    CHECK(half.autocov == doctest::Approx(half.variance).epsilon(1e-10));
}

TEST_CASE("Laplace transform of the clock-driven covariance") {
    auto B1 = [](double z) { return std::sqrt(z); };
    auto B2 = [](double z) { return std::sqrt(z); };
    // independent clocks: numerator vanishes
    auto B_indep = [](double z1, double z2) { return std::sqrt(z1) + std::sqrt(z2); };
    CHECK(cov_laplace_tclp(B1, B2, B_indep, 3.0, 1.0, 1.0) == doctest::Approx(0.0));

    // common stable clock at z1 = z2 = 1: (2 - sqrt 2)/sqrt 2 = sqrt(2) - 1
    auto B_common = [](double z1, double z2) { return std::sqrt(z1 + z2); };
    CHECK(cov_laplace_tclp(B1, B2, B_common, 1.0, 1.0, 1.0) ==
          doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));

    auto zero = [](double) { return 0.0; };
    auto Bz = [](double, double) { return 0.0; };
    CHECK_THROWS_AS(cov_laplace_tclp(zero, zero, Bz, 1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("product-clock moments against Monte Carlo") {
    // independent inverse-stable axes at (s1,s2) < (t1,t2): MC with one
    // standard draw per axis reused across the two times (the comonotone
    // within-axis coupling has the correct per-axis joint law)
    StableIndex b1(0.5), b2(0.7);
    double s1 = 0.5, s2 = 0.8, t1 = 1.0, t2 = 1.4;
    auto p = independent_inverse_stable_product_moments(b1, b2, s1, s2, t1, t2);
    const std::uint64_t n = 40000;
    auto est_mean = mc_mean(n, 2121, 0, 2, [&](RngState& rng) {
        double w1 = sample_standard_stable(b1, rng);
        double w2 = sample_standard_stable(b2, rng);
        return std::pow(t1 / w1, b1.alpha) * std::pow(t2 / w2, b2.alpha);
    });
    CHECK(std::abs(est_mean.mean - p.mean_t) <= 4.0 * est_mean.std_error);
    auto est_var = mc_mean(n, 2122, 1, 2, [&](RngState& rng) {
        double w1 = sample_standard_stable(b1, rng);
        double w2 = sample_standard_stable(b2, rng);
        double v = std::pow(t1 / w1, b1.alpha) * std::pow(t2 / w2, b2.alpha) - p.mean_t;
        return v * v;
    });
    CHECK(std::abs(est_var.mean - p.var_t) <= 4.0 * est_var.std_error);
}
