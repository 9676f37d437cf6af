// moments.cpp

#include "fracfields/moments.hpp"

#include <algorithm>
#include <cmath>

#include "fracfields/quadrature.hpp"
#include "fracfields/specfun.hpp"

namespace fracfields {

namespace {

// Cov(L(s), L(t)), s <= t, via the substituted integral
// (1/b) int_0^{s^b} ((t - u^{1/b})^b + (s - u^{1/b})^b) du / (G(b+1) G(b))
// minus (s t)^b / G(b+1)^2; the substitution x = u^{1/b} bounds the
// integrand at the left endpoint.
double inverse_stable_cov(double b, double s, double t) {
    if (s == 0.0) return 0.0;
    double gb1 = gamma_fn(b + 1.0);
    double gb = gamma_fn(b);
    auto integrand = [b, s, t](double u) {
        double x = std::pow(u, 1.0 / b);
        double ts = t - x, ss = s - x;
        double v = std::pow(std::max(ts, 0.0), b) + std::pow(std::max(ss, 0.0), b);
        return v / b;
    };
    double upper = std::pow(s, b);
    QuadResult q = integrate(integrand, 0.0, upper, 1e-12, 1e-10, 4000,
                             {upper * 1e-6, upper * 1e-3, upper * 0.5});
    return q.value / (gb1 * gb) - std::pow(s * t, b) / (gb1 * gb1);
}

} // namespace

MarginalMoments inverse_stable_moments(StableIndex beta, double s, double t) {
    if (s < 0.0 || t < 0.0)
        throw std::invalid_argument("inverse_stable_moments: times must be >= 0");
    if (s > t) std::swap(s, t);
    double b = beta.alpha;
    MarginalMoments m;
    if (b == 1.0) { // deterministic clock
        m.mean_s = s;
        m.mean_t = t;
        return m;
    }
    double gb1 = gamma_fn(b + 1.0);
    double vcoef = 2.0 / gamma_fn(2.0 * b + 1.0) - 1.0 / (gb1 * gb1);
    m.mean_s = std::pow(s, b) / gb1;
    m.mean_t = std::pow(t, b) / gb1;
    m.variance_s = std::pow(s, 2.0 * b) * vcoef;
    m.variance_t = std::pow(t, 2.0 * b) * vcoef;
    m.cross_cov = inverse_stable_cov(b, s, t);
    return m;
}

double inverse_stable_cross_moment(StableIndex beta, double s, double t) {
    MarginalMoments m = inverse_stable_moments(beta, s, t);
    return m.cross_cov + m.mean_s * m.mean_t;
}

std::array<std::array<double, 2>, 2> tclp_cov_matrix(const OuterMoments& outer,
                                                     double mean_l1, double var_l1,
                                                     double mean_l2, double var_l2,
                                                     double clock_cross_cov) {
    double d1 = mean_l1 * outer.var1 + var_l1 * outer.mean1 * outer.mean1;
    double d2 = mean_l2 * outer.var2 + var_l2 * outer.mean2 * outer.mean2;
    double off = outer.cross12 * clock_cross_cov;
    return {{{d1, off}, {off, d2}}};
}

double tclp_autocov(const OuterMoments& outer, int i, int j, double clock_cov,
                    double mean_l_min) {
    if (i < 1 || i > 2 || j < 1 || j > 2)
        throw std::invalid_argument("tclp_autocov: coordinates are 1 or 2");
    if (i != j) return outer.cross12 * clock_cov;
    double mean = (i == 1) ? outer.mean1 : outer.mean2;
    double var = (i == 1) ? outer.var1 : outer.var2;
    return clock_cov * mean * mean + mean_l_min * var;
}

TwoParamMoments tp_tc_levy_moments(double outer_mean, double outer_var,
                                   double mean_product_t, double var_product_t,
                                   double mean_product_s, double cov_product_st) {
    TwoParamMoments r;
    r.mean = mean_product_t * outer_mean;
    r.variance = mean_product_t * outer_var + var_product_t * outer_mean * outer_mean;
    r.autocov = mean_product_s * outer_var + cov_product_st * outer_mean * outer_mean;
    return r;
}

ProductClockMoments independent_inverse_stable_product_moments(StableIndex beta1,
                                                               StableIndex beta2,
                                                               double s1, double s2,
                                                               double t1, double t2) {
    if (s1 > t1 || s2 > t2)
        throw std::invalid_argument(
            "independent_inverse_stable_product_moments: require (s1,s2) <= (t1,t2)");
    MarginalMoments m1 = inverse_stable_moments(beta1, s1, t1);
    MarginalMoments m2 = inverse_stable_moments(beta2, s2, t2);
    ProductClockMoments p;
    p.mean_t = m1.mean_t * m2.mean_t;
    p.mean_s = m1.mean_s * m2.mean_s;
    // Var(XY) for independent X, Y.
    double ex2_1 = m1.variance_t + m1.mean_t * m1.mean_t;
    double ex2_2 = m2.variance_t + m2.mean_t * m2.mean_t;
    p.var_t = ex2_1 * ex2_2 - p.mean_t * p.mean_t;
    // Cov of products = prod of cross moments - prod of mean products.
    double c1 = m1.cross_cov + m1.mean_s * m1.mean_t;
    double c2 = m2.cross_cov + m2.mean_s * m2.mean_t;
    p.cov_st = c1 * c2 - p.mean_s * p.mean_t;
    return p;
}

TwoParamMoments fprf_moments(double lambda, StableIndex beta1, StableIndex beta2,
                             double s1, double s2, double t1, double t2) {
    if (!(lambda > 0.0)) throw std::invalid_argument("fprf_moments: lambda > 0");
    ProductClockMoments p =
        independent_inverse_stable_product_moments(beta1, beta2, s1, s2, t1, t2);
    // Poisson outer: E Y(1,1) = Var Y(1,1) = lambda.
    return tp_tc_levy_moments(lambda, lambda, p.mean_t, p.var_t, p.mean_s, p.cov_st);
}

double cov_laplace_tclp(const BernsteinFn& B1, const BernsteinFn& B2,
                        const BivariateBernsteinFn& B, double m12, double z1, double z2) {
    if (!(z1 > 0.0) || !(z2 > 0.0))
        throw std::invalid_argument("cov_laplace_tclp: z1, z2 > 0");
    double b1 = B1(z1), b2 = B2(z2), b = B(z1, z2);
    double denom = z1 * z2 * b1 * b2 * b;
    if (denom == 0.0)
        throw std::domain_error("cov_laplace_tclp: degenerate exponent (division by zero)");
    return m12 * (b1 + b2 - b) / denom;
}

} // namespace fracfields
