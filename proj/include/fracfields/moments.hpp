// moments.hpp -- closed-form first/second moments, covariances and
// auto-covariances of time-changed (bivariate and two-parameter) Levy
// processes, with quadrature for the inverse-stable covariance integral.
#pragma once

#include <array>

#include "fracfields/samplers.hpp"

namespace fracfields {

// Moments of one inverse-stable clock at a time pair s <= t.
struct MarginalMoments {
    double mean_s = 0.0;
    double mean_t = 0.0;
    double variance_s = 0.0;
    double variance_t = 0.0;
    double cross_cov = 0.0; // Cov(L(s), L(t))
};

// First/second moments of the outer pair (Y1(1), Y2(1)).
struct OuterMoments {
    double mean1 = 0.0;
    double mean2 = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;
    double cross12 = 0.0; // E Y1(1) Y2(1)
};

struct TwoParamMoments {
    double mean = 0.0;
    double variance = 0.0;
    double autocov = 0.0;
};

// E L, Var L closed forms; Cov(L(s), L(t)) by quadrature with the x^{beta-1}
// endpoint removed through the substitution x = u^{1/beta}.  beta = 1 is the
// deterministic clock (variance and covariance identically zero).
MarginalMoments inverse_stable_moments(StableIndex beta, double s, double t);

// E L(s) L(t) for one inverse-stable clock (mean product + covariance).
double inverse_stable_cross_moment(StableIndex beta, double s, double t);

// Variance-covariance matrix of (Y1(L1(t1)), Y2(L2(t2))): clock moments are
// injected so dependent clock constructions can supply MC estimates.
std::array<std::array<double, 2>, 2> tclp_cov_matrix(const OuterMoments& outer,
                                                     double mean_l1, double var_l1,
                                                     double mean_l2, double var_l2,
                                                     double clock_cross_cov);

// Auto-covariance Cov(Z_i(s_i), Z_j(t_j)).  For i == j supply
// Cov(L_j(s_j), L_j(t_j)) and E L_j(min(s_j,t_j)); for i != j the clock
// cross-covariance Cov(L_i(s_i), L_j(t_j)).
double tclp_autocov(const OuterMoments& outer, int i, int j, double clock_cov,
                    double mean_l_min);

// Mean/variance/auto-covariance of Y(L1(t1), L2(t2)) from the product-clock
// moments E L1L2(t), Var L1L2(t), E L1L2(s) and Cov(L1L2(s), L1L2(t)).
TwoParamMoments tp_tc_levy_moments(double outer_mean, double outer_var,
                                   double mean_product_t, double var_product_t,
                                   double mean_product_s, double cov_product_st);

// Product-clock moments for independent inverse-stable axes at (s1,s2) and
// (t1,t2) with (s1,s2) preceding (t1,t2).
struct ProductClockMoments {
    double mean_t = 0.0;  // E L1(t1) L2(t2)
    double var_t = 0.0;   // Var L1(t1) L2(t2)
    double mean_s = 0.0;  // E L1(s1) L2(s2)
    double cov_st = 0.0;  // Cov(L1(s1)L2(s2), L1(t1)L2(t2))
};
ProductClockMoments independent_inverse_stable_product_moments(StableIndex beta1,
                                                               StableIndex beta2,
                                                               double s1, double s2,
                                                               double t1, double t2);

// Mean, variance and auto-covariance of the fractional PRF
// N(L_{b1}(t1), L_{b2}(t2)).
TwoParamMoments fprf_moments(double lambda, StableIndex beta1, StableIndex beta2,
                             double s1, double s2, double t1, double t2);

// Laplace transform of Cov(Z1(t1), Z2(t2)) in (z1, z2):
// m12 (B1 + B2 - B) / (z1 z2 B1 B2 B).
double cov_laplace_tclp(const BernsteinFn& B1, const BernsteinFn& B2,
                        const BivariateBernsteinFn& B, double m12, double z1, double z2);

} // namespace fracfields
