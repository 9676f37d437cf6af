// specfun.hpp -- gamma-family special functions: log-gamma with sign,
// Mittag-Leffler, Wright and generalized Wright series, falling factorials,
// regularized incomplete gamma.  Everything here is a pure function.
#pragma once

#include <utility>
#include <vector>

#include "fracfields/series.hpp"

namespace fracfields {

// log|Gamma(x)| together with the sign of Gamma(x).
struct LogGamma {
    double log_abs;
    int sign; // +1 or -1
};

// Throws GammaPoleError at x in {0,-1,-2,...}.
LogGamma log_gamma_signed(double x);

// Convenience for x where Gamma(x) > 0 (throws on poles, aborts on sign<0
// never happens for x>0).
double log_gamma(double x);

// Gamma(x); overflows to +/-inf above ~171.6.
double gamma_fn(double x);

// 1/Gamma(x) with the analytic-continuation convention 1/Gamma(pole) = 0.
double gamma_reciprocal(double x);

// Gamma(x+1)/Gamma(x-n+1) sign-tracked ratio would hit poles; the falling
// factorial is the plain product x(x-1)...(x-n+1), (x)_0 = 1.
double falling_factorial(double x, int n);

// log|(x)_n| and sign; -inf log means the product is exactly zero.
std::pair<double, int> log_falling_factorial(double x, int n);

// Generalized binomial coefficient C(x, n) = (x)_n / n!.
double binomial_coefficient(double x, int n);

// Two-parameter Mittag-Leffler E_{alpha,beta}(x) = sum_k x^k / Gamma(k*alpha + beta).
SeriesResult mittag_leffler_ex(double alpha, double beta, double x,
                               const SeriesControl& ctl = SeriesControl{});
double mittag_leffler(double alpha, double beta, double x,
                      const SeriesControl& ctl = SeriesControl{});

// Wright function W_{sigma,rho}(x) = sum_k x^k / (Gamma(k*sigma + rho) k!),
// sigma > -1.  Terms whose Gamma argument is a pole contribute zero.
SeriesResult wright_ex(double sigma, double rho, double x,
                       const SeriesControl& ctl = SeriesControl{});
double wright(double sigma, double rho, double x,
              const SeriesControl& ctl = SeriesControl{});

// Parameters of the generalized Wright function lPsi_m.
struct WrightParams {
    std::vector<std::pair<double, double>> upper; // (a_i, alpha_i)
    std::vector<std::pair<double, double>> lower; // (b_j, beta_j)
};

// sum_n [prod_i Gamma(a_i + n alpha_i)] x^n / ([prod_j Gamma(b_j + n beta_j)] n!).
// A pole in an upper gamma raises GammaPoleError (the term is infinite); a
// pole in a lower gamma zeroes the term.  Detects divergence (three
// consecutive term growths past term 10) and raises DivergenceError telling
// the caller to use the quadrature fallback.
SeriesResult generalized_wright_ex(const WrightParams& p, double x,
                                   const SeriesControl& ctl = SeriesControl{});
double generalized_wright(const WrightParams& p, double x,
                          const SeriesControl& ctl = SeriesControl{});

// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Caputo derivative of the power t^{k*beta}: multiplies the coefficient by
// Gamma(k*beta+1)/Gamma((k-1)*beta+1) and lowers the exponent by beta.
double caputo_power_factor(int k, double beta);

} // namespace fracfields
