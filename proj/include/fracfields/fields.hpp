// fields.hpp -- the planar Poisson random field, its rectangular-increment
// calculus, the time-changed and drifted variants, their pmfs / densities /
// Laplace transforms, and exact termwise fractional-equation residuals.
#pragma once

#include <vector>

#include "fracfields/samplers.hpp"

namespace fracfields {

// Full description of a PRF variant: intensity, one clock per axis, and the
// coefficient of the area-proportional drift a*t1*t2.
struct FieldModel {
    double lambda;
    TimeChangeSpec clock1;
    TimeChangeSpec clock2;
    double drift_a = 0.0;

    FieldModel(double lam, TimeChangeSpec c1 = TimeChangeSpec::identity(),
               TimeChangeSpec c2 = TimeChangeSpec::identity(), double a = 0.0)
        : lambda(lam), clock1(c1), clock2(c2), drift_a(a) {
        if (!(lambda > 0.0)) throw std::invalid_argument("FieldModel: lambda must be > 0");
        if (drift_a < 0.0) throw std::invalid_argument("FieldModel: drift_a must be >= 0");
    }
    bool identity_clocks() const {
        return clock1.tag == TimeChangeSpec::Tag::identity &&
               clock2.tag == TimeChangeSpec::Tag::identity;
    }
};

// Corners of the half-open rectangle (s1,t1] x (s2,t2].
struct Rectangle {
    double s1, t1, s2, t2;
    Rectangle(double s1_, double t1_, double s2_, double t2_)
        : s1(s1_), t1(t1_), s2(s2_), t2(t2_) {
        if (s1 < 0 || s2 < 0 || s1 > t1 || s2 > t2)
            throw std::invalid_argument("Rectangle: need 0 <= s1 <= t1, 0 <= s2 <= t2");
    }
    double area() const { return (t1 - s1) * (t2 - s2); }
};

struct PointPattern {
    Rectangle window;
    std::vector<std::pair<double, double>> points;
    long long count_in(const Rectangle& r) const;
};

// Atoms of the drifted PRF law: mass weights[k] at offset + k.
struct DriftedAtomDistribution {
    double offset = 0.0;
    std::vector<double> weights;
};

enum class EvalBranch { series, quadrature };

// Value together with the branch (series or quadrature fallback) that
// produced it.
struct BranchedValue {
    double value;
    EvalBranch branch;
};

// ------------------------------ plain PRF ------------------------------

// Pr{N(t1,t2) = n} = e^{-lam t1 t2} (lam t1 t2)^n / n!  (identity clocks).
double prf_pmf(const FieldModel& model, long long n, double t1, double t2);

PointPattern sample_prf_points(double lambda, const Rectangle& window, RngState& rng);

// Inclusion-exclusion over the four corner counts.
long long rectangle_increment(long long n_t1t2, long long n_s1t2, long long n_t1s2,
                              long long n_s1s2);

// --------------------------- time-changed pmfs ---------------------------

// Pr{N(H^{a1,b1}(t1), t2) = n}: n-fold termwise lambda-differentiation of
// E_{b1,1}(-(lam t2)^{a1} t1^{b1}), with (-lam d/dlam)^n read as
// (-1)^n lam^n d^n/dlam^n.
double tc_prf_pmf(double lambda, StableIndex alpha1, StableIndex beta1, long long n,
                  double t1, double t2, const SeriesControl& ctl = SeriesControl{});

// Pr{N(L_{b1}(t1), L_{b2}(t2)) = n}: the double-fractional series when it
// converges, otherwise the mixing quadrature over both inverse-stable
// densities.
BranchedValue double_fractional_pmf(double lambda, StableIndex beta1, StableIndex beta2,
                                    long long n, double t1, double t2,
                                    const SeriesControl& ctl = SeriesControl{});

// Pr{N(S_{a1}(t1), L_{b2}(t2)) = n}: the 1Psi1-type series under the same
// lambda-differentiation, with a quadrature fallback.
BranchedValue stable_inverse_pmf(double lambda, StableIndex alpha1, StableIndex beta2,
                                 long long n, double t1, double t2,
                                 const SeriesControl& ctl = SeriesControl{});

// Tail masses Pr{count > n_max} through the independent mixing route
// (regularized incomplete gamma against the clock densities); used to close
// normalization checks for the power-tailed families.
double tc_prf_tail(double lambda, StableIndex alpha1, StableIndex beta1, long long n_max,
                   double t1, double t2);
double stable_inverse_tail(double lambda, StableIndex alpha1, StableIndex beta2,
                           long long n_max, double t1, double t2);
double double_fractional_tail(double lambda, StableIndex beta1, StableIndex beta2,
                              long long n_max, double t1, double t2);

// ------------------------------ drifted PRF ------------------------------

// Atom representation of N(t1,t2) + a t1 t2 truncated at Poisson tail mass
// < 1e-12.
DriftedAtomDistribution drifted_prf_dist(const FieldModel& model, double t1, double t2);

// E e^{-eta (N + a t1 t2)} = exp(-eta a t1 t2 - lam t1 t2 (1 - e^{-eta})).
double drifted_prf_laplace(double lambda, double a, double eta, double t1, double t2);

// Type I: both axes inverse-stable, random drift a L1 L2.
BranchedValue typeI_laplace(double lambda, double a, StableIndex beta1, StableIndex beta2,
                            double eta, double t1, double t2,
                            const SeriesControl& ctl = SeriesControl{});

// Type II: stable first axis, inverse-stable second, drift a S L.
BranchedValue typeII_laplace(double lambda, double a, StableIndex alpha, StableIndex beta,
                             double eta, double t1, double t2,
                             const SeriesControl& ctl = SeriesControl{});

// Type III: N(H^{gamma,beta}(t1), t2) + a H^{alpha,beta}(t1) t2 with the two
// compositions sharing one inverse-stable clock L_beta(t1).
double typeIII_laplace(double lambda, double a, StableIndex gamma_idx, StableIndex alpha,
                       StableIndex beta, double eta, double t1, double t2,
                       const SeriesControl& ctl = SeriesControl{});

// Lebesgue density of the Type III law at x > 0 (indices < 1, a > 0).
double typeIII_density(double lambda, double a, StableIndex gamma_idx, StableIndex alpha,
                       StableIndex beta, double x, double t1, double t2);

// Pr{value > x} for the Type III law through the survival-function route
// (independent of the density series); closes mass checks over the
// power-law tail.
double typeIII_tail_mass(double lambda, double a, StableIndex gamma_idx,
                         StableIndex alpha, StableIndex beta, double x, double t1,
                         double t2);

// ----------------------- fractional-equation residuals -----------------------

// Termwise Caputo derivative of the tc pmf in t1 minus the fractional
// backward-difference right-hand side; exactly zero in exact arithmetic.
double caputo_fde_residual(double lambda, StableIndex alpha1, StableIndex beta1,
                           long long n, double t1, double t2,
                           const SeriesControl& ctl = SeriesControl{});

// Same for the pgf equation at argument u in (-1, 1).
double pgf_ode_residual(double lambda, StableIndex alpha1, StableIndex beta1, double u,
                        double t1, double t2, const SeriesControl& ctl = SeriesControl{});

// Double-Caputo residual of the Remark-series pmf against the three-term
// birth recursion.
double double_caputo_recursion_residual(double lambda, StableIndex beta1,
                                        StableIndex beta2, long long n, double t1,
                                        double t2,
                                        const SeriesControl& ctl = SeriesControl{});

// ----------------------------- MC companions -----------------------------

// Count of the field at the time-changed coordinates (no drift added).
long long sample_field_count(const FieldModel& model, double t1, double t2,
                             RngState& rng);

// Count plus drift a*T1*T2 evaluated at the same clock draws.
double sample_field_value(const FieldModel& model, double t1, double t2, RngState& rng);

// Type III draw: one L_beta(t1), two conditionally independent stable layers.
double sample_type3_value(double lambda, double a, StableIndex gamma_idx,
                          StableIndex alpha, StableIndex beta, double t1, double t2,
                          RngState& rng);

} // namespace fracfields
