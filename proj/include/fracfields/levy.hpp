// levy.hpp -- outer Levy processes, their subordination by (drifted) Poisson
// random fields, the coordinatewise semigroup operators, and equality-in-
// distribution checks.
#pragma once

#include <complex>

#include "fracfields/fields.hpp"
#include "fracfields/verify_types.hpp"

namespace fracfields {

// One-parameter outer process.  compound_poisson ships with two jump laws:
// a unit point mass and a standard Gaussian.
struct LevyProcessSpec {
    enum class Tag { brownian, poisson, compound_poisson, stable_sub };
    enum class JumpLaw { unit, gaussian };

    Tag tag = Tag::brownian;
    double drift = 0.0;      // brownian drift b
    double volatility = 1.0; // brownian sigma
    double rate = 1.0;       // poisson / compound-poisson intensity
    JumpLaw jump = JumpLaw::unit;
    StableIndex stable_index{1.0};

    static LevyProcessSpec brownian(double b, double sigma);
    static LevyProcessSpec poisson(double rate);
    static LevyProcessSpec compound_poisson(double rate, JumpLaw jump);
    static LevyProcessSpec stable_sub(double alpha);

    double mean1() const;                   // E Y(1) (+inf for stable_sub)
    double var1() const;                    // Var Y(1)
    std::complex<double> log_cf(double xi) const; // log E e^{i xi Y(1)}
};

double sample_levy(const LevyProcessSpec& spec, double t, RngState& rng);

// Y evaluated along one path at several times (ascending); exact via
// independent increments.
std::vector<double> sample_levy_path(const LevyProcessSpec& spec,
                                     const std::vector<double>& times, RngState& rng);

// Y(N(t1,t2) + a t1 t2) with independent field and path layers; the model
// must have identity clocks (drift taken from model.drift_a).
double sample_prf_subordinated_levy(const LevyProcessSpec& spec, const FieldModel& model,
                                    double t1, double t2, RngState& rng);

// Uniform grid function on [x_min, x_min + h*(n-1)]; zero outside.
struct GridFunction {
    double x_min = 0.0;
    double h = 1.0;
    std::vector<double> values;

    double x_max() const { return x_min + h * (values.size() - 1); }
    double interp(double x) const;
};

struct SemigroupResult {
    GridFunction f;
    // Atom mass whose shifted copy of supp(f) falls entirely off the grid
    // (plus the 1e-12 Poisson truncation); bound on the dropped mass.
    double truncation_bound = 0.0;
};

// (P_{t1,t2} f)(x) = E f(x - N(t1,t2) - a t1 t2): drifted-atom mixture with
// linear interpolation for the fractional drift shift.
SemigroupResult prf_shift_semigroup_apply(const GridFunction& f, double lambda, double a,
                                          double t1, double t2);

// (T*_{t1,t2} f)(x) = E (P_{N(t1,t2)} f)(x) for a brownian or poisson outer
// semigroup P.
GridFunction subordinated_semigroup_apply(const LevyProcessSpec& spec,
                                          const GridFunction& f, double lambda, double t1,
                                          double t2);

// Per-replicate draws of the two sides of the decomposition identity
// Y(N + a t1 t2) =d  sum_{k<=N} Y_k + Y(a t1 t2).
double draw_decomposition_lhs(const LevyProcessSpec& spec, double lambda, double a,
                              double t1, double t2, RngState& rng);
double draw_decomposition_rhs(const LevyProcessSpec& spec, double lambda, double a,
                              double t1, double t2, RngState& rng);

// One rectangular increment of Y* = Y(N(.,.)) over (s,s+h] x (t,t+k]: corner
// counts come from a single point pattern and Y is evaluated at the four
// counts along one path.
double draw_rect_increment_value(const LevyProcessSpec& spec, double lambda, double s,
                                 double t, double h, double k, RngState& rng);

// Two-sample KS comparison of the decomposition identity at 1%.
ComparisonReport decomposition_check(const LevyProcessSpec& spec, double lambda, double a,
                                     double t1, double t2, std::uint64_t n_samples,
                                     RngState& rng);

// Two-sample KS comparison of the increment law at two anchors at 1%.
// Identical anchors replay the identical sub-stream, so the statistic is 0.
ComparisonReport stationary_rect_increment_check(const LevyProcessSpec& spec,
                                                 double lambda, double s1, double t1,
                                                 double s2, double t2, double h, double k,
                                                 std::uint64_t n_samples, RngState& rng);

} // namespace fracfields
