// series.hpp -- truncation policy, series diagnostics and error types shared
// by every infinite-series evaluator in the library.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fracfields {

// Truncation/tolerance policy for infinite series.  A series evaluator stops
// once |term| <= abs_tol and |term| <= rel_tol*|partial sum| hold for two
// consecutive terms (alternating series have non-monotone early terms), and
// fails with NonConvergenceError when max_terms is exhausted first.
struct SeriesControl {
    double abs_tol = 1e-14;
    double rel_tol = 1e-14;
    int max_terms = 2000;
};

struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    double max_term = 0.0;     // largest |term| seen while summing
    bool precision_loss = false; // |sum| < 1e-6 * max_term: digits cancelled
};

class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what)
        : std::runtime_error(what) {}
};

class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what)
        : std::runtime_error(what) {}
};

class GammaPoleError : public std::domain_error {
public:
    explicit GammaPoleError(const std::string& what)
        : std::domain_error(what) {}
};

// Neumaier compensated accumulator; cheap and order-deterministic.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Compensated summation driving the shared stopping rule.
struct SeriesAccumulator {
    KahanSum sum;
    double max_term = 0.0;
    int terms = 0;
    int small_streak = 0;

    // Feed one term; true once the series may stop.
    bool add(double term, const SeriesControl& ctl) {
        sum.add(term);
        ++terms;
        double a = std::abs(term);
        if (a > max_term) max_term = a;
        if (a <= ctl.abs_tol && a <= ctl.rel_tol * std::abs(sum.value()))
            ++small_streak;
        else
            small_streak = 0;
        return small_streak >= 2 && terms >= 4;
    }

    SeriesResult finish() const {
        SeriesResult r;
        r.value = sum.value();
        r.terms_used = terms;
        r.max_term = max_term;
        r.precision_loss = std::abs(r.value) < 1e-6 * max_term;
        return r;
    }
};

} // namespace fracfields
