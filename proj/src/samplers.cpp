// samplers.cpp

#include "fracfields/samplers.hpp"

#include <cmath>

#include "fracfields/specfun.hpp"

namespace fracfields {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// W_{-b,1-b}(-z) decays like exp(-(1-b) b^{b/(1-b)} z^{1/(1-b)}); beyond
// exponent 40 the value is below 1e-8 even with generous subleading factors,
// negligible against every tolerance here, while the alternating series
// would need thousands of terms to cancel down to it.
bool wright_tail_negligible(double b, double z) {
    if (z <= 0.0) return false;
    double expo = (1.0 - b) * std::pow(b, b / (1.0 - b)) * std::pow(z, 1.0 / (1.0 - b));
    return expo > 40.0;
}

// 1/Gamma(x) in long double; reflection keeps the sine argument reduced.
long double gamma_reciprocal_ld(long double x) {
    if (x <= 0.0L && x == std::floor(x)) return 0.0L;
    if (x > 0.0L) return std::exp(-std::lgamma(x));
    long double n = std::nearbyint(x);
    long double s = std::sin(kPiL * (x - n));
    if (std::fmod(n, 2.0L) != 0.0L) s = -s;
    return s / kPiL * std::exp(std::lgamma(1.0L - x));
}

// The density band just below the tail cutoff cancels 10+ digits; running
// the alternating series in long double keeps the rounding noise about three
// orders below the 3e-14 * max_term clamp.
double wright_density_value(double b, double z, const SeriesControl& ctl) {
    long double logz = std::log(static_cast<long double>(z));
    long double sum = 0.0L, comp = 0.0L, max_term = 0.0L, lkfac = 0.0L;
    int small_streak = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        if (k > 0) lkfac += std::log(static_cast<long double>(k));
        long double arg = 1.0L - static_cast<long double>(b) * (k + 1);
        long double term = gamma_reciprocal_ld(arg) * std::exp(k * logz - lkfac);
        if (k % 2 == 1) term = -term;
        long double t = sum + term; // Neumaier
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        long double a = std::abs(term);
        if (a > max_term) max_term = a;
        double ad = static_cast<double>(a);
        if (ad <= ctl.abs_tol &&
            ad <= ctl.rel_tol * std::abs(static_cast<double>(sum + comp)))
            ++small_streak;
        else
            small_streak = 0;
        if (small_streak >= 2 && k >= 4) {
            double value = static_cast<double>(sum + comp);
            if (std::abs(value) < 3e-14 * static_cast<double>(max_term)) return 0.0;
            return value < 0.0 ? 0.0 : value;
        }
    }
    throw NonConvergenceError("wright density series did not converge within " +
                              std::to_string(ctl.max_terms) + " terms (b=" +
                              std::to_string(b) + ", z=" + std::to_string(z) + ")");
}

} // namespace

double sample_standard_stable(StableIndex idx, RngState& rng) {
    double a = idx.alpha;
    if (a == 1.0) return 1.0;
    double theta = kPi * rng.uniform();
    double e = rng.exponential();
    double la = a * std::log(std::sin(a * theta)) +
                (1.0 - a) * std::log(std::sin((1.0 - a) * theta)) -
                std::log(std::sin(theta));
    return std::exp(la / a - (1.0 - a) / a * std::log(e));
}

double sample_stable(StableIndex idx, double t, RngState& rng) {
    if (t < 0.0) throw std::invalid_argument("sample_stable: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (idx.alpha == 1.0) return t;
    return std::pow(t, 1.0 / idx.alpha) * sample_standard_stable(idx, rng);
}

double sample_inverse_stable(StableIndex idx, double t, RngState& rng) {
    if (t < 0.0) throw std::invalid_argument("sample_inverse_stable: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (idx.alpha == 1.0) return t;
    return std::pow(t / sample_standard_stable(idx, rng), idx.alpha);
}

double sample_composition(StableIndex alpha, StableIndex beta, double t, RngState& rng) {
    double u = sample_inverse_stable(beta, t, rng);
    return sample_stable(alpha, u, rng);
}

double sample_time_change(const TimeChangeSpec& spec, double t, RngState& rng) {
    switch (spec.tag) {
        case TimeChangeSpec::Tag::identity: return t;
        case TimeChangeSpec::Tag::stable: return sample_stable(spec.alpha, t, rng);
        case TimeChangeSpec::Tag::inverse_stable:
            return sample_inverse_stable(spec.beta, t, rng);
        case TimeChangeSpec::Tag::composition:
            return sample_composition(spec.alpha, spec.beta, t, rng);
    }
    throw std::logic_error("sample_time_change: bad tag");
}

double inverse_stable_density(StableIndex idx, double x, double t,
                              const SeriesControl& ctl) {
    if (idx.alpha == 1.0)
        throw std::domain_error("inverse_stable_density: no density at alpha = 1");
    if (!(t > 0.0)) throw std::invalid_argument("inverse_stable_density: t must be > 0");
    if (x < 0.0) return 0.0;
    if (std::isinf(x)) return 0.0;
    double b = idx.alpha;
    double tmb = std::pow(t, -b);
    double z = x * tmb;
    if (z == 0.0) return tmb * gamma_reciprocal(1.0 - b);
    if (wright_tail_negligible(b, z)) return 0.0;
    return tmb * wright_density_value(b, z, ctl);
}

double stable_density(StableIndex idx, double x, double t, const SeriesControl& ctl) {
    if (idx.alpha == 1.0)
        throw std::domain_error("stable_density: no density at alpha = 1");
    if (!(x > 0.0) || !(t > 0.0))
        throw std::invalid_argument("stable_density: need x > 0 and t > 0");
    if (std::isinf(x)) return 0.0;
    double a = idx.alpha;
    // g_alpha(x,t) = alpha t x^{-1} f_alpha(t,x) with f evaluated at value t,
    // time x.
    double xma = std::pow(x, -a);
    double z = t * xma;
    if (wright_tail_negligible(a, z)) return 0.0;
    return a * t / x * xma * wright_density_value(a, z, ctl);
}

double stable_survival(StableIndex idx, double v, double tau, const SeriesControl& ctl) {
    double a = idx.alpha;
    if (tau < 0.0) throw std::invalid_argument("stable_survival: tau must be >= 0");
    if (v <= 0.0) return 1.0;
    if (tau == 0.0) return 0.0;
    if (a == 1.0) return tau > v ? 1.0 : 0.0;
    double z = tau * std::pow(v, -a);
    // Pr{S <= v} decays with the same exponent as the Wright density tail.
    if (wright_tail_negligible(a, z)) return 1.0;
    // (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(a k)/k! sin(pi k a) z^k, long double.
    long double logz = std::log(static_cast<long double>(z));
    long double al = a;
    long double sum = 0.0L, comp = 0.0L, max_term = 0.0L, lkfac = 0.0L;
    int small_streak = 0;
    for (int k = 1; k < ctl.max_terms; ++k) {
        lkfac += std::log(static_cast<long double>(k));
        long double term = std::exp(std::lgamma(al * k) + k * logz - lkfac) *
                           std::sin(kPiL * al * k) / kPiL;
        if (k % 2 == 0) term = -term;
        long double t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        long double aa = std::abs(term);
        if (aa > max_term) max_term = aa;
        double ad = static_cast<double>(aa);
        if (ad <= ctl.abs_tol &&
            ad <= ctl.rel_tol * std::abs(static_cast<double>(sum + comp)))
            ++small_streak;
        else
            small_streak = 0;
        if (small_streak >= 2 && k >= 4) {
            double value = static_cast<double>(sum + comp);
            if (std::abs(value) < 3e-14 * static_cast<double>(max_term)) return 1.0;
            return std::min(1.0, std::max(0.0, value));
        }
    }
    throw NonConvergenceError("stable_survival: series did not converge");
}

double composition_density(StableIndex alpha, StableIndex beta, double x, double t) {
    if (alpha.alpha == 1.0 || beta.alpha == 1.0)
        throw std::domain_error("composition_density: indices must be < 1");
    if (!(x > 0.0) || !(t > 0.0))
        throw std::invalid_argument("composition_density: need x > 0 and t > 0");
    SeriesControl ctl;
    auto integrand = [&](double s) {
        if (s <= 0.0) return 0.0;
        return stable_density(alpha, x, s, ctl) * inverse_stable_density(beta, s, t, ctl);
    };
    QuadResult r = integrate_semi_infinite(integrand, 1e-14, 1e-7, 6000);
    return r.value < 0.0 ? 0.0 : r.value;
}

double composition_laplace(StableIndex alpha, StableIndex beta, double eta, double t,
                           const SeriesControl& ctl) {
    if (!(eta > 0.0)) throw std::invalid_argument("composition_laplace: eta must be > 0");
    if (t < 0.0) throw std::invalid_argument("composition_laplace: t must be >= 0");
    if (t == 0.0) return 1.0;
    double arg = std::pow(eta, alpha.alpha);
    if (beta.alpha == 1.0) return std::exp(-t * arg);
    return mittag_leffler(beta.alpha, 1.0, -std::pow(t, beta.alpha) * arg, ctl);
}

double generic_composition_double_laplace(const BernsteinFn& sigma_exponent,
                                          const BernsteinFn& rho_exponent, double eta,
                                          double z) {
    if (!(eta > 0.0) || !(z > 0.0))
        throw std::invalid_argument("generic_composition_double_laplace: eta, z > 0");
    double rho = rho_exponent(z);
    return rho / (z * (sigma_exponent(eta) + rho));
}

namespace {

// Comonotone one-axis draw: every tag reuses the shared standard draws.
double common_clock_value(const TimeChangeSpec& spec, double t, double w_outer,
                          double w_inner) {
    switch (spec.tag) {
        case TimeChangeSpec::Tag::identity: return t;
        case TimeChangeSpec::Tag::stable:
            return spec.alpha.alpha == 1.0 ? t
                                           : std::pow(t, 1.0 / spec.alpha.alpha) * w_outer;
        case TimeChangeSpec::Tag::inverse_stable:
            return spec.beta.alpha == 1.0 ? t : std::pow(t / w_inner, spec.beta.alpha);
        case TimeChangeSpec::Tag::composition: {
            double u = spec.beta.alpha == 1.0 ? t : std::pow(t / w_inner, spec.beta.alpha);
            if (u == 0.0) return 0.0;
            return spec.alpha.alpha == 1.0 ? u : std::pow(u, 1.0 / spec.alpha.alpha) * w_outer;
        }
    }
    throw std::logic_error("common_clock_value: bad tag");
}

} // namespace

std::pair<double, double> sample_bivariate_time_change(const BivariatePairSpec& pair,
                                                       double t1, double t2,
                                                       RngState& rng) {
    if (!(t1 > 0.0) || !(t2 > 0.0))
        throw std::invalid_argument("sample_bivariate_time_change: t1, t2 > 0");
    if (pair.tag == BivariatePairSpec::Tag::independent)
        return {sample_time_change(pair.spec1, t1, rng),
                sample_time_change(pair.spec2, t2, rng)};
    // Common tag: one underlying standard draw per layer drives both
    // coordinates, so they are comonotone.
    const TimeChangeSpec& s = pair.spec1;
    double w_inner = 1.0, w_outer = 1.0;
    if (s.tag == TimeChangeSpec::Tag::inverse_stable ||
        s.tag == TimeChangeSpec::Tag::composition)
        if (s.beta.alpha < 1.0) w_inner = sample_standard_stable(s.beta, rng);
    if (s.tag == TimeChangeSpec::Tag::stable || s.tag == TimeChangeSpec::Tag::composition)
        if (s.alpha.alpha < 1.0) w_outer = sample_standard_stable(s.alpha, rng);
    return {common_clock_value(s, t1, w_outer, w_inner),
            common_clock_value(s, t2, w_outer, w_inner)};
}

double bivariate_composition_double_laplace(const BernsteinFn& B1, const BernsteinFn& B2,
                                            const BivariateBernsteinFn& B, double eta1,
                                            double eta2, double z1, double z2) {
    static const double probes[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    for (double x : probes) {
        double m1 = B1(x), m2 = B2(x);
        if (std::abs(B(x, 0.0) - m1) > 1e-10 * std::max(1.0, std::abs(m1)) ||
            std::abs(B(0.0, x) - m2) > 1e-10 * std::max(1.0, std::abs(m2)))
            throw std::invalid_argument(
                "bivariate_composition_double_laplace: B(x,0)/B(0,y) do not match the "
                "marginal exponents");
    }
    double b1z = B1(z1), b2z = B2(z2), bz = B(z1, z2);
    double sum = b2z * (bz - b2z) / (B2(eta2) + b2z) + b1z * (bz - b1z) / (B1(eta1) + b1z) +
                 b1z + b2z - bz;
    return sum / (z1 * z2 * (B(eta1, eta2) + bz));
}

std::pair<double, double> sample_stable_path_pair(StableIndex idx, double u1, double u2,
                                                  RngState& rng) {
    if (u1 < 0.0 || u2 < 0.0)
        throw std::invalid_argument("sample_stable_path_pair: times must be >= 0");
    bool swapped = u1 > u2;
    double lo = swapped ? u2 : u1;
    double hi = swapped ? u1 : u2;
    double v_lo = sample_stable(idx, lo, rng);
    double v_hi = v_lo + (hi > lo ? sample_stable(idx, hi - lo, rng) : 0.0);
    return swapped ? std::pair{v_hi, v_lo} : std::pair{v_lo, v_hi};
}

std::vector<double> inverse_stable_first_passages(StableIndex idx,
                                                  const std::vector<double>& levels,
                                                  double du, RngState& rng) {
    if (!(du > 0.0))
        throw std::invalid_argument("inverse_stable_first_passages: du must be > 0");
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (levels[i] > levels[i + 1])
            throw std::invalid_argument(
                "inverse_stable_first_passages: levels must be ascending");
    std::vector<double> out(levels.size());
    if (idx.alpha == 1.0) { // L_1(t) = t
        for (std::size_t i = 0; i < levels.size(); ++i) out[i] = levels[i];
        return out;
    }
    double step_scale = std::pow(du, 1.0 / idx.alpha);
    double s = 0.0, u = 0.0;
    std::size_t k = 0;
    while (k < levels.size()) {
        if (s > levels[k]) {
            out[k] = u;
            ++k;
            continue;
        }
        u += du;
        s += step_scale * sample_standard_stable(idx, rng);
    }
    return out;
}

} // namespace fracfields
