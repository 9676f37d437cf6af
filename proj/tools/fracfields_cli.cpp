// fracfields_cli.cpp -- batch front end: closed-form evaluation, simulation,
// residual checks and the verification campaign.
//
// Exit codes: 0 success, 1 numerical failure (non-convergence or divergence
// without a fallback), 2 usage error, 3 verification failure.

#include <clocale>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracfields/fields.hpp"
#include "fracfields/levy.hpp"
#include "fracfields/moments.hpp"
#include "fracfields/samplers.hpp"
#include "fracfields/specfun.hpp"
#include "fracfields/verify.hpp"

namespace ff = fracfields;
using nlohmann::json;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

struct Output {
    std::string path; // empty = stdout
    std::string format = "table"; // table | json | csv

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        os << text;
    }
};

// Seed precedence: --seed flag > FRACFIELDS_SEED env > 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("FRACFIELDS_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        throw CLI::ValidationError("FRACFIELDS_SEED", "not an unsigned integer");
    }
    return 0;
}

std::string scalar_payload(const std::string& name, double value, const Output& out) {
    if (out.format == "json") return "{\"" + name + "\":" + fmt17(value) + "}\n";
    if (out.format == "csv") return name + "\n" + fmt17(value) + "\n";
    return name + " = " + fmt6(value) + "\n";
}

ff::TimeChangeSpec clock_from(const std::string& kind, double alpha, double beta) {
    if (kind == "identity") return ff::TimeChangeSpec::identity();
    if (kind == "stable") return ff::TimeChangeSpec::stable(alpha);
    if (kind == "inverse_stable") return ff::TimeChangeSpec::inverse_stable(beta);
    if (kind == "composition") return ff::TimeChangeSpec::composition(alpha, beta);
    throw CLI::ValidationError("clock", "unknown clock kind: " + kind);
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    CLI::App app{"time-changed Poisson random fields: evaluation, simulation, "
                 "verification"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::optional<std::uint64_t> seed_flag;
    Output out;
    app.add_option("--seed", seed_flag, "RNG seed (overrides FRACFIELDS_SEED)");
    app.add_option("--output", out.path, "output file (default: stdout)");
    app.add_option("--format", out.format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "evaluate a special function");
    std::string fn;
    double e_alpha = 1.0, e_beta = 1.0, e_x = 0.0, e_sigma = 0.0, e_rho = 1.0;
    int e_n = 0;
    eval->add_option("--fn", fn,
                     "mittag_leffler | wright | log_gamma | falling_factorial")
        ->required();
    eval->add_option("--alpha", e_alpha, "Mittag-Leffler alpha");
    eval->add_option("--beta", e_beta, "Mittag-Leffler beta");
    eval->add_option("--sigma", e_sigma, "Wright sigma");
    eval->add_option("--rho", e_rho, "Wright rho");
    eval->add_option("--x", e_x, "argument");
    eval->add_option("--n", e_n, "falling-factorial order");

    // ---- pmf ----
    auto* pmf = app.add_subcommand("pmf", "probability mass function of a field variant");
    std::string family = "prf";
    double p_a1 = 1.0, p_b1 = 1.0, p_b2 = 1.0, p_lambda = 1.0, p_t1 = 1.0, p_t2 = 1.0;
    long long p_n = 0, p_nmax = -1;
    pmf->add_option("--family", family, "prf | tc | double | stable_inverse")
        ->check(CLI::IsMember({"prf", "tc", "double", "stable_inverse"}));
    pmf->add_option("--alpha1", p_a1, "first stable index");
    pmf->add_option("--beta1", p_b1, "first inverse-stable index");
    pmf->add_option("--beta2", p_b2, "second index");
    pmf->add_option("--lambda", p_lambda, "field intensity");
    pmf->add_option("--t1", p_t1, "first coordinate");
    pmf->add_option("--t2", p_t2, "second coordinate");
    pmf->add_option("--n", p_n, "count argument");
    pmf->add_option("--n-max", p_nmax, "emit table for n = 0..n-max");

    // ---- laplace ----
    auto* lap = app.add_subcommand("laplace", "Laplace transform of a field variant");
    std::string l_family = "composition";
    double l_a = 0.5, l_b = 0.5, l_g = 0.5, l_eta = 1.0, l_lambda = 1.0, l_drift = 0.0,
           l_t1 = 1.0, l_t2 = 1.0;
    lap->add_option("--family", l_family,
                    "composition | drifted | typeI | typeII | typeIII")
        ->check(CLI::IsMember({"composition", "drifted", "typeI", "typeII", "typeIII"}));
    lap->add_option("--alpha", l_a, "stable index");
    lap->add_option("--beta", l_b, "inverse-stable index");
    lap->add_option("--gamma", l_g, "type III gamma index");
    lap->add_option("--eta", l_eta, "transform argument")->required();
    lap->add_option("--lambda", l_lambda, "field intensity");
    lap->add_option("--a", l_drift, "drift coefficient");
    lap->add_option("--t1", l_t1, "first coordinate");
    lap->add_option("--t2", l_t2, "second coordinate");

    // ---- moments ----
    auto* mom = app.add_subcommand("moments", "closed-form moments");
    std::string m_family = "inverse_stable";
    double m_beta = 0.5, m_b2 = 0.5, m_lambda = 1.0, m_s1 = 1.0, m_s2 = 1.0, m_t1 = 1.0,
           m_t2 = 1.0;
    mom->add_option("--family", m_family, "inverse_stable | fprf")
        ->check(CLI::IsMember({"inverse_stable", "fprf"}));
    mom->add_option("--beta", m_beta, "first index");
    mom->add_option("--beta2", m_b2, "second index (fprf)");
    mom->add_option("--lambda", m_lambda, "intensity (fprf)");
    mom->add_option("--s1", m_s1, "earlier first coordinate");
    mom->add_option("--s2", m_s2, "earlier second coordinate");
    mom->add_option("--t1", m_t1, "first coordinate");
    mom->add_option("--t2", m_t2, "second coordinate");

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "draw replicates of a target variable");
    std::string target = "stable";
    std::string s_clock1 = "identity", s_clock2 = "identity";
    double s_alpha = 0.5, s_beta = 0.5, s_lambda = 1.0, s_drift = 0.0, s_t = 1.0,
           s_t1 = 1.0, s_t2 = 1.0;
    std::uint64_t s_n = 10;
    sim->add_option("--target", target,
                    "stable | inverse_stable | composition | field | levy_brownian")
        ->check(CLI::IsMember(
            {"stable", "inverse_stable", "composition", "field", "levy_brownian"}));
    sim->add_option("--alpha", s_alpha, "stable index");
    sim->add_option("--beta", s_beta, "inverse-stable index");
    sim->add_option("--clock1", s_clock1, "field clock 1");
    sim->add_option("--clock2", s_clock2, "field clock 2");
    sim->add_option("--lambda", s_lambda, "field intensity");
    sim->add_option("--a", s_drift, "field drift");
    sim->add_option("--t", s_t, "time argument");
    sim->add_option("--t1", s_t1, "first coordinate");
    sim->add_option("--t2", s_t2, "second coordinate");
    sim->add_option("--n", s_n, "number of replicates");

    // ---- residual ----
    auto* res = app.add_subcommand("residual", "fractional-equation residuals");
    std::string r_which = "caputo";
    double r_a1 = 0.5, r_b1 = 0.7, r_b2 = 0.7, r_lambda = 1.0, r_u = 0.5, r_t1 = 1.0,
           r_t2 = 1.0;
    long long r_n = 0;
    res->add_option("--which", r_which, "caputo | pgf | double")
        ->check(CLI::IsMember({"caputo", "pgf", "double"}));
    res->add_option("--alpha1", r_a1, "stable index");
    res->add_option("--beta1", r_b1, "first Caputo order");
    res->add_option("--beta2", r_b2, "second Caputo order");
    res->add_option("--lambda", r_lambda, "intensity");
    res->add_option("--u", r_u, "pgf argument");
    res->add_option("--n", r_n, "count argument");
    res->add_option("--t1", r_t1, "first coordinate");
    res->add_option("--t2", r_t2, "second coordinate");

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run a verification campaign");
    std::string manifest_path;
    std::string emit_manifest;
    std::uint64_t v_samples = 100000;
    int v_chunks = 8;
    double v_sigmas = 4.0;
    ver->add_option("--manifest", manifest_path,
                    "campaign manifest JSON (default: built-in campaign)");
    ver->add_option("--emit-manifest", emit_manifest,
                    "write the built-in manifest to this path and exit");
    ver->add_option("--samples", v_samples, "samples per check");
    ver->add_option("--chunks", v_chunks, "concurrent chunk executors");
    ver->add_option("--sigmas", v_sigmas, "acceptance band width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::uint64_t seed = resolve_seed(seed_flag);

        if (*eval) {
            double v;
            if (fn == "mittag_leffler")
                v = ff::mittag_leffler(e_alpha, e_beta, e_x);
            else if (fn == "wright")
                v = ff::wright(e_sigma, e_rho, e_x);
            else if (fn == "log_gamma")
                v = ff::log_gamma_signed(e_x).log_abs;
            else if (fn == "falling_factorial")
                v = ff::falling_factorial(e_x, e_n);
            else
                throw CLI::ValidationError("--fn", "unknown function: " + fn);
            out.write(scalar_payload(fn, v, out));
            return 0;
        }

        if (*pmf) {
            auto value_at = [&](long long n) {
                if (family == "prf")
                    return ff::prf_pmf(ff::FieldModel(p_lambda), n, p_t1, p_t2);
                if (family == "tc")
                    return ff::tc_prf_pmf(p_lambda, ff::StableIndex(p_a1),
                                          ff::StableIndex(p_b1), n, p_t1, p_t2);
                if (family == "double")
                    return ff::double_fractional_pmf(p_lambda, ff::StableIndex(p_b1),
                                                     ff::StableIndex(p_b2), n, p_t1, p_t2)
                        .value;
                return ff::stable_inverse_pmf(p_lambda, ff::StableIndex(p_a1),
                                              ff::StableIndex(p_b2), n, p_t1, p_t2)
                    .value;
            };
            if (p_nmax < 0) {
                out.write(scalar_payload("probability", value_at(p_n), out));
            } else {
                std::string text;
                if (out.format == "json") {
                    text = "[";
                    for (long long n = 0; n <= p_nmax; ++n)
                        text += (n ? "," : "") + std::string("{\"n\":") + std::to_string(n) +
                                ",\"probability\":" + fmt17(value_at(n)) + "}";
                    text += "]\n";
                } else {
                    text = "n,probability\n";
                    for (long long n = 0; n <= p_nmax; ++n)
                        text += std::to_string(n) + "," + fmt17(value_at(n)) + "\n";
                }
                out.write(text);
            }
            return 0;
        }

        if (*lap) {
            double v;
            if (l_family == "composition")
                v = ff::composition_laplace(ff::StableIndex(l_a), ff::StableIndex(l_b),
                                            l_eta, l_t1);
            else if (l_family == "drifted")
                v = ff::drifted_prf_laplace(l_lambda, l_drift, l_eta, l_t1, l_t2);
            else if (l_family == "typeI")
                v = ff::typeI_laplace(l_lambda, l_drift, ff::StableIndex(l_a),
                                      ff::StableIndex(l_b), l_eta, l_t1, l_t2)
                        .value;
            else if (l_family == "typeII")
                v = ff::typeII_laplace(l_lambda, l_drift, ff::StableIndex(l_a),
                                       ff::StableIndex(l_b), l_eta, l_t1, l_t2)
                        .value;
            else
                v = ff::typeIII_laplace(l_lambda, l_drift, ff::StableIndex(l_g),
                                        ff::StableIndex(l_a), ff::StableIndex(l_b), l_eta,
                                        l_t1, l_t2);
            out.write(scalar_payload("laplace", v, out));
            return 0;
        }

        if (*mom) {
            std::string text;
            if (m_family == "inverse_stable") {
                auto m = ff::inverse_stable_moments(ff::StableIndex(m_beta), m_s1, m_t1);
                if (out.format == "json")
                    text = "{\"mean\":" + fmt17(m.mean_t) + ",\"variance\":" +
                           fmt17(m.variance_t) + ",\"cross_cov\":" + fmt17(m.cross_cov) +
                           "}\n";
                else if (out.format == "csv")
                    text = "mean,variance,cross_cov\n" + fmt17(m.mean_t) + "," +
                           fmt17(m.variance_t) + "," + fmt17(m.cross_cov) + "\n";
                else
                    text = "mean = " + fmt6(m.mean_t) + "\nvariance = " +
                           fmt6(m.variance_t) + "\ncross_cov = " + fmt6(m.cross_cov) + "\n";
            } else {
                auto m = ff::fprf_moments(m_lambda, ff::StableIndex(m_beta),
                                          ff::StableIndex(m_b2), m_s1, m_s2, m_t1, m_t2);
                if (out.format == "json")
                    text = "{\"mean\":" + fmt17(m.mean) + ",\"variance\":" +
                           fmt17(m.variance) + ",\"autocov\":" + fmt17(m.autocov) + "}\n";
                else if (out.format == "csv")
                    text = "mean,variance,autocov\n" + fmt17(m.mean) + "," +
                           fmt17(m.variance) + "," + fmt17(m.autocov) + "\n";
                else
                    text = "mean = " + fmt6(m.mean) + "\nvariance = " + fmt6(m.variance) +
                           "\nautocov = " + fmt6(m.autocov) + "\n";
            }
            out.write(text);
            return 0;
        }

        if (*sim) {
            ff::RngState rng(seed);
            auto draw = [&]() -> double {
                if (target == "stable")
                    return ff::sample_stable(ff::StableIndex(s_alpha), s_t, rng);
                if (target == "inverse_stable")
                    return ff::sample_inverse_stable(ff::StableIndex(s_beta), s_t, rng);
                if (target == "composition")
                    return ff::sample_composition(ff::StableIndex(s_alpha),
                                                  ff::StableIndex(s_beta), s_t, rng);
                if (target == "field") {
                    ff::FieldModel model(s_lambda, clock_from(s_clock1, s_alpha, s_beta),
                                         clock_from(s_clock2, s_alpha, s_beta), s_drift);
                    return ff::sample_field_value(model, s_t1, s_t2, rng);
                }
                return ff::sample_levy(ff::LevyProcessSpec::brownian(0.0, 1.0), s_t, rng);
            };
            std::string text;
            if (out.format == "json") {
                text = "[";
                for (std::uint64_t i = 0; i < s_n; ++i)
                    text += (i ? "," : "") + std::string("{\"replicate\":") +
                            std::to_string(i) + ",\"value\":" + fmt17(draw()) + "}";
                text += "]\n";
            } else {
                text = "replicate,value\n";
                for (std::uint64_t i = 0; i < s_n; ++i)
                    text += std::to_string(i) + "," + fmt17(draw()) + "\n";
            }
            out.write(text);
            return 0;
        }

        if (*res) {
            double v;
            if (r_which == "caputo")
                v = ff::caputo_fde_residual(r_lambda, ff::StableIndex(r_a1),
                                            ff::StableIndex(r_b1), r_n, r_t1, r_t2);
            else if (r_which == "pgf")
                v = ff::pgf_ode_residual(r_lambda, ff::StableIndex(r_a1),
                                         ff::StableIndex(r_b1), r_u, r_t1, r_t2);
            else
                v = ff::double_caputo_recursion_residual(r_lambda, ff::StableIndex(r_b1),
                                                         ff::StableIndex(r_b2), r_n, r_t1,
                                                         r_t2);
            out.write(scalar_payload("residual", v, out));
            return 0;
        }

        if (*ver) {
            if (!emit_manifest.empty()) {
                std::ofstream os(emit_manifest, std::ios::binary);
                if (!os) throw std::runtime_error("cannot open " + emit_manifest);
                os << ff::manifest_to_json(ff::default_manifest()).dump(2) << "\n";
                return 0;
            }
            std::vector<ff::CheckDescriptor> manifest;
            if (manifest_path.empty()) {
                manifest = ff::default_manifest();
            } else {
                std::ifstream is(manifest_path);
                if (!is) throw std::runtime_error("cannot open manifest: " + manifest_path);
                json j;
                is >> j;
                manifest = ff::manifest_from_json(j);
            }
            ff::MCConfig cfg;
            cfg.n_samples = v_samples;
            cfg.seed = seed;
            cfg.n_chunks = v_chunks;
            cfg.tolerance_sigmas = v_sigmas;
            auto reports = ff::run_campaign(manifest, cfg);
            bool all_pass = true;
            for (const auto& r : reports) all_pass = all_pass && r.pass;
            if (out.format == "csv")
                out.write(ff::reports_to_csv(reports));
            else if (out.format == "json")
                out.write(ff::reports_to_json(reports));
            else {
                std::string text;
                for (const auto& r : reports)
                    text += std::string(r.pass ? "PASS" : "FAIL") + "  " + r.name +
                            "  analytic=" + fmt6(r.analytic) + " empirical=" +
                            fmt6(r.empirical) + " stat=" + fmt6(r.statistic) + " thr=" +
                            fmt6(r.threshold) + "\n";
                out.write(text);
            }
            return all_pass ? 0 : 3;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ff::NonConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const ff::DivergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const ff::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
