#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracfields/verify.hpp"

using namespace fracfields;

TEST_CASE("empirical Laplace transform") {
    std::vector<double> constant(100, 2.0);
    auto [est, se] = empirical_laplace(constant, 1.0);
    CHECK(est == doctest::Approx(std::exp(-2.0)));
    CHECK(se == 0.0);

    std::vector<double> zeros(50, 0.0);
    auto [e0, s0] = empirical_laplace(zeros, 0.7);
    CHECK(e0 == 1.0);
    CHECK(s0 == 0.0);

    // unit exponential: E e^{-X} = 1/2
    RngState rng(77);
    std::vector<double> ex(100000);
    for (auto& x : ex) x = rng.exponential();
    auto [em, es] = empirical_laplace(ex, 1.0);
    CHECK(std::abs(em - 0.5) <= 4.0 * es);
    CHECK_THROWS_AS(empirical_laplace({}, 1.0), std::invalid_argument);
}

TEST_CASE("empirical pmf") {
    std::vector<long long> threes(64, 3);
    auto p = empirical_pmf(threes, 5);
    CHECK(p.prob[3] == 1.0);
    CHECK(p.prob[0] == 0.0);
    CHECK(p.tail_mass == 0.0);

    std::vector<long long> spill = {0, 1, 7, 9};
    auto q = empirical_pmf(spill, 2);
    CHECK(q.tail_mass == doctest::Approx(0.5));

    RngState rng(123);
    std::vector<long long> pois(100000);
    for (auto& x : pois) x = rng.poisson(1.0);
    auto r = empirical_pmf(pois, 10);
    CHECK(std::abs(r.prob[0] - std::exp(-1.0)) <= 4.0 * r.std_error[0]);
}

TEST_CASE("two-sample KS") {
    std::vector<double> a = {0.1, 0.5, 0.9, 0.3};
    auto [d_same, crit_same] = ks_two_sample(a, a);
    CHECK(d_same == 0.0);
    CHECK(crit_same == doctest::Approx(1.628 * std::sqrt(8.0 / 16.0)));

    RngState rng(42);
    std::vector<double> u1(10000), u2(10000), shifted(10000);
    for (std::size_t i = 0; i < u1.size(); ++i) {
        u1[i] = rng.uniform();
        u2[i] = rng.uniform();
        shifted[i] = 0.5 + rng.uniform();
    }
    auto [d_shift, crit] = ks_two_sample(u1, shifted);
    CHECK(d_shift == doctest::Approx(0.5).epsilon(0.05));
    CHECK(d_shift > crit);
    auto [d_null, crit_null] = ks_two_sample(u1, u2);
    CHECK(d_null < crit_null);
}

TEST_CASE("one-sample KS") {
    RngState rng(7);
    std::vector<double> u(20000);
    for (auto& x : u) x = rng.uniform();
    auto [d, crit] = ks_one_sample(u, [](double x) { return std::min(1.0, std::max(0.0, x)); });
    CHECK(d < crit);
}

TEST_CASE("chi-square critical values match the standard table") {
    CHECK(chi_square_critical(1) == doctest::Approx(6.6349).epsilon(1e-4));
    CHECK(chi_square_critical(5) == doctest::Approx(15.0863).epsilon(1e-4));
    CHECK(chi_square_critical(10) == doctest::Approx(23.2093).epsilon(1e-4));
    CHECK(chi_square_critical(4, 0.05) == doctest::Approx(9.4877).epsilon(1e-4));
}

TEST_CASE("chi-square goodness of fit") {
    // exact proportions pass, distorted ones fail
    std::vector<double> probs = {0.5, 0.3, 0.2};
    std::vector<long long> good = {5000, 3000, 2000};
    CHECK(chi_square_gof(good, probs).pass);
    std::vector<long long> bad = {6000, 3000, 1000};
    CHECK(!chi_square_gof(bad, probs).pass);
}

TEST_CASE("chunked mean estimator: determinism across worker counts") {
    auto draw = [](RngState& rng) { return rng.uniform(); };
    auto a = mc_mean(10000, 5, 3, 1, draw);
    auto b = mc_mean(10000, 5, 3, 8, draw);
    CHECK(a.mean == b.mean); // bit identical
    CHECK(a.std_error == b.std_error);
    auto c = mc_mean(10000, 6, 3, 1, draw);
    CHECK(a.mean != c.mean); // seed actually matters
}

TEST_CASE("standard errors shrink like 1/sqrt(N)") {
    auto draw = [](RngState& rng) { return static_cast<double>(rng.poisson(3.0)); };
    auto e4 = mc_mean(10000, 9, 0, 2, draw);
    auto e5 = mc_mean(100000, 9, 0, 2, draw);
    auto e6 = mc_mean(1000000, 9, 0, 2, draw);
    CHECK(e4.std_error / e5.std_error == doctest::Approx(std::sqrt(10.0)).epsilon(0.1));
    CHECK(e5.std_error / e6.std_error == doctest::Approx(std::sqrt(10.0)).epsilon(0.1));
    CHECK(std::abs(e6.mean - 3.0) <= 4.0 * e6.std_error);
}

TEST_CASE("campaign runner determinism and serialization") {
    std::vector<CheckDescriptor> manifest = {
        {"exp_sanity", "exp_laplace", nlohmann::json{{"eta", 1.0}}},
        {"stable_lt", "stable_laplace",
         nlohmann::json{{"alpha", 0.5}, {"t", 1.0}, {"eta", 1.0}}},
    };
    MCConfig cfg;
    cfg.n_samples = 20000;
    cfg.seed = 42;
    cfg.n_chunks = 1;
    auto r1 = run_campaign(manifest, cfg);
    cfg.n_chunks = 8;
    auto r8 = run_campaign(manifest, cfg);
    REQUIRE(r1.size() == 2);
    CHECK(reports_to_json(r1) == reports_to_json(r8)); // byte identical
    for (const auto& r : r1) CHECK(r.pass);

    auto csv = reports_to_csv(r1);
    CHECK(csv.rfind("name,analytic,empirical,std_error,statistic,threshold,pass\n", 0) ==
          0);

    // empty manifest -> empty report list
    CHECK(run_campaign({}, cfg).empty());

    // unknown check type is rejected
    std::vector<CheckDescriptor> bad = {{"x", "nope", nlohmann::json::object()}};
    CHECK_THROWS_AS(run_campaign(bad, cfg), std::invalid_argument);
}

TEST_CASE("manifest JSON round trip") {
    auto manifest = default_manifest();
    auto j = manifest_to_json(manifest);
    auto back = manifest_from_json(j);
    REQUIRE(back.size() == manifest.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].name == manifest[i].name);
        CHECK(back[i].check_type == manifest[i].check_type);
        CHECK(back[i].params == manifest[i].params);
    }
}

TEST_CASE("seed derivation avalanches") {
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
    CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
    CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
}
