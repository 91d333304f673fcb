#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "cppsfs/asymptotics.hpp"
#include "cppsfs/io.hpp"
#include "cppsfs/montecarlo.hpp"
#include "cppsfs/stats.hpp"
#include "cppsfs/svg.hpp"

using namespace cppsfs;

namespace {

mc::ExperimentConfig small_critical() {
    mc::ExperimentConfig c;
    c.params = {1.0, 1.0, 500.0, 50, 0.0};
    c.regime = Regime::Exact;
    c.replicates = 40;
    c.K = 3;
    c.seed = 11;
    c.parallelism = 1;
    return c;
}

double normal_quantile(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (stats::normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("single replicate equals a direct sampler call") {
    auto config = small_critical();
    config.replicates = 1;
    const auto table = mc::run_replicates(config);
    REQUIRE(table.rows.size() == 1);

    RandomStream rand(config.seed, 0);
    const auto g = sample_genealogy_exact(config.params, rand);
    const auto s = branch_spectrum(g, config.K);
    const auto& row = table.rows[0];
    CHECK(row.population_size == g.population_size);
    REQUIRE(row.lengths.size() == 3);
    for (int k = 1; k <= 3; ++k) CHECK(row.lengths[k - 1] == s.total(k));
    const auto z = asym::standardize_critical(s, g.population_size,
                                              config.params.n, config.K);
    CHECK(row.z == z);
}

TEST_CASE("parallelism does not change the table") {
    auto a = small_critical();
    auto b = a;
    a.parallelism = 1;
    b.parallelism = 8;
    const auto ta = mc::run_replicates(a);
    const auto tb = mc::run_replicates(b);
    // wall time and the echoed parallelism differ; the data must not
    REQUIRE(ta.rows.size() == tb.rows.size());
    for (std::size_t i = 0; i < ta.rows.size(); ++i) {
        CHECK(ta.rows[i].replicate == tb.rows[i].replicate);
        CHECK(ta.rows[i].population_size == tb.rows[i].population_size);
        CHECK(ta.rows[i].lengths == tb.rows[i].lengths);
        CHECK(ta.rows[i].mutations == tb.rows[i].mutations);
        CHECK(ta.rows[i].z == tb.rows[i].z);
    }
}

TEST_CASE("empirical moments") {
    {
        const std::vector<std::vector<double>> rows = {{5.0}, {5.0}, {5.0}};
        const auto m = stats::empirical_moments(rows);
        CHECK(m.means[0] == doctest::Approx(5.0));
        CHECK(m.covariance[0][0] == doctest::Approx(0.0));
        CHECK(m.std_errors[0] == doctest::Approx(0.0));
    }
    {
        const std::vector<std::vector<double>> rows = {{0.0}, {2.0}};
        const auto m = stats::empirical_moments(rows);
        CHECK(m.means[0] == doctest::Approx(1.0));
        CHECK(m.covariance[0][0] == doctest::Approx(2.0));  // unbiased
        CHECK(m.std_errors[0] == doctest::Approx(1.0));
        CHECK(m.count == 2);
    }
    CHECK_THROWS_AS(stats::empirical_moments({{1.0}}), std::invalid_argument);

    // z-covariance of a critical run is symmetric and PSD
    const auto table = mc::run_replicates(small_critical());
    const auto m = mc::z_moments(table);
    for (std::size_t i = 0; i < m.covariance.size(); ++i)
        for (std::size_t j = 0; j < m.covariance.size(); ++j)
            CHECK(m.covariance[i][j] == doctest::Approx(m.covariance[j][i]));
    CHECK(stats::min_symmetric_eigenvalue(m.covariance) >= -1e-9);
}

TEST_CASE("Kolmogorov-Smirnov behavior") {
    const int m = 1000;
    {
        // exact standard-normal quantiles at (i - 0.5)/m: the empirical
        // CDF straddles the true one, so D is exactly 1/(2m)
        std::vector<double> s(m);
        for (int i = 0; i < m; ++i)
            s[i] = normal_quantile((i + 0.5) / m);
        const auto ks = stats::ks_test(std::move(s), stats::normal_cdf);
        CHECK(ks.d <= (1.0 / (2 * m)) * (1.0 + 1e-9));
        CHECK(ks.p_value > 0.99);
    }
    {
        std::vector<double> s(m);
        RandomStream rand(81);
        for (auto& v : s) v = rand.next_open01();
        const auto ks = stats::ks_test(std::move(s), stats::normal_cdf);
        CHECK(ks.p_value < 1e-6);
    }
    {
        std::vector<double> s(10000);
        RandomStream rand(82);
        for (auto& v : s) v = 0.5 + normal_quantile(rand.next_open01());
        const auto ks = stats::ks_test(std::move(s), stats::normal_cdf);
        CHECK(ks.p_value < 0.01);
    }
    {
        // two-sample: same law passes, shifted law rejects
        std::vector<double> a(4000), b(4000), c(4000);
        RandomStream rand(83);
        for (auto& v : a) v = normal_quantile(rand.next_open01());
        for (auto& v : b) v = normal_quantile(rand.next_open01());
        for (auto& v : c) v = 0.25 + normal_quantile(rand.next_open01());
        CHECK(stats::ks_test_two_sample(a, b).p_value >= 0.01);
        CHECK(stats::ks_test_two_sample(a, c).p_value < 0.01);
    }
    CHECK_THROWS_AS(stats::ks_test({1.0, 2.0}, stats::normal_cdf),
                    std::invalid_argument);
}

TEST_CASE("forward simulation agrees with the point-process sampler") {
    // Yule case: lambda=1, mu=0, T=2, n=2
    {
        const ModelParams p{1.0, 0.0, 2.0, 2, 0.0};
        const int R = 10000;
        std::vector<double> forward(R), cpp(R);
        for (int i = 0; i < R; ++i) {
            RandomStream rf(91, i), rc(92, i);
            const auto gf = mc::forward_bd_genealogy(p, rf);
            REQUIRE(gf.times.size() == 1);
            CHECK(gf.population_size >= 2);
            forward[i] = gf.times[0];
            cpp[i] = sample_genealogy_exact(p, rc).times[0];
        }
        const auto ks = stats::ks_test_two_sample(std::move(forward), std::move(cpp));
        CHECK(ks.p_value >= 0.01 / 3);  // Bonferroni over the three cross-checks
    }
    // critical case: first adjacent-pair height marginal, n=3
    {
        const ModelParams p{1.0, 1.0, 4.0, 3, 0.0};
        const int R = 6000;
        std::vector<double> forward(R), cpp(R);
        for (int i = 0; i < R; ++i) {
            RandomStream rf(93, i), rc(94, i);
            const auto gf = mc::forward_bd_genealogy(p, rf);
            REQUIRE(gf.times.size() == 2);
            forward[i] = gf.times[0];
            cpp[i] = sample_genealogy_exact(p, rc).times[0];
        }
        const auto ks = stats::ks_test_two_sample(std::move(forward), std::move(cpp));
        CHECK(ks.p_value >= 0.01 / 3);
    }
    // supercritical case: same marginal check
    {
        const ModelParams p{1.5, 1.0, 3.0, 2, 0.0};
        const int R = 6000;
        std::vector<double> forward(R), cpp(R);
        for (int i = 0; i < R; ++i) {
            RandomStream rf(95, i), rc(96, i);
            forward[i] = mc::forward_bd_genealogy(p, rf).times[0];
            cpp[i] = sample_genealogy_exact(p, rc).times[0];
        }
        const auto ks = stats::ks_test_two_sample(std::move(forward), std::move(cpp));
        CHECK(ks.p_value >= 0.01 / 3);
    }
}

TEST_CASE("mutation columns track branch lengths") {
    auto config = small_critical();
    config.params.nu = 2.0;
    config.replicates = 400;
    const auto table = mc::run_replicates(config);
    for (int k = 1; k <= config.K; ++k) {
        double lsum = 0.0, msum = 0.0, msq = 0.0;
        for (const auto& row : table.rows) {
            lsum += row.lengths[k - 1];
            const double mk = static_cast<double>(row.mutations[k - 1]);
            msum += mk;
            msq += mk * mk;
        }
        const double lmean = lsum / table.rows.size();
        const double mmean = msum / table.rows.size();
        const double mvar = msq / table.rows.size() - mmean * mmean;
        const double se = std::sqrt(mvar / table.rows.size());
        CHECK(std::abs(mmean - config.params.nu * lmean) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("condition diagnostics") {
    {
        mc::ExperimentConfig c;
        c.params = {1.0, 1.0, 2e4, 2000, 0.0};
        const auto rep = mc::condition_diagnostics(c);
        CHECK(rep.n_over_T == doctest::Approx(0.1));
        CHECK(rep.critical_clt_plausible);
        CHECK_FALSE(rep.super_lln_plausible);
        CHECK_FALSE(rep.super_clt_plausible);
        CHECK(rep.summary().find("critical CLT plausible: yes") != std::string::npos);
    }
    {
        mc::ExperimentConfig c;
        c.params = {2.0, 1.0, 25.0, 1000, 0.0};  // r = 1
        const auto rep = mc::condition_diagnostics(c);
        CHECK(rep.clt_super_condition == doctest::Approx(3e-6).epsilon(0.15));
        CHECK(rep.super_lln_plausible);
        CHECK(rep.super_clt_plausible);
    }
}

TEST_CASE("serialization round trips") {
    auto config = small_critical();
    config.params.nu = 1.5;
    config.replicates = 12;
    const auto table = mc::run_replicates(config);

    const std::string csv = io::table_to_csv(table);
    CHECK(csv.rfind("replicate,N_T,L1,L2,L3,M1,M2,M3,z1,z2,z3", 0) == 0);
    const auto back = io::table_from_csv(csv);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(back.rows[i].population_size == table.rows[i].population_size);
        CHECK(back.rows[i].lengths == table.rows[i].lengths);
        CHECK(back.rows[i].mutations == table.rows[i].mutations);
        CHECK(back.rows[i].z == table.rows[i].z);
    }

    const auto m = asym::covariance_matrix(4);
    const auto m2 = io::covariance_from_csv(io::covariance_to_csv(m));
    CHECK(m2.K == m.K);
    for (int k = 2; k <= 4; ++k)
        for (int kp = 2; kp <= 4; ++kp)
            CHECK(m2.at(k, kp) == m.at(k, kp));
    CHECK(io::covariance_to_json(m).find("\"K\"") != std::string::npos);

    const auto c2 = io::config_from_json(io::config_to_json(config));
    CHECK(c2.params.lambda == config.params.lambda);
    CHECK(c2.params.nu == config.params.nu);
    CHECK(c2.regime == config.regime);
    CHECK(c2.replicates == config.replicates);
    CHECK(c2.K == config.K);
    CHECK(c2.seed == config.seed);

    RandomStream rand(97);
    const auto g = sample_genealogy_exact(config.params, rand);
    const auto g2 = io::genealogy_from_json(io::genealogy_to_json(g));
    CHECK(g2.times == g.times);
    CHECK(g2.population_size == g.population_size);
    CHECK(g2.fraction == g.fraction);
    CHECK(g2.regime == g.regime);
    CHECK(g2.coordinate == g.coordinate);
    CHECK(g2.T == g.T);
}

TEST_CASE("histogram rendering") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "cppsfs_svg_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const auto table = mc::run_replicates(small_critical());
    const auto paths = svg::render_histograms(table, dir.string());
    REQUIRE(paths.size() == 3);  // one per z-component
    for (const auto& p : paths) {
        const std::string body = io::read_file(p);
        CHECK(body.rfind("<?xml", 0) == 0);
        CHECK(body.find("<svg") != std::string::npos);
        CHECK(body.find("</svg>") != std::string::npos);
    }

    // determinism: identical input produces identical bytes
    const std::string first = io::read_file(paths[0]);
    svg::render_histograms(table, dir.string());
    CHECK(io::read_file(paths[0]) == first);

    // intermediate limit regimes carry no z-columns, hence no files
    mc::ExperimentConfig c;
    c.params = {1.0, 1.0, 1000.0, 20, 0.0};
    c.regime = Regime::CriticalIntermediate;
    c.replicates = 30;
    c.K = 2;
    c.seed = 5;
    const auto none =
        svg::render_histograms(mc::run_replicates(c), dir.string());
    CHECK(none.empty());
    fs::remove_all(dir);
}

TEST_CASE("default horizon schedule") {
    mc::ExperimentConfig c;
    c.params = {1.0, 1.0, 0.0, 300, 0.0};  // T unset
    c.apply_default_horizon();
    CHECK(c.params.T >= 10.0 * c.params.n);

    mc::ExperimentConfig e;
    e.params = {1.0, 1.0, 77.0, 300, 0.0};  // explicit T kept
    e.apply_default_horizon();
    CHECK(e.params.T == 77.0);
}
