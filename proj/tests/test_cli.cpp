#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "cppsfs/io.hpp"
#include "cppsfs/montecarlo.hpp"

using namespace cppsfs;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
#ifdef CPPSFS_CLI_PATH
    return CPPSFS_CLI_PATH;
#else
    const char* p = std::getenv("CPPSFS_CLI_PATH");
    REQUIRE(p != nullptr);
    return p;
#endif
}

fs::path work_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "cppsfs_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " > " +
                            (work_dir() / "stdout.txt").string() + " 2> " +
                            (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string captured_stdout() {
    return io::read_file((work_dir() / "stdout.txt").string());
}

} // namespace

TEST_CASE("usage and exit codes") {
    CHECK(run("--help") == 0);
    CHECK(run("simulate --help") == 0);
    CHECK(run("simulate --bogus-flag 1") == 2);
    CHECK(run("") == 2);                       // a subcommand is required
    CHECK(run("cov --K 1") == 2);              // out of range
    CHECK(run("simulate --lambda 1 --mu 2 --T 1 --n 5 --replicates 1") == 1);
}

TEST_CASE("cov subcommand") {
    const auto csv_path = work_dir() / "V.csv";
    const auto json_path = work_dir() / "V.json";
    CHECK(run("cov --K 4 --out " + csv_path.string() + " --json " +
              json_path.string()) == 0);

    const auto m = io::covariance_from_csv(io::read_file(csv_path.string()));
    CHECK(m.K == 4);
    CHECK(m.dim() == 3);
    CHECK(std::abs(m.at(2, 2) - 0.7065341) <= 1e-5);
    for (int k = 2; k <= 4; ++k)
        for (int kp = 2; kp <= 4; ++kp)
            CHECK(m.at(k, kp) == m.at(kp, k));

    const std::string json = io::read_file(json_path.string());
    CHECK(json.find("\"K\"") != std::string::npos);
}

TEST_CASE("integrals subcommand") {
    const auto out = work_dir() / "integrals.csv";
    CHECK(run("integrals --kmax 6 --out " + out.string()) == 0);

    std::istringstream in(io::read_file(out.string()));
    std::string line;
    std::getline(in, line);
    CHECK(line == "integral,k,kp,closed,quadrature,abs_diff");
    int rows = 0;
    while (std::getline(in, line)) {
        const auto pos = line.rfind(',');
        REQUIRE(pos != std::string::npos);
        CHECK(std::stod(line.substr(pos + 1)) <= 1e-6);
        ++rows;
    }
    CHECK(rows > 30);  // I1 on every pair plus I2/I3/I4 where defined
}

TEST_CASE("simulate determinism and plots") {
    const std::string base =
        "simulate --regime critical --lambda 1 --mu 1 --n 200 --T 2000 "
        "--replicates 50 --seed 7";
    const auto f1 = work_dir() / "run1.csv";
    const auto f2 = work_dir() / "run2.csv";
    const auto plots = work_dir() / "plots";
    CHECK(run(base + " --out " + f1.string()) == 0);
    CHECK(run(base + " --out " + f2.string() + " --plots " + plots.string()) == 0);
    CHECK(io::read_file(f1.string()) == io::read_file(f2.string()));

    const auto table = io::table_from_csv(io::read_file(f1.string()));
    CHECK(table.rows.size() == 50);
    CHECK(table.z_dim() == 2);  // K defaults to 2 -> z1, z2
    for (const auto& row : table.rows) {
        CHECK(row.population_size >= 200);
        for (auto m : row.mutations) CHECK(m == 0);  // simulate forces nu = 0
    }

    for (int k = 1; k <= 2; ++k) {
        const auto svg = plots / ("z" + std::to_string(k) + ".svg");
        REQUIRE(fs::exists(svg));
        const std::string body = io::read_file(svg.string());
        CHECK(body.rfind("<?xml", 0) == 0);
        CHECK(body.find("</svg>") != std::string::npos);
    }

    // intermediate regime has no z columns, so no histogram files
    const auto empty_plots = work_dir() / "plots_empty";
    CHECK(run("simulate --regime critical-intermediate --lambda 1 --mu 1 "
              "--n 20 --T 1000 --replicates 30 --seed 3 --out - --plots " +
              empty_plots.string()) == 0);
    CHECK((!fs::exists(empty_plots) || fs::is_empty(empty_plots)));
}

TEST_CASE("sfs subcommand scatters mutations") {
    const auto out = work_dir() / "sfs.csv";
    CHECK(run("sfs --lambda 1 --mu 1 --n 50 --T 500 --nu 2 --K 3 "
              "--replicates 30 --seed 9 --out " + out.string()) == 0);
    const auto table = io::table_from_csv(io::read_file(out.string()));
    CHECK(table.rows.size() == 30);
    std::uint64_t total = 0;
    for (const auto& row : table.rows)
        for (auto m : row.mutations) total += m;
    CHECK(total > 0);
}

TEST_CASE("config file with flag overrides") {
    mc::ExperimentConfig config;
    config.params = {1.0, 1.0, 2e4, 2000, 0.0};
    config.K = 3;
    config.seed = 12;
    const auto cfg = work_dir() / "config.json";
    io::write_file(cfg.string(), io::config_to_json(config));

    CHECK(run("diag --config " + cfg.string()) == 0);
    const std::string plain = captured_stdout();
    CHECK(plain.find("n/T = 0.1") != std::string::npos);
    CHECK(plain.find("critical CLT plausible: yes") != std::string::npos);

    // explicit flag wins over the config file
    CHECK(run("diag --config " + cfg.string() + " --T 1000") == 0);
    const std::string overridden = captured_stdout();
    CHECK(overridden.find("n/T = 2") != std::string::npos);
    CHECK(overridden.find("critical CLT plausible: no") != std::string::npos);

    // the same mechanism drives simulate: seed from file, override T
    const auto s1 = work_dir() / "cfg_run1.csv";
    const auto s2 = work_dir() / "cfg_run2.csv";
    mc::ExperimentConfig small;
    small.params = {1.0, 1.0, 300.0, 30, 0.0};
    small.replicates = 20;
    small.K = 2;
    small.seed = 4;
    io::write_file(cfg.string(), io::config_to_json(small));
    CHECK(run("simulate --config " + cfg.string() + " --out " + s1.string()) == 0);
    CHECK(run("simulate --config " + cfg.string() + " --seed 5 --out " +
              s2.string()) == 0);
    const auto t1 = io::table_from_csv(io::read_file(s1.string()));
    const auto t2 = io::table_from_csv(io::read_file(s2.string()));
    REQUIRE(t1.rows.size() == 20);
    REQUIRE(t2.rows.size() == 20);
    CHECK(t1.rows[0].lengths != t2.rows[0].lengths);
}
