#include "cppsfs/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace cppsfs::io {

namespace {

using nlohmann::json;

// shortest round-trip decimal representation
std::string fmt(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return {buf, end};
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error("bad numeric field: " + s);
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error("bad integer field: " + s);
    return v;
}

} // namespace

std::string table_to_csv(const mc::ReplicateTable& table) {
    const int K = table.config.K;
    const int zd = table.z_dim();
    std::ostringstream out;
    out << "replicate,N_T";
    for (int k = 1; k <= K; ++k) out << ",L" << k;
    for (int k = 1; k <= K; ++k) out << ",M" << k;
    const int z_first = (zd == K) ? 1 : 2;
    for (int k = z_first; k < z_first + zd; ++k) out << ",z" << k;
    out << "\n";
    for (const auto& row : table.rows) {
        out << row.replicate << ',' << row.population_size;
        for (double v : row.lengths) out << ',' << fmt(v);
        for (std::uint64_t m : row.mutations) out << ',' << m;
        for (double v : row.z) out << ',' << fmt(v);
        out << "\n";
    }
    return out.str();
}

mc::ReplicateTable table_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
    const auto header = split(line, ',');
    int K = 0, zd = 0;
    for (const auto& h : header) {
        if (h.size() > 1 && h[0] == 'L') ++K;
        if (h.size() > 1 && h[0] == 'z') ++zd;
    }
    if (static_cast<int>(header.size()) != 2 + 2 * K + zd)
        throw std::runtime_error("malformed table header");

    mc::ReplicateTable table;
    table.config.K = K;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (static_cast<int>(f.size()) != 2 + 2 * K + zd)
            throw std::runtime_error("malformed table row");
        mc::ReplicateRow row;
        row.replicate = parse_u64(f[0]);
        row.population_size = parse_u64(f[1]);
        for (int k = 0; k < K; ++k) row.lengths.push_back(parse_double(f[2 + k]));
        for (int k = 0; k < K; ++k) row.mutations.push_back(parse_u64(f[2 + K + k]));
        for (int k = 0; k < zd; ++k) row.z.push_back(parse_double(f[2 + 2 * K + k]));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string covariance_to_csv(const asym::CovarianceMatrix& m) {
    std::ostringstream out;
    out << "k";
    for (int k = 2; k <= m.K; ++k) out << ",k" << k;
    out << "\n";
    for (int k = 2; k <= m.K; ++k) {
        out << 'k' << k;
        for (int kp = 2; kp <= m.K; ++kp) out << ',' << fmt(m.at(k, kp));
        out << "\n";
    }
    return out.str();
}

asym::CovarianceMatrix covariance_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
    const int dim = static_cast<int>(split(line, ',').size()) - 1;
    asym::CovarianceMatrix m;
    m.K = dim + 1;
    m.entries.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("truncated CSV");
        const auto f = split(line, ',');
        if (static_cast<int>(f.size()) != dim + 1)
            throw std::runtime_error("malformed covariance row");
        for (int j = 0; j < dim; ++j) m.entries[i * dim + j] = parse_double(f[j + 1]);
    }
    return m;
}

std::string covariance_to_json(const asym::CovarianceMatrix& m) {
    json j;
    j["K"] = m.K;
    json rows = json::array();
    for (int k = 2; k <= m.K; ++k) {
        json row = json::array();
        for (int kp = 2; kp <= m.K; ++kp) row.push_back(m.at(k, kp));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j.dump(2);
}

std::string genealogy_to_json(const SampleGenealogy& g) {
    json j;
    j["regime"] = regime_name(g.regime);
    j["coordinate"] = g.coordinate == Coordinate::H ? "H" : "G";
    j["T"] = g.T;
    j["times"] = g.times;
    j["N_T"] = g.population_size;
    j["fraction"] = g.fraction;
    return j.dump(2);
}

SampleGenealogy genealogy_from_json(const std::string& text) {
    const json j = json::parse(text);
    SampleGenealogy g;
    g.regime = regime_from_name(j.at("regime").get<std::string>());
    g.coordinate =
        j.at("coordinate").get<std::string>() == "G" ? Coordinate::G : Coordinate::H;
    g.T = j.at("T").get<double>();
    g.times = j.at("times").get<std::vector<double>>();
    g.population_size = j.at("N_T").get<std::uint64_t>();
    g.fraction = j.at("fraction").get<double>();
    return g;
}

std::string config_to_json(const mc::ExperimentConfig& config) {
    json j;
    j["schema"] = 1;
    j["lambda"] = config.params.lambda;
    j["mu"] = config.params.mu;
    j["T"] = config.params.T;
    j["n"] = config.params.n;
    j["nu"] = config.params.nu;
    j["regime"] = regime_name(config.regime);
    j["replicates"] = config.replicates;
    j["K"] = config.K;
    j["seed"] = config.seed;
    j["parallelism"] = config.parallelism;
    return j.dump(2);
}

mc::ExperimentConfig config_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("schema", 0) != 1)
        throw std::runtime_error("unsupported config schema");
    mc::ExperimentConfig c;
    c.params.lambda = j.value("lambda", 1.0);
    c.params.mu = j.value("mu", 1.0);
    c.params.T = j.value("T", 1.0);
    c.params.n = j.value("n", 2);
    c.params.nu = j.value("nu", 0.0);
    if (j.contains("regime"))
        c.regime = regime_from_name(j.at("regime").get<std::string>());
    c.replicates = j.value("replicates", 1);
    c.K = j.value("K", 2);
    c.seed = j.value("seed", std::uint64_t{0});
    c.parallelism = j.value("parallelism", 0);
    return c;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace cppsfs::io
