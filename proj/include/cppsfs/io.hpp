#ifndef CPPSFS_IO_HPP
#define CPPSFS_IO_HPP

#include <string>

#include "cppsfs/asymptotics.hpp"
#include "cppsfs/genealogy.hpp"
#include "cppsfs/montecarlo.hpp"

namespace cppsfs::io {

/// Replicate table CSV: header `replicate,N_T,L1..LK,M1..MK[,z...]`
/// where the z block is z1..zK for critical runs and z2..zK for
/// supercritical runs.
std::string table_to_csv(const mc::ReplicateTable& table);
mc::ReplicateTable table_from_csv(const std::string& csv);

/// Covariance matrix CSV with row/column headers k=2..K.
std::string covariance_to_csv(const asym::CovarianceMatrix& m);
asym::CovarianceMatrix covariance_from_csv(const std::string& csv);
std::string covariance_to_json(const asym::CovarianceMatrix& m);

/// Genealogy JSON: {"regime", "coordinate", "T", "times", "N_T",
/// "fraction"} for cross-implementation diffing.
std::string genealogy_to_json(const SampleGenealogy& g);
SampleGenealogy genealogy_from_json(const std::string& json);

/// Experiment config JSON, versioned with "schema": 1.
std::string config_to_json(const mc::ExperimentConfig& config);
mc::ExperimentConfig config_from_json(const std::string& json);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace cppsfs::io

#endif
