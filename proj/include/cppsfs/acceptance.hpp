#ifndef CPPSFS_ACCEPTANCE_HPP
#define CPPSFS_ACCEPTANCE_HPP

#include <ostream>
#include <string>
#include <vector>

namespace cppsfs::acceptance {

struct CriterionResult {
    std::string id;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full acceptance battery (A1..A9), printing one PASS/FAIL
/// line per criterion to `log`.  Returns all results; overall success
/// is the conjunction.
std::vector<CriterionResult> run_all(std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace cppsfs::acceptance

#endif
