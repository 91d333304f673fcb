#ifndef CPPSFS_SVG_HPP
#define CPPSFS_SVG_HPP

#include <string>
#include <vector>

#include "cppsfs/montecarlo.hpp"

namespace cppsfs::svg {

/// Histogram of the samples (density-normalized) with the standard
/// normal density overlaid; deterministic for identical inputs.
std::string histogram_svg(const std::vector<double>& samples,
                          const std::string& title);

/// One SVG per z-component, named z<k>.svg under out_dir.  Returns the
/// paths written; empty z-columns produce no files.
std::vector<std::string> render_histograms(const mc::ReplicateTable& table,
                                           const std::string& out_dir);

} // namespace cppsfs::svg

#endif
