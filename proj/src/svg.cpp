#include "cppsfs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cppsfs/io.hpp"

namespace cppsfs::svg {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 400;
constexpr int kMargin = 40;
constexpr int kBins = 40;

std::string num(double v) {
    std::ostringstream out;
    out.precision(4);
    out << std::fixed << v;
    return out.str();
}

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace

std::string histogram_svg(const std::vector<double>& samples,
                          const std::string& title) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
    double lo = std::min(*mn_it, -4.0), hi = std::max(*mx_it, 4.0);
    if (hi <= lo) hi = lo + 1.0;
    const double bin_w = (hi - lo) / kBins;

    std::vector<double> density(kBins, 0.0);
    for (double s : samples) {
        int b = static_cast<int>((s - lo) / bin_w);
        b = std::clamp(b, 0, kBins - 1);
        density[b] += 1.0;
    }
    for (auto& d : density) d /= samples.size() * bin_w;

    double ymax = normal_pdf(0.0);
    for (double d : density) ymax = std::max(ymax, d);
    ymax *= 1.05;

    const double pw = kWidth - 2.0 * kMargin;
    const double ph = kHeight - 2.0 * kMargin;
    auto px = [&](double x) { return kMargin + (x - lo) / (hi - lo) * pw; };
    auto py = [&](double y) { return kHeight - kMargin - y / ymax * ph; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    for (int b = 0; b < kBins; ++b) {
        if (density[b] <= 0.0) continue;
        const double x0 = px(lo + b * bin_w);
        const double x1 = px(lo + (b + 1) * bin_w);
        const double y = py(density[b]);
        out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\""
            << num(x1 - x0) << "\" height=\"" << num(kHeight - kMargin - y)
            << "\" fill=\"#7aa6c2\" stroke=\"#41708f\" stroke-width=\"0.5\"/>\n";
    }

    out << "<polyline fill=\"none\" stroke=\"#c23b22\" stroke-width=\"2\" points=\"";
    for (int i = 0; i <= 200; ++i) {
        const double x = lo + (hi - lo) * i / 200.0;
        out << num(px(x)) << ',' << num(py(normal_pdf(x)));
        if (i < 200) out << ' ';
    }
    out << "\"/>\n";

    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"black\"/>\n";
    for (int tick = static_cast<int>(std::ceil(lo)); tick <= hi; ++tick) {
        out << "<text x=\"" << num(px(tick)) << "\" y=\"" << kHeight - kMargin + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"10\">" << tick << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<std::string> render_histograms(const mc::ReplicateTable& table,
                                           const std::string& out_dir) {
    std::vector<std::string> written;
    const int zd = table.z_dim();
    if (zd == 0 || table.rows.empty()) return written;
    std::filesystem::create_directories(out_dir);
    const int z_first = (zd == table.config.K) ? 1 : 2;
    for (int c = 0; c < zd; ++c) {
        std::vector<double> col;
        col.reserve(table.rows.size());
        for (const auto& row : table.rows) col.push_back(row.z[c]);
        const int k = z_first + c;
        const std::string path =
            (std::filesystem::path(out_dir) / ("z" + std::to_string(k) + ".svg"))
                .string();
        io::write_file(path, histogram_svg(col, "z" + std::to_string(k)));
        written.push_back(path);
    }
    return written;
}

} // namespace cppsfs::svg
