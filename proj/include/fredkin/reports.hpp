#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace fredkin {

inline constexpr const char* kVersion = "0.1.0";

/// %.17g, enough digits to round-trip a double exactly.
std::string fmt17(double x);

struct RunMeta {
    std::string command;
    std::string config; // canonical flag=value listing
    std::uint64_t seed = 0;
};

/// Metadata header lines shared by every CSV dump.
std::string csv_preamble(const RunMeta& meta);

/// JSON object with the same metadata block under "meta".
nlohmann::json json_with_meta(const RunMeta& meta);

void write_text_file(const std::string& path, const std::string& content);

struct LogLogFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

/// Least squares on (log x, log y); requires positive inputs.
LogLogFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys);
LogLogFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

struct SvgSeries {
    std::string label;
    std::vector<double> xs, ys;
    bool points_only = false;
};

/// Standalone SVG line/point plot; output depends only on the inputs.
std::string svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                     const std::string& annotation, bool logx, bool logy);

} // namespace fredkin
