#include "fredkin/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fredkin {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_preamble(const RunMeta& meta) {
    std::string out;
    out += "# version=" + std::string(kVersion) + "\n";
    out += "# command=" + meta.command + "\n";
    out += "# config=" + meta.config + "\n";
    out += "# seed=" + std::to_string(meta.seed) + "\n";
    return out;
}

nlohmann::json json_with_meta(const RunMeta& meta) {
    nlohmann::json j;
    j["meta"] = {{"version", kVersion},
                 {"command", meta.command},
                 {"config", meta.config},
                 {"seed", meta.seed}};
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

LogLogFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_fit: need at least two points");
    const double n = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    LogLogFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_res_proxy = (n * syy - sy * sy) - fit.slope * (n * sxy - sx * sy);
    const double ss_tot = n * syy - sy * sy;
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res_proxy / ss_tot : 1.0;
    return fit;
}

LogLogFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0 || ys[i] <= 0)
            throw std::invalid_argument("loglog_fit: inputs must be positive");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    return linear_fit(lx, ly);
}

namespace {

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

} // namespace

std::string svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                     const std::string& annotation, bool logx, bool logy) {
    const double W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto tx = [logx](double x) { return logx ? std::log10(x) : x; };
    auto ty = [logy](double y) { return logy ? std::log10(y) : y; };
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            xmin = std::min(xmin, tx(s.xs[i]));
            xmax = std::max(xmax, tx(s.xs[i]));
            ymin = std::min(ymin, ty(s.ys[i]));
            ymax = std::max(ymax, ty(s.ys[i]));
        }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (xmax - xmin < 1e-12) { xmax += 0.5; xmin -= 0.5; }
    if (ymax - ymin < 1e-12) { ymax += 0.5; ymin -= 0.5; }
    auto px = [&](double x) { return ML + (tx(x) - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (ty(y) - ymin) / (ymax - ymin) * (H - MT - MB); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"monospace\">" + title + "</text>\n";
    // axes
    svg += "<line x1=\"" + fmt6(ML) + "\" y1=\"" + fmt6(H - MB) + "\" x2=\"" + fmt6(W - MR) +
           "\" y2=\"" + fmt6(H - MB) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt6(ML) + "\" y1=\"" + fmt6(MT) + "\" x2=\"" + fmt6(ML) + "\" y2=\"" +
           fmt6(H - MB) + "\" stroke=\"black\"/>\n";
    // corner tick labels
    svg += "<text x=\"" + fmt6(ML) + "\" y=\"" + fmt6(H - MB + 18) +
           "\" font-size=\"11\" font-family=\"monospace\">" +
           (logx ? "1e" + fmt6(xmin) : fmt6(xmin)) + "</text>\n";
    svg += "<text x=\"" + fmt6(W - MR - 40) + "\" y=\"" + fmt6(H - MB + 18) +
           "\" font-size=\"11\" font-family=\"monospace\">" +
           (logx ? "1e" + fmt6(xmax) : fmt6(xmax)) + "</text>\n";
    svg += "<text x=\"4\" y=\"" + fmt6(H - MB) + "\" font-size=\"11\" font-family=\"monospace\">" +
           (logy ? "1e" + fmt6(ymin) : fmt6(ymin)) + "</text>\n";
    svg += "<text x=\"4\" y=\"" + fmt6(MT + 10) + "\" font-size=\"11\" font-family=\"monospace\">" +
           (logy ? "1e" + fmt6(ymax) : fmt6(ymax)) + "</text>\n";

    int color_idx = 0;
    double legend_y = MT + 14;
    for (const auto& s : series) {
        const char* color = colors[color_idx % 4];
        ++color_idx;
        if (!s.points_only && s.xs.size() > 1) {
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.xs.size(); ++i)
                svg += fmt6(px(s.xs[i])) + "," + fmt6(py(s.ys[i])) + " ";
            svg += "\"/>\n";
        }
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            svg += "<circle cx=\"" + fmt6(px(s.xs[i])) + "\" cy=\"" + fmt6(py(s.ys[i])) +
                   "\" r=\"2.5\" fill=\"" + std::string(color) + "\"/>\n";
        svg += "<text x=\"" + fmt6(W - MR - 160) + "\" y=\"" + fmt6(legend_y) +
               "\" font-size=\"12\" font-family=\"monospace\" fill=\"" + std::string(color) +
               "\">" + s.label + "</text>\n";
        legend_y += 15;
    }
    if (!annotation.empty())
        svg += "<text x=\"" + fmt6(ML + 10) + "\" y=\"" + fmt6(MT + 14) +
               "\" font-size=\"12\" font-family=\"monospace\">" + annotation + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace fredkin
