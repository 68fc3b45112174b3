#ifndef RANDCX_PLOT_HPP
#define RANDCX_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "randcx/csv.hpp"
#include "randcx/error.hpp"

namespace randcx {

struct PlotSpec {
    std::string check;   // empty: the first check found in the CSV
    std::string title;
    int width = 720;
    int height = 480;
};

struct PlotPoint {
    double p = 0.0;
    std::size_t successes = 0;
    std::size_t trials = 0;

    double frequency() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

/// Success frequency per (n, p) for one check, from sweep CSV text. Rows with
/// outcome "error" and process-mode rows are skipped. MissingColumn when a
/// needed column is absent, EmptyInput when no usable row remains.
inline std::map<int, std::vector<PlotPoint>> plot_series(std::string_view csv_text, std::string& check)
{
    auto rows = parse_csv(csv_text);
    if (rows.empty()) {
        fail(ErrorKind::empty_input, "CSV has no header");
    }
    const auto& header = rows.front();
    auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            fail(ErrorKind::missing_column, "column '" + name + "' not found");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto cn = column("n");
    const auto cp = column("p");
    const auto cc = column("check");
    const auto co = column("outcome");
    const std::size_t need = std::max({cn, cp, cc, co}) + 1;

    std::map<int, std::map<double, PlotPoint>> cells;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() < need || row[co] == "error") {
            continue;
        }
        if (check.empty()) {
            check = row[cc];
        }
        if (row[cc] != check) {
            continue;
        }
        char* end = nullptr;
        double p = std::strtod(row[cp].c_str(), &end);
        if (end == row[cp].c_str() || *end != '\0') {
            continue;
        }
        int n = std::atoi(row[cn].c_str());
        auto& point = cells[n][p];
        point.p = p;
        ++point.trials;
        point.successes += row[co] == "1";
    }
    std::map<int, std::vector<PlotPoint>> series;
    for (auto& [n, points] : cells) {
        for (auto& [p, point] : points) {
            series[n].push_back(point);
        }
    }
    if (series.empty()) {
        fail(ErrorKind::empty_input, "no data rows to plot");
    }
    return series;
}

/// SVG of success frequency against p, one polyline per n, with dashed guide
/// lines at 2 ln n / n and sqrt(3 ln n / n) for each n.
inline std::string plot_svg(std::string_view csv_text, const PlotSpec& spec = {})
{
    std::string check = spec.check;
    auto series = plot_series(csv_text, check);

    double p_max = 0.0;
    for (const auto& [n, points] : series) {
        for (const auto& pt : points) {
            p_max = std::max(p_max, pt.p);
        }
    }
    if (p_max <= 0.0) {
        p_max = 1.0;
    }
    const double left = 60, right = 20, top = 40, bottom = 50;
    const double w = spec.width - left - right;
    const double h = spec.height - top - bottom;
    auto sx = [&](double p) { return left + w * p / p_max; };
    auto sy = [&](double f) { return top + h * (1.0 - f); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
           std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::string title = spec.title.empty() ? "frequency of " + check + " vs p" : spec.title;
    out += "<text x=\"" + num(left) + "\" y=\"20\">" + title + "</text>\n";
    out += "<line class=\"axis\" x1=\"" + num(left) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(left + w) +
           "\" y2=\"" + num(sy(0)) + "\" stroke=\"black\"/>\n";
    out += "<line class=\"axis\" x1=\"" + num(left) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(left) +
           "\" y2=\"" + num(sy(1)) + "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        double f = k / 4.0;
        double p = p_max * k / 4.0;
        out += "<text x=\"" + num(left - 40) + "\" y=\"" + num(sy(f) + 4) + "\">" + num(f) + "</text>\n";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", p);
        out += "<text x=\"" + num(sx(p) - 10) + "\" y=\"" + num(sy(0) + 18) + "\">" + buf + "</text>\n";
    }
    out += "<text x=\"" + num(left + w / 2) + "\" y=\"" + num(spec.height - 10.0) + "\">p</text>\n";
    out += "<line class=\"half\" x1=\"" + num(left) + "\" y1=\"" + num(sy(0.5)) + "\" x2=\"" + num(left + w) +
           "\" y2=\"" + num(sy(0.5)) + "\" stroke=\"#bbbbbb\"/>\n";

    std::size_t colour = 0;
    for (const auto& [n, points] : series) {
        const char* c = palette[colour++ % std::size(palette)];
        double ln = std::log(static_cast<double>(n));
        for (double g : {2.0 * ln / n, std::sqrt(3.0 * ln / n)}) {
            if (g <= p_max) {
                out += "<line class=\"guide\" x1=\"" + num(sx(g)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" +
                       num(sx(g)) + "\" y2=\"" + num(sy(1)) + "\" stroke=\"" + c +
                       "\" stroke-dasharray=\"4 3\"/>\n";
            }
        }
        std::string pts;
        for (const auto& pt : points) {
            pts += (pts.empty() ? "" : " ") + num(sx(pt.p)) + "," + num(sy(pt.frequency()));
        }
        out += "<polyline class=\"series\" fill=\"none\" stroke=\"" + std::string(c) + "\" points=\"" + pts +
               "\"/>\n";
        for (const auto& pt : points) {
            out += "<circle class=\"marker\" cx=\"" + num(sx(pt.p)) + "\" cy=\"" + num(sy(pt.frequency())) +
                   "\" r=\"3\" fill=\"" + c + "\"/>\n";
        }
        out += "<text x=\"" + num(left + w - 60) + "\" y=\"" + num(top + 16.0 * static_cast<double>(colour)) +
               "\" fill=\"" + c + "\">n = " + std::to_string(n) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace randcx

#endif
