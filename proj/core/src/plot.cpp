/*
 Copyright 2026 The ddc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "ddc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ddc/error.hpp"

namespace ddc {

const char* to_string(PlotKind kind) noexcept {
    switch (kind) {
    case PlotKind::Line: return "line";
    case PlotKind::Step: return "step";
    case PlotKind::LogX: return "log-x";
    }
    return "line";
}

PlotKind plot_kind_from_string(const std::string& s) {
    if (s == "line") return PlotKind::Line;
    if (s == "step") return PlotKind::Step;
    if (s == "log-x") return PlotKind::LogX;
    throw_invalid("unknown plot kind '" + s + "' (expected line, step or log-x)");
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

} // namespace

CsvTable parse_csv_table(std::istream& in) {
    CsvTable t;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (t.headers.empty()) {
            if (cells.size() < 2) throw ParseError("CSV needs an abscissa column and at least one series", lineno);
            t.headers = cells;
            t.columns.resize(cells.size());
            continue;
        }
        if (cells.size() != t.headers.size())
            throw ParseError("expected " + std::to_string(t.headers.size()) + " cells, found " +
                                 std::to_string(cells.size()),
                             lineno);
        for (size_t j = 0; j < cells.size(); ++j) {
            if (cells[j].empty()) {
                if (j == 0) throw ParseError("abscissa cell is empty", lineno);
                t.columns[j].push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            char* end = nullptr;
            const double v = std::strtod(cells[j].c_str(), &end);
            if (end != cells[j].c_str() + cells[j].size())
                throw ParseError("cell '" + cells[j] + "' is not a number", lineno);
            t.columns[j].push_back(v);
        }
    }
    if (t.headers.empty()) throw ParseError("CSV is empty", 1);
    if (t.columns[0].empty()) throw ParseError("CSV has a header but no data rows", lineno);
    return t;
}

std::string render_svg(const CsvTable& table, PlotKind kind, const std::string& title) {
    if (table.columns.size() < 2 || table.columns[0].empty()) throw_invalid("nothing to plot");
    constexpr double W = 720, H = 420, left = 70, right = 170, top = 40, bottom = 50;
    const double pw = W - left - right;
    const double ph = H - top - bottom;
    const bool logx = kind == PlotKind::LogX;

    std::vector<double> xs = table.columns[0];
    if (logx) {
        for (double& x : xs) {
            if (!(x > 0.0)) throw_invalid("log-x plot needs positive abscissae");
            x = std::log10(x);
        }
    }
    double xmin = *std::min_element(xs.begin(), xs.end());
    double xmax = *std::max_element(xs.begin(), xs.end());
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -ymin;
    for (size_t j = 1; j < table.columns.size(); ++j)
        for (double v : table.columns[j])
            if (std::isfinite(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
    if (!std::isfinite(ymin)) ymin = ymax = 0.0;
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    const auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        os << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
           << escape(title) << "</text>\n";
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        os << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(sx(xv)) << "\" y2=\""
           << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
           << (logx ? tick_label(std::pow(10.0, xv)) : tick_label(xv)) << "</text>\n";
        os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << num(left) << "\" y2=\""
           << num(sy(yv)) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">"
           << tick_label(yv) << "</text>\n";
    }
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(H - 10) << "\" text-anchor=\"middle\">"
       << escape(table.headers[0]) << "</text>\n";

    for (size_t j = 1; j < table.columns.size(); ++j) {
        const char* color = kPalette[(j - 1) % std::size(kPalette)];
        // Gaps (empty cells) split a series into separate polylines.
        std::vector<std::string> segments;
        std::string current;
        double prev_y = std::numeric_limits<double>::quiet_NaN();
        for (size_t i = 0; i < xs.size(); ++i) {
            const double y = table.columns[j][i];
            if (!std::isfinite(y)) {
                if (!current.empty()) segments.push_back(current);
                current.clear();
                prev_y = y;
                continue;
            }
            if (kind == PlotKind::Step && !current.empty() && std::isfinite(prev_y))
                current += num(sx(xs[i])) + "," + num(sy(prev_y)) + " ";
            current += num(sx(xs[i])) + "," + num(sy(y)) + " ";
            prev_y = y;
        }
        if (!current.empty()) segments.push_back(current);
        for (auto& s : segments) {
            s.pop_back();
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << s << "\"/>\n";
        }
        const double ly = top + 14.0 * static_cast<double>(j);
        os << "<line x1=\"" << num(W - right + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(W - right + 32)
           << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(W - right + 38) << "\" y=\"" << num(ly + 4) << "\">" << escape(table.headers[j])
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void emit_plot(const std::filesystem::path& csv, const std::filesystem::path& svg, PlotKind kind,
               const std::string& title) {
    std::ifstream in(csv);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + csv.string() + "'");
    const CsvTable table = parse_csv_table(in);
    const std::string doc = render_svg(table, kind, title);
    std::ofstream out(svg);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + svg.string() + "'");
    out << doc;
    if (!out) throw Error(ErrorKind::Io, "write to '" + svg.string() + "' failed");
}

} // namespace ddc
