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
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ddc/error.hpp"
#include "ddc/plot.hpp"

namespace ddc {
namespace {

CsvTable parse(const std::string& text) {
    std::istringstream in(text);
    return parse_csv_table(in);
}

long parse_error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

TEST(CsvTable, ParsesColumnsAndGaps) {
    const auto t = parse("k,a,b\n0,1,\n1,2,3\n");
    ASSERT_EQ(t.headers.size(), 3u);
    EXPECT_EQ(t.headers[2], "b");
    EXPECT_EQ(t.columns[1], (std::vector<double>{1, 2}));
    EXPECT_TRUE(std::isnan(t.columns[2][0]));
    EXPECT_EQ(t.columns[2][1], 3.0);
}

TEST(CsvTable, ErrorsCarryLineNumbers) {
    EXPECT_EQ(parse_error_line(""), 1);
    EXPECT_GE(parse_error_line("k,a\n"), 1);
    EXPECT_EQ(parse_error_line("k,a\n0,1\n1\n"), 3);
    EXPECT_EQ(parse_error_line("k,a\n0,1\n1,abc\n"), 3);
}

TEST(RenderSvg, IdentitySeries) {
    const auto t = parse("x,y\n0,0\n1,1\n2,2\n");
    const std::string svg = render_svg(t, PlotKind::Line, "identity");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("identity"), std::string::npos);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_EQ(svg, render_svg(t, PlotKind::Line, "identity"));
}

TEST(RenderSvg, StepPlotDoublesVertices) {
    const auto t = parse("x,y\n0,0\n1,1\n2,0\n");
    const auto count = [](const std::string& s) {
        const auto start = s.find("points=\"");
        const auto end = s.find('"', start + 8);
        const std::string pts = s.substr(start + 8, end - start - 8);
        return std::count(pts.begin(), pts.end(), ',');
    };
    EXPECT_EQ(count(render_svg(t, PlotKind::Line)), 3);
    EXPECT_EQ(count(render_svg(t, PlotKind::Step)), 5);
}

TEST(RenderSvg, LogAxisTicksSpanTheDecades) {
    const auto t = parse("kappa,gain\n1e-6,1e-5\n1e-3,1e-2\n1,7.5\n");
    const std::string svg = render_svg(t, PlotKind::LogX, "sweep");
    EXPECT_NE(svg.find(">1e-06<"), std::string::npos) << svg;
    EXPECT_NE(svg.find(">1<"), std::string::npos);
}

TEST(RenderSvg, LogAxisNeedsPositiveAbscissae) {
    EXPECT_THROW(render_svg(parse("x,y\n0,1\n1,2\n"), PlotKind::LogX), Error);
}

TEST(RenderSvg, GapSplitsTheSeries) {
    const auto t = parse("x,y\n0,1\n1,\n2,3\n3,4\n");
    const std::string svg = render_svg(t, PlotKind::Line);
    std::size_t polylines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1))
        ++polylines;
    EXPECT_EQ(polylines, 2u);
}

TEST(PlotKind, NamesRoundTrip) {
    for (auto k : {PlotKind::Line, PlotKind::Step, PlotKind::LogX}) EXPECT_EQ(plot_kind_from_string(to_string(k)), k);
    EXPECT_THROW(plot_kind_from_string("pie"), Error);
}

TEST(EmitPlot, EmptyFileIsAParseError) {
    const auto dir = std::filesystem::temp_directory_path() / "ddc_plot_test";
    std::filesystem::create_directories(dir);
    { std::ofstream(dir / "empty.csv"); }
    EXPECT_THROW(emit_plot(dir / "empty.csv", dir / "empty.svg", PlotKind::Line), ParseError);
    try {
        emit_plot(dir / "absent.csv", dir / "absent.svg", PlotKind::Line);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}

} // namespace
} // namespace ddc
