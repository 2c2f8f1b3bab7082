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
#ifndef DDC_PLOT_HPP
#define DDC_PLOT_HPP

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace ddc {

enum class PlotKind { Line, Step, LogX };

const char* to_string(PlotKind kind) noexcept;
PlotKind plot_kind_from_string(const std::string& s);

/// Numeric CSV: first column is the abscissa, every other column a series. Empty cells are gaps.
struct CsvTable {
    std::vector<std::string> headers;
    std::vector<std::vector<double>> columns; ///< NaN marks an empty cell
};

/// Throws ParseError (with line number) on ragged rows, non-numeric cells or a file without data rows.
CsvTable parse_csv_table(std::istream& in);

/// Deterministic SVG document for `table`.
std::string render_svg(const CsvTable& table, PlotKind kind, const std::string& title = {});

/// Reads `csv`, writes the SVG to `svg`. Throws ParseError or an Io error.
void emit_plot(const std::filesystem::path& csv, const std::filesystem::path& svg, PlotKind kind,
               const std::string& title = {});

} // namespace ddc

#endif // DDC_PLOT_HPP
