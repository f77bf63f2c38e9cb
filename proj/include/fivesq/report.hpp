#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fivesq {

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(std::string_view text);

// Empty cell = absent value (CSV: empty field, JSON: null).
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  friend bool operator==(const Report&, const Report&) = default;
};

// Doubles are written with 12 significant digits; integers exactly.
std::string format_cell(const Cell& cell);
std::string render_csv(const Report& report);
std::string render_json(const Report& report);
std::string render(const Report& report, ReportFormat format);

Report parse_csv(std::string_view text);
Report parse_json(std::string_view text);

// Writes the rendered report; "-" means stdout. Throws IoError with the path.
void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

// Value as it reads back from a 12-significant-digit rendering.
double round12(double v);

}  // namespace fivesq
