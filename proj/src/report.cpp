#include "fivesq/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "fivesq/error.hpp"

namespace fivesq {
namespace {

using ojson = nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Cell parse_csv_cell(const std::string& field) {
  if (field.empty()) return std::monostate{};
  std::int64_t i = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), i);
  if (ec == std::errc{} && ptr == field.data() + field.size()) return i;
  char* end = nullptr;
  const double d = std::strtod(field.c_str(), &end);
  if (end == field.c_str() + field.size()) return d;
  return field;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

ReportFormat parse_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw InvalidArgument("format must be csv or json, got '" + std::string(text) + "'");
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_double(v).c_str(), nullptr);
}

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
  };
  return std::visit(Visitor{}, cell);
}

std::string render_csv(const Report& report) {
  std::string out;
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(report.columns[c]);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Report& report) {
  ojson arr = ojson::array();
  for (const auto& row : report.rows) {
    ojson obj = ojson::object();
    for (std::size_t c = 0; c < report.columns.size() && c < row.size(); ++c) {
      const auto& cell = row[c];
      const std::string& key = report.columns[c];
      if (std::holds_alternative<std::monostate>(cell)) {
        obj[key] = nullptr;
      } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        obj[key] = *i;
      } else if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) {
          obj[key] = round12(*d);
        } else {
          obj[key] = format_double(*d);
        }
      } else {
        obj[key] = std::get<std::string>(cell);
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(1) + "\n";
}

std::string render(const Report& report, ReportFormat format) {
  return format == ReportFormat::Csv ? render_csv(report) : render_json(report);
}

Report parse_csv(std::string_view text) {
  Report report;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) return report;
  report.columns = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Cell> row;
    for (const auto& field : split_csv_line(line)) row.push_back(parse_csv_cell(field));
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report parse_json(std::string_view text) {
  const ojson arr = ojson::parse(text);
  if (!arr.is_array()) throw InvalidArgument("report JSON must be an array");
  Report report;
  for (const auto& obj : arr) {
    if (report.columns.empty()) {
      for (const auto& item : obj.items()) report.columns.push_back(item.key());
    }
    std::vector<Cell> row;
    for (const auto& key : report.columns) {
      const auto& v = obj.at(key);
      if (v.is_null()) {
        row.emplace_back(std::monostate{});
      } else if (v.is_number_integer()) {
        row.emplace_back(v.get<std::int64_t>());
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else {
        row.emplace_back(v.get<std::string>());
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path) {
  const std::string text = render(report, format);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace fivesq
