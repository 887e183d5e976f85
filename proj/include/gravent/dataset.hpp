#pragma once

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gravent/boundcheck.hpp"
#include "gravent/errors.hpp"
#include "gravent/real.hpp"
#include "gravent/sweeps.hpp"

namespace gravent {

using json = nlohmann::json;

/// Column-oriented dataset: cells are JSON scalars (binary64 numbers, or
/// decimal strings when the value came from an extended scalar).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

/// Numeric cell: binary64 stays a JSON number, extended scalars become
/// full-precision decimal strings.
inline json num_cell(double x) { return json(x); }

template <class Real>
json num_cell(const Real& x) {
  return json(to_decimal_string(x));
}

namespace detail {

inline std::string csv_cell(const json& cell) {
  if (cell.is_number_float()) return to_decimal_string(cell.get<double>());
  if (cell.is_string()) return cell.get<std::string>();
  return cell.dump();
}

}  // namespace detail

/// CSV with '#'-prefixed provenance lines, comma separators, '.' decimals,
/// LF endings; binary64 cells carry 17 significant digits.
inline std::string emit_csv(const Table& table, const std::vector<std::string>& provenance) {
  std::ostringstream os;
  for (const auto& line : provenance) os << "# " << line << '\n';
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    os << (j ? "," : "") << table.columns[j];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? "," : "") << detail::csv_cell(row[j]);
    os << '\n';
  }
  return os.str();
}

/// One top-level object with "meta" and "data" keys; data carries the column
/// names and the rows.
inline std::string emit_json(const Table& table, json meta) {
  json data;
  data["columns"] = table.columns;
  data["rows"] = json::array();
  for (const auto& row : table.rows) data["rows"].push_back(row);
  json out;
  out["meta"] = std::move(meta);
  out["data"] = std::move(data);
  return out.dump(2) + "\n";
}

/// Inverse of emit_csv: provenance lines are skipped, numeric cells restored
/// as binary64 numbers, everything else as strings.
inline Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (!have_header) {
      table.columns = cells;
      have_header = true;
      continue;
    }
    std::vector<json> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      const char* begin = c.c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end != begin && *end == '\0' && !c.empty())
        row.emplace_back(v);
      else
        row.emplace_back(c);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

template <class Real>
Table curve_table(const std::vector<CurvePoint<Real>>& points) {
  Table t;
  t.columns = {"x", "nu", "one_minus_nu", "log_negativity"};
  for (const auto& p : points)
    t.rows.push_back({num_cell(p.x), num_cell(p.nu), num_cell(p.one_minus_nu),
                      num_cell(p.log_negativity)});
  return t;
}

template <class Real>
long detectable_count(const std::vector<CurvePoint<Real>>& points) {
  long n = 0;
  for (const auto& p : points) n += p.detectable ? 1 : 0;
  return n;
}

template <class Real>
Table fit_table(const FitResult<Real>& fit) {
  Table t;
  t.columns = {"key", "value"};
  t.rows.push_back({json("prefactor"), num_cell(fit.prefactor)});
  t.rows.push_back({json("exponent"), num_cell(fit.exponent)});
  t.rows.push_back({json("residual"), num_cell(fit.residual)});
  return t;
}

template <class Real>
Table report_table(const SampleReport<Real>& report) {
  Table t;
  t.columns = {"key", "value"};
  t.rows.push_back({json("seed"), json(report.seed)});
  t.rows.push_back({json("n_samples"), json(report.n_samples)});
  t.rows.push_back({json("eps"), num_cell(report.eps)});
  t.rows.push_back({json("min_relative_change"), num_cell(report.min_relative_change)});
  t.rows.push_back({json("argmin_a"), num_cell(report.argmin_params.a)});
  t.rows.push_back({json("argmin_b"), num_cell(report.argmin_params.b)});
  t.rows.push_back({json("argmin_c"), num_cell(report.argmin_params.c)});
  t.rows.push_back({json("argmin_d"), num_cell(report.argmin_params.d)});
  t.rows.push_back({json("argmin_phase"), num_cell(report.argmin_phase)});
  t.rows.push_back({json("violations"), json(report.violations)});
  t.rows.push_back({json("acceptance_rate"), json(report.acceptance_rate)});
  for (const auto& fam : report.saturating_families)
    t.rows.push_back({json("relative_change_" + fam.first), num_cell(fam.second)});
  return t;
}

}  // namespace gravent
