#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ramancf/sweep.hpp"

namespace ramancf {

inline constexpr int kSchemaVersion = 1;

/// Wide CSV: the axis column, then one column per series. A series with any
/// non-ok cell also gets a `<name>_flag` column holding the cell status; its
/// non-ok value fields are left empty. Values carry 17 significant digits.
void write_csv(std::ostream& out, const SweepTable& table);
std::string to_csv(const SweepTable& table);

/// Inverse of write_csv. Fixed parameters are recovered from the series
/// names, the quantity from the series prefix; residuals and metadata are
/// not part of the CSV and come back empty. Throws InvalidArgument on
/// malformed input.
SweepTable read_csv(std::istream& in);
SweepTable from_csv(const std::string& text);

/// Recovers the fixed parameters encoded by series_name.
std::map<std::string, double> parse_series_name(const std::string& name);

nlohmann::json to_json(const SweepTable& table);
SweepTable table_from_json(const nlohmann::json& j);

/// Field-by-field comparison of what the CSV carries: axis, grid, series
/// names, statuses, and values of ok cells (bitwise).
bool csv_equivalent(const SweepTable& a, const SweepTable& b);

std::string format_double(double v);

}  // namespace ramancf
