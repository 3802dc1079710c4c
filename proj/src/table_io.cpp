#include "ramancf/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ramancf/errors.hpp"

namespace ramancf {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

bool has_flags(const SweepSeries& s) {
  for (const auto& c : s.cells) {
    if (c.status != CellStatus::ok) return true;
  }
  return false;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidArgument("malformed number '" + s + "'");
  return v;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_csv(std::ostream& out, const SweepTable& table) {
  out << table.axis;
  for (const auto& s : table.series) {
    out << ',' << s.name;
    if (has_flags(s)) out << ',' << s.name << "_flag";
  }
  out << '\n';
  for (std::size_t i = 0; i < table.grid.size(); ++i) {
    out << format_double(table.grid[i]);
    for (const auto& s : table.series) {
      const auto& c = s.cells.at(i);
      out << ',';
      if (c.status == CellStatus::ok) out << format_double(c.value);
      if (has_flags(s)) out << ',' << to_string(c.status);
    }
    out << '\n';
  }
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

std::map<std::string, double> parse_series_name(const std::string& name) {
  const auto tokens = split(name, '_');
  std::map<std::string, double> fixed;
  if (tokens.size() == 3 && tokens[0] == "E" && (tokens[1] == "plus" || tokens[1] == "minus")) {
    fixed["n"] = parse_double(tokens[2]);
    return fixed;
  }
  if (tokens.size() % 2 != 1) throw InvalidArgument("malformed series name '" + name + "'");
  for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
    std::string v = tokens[k + 1];
    for (auto& ch : v) {
      if (ch == 'p') ch = '.';
      else if (ch == 'm') ch = '-';
    }
    const std::string key = tokens[k] == "E" ? "energy" : tokens[k];
    fixed[key] = parse_double(v);
  }
  return fixed;
}

SweepTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty CSV");
  const auto header = split(line, ',');
  if (header.size() < 2) throw InvalidArgument("CSV needs an axis and at least one series");

  SweepTable table;
  table.axis = header[0];
  // column index -> (series index, is flag column)
  std::vector<std::pair<std::size_t, bool>> columns;
  for (std::size_t k = 1; k < header.size(); ++k) {
    const auto& h = header[k];
    if (ends_with(h, "_flag") && !table.series.empty() &&
        table.series.back().name + "_flag" == h) {
      columns.emplace_back(table.series.size() - 1, true);
    } else {
      table.series.push_back({h, parse_series_name(h), {}});
      columns.emplace_back(table.series.size() - 1, false);
    }
  }
  table.quantity = table.series.front().name.rfind("omega_", 0) == 0 ? "omega" : "energy";

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) throw InvalidArgument("CSV row has the wrong field count");
    table.grid.push_back(parse_double(fields[0]));
    for (auto& s : table.series) s.cells.push_back({std::nan(""), CellStatus::ok, std::nan("")});
    for (std::size_t k = 1; k < fields.size(); ++k) {
      auto& cell = table.series[columns[k - 1].first].cells.back();
      if (columns[k - 1].second) {
        cell.status = parse_cell_status(fields[k]);
      } else if (!fields[k].empty()) {
        cell.value = parse_double(fields[k]);
      }
    }
  }
  for (const auto& s : table.series) {
    for (const auto& c : s.cells) {
      if (c.status == CellStatus::ok && std::isnan(c.value)) {
        throw InvalidArgument("ok cell without a value in series '" + s.name + "'");
      }
    }
  }
  validate_grid(table.grid);
  return table;
}

SweepTable from_csv(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

nlohmann::json to_json(const SweepTable& table) {
  using nlohmann::json;
  json series = json::array();
  for (const auto& s : table.series) {
    json cells = json::array();
    for (const auto& c : s.cells) {
      cells.push_back({{"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
                       {"status", to_string(c.status)},
                       {"residual", std::isfinite(c.residual) ? json(c.residual) : json(nullptr)}});
    }
    series.push_back({{"name", s.name}, {"fixed", s.fixed}, {"cells", std::move(cells)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"axis", table.axis},
          {"grid", table.grid},
          {"quantity", table.quantity},
          {"metadata", table.metadata},
          {"series", std::move(series)}};
}

SweepTable table_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion) {
    throw InvalidArgument("unsupported schema_version");
  }
  SweepTable t;
  t.axis = j.at("axis").get<std::string>();
  t.grid = j.at("grid").get<std::vector<double>>();
  t.quantity = j.at("quantity").get<std::string>();
  t.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  for (const auto& s : j.at("series")) {
    SweepSeries series{s.at("name").get<std::string>(),
                       s.at("fixed").get<std::map<std::string, double>>(),
                       {}};
    for (const auto& c : s.at("cells")) {
      SweepCell cell;
      cell.value = c.at("value").is_null() ? std::nan("") : c.at("value").get<double>();
      cell.status = parse_cell_status(c.at("status").get<std::string>());
      cell.residual = c.at("residual").is_null() ? std::nan("") : c.at("residual").get<double>();
      series.cells.push_back(cell);
    }
    t.series.push_back(std::move(series));
  }
  return t;
}

bool csv_equivalent(const SweepTable& a, const SweepTable& b) {
  if (a.axis != b.axis || a.grid != b.grid || a.series.size() != b.series.size()) return false;
  for (std::size_t s = 0; s < a.series.size(); ++s) {
    const auto& x = a.series[s];
    const auto& y = b.series[s];
    if (x.name != y.name || x.cells.size() != y.cells.size()) return false;
    for (std::size_t i = 0; i < x.cells.size(); ++i) {
      if (x.cells[i].status != y.cells[i].status) return false;
      if (x.cells[i].status == CellStatus::ok && x.cells[i].value != y.cells[i].value) return false;
    }
  }
  return true;
}

}  // namespace ramancf
