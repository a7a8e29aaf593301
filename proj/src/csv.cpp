#include "glacier/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "glacier/errors.hpp"

namespace glacier {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("cannot parse number '" + s + "'");
  }
  return v;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ConfigError("missing CSV column '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      t.header = split(line);
      have_header = true;
    } else {
      t.rows.push_back(split(line));
      if (t.rows.back().size() != t.header.size()) throw ConfigError("ragged CSV row");
    }
  }
  return t;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

CsvTable trajectory_table(const Trajectory& tr, const Scales* scales) {
  CsvTable t;
  t.header = {"tau", "theta", "lambda"};
  if (scales) {
    for (const char* c : {"t_years", "T_kelvin", "l_km"}) t.header.emplace_back(c);
  }
  const bool full = tr.model == ModelKind::Full;
  if (full) t.header.emplace_back("regime");
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    std::vector<std::string> row{format_double(tr.times[i]), format_double(tr.states[i].theta),
                                 format_double(tr.states[i].lambda)};
    if (scales) {
      const DimensionalState d = to_dimensional(tr.states[i], *scales);
      row.push_back(format_double(to_dimensional_time(tr.times[i], *scales)));
      row.push_back(format_double(d.T_kelvin));
      row.push_back(format_double(d.l_meters / 1000.0));
    }
    if (full) row.emplace_back(to_string(tr.regimes[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Trajectory trajectory_from_table(const CsvTable& table) {
  Trajectory tr;
  const std::size_t ct = table.column("tau");
  const std::size_t cth = table.column("theta");
  const std::size_t cl = table.column("lambda");
  std::size_t cr = table.header.size();
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == "regime") cr = i;
  }
  tr.model = cr < table.header.size() ? ModelKind::Full : ModelKind::Simplified;
  for (const auto& row : table.rows) {
    tr.times.push_back(parse_double(row[ct]));
    tr.states.push_back({parse_double(row[cth]), parse_double(row[cl])});
    if (cr < table.header.size()) {
      const std::string& r = row[cr];
      tr.regimes.push_back(r == "stagnant"     ? Regime::Stagnant
                           : r == "nucleation" ? Regime::Nucleation
                                               : Regime::Accumulating);
    }
  }
  return tr;
}

}  // namespace glacier
