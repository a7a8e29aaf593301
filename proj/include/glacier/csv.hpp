#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "glacier/simulator.hpp"

namespace glacier {

/// Shortest text that round-trips at 17 significant digits.
std::string format_double(double x);
double parse_double(const std::string& s);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

/// Lines starting with '#' are comments.
CsvTable read_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);

/// Columns tau,theta,lambda, then t_years,T_kelvin,l_km when scales are
/// given, then regime for the full model.
CsvTable trajectory_table(const Trajectory& tr, const Scales* scales = nullptr);
Trajectory trajectory_from_table(const CsvTable& table);

}  // namespace glacier
