#include "cpd4/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "cpd4/errors.hpp"

namespace cpd4 {

namespace {

constexpr const char* kHeader = "s,t,x1,x2,x3,x4";

std::string format_row(Real s, Real t, const Vector4& x) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", s, t, x(0), x(1),
                x(2), x(3));
  return buf;
}

std::vector<Real> parse_row(const std::string& line, size_t line_no) {
  std::vector<Real> fields;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    size_t used = 0;
    Real value = 0;
    try {
      value = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw IoError("line " + std::to_string(line_no) +
                    ": cannot parse number '" + cell + "'");
    }
    while (used < cell.size() &&
           (cell[used] == ' ' || cell[used] == '\r' || cell[used] == '\t')) {
      ++used;
    }
    if (used != cell.size()) {
      throw IoError("line " + std::to_string(line_no) +
                    ": trailing garbage in field '" + cell + "'");
    }
    fields.push_back(value);
  }
  return fields;
}

}  // namespace

void write_grid_csv(const std::filesystem::path& path,
                    const SampledGrid& grid) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << kHeader << '\n';
  for (int i = 0; i < grid.ns(); ++i) {
    for (int j = 0; j < grid.nt(); ++j) {
      out << format_row(grid.s_values[i], grid.t_values[j], grid.at(i, j))
          << '\n';
    }
  }
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

SampledGrid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("'" + path.string() + "' is empty");
  }
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
    line.pop_back();
  }
  if (line != kHeader) {
    throw IoError("'" + path.string() + "': expected header '" +
                  std::string(kHeader) + "', found '" + line + "'");
  }

  struct Row {
    Real s, t;
    Vector4 x;
  };
  std::vector<Row> rows;
  std::map<Real, int> s_index, t_index;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    const std::vector<Real> f = parse_row(line, line_no);
    if (f.size() != 6) {
      throw IoError("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                    std::to_string(f.size()));
    }
    rows.push_back(Row{f[0], f[1], Vector4(f[2], f[3], f[4], f[5])});
    s_index.emplace(f[0], 0);
    t_index.emplace(f[1], 0);
  }
  if (rows.empty()) {
    throw IoError("'" + path.string() + "' contains no data rows");
  }

  SampledGrid grid;
  int idx = 0;
  for (auto& [value, index] : s_index) {
    index = idx++;
    grid.s_values.push_back(value);
  }
  idx = 0;
  for (auto& [value, index] : t_index) {
    index = idx++;
    grid.t_values.push_back(value);
  }
  const size_t expected =
      grid.s_values.size() * grid.t_values.size();
  if (rows.size() != expected) {
    throw IoError("'" + path.string() + "': " + std::to_string(rows.size()) +
                  " rows do not fill a " + std::to_string(grid.s_values.size()) +
                  "x" + std::to_string(grid.t_values.size()) + " grid");
  }

  grid.points.assign(expected, Vector4::Zero());
  std::vector<char> seen(expected, 0);
  for (const Row& row : rows) {
    const size_t i = s_index.at(row.s);
    const size_t j = t_index.at(row.t);
    const size_t flat = i * grid.t_values.size() + j;
    if (seen[flat]) {
      throw IoError("duplicate grid node (s,t)=(" + std::to_string(row.s) +
                    ", " + std::to_string(row.t) + ")");
    }
    seen[flat] = 1;
    grid.points[flat] = row.x;
  }
  return grid;
}

}  // namespace cpd4
