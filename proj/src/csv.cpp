#include "moshrink/csv.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace moshrink {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto a = field.find_first_not_of(" \t\r");
    const auto b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_number(const std::string& s, std::size_t lineno) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("CSV parse error at line " +
                             std::to_string(lineno) + ": bad number '" + s +
                             "'");
  }
  return v;
}

}  // namespace

CsvTable read_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);

  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t ncols = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line);
    if (header && table.column_names.empty() && rows.empty()) {
      table.column_names = fields;
      ncols = fields.size();
      continue;
    }
    if (ncols == 0) ncols = fields.size();
    if (fields.size() != ncols) {
      throw std::runtime_error("CSV parse error at line " +
                               std::to_string(lineno) + ": expected " +
                               std::to_string(ncols) + " fields, got " +
                               std::to_string(fields.size()));
    }
    std::vector<double> row(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
      row[j] = parse_number(fields[j], lineno);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("CSV has no data rows: " + path);

  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(ncols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < ncols; ++j) {
      table.values(static_cast<Eigen::Index>(i),
                   static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return table;
}

void write_csv(const std::string& path, const Eigen::MatrixXd& values,
               const std::vector<std::string>& column_names,
               const std::vector<std::string>& comment_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << std::setprecision(17);
  for (const auto& c : comment_lines) out << "# " << c << "\n";
  if (!column_names.empty()) {
    for (std::size_t j = 0; j < column_names.size(); ++j) {
      if (j) out << ",";
      out << column_names[j];
    }
    out << "\n";
  }
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) out << ",";
      out << values(i, j);
    }
    out << "\n";
  }
}

}  // namespace moshrink
