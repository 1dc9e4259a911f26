#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace moshrink {

struct CsvTable {
  Eigen::MatrixXd values;
  std::vector<std::string> column_names;  // empty when no header
};

// Locale-independent numeric CSV. Parse errors carry the 1-based line number.
CsvTable read_csv(const std::string& path, bool header);
void write_csv(const std::string& path, const Eigen::MatrixXd& values,
               const std::vector<std::string>& column_names = {},
               const std::vector<std::string>& comment_lines = {});

}  // namespace moshrink
