#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gme {

/// "%.17g": round-trips every double.
std::string format_double(double x);

/// `<node_id> <label>` pairs in file order. `#` comments and blank lines are
/// skipped. Throws FormatError on lines without exactly two fields.
std::vector<std::pair<std::string, std::string>> read_label_pairs(std::istream& in);

struct DataTable {
  std::vector<std::string> ids;  // row IDs; "0".."n-1" when the file has none
  Eigen::MatrixXd values;
};

/// Numeric table, one point per row. Fields are separated by tabs, commas
/// or spaces. With `id_column` the first field of each row is an ID.
/// A first row that fails to parse as numbers is treated as a header.
/// Throws FormatError on ragged rows or non-numeric fields.
DataTable read_data_table(std::istream& in, bool id_column);

}  // namespace gme
