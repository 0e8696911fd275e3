#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "folk/matrix.hpp"

namespace folk {

/// A numeric table with a label column: header[0] names the label column,
/// header[1..] the value columns.
struct LabeledTable {
  std::vector<std::string> header;
  std::vector<std::string> row_labels;
  Matrix values;
};

/// Numbers use 12 significant digits ("%.12g"); negative zero prints as "0".
std::string format_number(double v);

/// RFC 4180 output, '\n' line endings.
std::string write_labeled_csv(const LabeledTable& table);
/// Inverse of write_labeled_csv; throws ParseError with the offending line.
LabeledTable read_labeled_csv(std::string_view text);

}  // namespace folk
