#include "folk/csv.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "text_util.hpp"

namespace folk {

namespace {

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

// Splits one CSV record starting at `pos`; advances `pos` past the line break.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  while (pos < text.size()) {
    char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw ParseError(line_no, "CSV: unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  return fmt::format("{:.12g}", v);
}

std::string write_labeled_csv(const LabeledTable& table) {
  if (table.header.size() != table.values.cols() + 1 || table.row_labels.size() != table.values.rows()) {
    throw InvariantError("CSV table shape does not match its labels");
  }
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += quote(table.header[c]);
  }
  out += '\n';
  for (std::size_t r = 0; r < table.values.rows(); ++r) {
    out += quote(table.row_labels[r]);
    for (double v : table.values.row(r)) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

LabeledTable read_labeled_csv(std::string_view text) {
  LabeledTable table;
  std::size_t pos = 0;
  std::size_t line_no = 1;
  if (text.empty()) throw ParseError(1, "CSV: empty input");
  table.header = read_record(text, pos, line_no);
  const std::size_t cols = table.header.size() - 1;
  std::vector<double> values;
  while (pos < text.size()) {
    ++line_no;
    auto fields = read_record(text, pos, line_no);
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != cols + 1) {
      throw ParseError(line_no, "CSV: expected " + std::to_string(cols + 1) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    table.row_labels.push_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      std::string_view f = detail::trim(fields[c]);
      double v = 0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw ParseError(line_no, "CSV: '" + fields[c] + "' is not a finite number");
      }
      values.push_back(v);
    }
  }
  table.values = Matrix(table.row_labels.size(), cols);
  for (std::size_t i = 0; i < values.size(); ++i) table.values(i / cols, i % cols) = values[i];
  return table;
}

}  // namespace folk
