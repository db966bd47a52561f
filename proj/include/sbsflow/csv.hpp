#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sbsflow::csv {

/// A parsed record plus the 1-based line on which it started.
struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

/// Streaming RFC 4180 reader: quoted fields may contain separators, doubled
/// quotes and line breaks.
class Reader {
 public:
  explicit Reader(std::istream& in, char separator = ',');

  /// Returns the next record, or nullopt at end of input.
  std::optional<Row> next();

 private:
  std::istream& in_;
  char sep_;
  std::size_t line_ = 0;
};

/// Reads a whole file; throws InputError if it cannot be opened.
std::vector<Row> read_file(const std::string& path, char separator = ',');

/// Quotes a field when it contains a separator, quote or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest decimal form that parses back to the same double.
std::string format_exact(double value);

/// `significant` significant digits, printf %g style.
std::string format_sig(double value, int significant = 6);

/// Strict parse of a complete field as a finite double.
std::optional<double> parse_double(std::string_view text);

}  // namespace sbsflow::csv
