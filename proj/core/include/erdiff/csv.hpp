#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erdiff::csv {

/// One parsed field. An unquoted empty field is treated as a missing value;
/// a quoted empty field ("") is a present, empty string.
struct Cell {
  std::string text;
  bool quoted = false;

  bool missing() const { return text.empty() && !quoted; }
  std::optional<std::string> value() const {
    if (missing()) return std::nullopt;
    return text;
  }
};

using Row = std::vector<Cell>;

/// RFC 4180 reader: comma separated, double-quote escaping, embedded
/// newlines inside quotes, CRLF tolerated. A UTF-8 BOM on the first line is
/// dropped.
class Reader {
 public:
  explicit Reader(std::istream& in);

  /// Returns false at end of input. `line()` then reports the physical line
  /// the last record started on.
  bool next(Row& row);
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t physical_line_ = 0;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

std::vector<Row> read_file(const std::filesystem::path& path);

/// Reads the first record only (used for format sniffing).
std::optional<Row> read_header(const std::filesystem::path& path);

std::string escape(std::string_view field);

/// Writes a missing value as an empty unquoted field and a present empty
/// string as "".
std::string escape(const std::optional<std::string>& field);

/// Joins fields that are already escaped.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace erdiff::csv
