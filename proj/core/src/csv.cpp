#include "erdiff/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "erdiff/errors.hpp"

namespace erdiff::csv {

Reader::Reader(std::istream& in) : in_(in) {}

bool Reader::next(Row& row) {
  row.clear();
  std::string line;
  if (!std::getline(in_, line)) return false;
  ++physical_line_;
  record_line_ = physical_line_;
  if (first_) {
    first_ = false;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  }

  Cell cell;
  bool in_quotes = false;
  std::size_t i = 0;
  while (true) {
    if (i >= line.size()) {
      if (in_quotes) {
        // Quoted field spans a newline.
        std::string more;
        if (!std::getline(in_, more)) {
          fail(ErrorCode::MalformedRow, "unterminated quoted field starting on line " +
                                            std::to_string(record_line_));
        }
        ++physical_line_;
        cell.text.push_back('\n');
        line = std::move(more);
        i = 0;
        continue;
      }
      break;
    }
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.text.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell.text.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
      cell.quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell = Cell{};
    } else if (c == '\r' && i + 1 == line.size()) {
      // CRLF line ending
    } else {
      cell.text.push_back(c);
    }
    ++i;
  }
  row.push_back(std::move(cell));
  return true;
}

std::vector<Row> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, "cannot open " + path.string());
  Reader reader(in);
  std::vector<Row> rows;
  Row row;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].missing()) continue;  // blank line
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<Row> read_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, "cannot open " + path.string());
  Reader reader(in);
  Row row;
  if (!reader.next(row)) return std::nullopt;
  return row;
}

std::string escape(std::string_view field) {
  bool needs_quotes = field.empty() || field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string escape(const std::optional<std::string>& field) {
  if (!field) return {};
  return escape(std::string_view(*field));
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

}  // namespace erdiff::csv
