#include "rulemine/csv.hpp"

#include <istream>

#include "rulemine/core.hpp"

namespace rulemine::csv {

std::optional<std::vector<std::string>> Reader::next() {
  if (in_.peek() == std::char_traits<char>::eof()) {
    return std::nullopt;
  }
  record_line_ = line_;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;       // inside a quoted section
  bool was_quoted = false;   // current field started with a quote
  bool at_field_start = true;

  const auto fail = [&](const std::string& what) {
    throw DataError("malformed CSV at line " + std::to_string(line_) + ": " + what);
  };

  int ch = 0;
  while ((ch = in_.get()) != std::char_traits<char>::eof()) {
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') {
          ++line_;
        }
        field.push_back(c);
      }
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      at_field_start = true;
      was_quoted = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in_.peek() == '\n') {
        in_.get();
      }
      ++line_;
      fields.push_back(std::move(field));
      return fields;
    } else if (c == '"' && at_field_start) {
      quoted = true;
      was_quoted = true;
      at_field_start = false;
    } else {
      if (was_quoted) {
        fail("unexpected character after closing quote");
      }
      if (c == '"') {
        fail("bare quote inside unquoted field");
      }
      field.push_back(c);
      at_field_start = false;
    }
  }
  if (quoted) {
    throw DataError("malformed CSV at line " + std::to_string(record_line_) + ": unterminated quoted field");
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out.push_back('"');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      out.push_back(',');
    }
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace rulemine::csv
