#pragma once

// Minimal RFC 4180 reader/writer: comma separator, double-quote quoting,
// doubled quotes inside quoted fields, CRLF or LF line endings.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rulemine::csv {

class Reader {
public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at end of input. Throws DataError naming the
  /// line on an unterminated quote or stray character after a quote.
  std::optional<std::vector<std::string>> next();

  /// 1-based line on which the last returned record started.
  [[nodiscard]] std::size_t record_line() const noexcept { return record_line_; }

private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

/// Quotes `field` when it holds a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace rulemine::csv
