#pragma once

// Deterministic CSV and JSON emission. Numbers are written in decimal with 17
// significant digits; files appear atomically through write-then-rename.

#include <filesystem>
#include <initializer_list>
#include <string>
#include <variant>

#include "pi2ch/errors.hpp"

namespace pi2ch::cli {

/// A value about to be emitted is NaN or infinite.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// "{:.17g}". Throws NonFiniteError for NaN and infinities.
std::string format_number(double v);

class CsvWriter {
 public:
  using Cell = std::variant<long, double>;

  explicit CsvWriter(std::initializer_list<std::string> header);

  /// Throws DomainError when the width differs from the header.
  void add_row(std::initializer_list<Cell> cells);
  const std::string& text() const { return text_; }
  std::size_t rows() const { return rows_; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace pi2ch::cli
