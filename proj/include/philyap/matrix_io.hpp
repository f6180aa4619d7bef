#pragma once

// Plain-text matrix format: a header line "rows cols", then rows*cols
// whitespace-separated doubles in row-major order. '#' starts a comment that
// runs to the end of the line.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "philyap/dense_matrix.hpp"

namespace philyap::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  /// 1-based line of the offending token (0 when the input ended early).
  int line() const { return line_; }

 private:
  int line_;
};

DenseMatrix parse_matrix(std::string_view text);
/// Throws std::runtime_error if the file cannot be opened, ParseError on bad content.
DenseMatrix read_matrix(const std::filesystem::path& path);

/// Values printed with %.17g so parse_matrix(format_matrix(m)) == m.
std::string format_matrix(const DenseMatrix& m);
void write_matrix(const std::filesystem::path& path, const DenseMatrix& m);

}  // namespace philyap::io
