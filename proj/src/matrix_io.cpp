#include "philyap/matrix_io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace philyap::io {
namespace {

struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') ++i;
      tokens.push_back({std::string(text.substr(start, i - start)), line});
    }
  }
  return tokens;
}

double to_double(const Token& t) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.text.c_str(), &end);
  if (end != t.text.c_str() + t.text.size() || errno == ERANGE)
    throw ParseError(t.line, "not a number: '" + t.text + "'");
  if (!std::isfinite(v)) throw ParseError(t.line, "non-finite value '" + t.text + "'");
  return v;
}

std::size_t to_size(const Token& t) {
  char* end = nullptr;
  const long long v = std::strtoll(t.text.c_str(), &end, 10);
  if (end != t.text.c_str() + t.text.size() || v < 1)
    throw ParseError(t.line, "bad dimension '" + t.text + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

DenseMatrix parse_matrix(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.size() < 2) throw ParseError(tokens.empty() ? 0 : tokens.front().line, "missing 'rows cols' header");
  const std::size_t rows = to_size(tokens[0]);
  const std::size_t cols = to_size(tokens[1]);
  if (tokens[1].line != tokens[0].line) throw ParseError(tokens[1].line, "header must be 'rows cols' on one line");
  const std::size_t count = rows * cols;
  if (tokens.size() - 2 < count)
    throw ParseError(tokens.back().line, "expected " + std::to_string(count) + " values, found " +
                                             std::to_string(tokens.size() - 2));
  if (tokens.size() - 2 > count) throw ParseError(tokens[2 + count].line, "unexpected extra value");
  std::vector<double> data(count);
  for (std::size_t k = 0; k < count; ++k) data[k] = to_double(tokens[2 + k]);
  return DenseMatrix(rows, cols, std::move(data));
}

DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_matrix(const DenseMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  char cell[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(cell, sizeof cell, "%.17g", m(i, j));
      if (j > 0) out += ' ';
      out += cell;
    }
    out += '\n';
  }
  return out;
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << format_matrix(m);
}

}  // namespace philyap::io
