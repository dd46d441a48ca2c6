#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "ahnn/linsys.hpp"

namespace ahnn {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !is_space(line[pos])) ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

double parse_number(std::string_view token, std::size_t line_no) {
  // from_chars rejects a leading '+', which is legal decimal notation.
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) {
    throw Error(ErrorKind::malformed_number,
                "line " + std::to_string(line_no) + ": malformed number '" +
                    std::string(token) + "'",
                line_no);
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::non_finite,
                "line " + std::to_string(line_no) + ": non-finite value '" +
                    std::string(token) + "'",
                line_no);
  }
  return value;
}

Index parse_dimension(std::string_view token, std::size_t line_no) {
  long long n = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorKind::malformed_number,
                "line " + std::to_string(line_no) + ": dimension '" +
                    std::string(token) + "' is not an integer",
                line_no);
  }
  if (n <= 0) {
    throw Error(ErrorKind::dimension_zero,
                "line " + std::to_string(line_no) + ": dimension must be positive",
                line_no);
  }
  return static_cast<Index>(n);
}

}  // namespace

LinearSystemd parse_system(std::istream& in) {
  LinearSystemd sys;
  Index n = 0;
  Index row = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (n == 0) {
      if (tokens.size() != 1) {
        throw Error(ErrorKind::row_length_mismatch,
                    "line " + std::to_string(line_no) +
                        ": expected the system dimension alone on its line",
                    line_no);
      }
      n = parse_dimension(tokens.front(), line_no);
      sys.A.resize(n, n);
      sys.b.resize(n);
      continue;
    }
    if (row == n) {
      throw Error(ErrorKind::trailing_data,
                  "line " + std::to_string(line_no) + ": data after the last row",
                  line_no);
    }
    if (static_cast<Index>(tokens.size()) != n + 1) {
      throw Error(ErrorKind::row_length_mismatch,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(n + 1) + " values, found " +
                      std::to_string(tokens.size()),
                  line_no);
    }
    for (Index j = 0; j < n; ++j) sys.A(row, j) = parse_number(tokens[j], line_no);
    sys.b(row) = parse_number(tokens[n], line_no);
    ++row;
  }
  if (n == 0) {
    throw Error(ErrorKind::dimension_zero, "input holds no system", line_no);
  }
  if (row != n) {
    throw Error(ErrorKind::missing_rows,
                "expected " + std::to_string(n) + " rows, found " + std::to_string(row),
                line_no);
  }
  return sys;
}

LinearSystemd parse_system(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_system(in);
}

LinearSystemd read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::invalid_config, "cannot open '" + path + "'");
  }
  return parse_system(in);
}

std::string render_system(const LinearSystemd& sys) {
  validate(sys);
  std::string out = std::to_string(sys.size()) + "\n";
  char buf[64];
  auto put = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
  };
  for (Index i = 0; i < sys.size(); ++i) {
    for (Index j = 0; j < sys.size(); ++j) {
      put(sys.A(i, j));
      out += ' ';
    }
    put(sys.b(i));
    out += '\n';
  }
  return out;
}

}  // namespace ahnn
