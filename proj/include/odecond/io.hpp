#ifndef ODECOND_IO_HPP
#define ODECOND_IO_HPP

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "odecond/types.hpp"

namespace odecond {

namespace detail {

inline double parse_double_strict(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;  // from_chars rejects a unary plus
  const auto res = std::from_chars(first, last, v);
  require(first != last && res.ec == std::errc() && res.ptr == last, errc::bad_input,
          "not a number: '" + s + "'");
  return v;
}

}  // namespace detail

// One complex scalar: "2", "-3.5e-2", "i", "-i", "2i", "1+2i", "1e-3-2.5e-2i".
// No whitespace inside the token; a trailing 'i' marks the imaginary part.
inline Complex parse_complex(std::string token) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front())))
    token.erase(token.begin());
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back())))
    token.pop_back();
  require(!token.empty(), errc::bad_input, "empty number");
  if (token.back() != 'i' && token.back() != 'I') return Complex(detail::parse_double_strict(token), 0.0);
  const std::string body = token.substr(0, token.size() - 1);
  // Split before the sign of the imaginary part: the last +/- that is neither
  // leading nor part of an exponent.
  size_t split = std::string::npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re = "0", im = body;
  if (split != std::string::npos) {
    re = body.substr(0, split);
    im = body.substr(split);
  }
  double imag = 1.0;
  if (im == "" || im == "+") imag = 1.0;
  else if (im == "-") imag = -1.0;
  else imag = detail::parse_double_strict(im);
  return Complex(detail::parse_double_strict(re), imag);
}

namespace detail {

inline std::vector<std::string> tokenize_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace detail

// Matrix from text: one row per line, entries separated by whitespace, commas
// or semicolons; '#' starts a comment; blank lines are skipped.
inline Mat parse_matrix(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto toks = detail::tokenize_row(line);
    if (toks.empty()) continue;
    std::vector<Complex> row;
    row.reserve(toks.size());
    for (const auto& t : toks) row.push_back(parse_complex(t));
    if (!rows.empty())
      require(row.size() == rows.front().size(), errc::bad_input,
              "rows have different lengths");
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), errc::bad_input, "no matrix data");
  Mat m(rows.size(), rows.front().size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

// Vector from text: entries on one line, or one entry per line.
inline Vec parse_vector(const std::string& text) {
  const Mat m = parse_matrix(text);
  require(m.rows() == 1 || m.cols() == 1, errc::bad_input, "not a vector");
  if (m.cols() == 1) return m.col(0);
  return m.row(0).transpose();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::bad_input, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Mat read_matrix(const std::string& path) { return parse_matrix(read_text_file(path)); }
inline Vec read_vector(const std::string& path) { return parse_vector(read_text_file(path)); }

inline bool is_real(const Mat& m, double tol = 0.0) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j).imag()) > tol) return false;
  return true;
}

inline RMat real_checked(const Mat& m) {
  require(is_real(m), errc::bad_input, "matrix must be real here");
  return m.real();
}

inline RVec real_checked(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    require(v[i].imag() == 0.0, errc::bad_input, "vector must be real here");
  return v.real();
}

// ---- CSV output ----

// Shortest representation that round-trips a double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Line-oriented CSV with '#'-prefixed metadata on top; '\n' endings and
// value-for-value deterministic formatting, so identical runs produce
// byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& key, const std::string& value) {
    os_ << "# " << key << ": " << value << "\n";
  }

  void header(const std::vector<std::string>& cols) { write_cells(cols); }

  void row(const std::vector<double>& vals) {
    std::vector<std::string> cells;
    cells.reserve(vals.size());
    for (double v : vals) cells.push_back(format_double(v));
    write_cells(cells);
  }

  void cell_row(const std::vector<std::string>& cells) { write_cells(cells); }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ",";
      os_ << cells[i];
    }
    os_ << "\n";
  }

  std::ostream& os_;
};

}  // namespace odecond

#endif
