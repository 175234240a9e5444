#ifndef ODECOND_TYPES_HPP
#define ODECOND_TYPES_HPP

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace odecond {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Error categories; values double as process exit codes.
enum class errc {
  ok = 0,
  internal = 1,
  bad_input = 2,
  unsupported_structure = 3,
  rlge_failure = 4,
  numeric_range = 5,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

inline Vec to_complex(const RVec& x) { return x.cast<Complex>(); }
inline Mat to_complex(const RMat& m) { return m.cast<Complex>(); }

// Plain product of a row (stored as a column) with a vector: sum_i w_i u_i,
// no conjugation on either side.
inline Complex row_dot(const Vec& w, const Vec& u) { return w.cwiseProduct(u).sum(); }

}  // namespace odecond

#endif
