#ifndef ODECOND_MATEXP_HPP
#define ODECOND_MATEXP_HPP

#include <unsupported/Eigen/MatrixFunctions>

#include "odecond/types.hpp"

namespace odecond {

// e^{tA} by scaling-and-squaring with Pade approximants.
inline RMat mat_exp(const RMat& a, double t = 1.0) {
  require(a.rows() == a.cols(), errc::bad_input, "mat_exp needs a square matrix");
  require(a.allFinite() && std::isfinite(t), errc::numeric_range, "mat_exp input is not finite");
  RMat e = (t * a).exp();
  require(e.allFinite(), errc::numeric_range, "mat_exp overflowed; rescale the problem");
  return e;
}

inline Mat mat_exp(const Mat& a, double t = 1.0) {
  require(a.rows() == a.cols(), errc::bad_input, "mat_exp needs a square matrix");
  require(a.allFinite() && std::isfinite(t), errc::numeric_range, "mat_exp input is not finite");
  Mat e = (t * a).exp();
  require(e.allFinite(), errc::numeric_range, "mat_exp overflowed; rescale the problem");
  return e;
}

}  // namespace odecond

#endif
