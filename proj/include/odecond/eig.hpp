#ifndef ODECOND_EIG_HPP
#define ODECOND_EIG_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "odecond/types.hpp"

namespace odecond {

// Full eigendecomposition A = V diag(values) V^{-1}.
//
// Conventions: eigenvalues sorted by decreasing real part, ties by decreasing
// imaginary part (so the omega > 0 representative of a conjugate pair comes
// first); columns of V have unit 2-norm and their largest-modulus entry made
// real positive; left_rows is V^{-1}, so left_rows.row(i) * V.col(i) = 1.
// resid is a relative backward-error estimate; generic spectral machinery
// refuses decompositions with resid above resid_threshold.
struct EigenDecomposition {
  Vec values;
  Mat right_vectors;
  Mat left_rows;
  double resid = 0.0;
  bool from_real = false;  // input matrix was real (conjugate-closed structure)
  bool supplied = false;   // structure asserted by the caller, not solved for

  // A blind eigensolve must reproduce the matrix almost to working precision.
  // A supplied diagonalization is exact by assertion; its resid only measures
  // how well the eigenvector basis can be inverted in double precision, which
  // for legitimate highly non-normal bases is far above working precision.
  static constexpr double resid_threshold = 1e-8;
  static constexpr double supplied_resid_threshold = 1e-3;
  bool reliable() const {
    return resid <= (supplied ? supplied_resid_threshold : resid_threshold);
  }
};

namespace detail {

inline void phase_normalize_columns(Mat& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    v.col(j).normalize();
    Eigen::Index k;
    v.col(j).cwiseAbs().maxCoeff(&k);
    const Complex pivot = v(k, j);
    if (std::abs(pivot) > 0.0) v.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
}

inline std::vector<Eigen::Index> eig_order(const Vec& values) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values[a].real() != values[b].real()) return values[a].real() > values[b].real();
    return values[a].imag() > values[b].imag();
  });
  return idx;
}

inline double decomposition_resid(const Mat& a, const Vec& values, const Mat& v, const Mat& w) {
  const double scale = a.norm() > 0.0 ? a.norm() : 1.0;
  const Mat recon = v * values.asDiagonal() * w;
  double r = (recon - a).norm() / scale;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    r = std::max(r, (a * v.col(i) - values[i] * v.col(i)).norm() / scale);
  }
  const Eigen::Index n = a.rows();
  r = std::max(r, (w * v - Mat::Identity(n, n)).norm() / std::sqrt(static_cast<double>(n)));
  return r;
}

inline EigenDecomposition assemble(const Mat& a, const Vec& values, const Mat& vectors,
                                   bool from_real) {
  const auto idx = eig_order(values);
  const Eigen::Index n = a.rows();
  EigenDecomposition dec;
  dec.values.resize(n);
  dec.right_vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    dec.values[j] = values[idx[static_cast<size_t>(j)]];
    dec.right_vectors.col(j) = vectors.col(idx[static_cast<size_t>(j)]);
  }
  phase_normalize_columns(dec.right_vectors);
  dec.from_real = from_real;

  Eigen::PartialPivLU<Mat> lu(dec.right_vectors);
  require(lu.determinant() != Complex(0.0, 0.0), errc::unsupported_structure,
          "eigenvector matrix is singular; matrix is defective");
  dec.left_rows = lu.inverse();

  if (from_real) {
    // The exact inverse is conjugate-closed: rows for real eigenvalues are
    // real, rows for a conjugate pair are conjugates.  Project the numerical
    // inverse back onto that structure.
    for (Eigen::Index i = 0; i < n; ++i) {
      if (dec.values[i].imag() == 0.0) {
        dec.left_rows.row(i).imag().setZero();
      } else if (i + 1 < n && dec.values[i + 1] == std::conj(dec.values[i])) {
        const Vec avg =
            0.5 * (dec.left_rows.row(i) + dec.left_rows.row(i + 1).conjugate()).transpose();
        dec.left_rows.row(i) = avg.transpose();
        dec.left_rows.row(i + 1) = avg.conjugate().transpose();
        ++i;
      }
    }
  }

  dec.resid = decomposition_resid(a, dec.values, dec.right_vectors, dec.left_rows);
  return dec;
}

}  // namespace detail

inline EigenDecomposition eig_full(const Mat& a) {
  require(a.rows() == a.cols() && a.rows() > 0, errc::bad_input, "eig_full needs a square matrix");
  require(a.allFinite(), errc::numeric_range, "eig_full input is not finite");
  Eigen::ComplexEigenSolver<Mat> solver(a);
  require(solver.info() == Eigen::Success, errc::numeric_range, "eigendecomposition failed");
  return detail::assemble(a, solver.eigenvalues(), solver.eigenvectors(), false);
}

inline EigenDecomposition eig_full(const RMat& a) {
  require(a.rows() == a.cols() && a.rows() > 0, errc::bad_input, "eig_full needs a square matrix");
  require(a.allFinite(), errc::numeric_range, "eig_full input is not finite");
  Eigen::EigenSolver<RMat> solver(a);  // keeps conjugate pairs exactly paired
  require(solver.info() == Eigen::Success, errc::numeric_range, "eigendecomposition failed");
  return detail::assemble(to_complex(a), solver.eigenvalues(), solver.eigenvectors(), true);
}

// Decomposition from a known diagonalization A = V diag(values) V^{-1}, for
// matrices whose non-normality defeats blind eigensolving.  The matrix is
// taken to be exactly the one the structure reconstructs; left rows inherit
// the double-precision inversion error of V, which resid reports.
inline EigenDecomposition eig_from_diagonalization(const Mat& v, const Vec& values) {
  require(v.rows() == v.cols() && v.rows() > 0, errc::bad_input,
          "eigenvector matrix must be square");
  require(v.rows() == values.size(), errc::bad_input,
          "one eigenvalue per eigenvector column expected");
  require(v.allFinite() && values.allFinite(), errc::numeric_range,
          "diagonalization input is not finite");
  const Mat a = v * values.asDiagonal() * Eigen::PartialPivLU<Mat>(v).inverse();
  EigenDecomposition dec = detail::assemble(a, values, v, false);
  dec.supplied = true;
  require(dec.reliable(), errc::unsupported_structure,
          "supplied eigenvector basis is too ill-conditioned to invert");
  return dec;
}

// Evaluates t -> e^{tA} (optionally damped by e^{-shift t}) from a
// decomposition; the shifted form keeps entries bounded for ratio work.
class Propagator {
 public:
  explicit Propagator(const EigenDecomposition& dec) : dec_(dec) {}

  Mat at(double t, double shift = 0.0) const {
    Vec scale(dec_.values.size());
    for (Eigen::Index i = 0; i < dec_.values.size(); ++i) {
      scale[i] = std::exp(t * (dec_.values[i] - shift));
    }
    return dec_.right_vectors * scale.asDiagonal() * dec_.left_rows;
  }

  Vec apply(double t, const Vec& y, double shift = 0.0) const {
    Vec c = dec_.left_rows * y;
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= std::exp(t * (dec_.values[i] - shift));
    return dec_.right_vectors * c;
  }

  const EigenDecomposition& decomposition() const { return dec_; }

 private:
  EigenDecomposition dec_;
};

}  // namespace odecond

#endif
