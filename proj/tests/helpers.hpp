#ifndef ODECOND_TESTS_HELPERS_HPP
#define ODECOND_TESTS_HELPERS_HPP

#include <cmath>
#include <vector>

#include "odecond/eig.hpp"
#include "odecond/norms.hpp"
#include "odecond/rng.hpp"
#include "odecond/spectrum.hpp"
#include "odecond/types.hpp"

namespace testutil {

using namespace odecond;

// Truncated-Taylor exponential with scaling and squaring: 200 series terms on
// A * t / 2^k, then k squarings.  Slow and simple on purpose; reference only.
inline Mat taylor_expm(const Mat& a, double t) {
  Mat b = a * t;
  int k = 0;
  while (b.cwiseAbs().maxCoeff() > 0.5 && k < 60) {
    b /= 2.0;
    ++k;
  }
  Mat sum = Mat::Identity(a.rows(), a.cols());
  Mat term = sum;
  for (int j = 1; j <= 200; ++j) {
    term = Mat(term * b) / static_cast<double>(j);
    sum += term;
  }
  for (int j = 0; j < k; ++j) sum = Mat(sum * sum);
  return sum;
}

inline Mat taylor_expm(const RMat& a, double t) { return taylor_expm(Mat(a.cast<Complex>()), t); }

// Exhaustive sign-pattern maximum of |sum_i s_i w_i| over s in {-1,+1}^n.
// This is the exact dual infinity-norm of the row w over the real field.
inline double dual_inf_by_enumeration(const Vec& w) {
  const int n = static_cast<int>(w.size());
  double best = 0.0;
  for (long mask = 0; mask < (1L << n); ++mask) {
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) s += ((mask >> i) & 1) ? w[i] : -w[i];
    best = std::max(best, std::abs(s));
  }
  return best;
}

struct RandomProblem {
  RMat a;
  RVec y0;
  EigenDecomposition dec;
  SpectralPartition part;
};

// Gaussian instance with a reliable decomposition and a generic rightmost
// level of the requested kind (or either when `kind` is NonGeneric).
inline RandomProblem random_generic(Eigen::Index n, Rng& rng,
                                    LevelKind kind = LevelKind::NonGeneric) {
  for (int tries = 0; tries < 1000; ++tries) {
    RandomProblem p;
    p.a = rng.gaussian_matrix(n, n);
    p.y0 = rng.gaussian_vector(n);
    p.dec = eig_full(p.a);
    if (!p.dec.reliable()) continue;
    p.part = partition_spectrum(p.dec);
    const LevelKind k0 = p.part.levels.front().kind;
    if (k0 == LevelKind::NonGeneric) continue;
    if (kind != LevelKind::NonGeneric && k0 != kind) continue;
    return p;
  }
  throw std::runtime_error("no generic random instance found");
}

// Diagonalizable instance with a prescribed spectrum and a random
// well-conditioned basis; used where the tests need to pin spectral gaps.
inline RandomProblem with_spectrum(const Vec& values, Rng& rng) {
  const Eigen::Index n = values.size();
  for (int tries = 0; tries < 100; ++tries) {
    // Conjugate-closed basis: real columns for real eigenvalues, conjugate
    // column pairs for conjugate eigenvalue pairs (values must be ordered so
    // that pair members are adjacent, omega > 0 first).
    Mat v(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (values[j].imag() > 0.0 && j + 1 < n && values[j + 1] == std::conj(values[j])) {
        const RVec re = rng.gaussian_vector(n), im = rng.gaussian_vector(n);
        v.col(j) = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
        v.col(j + 1) = v.col(j).conjugate();
      } else if (values[j].imag() == 0.0) {
        v.col(j) = rng.gaussian_vector(n).cast<Complex>();
      }
    }
    Eigen::JacobiSVD<Mat> svd(v);
    if (svd.singularValues()(0) > 1e6 * svd.singularValues()(n - 1)) continue;
    RandomProblem p;
    p.dec = eig_from_diagonalization(v, values);
    const Mat a = v * values.asDiagonal() * Mat(Eigen::PartialPivLU<Mat>(v).inverse());
    p.a = a.real();
    p.y0 = rng.gaussian_vector(n);
    p.part = partition_spectrum(p.dec);
    return p;
  }
  throw std::runtime_error("no well-conditioned basis found");
}

}  // namespace testutil

#endif
