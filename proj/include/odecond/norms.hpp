#ifndef ODECOND_NORMS_HPP
#define ODECOND_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "odecond/types.hpp"

namespace odecond {

// Vector norm specification: the p-norms p in [1, inf] plus the mean p-norm,
// (sum (1/n) |x_i|^p)^(1/p) = n^(-1/p) * pnorm(x), which keeps norms of
// n-vectors with O(1) entries at O(1) regardless of n.
struct Norm {
  enum class Kind { P1, P2, PInf, MeanP };

  Kind kind = Kind::P2;
  double p = 2.0;  // exponent; inf is represented by Kind::PInf

  static Norm p1() { return {Kind::P1, 1.0}; }
  static Norm p2() { return {Kind::P2, 2.0}; }
  static Norm pinf() { return {Kind::PInf, inf}; }
  static Norm mean_p(double p) {
    require(p >= 1.0, errc::bad_input, "mean-p norm needs p >= 1");
    if (std::isinf(p)) return pinf();  // the mean inf-norm is the inf-norm
    return {Kind::MeanP, p};
  }

  double exponent() const { return kind == Kind::PInf ? inf : p; }
  bool is_mean() const { return kind == Kind::MeanP; }

  // Multiplier applied to the plain p-norm of an n-vector.
  double mean_scale(Eigen::Index n) const {
    if (!is_mean()) return 1.0;
    return std::pow(static_cast<double>(n), -1.0 / p);
  }

  double dual_exponent() const {
    double e = exponent();
    if (e == 1.0) return inf;
    if (std::isinf(e)) return 1.0;
    return e / (e - 1.0);
  }

  std::string str() const {
    switch (kind) {
      case Kind::P1: return "1";
      case Kind::P2: return "2";
      case Kind::PInf: return "inf";
      case Kind::MeanP: return "mean-p:" + std::to_string(p);
    }
    return "?";
  }
};

enum class Field { Real, Complex };

namespace detail {

// Overflow-safe (sum |x_i|^p)^(1/p).
template <typename Derived>
double plain_p_norm(const Eigen::MatrixBase<Derived>& x, double p) {
  if (x.size() == 0) return 0.0;
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

}  // namespace detail

template <typename Derived>
double vector_norm(const Eigen::MatrixBase<Derived>& x, const Norm& nrm) {
  return nrm.mean_scale(x.size()) * detail::plain_p_norm(x, nrm.exponent());
}

template <typename Derived>
auto normalized(const Eigen::MatrixBase<Derived>& x, const Norm& nrm) {
  const double s = vector_norm(x, nrm);
  require(s > 0.0, errc::bad_input, "cannot normalize a zero vector");
  return (x / s).eval();
}

namespace detail {

inline bool numerically_real(const Vec& w, double tol = 1e-13) {
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  return w.imag().cwiseAbs().maxCoeff() <= tol * scale;
}

// max over real unit-infinity-ball u of |w u|, i.e. max over sign patterns s
// of |sum_i s_i w_i|.  Writing |z| = max_phi Re(e^{-i phi} z) turns this into
// max_phi sum_i |Re(e^{-i phi} w_i)|, a piecewise-sinusoidal function of phi
// whose pieces are |c cos phi + d sin phi|; the exact maximum is attained at a
// piece's interior stationary point or at a breakpoint.
inline double real_dual_inf(const Vec& w) {
  const Eigen::Index n = w.size();
  if (n == 0) return 0.0;
  std::vector<double> breaks;
  breaks.reserve(static_cast<size_t>(n) + 2);
  breaks.push_back(0.0);
  breaks.push_back(M_PI);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = w[i].real(), b = w[i].imag();
    if (a == 0.0 && b == 0.0) continue;
    // Re(e^{-i phi} w_i) = a cos phi + b sin phi vanishes at phi0 (mod pi).
    double phi0 = std::atan2(-a, b);
    phi0 = std::fmod(phi0, M_PI);
    if (phi0 < 0.0) phi0 += M_PI;
    breaks.push_back(phi0);
  }
  std::sort(breaks.begin(), breaks.end());

  auto value = [&](double phi) {
    const Complex e(std::cos(phi), -std::sin(phi));
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::abs((e * w[i]).real());
    return s;
  };

  double best = 0.0;
  for (size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k], hi = breaks[k + 1];
    best = std::max({best, value(lo), value(hi)});
    if (hi - lo <= 1e-15) continue;
    // Fixed signs inside the piece: evaluate at the midpoint to read them off,
    // then maximize c cos phi + d sin phi analytically.
    const double mid = 0.5 * (lo + hi);
    const Complex em(std::cos(mid), -std::sin(mid));
    double c = 0.0, d = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sgn = (em * w[i]).real() >= 0.0 ? 1.0 : -1.0;
      c += sgn * w[i].real();
      d += sgn * w[i].imag();
    }
    const double phi_star = std::atan2(d, c);
    for (double cand : {phi_star, phi_star + M_PI, phi_star - M_PI, phi_star + 2 * M_PI}) {
      if (cand > lo && cand < hi) best = std::max(best, value(cand));
    }
  }
  return best;
}

inline double sigma_max_2xn(const Eigen::Matrix<double, 2, Eigen::Dynamic>& r) {
  // Largest singular value of a 2 x n real matrix from its 2 x 2 Gram matrix.
  const Eigen::Matrix2d g = r * r.transpose();
  const double tr = g(0, 0) + g(1, 1);
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return std::sqrt(std::max(0.0, tr / 2.0 + disc));
}

}  // namespace detail

// Largest |w u| over unit vectors u in the given norm, with u ranging over the
// complex or the real field.  w is a row vector written as a Vec; w u means
// sum_i w_i u_i with no conjugation.
inline double dual_row_norm(const Vec& w, const Norm& nrm, Field field) {
  if (w.size() == 0) return 0.0;
  // Unit ball of the mean p-norm is the plain p-ball blown up by n^{1/p}.
  const double scale = 1.0 / nrm.mean_scale(w.size());
  if (field == Field::Complex || detail::numerically_real(w)) {
    Vec ww = w;
    if (field == Field::Real && !detail::numerically_real(w, 0.0)) ww.imag().setZero();
    return scale * detail::plain_p_norm(ww, nrm.dual_exponent());
  }
  const double e = nrm.exponent();
  if (e == 2.0) {
    Eigen::Matrix<double, 2, Eigen::Dynamic> r(2, w.size());
    r.row(0) = w.real().transpose();
    r.row(1) = w.imag().transpose();
    return scale * detail::sigma_max_2xn(r);
  }
  if (e == 1.0) return scale * w.cwiseAbs().maxCoeff();
  if (std::isinf(e)) return scale * detail::real_dual_inf(w);
  fail(errc::unsupported_structure,
       "real-field dual norm of a genuinely complex row is only available for p in {1, 2, inf}");
}

inline double dual_row_norm(const RVec& w, const Norm& nrm, Field field) {
  return dual_row_norm(to_complex(w), nrm, field);
}

// Operator norm induced by the vector norm; p in {1, 2, inf} and their mean
// variants.  For an m x n matrix the mean variant rescales by m^{-1/p} n^{1/p}.
inline double induced_matrix_norm(const Mat& m, const Norm& nrm) {
  const double scale =
      nrm.mean_scale(m.rows()) / nrm.mean_scale(m.cols());
  const double e = nrm.exponent();
  if (e == 1.0) return scale * m.cwiseAbs().colwise().sum().maxCoeff();
  if (std::isinf(e)) return scale * m.cwiseAbs().rowwise().sum().maxCoeff();
  if (e == 2.0) {
    if (m.rows() <= 16 && m.cols() <= 16) {
      Eigen::JacobiSVD<Mat> svd(m);
      return scale * svd.singularValues()(0);
    }
    Eigen::BDCSVD<Mat> svd(m);
    return scale * svd.singularValues()(0);
  }
  fail(errc::unsupported_structure,
       "induced matrix norm is only available for p in {1, 2, inf} and their mean variants");
}

inline double induced_matrix_norm(const RMat& m, const Norm& nrm) {
  const double scale = nrm.mean_scale(m.rows()) / nrm.mean_scale(m.cols());
  const double e = nrm.exponent();
  if (e == 1.0) return scale * m.cwiseAbs().colwise().sum().maxCoeff();
  if (std::isinf(e)) return scale * m.cwiseAbs().rowwise().sum().maxCoeff();
  if (e == 2.0) {
    if (m.rows() <= 16 && m.cols() <= 16) {
      Eigen::JacobiSVD<RMat> svd(m);
      return scale * svd.singularValues()(0);
    }
    Eigen::BDCSVD<RMat> svd(m);
    return scale * svd.singularValues()(0);
  }
  fail(errc::unsupported_structure,
       "induced matrix norm is only available for p in {1, 2, inf} and their mean variants");
}

}  // namespace odecond

#endif
