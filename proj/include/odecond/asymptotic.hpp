#ifndef ODECOND_ASYMPTOTIC_HPP
#define ODECOND_ASYMPTOTIC_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "odecond/norms.hpp"
#include "odecond/spectrum.hpp"
#include "odecond/types.hpp"

namespace odecond {

// The dominant part of e^{tA} after the decaying levels are gone:
// e^{tA} = e^{r1 t} (Q1(t) + vanishing terms), up to a known polynomial factor
// for defective rightmost eigenvalues.  Q1(t) u = sum_k e^{i omega_k t} (w_k u) v_k.
struct Q1Operator {
  enum class Kind { RealOne, ComplexPair, JordanSupplied };

  Kind kind = Kind::RealOne;
  Eigen::Index dim = 0;
  double r1 = 0.0;
  std::vector<double> omegas;
  std::vector<Vec> vs;
  std::vector<Vec> ws;

  Mat eval(double t) const {
    Mat q = Mat::Zero(dim, dim);
    for (size_t k = 0; k < omegas.size(); ++k) {
      const Complex rot = std::exp(Complex(0.0, omegas[k] * t));
      q.noalias() += rot * (vs[k] * ws[k].transpose());
    }
    return q;
  }

  Vec apply(double t, const Vec& u) const {
    Vec out = Vec::Zero(dim);
    for (size_t k = 0; k < omegas.size(); ++k) {
      const Complex rot = std::exp(Complex(0.0, omegas[k] * t));
      out += rot * row_dot(ws[k], u) * vs[k];
    }
    return out;
  }

  // Largest |w_k u| over the terms; nonzero iff the asymptotic formulas see u.
  double margin(const Vec& u) const {
    double m = 0.0;
    for (const auto& w : ws) m = std::max(m, std::abs(row_dot(w, u)));
    return m;
  }

  // Common period of the rotating terms (0 for a constant operator).
  double period() const {
    double w = 0.0;
    for (double o : omegas) w = std::max(w, std::abs(o));
    return w > 0.0 ? M_PI / w : 0.0;
  }
};

inline Q1Operator q1_build(const EigenDecomposition& dec, const SpectralPartition& part) {
  require(part.q() > 0, errc::bad_input, "empty spectral partition");
  const SpectralLevel& lv = part.levels[0];
  require(lv.kind != LevelKind::NonGeneric, errc::unsupported_structure,
          "rightmost level is not generic; supply the structure explicitly");
  Q1Operator q;
  q.dim = dec.values.size();
  q.r1 = lv.r;
  const Eigen::Index rep = lv.members[0];
  if (lv.kind == LevelKind::RealSimple) {
    q.kind = Q1Operator::Kind::RealOne;
    q.omegas = {0.0};
    q.vs = {dec.right_vectors.col(rep)};
    q.ws = {dec.left_rows.row(rep).transpose()};
  } else {
    q.kind = Q1Operator::Kind::ComplexPair;
    const double omega = dec.values[rep].imag();
    const Vec v = dec.right_vectors.col(rep);
    const Vec w = dec.left_rows.row(rep).transpose();
    q.omegas = {omega, -omega};
    q.vs = {v, v.conjugate()};
    q.ws = {w, w.conjugate()};
  }
  return q;
}

inline Mat q1_eval(const Q1Operator& q, double t) { return q.eval(t); }
inline Vec q1_apply(const Q1Operator& q, double t, const Vec& u) { return q.apply(t, u); }

// ---- oscillating factors for a conjugate-pair level ----

namespace detail {

inline void require_pair(const LevelData& ld) {
  require(ld.kind == LevelKind::ComplexPairSimple, errc::unsupported_structure,
          "oscillation factors need a conjugate-pair level");
}

inline double gamma_phase(const LevelData& ld, const RVec& u) {
  const Complex wu = row_dot(ld.w_hat, to_complex(u));
  return wu == Complex(0.0, 0.0) ? 0.0 : std::arg(wu);
}

}  // namespace detail

// Theta vector of a pair level: ( |v_hat_k| cos(omega t + alpha_k + gamma(u)) )_k
// where gamma(u) is the phase of w_hat u.  |w_hat u| * theta determines Q1(t)u
// for real u up to the common scale 2 f.
inline RVec theta_vec(const LevelData& ld, double t, const RVec& u) {
  detail::require_pair(ld);
  const double gamma = detail::gamma_phase(ld, u);
  RVec theta(ld.v_hat.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    theta[k] = std::abs(ld.v_hat[k]) * std::cos(ld.omega * t + ld.alpha[k] + gamma);
  }
  return theta;
}

// Theta matrix of a pair level: ( |v_hat_k| |w_hat_l| cos(omega t + alpha_k + beta_l) )_kl.
inline RMat theta_mat(const LevelData& ld, double t) {
  detail::require_pair(ld);
  const Eigen::Index n = ld.v_hat.size();
  RMat theta(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vk = std::abs(ld.v_hat[k]);
    for (Eigen::Index l = 0; l < n; ++l) {
      theta(k, l) = vk * std::abs(ld.w_hat[l]) * std::cos(ld.omega * t + ld.alpha[k] + ld.beta[l]);
    }
  }
  return theta;
}

inline double theta_vec_norm(const LevelData& ld, double t, const RVec& u, const Norm& nrm) {
  return vector_norm(theta_vec(ld, t, u), nrm);
}

// Induced norm of the theta matrix.  It is Re(e^{i omega t} v_hat w_hat^T), a
// real matrix of rank at most two, so the Euclidean case reduces to a 2 x 2
// eigenvalue problem; 1 and inf reduce to column and row sums.  The mean
// variants of square matrices coincide with the plain ones.
inline double theta_mat_norm(const LevelData& ld, double t, const Norm& nrm) {
  detail::require_pair(ld);
  const double e = nrm.exponent();
  if (e == 2.0) {
    const Eigen::Index n = ld.v_hat.size();
    const Complex rot = std::exp(Complex(0.0, ld.omega * t));
    Eigen::Matrix<double, Eigen::Dynamic, 2> p(n, 2);
    Eigen::Matrix<double, 2, Eigen::Dynamic> r(2, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex ev = rot * ld.v_hat[k];
      p(k, 0) = ev.real();
      p(k, 1) = -ev.imag();
    }
    r.row(0) = ld.w_hat.real().transpose();
    r.row(1) = ld.w_hat.imag().transpose();
    const Eigen::Matrix2d m = (r * r.transpose()) * (p.transpose() * p);
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return std::sqrt(std::max(0.0, tr / 2.0 + disc));
  }
  return induced_matrix_norm(theta_mat(ld, t), nrm);
}

inline LevelData rightmost_level(const RightmostData& rm) {
  LevelData ld;
  ld.kind = rm.kind;
  ld.lambda = rm.lambda1;
  ld.r = rm.r1;
  ld.omega = rm.omega1;
  ld.v = rm.v1;
  ld.w = rm.w1;
  ld.v_hat = rm.v1_hat;
  ld.w_hat = rm.w1_hat;
  ld.f = rm.f1;
  ld.alpha = rm.alpha_phases;
  ld.beta = rm.beta_phases;
  return ld;
}

// ---- asymptotic condition numbers ----

namespace detail {

inline double abs_w_hat_u(const RightmostData& rm, const RVec& u, const char* what) {
  const Vec u_hat = to_complex(normalized(u, rm.norm));
  const double m = std::abs(row_dot(rm.w1_hat, u_hat));
  require(m > 0.0, errc::rlge_failure,
          std::string(what) + " has zero component along the rightmost left eigenvector");
  return m;
}

}  // namespace detail

// Oscillation scale factor 1 / |w_hat^(1) y_hat|; the directional form scales
// by |w_hat^(1) z_hat|.  For a real rightmost level this already is the
// (constant) asymptotic condition number.
inline double osf(const RightmostData& rm, const RVec& y0) {
  return 1.0 / detail::abs_w_hat_u(rm, y0, "y0");
}

inline double osf(const RightmostData& rm, const RVec& y0, const RVec& z0) {
  const Vec z_hat = to_complex(normalized(z0, rm.norm));
  return std::abs(row_dot(rm.w1_hat, z_hat)) / detail::abs_w_hat_u(rm, y0, "y0");
}

// Oscillating term OT(t, y0) (worst direction) and OT(t, y0, z0) (given
// direction) of a conjugate-pair rightmost level; periodic with period pi/omega.
inline double ot(const RightmostData& rm, double t, const RVec& y0) {
  const LevelData ld = rightmost_level(rm);
  detail::require_pair(ld);
  detail::abs_w_hat_u(rm, y0, "y0");
  return theta_mat_norm(ld, t, rm.norm) / theta_vec_norm(ld, t, normalized(y0, rm.norm), rm.norm);
}

inline double ot(const RightmostData& rm, double t, const RVec& y0, const RVec& z0) {
  const LevelData ld = rightmost_level(rm);
  detail::require_pair(ld);
  detail::abs_w_hat_u(rm, y0, "y0");
  detail::abs_w_hat_u(rm, z0, "z0");
  return theta_vec_norm(ld, t, normalized(z0, rm.norm), rm.norm) /
         theta_vec_norm(ld, t, normalized(y0, rm.norm), rm.norm);
}

// Asymptotic condition numbers.  Real rightmost level: constant in t.
// Conjugate-pair level: OSF * OT.
inline double k_inf_directional(const RightmostData& rm, double t, const RVec& y0,
                                const RVec& z0) {
  if (rm.kind == LevelKind::RealSimple) return osf(rm, y0, z0);
  return osf(rm, y0, z0) * ot(rm, t, y0, z0);
}

inline double k_inf_worst(const RightmostData& rm, double t, const RVec& y0) {
  if (rm.kind == LevelKind::RealSimple) return osf(rm, y0);
  return osf(rm, y0) * ot(rm, t, y0);
}

// Asymptotic condition numbers from an explicit Q1, e.g. one supplied for a
// defective rightmost eigenvalue.  Any vector norm; the worst form uses the
// induced matrix norm, so p in {1, 2, inf} and mean variants.
inline double k_inf_directional(const Q1Operator& q1, double t, const Vec& y0, const Vec& z0,
                                const Norm& nrm) {
  const double den = vector_norm(q1.apply(t, normalized(y0, nrm)), nrm);
  require(den > 0.0, errc::rlge_failure,
          "y0 has zero component along the dominant spectral projection");
  return vector_norm(q1.apply(t, normalized(z0, nrm)), nrm) / den;
}

inline double k_inf_worst(const Q1Operator& q1, double t, const Vec& y0, const Norm& nrm) {
  const double den = vector_norm(q1.apply(t, normalized(y0, nrm)), nrm);
  require(den > 0.0, errc::rlge_failure,
          "y0 has zero component along the dominant spectral projection");
  return induced_matrix_norm(q1.eval(t), nrm) / den;
}

// ---- Euclidean geometry of the rightmost pair ----

// Euclidean-norm invariants of a conjugate-pair rightmost level.  v_hat and
// w_hat are the plain 2-norm normalizations here (for the mean 2-norm the
// oscillation quantities are unchanged).  V1 = |v_hat^T v_hat| and
// W1 = |w_hat w_hat^T| (plain transposes) lie in [0, 1); R1 stacks Re w_hat
// over Im w_hat and has singular values sigma1 = sqrt((1+W1)/2) >=
// mu1 = sqrt((1-W1)/2).  The image of the real unit sphere under u -> w_hat u
// is the ellipse with semi-axes sigma1 alpha1 and mu1 beta1 (boundary plus
// interior for n > 2): w_hat u = (sigma1 c1(u) + i mu1 d1(u)) * e^{i theta1}
// with c1, d1 the components of u along the right singular vectors of R1.
struct EuclidGeometry {
  double V1 = 0.0;
  double W1 = 0.0;
  Eigen::Matrix<double, 2, Eigen::Dynamic> R1;
  double sigma1 = 0.0, mu1 = 0.0;
  Eigen::Vector2d alpha1, beta1;
  RVec right_sv1, right_sv2;
  double theta1 = 0.0;  // phase of the major semi-axis as a complex number

  double c1(const RVec& u) const { return right_sv1.dot(u) / u.norm(); }
  double d1(const RVec& u) const { return right_sv2.dot(u) / u.norm(); }

  Complex w_image(const RVec& u) const {
    const Complex axis = std::exp(Complex(0.0, theta1));
    return axis * Complex(sigma1 * c1(u), mu1 * d1(u));
  }

  double gamma(const RVec& u) const { return std::arg(w_image(u)); }
};

inline EuclidGeometry euclid_geometry(const RightmostData& rm) {
  require(rm.kind == LevelKind::ComplexPairSimple, errc::unsupported_structure,
          "Euclidean pair geometry needs a conjugate-pair rightmost level");
  require(rm.norm.exponent() == 2.0, errc::unsupported_structure,
          "Euclidean pair geometry needs the (mean) 2-norm");
  const Vec v_hat = rm.v1 / rm.v1.norm();
  const Vec w_hat = rm.w1 / rm.w1.norm();

  EuclidGeometry g;
  g.V1 = std::abs(row_dot(v_hat, v_hat));
  g.W1 = std::abs(row_dot(w_hat, w_hat));
  g.R1.resize(2, w_hat.size());
  g.R1.row(0) = w_hat.real().transpose();
  g.R1.row(1) = w_hat.imag().transpose();

  Eigen::JacobiSVD<Eigen::Matrix<double, 2, Eigen::Dynamic>> svd(
      g.R1, Eigen::ComputeFullU | Eigen::ComputeThinV);
  g.sigma1 = svd.singularValues()(0);
  g.mu1 = svd.singularValues()(1);
  g.alpha1 = svd.matrixU().col(0);
  g.beta1 = svd.matrixU().col(1);
  g.right_sv1 = svd.matrixV().col(0);
  g.right_sv2 = svd.matrixV().col(1);
  // Orient the minor axis a quarter turn counterclockwise from the major one,
  // so that w_hat u = (sigma1 c1 + i mu1 d1) e^{i theta1}.
  if (g.beta1(0) * -g.alpha1(1) + g.beta1(1) * g.alpha1(0) < 0.0) {
    g.beta1 = -g.beta1;
    g.right_sv2 = -g.right_sv2;
  }
  g.theta1 = std::atan2(g.alpha1(1), g.alpha1(0));
  return g;
}

// ---- bounds for the oscillating term ----

// Worst-case envelope of OT(t, y0) over initial values: for every y0 and t,
// a_min <= OT(t, y0) <= a_max, attained iff y0 is orthogonal to the first
// right singular vector of R1.
inline double ot_amin(double v1, double w1) {
  if (v1 <= w1) return std::sqrt((1.0 + w1) * (1.0 - v1) / (2.0 * (1.0 + v1)));
  return std::sqrt((1.0 - w1) / 2.0);
}

inline double ot_amax(double v1, double w1) {
  const double den = std::max(1.0 - v1, 1e-300);
  return std::sqrt((1.0 + w1) * (1.0 + v1) / (2.0 * den));
}

struct OtBounds {
  double lo = 0.0;
  double hi = 0.0;
  bool attained = false;  // extremes reached (to tolerance) at some t
};

namespace detail {

// Distance of x to the nearest odd multiple of pi/2, modulo pi.
inline double odd_quarter_turn_distance(double x) {
  const double m = std::remainder(x - M_PI / 2.0, M_PI);
  return std::abs(m);
}

}  // namespace detail

// Bounds for OT(t, y0) over t: [a_min, a_max], attained iff the phase of
// w_hat y0 sits a quarter turn from the major axis, i.e. c1(y0) = 0.
inline OtBounds ot_bounds(const EuclidGeometry& g, const RVec& y0,
                          double attain_tol = 1e-6) {
  OtBounds b;
  b.lo = ot_amin(g.V1, g.W1);
  b.hi = ot_amax(g.V1, g.W1);
  b.attained = detail::odd_quarter_turn_distance(g.gamma(y0) - g.theta1) <= attain_tol;
  return b;
}

// Bounds for OT(t, y0, z0) over t: sqrt((1 -+ V1)/(1 +- V1)), attained iff the
// phases of w_hat z0 and w_hat y0 differ by an odd multiple of pi/2.
inline OtBounds ot_bounds(const EuclidGeometry& g, const RVec& y0, const RVec& z0,
                          double attain_tol = 1e-6) {
  OtBounds b;
  const double den = std::max(1.0 - g.V1, 1e-300);
  b.lo = std::sqrt((1.0 - g.V1) / (1.0 + g.V1));
  b.hi = std::sqrt((1.0 + g.V1) / den);
  b.attained = detail::odd_quarter_turn_distance(g.gamma(z0) - g.gamma(y0)) <= attain_tol;
  return b;
}

// ---- extrema of periodic factors over one period ----

struct Extrema {
  double min = 0.0, max = 0.0;
  double argmin = 0.0, argmax = 0.0;
};

namespace detail {

// Golden-section refinement of a smooth extremum bracketed on [lo, hi].
template <typename F>
double golden_refine(F&& f, double lo, double hi, bool maximize, int iters = 80) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++i) {
    const bool keep_left = maximize ? (f1 > f2) : (f1 < f2);
    if (keep_left) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

template <typename F>
Extrema periodic_extrema(F&& f, double period, int samples = 720) {
  Extrema e;
  if (period <= 0.0) {
    e.min = e.max = f(0.0);
    return e;
  }
  const double step = period / samples;
  int imin = 0, imax = 0;
  double fmin = f(0.0), fmax = fmin;
  for (int i = 1; i < samples; ++i) {
    const double v = f(i * step);
    if (v < fmin) { fmin = v; imin = i; }
    if (v > fmax) { fmax = v; imax = i; }
  }
  const double tmin = golden_refine(f, (imin - 1) * step, (imin + 1) * step, false);
  const double tmax = golden_refine(f, (imax - 1) * step, (imax + 1) * step, true);
  const double gmin = f(tmin), gmax = f(tmax);
  if (gmin <= fmin) { e.min = gmin; e.argmin = tmin; } else { e.min = fmin; e.argmin = imin * step; }
  if (gmax >= fmax) { e.max = gmax; e.argmax = tmax; } else { e.max = fmax; e.argmax = imax * step; }
  return e;
}

}  // namespace detail

// Extrema of OT(t, y0) (or OT(t, y0, z0)) over one period.
inline Extrema ot_extrema(const RightmostData& rm, const RVec& y0) {
  const double period = rm.omega1 > 0.0 ? M_PI / rm.omega1 : 0.0;
  return detail::periodic_extrema([&](double t) { return ot(rm, t, y0); }, period);
}

inline Extrema ot_extrema(const RightmostData& rm, const RVec& y0, const RVec& z0) {
  const double period = rm.omega1 > 0.0 ? M_PI / rm.omega1 : 0.0;
  return detail::periodic_extrema([&](double t) { return ot(rm, t, y0, z0); }, period);
}

// Largest asymptotic condition number over all t >= 0.
inline double k_inf_sup(const RightmostData& rm, const RVec& y0) {
  if (rm.kind == LevelKind::RealSimple) return osf(rm, y0);
  return osf(rm, y0) * ot_extrema(rm, y0).max;
}

}  // namespace odecond

#endif
