#ifndef ODECOND_CONDITION_HPP
#define ODECOND_CONDITION_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "odecond/asymptotic.hpp"
#include "odecond/eig.hpp"
#include "odecond/matexp.hpp"
#include "odecond/norms.hpp"
#include "odecond/types.hpp"

namespace odecond {

// Relative-error magnification at time t along the direction z0 of the initial
// perturbation: K = (||E z0|| ||y0||) / (||z0|| ||E y0||) with E = e^{tA}.
// Written as a ratio of products so that K(0) is exactly one.
inline double k_directional(const Mat& etA, const Vec& y0, const Vec& z0, const Norm& nrm) {
  const double ny = vector_norm(y0, nrm);
  const double nz = vector_norm(z0, nrm);
  require(ny > 0.0 && nz > 0.0, errc::bad_input, "y0 and z0 must be nonzero");
  const double den = nz * vector_norm(Vec(etA * y0), nrm);
  require(den > 0.0, errc::numeric_range, "e^{tA} y0 vanished");
  return vector_norm(Vec(etA * z0), nrm) * ny / den;
}

inline double k_directional(const RMat& etA, const RVec& y0, const RVec& z0, const Norm& nrm) {
  return k_directional(to_complex(etA), to_complex(y0), to_complex(z0), nrm);
}

// Worst-case magnification over all perturbation directions:
// K = ||E|| ||y0|| / ||E y0||.
inline double k_worst(const Mat& etA, const Vec& y0, const Norm& nrm) {
  const double ny = vector_norm(y0, nrm);
  require(ny > 0.0, errc::bad_input, "y0 must be nonzero");
  const double den = vector_norm(Vec(etA * y0), nrm);
  require(den > 0.0, errc::numeric_range, "e^{tA} y0 vanished");
  return induced_matrix_norm(etA, nrm) * ny / den;
}

inline double k_worst(const RMat& etA, const RVec& y0, const Norm& nrm) {
  const double ny = vector_norm(y0, nrm);
  require(ny > 0.0, errc::bad_input, "y0 must be nonzero");
  const double den = vector_norm(RVec(etA * y0), nrm);
  require(den > 0.0, errc::numeric_range, "e^{tA} y0 vanished");
  return induced_matrix_norm(etA, nrm) * ny / den;
}

// Exact relative error of the perturbed solution along a time grid:
// delta(t) = ||ytilde(t) - y(t)|| / ||y(t)||, with the solution norms kept
// alongside for threshold studies.
struct DeltaCurve {
  std::vector<double> times;
  std::vector<double> delta;
  std::vector<double> abs_err;   // ||ytilde(t) - y(t)||
  std::vector<double> norm_y;    // ||y(t)||
  std::vector<double> norm_ytilde;
  double eps = 0.0;              // initial relative error delta(0)
};

inline DeltaCurve delta_curve(const Propagator& prop, const Vec& y0, const Vec& y0_tilde,
                              const std::vector<double>& times, const Norm& nrm) {
  require(vector_norm(y0, nrm) > 0.0, errc::bad_input, "y0 must be nonzero");
  DeltaCurve c;
  c.times = times;
  c.delta.reserve(times.size());
  c.abs_err.reserve(times.size());
  c.norm_y.reserve(times.size());
  c.norm_ytilde.reserve(times.size());
  c.eps = vector_norm(Vec(y0_tilde - y0), nrm) / vector_norm(y0, nrm);
  for (double t : times) {
    const Vec y = prop.apply(t, y0);
    const Vec yt = prop.apply(t, y0_tilde);
    const double ny = vector_norm(y, nrm);
    const double err = vector_norm(Vec(yt - y), nrm);
    require(ny > 0.0, errc::numeric_range, "e^{tA} y0 vanished on the grid");
    c.delta.push_back(err / ny);
    c.abs_err.push_back(err);
    c.norm_y.push_back(ny);
    c.norm_ytilde.push_back(vector_norm(yt, nrm));
  }
  return c;
}

inline DeltaCurve delta_curve(const RMat& a, const RVec& y0, const RVec& y0_tilde,
                              const std::vector<double>& times, const Norm& nrm) {
  const Propagator prop(eig_full(a));
  return delta_curve(prop, to_complex(y0), to_complex(y0_tilde), times, nrm);
}

// Componentwise view of one perturbed/unperturbed pair of states.  The
// normwise error bounds every componentwise error through the magnification
// ratio ||y|| / |y_l|:  delta_l <= ratio_l * delta.
struct ComponentwiseErrors {
  double normwise = 0.0;          // ||ytilde - y|| / ||y||
  RVec componentwise;             // |ytilde_l - y_l| / |y_l| (inf where y_l = 0)
  RVec ratio;                     // ||y|| / |y_l|
  RVec bound;                     // ratio_l * normwise
};

inline ComponentwiseErrors componentwise_errors(const Vec& y, const Vec& y_tilde,
                                                const Norm& nrm) {
  const double ny = vector_norm(y, nrm);
  require(ny > 0.0, errc::bad_input, "y must be nonzero");
  ComponentwiseErrors r;
  r.normwise = vector_norm(Vec(y_tilde - y), nrm) / ny;
  const Eigen::Index n = y.size();
  r.componentwise.resize(n);
  r.ratio.resize(n);
  r.bound.resize(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    const double yl = std::abs(y[l]);
    const double dl = std::abs(y_tilde[l] - y[l]);
    r.componentwise[l] = yl > 0.0 ? dl / yl : (dl > 0.0 ? inf : 0.0);
    r.ratio[l] = yl > 0.0 ? ny / yl : inf;
    r.bound[l] = r.ratio[l] * r.normwise;
  }
  return r;
}

inline ComponentwiseErrors componentwise_errors(const RVec& y, const RVec& y_tilde,
                                                const Norm& nrm) {
  return componentwise_errors(to_complex(y), to_complex(y_tilde), nrm);
}

// Bound for the relative error of the transient growth ("hump") height:
// | max_t ||ytilde|| / max_t ||y|| - 1 | <= E := max_t K(t, y0) * eps,
// valid whenever E < 1.  Maxima are taken over the supplied grid.
struct TransientGrowthBound {
  double eps = 0.0;
  double max_k = 0.0;          // max over the grid of K(t, y0)
  double bound = 0.0;          // max_k * eps
  bool valid = false;          // bound < 1
  double max_norm_y = 0.0;
  double argmax_y = 0.0;
  double max_norm_ytilde = 0.0;
  double argmax_ytilde = 0.0;
  double realized = 0.0;       // max ||ytilde|| / max ||y|| - 1
};

inline TransientGrowthBound transient_growth_bound(const RMat& a, const RVec& y0,
                                                   const RVec& y0_tilde,
                                                   const std::vector<double>& times,
                                                   const Norm& nrm) {
  require(!times.empty(), errc::bad_input, "empty time grid");
  const Propagator prop(eig_full(a));
  const Vec y0c = to_complex(y0);
  const Vec yt0c = to_complex(y0_tilde);
  TransientGrowthBound r;
  const double ny0 = vector_norm(y0, nrm);
  require(ny0 > 0.0, errc::bad_input, "y0 must be nonzero");
  r.eps = vector_norm(RVec(y0_tilde - y0), nrm) / ny0;
  for (double t : times) {
    const Mat e = prop.at(t);
    const double k = k_worst(e, y0c, nrm);
    if (k > r.max_k) r.max_k = k;
    const double n_y = vector_norm(Vec(e * y0c), nrm);
    const double n_yt = vector_norm(Vec(e * yt0c), nrm);
    if (n_y > r.max_norm_y) { r.max_norm_y = n_y; r.argmax_y = t; }
    if (n_yt > r.max_norm_ytilde) { r.max_norm_ytilde = n_yt; r.argmax_ytilde = t; }
  }
  r.bound = r.max_k * r.eps;
  r.valid = r.bound < 1.0;
  r.realized = r.max_norm_ytilde / r.max_norm_y - 1.0;
  return r;
}

// First time in [t0, t1] where ||e^{tA} y0|| drops to `level`: coarse scan for
// the first bracketing interval, then bisection.  NaN when the norm stays
// above the level on the whole window.
inline double first_norm_drop(const Propagator& prop, const Vec& y0, const Norm& nrm,
                              double level, double t0, double t1, int grid = 4096,
                              double tol = 1e-10) {
  require(grid >= 2 && t1 > t0, errc::bad_input, "need grid >= 2 and t1 > t0");
  const auto g = [&](double t) { return vector_norm(prop.apply(t, y0), nrm); };
  if (g(t0) <= level) return t0;
  const double step = (t1 - t0) / grid;
  double lo = t0, hi = t0;
  bool found = false;
  for (int k = 1; k <= grid; ++k) {
    hi = (k == grid) ? t1 : t0 + k * step;
    if (g(hi) <= level) { found = true; break; }
    lo = hi;
  }
  if (!found) return std::numeric_limits<double>::quiet_NaN();
  while (hi - lo > tol * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) <= level ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Uniform grid helpers.  grid_times(t0, t1, points) puts `points` equally
// spaced samples on [t0, t1] including both ends (points >= 2).
inline std::vector<double> grid_times(double t0, double t1, int points) {
  require(points >= 2 && t1 > t0, errc::bad_input, "need points >= 2 and t1 > t0");
  std::vector<double> ts(points);
  const double step = (t1 - t0) / (points - 1);
  for (int i = 0; i < points; ++i) ts[i] = t0 + i * step;
  ts.back() = t1;
  return ts;
}

// step_times(step, points) = {step, 2 step, ..., points*step}; zero excluded.
inline std::vector<double> step_times(double step, int points) {
  require(points >= 1 && step > 0.0, errc::bad_input, "need points >= 1 and step > 0");
  std::vector<double> ts(points);
  for (int i = 0; i < points; ++i) ts[i] = (i + 1) * step;
  return ts;
}

}  // namespace odecond

#endif
