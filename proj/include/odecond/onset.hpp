#ifndef ODECOND_ONSET_HPP
#define ODECOND_ONSET_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "odecond/asymptotic.hpp"
#include "odecond/norms.hpp"
#include "odecond/spectrum.hpp"
#include "odecond/types.hpp"

namespace odecond {

namespace detail {

inline std::vector<LevelData> all_levels(const EigenDecomposition& dec,
                                         const SpectralPartition& part, const Norm& nrm) {
  std::vector<LevelData> lds;
  lds.reserve(part.q());
  for (Eigen::Index j = 0; j < part.q(); ++j) lds.push_back(level_data(dec, part, j, nrm));
  return lds;
}

// Oscillation factor G_j(t, u) coupling level j to the rightmost level, and
// its worst-direction counterpart G_j(t).  Four cases by the kinds of the two
// levels; pair levels contribute their theta norms.
inline double g_directional(const LevelData& l1, const LevelData& lj, double t, const RVec& u_hat,
                            const Norm& nrm) {
  const bool p1 = l1.kind == LevelKind::ComplexPairSimple;
  const bool pj = lj.kind == LevelKind::ComplexPairSimple;
  if (!p1 && !pj) return 1.0;
  if (!p1 && pj) return 2.0 * theta_vec_norm(lj, t, u_hat, nrm);
  if (p1 && !pj) return 1.0 / (2.0 * theta_vec_norm(l1, t, u_hat, nrm));
  return theta_vec_norm(lj, t, u_hat, nrm) / theta_vec_norm(l1, t, u_hat, nrm);
}

inline double g_worst(const LevelData& l1, const LevelData& lj, double t, const Norm& nrm) {
  const bool p1 = l1.kind == LevelKind::ComplexPairSimple;
  const bool pj = lj.kind == LevelKind::ComplexPairSimple;
  if (!p1 && !pj) return 1.0;
  if (!p1 && pj) return 2.0 * theta_mat_norm(lj, t, nrm);
  if (p1 && !pj) return 1.0 / (2.0 * theta_mat_norm(l1, t, nrm));
  return theta_mat_norm(lj, t, nrm) / theta_mat_norm(l1, t, nrm);
}

}  // namespace detail

// Residual weight of the decaying levels at time t, seen from direction u:
// eps(t, u) = sum_{j >= 2} e^{(r_j - r_1) t} (f_j / f_1)
//             (|w_hat^(j) u| / |w_hat^(1) u|) G_j(t, u),
// and the worst-direction form with the directional factors replaced by their
// maxima.  K(t, ...) agrees with K_inf(t, ...) with precision
// (eps(t, z) + eps(t, y)) / (1 - eps(t, y)) once eps(t, y) < 1.
inline double eps_directional(const std::vector<LevelData>& lds, double t, const RVec& u,
                              const Norm& nrm) {
  const RVec u_hat = normalized(u, nrm);
  const LevelData& l1 = lds.front();
  const double w1u = std::abs(row_dot(l1.w_hat, to_complex(u_hat)));
  require(w1u > 0.0, errc::rlge_failure,
          "direction has zero component along the rightmost left eigenvector");
  double s = 0.0;
  for (size_t j = 1; j < lds.size(); ++j) {
    const LevelData& lj = lds[j];
    const double wju = std::abs(row_dot(lj.w_hat, to_complex(u_hat)));
    if (wju == 0.0) continue;
    s += std::exp((lj.r - l1.r) * t) * (lj.f / l1.f) * (wju / w1u) *
         detail::g_directional(l1, lj, t, u_hat, nrm);
  }
  return s;
}

inline double eps_worst(const std::vector<LevelData>& lds, double t, const Norm& nrm) {
  const LevelData& l1 = lds.front();
  double s = 0.0;
  for (size_t j = 1; j < lds.size(); ++j) {
    const LevelData& lj = lds[j];
    s += std::exp((lj.r - l1.r) * t) * (lj.f / l1.f) * detail::g_worst(l1, lj, t, nrm);
  }
  return s;
}

// Time profile of the approximation of K by K_inf along a grid.
struct OnsetReport {
  std::vector<double> times;
  std::vector<double> eps_y;      // eps(t, y0)
  std::vector<double> eps_z;      // eps(t, z0); empty without z0
  std::vector<double> eps_w;      // worst-direction eps(t)
  std::vector<double> precision_directional;  // empty without z0
  std::vector<double> precision_worst;
  double target = 0.0;
  double char_time = 0.0;
  // First grid time where the worst precision bound drops to the target;
  // NaN if that never happens on the grid.
  double t_star = std::numeric_limits<double>::quiet_NaN();
  // Closed-form onset bound, when available for the norm and structure.
  double formula_t_star = std::numeric_limits<double>::quiet_NaN();
};

// Closed-form bound for the onset time, from the level data alone:
// t / t_hat >= max_{j >= 2} (1 / ((r_1 - r_j) t_hat)) *
//   [ log 2 + log((2 + target)/target) + log(q - 1) + log(f_j / f_1)
//     + max{0, log(|w_hat^(j) y0| / |w_hat^(1) y0|)} (+ pair correction) ],
// where the correction (1/2) log(1 / (1 - V1)) enters for a conjugate-pair
// rightmost level (Euclidean norm only).
struct OnsetFormula {
  double t_abs = 0.0;
  double t_over_char = 0.0;
  double char_time = 0.0;
  std::vector<double> per_level;  // the bracketed bound per decaying level, in units of t_hat
  bool pair_correction = false;
};

inline OnsetFormula onset_time(const EigenDecomposition& dec, const SpectralPartition& part,
                               const Norm& nrm, const RVec& y0, double target) {
  require(target > 0.0, errc::bad_input, "target precision must be positive");
  const RightmostData rm = rightmost_data(dec, part, nrm);
  const std::vector<LevelData> lds = detail::all_levels(dec, part, nrm);
  const LevelData& l1 = lds.front();
  const double w1y = std::abs(row_dot(l1.w_hat, to_complex(y0)));
  require(w1y > 0.0, errc::rlge_failure,
          "y0 has zero component along the rightmost left eigenvector");

  OnsetFormula out;
  out.char_time = rm.char_time();
  out.pair_correction = rm.kind == LevelKind::ComplexPairSimple;
  double correction = 0.0;
  if (out.pair_correction) {
    require(nrm.exponent() == 2.0, errc::unsupported_structure,
            "closed-form onset bound for a pair level needs the (mean) 2-norm");
    const EuclidGeometry g = euclid_geometry(rm);
    correction = 0.5 * std::log(1.0 / std::max(1.0 - g.V1, 1e-300));
  }

  const double q = static_cast<double>(lds.size());
  double worst = 0.0;
  out.per_level.reserve(lds.size() - 1);
  for (size_t j = 1; j < lds.size(); ++j) {
    const LevelData& lj = lds[j];
    const double wjy = std::abs(row_dot(lj.w_hat, to_complex(y0)));
    const double gap = l1.r - lj.r;
    double bracket = std::log(2.0) + std::log((2.0 + target) / target) + std::log(q - 1.0) +
                     std::log(lj.f / l1.f) + correction;
    if (wjy > 0.0) bracket += std::max(0.0, std::log(wjy / w1y));
    const double term = bracket / (gap * out.char_time);
    out.per_level.push_back(term);
    worst = std::max(worst, term);
  }
  out.t_over_char = worst;
  out.t_abs = worst * out.char_time;
  return out;
}

// Grid study of the onset.  z0 may be empty (worst-direction study only).
inline OnsetReport onset_report(const EigenDecomposition& dec, const SpectralPartition& part,
                                const Norm& nrm, const RVec& y0, const RVec& z0,
                                const std::vector<double>& times, double target) {
  require(target > 0.0, errc::bad_input, "target precision must be positive");
  const RightmostData rm = rightmost_data(dec, part, nrm);
  const std::vector<LevelData> lds = detail::all_levels(dec, part, nrm);
  const bool directional = z0.size() > 0;

  OnsetReport rep;
  rep.times = times;
  rep.target = target;
  rep.char_time = rm.char_time();
  rep.eps_y.reserve(times.size());
  rep.eps_w.reserve(times.size());
  rep.precision_worst.reserve(times.size());
  if (directional) {
    rep.eps_z.reserve(times.size());
    rep.precision_directional.reserve(times.size());
  }
  for (double t : times) {
    const double ey = eps_directional(lds, t, y0, nrm);
    const double ew = eps_worst(lds, t, nrm);
    rep.eps_y.push_back(ey);
    rep.eps_w.push_back(ew);
    const bool ok = ey < 1.0;
    rep.precision_worst.push_back(ok ? (ew + ey) / (1.0 - ey) : inf);
    if (directional) {
      const double ez = eps_directional(lds, t, z0, nrm);
      rep.eps_z.push_back(ez);
      rep.precision_directional.push_back(ok ? (ez + ey) / (1.0 - ey) : inf);
    }
    if (std::isnan(rep.t_star) && rep.precision_worst.back() <= target) rep.t_star = t;
  }
  try {
    rep.formula_t_star = onset_time(dec, part, nrm, y0, target).t_abs;
  } catch (const error&) {
    // Norm or structure outside the closed-form bound: leave it NaN.
  }
  return rep;
}

}  // namespace odecond

#endif
