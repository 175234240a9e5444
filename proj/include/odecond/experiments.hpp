#ifndef ODECOND_EXPERIMENTS_HPP
#define ODECOND_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "odecond/asymptotic.hpp"
#include "odecond/condition.hpp"
#include "odecond/eig.hpp"
#include "odecond/matexp.hpp"
#include "odecond/norms.hpp"
#include "odecond/rng.hpp"
#include "odecond/spectrum.hpp"
#include "odecond/stats.hpp"
#include "odecond/types.hpp"

// Randomized studies.  Every study derives one independent RNG stream per
// attempted instance from (seed, attempt index), consumes it in a documented
// fixed order, and reduces results in attempt order, so outputs are
// bit-identical across runs for a given seed.  Instances whose spectrum the
// generic analysis cannot handle (unreliable eigendecomposition, level
// structure other than simple real / simple conjugate pair, or an initial
// value numerically orthogonal to the rightmost left eigenvector) are
// counted as rejected and resampled.

namespace odecond {

namespace detail {

struct GenericInstance {
  RMat a;
  RVec y0;
  EigenDecomposition dec;
  SpectralPartition part;
  bool ok = false;
};

// Stream order: matrix entries (row-major), then y0.
inline GenericInstance gaussian_instance(Eigen::Index n, Rng& rng) {
  GenericInstance inst;
  inst.a = rng.gaussian_matrix(n, n);
  inst.y0 = rng.gaussian_vector(n);
  try {
    inst.dec = eig_full(inst.a);
    if (!inst.dec.reliable()) return inst;
    inst.part = partition_spectrum(inst.dec);
    inst.ok = inst.part.levels[0].kind != LevelKind::NonGeneric;
  } catch (const error&) {
    inst.ok = false;
  }
  return inst;
}

// Stream order: QR source matrix (row-major), upper triangle of U (row-major,
// diagonal included), then y0.  Q is the orthogonal factor of a gaussian
// matrix, sign-fixed so the triangular factor has a positive diagonal.
inline GenericInstance triangular_instance(Eigen::Index n, Rng& rng) {
  GenericInstance inst;
  const RMat g = rng.gaussian_matrix(n, n);
  Eigen::HouseholderQR<RMat> qr(g);
  RMat q = qr.householderQ();
  const RMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  RMat u = RMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) u(i, j) = rng.gaussian();
  inst.a = q * u * q.transpose();
  inst.y0 = rng.gaussian_vector(n);
  try {
    inst.dec = eig_full(inst.a);
    if (!inst.dec.reliable()) return inst;
    inst.part = partition_spectrum(inst.dec);
    inst.ok = inst.part.levels[0].kind != LevelKind::NonGeneric;
  } catch (const error&) {
    inst.ok = false;
  }
  return inst;
}

}  // namespace detail

// ---- distribution of the eigenvector alignment invariants V1, W1 ----

struct CensusRow {
  std::uint64_t index = 0;  // attempt index the instance came from
  double v1 = 0.0;
  double w1 = 0.0;
};

struct CensusResult {
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  std::uint64_t target = 0;        // requested complex-rightmost instances
  std::uint64_t attempts = 0;      // gaussian matrices sampled
  std::uint64_t real_rightmost = 0;
  std::uint64_t rejected = 0;
  std::vector<CensusRow> rows;     // one per complex-rightmost instance
  std::array<double, 4> thresholds{0.9, 0.99, 0.999, 0.9999};
  std::array<double, 4> v1_above{};  // fraction of rows with V1 > threshold
  StatSummary v1_summary, w1_summary;
};

inline CensusResult census_v1w1(Eigen::Index n, std::uint64_t target, std::uint64_t seed) {
  require(n >= 2, errc::bad_input, "need dimension >= 2");
  require(target > 0, errc::bad_input, "need a positive instance count");
  CensusResult res;
  res.n = n;
  res.seed = seed;
  res.target = target;
  res.rows.reserve(target);
  const std::uint64_t max_attempts = 1000 * target;
  while (res.rows.size() < target) {
    require(res.attempts < max_attempts, errc::internal,
            "census rejection rate is implausibly high");
    const std::uint64_t idx = res.attempts++;
    Rng rng = Rng::stream(seed, idx);
    const auto inst = detail::gaussian_instance(n, rng);
    if (!inst.ok) {
      ++res.rejected;
      continue;
    }
    if (inst.part.levels[0].kind == LevelKind::RealSimple) {
      ++res.real_rightmost;
      continue;
    }
    const RightmostData rm = rightmost_data(inst.dec, inst.part, Norm::p2());
    const EuclidGeometry g = euclid_geometry(rm);
    res.rows.push_back({idx, g.V1, g.W1});
  }
  std::vector<double> v1s, w1s;
  v1s.reserve(res.rows.size());
  w1s.reserve(res.rows.size());
  for (const auto& r : res.rows) {
    v1s.push_back(r.v1);
    w1s.push_back(r.w1);
  }
  for (size_t i = 0; i < res.thresholds.size(); ++i)
    res.v1_above[i] = fraction_above(v1s, res.thresholds[i]);
  res.v1_summary = summarize(v1s);
  res.w1_summary = summarize(w1s);
  return res;
}

// ---- ratio of the transient peak of K to the asymptotic peak of K_inf ----

struct RatioOptions {
  Norm norm = Norm::p2();
  double tmax_chars = 50.0;  // grid length in characteristic times
  int points = 1000;         // grid {k * tmax/points}, k = 1..points
  double rlge_tol = 1e-8;
};

struct RatioRow {
  std::uint64_t index = 0;
  bool complex_rightmost = false;
  double ratio = 0.0;  // max_t K(t, y0) / max_t K_inf(t, y0) over the grid
};

struct RatioResult {
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  RatioOptions options;
  std::uint64_t attempts = 0;
  std::uint64_t rejected = 0;
  std::vector<RatioRow> rows;
  StatSummary real_summary, complex_summary;  // valid when the count is nonzero
  std::uint64_t real_count = 0, complex_count = 0;
};

namespace detail {

inline double peak_ratio(const GenericInstance& inst, const RightmostData& rm,
                         const RatioOptions& opt) {
  const double that = rm.char_time();
  const double step = opt.tmax_chars * that / opt.points;
  const Propagator prop(inst.dec);
  const Vec y0c = to_complex(inst.y0);
  const bool complex_rightmost = rm.kind == LevelKind::ComplexPairSimple;
  double max_k = 0.0, max_kinf = 0.0;
  if (!complex_rightmost) max_kinf = k_inf_worst(rm, 0.0, inst.y0);
  for (int k = 1; k <= opt.points; ++k) {
    const double t = k * step;
    // Factoring e^{r1 t} out of the propagator keeps the entries of e^{tA}
    // representable over many characteristic times; K is unchanged.
    const Mat e = prop.at(t, rm.r1);
    max_k = std::max(max_k, k_worst(e, y0c, opt.norm));
    if (complex_rightmost) max_kinf = std::max(max_kinf, k_inf_worst(rm, t, inst.y0));
  }
  return max_k / max_kinf;
}

}  // namespace detail

// Gaussian ensemble, filled per rightmost-eigenvalue kind: `count_real`
// instances with a real rightmost eigenvalue and `count_complex` with a
// rightmost conjugate pair.
inline RatioResult ratio_gaussian_study(Eigen::Index n, std::uint64_t count_real,
                                        std::uint64_t count_complex, std::uint64_t seed,
                                        const RatioOptions& opt = {}) {
  require(n >= 2, errc::bad_input, "need dimension >= 2");
  RatioResult res;
  res.n = n;
  res.seed = seed;
  res.options = opt;
  res.rows.reserve(count_real + count_complex);
  std::vector<double> reals, complexes;
  reals.reserve(count_real);
  complexes.reserve(count_complex);
  const std::uint64_t max_attempts = 1000 * (count_real + count_complex + 1);
  while (reals.size() < count_real || complexes.size() < count_complex) {
    require(res.attempts < max_attempts, errc::internal,
            "ratio-study rejection rate is implausibly high");
    const std::uint64_t idx = res.attempts++;
    Rng rng = Rng::stream(seed, idx);
    const auto inst = detail::gaussian_instance(n, rng);
    if (!inst.ok) {
      ++res.rejected;
      continue;
    }
    const RightmostData rm = rightmost_data(inst.dec, inst.part, opt.norm);
    if (rlge_check(rm, inst.y0, opt.rlge_tol).satisfied == false) {
      ++res.rejected;
      continue;
    }
    const bool cx = rm.kind == LevelKind::ComplexPairSimple;
    auto& bucket = cx ? complexes : reals;
    const std::uint64_t want = cx ? count_complex : count_real;
    if (bucket.size() >= want) continue;  // bucket full; not a rejection
    const double r = detail::peak_ratio(inst, rm, opt);
    bucket.push_back(r);
    res.rows.push_back({idx, cx, r});
  }
  res.real_count = reals.size();
  res.complex_count = complexes.size();
  if (!reals.empty()) res.real_summary = summarize(reals);
  if (!complexes.empty()) res.complex_summary = summarize(complexes);
  return res;
}

// Orthogonal-conjugated triangular ensemble A = Q U Q^T (real spectrum, tunable
// non-normality); the rightmost eigenvalue is real, so K_inf is constant.
inline RatioResult ratio_triangular_study(Eigen::Index n, std::uint64_t count,
                                          std::uint64_t seed, const RatioOptions& opt = {}) {
  require(n >= 2, errc::bad_input, "need dimension >= 2");
  RatioResult res;
  res.n = n;
  res.seed = seed;
  res.options = opt;
  res.rows.reserve(count);
  std::vector<double> ratios;
  ratios.reserve(count);
  const std::uint64_t max_attempts = 1000 * (count + 1);
  while (ratios.size() < count) {
    require(res.attempts < max_attempts, errc::internal,
            "ratio-study rejection rate is implausibly high");
    const std::uint64_t idx = res.attempts++;
    Rng rng = Rng::stream(seed, idx);
    const auto inst = detail::triangular_instance(n, rng);
    if (!inst.ok) {
      ++res.rejected;
      continue;
    }
    const RightmostData rm = rightmost_data(inst.dec, inst.part, opt.norm);
    if (rlge_check(rm, inst.y0, opt.rlge_tol).satisfied == false) {
      ++res.rejected;
      continue;
    }
    const double r = detail::peak_ratio(inst, rm, opt);
    ratios.push_back(r);
    res.rows.push_back({idx, rm.kind == LevelKind::ComplexPairSimple, r});
  }
  res.real_count = ratios.size();
  if (!ratios.empty()) res.real_summary = summarize(ratios);
  return res;
}

// ---- componentwise magnification in the two-sector growth model ----

// Random instances of the 2 x 2 growth model: off-diagonal signs fixed,
// magnitudes uniform on [0.01, 0.10], first component of y0 fixed to 1 and the
// second uniform on [0, 1].  Reports R = ||y(t)||_2 / min_l |y_l(t)| at t = 50.
// Stream order: a11, |a12|, a21, |a22|, y02.
struct GrowthComponentwiseResult {
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  double t = 0.0;
  std::vector<double> ratios;
  StatSummary summary;
  double above_10 = 0.0, above_100 = 0.0, above_1000 = 0.0;
};

inline GrowthComponentwiseResult growth_componentwise_study(std::uint64_t count,
                                                            std::uint64_t seed,
                                                            double t = 50.0) {
  require(count > 0, errc::bad_input, "need a positive instance count");
  GrowthComponentwiseResult res;
  res.seed = seed;
  res.count = count;
  res.t = t;
  res.ratios.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Rng rng = Rng::stream(seed, idx);
    RMat a(2, 2);
    a(0, 0) = rng.uniform(0.01, 0.10);
    a(0, 1) = -rng.uniform(0.01, 0.10);
    a(1, 0) = rng.uniform(0.01, 0.10);
    a(1, 1) = -rng.uniform(0.01, 0.10);
    RVec y0(2);
    y0 << 1.0, rng.uniform(0.0, 1.0);
    const RVec y = mat_exp(a, t) * y0;
    const double ny = y.norm();
    const double amin = y.cwiseAbs().minCoeff();
    res.ratios.push_back(amin > 0.0 ? ny / amin : inf);
  }
  res.summary = summarize(res.ratios);
  res.above_10 = fraction_above(res.ratios, 10.0);
  res.above_100 = fraction_above(res.ratios, 100.0);
  res.above_1000 = fraction_above(res.ratios, 1000.0);
  return res;
}

// ---- componentwise magnification for gaussian systems ----

// R(t) = ||y(t)||_inf / min_l |y_l(t)| and the fraction of components with
// ||y(t)||_inf / |y_l(t)| above 10 and 100, per instance and time.
// Stream order: matrix entries (row-major), then y0.
struct GaussianComponentwiseResult {
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> ratios;    // [time][instance]
  std::vector<std::vector<double>> frac_10;   // [time][instance]
  std::vector<std::vector<double>> frac_100;  // [time][instance]
  std::vector<StatSummary> ratio_summary;     // per time
  std::vector<StatSummary> frac_10_summary;
  std::vector<StatSummary> frac_100_summary;
};

inline GaussianComponentwiseResult gaussian_componentwise_study(
    Eigen::Index n, std::uint64_t count, std::uint64_t seed,
    std::vector<double> times = {0.1, 1.0, 10.0}) {
  require(n >= 1, errc::bad_input, "need dimension >= 1");
  require(count > 0, errc::bad_input, "need a positive instance count");
  require(!times.empty(), errc::bad_input, "need at least one time");
  GaussianComponentwiseResult res;
  res.n = n;
  res.seed = seed;
  res.count = count;
  res.times = std::move(times);
  res.ratios.assign(res.times.size(), {});
  res.frac_10.assign(res.times.size(), {});
  res.frac_100.assign(res.times.size(), {});
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Rng rng = Rng::stream(seed, idx);
    const RMat a = rng.gaussian_matrix(n, n);
    const RVec y0 = rng.gaussian_vector(n);
    for (size_t ti = 0; ti < res.times.size(); ++ti) {
      const RVec y = mat_exp(a, res.times[ti]) * y0;
      const double ninf = y.cwiseAbs().maxCoeff();
      std::size_t c10 = 0, c100 = 0;
      double rmax = 0.0;
      for (Eigen::Index l = 0; l < n; ++l) {
        const double al = std::abs(y[l]);
        const double ratio = al > 0.0 ? ninf / al : inf;
        rmax = std::max(rmax, ratio);
        if (ratio > 10.0) ++c10;
        if (ratio > 100.0) ++c100;
      }
      res.ratios[ti].push_back(rmax);
      res.frac_10[ti].push_back(double(c10) / double(n));
      res.frac_100[ti].push_back(double(c100) / double(n));
    }
  }
  for (size_t ti = 0; ti < res.times.size(); ++ti) {
    res.ratio_summary.push_back(summarize(res.ratios[ti]));
    res.frac_10_summary.push_back(summarize(res.frac_10[ti]));
    res.frac_100_summary.push_back(summarize(res.frac_100[ti]));
  }
  return res;
}

// ---- size of the level amplification factors f_j ----

// M = max_{j >= 2} log f_j and M_hat = max_{j >= 2} log (f_j / f_1) for
// gaussian matrices; M_hat <= M always, since f_1 >= 1.  The onset of the
// asymptotic regime is governed by M_hat, not by the conditioning of the
// eigenvector basis alone.
struct FjRow {
  std::uint64_t index = 0;
  double m = 0.0;
  double m_hat = 0.0;
  Eigen::Index q = 0;
};

struct FjResult {
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  Norm norm;
  std::uint64_t attempts = 0;
  std::uint64_t rejected = 0;
  std::vector<FjRow> rows;
  StatSummary m_summary, m_hat_summary;
};

inline FjResult fj_maxima_study(Eigen::Index n, std::uint64_t count, std::uint64_t seed,
                                const Norm& nrm = Norm::p2()) {
  require(n >= 2, errc::bad_input, "need dimension >= 2");
  require(count > 0, errc::bad_input, "need a positive instance count");
  FjResult res;
  res.n = n;
  res.seed = seed;
  res.norm = nrm;
  res.rows.reserve(count);
  const std::uint64_t max_attempts = 1000 * count;
  while (res.rows.size() < count) {
    require(res.attempts < max_attempts, errc::internal,
            "f-study rejection rate is implausibly high");
    const std::uint64_t idx = res.attempts++;
    Rng rng = Rng::stream(seed, idx);
    const auto inst = detail::gaussian_instance(n, rng);
    if (!inst.ok) {
      ++res.rejected;
      continue;
    }
    FAmplification fa;
    try {
      fa = f_values(inst.dec, inst.part, nrm);
    } catch (const error&) {
      ++res.rejected;  // a deeper level was not generic
      continue;
    }
    if (fa.f.size() < 2) {
      ++res.rejected;
      continue;
    }
    FjRow row;
    row.index = idx;
    row.q = static_cast<Eigen::Index>(fa.f.size());
    row.m = -inf;
    row.m_hat = -inf;
    for (size_t j = 1; j < fa.f.size(); ++j) {
      row.m = std::max(row.m, std::log(fa.f[j]));
      row.m_hat = std::max(row.m_hat, std::log(fa.ratio[j]));
    }
    res.rows.push_back(row);
  }
  std::vector<double> ms, mhats;
  ms.reserve(res.rows.size());
  mhats.reserve(res.rows.size());
  for (const auto& r : res.rows) {
    ms.push_back(r.m);
    mhats.push_back(r.m_hat);
  }
  res.m_summary = summarize(ms);
  res.m_hat_summary = summarize(mhats);
  return res;
}

}  // namespace odecond

#endif
