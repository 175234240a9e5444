#ifndef ODECOND_SPECTRUM_HPP
#define ODECOND_SPECTRUM_HPP

#include <string>
#include <vector>

#include "odecond/eig.hpp"
#include "odecond/norms.hpp"
#include "odecond/types.hpp"

namespace odecond {

// A level groups the eigenvalues sharing a real part; levels are ordered by
// decreasing real part, so levels[0] holds the rightmost eigenvalues.
enum class LevelKind { RealSimple, ComplexPairSimple, NonGeneric };

inline const char* to_string(LevelKind k) {
  switch (k) {
    case LevelKind::RealSimple: return "real-simple";
    case LevelKind::ComplexPairSimple: return "complex-pair-simple";
    case LevelKind::NonGeneric: return "non-generic";
  }
  return "?";
}

struct SpectralLevel {
  double r = 0.0;                     // common real part
  std::vector<Eigen::Index> members;  // indices into the decomposition, sorted
  LevelKind kind = LevelKind::NonGeneric;
};

struct SpectralPartition {
  std::vector<SpectralLevel> levels;
  double tol = 0.0;
  Eigen::Index q() const { return static_cast<Eigen::Index>(levels.size()); }
};

// Groups eigenvalues into levels with tolerance tol (default
// 1e-9 * max(1, rho(A))) and classifies each level.  A level is generic when
// it consists of one simple real eigenvalue or one simple conjugate pair;
// everything else (clustered or repeated eigenvalues, conjugate-pair-free
// complex eigenvalues of complex matrices, multiple pairs on one level) is
// NonGeneric and the asymptotic machinery refuses it.
inline SpectralPartition partition_spectrum(const EigenDecomposition& dec, double tol = -1.0) {
  const Eigen::Index n = dec.values.size();
  SpectralPartition part;
  if (tol < 0.0) {
    const double rho = n > 0 ? dec.values.cwiseAbs().maxCoeff() : 0.0;
    tol = 1e-9 * std::max(1.0, rho);
  }
  part.tol = tol;

  for (Eigen::Index i = 0; i < n; ++i) {
    if (part.levels.empty() || dec.values[i].real() < part.levels.back().r - tol) {
      SpectralLevel level;
      level.r = dec.values[i].real();
      part.levels.push_back(level);
    }
    part.levels.back().members.push_back(i);
  }

  for (auto& level : part.levels) {
    if (level.members.size() == 1) {
      const Complex lam = dec.values[level.members[0]];
      level.kind = std::abs(lam.imag()) <= tol ? LevelKind::RealSimple : LevelKind::NonGeneric;
    } else if (level.members.size() == 2) {
      const Complex a = dec.values[level.members[0]];
      const Complex b = dec.values[level.members[1]];
      const bool conjugate_pair =
          a.imag() > tol && std::abs(b - std::conj(a)) <= tol;
      level.kind = conjugate_pair ? LevelKind::ComplexPairSimple : LevelKind::NonGeneric;
    } else {
      level.kind = LevelKind::NonGeneric;
    }
  }
  return part;
}

// Normalized data for one generic level: v_hat is the right eigenvector with
// unit vector norm; w_hat is the left row scaled so that its dual norm is one,
// taken over the real field for a real level and over the complex field for a
// conjugate-pair level (the omega > 0 representative); f = |w| |v| >= 1
// measures the level's amplification. alpha and beta are the entry phases of
// v_hat and w_hat for a pair level.
struct LevelData {
  LevelKind kind = LevelKind::NonGeneric;
  Complex lambda;
  double r = 0.0;
  double omega = 0.0;
  Vec v, w;
  Vec v_hat, w_hat;
  double f = 1.0;
  RVec alpha, beta;
};

inline LevelData level_data(const EigenDecomposition& dec, const SpectralPartition& part,
                            Eigen::Index level, const Norm& nrm) {
  require(level >= 0 && level < part.q(), errc::bad_input, "level index out of range");
  const SpectralLevel& lv = part.levels[static_cast<size_t>(level)];
  require(lv.kind != LevelKind::NonGeneric, errc::unsupported_structure,
          "level " + std::to_string(level + 1) +
              " is not a simple real eigenvalue or a simple conjugate pair");

  LevelData data;
  data.kind = lv.kind;
  const Eigen::Index rep = lv.members[0];  // omega > 0 representative comes first
  data.lambda = dec.values[rep];
  data.r = lv.r;
  data.omega = lv.kind == LevelKind::ComplexPairSimple ? dec.values[rep].imag() : 0.0;
  data.v = dec.right_vectors.col(rep);
  data.w = dec.left_rows.row(rep).transpose();

  const Field field =
      lv.kind == LevelKind::RealSimple ? Field::Real : Field::Complex;
  const double wn = dual_row_norm(data.w, nrm, field);
  const double vn = vector_norm(data.v, nrm);
  require(wn > 0.0 && vn > 0.0, errc::numeric_range, "degenerate eigenvector");
  data.f = wn * vn;
  data.v_hat = data.v / vn;
  data.w_hat = data.w / wn;

  if (lv.kind == LevelKind::ComplexPairSimple) {
    data.alpha.resize(data.v_hat.size());
    data.beta.resize(data.w_hat.size());
    for (Eigen::Index k = 0; k < data.v_hat.size(); ++k) data.alpha[k] = std::arg(data.v_hat[k]);
    for (Eigen::Index k = 0; k < data.w_hat.size(); ++k) data.beta[k] = std::arg(data.w_hat[k]);
  }
  return data;
}

// Normalized data of the rightmost level, the input of the asymptotic ops.
struct RightmostData {
  LevelKind kind = LevelKind::NonGeneric;
  Complex lambda1;
  double r1 = 0.0;
  double omega1 = 0.0;
  Vec w1, v1;
  Vec w1_hat, v1_hat;
  RVec alpha_phases, beta_phases;
  double f1 = 1.0;
  Norm norm;

  // Characteristic time 1/|r1|, or 1 for a marginally stable rightmost level.
  double char_time() const { return r1 != 0.0 ? 1.0 / std::abs(r1) : 1.0; }
};

inline RightmostData rightmost_data(const EigenDecomposition& dec, const SpectralPartition& part,
                                    const Norm& nrm) {
  require(dec.reliable(), errc::unsupported_structure,
          "eigendecomposition residual too large; matrix is too close to defective");
  const LevelData data = level_data(dec, part, 0, nrm);
  RightmostData rm;
  rm.kind = data.kind;
  rm.lambda1 = data.lambda;
  rm.r1 = data.r;
  rm.omega1 = data.omega;
  rm.w1 = data.w;
  rm.v1 = data.v;
  rm.w1_hat = data.w_hat;
  rm.v1_hat = data.v_hat;
  rm.alpha_phases = data.alpha;
  rm.beta_phases = data.beta;
  rm.f1 = data.f;
  rm.norm = nrm;
  return rm;
}

// Amplification factors f_j = |w^(j)| |v^(j)| per level, with the ratios
// f_j / f_1 that control the onset of the asymptotic regime.
struct FAmplification {
  std::vector<double> f;
  std::vector<double> ratio;
};

inline FAmplification f_values(const EigenDecomposition& dec, const SpectralPartition& part,
                               const Norm& nrm) {
  FAmplification out;
  out.f.reserve(static_cast<size_t>(part.q()));
  for (Eigen::Index j = 0; j < part.q(); ++j) out.f.push_back(level_data(dec, part, j, nrm).f);
  out.ratio.reserve(out.f.size());
  for (double fj : out.f) out.ratio.push_back(fj / out.f[0]);
  return out;
}

// Rightmost-level genericity of a direction u: the asymptotic formulas need
// w_hat^(1) u != 0.  margin is |w_hat^(1) u_hat| with u_hat unit in the norm.
struct RlgeResult {
  bool satisfied = false;
  double margin = 0.0;
};

inline RlgeResult rlge_check(const RightmostData& rm, const Vec& u, double tol = 1e-8) {
  const Vec u_hat = normalized(u, rm.norm);
  RlgeResult res;
  res.margin = std::abs(row_dot(rm.w1_hat, u_hat));
  res.satisfied = res.margin > tol;
  return res;
}

inline RlgeResult rlge_check(const RightmostData& rm, const RVec& u, double tol = 1e-8) {
  return rlge_check(rm, to_complex(u), tol);
}

}  // namespace odecond

#endif
