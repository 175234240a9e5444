#ifndef ODECOND_MODELS_HPP
#define ODECOND_MODELS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "odecond/asymptotic.hpp"
#include "odecond/norms.hpp"
#include "odecond/types.hpp"

namespace odecond {

// Explicit eigenstructure for a matrix given as V J V^{-1} with J in Jordan
// form.  blocks lists the diagonal of J in column order of V: eigenvalue and
// chain length of each block.
struct JordanBlock {
  Complex eigenvalue;
  Eigen::Index chain = 1;
};

struct JordanStructure {
  Mat v;
  std::vector<JordanBlock> blocks;
};

// Dominant spectral operator of a matrix with a supplied Jordan structure:
// the blocks whose eigenvalues have the largest real part and, among those,
// the longest chains M1 drive e^{tA} for large t, through terms
// e^{i omega t} v^{(block, 1)} w^{(block, M1)}.  The common polynomial factor
// t^{M1-1} e^{r1 t} / (M1-1)! cancels in every ratio of norms.
inline Q1Operator jordan_q1(const JordanStructure& js) {
  const Eigen::Index n = js.v.rows();
  require(js.v.cols() == n && n > 0, errc::bad_input, "V must be square");
  Eigen::Index total = 0;
  for (const auto& b : js.blocks) {
    require(b.chain >= 1, errc::bad_input, "chain lengths must be >= 1");
    total += b.chain;
  }
  require(total == n, errc::bad_input, "chain lengths must sum to the dimension");

  Eigen::PartialPivLU<Mat> lu(js.v);
  const Mat w = lu.solve(Mat::Identity(n, n));
  require((js.v * w - Mat::Identity(n, n)).norm() <= 1e-8 * std::sqrt(double(n)),
          errc::bad_input, "V is numerically singular");

  double r1 = -inf;
  for (const auto& b : js.blocks) r1 = std::max(r1, b.eigenvalue.real());
  const double tol = 1e-12 * std::max(1.0, std::abs(r1));

  Eigen::Index m1 = 0;
  for (const auto& b : js.blocks)
    if (b.eigenvalue.real() >= r1 - tol) m1 = std::max(m1, b.chain);

  Q1Operator q;
  q.kind = Q1Operator::Kind::JordanSupplied;
  q.dim = n;
  q.r1 = r1;
  Eigen::Index start = 0;
  for (const auto& b : js.blocks) {
    if (b.eigenvalue.real() >= r1 - tol && b.chain == m1) {
      q.omegas.push_back(b.eigenvalue.imag());
      q.vs.push_back(js.v.col(start));
      q.ws.push_back(w.row(start + b.chain - 1).transpose());
    }
    start += b.chain;
  }
  return q;
}

// Three-floor building heating model x' = Ax + b: Newton cooling against the
// ground (basement) and outdoor air (main floor, attic), heat exchange between
// adjacent floors, constant heater inputs f.
struct BuildingHeating {
  RMat a;
  RVec b;
  RVec x_eq;  // -A^{-1} b, the globally stable equilibrium temperatures
};

inline BuildingHeating building_heating_assemble(double kg1, double ka2, double ka3,
                                                 double k12, double k23, double xg, double xa,
                                                 const RVec& f) {
  require(f.size() == 3, errc::bad_input, "three heater inputs expected");
  require(kg1 > 0 && ka2 > 0 && ka3 > 0 && k12 > 0 && k23 > 0, errc::bad_input,
          "exchange coefficients must be positive");
  BuildingHeating m;
  m.a.resize(3, 3);
  m.a << -kg1 - k12, k12, 0.0,
          k12, -ka2 - k12 - k23, k23,
          0.0, k23, -ka3 - k23;
  m.b.resize(3);
  m.b << kg1 * xg + f[0], ka2 * xa + f[1], ka3 * xa + f[2];
  m.x_eq = -m.a.partialPivLu().solve(m.b);
  return m;
}

inline RMat hilbert_matrix(Eigen::Index n) {
  RMat h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  return h;
}

// True when every block of the structure is a simple eigenvalue.
inline bool diagonalizable(const JordanStructure& js) {
  for (const auto& b : js.blocks)
    if (b.chain != 1) return false;
  return true;
}

// Full decomposition from a supplied structure without defective blocks.
inline EigenDecomposition structure_decomposition(const JordanStructure& js) {
  require(diagonalizable(js), errc::unsupported_structure,
          "structure has defective blocks; only the dominant operator is available");
  Vec values(static_cast<Eigen::Index>(js.blocks.size()));
  for (size_t i = 0; i < js.blocks.size(); ++i)
    values[static_cast<Eigen::Index>(i)] = js.blocks[i].eigenvalue;
  return eig_from_diagonalization(js.v, values);
}

// A named study case: matrix, initial values, the norm the quantities of
// interest live in, and a suggested time span.
struct Preset {
  std::string name;
  std::string description;
  RMat a;
  RVec y0;
  RVec y0_tilde;                    // empty when the case has no baseline perturbation
  std::vector<RVec> alt_y0;         // further initial values of interest
  std::vector<RVec> alt_y0_tilde;   // perturbed partners of alt_y0 (may be empty)
  Norm norm = Norm::p2();
  double horizon = 0.0;             // suggested absolute time span for plots
  std::optional<JordanStructure> structure;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "gdp-nd", "building-heating", "wall-model", "magnetic", "hilbert", "oscillating", "jordan"};
  return names;
}

inline Preset preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "gdp-nd") {
    p.description = "GDP and national-debt growth, 2 x 2, unstable spiral-free node";
    p.a.resize(2, 2);
    p.a << 0.08, -0.07,
           0.03, -0.02;
    p.y0 = RVec(2); p.y0 << 1.0, 0.61;
    p.y0_tilde = RVec(2); p.y0_tilde << 1.0, 0.60;
    RVec a0(2); a0 << 1.0, 1.0;
    RVec a0t(2); a0t << 1.0, 0.99;
    p.alt_y0 = {a0};
    p.alt_y0_tilde = {a0t};
    p.norm = Norm::p2();
    p.horizon = 50.0;
  } else if (name == "building-heating") {
    p.description = "three-floor building heating transient, symmetric stable 3 x 3";
    RVec f = RVec::Zero(3);
    p.a = building_heating_assemble(0.5, 0.25, 0.25, 0.5, 1.0, 0.0, 0.0, f).a;
    p.y0 = RVec(3); p.y0 << 3.5, -4.4, 2.5;
    p.y0_tilde = RVec(3); p.y0_tilde << 4.0, -4.0, 3.0;
    // Initial value orthogonal to the rightmost left eigenvector: the
    // asymptotic magnification of its perturbations is unbounded.
    RVec s(3); s << 3.5, -5.2298, 2.5;
    RVec st(3); st << 4.0, -5.0, 3.0;
    p.alt_y0 = {s};
    p.alt_y0_tilde = {st};
    p.norm = Norm::p2();
    p.horizon = 6.0;
  } else if (name == "wall-model") {
    p.description = "indoor temperature and three wall layers, stable 4 x 4";
    p.a.resize(4, 4);
    p.a << -5.7215, 5.7215, 0.0, 0.0,
            0.23076, -0.39276, 0.162, 0.0,
            0.0, 0.081, -0.162, 0.081,
            0.0, 0.0, 0.162, -0.91116;
    p.y0 = RVec(4); p.y0 << 1.0, 0.0, 0.0, 0.0;
    p.norm = Norm::pinf();
    p.horizon = 30.0;
  } else if (name == "magnetic") {
    p.description = "charged particle in a magnetic field, rotating stable 3 x 3";
    p.a.resize(3, 3);
    p.a << -0.4, -0.4, 1.3,
            0.4, -0.8, -0.5,
           -1.3, 0.5, -0.2;
    p.y0 = RVec(3); p.y0 << 0.5, 1.0, 0.5;
    p.norm = Norm::p2();
    p.horizon = 6.0 / 0.3433;
  } else if (name == "hilbert") {
    p.description = "highly non-normal 8 x 8 with Hilbert eigenvectors";
    const Eigen::Index n = 8;
    const RMat v = hilbert_matrix(n);
    RVec d(n);
    for (Eigen::Index i = 0; i < n; ++i) d[i] = -0.1 * static_cast<double>(i + 1);
    const RMat vinv = v.partialPivLu().solve(RMat::Identity(n, n));
    p.a = v * d.asDiagonal() * vinv;
    p.y0 = RVec::Ones(n);
    RVec alt(n);
    alt << 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0;
    p.alt_y0 = {alt};
    p.norm = Norm::p2();
    p.horizon = 100.0;
    // The eigenvector basis is too ill-conditioned for a blind eigensolve of
    // the assembled matrix to recover the spectrum; carry the construction.
    JordanStructure js;
    js.v = to_complex(v);
    for (Eigen::Index i = 0; i < n; ++i) js.blocks.push_back({Complex(d[i]), 1});
    p.structure = js;
  } else if (name == "oscillating") {
    p.description = "undamped rotation with nearly aligned eigenvectors, 3 x 3";
    p.a.resize(3, 3);
    p.a << -1.0, 20.0, -20.0,
            0.0, 19.0, -20.0,
            0.0, 18.1, -19.0;
    p.y0 = RVec(3); p.y0 << 0.0, -0.7245, -0.6892;
    RVec alt(3); alt << 0.0, 0.6892, -0.7245;
    p.alt_y0 = {alt};
    p.norm = Norm::p2();
    p.horizon = 4.0 * M_PI;
  } else if (name == "jordan") {
    p.description = "non-diagonalizable 3 x 3 with a double defective eigenvalue";
    p.a.resize(3, 3);
    p.a << -1.0, 0.0, 0.0,
            2.0, 1.0, 1.0,
           -1.0, -1.0, -1.0;
    p.y0 = RVec(3); p.y0 << -0.8, -2.9, 1.4;
    RVec a1(3); a1 << -1.0, 1.0, 0.05;
    RVec a2(3); a2 << 1.0, 2.0, 3.0;
    p.alt_y0 = {a1, a2};
    p.norm = Norm::p1();
    p.horizon = 50.0;
    JordanStructure js;
    js.v.resize(3, 3);
    js.v << Complex(0.0), Complex(0.0), Complex(1.0),
            Complex(1.0), Complex(0.0), Complex(-1.0),
            Complex(-1.0), Complex(1.0), Complex(0.0);
    js.blocks = {{Complex(0.0), 2}, {Complex(-1.0), 1}};
    p.structure = js;
  } else {
    fail(errc::bad_input, "unknown preset '" + name + "'");
  }
  return p;
}

}  // namespace odecond

#endif
