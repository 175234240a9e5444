#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "odecond/condition.hpp"
#include "odecond/matexp.hpp"
#include "odecond/models.hpp"
#include "odecond/onset.hpp"

using namespace odecond;

TEST_CASE("preset catalogue", "[models]") {
  const std::vector<std::string> expected = {"gdp-nd",  "building-heating", "wall-model",
                                             "magnetic", "hilbert",         "oscillating",
                                             "jordan"};
  REQUIRE(preset_names() == expected);
  for (const auto& name : expected) {
    const Preset p = preset(name);
    REQUIRE(p.name == name);
    REQUIRE(!p.description.empty());
    REQUIRE(p.a.rows() == p.a.cols());
    REQUIRE(p.a.rows() >= 2);
    REQUIRE(p.y0.size() == p.a.rows());
    REQUIRE(p.horizon > 0.0);
    for (const auto& alt : p.alt_y0) REQUIRE(alt.size() == p.a.rows());
  }
  REQUIRE_THROWS_AS(preset("no-such-model"), error);
  try {
    preset("no-such-model");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::bad_input);
  }
}

TEST_CASE("growth model eigenvalues and baseline perturbation", "[models]") {
  const Preset p = preset("gdp-nd");
  REQUIRE(p.a(0, 0) == 0.08);
  REQUIRE(p.a(0, 1) == -0.07);
  REQUIRE(p.a(1, 0) == 0.03);
  REQUIRE(p.a(1, 1) == -0.02);

  const EigenDecomposition dec = eig_full(p.a);
  std::vector<double> r = {dec.values[0].real(), dec.values[1].real()};
  REQUIRE(std::abs(dec.values[0].imag()) <= 1e-14);
  REQUIRE(std::abs(dec.values[1].imag()) <= 1e-14);
  REQUIRE(std::abs(r[0] - 0.05) <= 1e-12);
  REQUIRE(std::abs(r[1] - 0.01) <= 1e-12);

  // The rightmost left eigenvector is the difference direction [1, -1].
  const SpectralPartition part = partition_spectrum(dec);
  const RightmostData rm = rightmost_data(dec, part, p.norm);
  const Vec w = rm.w1_hat;
  REQUIRE(std::abs(w[0] + w[1]) <= 1e-12 * std::abs(w[0]));

  REQUIRE(p.y0_tilde.size() == 2);
  REQUIRE(p.alt_y0.size() == 1);
  REQUIRE(p.alt_y0_tilde.size() == 1);
}

TEST_CASE("building heating assembles a stable exchange network", "[models]") {
  // Uniform coefficients, no heaters, equal boundary temperatures: the
  // equilibrium is that temperature on every floor.
  RVec f = RVec::Zero(3);
  const BuildingHeating uniform = building_heating_assemble(0.3, 0.3, 0.3, 0.3, 0.3, 21.0,
                                                            21.0, f);
  for (int i = 0; i < 3; ++i) REQUIRE(std::abs(uniform.x_eq[i] - 21.0) <= 1e-10);

  // The equilibrium always satisfies A x + b = 0.
  RVec heaters(3);
  heaters << 1.0, 0.5, 0.25;
  const BuildingHeating m = building_heating_assemble(0.5, 0.25, 0.25, 0.5, 1.0, 10.0, -5.0,
                                                      heaters);
  REQUIRE((m.a * m.x_eq + m.b).cwiseAbs().maxCoeff() <= 1e-10);

  // Row sums are the negated leak coefficients: mass leaves only through the
  // ground and air couplings.
  REQUIRE(std::abs(m.a.row(0).sum() + 0.5) <= 1e-14);
  REQUIRE(std::abs(m.a.row(1).sum() + 0.25) <= 1e-14);
  REQUIRE(std::abs(m.a.row(2).sum() + 0.25) <= 1e-14);
  REQUIRE((m.a - m.a.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("building heating preset analysis", "[models]") {
  const Preset p = preset("building-heating");
  const EigenDecomposition dec = eig_full(p.a);
  const SpectralPartition part = partition_spectrum(dec);
  const RightmostData rm = rightmost_data(dec, part, p.norm);

  const std::vector<double> expected_eigs = {-0.31519, -1.0560, -2.6288};
  for (int i = 0; i < 3; ++i) {
    REQUIRE(std::abs(dec.values[i].real() - expected_eigs[i]) <= 1e-4);
    REQUIRE(dec.values[i].imag() == 0.0);
  }

  // Asymptotic magnification: given direction, worst direction, and the two
  // values quoted for the swapped and same-sign variants.
  const RVec diff = p.y0_tilde - p.y0;
  const double k_dir = k_inf_directional(rm, 0.0, p.y0, diff);
  const double k_wst = k_inf_worst(rm, 0.0, p.y0);
  REQUIRE(std::abs(k_dir - 11.8648) <= 1e-3);
  REQUIRE(std::abs(k_wst - 12.1330) <= 1e-3);
  REQUIRE(std::abs(k_inf_worst(rm, 0.0, p.y0_tilde) - 4.9195) <= 1e-3);

  // Same-sign initial values cannot be magnified past 1/|w_hat|_min-type
  // bound; the quoted figure is 1/0.4462.
  const Vec w = rm.w1_hat;
  double wmin = inf;
  for (Eigen::Index i = 0; i < 3; ++i) wmin = std::min(wmin, std::abs(w[i].real()));
  REQUIRE(std::abs(1.0 / wmin - 2.2411) <= 1e-3);

  // Threshold crossings of ||y(t)||_2 = 0.5 and the norm ratio there.
  const Propagator prop(dec);
  const double t_star = first_norm_drop(prop, p.y0, p.norm, 0.5, 0.0, p.horizon);
  const double t_til = first_norm_drop(prop, p.y0_tilde, p.norm, 0.5, 0.0, p.horizon);
  REQUIRE(std::abs(t_star - 1.6362) <= 1e-3);
  REQUIRE(std::abs(t_til - 3.0876) <= 1e-3);
  const double ratio =
      prop.apply(t_til, to_complex(p.y0_tilde)).norm() / prop.apply(t_til, to_complex(p.y0)).norm();
  REQUIRE(std::abs(ratio - 2.3882) <= 1e-3);

  // The singular alternative initial value kills the rightmost projection.
  REQUIRE(p.alt_y0.size() == 1);
  const RlgeResult bad = rlge_check(rm, p.alt_y0[0], 1e-4);
  REQUIRE(!bad.satisfied);
  REQUIRE(rlge_check(rm, p.y0).satisfied);
}

TEST_CASE("wall model preset analysis", "[models]") {
  const Preset p = preset("wall-model");
  REQUIRE(p.norm.str() == "inf");
  REQUIRE(p.y0[0] == 1.0);
  REQUIRE(p.y0.tail(3).cwiseAbs().maxCoeff() == 0.0);

  const EigenDecomposition dec = eig_full(p.a);
  const SpectralPartition part = partition_spectrum(dec);
  const std::vector<double> expected_eigs = {-0.038938, -0.26104, -0.92864, -5.9588};
  for (int i = 0; i < 4; ++i) {
    REQUIRE(std::abs(dec.values[i].real() - expected_eigs[i]) <= 1e-4);
    REQUIRE(dec.values[i].imag() == 0.0);
  }

  const RightmostData rm = rightmost_data(dec, part, p.norm);
  REQUIRE(std::abs(k_inf_worst(rm, 0.0, p.y0) - 65.987) <= 1e-3 * 65.987);
}

TEST_CASE("magnetic preset fields", "[models]") {
  const Preset p = preset("magnetic");
  REQUIRE(p.norm.str() == "2");
  const EigenDecomposition dec = eig_full(p.a);
  const SpectralPartition part = partition_spectrum(dec);
  REQUIRE(part.q() == 2);
  REQUIRE(part.levels[0].kind == LevelKind::ComplexPairSimple);
  REQUIRE(std::abs(dec.values[0].real() + 0.3433) <= 1e-4);
  REQUIRE(std::abs(dec.values[0].imag() - 1.4326) <= 1e-4);
  REQUIRE(std::abs(dec.values[2].real() + 0.7133) <= 1e-4);
  // Characteristic time of the spiral sets the suggested horizon.
  REQUIRE(std::abs(p.horizon - 6.0 / 0.3433) <= 1e-12);
}

TEST_CASE("hilbert preset carries its own diagonalization", "[models]") {
  const RMat h4 = hilbert_matrix(4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      REQUIRE(h4(i, j) == 1.0 / static_cast<double>(i + j + 1));

  const Preset p = preset("hilbert");
  REQUIRE(p.structure.has_value());
  REQUIRE(diagonalizable(*p.structure));

  const EigenDecomposition dec = structure_decomposition(*p.structure);
  REQUIRE(dec.supplied);
  REQUIRE(dec.reliable());
  const SpectralPartition part = partition_spectrum(dec);
  REQUIRE(part.q() == 8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    REQUIRE(dec.values[i].imag() == 0.0);
    REQUIRE(std::abs(dec.values[i].real() - (-0.1 * double(i + 1))) <= 1e-12);
  }

  // A blind eigensolve of the assembled matrix scrambles this spectrum; the
  // carried structure is what makes the preset analyzable.
  const EigenDecomposition blind = eig_full(p.a);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < 8; ++i) {
    double best = inf;
    for (Eigen::Index j = 0; j < 8; ++j)
      best = std::min(best, std::abs(blind.values[i] - dec.values[j]));
    worst = std::max(worst, best);
  }
  REQUIRE(worst > 1e-3);
}

TEST_CASE("jordan preset dominant operator", "[models]") {
  const Preset p = preset("jordan");
  REQUIRE(p.norm.str() == "1");
  REQUIRE(p.structure.has_value());
  REQUIRE(!diagonalizable(*p.structure));
  REQUIRE_THROWS_AS(structure_decomposition(*p.structure), error);
  try {
    structure_decomposition(*p.structure);
  } catch (const error& e) {
    REQUIRE(e.code() == errc::unsupported_structure);
  }

  // V J V^{-1} reconstructs A exactly on these integer entries.
  const JordanStructure& js = *p.structure;
  Mat j = Mat::Zero(3, 3);
  j(0, 1) = 1.0;  // chain of length two at eigenvalue 0
  j(2, 2) = -1.0;
  const Mat a_check = js.v * j * Mat(Eigen::PartialPivLU<Mat>(js.v).inverse());
  REQUIRE((a_check - to_complex(p.a)).cwiseAbs().maxCoeff() <= 1e-14);

  // The generalized eigenvector maps onto the eigenvector: A (0,0,1) = (0,1,-1).
  RVec chain(3);
  chain << 0.0, 0.0, 1.0;
  const RVec image = p.a * chain;
  REQUIRE(image[0] == 0.0);
  REQUIRE(image[1] == 1.0);
  REQUIRE(image[2] == -1.0);

  const Q1Operator q1 = jordan_q1(js);
  REQUIRE(q1.kind == Q1Operator::Kind::JordanSupplied);
  REQUIRE(q1.r1 == 0.0);
  REQUIRE(q1.omegas.size() == 1);
  // Q1 = (0,1,-1)^T [1,1,1], constant in t.
  Mat expected(3, 3);
  expected << Complex(0), Complex(0), Complex(0),
              Complex(1), Complex(1), Complex(1),
              Complex(-1), Complex(-1), Complex(-1);
  REQUIRE((q1.eval(0.0) - expected).cwiseAbs().maxCoeff() <= 1e-12);
  REQUIRE((q1.eval(13.7) - expected).cwiseAbs().maxCoeff() <= 1e-12);

  // K_inf(y0) = ||y0||_1 / |sum_i y0_i| in the 1-norm.
  const auto kinf = [&](const RVec& y0) {
    return k_inf_worst(q1, 0.0, to_complex(y0), p.norm);
  };
  REQUIRE(std::abs(kinf(p.y0) - 5.1 / 2.3) <= 1e-12);
  REQUIRE(std::abs(kinf(p.alt_y0[0]) - 41.0) <= 1e-9);
  REQUIRE(std::abs(kinf(p.alt_y0[1]) - 1.0) <= 1e-12);

  // K(t) approaches K_inf from below like 1/t: the gap at t = 25 is about
  // twice the gap at t = 50.
  const auto k_at = [&](double t) {
    return k_worst(mat_exp(p.a, t), p.y0, p.norm);
  };
  const double kinf_y = kinf(p.y0);
  const double g25 = kinf_y - k_at(25.0);
  const double g50 = kinf_y - k_at(50.0);
  REQUIRE(g25 > 0.0);
  REQUIRE(g50 > 0.0);
  REQUIRE(g25 / g50 >= 1.6);
  REQUIRE(g25 / g50 <= 2.4);
}
