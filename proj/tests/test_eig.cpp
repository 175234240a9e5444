#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "helpers.hpp"
#include "odecond/eig.hpp"
#include "odecond/matexp.hpp"
#include "odecond/models.hpp"
#include "odecond/rng.hpp"

using namespace odecond;

TEST_CASE("eigenvalues of the debt model instance", "[eig]") {
  RMat a(2, 2);
  a << 0.08, -0.07, 0.03, -0.02;
  const EigenDecomposition dec = eig_full(a);
  REQUIRE(dec.reliable());
  REQUIRE(dec.values.size() == 2);
  // Ordered by decreasing real part.
  CHECK(dec.values[0].real() == Catch::Approx(0.05).epsilon(1e-12));
  CHECK(dec.values[1].real() == Catch::Approx(0.01).epsilon(1e-12));
  CHECK(std::abs(dec.values[0].imag()) <= 1e-15);
  CHECK(std::abs(dec.values[1].imag()) <= 1e-15);
}

TEST_CASE("eigenvalues of a symmetric involution", "[eig]") {
  RMat a(2, 2);
  a << 0.0, 1.0, 1.0, 0.0;
  const EigenDecomposition dec = eig_full(a);
  CHECK(dec.values[0].real() == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(dec.values[1].real() == Catch::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("ordering is by real part, ties by imaginary part", "[eig]") {
  // Conjugate pair plus a real eigenvalue with the same real part as nobody.
  RMat a(3, 3);
  a << -0.4, -0.4, 1.3, 0.4, -0.8, -0.5, -1.3, 0.5, -0.2;
  const EigenDecomposition dec = eig_full(a);
  REQUIRE(dec.values.size() == 3);
  CHECK(dec.values[0].real() >= dec.values[1].real());
  CHECK(dec.values[1].real() >= dec.values[2].real());
  // The pair comes first (rightmost) with the positive imaginary part member
  // ahead of its conjugate.
  CHECK(dec.values[0].imag() > 0.0);
  CHECK(dec.values[1].imag() < 0.0);
  CHECK(dec.values[0] == std::conj(dec.values[1]));
}

TEST_CASE("phase convention puts the largest entry on the positive real axis", "[eig]") {
  Rng rng(301);
  for (int trial = 0; trial < 20; ++trial) {
    const RMat a = rng.gaussian_matrix(5, 5);
    const EigenDecomposition dec = eig_full(a);
    if (!dec.reliable()) continue;
    for (Eigen::Index j = 0; j < 5; ++j) {
      Eigen::Index at = 0;
      dec.right_vectors.col(j).cwiseAbs().maxCoeff(&at);
      const Complex top = dec.right_vectors(at, j);
      CHECK(top.real() > 0.0);
      CHECK(std::abs(top.imag()) <= 1e-12 * std::abs(top));
      CHECK(dec.right_vectors.col(j).norm() == Catch::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("reconstruction residual bound holds", "[eig]") {
  Rng rng(302);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + (trial % 6);
    const RMat a = rng.gaussian_matrix(n, n);
    const EigenDecomposition dec = eig_full(a);
    if (!dec.reliable()) continue;
    const Mat recon =
        dec.right_vectors * dec.values.asDiagonal() * dec.left_rows;
    const double err = (recon - a.cast<Complex>()).norm();
    REQUIRE(err <= 10.0 * std::max(dec.resid, 1e-16) * a.norm() + 1e-13);
  }
}

TEST_CASE("left rows are biorthonormal to right vectors", "[eig]") {
  Rng rng(303);
  const RMat a = rng.gaussian_matrix(6, 6);
  const EigenDecomposition dec = eig_full(a);
  REQUIRE(dec.reliable());
  const Mat prod = dec.left_rows * dec.right_vectors;
  CHECK((prod - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("real input yields a conjugate-closed decomposition", "[eig]") {
  Rng rng(304);
  for (int trial = 0; trial < 20; ++trial) {
    const RMat a = rng.gaussian_matrix(5, 5);
    const EigenDecomposition dec = eig_full(a);
    if (!dec.reliable()) continue;
    REQUIRE(dec.from_real);
    for (Eigen::Index j = 0; j < 5; ++j) {
      if (dec.values[j].imag() <= 1e-12) continue;
      // The conjugate eigenvalue exists and carries the conjugate column.
      bool found = false;
      for (Eigen::Index k = 0; k < 5; ++k) {
        if (std::abs(dec.values[k] - std::conj(dec.values[j])) < 1e-10) {
          found = true;
          CHECK((dec.right_vectors.col(k) - dec.right_vectors.col(j).conjugate())
                    .cwiseAbs()
                    .maxCoeff() <= 1e-10);
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("supplied diagonalization keeps the given spectrum", "[eig]") {
  // A similarity with an ill-conditioned basis scrambles a blind eigensolve;
  // the supplied-structure entry point must keep the exact given eigenvalues.
  const RMat h = hilbert_matrix(8);
  Vec values(8);
  for (int i = 0; i < 8; ++i) values[i] = Complex(-0.1 * (i + 1), 0.0);
  const EigenDecomposition dec = eig_from_diagonalization(h.cast<Complex>(), values);
  REQUIRE(dec.supplied);
  REQUIRE(dec.reliable());
  REQUIRE(dec.values.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(dec.values[i].real() == Catch::Approx(-0.1 * (i + 1)).epsilon(1e-14));
    CHECK(dec.values[i].imag() == 0.0);
  }
}

TEST_CASE("supplied diagonalization rejects a singular basis", "[eig]") {
  Mat v = Mat::Zero(3, 3);
  v.col(0).setOnes();
  v.col(1).setOnes();
  v(2, 2) = 1.0;
  Vec values(3);
  values << Complex(-1.0, 0.0), Complex(-2.0, 0.0), Complex(-3.0, 0.0);
  CHECK_THROWS_AS(eig_from_diagonalization(v, values), error);
}

TEST_CASE("propagator matches the matrix exponential", "[eig]") {
  Rng rng(305);
  for (int trial = 0; trial < 20; ++trial) {
    const RMat a = rng.gaussian_matrix(4, 4);
    const EigenDecomposition dec = eig_full(a);
    if (!dec.reliable()) continue;
    const Propagator prop(dec);
    const double t = rng.uniform(0.0, 2.0);
    const RMat direct = mat_exp(a, t);
    CHECK((prop.at(t) - direct.cast<Complex>()).cwiseAbs().maxCoeff() <=
          1e-9 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
    const Vec y0 = rng.gaussian_vector(4).cast<Complex>();
    const Vec via_prop = prop.apply(t, y0);
    const Vec via_exp = direct.cast<Complex>() * y0;
    CHECK((via_prop - via_exp).cwiseAbs().maxCoeff() <=
          1e-9 * std::max(1.0, via_exp.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("propagator shift rescales by a scalar exponential", "[eig]") {
  Rng rng(306);
  const RMat a = rng.gaussian_matrix(4, 4);
  const EigenDecomposition dec = eig_full(a);
  REQUIRE(dec.reliable());
  const Propagator prop(dec);
  const double t = 1.7, shift = 0.9;
  const Mat plain = prop.at(t);
  const Mat shifted = prop.at(t, shift);
  CHECK((shifted - Mat(plain * std::exp(-shift * t))).cwiseAbs().maxCoeff() <=
        1e-12 * plain.cwiseAbs().maxCoeff());
}
