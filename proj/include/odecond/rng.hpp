#ifndef ODECOND_RNG_HPP
#define ODECOND_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "odecond/types.hpp"

namespace odecond {

// splitmix64 finalizer; used to derive independent per-instance streams from
// (seed, stream id) so experiment results do not depend on scheduling.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source.  mt19937_64 is fully specified by the
// standard; uniforms take the top 53 bits and gaussians use the Marsaglia
// polar transform, so every draw is reproducible across platforms (the
// distribution adaptors in <random> are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(mix64(seed ^ mix64(stream_id + 0x9e3779b97f4a7c15ULL)));
  }

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  RVec gaussian_vector(Eigen::Index n) {
    RVec x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = gaussian();
    return x;
  }

  // Row-major fill order; fixed so that results are grid-order independent.
  RMat gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    RMat a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = gaussian();
    return a;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace odecond

#endif
