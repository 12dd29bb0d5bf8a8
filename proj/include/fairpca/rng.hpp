#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fairpca/types.hpp"

namespace fairpca {

// Seeded generator with fully specified output: mt19937_64 underneath, the
// uniform mapping takes the top 53 bits, and normals come from Box-Muller
// (cosine branch only, one draw per call). std::*_distribution is avoided on
// purpose because its output differs across standard libraries; everything
// here produces identical streams on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal.
  double gauss() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Uniform integer in [0, bound); bound > 0. Modulo bias is below 2^-53 for
  // any bound this library uses.
  std::uint64_t bounded(std::uint64_t bound) { return gen_() % bound; }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  Vector gauss_vector(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = gauss();
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace fairpca
