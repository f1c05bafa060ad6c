/**
 * This code is part of cpmap.
 *
 * (C) Copyright cpmap contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#ifndef CPMAP_RNG_HPP_
#define CPMAP_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "cpmap/complex_matrix.hpp"

namespace cpmap {

// splitmix64 finalizer; used to derive independent stream seeds so that
// parallel study repetitions are reproducible regardless of scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

//=========================================================================
// Rng
//
// mt19937_64 core with explicit floating-point transforms, so that the
// produced stream is a function of the seed alone (the standard pins the
// engine's integer output; the distribution adaptors are left unspecified
// and are avoided here).
//=========================================================================

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr const char *algorithm() { return "mt19937_64"; }

  std::uint64_t seed() const { return seed_; }

  // Child generator for stream `index`, independent of draws taken so far.
  Rng derive(std::uint64_t index) const { return Rng(mix_seed(seed_, index)); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Complex gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
  }

  // Uniform direction on the unit 2-sphere.
  void unit_vector3(double out[3]) {
    double n2 = 0.0;
    do {
      for (int i = 0; i < 3; ++i) out[i] = gaussian();
      n2 = out[0] * out[0] + out[1] * out[1] + out[2] * out[2];
    } while (n2 == 0.0);
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < 3; ++i) out[i] *= inv;
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cpmap

#endif  // CPMAP_RNG_HPP_
