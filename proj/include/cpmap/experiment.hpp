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

#ifndef CPMAP_EXPERIMENT_HPP_
#define CPMAP_EXPERIMENT_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "cpmap/channels.hpp"
#include "cpmap/complex_matrix.hpp"
#include "cpmap/errors.hpp"
#include "cpmap/rng.hpp"

namespace cpmap {

//=========================================================================
// PureState
//=========================================================================

class PureState {
 public:
  explicit PureState(ComplexVector amplitudes)
      : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty())
      throw InvalidArgument("PureState: empty amplitude vector");
    if (std::abs(norm2(amplitudes_) - 1.0) > 1e-9)
      throw InvalidArgument("PureState: amplitudes are not normalized");
  }

  std::size_t dim() const { return amplitudes_.size(); }
  const ComplexVector &amplitudes() const { return amplitudes_; }

  ComplexMatrix density_matrix() const {
    const std::size_t n = dim();
    ComplexMatrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rho(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
    return rho;
  }

 private:
  ComplexVector amplitudes_;
};

// Bloch vector (  <sigma_x>, <sigma_y>, <sigma_z> ) of a qubit state.
inline std::array<double, 3> bloch_vector(const PureState &psi) {
  if (psi.dim() != 2)
    throw DimensionMismatch("bloch_vector: state is not a qubit");
  const Complex z =
      std::conj(psi.amplitudes()[0]) * psi.amplitudes()[1];
  const double pz = std::norm(psi.amplitudes()[0]) -
                    std::norm(psi.amplitudes()[1]);
  return {2.0 * z.real(), 2.0 * z.imag(), pz};
}

//=========================================================================
// ProjectiveMeasurement
//=========================================================================

// Two-outcome projective qubit measurement along a Bloch direction;
// effects are F+- = (1 +- n.sigma)/2, rebuilt from the direction so that
// F+ + F- = 1 holds exactly.
class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::array<double, 3> direction)
      : direction_(direction) {
    const double n = std::sqrt(direction_[0] * direction_[0] +
                               direction_[1] * direction_[1] +
                               direction_[2] * direction_[2]);
    if (std::abs(n - 1.0) > 1e-9)
      throw InvalidArgument("ProjectiveMeasurement: direction is not unit");
  }

  const std::array<double, 3> &direction() const { return direction_; }

  ComplexMatrix effect_plus() const { return effect(+1.0); }
  ComplexMatrix effect_minus() const { return effect(-1.0); }

 private:
  ComplexMatrix effect(double sign) const {
    const double x = sign * direction_[0];
    const double y = sign * direction_[1];
    const double z = sign * direction_[2];
    ComplexMatrix f(2, 2);
    f(0, 0) = 0.5 * (1.0 + z);
    f(1, 1) = 0.5 * (1.0 - z);
    f(0, 1) = 0.5 * Complex(x, -y);
    f(1, 0) = 0.5 * Complex(x, y);
    return f;
  }

  std::array<double, 3> direction_;
};

enum class Outcome : int { Plus = +1, Minus = -1 };

struct MeasurementRecord {
  PureState state;
  ProjectiveMeasurement measurement;
  Outcome outcome;

  // Effect corresponding to the observed outcome.
  ComplexMatrix observed_effect() const {
    return outcome == Outcome::Plus ? measurement.effect_plus()
                                    : measurement.effect_minus();
  }
};

//=========================================================================
// Random sampling
//=========================================================================

// Haar-distributed pure state: normalized vector of complex Gaussians.
inline PureState random_pure_state(Rng &rng, std::size_t dim = 2) {
  ComplexVector amps(dim);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto &a : amps) {
      a = rng.gaussian_complex();
      n2 += std::norm(a);
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto &a : amps) a *= inv;
  return PureState(std::move(amps));
}

// Measurement direction uniform on the 2-sphere.
inline ProjectiveMeasurement random_measurement(Rng &rng) {
  double d[3];
  rng.unit_vector3(d);
  return ProjectiveMeasurement({d[0], d[1], d[2]});
}

//=========================================================================
// Born rule
//=========================================================================

// p = Tr[E(rho) F] evaluated as Tr[S (F (x) rho^T)], clamped to [0, 1].
inline double outcome_probability(const ChoiMatrix &channel,
                                  const PureState &state,
                                  const ComplexMatrix &effect) {
  if (state.dim() != channel.dim_in())
    throw DimensionMismatch("outcome_probability: state dimension mismatch");
  if (effect.rows() != channel.dim_out() || effect.cols() != channel.dim_out())
    throw DimensionMismatch("outcome_probability: effect dimension mismatch");
  const ComplexMatrix probe =
      tensor_product(effect, state.density_matrix().transpose());
  // Tr[S X] without forming the product.
  Complex tr(0.0, 0.0);
  const ComplexMatrix &s = channel.matrix();
  const std::size_t d = s.rows();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) tr += s(a, b) * probe(b, a);
  double p = tr.real();
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

// One Bernoulli draw of the measurement outcome.
inline Outcome sample_outcome(const ChoiMatrix &channel, const PureState &state,
                              const ProjectiveMeasurement &measurement,
                              Rng &rng) {
  const double p_plus =
      outcome_probability(channel, state, measurement.effect_plus());
  return rng.uniform() < p_plus ? Outcome::Plus : Outcome::Minus;
}

// K independent runs: fresh random state and direction per record, outcome
// sampled from the Born rule.  Sequential in the seeded stream, so a fixed
// seed reproduces the records exactly.
inline std::vector<MeasurementRecord> generate_records(
    const ChoiMatrix &channel, std::size_t count, std::uint64_t seed) {
  if (channel.dim_in() != 2 || channel.dim_out() != 2)
    throw DimensionMismatch("generate_records: generator is qubit-only");
  Rng rng(seed);
  std::vector<MeasurementRecord> records;
  records.reserve(count);
  for (std::size_t l = 0; l < count; ++l) {
    PureState psi = random_pure_state(rng, 2);
    ProjectiveMeasurement m = random_measurement(rng);
    const Outcome x = sample_outcome(channel, psi, m, rng);
    records.push_back({std::move(psi), std::move(m), x});
  }
  return records;
}

}  // namespace cpmap

#endif  // CPMAP_EXPERIMENT_HPP_
