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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "cpmap/channels.hpp"
#include "cpmap/experiment.hpp"
#include "test_support.hpp"

using namespace cpmap;
using cpmap::test::pauli_choi_reference;

namespace {

ComplexMatrix ket_bra0() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  return m;
}

double dot3(const std::array<double, 3> &a, const std::array<double, 3> &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

TEST_CASE("random pure states are reproducible for a fixed seed",
          "[experiment]") {
  // Golden regression pinning the sampling transform.
  Rng rng(20260810);
  const auto psi = random_pure_state(rng, 2);
  CHECK(psi.amplitudes()[0].real() == 0.84096524432608866);
  CHECK(psi.amplitudes()[0].imag() == 0.18243025229179799);
  CHECK(psi.amplitudes()[1].real() == 0.080115434232127067);
  CHECK(psi.amplitudes()[1].imag() == 0.5030687607893285);

  Rng rng_b(20260810);
  const auto psi_b = random_pure_state(rng_b, 2);
  CHECK(psi.amplitudes() == psi_b.amplitudes());
}

TEST_CASE("random pure states are Haar distributed", "[experiment]") {
  Rng rng(9001);
  const int samples = 10000;
  double bloch_mean[3] = {0, 0, 0};
  double overlap_mean = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto psi = random_pure_state(rng, 2);
    CHECK(std::abs(norm2(psi.amplitudes()) - 1.0) < 1e-12);
    const auto b = bloch_vector(psi);
    for (int c = 0; c < 3; ++c) bloch_mean[c] += b[c];
    overlap_mean += std::norm(psi.amplitudes()[0]);
  }
  for (double &c : bloch_mean) c /= samples;
  overlap_mean /= samples;
  const double polarization =
      std::sqrt(bloch_mean[0] * bloch_mean[0] + bloch_mean[1] * bloch_mean[1] +
                bloch_mean[2] * bloch_mean[2]);
  CHECK(polarization <= 0.05);
  // |<0|psi>|^2 is uniform on [0,1] for Haar qubit states.
  CHECK(overlap_mean == Catch::Approx(0.5).margin(0.02));
}

TEST_CASE("random measurement directions are uniform and valid",
          "[experiment]") {
  Rng rng(20260810);
  const auto m = random_measurement(rng);
  CHECK(m.direction()[0] == 0.97306191203861014);
  CHECK(m.direction()[1] == 0.21108592930139011);
  CHECK(m.direction()[2] == 0.092699761546255699);

  Rng rng2(424243);
  double mean[3] = {0, 0, 0};
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const auto meas = random_measurement(rng2);
    for (int c = 0; c < 3; ++c) mean[c] += meas.direction()[c];
    if (i < 100) {
      const auto plus = meas.effect_plus();
      const auto minus = meas.effect_minus();
      CHECK((plus + minus).max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
      CHECK((plus * plus).max_abs_diff(plus) < 1e-12);
      CHECK((minus * minus).max_abs_diff(minus) < 1e-12);
    }
  }
  const double norm = std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] +
                                mean[2] * mean[2]) /
                      samples;
  CHECK(norm <= 0.05);
}

TEST_CASE("outcome probabilities on reference channels", "[experiment]") {
  const PureState zero({Complex(1.0, 0.0), Complex(0.0, 0.0)});

  const ChoiMatrix identity(2, 2, cpmap::test::entangled_projector_reference());
  CHECK(outcome_probability(identity, zero, ket_bra0()) ==
        Catch::Approx(1.0).margin(1e-14));

  const auto depol = choi_from_kraus(depolarizing(0.8));
  CHECK(outcome_probability(depol, zero, ket_bra0()) ==
        Catch::Approx(0.9).margin(1e-14));

  const ChoiMatrix sp(2, 2, pauli_choi_reference(0.3, 0.2, 0.4, 0.1));
  CHECK(outcome_probability(sp, zero, ket_bra0()) ==
        Catch::Approx(0.4).margin(1e-14));
}

TEST_CASE("outcome probabilities are total", "[experiment]") {
  Rng rng(606060);
  for (int trial = 0; trial < 50; ++trial) {
    const auto choi = choi_from_kraus(random_tp_kraus(rng, 4, 2, 2));
    const auto psi = random_pure_state(rng, 2);
    const auto m = random_measurement(rng);
    const double p_plus = outcome_probability(choi, psi, m.effect_plus());
    const double p_minus = outcome_probability(choi, psi, m.effect_minus());
    CHECK(p_plus + p_minus == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("empirical outcome frequencies match the Born rule",
          "[experiment]") {
  Rng rng(112233);
  const int draws = 100000;
  for (int trial = 0; trial < 20; ++trial) {
    const auto choi = choi_from_kraus(random_tp_kraus(rng, 4, 2, 2));
    const auto psi = random_pure_state(rng, 2);
    const auto m = random_measurement(rng);
    const double p = outcome_probability(choi, psi, m.effect_plus());
    int plus = 0;
    for (int d = 0; d < draws; ++d)
      if (sample_outcome(choi, psi, m, rng) == Outcome::Plus) ++plus;
    const double freq = double(plus) / draws;
    const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-6) / draws);
    CHECK(std::abs(freq - p) <= 3.0 * sigma);
  }
}

TEST_CASE("identity channel with co-aligned measurements always clicks plus",
          "[experiment]") {
  const ChoiMatrix identity(2, 2, cpmap::test::entangled_projector_reference());
  Rng rng(778899);
  for (int trial = 0; trial < 200; ++trial) {
    const auto psi = random_pure_state(rng, 2);
    const auto b = bloch_vector(psi);
    const ProjectiveMeasurement aligned({b[0], b[1], b[2]});
    CHECK(sample_outcome(identity, psi, aligned, rng) == Outcome::Plus);
  }
}

TEST_CASE("conditional plus frequency near alignment tracks the Born rule",
          "[experiment]") {
  const auto depol = choi_from_kraus(depolarizing(0.8));
  const auto records = generate_records(depol, 100000, 445566);
  int hits = 0;
  int plus = 0;
  for (const auto &rec : records) {
    if (dot3(rec.measurement.direction(), bloch_vector(rec.state)) <= 0.99)
      continue;
    ++hits;
    if (rec.outcome == Outcome::Plus) ++plus;
  }
  REQUIRE(hits > 200);
  // p = lambda (1 + cos)/2 + (1 - lambda)/2 -> 0.9 at perfect alignment.
  CHECK(double(plus) / hits == Catch::Approx(0.9).margin(0.02));
}

TEST_CASE("record generation is deterministic", "[experiment]") {
  const auto choi = choi_from_kraus(depolarizing(0.8));
  const auto a = generate_records(choi, 500, 13);
  const auto b = generate_records(choi, 500, 13);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].state.amplitudes() == b[i].state.amplitudes());
    CHECK(a[i].measurement.direction() == b[i].measurement.direction());
    CHECK(a[i].outcome == b[i].outcome);
  }
  const auto c = generate_records(choi, 500, 14);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].state.amplitudes() != c[i].state.amplitudes())
      any_difference = true;
  CHECK(any_difference);
}

TEST_CASE("state and measurement validation", "[experiment]") {
  CHECK_THROWS_AS(PureState({Complex(1.0, 0.0), Complex(1.0, 0.0)}),
                  InvalidArgument);
  CHECK_THROWS_AS(ProjectiveMeasurement({0.5, 0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(bloch_vector(PureState({Complex(1.0, 0.0), Complex(0.0, 0.0),
                                          Complex(0.0, 0.0)})),
                  DimensionMismatch);
}
