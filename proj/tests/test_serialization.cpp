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

#include <catch2/catch_amalgamated.hpp>

#include "cpmap/serialization.hpp"
#include "test_support.hpp"

using namespace cpmap;

TEST_CASE("matrix json round trip is exact", "[serialization]") {
  Rng rng(321);
  ComplexMatrix m(3, 5);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = rng.gaussian_complex();

  const auto j = matrix_to_json(m);
  const auto back = matrix_from_json(Json::parse(j.dump()));
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 5);
  // Shortest round-trip formatting reproduces every double bit for bit.
  CHECK(back == m);
}

TEST_CASE("channel files accept both representations", "[serialization]") {
  const auto k = amplitude_damping(0.5);
  const auto choi = choi_from_kraus(k);

  const auto from_kraus =
      channel_from_json(Json::parse(kraus_to_json(k).dump()));
  CHECK(from_kraus.matrix().max_abs_diff(choi.matrix()) < 1e-15);

  const auto from_choi =
      channel_from_json(Json::parse(choi_to_json(choi).dump()));
  CHECK(from_choi.matrix().max_abs_diff(choi.matrix()) == 0.0);

  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"dim_in":2})")),
                  FormatError);
}

TEST_CASE("record files round trip exactly", "[serialization]") {
  const auto choi = choi_from_kraus(pauli_channel(0.3, 0.2, 0.4, 0.1));
  const auto records = generate_records(choi, 200, 99);
  RecordFileHeader header;
  header.seed = 99;
  header.channel = "pauli:0.3,0.2,0.4,0.1";

  const std::string text = record_file_to_string(header, records);
  const auto parsed = parse_record_file(text);
  REQUIRE(parsed.records.size() == records.size());
  CHECK(parsed.header.seed == 99);
  CHECK(parsed.header.channel == "pauli:0.3,0.2,0.4,0.1");
  CHECK(parsed.header.dim_in == 2);

  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(parsed.records[i].state.amplitudes() ==
          records[i].state.amplitudes());
    CHECK(parsed.records[i].measurement.direction() ==
          records[i].measurement.direction());
    CHECK(parsed.records[i].outcome == records[i].outcome);
  }

  // Re-serialization is byte identical.
  CHECK(record_file_to_string(parsed.header, parsed.records) == text);
}

TEST_CASE("record file validation", "[serialization]") {
  CHECK_THROWS_AS(parse_record_file(""), FormatError);
  CHECK_THROWS_AS(parse_record_file("{\"format\":2}\n"), FormatError);
  CHECK_THROWS_AS(
      parse_record_file(
          R"({"format":1,"N":3,"M":3,"seed":1,"channel":""})" "\n"),
      FormatError);
  const std::string header =
      R"({"format":1,"N":2,"M":2,"seed":1,"channel":"x"})" "\n";
  CHECK_THROWS_AS(parse_record_file(header + "not json\n"), FormatError);
  CHECK_THROWS_AS(
      parse_record_file(header +
                        R"({"psi":[[1,0],[0,0]],"dir":[1,0,0],"out":2})" "\n"),
      FormatError);
  // Unnormalized state amplitudes are data errors too.
  CHECK_THROWS_AS(
      parse_record_file(header +
                        R"({"psi":[[1,0],[1,0]],"dir":[1,0,0],"out":1})" "\n"),
      FormatError);
}

TEST_CASE("csv output lists full-precision columns", "[serialization]") {
  const auto text =
      csv_from_columns({"K", "error"}, {{1875.0, 7500.0}, {0.5, 0.25}});
  CHECK(text == "K,error\n1875,0.5\n7500,0.25\n");
}
