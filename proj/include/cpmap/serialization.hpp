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

#ifndef CPMAP_SERIALIZATION_HPP_
#define CPMAP_SERIALIZATION_HPP_

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cpmap/channels.hpp"
#include "cpmap/complex_matrix.hpp"
#include "cpmap/errors.hpp"
#include "cpmap/experiment.hpp"

namespace cpmap {

using Json = nlohmann::ordered_json;

//=========================================================================
// ComplexMatrix <-> JSON: {rows, cols, entries: [[re, im], ...]} row-major
//=========================================================================

inline Json matrix_to_json(const ComplexMatrix &m) {
  Json entries = Json::array();
  for (const auto &e : m.entries())
    entries.push_back(Json::array({e.real(), e.imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline ComplexMatrix matrix_from_json(const Json &j) {
  try {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto &entries = j.at("entries");
    if (entries.size() != rows * cols)
      throw FormatError("matrix entries length mismatch");
    ComplexVector data;
    data.reserve(entries.size());
    for (const auto &e : entries)
      data.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return ComplexMatrix(rows, cols, std::move(data));
  } catch (const Json::exception &e) {
    throw FormatError(std::string("bad matrix object: ") + e.what());
  }
}

//=========================================================================
// Channel description files: {"dim_in", "dim_out", "kraus": [...]}, or
// {"dim_in", "dim_out", "choi": {...}}
//=========================================================================

inline Json kraus_to_json(const KrausSet &k) {
  Json ops = Json::array();
  for (const auto &op : k.operators()) ops.push_back(matrix_to_json(op));
  return Json{{"dim_in", k.dim_in()}, {"dim_out", k.dim_out()}, {"kraus", ops}};
}

inline Json choi_to_json(const ChoiMatrix &c) {
  return Json{{"dim_in", c.dim_in()},
              {"dim_out", c.dim_out()},
              {"choi", matrix_to_json(c.matrix())}};
}

// Accepts either form and returns the Choi representation.
inline ChoiMatrix channel_from_json(const Json &j) {
  try {
    const std::size_t dim_in = j.at("dim_in").get<std::size_t>();
    const std::size_t dim_out = j.at("dim_out").get<std::size_t>();
    if (j.contains("choi"))
      return ChoiMatrix(dim_in, dim_out, matrix_from_json(j.at("choi")));
    if (j.contains("kraus")) {
      std::vector<ComplexMatrix> ops;
      for (const auto &op : j.at("kraus")) ops.push_back(matrix_from_json(op));
      return choi_from_kraus(KrausSet(dim_in, dim_out, std::move(ops)));
    }
  } catch (const Json::exception &e) {
    throw FormatError(std::string("bad channel object: ") + e.what());
  }
  throw FormatError("channel object needs a 'kraus' or 'choi' key");
}

inline void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open for writing: " + path);
  out << text;
  if (!out) throw FormatError("write failed: " + path);
}

inline std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ChoiMatrix read_channel_file(const std::string &path) {
  try {
    return channel_from_json(Json::parse(read_text_file(path)));
  } catch (const Json::exception &e) {
    throw FormatError("cannot parse channel file " + path + ": " + e.what());
  }
}

//=========================================================================
// Measurement record files
//
// Line-delimited: a header object followed by one record per line,
// {"psi": [[re,im],[re,im]], "dir": [x,y,z], "out": +1|-1}.
//=========================================================================

struct RecordFileHeader {
  int format = 1;
  std::size_t dim_in = 2;
  std::size_t dim_out = 2;
  std::uint64_t seed = 0;
  std::string channel;
};

inline std::string record_file_to_string(
    const RecordFileHeader &header, const std::vector<MeasurementRecord> &records) {
  std::string out;
  Json h{{"format", header.format}, {"N", header.dim_in},
         {"M", header.dim_out},    {"seed", header.seed},
         {"channel", header.channel}, {"rng", Rng::algorithm()}};
  out += h.dump();
  out += '\n';
  for (const auto &rec : records) {
    Json psi = Json::array();
    for (const auto &a : rec.state.amplitudes())
      psi.push_back(Json::array({a.real(), a.imag()}));
    const auto &d = rec.measurement.direction();
    Json line{{"psi", psi},
              {"dir", Json::array({d[0], d[1], d[2]})},
              {"out", static_cast<int>(rec.outcome)}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

inline void write_record_file(const std::string &path,
                              const RecordFileHeader &header,
                              const std::vector<MeasurementRecord> &records) {
  write_text_file(path, record_file_to_string(header, records));
}

struct RecordFile {
  RecordFileHeader header;
  std::vector<MeasurementRecord> records;
};

inline RecordFile parse_record_file(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("record file is empty");
  RecordFile file;
  try {
    const Json h = Json::parse(line);
    file.header.format = h.at("format").get<int>();
    if (file.header.format != 1)
      throw FormatError("unsupported record file format");
    file.header.dim_in = h.at("N").get<std::size_t>();
    file.header.dim_out = h.at("M").get<std::size_t>();
    file.header.seed = h.at("seed").get<std::uint64_t>();
    file.header.channel = h.value("channel", std::string{});
  } catch (const Json::exception &e) {
    throw FormatError(std::string("bad record file header: ") + e.what());
  }
  if (file.header.dim_in != 2 || file.header.dim_out != 2)
    throw FormatError("record files hold qubit data (N = M = 2)");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const Json r = Json::parse(line);
      ComplexVector amps;
      for (const auto &a : r.at("psi"))
        amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
      const auto &d = r.at("dir");
      ProjectiveMeasurement m({d.at(0).get<double>(), d.at(1).get<double>(),
                               d.at(2).get<double>()});
      const int out = r.at("out").get<int>();
      if (out != 1 && out != -1) throw FormatError("outcome must be +1 or -1");
      file.records.push_back({PureState(std::move(amps)), std::move(m),
                              out == 1 ? Outcome::Plus : Outcome::Minus});
    } catch (const Json::exception &e) {
      throw FormatError("bad record at line " + std::to_string(lineno) + ": " +
                        e.what());
    } catch (const Error &e) {
      throw FormatError("bad record at line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return file;
}

inline RecordFile read_record_file(const std::string &path) {
  return parse_record_file(read_text_file(path));
}

//=========================================================================
// CSV output for the study runners
//=========================================================================

inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string csv_from_columns(
    const std::vector<std::string> &names,
    const std::vector<std::vector<double>> &columns) {
  std::string out;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c) out += ',';
    out += names[c];
  }
  out += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      out += format_full(columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace cpmap

#endif  // CPMAP_SERIALIZATION_HPP_
