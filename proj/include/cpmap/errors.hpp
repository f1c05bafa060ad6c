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

#ifndef CPMAP_ERRORS_HPP_
#define CPMAP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cpmap {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string &msg) : Error(msg) {}
};

struct NotHermitian : Error {
  explicit NotHermitian(const std::string &msg) : Error(msg) {}
};

struct NotPositiveSemidefinite : Error {
  explicit NotPositiveSemidefinite(const std::string &msg) : Error(msg) {}
};

struct NonSquareChannel : Error {
  explicit NonSquareChannel(const std::string &msg) : Error(msg) {}
};

struct InvalidProbabilities : Error {
  explicit InvalidProbabilities(const std::string &msg) : Error(msg) {}
};

struct ObjectiveNotFinite : Error {
  explicit ObjectiveNotFinite(const std::string &msg) : Error(msg) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string &msg) : Error(msg) {}
};

// Malformed or inconsistent data in an external file.
struct FormatError : Error {
  explicit FormatError(const std::string &msg) : Error(msg) {}
};

}  // namespace cpmap

#endif  // CPMAP_ERRORS_HPP_
