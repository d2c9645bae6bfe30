// Copyright 2026 The QLBM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlbm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent shapes, non-power-of-two extents, bad qubit indices.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Amplitude encoding of a vector that has no direction (all zeros).
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// The requested measurement branch has (numerically) zero probability.
class PostSelectionError : public Error {
 public:
  using Error::Error;
};

/// A collision coefficient falls outside [-1, 1] and cannot be block encoded.
class CoefficientRangeError : public Error {
 public:
  using Error::Error;
};

/// A time-stepping driver produced a non-finite value.
class DivergenceError : public Error {
 public:
  DivergenceError(int step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

  int step() const noexcept { return step_; }

 private:
  int step_;
};

/// Malformed serialized data (circuit text, binary dumps).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Run manifest parse or validation failure. `line` is 1-based, 0 if unknown.
class ManifestError : public Error {
 public:
  ManifestError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qlbm
