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
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qlbm {

/// Plain `key = value` run manifest. `#` starts a comment; blank lines are
/// ignored; keys are unique. Every error names the offending line.
class Manifest {
 public:
  static Manifest parse(std::string_view text);
  static Manifest load(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  /// Line of `key` in the source text, 0 for overrides and missing keys.
  std::size_t line_of(std::string_view key) const;
  /// Replaces or adds a key (command-line overrides).
  void set(std::string_view key, std::string value);
  std::vector<std::string> keys() const;
  /// Throws ManifestError for the first key outside `allowed`.
  void require_known(std::span<const std::string_view> allowed) const;

  std::string get_string(std::string_view key) const;
  std::string get_string(std::string_view key, std::string_view fallback) const;
  std::int64_t get_int(std::string_view key) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
  double get_double(std::string_view key) const;
  double get_double(std::string_view key, double fallback) const;
  /// Comma-separated list of doubles.
  std::vector<double> get_doubles(std::string_view key) const;
  /// Comma-separated list of non-negative integers.
  std::vector<std::uint64_t> get_uints(std::string_view key) const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  const Entry& entry(std::string_view key) const;

  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace qlbm
