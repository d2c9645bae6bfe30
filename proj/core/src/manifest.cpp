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

#include "qlbm/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qlbm/error.hpp"

namespace qlbm {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == '-';
  });
}

template <typename T>
bool parse_full(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  if constexpr (std::is_unsigned_v<T>) {
    if (s.front() == '-') return false;
  }
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto c = s.find(',', start);
    out.push_back(trim(s.substr(start, c - start)));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

}  // namespace

Manifest Manifest::parse(std::string_view text) {
  Manifest m;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) throw ManifestError(line, "expected 'key = value'");
    const auto key = trim(raw.substr(0, eq));
    const auto value = trim(raw.substr(eq + 1));
    if (!valid_key(key)) throw ManifestError(line, "invalid key '" + std::string(key) + "'");
    if (value.empty()) throw ManifestError(line, "key '" + std::string(key) + "' has no value");
    if (m.entries_.count(key) != 0) {
      throw ManifestError(line, "duplicate key '" + std::string(key) + "'");
    }
    m.entries_.emplace(std::string(key), Entry{std::string(value), line});
  }
  return m;
}

Manifest Manifest::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError(0, "cannot open manifest '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Manifest::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::size_t Manifest::line_of(std::string_view key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

void Manifest::set(std::string_view key, std::string value) {
  entries_[std::string(key)] = Entry{std::move(value), 0};
}

std::vector<std::string> Manifest::keys() const {
  std::vector<std::string> k;
  for (const auto& [key, _] : entries_) k.push_back(key);
  return k;
}

void Manifest::require_known(std::span<const std::string_view> allowed) const {
  for (const auto& [key, e] : entries_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ManifestError(e.line, "unknown key '" + key + "'");
    }
  }
}

const Manifest::Entry& Manifest::entry(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ManifestError(0, "missing required key '" + std::string(key) + "'");
  return it->second;
}

std::string Manifest::get_string(std::string_view key) const { return entry(key).value; }

std::string Manifest::get_string(std::string_view key, std::string_view fallback) const {
  return has(key) ? entry(key).value : std::string(fallback);
}

std::int64_t Manifest::get_int(std::string_view key) const {
  const auto& e = entry(key);
  std::int64_t v = 0;
  if (!parse_full(e.value, v)) {
    throw ManifestError(e.line, "'" + std::string(key) + "' must be an integer");
  }
  return v;
}

std::int64_t Manifest::get_int(std::string_view key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t Manifest::get_uint(std::string_view key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const auto& e = entry(key);
  std::uint64_t v = 0;
  if (!parse_full(e.value, v)) {
    throw ManifestError(e.line, "'" + std::string(key) + "' must be a non-negative integer");
  }
  return v;
}

double Manifest::get_double(std::string_view key) const {
  const auto& e = entry(key);
  double v = 0.0;
  if (!parse_full(e.value, v) || !std::isfinite(v)) {
    throw ManifestError(e.line, "'" + std::string(key) + "' must be a finite number");
  }
  return v;
}

double Manifest::get_double(std::string_view key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::vector<double> Manifest::get_doubles(std::string_view key) const {
  const auto& e = entry(key);
  std::vector<double> out;
  for (auto tok : split_commas(e.value)) {
    double v = 0.0;
    if (!parse_full(tok, v) || !std::isfinite(v)) {
      throw ManifestError(e.line, "'" + std::string(key) + "' must list finite numbers");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> Manifest::get_uints(std::string_view key) const {
  const auto& e = entry(key);
  std::vector<std::uint64_t> out;
  for (auto tok : split_commas(e.value)) {
    std::uint64_t v = 0;
    if (!parse_full(tok, v)) {
      throw ManifestError(e.line, "'" + std::string(key) + "' must list non-negative integers");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace qlbm
