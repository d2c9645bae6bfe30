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

#include <charconv>
#include <sstream>
#include <string>

#include "qlbm/circuit.hpp"
#include "qlbm/error.hpp"
#include "qlbm/field_io.hpp"

namespace qlbm {
namespace {

constexpr std::string_view kMagic = "qlbm-circuit 1";

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join_controls(const std::vector<Control>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if (!v[i].value) s += '~';
    s += std::to_string(v[i].qubit);
  }
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += detail::format_double(v[i]);
  }
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw FormatError("circuit text line " + std::to_string(line) + ": " + what);
}

template <typename F>
auto with_line(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const FormatError& e) {
    fail(line, e.what());
  }
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line) {
  T v{};
  const auto* end = tok.data() + tok.size();
  const auto res = std::from_chars(tok.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) fail(line, "bad number '" + std::string(tok) + "'");
  return v;
}

// Splits the contents of one `[a,b,c]` group.
std::vector<std::string_view> split_group(std::string_view group, std::size_t line) {
  if (group.size() < 2 || group.front() != '[' || group.back() != ']') {
    fail(line, "expected a bracketed list, got '" + std::string(group) + "'");
  }
  group = group.substr(1, group.size() - 2);
  std::vector<std::string_view> out;
  if (group.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = group.find(',', start);
    out.push_back(group.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

int key_value(std::string_view tok, std::string_view key, std::size_t line) {
  if (tok.substr(0, key.size()) != key || tok.size() <= key.size() || tok[key.size()] != '=') {
    fail(line, "expected " + std::string(key) + "=<n>");
  }
  return parse_number<int>(tok.substr(key.size() + 1), line);
}

}  // namespace

std::string to_text(const CircuitIR& circuit) {
  std::ostringstream os;
  os << kMagic << '\n';
  const auto& l = circuit.layout;
  if (l.is_generic()) {
    os << "layout generic n=" << l.total_qubits() << '\n';
  } else {
    os << "layout dim=" << l.dimension() << " d=" << l.link_qubits() << " site=" << l.site_qubits()
       << " s=" << (l.has_source() ? 1 : 0) << " b=" << (l.has_boundary() ? 1 : 0) << '\n';
  }
  for (const auto& s : circuit.sections) {
    os << "section " << section_name(s.kind) << ' ' << s.begin << ' ' << s.end << '\n';
  }
  for (const auto& g : circuit.gates) {
    os << gate_kind_name(g.kind) << " [" << join_ints(g.targets) << "] ["
       << join_controls(g.controls) << "] [" << join_doubles(g.params) << "]\n";
  }
  return os.str();
}

CircuitIR circuit_from_text(std::string_view text) {
  CircuitIR c;
  std::size_t line_no = 0;
  bool have_magic = false;
  bool have_layout = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (!have_magic) {
      if (toks.size() != 2 || toks[0] != "qlbm-circuit" || toks[1] != "1") {
        fail(line_no, "missing 'qlbm-circuit 1' header");
      }
      have_magic = true;
      continue;
    }
    if (toks[0] == "layout") {
      if (have_layout) fail(line_no, "duplicate layout line");
      if (toks.size() == 3 && toks[1] == "generic") {
        c.layout = RegisterLayout::generic(key_value(toks[2], "n", line_no));
      } else if (toks.size() == 6) {
        c.layout = RegisterLayout::make(
            key_value(toks[1], "dim", line_no), key_value(toks[2], "d", line_no),
            key_value(toks[3], "site", line_no), key_value(toks[4], "s", line_no) != 0,
            key_value(toks[5], "b", line_no) != 0);
      } else {
        fail(line_no, "malformed layout line");
      }
      have_layout = true;
      continue;
    }
    if (!have_layout) fail(line_no, "gate or section before the layout line");
    if (toks[0] == "section") {
      if (toks.size() != 4) fail(line_no, "malformed section line");
      c.sections.push_back({with_line(line_no, [&] { return section_from_name(toks[1]); }),
                            parse_number<std::size_t>(toks[2], line_no),
                            parse_number<std::size_t>(toks[3], line_no)});
      continue;
    }
    if (toks.size() != 4) fail(line_no, "gate lines need KIND [targets] [controls] [params]");
    GateOp g;
    g.kind = with_line(line_no, [&] { return gate_kind_from_name(toks[0]); });
    for (auto t : split_group(toks[1], line_no)) g.targets.push_back(parse_number<int>(t, line_no));
    for (auto t : split_group(toks[2], line_no)) {
      const bool neg = !t.empty() && t.front() == '~';
      g.controls.push_back({parse_number<int>(neg ? t.substr(1) : t, line_no), !neg});
    }
    for (auto t : split_group(toks[3], line_no)) g.params.push_back(parse_number<double>(t, line_no));
    try {
      validate_gate(g);
    } catch (const ConfigurationError& e) {
      fail(line_no, e.what());
    }
    c.gates.push_back(std::move(g));
  }
  if (!have_magic) fail(line_no, "empty circuit text");
  if (!have_layout) fail(line_no, "missing layout line");
  try {
    c.validate();
  } catch (const ConfigurationError& e) {
    throw FormatError(std::string("circuit text: ") + e.what());
  }
  return c;
}

}  // namespace qlbm
