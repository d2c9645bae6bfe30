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

#include "qlbm/field_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>

#include "qlbm/error.hpp"

namespace qlbm {
namespace detail {

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  os.write(b.data(), b.size());
}

void put_f64(std::ostream& os, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  os.write(b.data(), b.size());
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw FormatError("unexpected end of binary stream");
  }
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw FormatError("unexpected end of binary stream");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

}  // namespace detail

void write_field_csv(std::ostream& os, const ScalarField& field) {
  os << "x,y,value\n";
  for (std::size_t y = 0; y < field.dims.ny; ++y) {
    for (std::size_t x = 0; x < field.dims.nx; ++x) {
      os << x << ',' << y << ',' << detail::format_double(field.at(x, y)) << '\n';
    }
  }
}

void write_field_binary(std::ostream& os, const ScalarField& field) {
  os.write("QLBF", 4);
  detail::put_u32(os, static_cast<std::uint32_t>(field.dims.nx));
  detail::put_u32(os, static_cast<std::uint32_t>(field.dims.ny));
  for (double v : field.values) detail::put_f64(os, v);
}

ScalarField read_field_binary(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || std::memcmp(magic.data(), "QLBF", 4) != 0) {
    throw FormatError("not a QLBF field dump");
  }
  const std::size_t nx = detail::get_u32(is);
  const std::size_t ny = detail::get_u32(is);
  ScalarField field(Extents{nx, ny});
  for (auto& v : field.values) v = detail::get_f64(is);
  return field;
}

}  // namespace qlbm
