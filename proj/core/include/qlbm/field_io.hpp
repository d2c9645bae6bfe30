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

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qlbm/lattice.hpp"

namespace qlbm {

/// CSV with header `x,y,value`, one row per site in row-major order. Values
/// are written with 17 significant digits so they read back exactly.
void write_field_csv(std::ostream& os, const ScalarField& field);

/// Binary snapshot, little-endian:
///   "QLBF" | u32 nx | u32 ny | f64 values[nx*ny] (row-major)
void write_field_binary(std::ostream& os, const ScalarField& field);
ScalarField read_field_binary(std::istream& is);

namespace detail {
void put_u32(std::ostream& os, std::uint32_t v);
void put_f64(std::ostream& os, double v);
std::uint32_t get_u32(std::istream& is);
double get_f64(std::istream& is);
/// printf("%.17g") without locale surprises.
std::string format_double(double v);
}  // namespace detail

}  // namespace qlbm
