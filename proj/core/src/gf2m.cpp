// Copyright 2026 The closeness-lab Authors
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

#include "closeness/gf2m.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace closeness {

namespace {

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = poly_degree(m);
    for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) {
        a ^= m << (da - dm);
    }
    return a;
}

}  // namespace

bool is_irreducible_gf2(std::uint32_t poly) {
    const int d = poly_degree(poly);
    if (d < 1) {
        return false;
    }
    // Trial division by every polynomial of degree 1..d/2.
    for (std::uint64_t q = 2; poly_degree(q) <= d / 2; ++q) {
        if (poly_mod(poly, q) == 0) {
            return false;
        }
    }
    return true;
}

std::uint32_t smallest_irreducible_gf2(unsigned m) {
    if (m < 1 || m > 31) {
        throw std::invalid_argument("smallest_irreducible_gf2: degree out of range");
    }
    for (std::uint32_t p = 1u << m; p < (2u << m); ++p) {
        if (is_irreducible_gf2(p)) {
            return p;
        }
    }
    throw std::logic_error("no irreducible polynomial of degree " + std::to_string(m));
}

Gf2m::Gf2m(unsigned m) : m_(m) {
    if (m < 1 || m > kMaxDegree) {
        throw std::invalid_argument("Gf2m: degree must be in [1, 16]");
    }
    modulus_ = smallest_irreducible_gf2(m);
}

std::uint32_t Gf2m::mul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t acc = 0;
    for (std::uint64_t x = a; b != 0; b >>= 1, x <<= 1) {
        if (b & 1u) {
            acc ^= x;
        }
    }
    return static_cast<std::uint32_t>(poly_mod(acc, modulus_));
}

}  // namespace closeness
