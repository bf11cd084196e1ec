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

#pragma once

#include <cstdint>

namespace closeness {

/// Binary extension field GF(2^m), 1 <= m <= 16, in polynomial basis.
///
/// Elements are the integers [0, 2^m); bit b is the coefficient of x^b.
/// Multiplication is carry-less and reduced by the lexicographically smallest
/// irreducible polynomial of degree m.
class Gf2m {
   public:
    static constexpr unsigned kMaxDegree = 16;

    explicit Gf2m(unsigned m);

    unsigned degree() const { return m_; }
    std::uint32_t order() const { return 1u << m_; }
    /// Reduction polynomial including the x^m term.
    std::uint32_t modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;

   private:
    unsigned m_;
    std::uint32_t modulus_;
};

/// True if the GF(2)[x] polynomial `poly` (bit b = coefficient of x^b) is irreducible.
bool is_irreducible_gf2(std::uint32_t poly);

/// Smallest irreducible polynomial of degree m over GF(2).
std::uint32_t smallest_irreducible_gf2(unsigned m);

}  // namespace closeness
