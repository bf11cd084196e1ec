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
#include <span>
#include <vector>

#include "closeness/boolean.hpp"

namespace closeness {

/// One position (1-based) from each of the k consecutive blocks of size n/k.
using IndexSet = std::vector<std::size_t>;

/// V(n, k) in lexicographic order; |V(n,k)| = (n/k)^k. Throws unless k | n.
std::vector<IndexSet> enumerate_v(std::size_t n, std::size_t k);

inline constexpr std::uint64_t kMaxPatternEntries = std::uint64_t{1} << 26;

/// Rows x in {0,1}^n (x_1 most significant), columns (V, w) at index
/// V_index * 2^k + w. Entry phi(x|_V xor w).
struct PatternMatrix {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    /// Row-major real entries; * cells of a partial phi are 0.
    std::vector<double> real;
    /// Row-major three-valued entries; empty for a real-valued phi.
    std::vector<Tri> signs;

    double at(std::size_t r, std::size_t c) const { return real[r * cols + c]; }
};

/// 2^n (n/k)^k 2^k; throws std::invalid_argument unless k | n.
std::uint64_t pattern_entry_count(std::size_t n, std::size_t k);

/// (x|_V xor w) as an index into phi's table.
std::uint64_t pattern_argument(std::uint64_t x, std::size_t n, const IndexSet& v, std::uint64_t w, std::size_t k);

/// Throws std::length_error above kMaxPatternEntries.
PatternMatrix build_pattern_matrix(std::size_t n, std::size_t k, std::span<const double> phi);
PatternMatrix build_pattern_matrix(std::size_t n, std::size_t k, const PartialFunction& phi);

/// Largest singular value by dense SVD.
double spectral_norm_numeric(const PatternMatrix& m);
/// sqrt(2^{n+k} (n/k)^k) * max_S |phi_hat(S)| (k/n)^{|S|/2}.
double spectral_norm_formula(std::size_t n, std::size_t k, std::span<const double> phi);

struct SpectralCheck {
    double numeric = 0.0;
    double formula = 0.0;
    double relative_error = 0.0;
};

SpectralCheck spectral_norm_check(std::size_t n, std::size_t k, std::span<const double> phi);

}  // namespace closeness
