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
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace closeness {

/// Bits x_1 ... x_n stored at positions 0 ... n-1.
using BitString = std::vector<std::uint8_t>;

/// Parses "1100"; throws std::invalid_argument on other characters.
BitString bits_from_string(const std::string& s);
std::string to_string(const BitString& x);
std::size_t weight(const BitString& x);
std::size_t intersection(const BitString& x, const BitString& y);
BitString concat(const BitString& a, const BitString& b);

/// Integer index of x with x_1 as the most significant bit.
std::uint64_t bits_to_index(const BitString& x);
BitString index_to_bits(std::uint64_t index, std::size_t n);

/// Three-valued output: -1, +1 or undefined (*).
enum class Tri : std::int8_t { Minus = -1, Star = 0, Plus = 1 };

std::string to_string(Tri v);
inline Tri tri_of_sign(int s) { return s < 0 ? Tri::Minus : Tri::Plus; }

/// f : {0,1}^k -> {-1, +1, *}, tabulated by bits_to_index.
struct PartialFunction {
    std::size_t k = 0;
    std::vector<Tri> values;

    static PartialFunction from(std::size_t k, const std::function<Tri(const BitString&)>& f);
    /// Symmetric function given by its value on each Hamming weight 0..k.
    static PartialFunction symmetric(std::size_t k, std::span<const Tri> by_weight);

    Tri operator()(const BitString& x) const { return values[bits_to_index(x)]; }
    bool in_domain(std::uint64_t index) const { return values[index] != Tri::Star; }
    std::size_t domain_size() const;
    bool is_total() const { return domain_size() == values.size(); }
    bool is_symmetric() const;
    /// Values as reals with * read as 0.
    std::vector<double> real_values() const;
};

/// Subsets S of [k] use the same bit convention as inputs: chi_S(x) =
/// (-1)^{popcount(S & x)} with both read through bits_to_index.
inline int chi(std::uint64_t s, std::uint64_t x) { return (__builtin_popcountll(s & x) & 1) ? -1 : 1; }
std::size_t subset_size(std::uint64_t s);

/// f_hat(S) = 2^{-k} sum_x f(x) chi_S(x) by the fast Walsh-Hadamard
/// transform; f.size() must be 2^k with k <= 20.
std::vector<double> fourier(std::span<const double> f);
/// f(x) = sum_S f_hat(S) chi_S(x).
std::vector<double> inverse_fourier(std::span<const double> coefficients);

}  // namespace closeness
