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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "closeness/distributions.hpp"
#include "closeness/gf2m.hpp"

namespace closeness {

__extension__ typedef __int128 Int128;

/// 4-wise independent sign family h_i : [n] -> {-1, +1}.
///
/// h_i(j) is the low bit of c0 + c1 x + c2 x^2 + c3 x^3 over GF(2^m), with
/// x = j read as a field element and (c0, c1, c2, c3) packed into the index as
/// i = c0 | c1 << m | c2 << 2m | c3 << 3m. For distinct points the four
/// evaluations are uniform over GF(2^m)^4, so any four signs are uniform over
/// {-1, +1}^4. Low bit 0 maps to +1.
///
/// The low bit is GF(2)-linear, so h_i(j) reduces to the parity of
/// (i >> m) & mask(j) xor the low bit of c0; `sign` uses that form and
/// `sign_by_evaluation` the direct polynomial evaluation.
class HashFamily {
   public:
    static constexpr unsigned kMaxFieldDegree = 15;

    /// Deterministic construction; both parties obtain identical families from n alone.
    static HashFamily build(std::size_t n);

    std::size_t n() const { return n_; }
    unsigned field_degree() const { return field_.degree(); }
    std::uint32_t modulus() const { return field_.modulus(); }
    std::uint64_t family_size() const { return std::uint64_t{1} << (4 * field_.degree()); }
    unsigned index_width() const { return 4 * field_.degree(); }

    int sign(std::uint64_t index, std::size_t j) const {
        const std::uint64_t lin = ((index >> field_.degree()) & masks_[j]) ^ (index & 1u);
        return (std::popcount(lin) & 1) ? -1 : 1;
    }
    int sign_by_evaluation(std::uint64_t index, std::size_t j) const;

    /// Packed parity mask of point j (see class comment).
    std::uint64_t mask(std::size_t j) const { return masks_[j]; }

    std::uint64_t draw_index(Rng& rng) const {
        return std::uniform_int_distribution<std::uint64_t>(0, family_size() - 1)(rng);
    }

    void check_index(std::uint64_t index) const;

   private:
    HashFamily(std::size_t n, unsigned m);

    std::size_t n_;
    Gf2m field_;
    std::vector<std::uint64_t> masks_;
};

/// Sparse integer vector over [n]; entries with value zero are omitted.
struct SparseVector {
    std::vector<std::uint32_t> index;
    std::vector<std::int64_t> value;

    static SparseVector from_dense(std::span<const std::int64_t> dense);
    std::int64_t l1() const;
};

/// sum_j h_i(j) * v_j.
std::int64_t sketch_sum(const HashFamily& family, std::uint64_t index, std::span<const std::int64_t> v);
std::int64_t sketch_sum(const HashFamily& family, std::uint64_t index, const SparseVector& v);

/// Sparse vector with each entry's parity mask gathered once, for repeated
/// evaluation of sketch_sum under one family. The kernel is compiled for
/// several instruction sets and picked at load time.
class PackedSketchInput {
   public:
    PackedSketchInput(const HashFamily& family, const SparseVector& v);

    /// Equals sketch_sum(family, index, v).
    std::int64_t sum(std::uint64_t index) const;
    std::size_t size() const { return values_.size(); }
    std::size_t n() const { return n_; }

   private:
    std::size_t n_;
    unsigned m_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::int64_t> values_;
};

struct SketchValue {
    std::int64_t value = 0;
    std::uint64_t index = 0;
};

/// (sum_j h_i(j) l_j)^2. Throws std::out_of_range for an index outside the
/// family and std::invalid_argument when l has the wrong length or
/// sum |l_j| exceeds 2^31.
SketchValue ams_f(const HashFamily& family, std::uint64_t index, std::span<const std::int64_t> l);

/// Exact family average of ams_f, kept as sum / count so equality checks are
/// integer comparisons.
struct ExactMean {
    Int128 sum = 0;
    std::uint64_t count = 0;

    bool equals(std::int64_t v) const { return sum == static_cast<Int128>(v) * count; }
    double value() const { return static_cast<double>(sum) / static_cast<double>(count); }
};

inline constexpr std::uint64_t kMaxEnumerableFamily = std::uint64_t{1} << 20;

/// Enumerates the whole family. Throws std::length_error above
/// kMaxEnumerableFamily; use classical_l2sq_estimate there.
ExactMean exact_mean_over_family(const HashFamily& family, std::span<const std::int64_t> l);

/// Median of `groups` means, each over `per_group` draws.
struct MedianOfMeansPlan {
    std::size_t groups = 1;
    std::size_t per_group = 1;

    /// groups = ceil(8 ln(1/delta)), per_group = ceil(c / alpha^2).
    static MedianOfMeansPlan for_accuracy(double alpha, double delta, double c = 16.0);
    std::size_t draws() const { return groups * per_group; }
};

template <class DrawFn>
double median_of_means(const MedianOfMeansPlan& plan, DrawFn&& draw) {
    std::vector<double> means(plan.groups);
    for (std::size_t g = 0; g < plan.groups; ++g) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k < plan.per_group; ++k) {
            acc += static_cast<long double>(draw(g));
        }
        means[g] = static_cast<double>(acc / static_cast<long double>(plan.per_group));
    }
    auto mid = means.begin() + static_cast<std::ptrdiff_t>(means.size() / 2);
    std::nth_element(means.begin(), mid, means.end());
    if (means.size() % 2 == 1) {
        return *mid;
    }
    double upper = *mid;
    double lower = *std::max_element(means.begin(), mid);
    return 0.5 * (lower + upper);
}

struct L2Estimate {
    double estimate = 0.0;
    std::size_t draws = 0;
};

/// Median-of-means AMS estimate of ||l||_2^2, within (1 +/- alpha) with
/// probability at least 1 - delta.
L2Estimate classical_l2sq_estimate(const HashFamily& family, std::span<const std::int64_t> l, double alpha,
                                   double delta, Rng& rng, double per_group_constant = 16.0);

void to_json(nlohmann::json& j, const HashFamily& family);
HashFamily hash_family_from_json(const nlohmann::json& j);

}  // namespace closeness
