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

#include <optional>
#include <span>

#include "closeness/boolean.hpp"
#include "closeness/distributions.hpp"
#include "closeness/pattern_matrix.hpp"

namespace closeness {

/// Equal-length strings with cached weights and intersection size.
class BitPair {
   public:
    BitPair(BitString x, BitString y);

    const BitString& x() const { return x_; }
    const BitString& y() const { return y_; }
    std::size_t n() const { return x_.size(); }
    std::size_t weight_x() const { return wx_; }
    std::size_t weight_y() const { return wy_; }
    std::size_t common() const { return common_; }

   private:
    BitString x_;
    BitString y_;
    std::size_t wx_;
    std::size_t wy_;
    std::size_t common_;
};

enum class GhdCase { Quarter, Gap };

/// Integers s with n/4 - kappa*beta/2 <= s <= n/4 - beta/2, beta = sqrt(n/32),
/// decided exactly: 128 (n/4 - s)^2 >= n and 128 (n/4 - s)^2 <= kappa^2 n.
std::vector<std::size_t> ghd_gap_intersections(std::size_t n, double kappa);

/// Balanced pair with |x cap y| = n/4 (Quarter) or uniform on the Gap
/// interval. Throws std::invalid_argument for n % 4 != 0, kappa <= 1, or an
/// empty interval (the message names the smallest n that works).
BitPair gen_promised_ghd(std::size_t n, double kappa, GhdCase which, Rng& rng);

/// Repeats x' and y' n' times each.
BitPair pad_small_to_promised(const BitPair& small);

/// F_n: -1 at |x cap y| = n/4, +1 at n/4 - 1, both balanced; * otherwise.
Tri eval_Fn(const BitPair& pair);
/// F_n(x, y) == F_{n+4}(x0011, y0101).
bool check_monotone_identity(const BitPair& pair);

/// -1 at |z| = k/2, +1 at k/2 - 1, * otherwise; k even.
Tri eval_pmaj(const BitString& z);
PartialFunction pmaj_function(std::size_t k);
/// G on {0,1}^{4k} pairs: -1 at |x| = 2k, |y| = k, |x cap y| = k/2; +1 at k/2 - 1.
Tri eval_G(const BitPair& pair);

/// x_1 !x_1 x_2 !x_2 ...
BitString doubled(const BitString& x);

struct EmbeddingReport {
    std::uint64_t g_pairs_checked = 0;
    std::uint64_t g_mismatches = 0;
    std::uint64_t pattern_cells_checked = 0;
    std::uint64_t pattern_mismatches = 0;
    bool ok() const { return g_mismatches == 0 && pattern_mismatches == 0; }
};

/// (a) G(x, y) == F_{6k}(x 1^k 0^k, y 1^{2k}) for every pair in {0,1}^{4k};
/// (b) every entry PMAJ_k(x|_V xor w) of the (2k, k, PMAJ_k) pattern matrix
/// equals G(doubled(x), indicator of V') with V' picking position 2v - 1 + w.
EmbeddingReport check_G_embeddings(std::size_t k);

/// (d/4) log2(n/k) - (1/2) log2(3/(epsilon - 2 delta)); throws when delta >= epsilon/2.
double pmm_bound(std::size_t n, std::size_t k, std::size_t d, double epsilon, double delta);

struct DiscrepancyResult {
    /// sum_dom Psi F - sum_{not dom} |Psi|.
    double correlation = 0.0;
    double spectral_norm = 0.0;
    double l1 = 0.0;
    /// log4 of the unclamped ratio; -inf when the numerator is not positive.
    double raw = 0.0;
    double bound = 0.0;
};

/// log4 max(1, (correlation - 2 epsilon) / (3 ||Psi|| sqrt(|X||Y|))). Psi and
/// F are row-major of the given shape; the spectral norm is computed by SVD
/// unless supplied. Throws std::invalid_argument on a shape mismatch or
/// ||Psi||_1 != 1 beyond 1e-9.
DiscrepancyResult discrepancy_bound(std::span<const double> psi, std::span<const Tri> f, std::size_t rows,
                                    std::size_t cols, double epsilon,
                                    std::optional<double> spectral_norm = std::nullopt);

}  // namespace closeness
