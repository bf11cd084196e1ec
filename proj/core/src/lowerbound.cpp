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

#include "closeness/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace closeness {

BitPair::BitPair(BitString x, BitString y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) {
        throw std::invalid_argument("BitPair strings must have equal length");
    }
    wx_ = weight(x_);
    wy_ = weight(y_);
    common_ = intersection(x_, y_);
}

std::vector<std::size_t> ghd_gap_intersections(std::size_t n, double kappa) {
    std::vector<std::size_t> out;
    if (n % 4 != 0) {
        return out;
    }
    const std::int64_t quarter = static_cast<std::int64_t>(n / 4);
    const long double upper = static_cast<long double>(kappa) * kappa * static_cast<long double>(n);
    for (std::int64_t s = 0; s < quarter; ++s) {
        const std::int64_t gap = quarter - s;
        const std::int64_t sq = 128 * gap * gap;
        if (sq >= static_cast<std::int64_t>(n) && static_cast<long double>(sq) <= upper) {
            out.push_back(static_cast<std::size_t>(s));
        }
    }
    return out;
}

BitPair gen_promised_ghd(std::size_t n, double kappa, GhdCase which, Rng& rng) {
    if (n == 0 || n % 4 != 0) {
        throw std::invalid_argument("PromisedGHD needs n divisible by 4");
    }
    if (!(kappa > 1.0)) {
        throw std::invalid_argument("PromisedGHD needs kappa > 1");
    }
    std::size_t s = n / 4;
    if (which == GhdCase::Gap) {
        const auto choices = ghd_gap_intersections(n, kappa);
        if (choices.empty()) {
            std::size_t need = n + 4;
            while (need < (std::size_t{1} << 24) && ghd_gap_intersections(need, kappa).empty()) {
                need += 4;
            }
            throw std::invalid_argument("PromisedGHD gap interval is empty for n=" + std::to_string(n) +
                                        ", kappa=" + std::to_string(kappa) + "; smallest n is " +
                                        std::to_string(need));
        }
        s = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    BitString x(n, 0);
    BitString y(n, 0);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
        x[perm[i]] = 1;
    }
    for (std::size_t i = 0; i < s; ++i) {
        y[perm[i]] = 1;
    }
    for (std::size_t i = 0; i < half - s; ++i) {
        y[perm[half + i]] = 1;
    }
    return BitPair(std::move(x), std::move(y));
}

BitPair pad_small_to_promised(const BitPair& small) {
    const std::size_t m = small.n();
    if (m == 0 || m % 4 != 0 || small.weight_x() != m / 2 || small.weight_y() != m / 2) {
        throw std::invalid_argument("padding needs n' divisible by 4 and balanced strings");
    }
    BitString x;
    BitString y;
    x.reserve(m * m);
    y.reserve(m * m);
    for (std::size_t r = 0; r < m; ++r) {
        x.insert(x.end(), small.x().begin(), small.x().end());
        y.insert(y.end(), small.y().begin(), small.y().end());
    }
    return BitPair(std::move(x), std::move(y));
}

Tri eval_Fn(const BitPair& pair) {
    const std::size_t n = pair.n();
    if (n % 4 != 0 || pair.weight_x() != n / 2 || pair.weight_y() != n / 2) {
        return Tri::Star;
    }
    if (pair.common() == n / 4) {
        return Tri::Minus;
    }
    if (pair.common() + 1 == n / 4) {
        return Tri::Plus;
    }
    return Tri::Star;
}

bool check_monotone_identity(const BitPair& pair) {
    const BitPair ext(concat(pair.x(), bits_from_string("0011")), concat(pair.y(), bits_from_string("0101")));
    return eval_Fn(pair) == eval_Fn(ext);
}

Tri eval_pmaj(const BitString& z) {
    const std::size_t k = z.size();
    if (k % 2 != 0) {
        throw std::invalid_argument("PMAJ_k needs even k");
    }
    const std::size_t w = weight(z);
    if (w == k / 2) {
        return Tri::Minus;
    }
    if (w + 1 == k / 2) {
        return Tri::Plus;
    }
    return Tri::Star;
}

PartialFunction pmaj_function(std::size_t k) { return PartialFunction::from(k, eval_pmaj); }

Tri eval_G(const BitPair& pair) {
    const std::size_t n = pair.n();
    if (n % 4 != 0) {
        throw std::invalid_argument("G needs length 4k");
    }
    const std::size_t k = n / 4;
    if (pair.weight_x() != 2 * k || pair.weight_y() != k) {
        return Tri::Star;
    }
    if (2 * pair.common() == k) {
        return Tri::Minus;
    }
    if (2 * (pair.common() + 1) == k) {
        return Tri::Plus;
    }
    return Tri::Star;
}

BitString doubled(const BitString& x) {
    BitString out;
    out.reserve(2 * x.size());
    for (auto b : x) {
        out.push_back(b);
        out.push_back(static_cast<std::uint8_t>(1 - b));
    }
    return out;
}

EmbeddingReport check_G_embeddings(std::size_t k) {
    if (k == 0 || k % 2 != 0 || k > 4) {
        throw std::invalid_argument("embedding check runs for even k <= 4");
    }
    EmbeddingReport rep;
    const std::size_t len = 4 * k;
    BitString ones_k(k, 1);
    BitString zeros_k(k, 0);
    BitString ones_2k(2 * k, 1);
    const BitString x_suffix = concat(ones_k, zeros_k);
    for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << len); ++xi) {
        const BitString x = index_to_bits(xi, len);
        const BitString xe = concat(x, x_suffix);
        for (std::uint64_t yi = 0; yi < (std::uint64_t{1} << len); ++yi) {
            const BitString y = index_to_bits(yi, len);
            const BitPair g(x, y);
            const BitPair f(xe, concat(y, ones_2k));
            ++rep.g_pairs_checked;
            if (eval_G(g) != eval_Fn(f)) {
                ++rep.g_mismatches;
            }
        }
    }

    const std::size_t n = 2 * k;
    const auto vs = enumerate_v(n, k);
    const PartialFunction pmaj = pmaj_function(k);
    for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << n); ++xi) {
        const BitString dx = doubled(index_to_bits(xi, n));
        for (const auto& v : vs) {
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << k); ++w) {
                const Tri p = pmaj.values[pattern_argument(xi, n, v, w, k)];
                BitString ind(2 * n, 0);
                for (std::size_t j = 0; j < k; ++j) {
                    const std::size_t wj = (w >> (k - 1 - j)) & 1u;
                    ind[2 * v[j] - 2 + wj] = 1;
                }
                ++rep.pattern_cells_checked;
                if (p != eval_G(BitPair(dx, ind))) {
                    ++rep.pattern_mismatches;
                }
            }
        }
    }
    return rep;
}

double pmm_bound(std::size_t n, std::size_t k, std::size_t d, double epsilon, double delta) {
    if (k == 0 || n % k != 0) {
        throw std::invalid_argument("pmm_bound needs k | n");
    }
    if (!(delta < epsilon / 2.0)) {
        throw std::invalid_argument("pmm_bound needs delta < epsilon / 2");
    }
    return static_cast<double>(d) / 4.0 * std::log2(static_cast<double>(n / k)) -
           0.5 * std::log2(3.0 / (epsilon - 2.0 * delta));
}

DiscrepancyResult discrepancy_bound(std::span<const double> psi, std::span<const Tri> f, std::size_t rows,
                                    std::size_t cols, double epsilon, std::optional<double> spectral_norm) {
    if (psi.size() != rows * cols || f.size() != rows * cols || rows == 0 || cols == 0) {
        throw std::invalid_argument("discrepancy_bound: shape mismatch");
    }
    DiscrepancyResult r;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        r.l1 += std::abs(psi[i]);
        r.correlation += f[i] == Tri::Star ? -std::abs(psi[i]) : static_cast<int>(f[i]) * psi[i];
    }
    if (std::abs(r.l1 - 1.0) > 1e-9) {
        throw std::invalid_argument("discrepancy_bound: ||Psi||_1 must be 1");
    }
    if (spectral_norm) {
        r.spectral_norm = *spectral_norm;
    } else {
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(psi.data(), rows,
                                                                                                 cols);
        Eigen::MatrixXd dense = a;
        Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
        r.spectral_norm = svd.singularValues()(0);
    }
    const double numerator = r.correlation - 2.0 * epsilon;
    const double denom = 3.0 * r.spectral_norm * std::sqrt(static_cast<double>(rows) * static_cast<double>(cols));
    r.raw = numerator > 0.0 ? std::log(numerator / denom) / std::log(4.0) : -std::numeric_limits<double>::infinity();
    r.bound = std::max(0.0, r.raw);
    return r;
}

}  // namespace closeness
