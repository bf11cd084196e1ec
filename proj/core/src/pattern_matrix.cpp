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

#include "closeness/pattern_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace closeness {

std::uint64_t pattern_entry_count(std::size_t n, std::size_t k) {
    if (k == 0 || n % k != 0 || n > 40) {
        throw std::invalid_argument("pattern matrix needs 0 < k, k | n and n <= 40");
    }
    long double count = std::ldexp(1.0L, static_cast<int>(n + k)) *
                        std::pow(static_cast<long double>(n / k), static_cast<long double>(k));
    if (count > 1e18L) {
        return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(count);
}

std::vector<IndexSet> enumerate_v(std::size_t n, std::size_t k) {
    if (k == 0 || n % k != 0) {
        throw std::invalid_argument("V(n,k) needs k | n");
    }
    const std::size_t block = n / k;
    std::vector<IndexSet> out;
    IndexSet cur(k, 0);
    while (true) {
        IndexSet v(k);
        for (std::size_t b = 0; b < k; ++b) {
            v[b] = b * block + cur[b] + 1;
        }
        out.push_back(std::move(v));
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (++cur[pos] < block) {
                break;
            }
            cur[pos] = 0;
            if (pos == 0) {
                return out;
            }
        }
    }
}

std::uint64_t pattern_argument(std::uint64_t x, std::size_t n, const IndexSet& v, std::uint64_t w, std::size_t k) {
    std::uint64_t z = 0;
    for (std::size_t j = 0; j < k; ++j) {
        z = (z << 1) | ((x >> (n - v[j])) & 1u);
    }
    return z ^ w;
}

namespace {

template <class Fill>
PatternMatrix build_common(std::size_t n, std::size_t k, Fill&& fill) {
    const std::uint64_t entries = pattern_entry_count(n, k);
    if (entries > kMaxPatternEntries) {
        throw std::length_error("pattern matrix exceeds the 2^26 entry guard");
    }
    PatternMatrix m;
    m.n = n;
    m.k = k;
    const auto vs = enumerate_v(n, k);
    m.rows = std::size_t{1} << n;
    m.cols = vs.size() << k;
    m.real.assign(m.rows * m.cols, 0.0);
    for (std::uint64_t x = 0; x < m.rows; ++x) {
        for (std::size_t vi = 0; vi < vs.size(); ++vi) {
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << k); ++w) {
                fill(m, x * m.cols + (vi << k) + w, pattern_argument(x, n, vs[vi], w, k));
            }
        }
    }
    return m;
}

}  // namespace

PatternMatrix build_pattern_matrix(std::size_t n, std::size_t k, std::span<const double> phi) {
    if (phi.size() != (std::size_t{1} << k)) {
        throw std::invalid_argument("phi must have 2^k values");
    }
    return build_common(n, k, [&](PatternMatrix& m, std::size_t cell, std::uint64_t z) { m.real[cell] = phi[z]; });
}

PatternMatrix build_pattern_matrix(std::size_t n, std::size_t k, const PartialFunction& phi) {
    if (phi.k != k) {
        throw std::invalid_argument("phi arity differs from k");
    }
    PatternMatrix m = build_common(n, k, [&](PatternMatrix& mm, std::size_t cell, std::uint64_t z) {
        mm.real[cell] = static_cast<double>(static_cast<int>(phi.values[z]));
    });
    m.signs.resize(m.real.size());
    std::transform(m.real.begin(), m.real.end(), m.signs.begin(), [](double v) {
        return v > 0 ? Tri::Plus : (v < 0 ? Tri::Minus : Tri::Star);
    });
    return m;
}

double spectral_norm_numeric(const PatternMatrix& m) {
    if (m.rows == 0 || m.cols == 0) {
        return 0.0;
    }
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(m.real.data(),
                                                                                             m.rows, m.cols);
    Eigen::MatrixXd dense = a;
    if (std::min(m.rows, m.cols) <= 256) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
        return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double spectral_norm_formula(std::size_t n, std::size_t k, std::span<const double> phi) {
    if (phi.size() != (std::size_t{1} << k)) {
        throw std::invalid_argument("phi must have 2^k values");
    }
    const auto coeff = fourier(phi);
    const double ratio = static_cast<double>(k) / static_cast<double>(n);
    double best = 0.0;
    for (std::uint64_t s = 0; s < coeff.size(); ++s) {
        best = std::max(best, std::abs(coeff[s]) * std::pow(ratio, 0.5 * static_cast<double>(subset_size(s))));
    }
    const double scale = std::sqrt(std::ldexp(1.0, static_cast<int>(n + k)) *
                                   std::pow(static_cast<double>(n / k), static_cast<double>(k)));
    return scale * best;
}

SpectralCheck spectral_norm_check(std::size_t n, std::size_t k, std::span<const double> phi) {
    SpectralCheck c;
    c.numeric = spectral_norm_numeric(build_pattern_matrix(n, k, phi));
    c.formula = spectral_norm_formula(n, k, phi);
    const double denom = std::max(std::abs(c.formula), std::abs(c.numeric));
    c.relative_error = denom == 0.0 ? 0.0 : std::abs(c.numeric - c.formula) / denom;
    return c;
}

}  // namespace closeness
