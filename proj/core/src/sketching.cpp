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

#include "closeness/sketching.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace closeness {

namespace {

constexpr std::int64_t kMaxL1 = std::int64_t{1} << 31;

}  // namespace

HashFamily::HashFamily(std::size_t n, unsigned m) : n_(n), field_(m), masks_(n) {
    // Low bit of (c * y) as a linear form in the bits of c.
    auto low_bit_form = [&](std::uint32_t y) {
        std::uint64_t form = 0;
        for (unsigned b = 0; b < m; ++b) {
            form |= static_cast<std::uint64_t>(field_.mul(1u << b, y) & 1u) << b;
        }
        return form;
    };
    for (std::size_t j = 0; j < n; ++j) {
        auto x = static_cast<std::uint32_t>(j);
        auto x2 = field_.mul(x, x);
        auto x3 = field_.mul(x2, x);
        masks_[j] = low_bit_form(x) | (low_bit_form(x2) << m) | (low_bit_form(x3) << (2 * m));
    }
}

HashFamily HashFamily::build(std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("HashFamily: n must be >= 1");
    }
    unsigned m = 1;
    while ((std::size_t{1} << m) < n) {
        ++m;
    }
    if (m > kMaxFieldDegree) {
        throw std::invalid_argument("HashFamily: n = " + std::to_string(n) + " exceeds 2^15");
    }
    return HashFamily(n, m);
}

int HashFamily::sign_by_evaluation(std::uint64_t index, std::size_t j) const {
    const unsigned m = field_.degree();
    const std::uint64_t field_mask = (std::uint64_t{1} << m) - 1;
    const auto c = [&](unsigned k) { return static_cast<std::uint32_t>((index >> (k * m)) & field_mask); };
    const auto x = static_cast<std::uint32_t>(j);
    // Horner: ((c3 x + c2) x + c1) x + c0.
    std::uint32_t v = c(3);
    v = field_.add(field_.mul(v, x), c(2));
    v = field_.add(field_.mul(v, x), c(1));
    v = field_.add(field_.mul(v, x), c(0));
    return (v & 1u) ? -1 : 1;
}

void HashFamily::check_index(std::uint64_t index) const {
    if (index >= family_size()) {
        throw std::out_of_range("hash index " + std::to_string(index) + " outside family of size " +
                                std::to_string(family_size()));
    }
}

SparseVector SparseVector::from_dense(std::span<const std::int64_t> dense) {
    SparseVector s;
    for (std::size_t j = 0; j < dense.size(); ++j) {
        if (dense[j] != 0) {
            s.index.push_back(static_cast<std::uint32_t>(j));
            s.value.push_back(dense[j]);
        }
    }
    return s;
}

std::int64_t SparseVector::l1() const {
    std::int64_t s = 0;
    for (auto v : value) {
        s += v < 0 ? -v : v;
    }
    return s;
}

std::int64_t sketch_sum(const HashFamily& family, std::uint64_t index, std::span<const std::int64_t> v) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        s += family.sign(index, j) * v[j];
    }
    return s;
}

std::int64_t sketch_sum(const HashFamily& family, std::uint64_t index, const SparseVector& v) {
    const unsigned m = family.field_degree();
    const std::uint64_t coeffs = index >> m;
    const std::int64_t flip = (index & 1u) ? -1 : 1;
    std::int64_t s = 0;
    for (std::size_t k = 0; k < v.index.size(); ++k) {
        const int odd = std::popcount(coeffs & family.mask(v.index[k])) & 1;
        s += odd ? -v.value[k] : v.value[k];
    }
    return flip * s;
}

namespace {

__attribute__((target_clones("arch=icelake-server", "popcnt", "default"))) std::int64_t packed_kernel(
    const std::uint64_t* masks, const std::int64_t* values, std::size_t size, std::uint64_t coeffs) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < size; ++k) {
        const std::int64_t odd = __builtin_popcountll(coeffs & masks[k]) & 1;
        s += values[k] - 2 * (values[k] & -odd);
    }
    return s;
}

}  // namespace

PackedSketchInput::PackedSketchInput(const HashFamily& family, const SparseVector& v)
    : n_(family.n()), m_(family.field_degree()), values_(v.value) {
    masks_.reserve(v.index.size());
    for (auto j : v.index) {
        if (j >= family.n()) {
            throw std::out_of_range("sparse entry outside the family domain");
        }
        masks_.push_back(family.mask(j));
    }
}

std::int64_t PackedSketchInput::sum(std::uint64_t index) const {
    const std::int64_t s = packed_kernel(masks_.data(), values_.data(), values_.size(), index >> m_);
    return (index & 1u) ? -s : s;
}

SketchValue ams_f(const HashFamily& family, std::uint64_t index, std::span<const std::int64_t> l) {
    family.check_index(index);
    if (l.size() != family.n()) {
        throw std::invalid_argument("ams_f: vector length does not match family domain");
    }
    std::int64_t l1 = 0;
    for (auto v : l) {
        l1 += v < 0 ? -v : v;
    }
    if (l1 > kMaxL1) {
        throw std::invalid_argument("ams_f: sum |l_j| exceeds 2^31; squares would overflow");
    }
    const std::int64_t s = sketch_sum(family, index, l);
    return {s * s, index};
}

ExactMean exact_mean_over_family(const HashFamily& family, std::span<const std::int64_t> l) {
    if (family.family_size() > kMaxEnumerableFamily) {
        throw std::length_error("exact_mean_over_family: family of size " + std::to_string(family.family_size()) +
                                " is too large to enumerate; use classical_l2sq_estimate");
    }
    ExactMean mean;
    mean.count = family.family_size();
    for (std::uint64_t i = 0; i < mean.count; ++i) {
        mean.sum += ams_f(family, i, l).value;
    }
    return mean;
}

MedianOfMeansPlan MedianOfMeansPlan::for_accuracy(double alpha, double delta, double c) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("median of means: alpha must lie in (0, 1]");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("median of means: delta must lie in (0, 1)");
    }
    MedianOfMeansPlan plan;
    plan.groups = static_cast<std::size_t>(std::ceil(8.0 * std::log(1.0 / delta)));
    plan.groups = std::max<std::size_t>(plan.groups, 1);
    plan.per_group = static_cast<std::size_t>(std::ceil(c / (alpha * alpha)));
    return plan;
}

L2Estimate classical_l2sq_estimate(const HashFamily& family, std::span<const std::int64_t> l, double alpha,
                                   double delta, Rng& rng, double per_group_constant) {
    const auto plan = MedianOfMeansPlan::for_accuracy(alpha, delta, per_group_constant);
    if (l.size() != family.n()) {
        throw std::invalid_argument("classical_l2sq_estimate: vector length does not match family domain");
    }
    const auto sparse = SparseVector::from_dense(l);
    if (sparse.l1() > kMaxL1) {
        throw std::invalid_argument("classical_l2sq_estimate: sum |l_j| exceeds 2^31");
    }
    L2Estimate out;
    out.draws = plan.draws();
    out.estimate = median_of_means(plan, [&](std::size_t) {
        const std::int64_t s = sketch_sum(family, family.draw_index(rng), sparse);
        return static_cast<double>(s * s);
    });
    return out;
}

void to_json(nlohmann::json& j, const HashFamily& family) {
    j = {{"n", family.n()},
         {"field", "GF(2^m)"},
         {"field_degree", family.field_degree()},
         {"modulus", family.modulus()},
         {"family_size", family.family_size()},
         {"index_width", family.index_width()},
         {"coefficient_layout", "i = c0 | c1<<m | c2<<2m | c3<<3m"},
         {"sign", "low bit of c0 + c1 x + c2 x^2 + c3 x^3; 0 -> +1"}};
}

HashFamily hash_family_from_json(const nlohmann::json& j) {
    auto family = HashFamily::build(j.at("n").get<std::size_t>());
    if (j.contains("field_degree") && j.at("field_degree").get<unsigned>() != family.field_degree()) {
        throw std::invalid_argument("hash family json: field degree mismatch");
    }
    if (j.contains("modulus") && j.at("modulus").get<std::uint32_t>() != family.modulus()) {
        throw std::invalid_argument("hash family json: modulus mismatch");
    }
    return family;
}

}  // namespace closeness
