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

#include "closeness/boolean.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace closeness {

BitString bits_from_string(const std::string& s) {
    BitString x;
    x.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string may only contain 0 and 1: '" + s + "'");
        }
        x.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return x;
}

std::string to_string(const BitString& x) {
    std::string s;
    s.reserve(x.size());
    for (auto b : x) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

std::size_t weight(const BitString& x) { return static_cast<std::size_t>(std::count(x.begin(), x.end(), 1)); }

std::size_t intersection(const BitString& x, const BitString& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("intersection of strings of different length");
    }
    std::size_t c = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        c += (x[i] & y[i]) ? 1 : 0;
    }
    return c;
}

BitString concat(const BitString& a, const BitString& b) {
    BitString out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::uint64_t bits_to_index(const BitString& x) {
    if (x.size() > 63) {
        throw std::invalid_argument("bit string too long for an index");
    }
    std::uint64_t v = 0;
    for (auto b : x) {
        v = (v << 1) | (b & 1u);
    }
    return v;
}

BitString index_to_bits(std::uint64_t index, std::size_t n) {
    BitString x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[n - 1 - i] = static_cast<std::uint8_t>((index >> i) & 1u);
    }
    return x;
}

std::string to_string(Tri v) {
    switch (v) {
        case Tri::Minus:
            return "-1";
        case Tri::Plus:
            return "+1";
        case Tri::Star:
            return "*";
    }
    return "?";
}

PartialFunction PartialFunction::from(std::size_t k, const std::function<Tri(const BitString&)>& f) {
    if (k > 20) {
        throw std::invalid_argument("partial functions are tabulated only up to k = 20");
    }
    PartialFunction p;
    p.k = k;
    p.values.resize(std::size_t{1} << k);
    for (std::uint64_t i = 0; i < p.values.size(); ++i) {
        p.values[i] = f(index_to_bits(i, k));
    }
    return p;
}

PartialFunction PartialFunction::symmetric(std::size_t k, std::span<const Tri> by_weight) {
    if (by_weight.size() != k + 1) {
        throw std::invalid_argument("symmetric function needs k + 1 weight values");
    }
    return from(k, [&](const BitString& x) { return by_weight[weight(x)]; });
}

std::size_t PartialFunction::domain_size() const {
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](Tri v) { return v != Tri::Star; }));
}

bool PartialFunction::is_symmetric() const {
    std::vector<int> seen(k + 1, 2);
    for (std::uint64_t i = 0; i < values.size(); ++i) {
        const auto w = static_cast<std::size_t>(std::popcount(i));
        const int v = static_cast<int>(values[i]);
        if (seen[w] == 2) {
            seen[w] = v;
        } else if (seen[w] != v) {
            return false;
        }
    }
    return true;
}

std::vector<double> PartialFunction::real_values() const {
    std::vector<double> r(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        r[i] = static_cast<double>(static_cast<int>(values[i]));
    }
    return r;
}

std::size_t subset_size(std::uint64_t s) { return static_cast<std::size_t>(std::popcount(s)); }

namespace {

void walsh_hadamard(std::vector<double>& a) {
    for (std::size_t h = 1; h < a.size(); h <<= 1) {
        for (std::size_t i = 0; i < a.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double u = a[j];
                const double v = a[j + h];
                a[j] = u + v;
                a[j + h] = u - v;
            }
        }
    }
}

void check_power_of_two(std::size_t size) {
    if (size == 0 || !std::has_single_bit(size) || size > (std::size_t{1} << 20)) {
        throw std::invalid_argument("Fourier transform needs 2^k values with k <= 20");
    }
}

}  // namespace

std::vector<double> fourier(std::span<const double> f) {
    check_power_of_two(f.size());
    std::vector<double> a(f.begin(), f.end());
    walsh_hadamard(a);
    const double scale = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) {
        v *= scale;
    }
    return a;
}

std::vector<double> inverse_fourier(std::span<const double> coefficients) {
    check_power_of_two(coefficients.size());
    std::vector<double> a(coefficients.begin(), coefficients.end());
    walsh_hadamard(a);
    return a;
}

}  // namespace closeness
