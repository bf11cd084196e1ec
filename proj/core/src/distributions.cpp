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

#include "closeness/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace closeness {

DiscreteDistribution::DiscreteDistribution(std::vector<double> mass) : mass_(std::move(mass)) {
    if (mass_.empty()) {
        throw std::invalid_argument("distribution must have positive support size");
    }
    double total = 0.0;
    for (double m : mass_) {
        if (!(m >= 0.0) || !std::isfinite(m)) {
            throw std::invalid_argument("distribution entries must be finite and non-negative");
        }
        total += m;
    }
    if (std::abs(total - 1.0) > kMassTolerance) {
        throw std::invalid_argument("distribution mass sums to " + std::to_string(total) + ", expected 1");
    }
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform distribution needs n >= 1");
    }
    DiscreteDistribution p(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    p.meta = {{"generator", "uniform"}};
    return p;
}

DiscreteDistribution DiscreteDistribution::point_mass(std::size_t n, std::size_t at) {
    if (at >= n) {
        throw std::invalid_argument("point mass index out of range");
    }
    std::vector<double> mass(n, 0.0);
    mass[at] = 1.0;
    DiscreteDistribution p(std::move(mass));
    p.meta = {{"generator", "point_mass"}, {"at", at}};
    return p;
}

OccurrenceVector::OccurrenceVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    for (auto c : counts_) {
        if (c < 0) {
            throw std::invalid_argument("occurrence counts must be non-negative");
        }
        total_ += c;
    }
}

void InstanceSpec::validate() const {
    if (n == 0) {
        throw std::invalid_argument("InstanceSpec: n must be positive");
    }
    if (t < 1) {
        throw std::invalid_argument("InstanceSpec: t must be >= 1");
    }
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("InstanceSpec: epsilon must lie in (0, 1]");
    }
    if (!(C > 0.0) || !(C0 > 0.0) || !(gamma > 0.0)) {
        throw std::invalid_argument("InstanceSpec: C, C0 and gamma must be positive");
    }
}

double l1_distance(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    if (p.n() != q.n()) {
        throw std::invalid_argument("l1_distance: support sizes differ");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        s += std::abs(p[i] - q[i]);
    }
    return s;
}

double l2_norm(const DiscreteDistribution& p) {
    double s = 0.0;
    for (double m : p.mass()) {
        s += m * m;
    }
    return std::sqrt(s);
}

// Counts are drawn element by element rather than through conditional
// binomials: std::binomial_distribution inflates the variance slightly for
// large n p, which shows up as a bias in the CDVV statistic.
OccurrenceVector sample_occurrences(const DiscreteDistribution& p, const InstanceSpec& spec, Rng& rng) {
    spec.validate();
    std::vector<std::int64_t> counts(p.n(), 0);
    if (spec.sampling_mode == SamplingMode::Poissonized) {
        // Independent Poi(t p_i) counts; a vector whose total exceeds 10t is redrawn.
        const std::int64_t cap = 10 * spec.t;
        std::int64_t total = 0;
        do {
            total = 0;
            for (std::size_t i = 0; i < p.n(); ++i) {
                const double mean = static_cast<double>(spec.t) * p[i];
                counts[i] = mean > 0.0 ? std::poisson_distribution<std::int64_t>(mean)(rng) : 0;
                total += counts[i];
            }
        } while (total > cap);
        return OccurrenceVector(std::move(counts));
    }
    std::discrete_distribution<std::size_t> draw(p.mass().begin(), p.mass().end());
    for (std::int64_t k = 0; k < spec.t; ++k) {
        ++counts[draw(rng)];
    }
    return OccurrenceVector(std::move(counts));
}

HardPairShape hard_pair_shape(const InstanceSpec& spec) {
    HardPairShape shape;
    shape.d = spec.n / 10;
    double log_n = std::log2(static_cast<double>(spec.n));
    shape.l = static_cast<std::size_t>(std::ceil(spec.C0 * static_cast<double>(spec.t) * log_n));
    return shape;
}

std::pair<DiscreteDistribution, DiscreteDistribution> make_hard_pair(const InstanceSpec& spec, PairCase which) {
    spec.validate();
    auto [d, l] = hard_pair_shape(spec);
    if (d < 1) {
        throw std::invalid_argument("make_hard_pair: n/10 < 1; need n >= 10");
    }
    std::size_t needed = d + (which == PairCase::Far ? 2 * l : l);
    if (needed > spec.n) {
        throw std::invalid_argument("make_hard_pair: blocks need n >= " + std::to_string(needed) + " (d=" +
                                    std::to_string(d) + ", l=" + std::to_string(l) + "), got n=" +
                                    std::to_string(spec.n));
    }
    std::vector<double> a(spec.n, 0.0);
    std::vector<double> b(spec.n, 0.0);
    double heavy = 1.0 / (2.0 * static_cast<double>(d));
    double light = 1.0 / (2.0 * static_cast<double>(l));
    std::fill_n(a.begin(), d, heavy);
    std::fill_n(b.begin(), d, heavy);
    std::fill_n(a.begin() + static_cast<std::ptrdiff_t>(d), l, light);
    std::size_t b_offset = which == PairCase::Far ? d + l : d;
    std::fill_n(b.begin() + static_cast<std::ptrdiff_t>(b_offset), l, light);

    nlohmann::json meta = {{"generator", "hard_pair"},
                           {"case", which == PairCase::Same ? "same" : "far"},
                           {"d", d},
                           {"l", l},
                           {"C0", spec.C0},
                           {"log_base", 2}};
    DiscreteDistribution pa(std::move(a));
    DiscreteDistribution pb(std::move(b));
    pa.meta = meta;
    pb.meta = meta;
    return {std::move(pa), std::move(pb)};
}

std::pair<DiscreteDistribution, DiscreteDistribution> make_far_pair(const InstanceSpec& spec) {
    if (spec.n == 0 || spec.n % 2 != 0) {
        throw std::invalid_argument("make_far_pair: n must be even and positive");
    }
    const double n = static_cast<double>(spec.n);
    std::vector<double> q(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        q[i] = (i % 2 == 0 ? 1.0 + spec.epsilon : 1.0 - spec.epsilon) / n;
    }
    auto p = DiscreteDistribution::uniform(spec.n);
    DiscreteDistribution pq(std::move(q));
    nlohmann::json meta = {{"generator", "far_pair"}, {"epsilon", spec.epsilon}};
    p.meta = meta;
    pq.meta = meta;
    return {std::move(p), std::move(pq)};
}

double collision_norm_estimate(const OccurrenceVector& x) {
    const std::int64_t m = x.total();
    if (m < 2) {
        throw std::invalid_argument("collision_norm_estimate: need at least two samples");
    }
    long double collisions = 0.0L;
    for (auto c : x.counts()) {
        collisions += static_cast<long double>(c) * static_cast<long double>(c - 1);
    }
    long double sq = collisions / (static_cast<long double>(m) * static_cast<long double>(m - 1));
    return std::sqrt(static_cast<double>(std::max(0.0L, sq)));
}

double sample_threshold(const InstanceSpec& spec) {
    const double n = static_cast<double>(spec.n);
    double a = std::pow(n, 2.0 / 3.0) * std::pow(spec.epsilon, -4.0 / 3.0);
    double b = std::sqrt(n) / (spec.epsilon * spec.epsilon);
    return spec.C * std::max(a, b);
}

ValidityReport validate_instance(const InstanceSpec& spec, const DiscreteDistribution& p,
                                 const DiscreteDistribution& q) {
    ValidityReport r;
    r.threshold = sample_threshold(spec);
    r.above_threshold = static_cast<double>(spec.t) >= r.threshold;
    r.min_norm = std::min(l2_norm(p), l2_norm(q));
    r.norm_bound = spec.gamma * static_cast<double>(spec.t) * spec.epsilon * spec.epsilon /
                   static_cast<double>(spec.n);
    // Relative slack so that gamma = gamma_lw(...) lands on the boundary.
    r.norm_promise = r.min_norm <= r.norm_bound * (1.0 + 1e-12);
    return r;
}

double gamma_lw(const InstanceSpec& spec, const DiscreteDistribution& a) {
    return l2_norm(a) * static_cast<double>(spec.n) /
           (static_cast<double>(spec.t) * spec.epsilon * spec.epsilon);
}

std::string to_string(SamplingMode mode) {
    return mode == SamplingMode::FixedT ? "fixed" : "poisson";
}

SamplingMode sampling_mode_from_string(const std::string& s) {
    if (s == "fixed" || s == "FixedT") {
        return SamplingMode::FixedT;
    }
    if (s == "poisson" || s == "Poissonized") {
        return SamplingMode::Poissonized;
    }
    throw std::invalid_argument("unknown sampling mode '" + s + "' (expected fixed|poisson)");
}

void to_json(nlohmann::json& j, const DiscreteDistribution& p) {
    j = {{"n", p.n()}, {"mass", std::vector<double>(p.mass().begin(), p.mass().end())}, {"meta", p.meta}};
}

DiscreteDistribution distribution_from_json(const nlohmann::json& j) {
    DiscreteDistribution p(j.at("mass").get<std::vector<double>>());
    if (j.contains("n") && j.at("n").get<std::size_t>() != p.n()) {
        throw std::invalid_argument("distribution json: n does not match mass length");
    }
    if (j.contains("meta")) {
        p.meta = j.at("meta");
    }
    return p;
}

void to_json(nlohmann::json& j, const OccurrenceVector& x) {
    j = {{"counts", std::vector<std::int64_t>(x.counts().begin(), x.counts().end())}, {"total", x.total()}};
}

OccurrenceVector occurrences_from_json(const nlohmann::json& j) {
    OccurrenceVector x(j.at("counts").get<std::vector<std::int64_t>>());
    if (j.contains("total") && j.at("total").get<std::int64_t>() != x.total()) {
        throw std::invalid_argument("occurrence json: total does not match counts");
    }
    return x;
}

void to_json(nlohmann::json& j, const InstanceSpec& spec) {
    j = {{"n", spec.n},         {"t", spec.t},   {"epsilon", spec.epsilon}, {"gamma", spec.gamma},
         {"C", spec.C},         {"C0", spec.C0}, {"seed", spec.seed},       {"sampling", to_string(spec.sampling_mode)}};
}

InstanceSpec instance_spec_from_json(const nlohmann::json& j) {
    InstanceSpec s;
    s.n = j.at("n").get<std::size_t>();
    s.t = j.at("t").get<std::int64_t>();
    s.epsilon = j.value("epsilon", s.epsilon);
    s.gamma = j.value("gamma", s.gamma);
    s.C = j.value("C", s.C);
    s.C0 = j.value("C0", s.C0);
    s.seed = j.value("seed", s.seed);
    if (j.contains("sampling")) {
        s.sampling_mode = sampling_mode_from_string(j.at("sampling").get<std::string>());
    }
    return s;
}

}  // namespace closeness
