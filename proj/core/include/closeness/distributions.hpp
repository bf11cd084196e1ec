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
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace closeness {

using Rng = std::mt19937_64;

/// Probability vector over [n] = {0, ..., n-1}.
///
/// Construction validates that every entry is non-negative and that the
/// masses sum to one within kMassTolerance.
class DiscreteDistribution {
   public:
    static constexpr double kMassTolerance = 1e-12;

    explicit DiscreteDistribution(std::vector<double> mass);

    static DiscreteDistribution uniform(std::size_t n);
    static DiscreteDistribution point_mass(std::size_t n, std::size_t at);

    std::size_t n() const { return mass_.size(); }
    double operator[](std::size_t i) const { return mass_[i]; }
    std::span<const double> mass() const { return mass_; }

    /// Free-form provenance (generator name, constants, log base...).
    nlohmann::json meta = nlohmann::json::object();

   private:
    std::vector<double> mass_;
};

/// Per-element sample counts held by one party.
class OccurrenceVector {
   public:
    OccurrenceVector() = default;
    explicit OccurrenceVector(std::vector<std::int64_t> counts);

    std::size_t n() const { return counts_.size(); }
    std::int64_t total() const { return total_; }
    std::int64_t operator[](std::size_t i) const { return counts_[i]; }
    std::span<const std::int64_t> counts() const { return counts_; }

    bool operator==(const OccurrenceVector&) const = default;

   private:
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
};

enum class SamplingMode { FixedT, Poissonized };

/// Problem parameters shared by instance generators, validity gates and the
/// protocols. C scales the sample threshold, C0 the hard-instance block size.
struct InstanceSpec {
    std::size_t n = 0;
    std::int64_t t = 1;
    double epsilon = 0.5;
    double gamma = 1.0;
    double C = 1.0;
    double C0 = 1.0;
    std::uint64_t seed = 0;
    SamplingMode sampling_mode = SamplingMode::FixedT;

    /// Throws std::invalid_argument when n == 0, t < 1 or epsilon is outside (0, 1].
    void validate() const;
};

enum class PairCase { Same, Far };

struct ValidityReport {
    double threshold = 0.0;  // C * max(n^{2/3} eps^{-4/3}, sqrt(n) eps^{-2})
    bool above_threshold = false;
    double min_norm = 0.0;
    double norm_bound = 0.0;  // gamma * t * eps^2 / n
    bool norm_promise = false;

    bool valid() const { return above_threshold && norm_promise; }
};

double l1_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);
double l2_norm(const DiscreteDistribution& p);

/// Occurrence counts of t i.i.d. draws (FixedT), or of Poi(t) draws
/// (Poissonized: independent Poi(t p_i) counts, redrawn when the total
/// exceeds 10t).
OccurrenceVector sample_occurrences(const DiscreteDistribution& p, const InstanceSpec& spec, Rng& rng);

/// Hard instance pair: mass 1/2 spread on d = floor(n/10) shared elements and
/// 1/2 on l = ceil(C0 * t * log2 n) further elements. Far uses a disjoint
/// l-block for b. Throws std::invalid_argument if the blocks do not fit in [n].
std::pair<DiscreteDistribution, DiscreteDistribution> make_hard_pair(const InstanceSpec& spec, PairCase which);

/// Block sizes used by make_hard_pair.
struct HardPairShape {
    std::size_t d = 0;
    std::size_t l = 0;
};
HardPairShape hard_pair_shape(const InstanceSpec& spec);

/// p uniform, q = (1 +/- eps)/n on alternating indices; ||p - q||_1 = eps.
std::pair<DiscreteDistribution, DiscreteDistribution> make_far_pair(const InstanceSpec& spec);

/// sqrt(max(0, sum X_i (X_i - 1) / (M (M - 1)))); requires M >= 2.
double collision_norm_estimate(const OccurrenceVector& x);

double sample_threshold(const InstanceSpec& spec);
ValidityReport validate_instance(const InstanceSpec& spec, const DiscreteDistribution& p,
                                 const DiscreteDistribution& q);

/// ||a||_2 * n / (t eps^2): the smallest gamma for which a meets the norm promise.
double gamma_lw(const InstanceSpec& spec, const DiscreteDistribution& a);

std::string to_string(SamplingMode mode);
SamplingMode sampling_mode_from_string(const std::string& s);

void to_json(nlohmann::json& j, const DiscreteDistribution& p);
DiscreteDistribution distribution_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const OccurrenceVector& x);
OccurrenceVector occurrences_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const InstanceSpec& spec);
InstanceSpec instance_spec_from_json(const nlohmann::json& j);

}  // namespace closeness
