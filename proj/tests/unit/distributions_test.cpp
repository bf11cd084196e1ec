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

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "closeness/distributions.hpp"

namespace closeness {
namespace {

TEST(DiscreteDistribution, RejectsNegativeOrUnnormalizedMass) {
    EXPECT_THROW(DiscreteDistribution({0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(DiscreteDistribution({1.5, -0.5}), std::invalid_argument);
    EXPECT_NO_THROW(DiscreteDistribution({0.25, 0.75}));
}

TEST(Distances, L1Examples) {
    EXPECT_DOUBLE_EQ(l1_distance(DiscreteDistribution::uniform(4), DiscreteDistribution::uniform(4)), 0.0);
    EXPECT_DOUBLE_EQ(l1_distance(DiscreteDistribution::point_mass(2, 0), DiscreteDistribution::point_mass(2, 1)),
                     2.0);
    EXPECT_DOUBLE_EQ(l1_distance(DiscreteDistribution({0.5, 0.5}), DiscreteDistribution({0.75, 0.25})), 0.5);
    EXPECT_THROW(l1_distance(DiscreteDistribution::uniform(2), DiscreteDistribution::uniform(3)),
                 std::invalid_argument);
}

TEST(Distances, L2Examples) {
    EXPECT_DOUBLE_EQ(l2_norm(DiscreteDistribution::uniform(4)), 0.5);
    EXPECT_DOUBLE_EQ(l2_norm(DiscreteDistribution::point_mass(5, 3)), 1.0);
    EXPECT_NEAR(l2_norm(DiscreteDistribution({0.5, 0.25, 0.25})), 0.612372435695794, 1e-12);
}

TEST(Sampling, PointMassIsDeterministic) {
    InstanceSpec spec;
    spec.n = 5;
    spec.t = 7;
    Rng rng(1);
    const auto x = sample_occurrences(DiscreteDistribution::point_mass(5, 0), spec, rng);
    EXPECT_EQ(x[0], 7);
    EXPECT_EQ(x.total(), 7);
    for (std::size_t i = 1; i < 5; ++i) {
        EXPECT_EQ(x[i], 0);
    }
}

TEST(Sampling, FixedTTotalsAndCountsAgree) {
    Rng rng(42);
    for (int rep = 0; rep < 50; ++rep) {
        InstanceSpec spec;
        spec.n = 1 + rng() % 40;
        spec.t = 1 + static_cast<std::int64_t>(rng() % 500);
        const auto x = sample_occurrences(DiscreteDistribution::uniform(spec.n), spec, rng);
        EXPECT_EQ(x.total(), spec.t);
        EXPECT_EQ(std::accumulate(x.counts().begin(), x.counts().end(), std::int64_t{0}), x.total());
    }
}

TEST(Sampling, PoissonizedUniformSplitsEvenly) {
    InstanceSpec spec;
    spec.n = 2;
    spec.t = 100000;
    spec.sampling_mode = SamplingMode::Poissonized;
    Rng rng(3);
    double acc = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto x = sample_occurrences(DiscreteDistribution::uniform(2), spec, rng);
        EXPECT_LE(x.total(), 10 * spec.t);
        acc += static_cast<double>(x[0]) / static_cast<double>(x.total());
    }
    EXPECT_NEAR(acc / 100.0, 0.5, 0.01);
}

TEST(HardPair, NormMatchesClosedForm) {
    InstanceSpec spec;
    spec.n = 100;
    spec.t = 6;
    spec.C0 = 1.0;
    const auto shape = hard_pair_shape(spec);
    ASSERT_EQ(shape.d, 10u);
    ASSERT_EQ(shape.l, 40u);
    const auto [a, b] = make_hard_pair(spec, PairCase::Same);
    EXPECT_NEAR(l2_norm(a), 0.5 * std::sqrt(0.125), 1e-15);
    EXPECT_EQ(l1_distance(a, b), 0.0);
    const auto [a2, b2] = make_hard_pair(spec, PairCase::Far);
    EXPECT_NEAR(l1_distance(a2, b2), 1.0, 1e-12);
}

TEST(HardPair, OverflowNamesMinimumN) {
    InstanceSpec spec;
    spec.n = 64;
    spec.t = 100;
    spec.C0 = 1.0;
    try {
        make_hard_pair(spec, PairCase::Far);
        FAIL() << "expected overflow";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("n >="), std::string::npos) << e.what();
    }
}

TEST(FarPair, Example) {
    InstanceSpec spec;
    spec.n = 4;
    spec.epsilon = 0.5;
    const auto [p, q] = make_far_pair(spec);
    EXPECT_DOUBLE_EQ(q[0], 0.375);
    EXPECT_DOUBLE_EQ(q[1], 0.125);
    EXPECT_DOUBLE_EQ(l1_distance(p, q), 0.5);
}

TEST(CollisionNorm, Extremes) {
    EXPECT_DOUBLE_EQ(collision_norm_estimate(OccurrenceVector({9, 0, 0})), 1.0);
    EXPECT_DOUBLE_EQ(collision_norm_estimate(OccurrenceVector({1, 1, 0, 1})), 0.0);
    EXPECT_THROW(collision_norm_estimate(OccurrenceVector({1, 0})), std::invalid_argument);
}

TEST(CollisionNorm, UnbiasedForSquaredNorm) {
    // E[X_i (X_i - 1)] = M (M - 1) p_i^2 under fixed-M multinomial sampling.
    const DiscreteDistribution p({0.5, 0.3, 0.2});
    InstanceSpec spec;
    spec.n = 3;
    spec.t = 50;
    Rng rng(11);
    double acc = 0.0;
    const int reps = 20000;
    for (int k = 0; k < reps; ++k) {
        const double e = collision_norm_estimate(sample_occurrences(p, spec, rng));
        acc += e * e;
    }
    EXPECT_NEAR(acc / reps, 0.38, 0.003);
}

TEST(Validity, ThresholdAndNormFlags) {
    InstanceSpec spec;
    spec.n = 4;
    spec.epsilon = 1.0;
    spec.C = 1.0;
    spec.t = 2;
    const auto u = DiscreteDistribution::uniform(4);
    auto r = validate_instance(spec, u, u);
    // max(4^{2/3}, sqrt(4)) = 2.52, so t = 2 is below and t = 3 above.
    EXPECT_DOUBLE_EQ(r.threshold, std::pow(4.0, 2.0 / 3.0));
    EXPECT_FALSE(r.above_threshold);
    spec.t = 3;
    EXPECT_TRUE(validate_instance(spec, u, u).above_threshold);

    spec.t = 1;
    spec.gamma = 1.0;
    const auto pm = DiscreteDistribution::point_mass(4, 0);
    EXPECT_FALSE(validate_instance(spec, pm, pm).norm_promise);

    // Uniform p at t = sqrt(n) / (gamma eps^2) sits exactly on the promise boundary.
    spec.n = 16;
    spec.t = 4;
    const auto u16 = DiscreteDistribution::uniform(16);
    r = validate_instance(spec, u16, u16);
    EXPECT_DOUBLE_EQ(r.min_norm, r.norm_bound);
    EXPECT_TRUE(r.norm_promise);
    EXPECT_NEAR(gamma_lw(spec, u16), 1.0, 1e-15);
}

TEST(Json, RoundTrips) {
    InstanceSpec spec;
    spec.n = 12;
    spec.t = 30;
    spec.epsilon = 0.25;
    spec.C0 = 0.5;
    spec.seed = 99;
    spec.sampling_mode = SamplingMode::Poissonized;
    const nlohmann::json j = spec;
    const InstanceSpec back = instance_spec_from_json(j);
    EXPECT_EQ(back.n, spec.n);
    EXPECT_EQ(back.t, spec.t);
    EXPECT_EQ(back.epsilon, spec.epsilon);
    EXPECT_EQ(back.C0, spec.C0);
    EXPECT_EQ(back.seed, spec.seed);
    EXPECT_EQ(back.sampling_mode, spec.sampling_mode);

    const OccurrenceVector x({3, 0, 2});
    EXPECT_EQ(occurrences_from_json(nlohmann::json(x)), x);
    const DiscreteDistribution p({0.25, 0.75});
    const auto q = distribution_from_json(nlohmann::json(p));
    EXPECT_EQ(q[1], 0.75);
}

}  // namespace
}  // namespace closeness
