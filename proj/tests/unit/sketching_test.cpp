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

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "closeness/gf2m.hpp"
#include "closeness/sketching.hpp"

namespace closeness {
namespace {

// Schoolbook carry-less product reduced bit by bit; independent of Gf2m::mul.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned m) {
    std::uint64_t p = 0;
    for (unsigned i = 0; i < 32; ++i) {
        if ((b >> i) & 1u) {
            p ^= static_cast<std::uint64_t>(a) << i;
        }
    }
    for (int bit = 63; bit >= static_cast<int>(m); --bit) {
        if ((p >> bit) & 1u) {
            p ^= static_cast<std::uint64_t>(modulus) << (bit - static_cast<int>(m));
        }
    }
    return static_cast<std::uint32_t>(p);
}

TEST(Gf2m, SmallestIrreducibles) {
    EXPECT_EQ(smallest_irreducible_gf2(1), 0b10u);
    EXPECT_EQ(smallest_irreducible_gf2(2), 0b111u);
    EXPECT_EQ(smallest_irreducible_gf2(3), 0b1011u);
    EXPECT_EQ(smallest_irreducible_gf2(4), 0b10011u);
    EXPECT_EQ(smallest_irreducible_gf2(8), 0x11Bu);
    EXPECT_FALSE(is_irreducible_gf2(0b101));  // (x + 1)^2
}

TEST(Gf2m, MultiplicationMatchesSchoolbookAndHasInverses) {
    for (unsigned m = 1; m <= 6; ++m) {
        const Gf2m f(m);
        for (std::uint32_t a = 0; a < f.order(); ++a) {
            bool has_inverse = a == 0;
            for (std::uint32_t b = 0; b < f.order(); ++b) {
                ASSERT_EQ(f.mul(a, b), slow_mul(a, b, f.modulus(), m));
                has_inverse = has_inverse || f.mul(a, b) == 1;
            }
            EXPECT_TRUE(has_inverse) << "m=" << m << " a=" << a;
        }
    }
}

TEST(HashFamily, SignsAreBinaryAndMatchEvaluation) {
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
        const auto h = HashFamily::build(n);
        for (std::uint64_t i = 0; i < h.family_size(); ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const int s = h.sign(i, j);
                ASSERT_TRUE(s == 1 || s == -1);
                ASSERT_EQ(s, h.sign_by_evaluation(i, j));
            }
        }
    }
}

TEST(HashFamily, SizesFollowFieldDegree) {
    const auto h = HashFamily::build(5);
    EXPECT_EQ(h.field_degree(), 3u);
    EXPECT_EQ(h.family_size(), 4096u);
    EXPECT_EQ(h.index_width(), 12u);
    EXPECT_EQ(HashFamily::build(2).family_size(), 16u);
    EXPECT_THROW(h.check_index(4096), std::out_of_range);
}

TEST(HashFamily, FourWiseUniformOnSmallDomains) {
    for (std::size_t n : {4u, 5u}) {
        const auto h = HashFamily::build(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c)
                    for (std::size_t d = c + 1; d < n; ++d) {
                        std::array<std::uint64_t, 16> counts{};
                        for (std::uint64_t i = 0; i < h.family_size(); ++i) {
                            const unsigned key = (h.sign(i, a) < 0) | (h.sign(i, b) < 0) << 1 |
                                                 (h.sign(i, c) < 0) << 2 | (h.sign(i, d) < 0) << 3;
                            ++counts[key];
                        }
                        for (auto cnt : counts) {
                            ASSERT_EQ(cnt, h.family_size() / 16);
                        }
                    }
    }
}

TEST(Ams, ZeroAndUnitVectors) {
    const auto h = HashFamily::build(4);
    const std::vector<std::int64_t> zero(4, 0);
    const std::vector<std::int64_t> e1{1, 0, 0, 0};
    for (std::uint64_t i = 0; i < h.family_size(); i += 7) {
        EXPECT_EQ(ams_f(h, i, zero).value, 0);
        EXPECT_EQ(ams_f(h, i, e1).value, 1);
    }
    EXPECT_THROW(ams_f(h, h.family_size(), e1), std::out_of_range);
    EXPECT_THROW(ams_f(h, 0, std::vector<std::int64_t>{1, 2}), std::invalid_argument);
}

TEST(Ams, ExactMeanExamples) {
    const auto h2 = HashFamily::build(2);
    EXPECT_TRUE(exact_mean_over_family(h2, std::vector<std::int64_t>{3, -4}).equals(25));
    EXPECT_TRUE(exact_mean_over_family(h2, std::vector<std::int64_t>{0, 0}).equals(0));
    EXPECT_THROW(exact_mean_over_family(HashFamily::build(64), std::vector<std::int64_t>(64, 1)),
                 std::length_error);
}

TEST(Ams, ExactMeanIsSquaredNormProperty) {
    Rng rng(5);
    std::uniform_int_distribution<std::int64_t> v(-20, 20);
    for (std::size_t n : {1u, 2u, 3u, 4u, 6u, 8u}) {
        const auto h = HashFamily::build(n);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<std::int64_t> l(n);
            std::int64_t sq = 0;
            for (auto& x : l) {
                x = v(rng);
                sq += x * x;
            }
            ASSERT_TRUE(exact_mean_over_family(h, l).equals(sq));
        }
    }
}

TEST(Ams, FValueBoundedByL1Squared) {
    Rng rng(6);
    const auto h = HashFamily::build(8);
    std::vector<std::int64_t> l{3, -1, 0, 7, 2, -5, 1, 0};
    for (int k = 0; k < 1000; ++k) {
        EXPECT_LE(ams_f(h, h.draw_index(rng), l).value, 19 * 19);
    }
}

TEST(PackedSketch, MatchesReferenceSum) {
    Rng rng(8);
    std::uniform_int_distribution<std::int64_t> v(-9, 9);
    for (std::size_t n : {3u, 17u, 100u, 1000u}) {
        const auto h = HashFamily::build(n);
        std::vector<std::int64_t> l(n);
        for (auto& x : l) {
            x = (rng() % 3 == 0) ? v(rng) : 0;
        }
        const auto sparse = SparseVector::from_dense(l);
        const PackedSketchInput packed(h, sparse);
        for (int k = 0; k < 500; ++k) {
            const std::uint64_t i = h.draw_index(rng);
            ASSERT_EQ(packed.sum(i), sketch_sum(h, i, std::span<const std::int64_t>(l)));
            ASSERT_EQ(sketch_sum(h, i, sparse), sketch_sum(h, i, std::span<const std::int64_t>(l)));
        }
    }
}

TEST(MedianOfMeans, PlanArithmetic) {
    const auto plan = MedianOfMeansPlan::for_accuracy(0.5, 1.0 / 9.0);
    EXPECT_EQ(plan.groups, 18u);  // ceil(8 ln 9) = ceil(17.58)
    EXPECT_EQ(plan.per_group, 64u);
    EXPECT_EQ(plan.draws(), 18u * 64u);
}

TEST(MedianOfMeans, EvenGroupCountAveragesMiddle) {
    MedianOfMeansPlan plan;
    plan.groups = 4;
    plan.per_group = 1;
    const std::vector<double> means{1.0, 10.0, 3.0, 5.0};
    EXPECT_DOUBLE_EQ(median_of_means(plan, [&](std::size_t g) { return means[g]; }), 4.0);
}

TEST(ClassicalEstimate, ZeroVectorAndAccuracy) {
    Rng rng(9);
    const auto h = HashFamily::build(64);
    const std::vector<std::int64_t> zero(64, 0);
    EXPECT_EQ(classical_l2sq_estimate(h, zero, 0.2, 0.1, rng).estimate, 0.0);

    std::vector<std::int64_t> l(64);
    std::int64_t sq = 0;
    for (std::size_t j = 0; j < l.size(); ++j) {
        l[j] = static_cast<std::int64_t>(j % 7) - 3;
        sq += l[j] * l[j];
    }
    int within = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const auto e = classical_l2sq_estimate(h, l, 0.2, 0.1, rng);
        within += std::abs(e.estimate - static_cast<double>(sq)) <= 0.2 * static_cast<double>(sq);
    }
    EXPECT_GE(within, 36);
}

TEST(HashFamily, JsonRoundTrip) {
    const auto h = HashFamily::build(37);
    const auto back = hash_family_from_json(nlohmann::json(h));
    EXPECT_EQ(back.n(), h.n());
    EXPECT_EQ(back.modulus(), h.modulus());
    for (std::size_t j = 0; j < 37; ++j) {
        EXPECT_EQ(back.mask(j), h.mask(j));
    }
}

}  // namespace
}  // namespace closeness
