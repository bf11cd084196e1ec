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
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "closeness/certificate.hpp"
#include "closeness/lowerbound.hpp"
#include "closeness/pattern_matrix.hpp"

namespace closeness {
namespace {

BitPair pair_of(const char* x, const char* y) { return BitPair(bits_from_string(x), bits_from_string(y)); }

TEST(BitPair, CachedWeights) {
    const auto p = pair_of("11010", "10011");
    EXPECT_EQ(p.weight_x(), 3u);
    EXPECT_EQ(p.weight_y(), 3u);
    EXPECT_EQ(p.common(), 2u);
    EXPECT_THROW(pair_of("10", "101"), std::invalid_argument);
}

TEST(Ghd, GapIntervalExample) {
    EXPECT_EQ(ghd_gap_intersections(128, 4.0), (std::vector<std::size_t>{28, 29, 30, 31}));
}

TEST(Ghd, GeneratedPairsHonorPromise) {
    Rng rng(1);
    std::set<std::size_t> seen;
    for (int k = 0; k < 200; ++k) {
        const auto q = gen_promised_ghd(128, 4.0, GhdCase::Quarter, rng);
        ASSERT_EQ(q.weight_x(), 64u);
        ASSERT_EQ(q.weight_y(), 64u);
        ASSERT_EQ(q.common(), 32u);
        std::size_t l1 = 0;
        for (std::size_t i = 0; i < 128; ++i) {
            l1 += q.x()[i] != q.y()[i];
        }
        ASSERT_EQ(l1, 64u);
        const auto g = gen_promised_ghd(128, 4.0, GhdCase::Gap, rng);
        ASSERT_GE(g.common(), 28u);
        ASSERT_LE(g.common(), 31u);
        seen.insert(g.common());
    }
    EXPECT_EQ(seen.size(), 4u);
}

TEST(Ghd, EmptyIntervalNamesMinimumN) {
    Rng rng(2);
    try {
        gen_promised_ghd(8, 1.5, GhdCase::Gap, rng);
        FAIL() << "expected an empty interval";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("n"), std::string::npos);
    }
    EXPECT_THROW(gen_promised_ghd(10, 4.0, GhdCase::Quarter, rng), std::invalid_argument);
    EXPECT_THROW(gen_promised_ghd(16, 1.0, GhdCase::Quarter, rng), std::invalid_argument);
}

TEST(Padding, Example) {
    const auto big = pad_small_to_promised(pair_of("1100", "1010"));
    EXPECT_EQ(big.n(), 16u);
    EXPECT_EQ(big.common(), 4u);
    EXPECT_EQ(big.weight_x(), 8u);
}

TEST(Padding, IntersectionScalesExhaustively) {
    for (std::size_t n : {4u, 8u}) {
        for (std::uint64_t a = 0; a < (1u << n); ++a) {
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                const BitPair small(index_to_bits(a, n), index_to_bits(b, n));
                if (small.weight_x() != n / 2 || small.weight_y() != n / 2) {
                    ASSERT_THROW(pad_small_to_promised(small), std::invalid_argument);
                    continue;
                }
                const auto big = pad_small_to_promised(small);
                ASSERT_EQ(big.common(), n * small.common());
                ASSERT_EQ(big.weight_x(), n * small.weight_x());
            }
        }
    }
}

TEST(Fn, Examples) {
    EXPECT_EQ(eval_Fn(pair_of("1100", "1010")), Tri::Minus);
    EXPECT_EQ(eval_Fn(pair_of("1100", "0011")), Tri::Plus);
    EXPECT_EQ(eval_Fn(pair_of("1100", "1100")), Tri::Star);
    EXPECT_EQ(eval_Fn(pair_of("1110", "1010")), Tri::Star);  // unbalanced
    EXPECT_EQ(eval_Fn(pair_of("11000011", "10100101")), Tri::Minus);
    EXPECT_TRUE(check_monotone_identity(pair_of("1100", "1010")));
    EXPECT_TRUE(check_monotone_identity(pair_of("1100", "1100")));
}

TEST(Fn, MonotoneIdentityExhaustive) {
    for (std::size_t n : {4u, 8u}) {
        for (std::uint64_t a = 0; a < (1u << n); ++a) {
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                ASSERT_TRUE(check_monotone_identity(BitPair(index_to_bits(a, n), index_to_bits(b, n))));
            }
        }
    }
}

TEST(Pmaj, Values) {
    EXPECT_EQ(eval_pmaj(bits_from_string("10")), Tri::Minus);
    EXPECT_EQ(eval_pmaj(bits_from_string("01")), Tri::Minus);
    EXPECT_EQ(eval_pmaj(bits_from_string("00")), Tri::Plus);
    EXPECT_EQ(eval_pmaj(bits_from_string("11")), Tri::Star);
    EXPECT_EQ(eval_pmaj(bits_from_string("1100")), Tri::Minus);
    EXPECT_EQ(eval_pmaj(bits_from_string("0100")), Tri::Plus);
    EXPECT_EQ(eval_pmaj(bits_from_string("0000")), Tri::Star);
    EXPECT_THROW(eval_pmaj(bits_from_string("101")), std::invalid_argument);
}

TEST(G, DoubledAndEmbeddings) {
    EXPECT_EQ(to_string(doubled(bits_from_string("101"))), "100110");
    const auto report = check_G_embeddings(2);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.g_pairs_checked, 256u * 256u);
    EXPECT_EQ(report.pattern_cells_checked, pattern_entry_count(4, 2));
}

TEST(PmmBound, Examples) {
    for (std::size_t d = 0; d <= 4; ++d) {
        EXPECT_NEAR(pmm_bound(8, 2, d, 1.0 / 3.0, 1.0 / 7.0), d / 2.0 - 0.5 * std::log2(63.0), 1e-12);
    }
    EXPECT_NEAR(0.5 * std::log2(63.0), 2.98864, 1e-5);
    EXPECT_LT(pmm_bound(8, 2, 0, 1.0 / 3.0, 1.0 / 7.0), 0.0);
    EXPECT_THROW(pmm_bound(8, 2, 1, 0.2, 0.1), std::invalid_argument);
}

TEST(Discrepancy, ClampsAndValidates) {
    const std::vector<double> psi{0.25, 0.25, 0.25, 0.25};
    const std::vector<Tri> f{Tri::Plus, Tri::Plus, Tri::Plus, Tri::Plus};
    const auto r = discrepancy_bound(psi, f, 2, 2, 0.5);
    EXPECT_EQ(r.bound, 0.0);
    EXPECT_TRUE(std::isinf(r.raw));
    EXPECT_NEAR(r.spectral_norm, 0.5, 1e-15);
    EXPECT_THROW(discrepancy_bound(psi, f, 2, 3, 0.1), std::invalid_argument);
    const std::vector<double> heavy{0.5, 0.5, 0.5, 0.5};
    EXPECT_THROW(discrepancy_bound(heavy, f, 2, 2, 0.1), std::invalid_argument);
}

TEST(Certificate, Pmaj2EndToEnd) {
    const auto c = emit_certificate("PMAJ_2", 1.0 / 3.0, 2);
    EXPECT_EQ(c.degree, 2u);
    EXPECT_TRUE(c.has_witness);
    EXPECT_TRUE(c.numeric_matrix);
    EXPECT_NEAR(c.psi_l1, 1.0, 1e-9);
    EXPECT_NEAR(c.correlation, 0.5, 1e-9);
    EXPECT_GE(c.bound_qubits, 0.0);
    EXPECT_NEAR(c.spectral_norm, c.spectral_norm_formula, 1e-9 * c.spectral_norm);
    EXPECT_NEAR(c.discrepancy_raw, c.pmm_at_correlation, 1e-6);
    EXPECT_NEAR(c.delta, 1.0 / 7.0, 1e-15);
}

TEST(Certificate, AnalyticPathMatchesNumeric) {
    CertificateOptions analytic;
    analytic.numeric = false;
    const auto a = emit_certificate("PMAJ_2", 1.0 / 3.0, 2, analytic);
    const auto b = emit_certificate("PMAJ_2", 1.0 / 3.0, 2);
    EXPECT_FALSE(a.numeric_matrix);
    EXPECT_NEAR(a.discrepancy_raw, b.discrepancy_raw, 1e-9);
    EXPECT_NEAR(a.psi_l1, b.psi_l1, 1e-12);
}

TEST(Certificate, RegistryAndErrors) {
    EXPECT_EQ(emit_certificate("PARITY_3", 1.0 / 3.0, 1).degree, 3u);
    EXPECT_EQ(registry_function("MAJ_3").values[0b011], Tri::Minus);
    EXPECT_EQ(registry_function("MAJ_3").values[0b001], Tri::Plus);
    for (const char* bad : {"PMAJ_3", "FOO_2", "PARITY_9", "PARITY_x", "MAJ"}) {
        try {
            registry_function(bad);
            FAIL() << bad;
        } catch (const std::invalid_argument& e) {
            EXPECT_NE(std::string(e.what()).find("registry"), std::string::npos);
        }
    }
    EXPECT_FALSE(registry_names().empty());
}

}  // namespace
}  // namespace closeness
