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

// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   closeness_acceptance            run all twelve
//   closeness_acceptance 4 7        run the listed ones

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "closeness/approx_degree.hpp"
#include "closeness/certificate.hpp"
#include "closeness/distributions.hpp"
#include "closeness/experiment.hpp"
#include "closeness/lowerbound.hpp"
#include "closeness/pattern_matrix.hpp"
#include "closeness/protocol.hpp"
#include "closeness/quantum_oracle.hpp"
#include "closeness/sketching.hpp"

namespace {

using namespace closeness;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1. exact family mean equals ||l||_2^2 for n <= 4.
Outcome ams_exactness() {
    Rng rng(101);
    std::uniform_int_distribution<std::int64_t> v(-1000, 1000);
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto h = HashFamily::build(n);
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<std::int64_t> l(n);
            std::int64_t sq = 0;
            for (auto& x : l) {
                x = v(rng);
                sq += x * x;
            }
            bad += exact_mean_over_family(h, l).equals(sq) ? 0 : 1;
            ++checked;
        }
    }
    return {bad == 0, fmt("%zu vectors, %zu mismatches", checked, bad)};
}

// 2. every subset of min(4, n) points has exactly uniform sign tuples.
Outcome four_wise_independence() {
    std::size_t subsets = 0;
    std::size_t bad = 0;
    for (std::size_t n : {2u, 3u, 4u, 5u, 8u}) {
        const auto h = HashFamily::build(n);
        const std::size_t r = std::min<std::size_t>(4, n);
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
        do {
            std::vector<std::size_t> pts;
            for (std::size_t j = 0; j < n; ++j) {
                if (pick[j]) {
                    pts.push_back(j);
                }
            }
            std::vector<std::uint64_t> counts(std::size_t{1} << r, 0);
            for (std::uint64_t i = 0; i < h.family_size(); ++i) {
                std::size_t key = 0;
                for (std::size_t a = 0; a < r; ++a) {
                    key |= static_cast<std::size_t>(h.sign_by_evaluation(i, pts[a]) < 0) << a;
                }
                ++counts[key];
            }
            const std::uint64_t expect = h.family_size() >> r;
            bad += std::all_of(counts.begin(), counts.end(), [&](auto c) { return c == expect; }) ? 0 : 1;
            ++subsets;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return {bad == 0, fmt("%zu subsets over n in {2,3,4,5,8}, %zu non-uniform", subsets, bad)};
}

// 3. Poissonized CDVV raw statistic has mean zero when p = q.
Outcome cdvv_unbiased() {
    InstanceSpec spec;
    spec.n = 100;
    spec.t = 1000;
    spec.sampling_mode = SamplingMode::Poissonized;
    const auto u = DiscreteDistribution::uniform(100);
    Rng rng(303);
    const int trials = 100000;
    long double sum = 0.0L;
    long double sumsq = 0.0L;
    for (int k = 0; k < trials; ++k) {
        const auto x = sample_occurrences(u, spec, rng);
        const auto y = sample_occurrences(u, spec, rng);
        const auto raw = static_cast<long double>(cdvv_Z(x, y).raw);
        sum += raw;
        sumsq += raw * raw;
    }
    const double mean = static_cast<double>(sum / trials);
    const double var = static_cast<double>(sumsq / trials) - mean * mean;
    const double se = std::sqrt(var / trials);
    return {std::abs(mean) <= 3.0 * se, fmt("mean raw %.3f, standard error %.3f (%.2f SE)", mean, se, mean / se)};
}

// 4. success >= 2/3 at 95% Wilson lower bound in every cell and mode.
Outcome protocol_correctness() {
    const double threshold = [] {
        InstanceSpec s;
        s.n = 4096;
        s.epsilon = 0.5;
        s.C = 1.0;
        return sample_threshold(s);
    }();
    const auto t = static_cast<std::int64_t>(std::ceil(2.0 * threshold));
    std::ostringstream plan_text;
    plan_text << R"({"mode": "accuracy", "seed": 20260401, "trials": 300,
      "estimators": ["classical", "q-accounting"],
      "protocol": {"c_alpha": 1.0},
      "assertions": {"min_wilson_lower": 0.6666666666666666},
      "grid": [)";
    const char* cells[] = {R"("kind": "hard", "C0": 0.1, "case": "same")", R"("kind": "hard", "C0": 0.1, "case": "far")",
                           R"("kind": "uniform", "case": "same")", R"("kind": "far_pair", "case": "far")"};
    for (std::size_t i = 0; i < 4; ++i) {
        plan_text << (i ? "," : "") << R"({"n": 4096, "epsilon": 0.5, "t": )" << t << ", " << cells[i] << "}";
    }
    plan_text << "]}";
    const ExperimentPlan plan = parse_plan(plan_text.str());

    std::string promise;
    for (const auto& cell : plan.grid) {
        std::pair<DiscreteDistribution, DiscreteDistribution> pq =
            cell.kind == InstanceKind::Hard       ? make_hard_pair(cell.spec, cell.pair_case)
            : cell.kind == InstanceKind::FarPair ? make_far_pair(cell.spec)
                                                  : std::make_pair(DiscreteDistribution::uniform(cell.spec.n),
                                                                   DiscreteDistribution::uniform(cell.spec.n));
        const auto v = validate_instance(cell.spec, pq.first, pq.second);
        if (!v.valid()) {
            return {false, "grid cell violates the threshold or gamma promise"};
        }
    }

    const PlanResult result = execute_plan(plan);
    std::string detail = fmt("t=%lld;", static_cast<long long>(t));
    for (const auto& c : result.summary.at("cells")) {
        detail += fmt(" %s/%s/%s %llu/300 (lb %.3f)", c.at("kind").get<std::string>().c_str(),
                      c.at("case").get<std::string>().c_str(), c.at("estimator").get<std::string>().c_str(),
                      static_cast<unsigned long long>(c.at("successes").get<std::uint64_t>()),
                      c.at("wilson_lower").get<double>());
    }
    return {result.passed, detail};
}

// 5. log-log slope of ledger cost against 1/alpha.
Outcome scaling_separation() {
    std::ostringstream plan_text;
    plan_text << R"({"mode": "scaling", "seed": 55, "trials": 2,
      "estimators": ["classical", "q-accounting"],
      "assertions": {"slope_classical": [1.8, 2.2], "slope_quantum": [0.8, 1.2]},
      "grid": [)";
    for (int k = 0; k <= 5; ++k) {
        const auto t = static_cast<std::int64_t>(std::llround(1291.0 * std::pow(2.0, k / 2.0)));
        plan_text << (k ? "," : "") << R"({"n": 4096, "epsilon": 0.5, "kind": "uniform", "case": "same", "t": )" << t
                  << "}";
    }
    plan_text << "]}";
    const PlanResult result = execute_plan(parse_plan(plan_text.str()));
    const auto& s = result.summary;
    return {result.passed, fmt("slope_classical %.3f +/- %.3f, slope_quantum %.3f +/- %.3f",
                               s.at("slope_classical").get<double>(), s.at("slope_classical_stderr").get<double>(),
                               s.at("slope_quantum").get<double>(), s.at("slope_quantum_stderr").get<double>())};
}

// 6. every oracle ledger entry costs 4 ceil(log2 |H|) + 2 ceil(log2(2t + 1)).
Outcome oracle_cost_identity() {
    Rng rng(606);
    std::uint64_t calls = 0;
    std::uint64_t bad = 0;
    while (calls < 10000) {
        const std::size_t n = 2 + rng() % 300;
        const std::int64_t t = 1 + static_cast<std::int64_t>(rng() % 2000);
        InstanceSpec spec;
        spec.n = n;
        spec.t = t;
        const auto x = sample_occurrences(DiscreteDistribution::uniform(n), spec, rng);
        const auto y = sample_occurrences(DiscreteDistribution::point_mass(n, 0), spec, rng);
        const auto family = HashFamily::build(n);
        const Alice alice(family, x.counts());
        const Bob bob(family, y.counts());
        AccountingOptions opt;
        opt.with_traces = true;
        opt.per_group_constant = 1e-3;  // only the charged calls matter here
        CommLedger ledger;
        montanaro_estimate_accounting(family, alice, bob, 0.05, 0.1, ledger, rng, opt);
        const double h = static_cast<double>(family.family_size());
        const auto expect = static_cast<std::uint64_t>(4.0 * std::ceil(std::log2(h)) +
                                                       2.0 * std::ceil(std::log2(2.0 * static_cast<double>(t) + 1.0)));
        for (const auto& e : ledger.entries()) {
            std::uint64_t steps = 0;
            for (const auto& s : e.trace->steps) {
                steps += s.qubits;
            }
            bad += (e.classical || e.width != expect || steps != expect || e.repeat != 1) ? 1 : 0;
            ++calls;
        }
    }
    return {bad == 0, fmt("%llu oracle calls, %llu mismatches", static_cast<unsigned long long>(calls),
                          static_cast<unsigned long long>(bad))};
}

// 7. amplitude estimation within its error bound; calibrated accounting dominates.
Outcome statevector_fidelity() {
    const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> pairs{
        {{1, 0}, {0, 0}}, {{3, 1}, {1, 2}}, {{4, 0}, {0, 4}}, {{2, 2}, {3, 0}}, {{0, 5}, {2, 1}}, {{8, 0}, {0, 0}}};
    const auto family = HashFamily::build(2);
    std::vector<MicroInstance> micro;
    std::size_t within = 0;
    std::size_t runs = 0;
    std::string worst;
    double worst_ratio = 0.0;
    for (const auto& [x, y] : pairs) {
        const Alice alice(family, x);
        const Bob bob(family, y);
        std::vector<std::int64_t> d(2);
        for (std::size_t j = 0; j < 2; ++j) {
            d[j] = x[j] - y[j];
        }
        const double exact = exact_mean_over_family(family, d).value();
        for (unsigned w = 3; w <= 8; ++w) {
            CommLedger ledger;
            const auto ae = amplitude_estimation_statevector(family, alice, bob, w, ledger);
            const double bound = amplitude_estimation_error_bound(exact / ae.f_max, ae.f_max, w);
            const double err = std::abs(ae.estimate - exact);
            within += err <= bound + 1e-9 ? 1 : 0;
            worst_ratio = std::max(worst_ratio, bound > 0 ? err / bound : 0.0);
            ++runs;
            if (ledger.entries().size() != ae.oracle_calls) {
                return {false, "statevector ledger disagrees with the reported call count"};
            }
        }
        MicroInstance m;
        m.x = x;
        m.y = y;
        micro.push_back(m);
    }
    const Calibration cal = calibrate_cq(micro);
    bool dominated = true;
    for (std::size_t i = 0; i < micro.size(); ++i) {
        const auto& p = cal.points[i];
        dominated = dominated && accounting_calls(micro[i].alpha, micro[i].delta_fail, cal.c_q) >= p.calls;
    }
    worst = fmt("%zu/%zu runs within bound (max err/bound %.3f), calibrated C_q %.3f, accounting dominates: %s",
                within, runs, worst_ratio, cal.c_q, dominated ? "yes" : "no");
    return {within == runs && dominated, worst};
}

// 8. padding, monotone and embedding identities.
Outcome reduction_identities() {
    std::uint64_t checked = 0;
    std::uint64_t bad = 0;
    for (std::size_t n : {4u, 8u}) {
        for (std::uint64_t a = 0; a < (1u << n); ++a) {
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                const BitPair pair(index_to_bits(a, n), index_to_bits(b, n));
                bad += check_monotone_identity(pair) ? 0 : 1;
                ++checked;
                if (pair.weight_x() == n / 2 && pair.weight_y() == n / 2) {
                    const BitPair big = pad_small_to_promised(pair);
                    const bool ok = big.n() == n * n && big.common() == n * pair.common() &&
                                    (pair.common() != n / 4 || big.common() == big.n() / 4);
                    bad += ok ? 0 : 1;
                    ++checked;
                }
            }
        }
    }
    const EmbeddingReport emb = check_G_embeddings(2);
    return {bad == 0 && emb.ok(),
            fmt("%llu monotone/padding checks (%llu bad); G: %llu pairs, pattern: %llu cells, %llu mismatches",
                static_cast<unsigned long long>(checked), static_cast<unsigned long long>(bad),
                static_cast<unsigned long long>(emb.g_pairs_checked),
                static_cast<unsigned long long>(emb.pattern_cells_checked),
                static_cast<unsigned long long>(emb.g_mismatches + emb.pattern_mismatches))};
}

// 9. numeric vs closed-form spectral norm for every (n, k) with k | n, n <= 6.
Outcome spectral_norm_agreement() {
    Rng rng(909);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t cases = 0;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            if (n % k != 0) {
                continue;
            }
            const std::size_t size = std::size_t{1} << k;
            std::vector<std::vector<double>> phis;
            for (std::uint64_t s = 0; s < size; ++s) {
                std::vector<double> chi_s(size);
                for (std::uint64_t z = 0; z < size; ++z) {
                    chi_s[z] = chi(s, z);
                }
                phis.push_back(chi_s);
            }
            for (int r = 0; r < 3; ++r) {
                std::vector<double> phi(size);
                for (auto& v : phi) {
                    v = u(rng);
                }
                phis.push_back(phi);
            }
            for (const char* base : {"PMAJ_", "MAJ_", "PARITY_"}) {
                const std::string name = base + std::to_string(k);
                if (std::string(base) == "PMAJ_" && k % 2 != 0) {
                    continue;
                }
                phis.push_back(registry_function(name).real_values());
            }
            for (const auto& phi : phis) {
                const auto c = spectral_norm_check(n, k, phi);
                worst = std::max(worst, c.relative_error);
                ++cases;
            }
        }
    }
    const auto two_root_two = spectral_norm_check(2, 1, std::vector<double>{1.0, -1.0});
    const bool anchor = std::abs(two_root_two.numeric - 2.0 * std::numbers::sqrt2) <= 1e-9 * 2.0 * std::numbers::sqrt2;
    return {worst <= 1e-9 && anchor,
            fmt("%zu instances, worst relative error %.2e, (2,1,(-1)^z) numeric %.12f", cases, worst,
                two_root_two.numeric)};
}

// 10. LP degrees with validated dual witnesses.
Outcome approximate_degree() {
    struct Case {
        const char* name;
        PartialFunction f;
        std::size_t expect;
    };
    const std::vector<Case> cases{
        {"PMAJ_2", registry_function("PMAJ_2"), 2},
        {"PARITY_3", registry_function("PARITY_3"), 3},
        {"const_3", PartialFunction::from(3, [](const BitString&) { return Tri::Plus; }), 0}};
    std::string detail;
    bool ok = true;
    for (const auto& c : cases) {
        const ApproxDegree ad = approx_degree(c.f, 1.0 / 3.0);
        bool witness_ok = true;
        double margin = 0.0;
        if (ad.degree > 0) {
            witness_ok = ad.witness && std::abs(ad.witness->l1() - 1.0) <= 1e-9 &&
                         ad.witness->fourier_residual() <= 1e-9 && ad.witness->margin(1.0 / 3.0) > 1e-9;
            margin = ad.witness ? ad.witness->margin(1.0 / 3.0) : 0.0;
        }
        const auto res = approximation_residual(c.f, ad.poly);
        const bool poly_ok = res.domain_error <= 1.0 / 3.0 + 1e-9 && res.off_domain_excess <= 1.0 / 3.0 + 1e-9;
        ok = ok && ad.degree == c.expect && witness_ok && poly_ok;
        detail += fmt("%s%s: deg %zu (margin %.4f, poly error %.4f)", detail.empty() ? "" : "; ", c.name, ad.degree,
                      margin, res.domain_error);
    }
    return {ok, detail};
}

// 11. PMAJ_2 certificate: unit l1 norm and discrepancy consistent with pmm_bound.
Outcome certificate_pipeline() {
    const Certificate c = emit_certificate("PMAJ_2", 1.0 / 3.0, 2);
    const double gap = std::abs(c.discrepancy_raw - c.pmm_at_correlation);
    const bool ok = c.numeric_matrix && std::abs(c.psi_l1 - 1.0) <= 1e-9 && gap <= 1e-6 && c.bound_qubits >= 0.0 &&
                    c.degree == 2;
    return {ok, fmt("||Psi||_1 = %.12f, discrepancy log4 %.9f, pmm_bound(corr=%.6f, delta=%.6f) %.9f, gap %.1e",
                    c.psi_l1, c.discrepancy_raw, c.correlation, c.delta, c.pmm_at_correlation, gap)};
}

// 12. hard-instance norm and the gamma_LW sqrt(log n) bound.
Outcome hard_instance_norms() {
    const double eps = 0.5;
    const double c0 = 1.0;
    const double bound =
        0.5 * std::sqrt(10.0 + 1.0 / c0) * std::pow(9.0 / (std::numbers::e * std::numbers::ln2), 4.5) / (eps * eps);
    double worst_norm = 0.0;
    double worst_gamma = 0.0;
    std::size_t points = 0;
    for (double n_real = 1000.0; n_real <= 10000.0 + 1e-9; n_real *= std::pow(10.0, 0.125)) {
        const auto n = static_cast<std::size_t>(std::llround(n_real));
        const double lg = std::log2(static_cast<double>(n));
        InstanceSpec spec;
        spec.n = n;
        spec.epsilon = eps;
        spec.C0 = c0;
        spec.t = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(n / (lg * lg * lg))));
        const auto [a, b] = make_hard_pair(spec, PairCase::Same);
        const auto shape = hard_pair_shape(spec);
        const double expect = 0.5 * std::sqrt(1.0 / static_cast<double>(shape.d) + 1.0 / static_cast<double>(shape.l));
        worst_norm = std::max(worst_norm, std::abs(l2_norm(a) - expect));
        worst_gamma = std::max(worst_gamma, gamma_lw(spec, a) * std::sqrt(lg));
        ++points;
    }
    return {worst_norm <= 1e-12 && worst_gamma <= bound,
            fmt("%zu n values in [1e3, 1e4]: max |norm - formula| %.1e, max gamma_LW sqrt(log n) %.3f <= K = %.3f",
                points, worst_norm, worst_gamma, bound)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "AMS exactness", 10, ams_exactness},
        {2, "4-wise independence", 60, four_wise_independence},
        {3, "CDVV unbiasedness", 60, cdvv_unbiased},
        {4, "protocol correctness", 600, protocol_correctness},
        {5, "scaling separation", 900, scaling_separation},
        {6, "oracle cost identity", 5, oracle_cost_identity},
        {7, "statevector fidelity", 120, statevector_fidelity},
        {8, "reduction identities", 120, reduction_identities},
        {9, "spectral norm", 60, spectral_norm_agreement},
        {10, "approximate degree", 60, approximate_degree},
        {11, "certificate pipeline", 60, certificate_pipeline},
        {12, "hard-instance norms", 10, hard_instance_norms},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        const long v = std::strtol(argv[i], &end, 10);
        if (*end != '\0' || v < 1 || v > 12) {
            std::fprintf(stderr, "usage: %s [criterion 1..12]...\n", argv[0]);
            return 2;
        }
        wanted.push_back(static_cast<int>(v));
    }
    bool all_pass = true;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs < c.budget_s;
        const bool pass = o.pass && in_budget;
        all_pass = all_pass && pass;
        std::printf("%s [%d] %s: %s (%.2f s of %.0f s budget%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.budget_s, in_budget ? "" : ", over budget");
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
