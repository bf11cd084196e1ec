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

#include "closeness/certificate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "closeness/approx_degree.hpp"
#include "closeness/lowerbound.hpp"
#include "closeness/pattern_matrix.hpp"

namespace closeness {

std::vector<std::string> registry_names() { return {"PMAJ_k", "PARITY_k", "MAJ_k"}; }

PartialFunction registry_function(const std::string& name) {
    const auto unknown = [&] {
        return std::invalid_argument("unknown function '" + name +
                                     "'; registry: PMAJ_k (k even), PARITY_k, MAJ_k with 1 <= k <= 8");
    };
    const auto pos = name.rfind('_');
    if (pos == std::string::npos || pos + 1 >= name.size()) {
        throw unknown();
    }
    const std::string base = name.substr(0, pos);
    std::size_t k = 0;
    try {
        std::size_t used = 0;
        k = std::stoul(name.substr(pos + 1), &used);
        if (used != name.size() - pos - 1) {
            throw unknown();
        }
    } catch (const std::logic_error&) {
        throw unknown();
    }
    if (k == 0 || k > kMaxLpArity) {
        throw unknown();
    }
    if (base == "PMAJ") {
        if (k % 2 != 0) {
            throw unknown();
        }
        return pmaj_function(k);
    }
    if (base == "PARITY") {
        return PartialFunction::from(k, [](const BitString& x) { return (weight(x) % 2) ? Tri::Minus : Tri::Plus; });
    }
    if (base == "MAJ") {
        return PartialFunction::from(k, [k](const BitString& x) { return 2 * weight(x) > k ? Tri::Minus : Tri::Plus; });
    }
    throw unknown();
}

Certificate emit_certificate(const std::string& function_name, double epsilon, std::size_t n_over_k,
                             const CertificateOptions& options) {
    if (n_over_k == 0) {
        throw std::invalid_argument("n/k must be at least 1");
    }
    const PartialFunction f = registry_function(function_name);
    Certificate c;
    c.function = function_name;
    c.k = f.k;
    c.n = n_over_k * f.k;
    c.epsilon = epsilon;
    c.delta = options.delta.value_or(3.0 * epsilon / 7.0);

    const ApproxDegree ad = approx_degree(f, epsilon);
    c.degree = ad.degree;
    c.approximation_error = ad.error;
    const ApproximationResidual ar = approximation_residual(f, ad.poly);
    c.residuals.approximation = std::max({0.0, ar.domain_error - epsilon, ar.off_domain_excess - epsilon});
    c.pmm = pmm_bound(c.n, c.k, c.degree, epsilon, c.delta);
    if (!ad.witness) {
        c.pmm_at_correlation = c.pmm;
        c.discrepancy_raw = -std::numeric_limits<double>::infinity();
        return c;
    }

    const DualWitness& w = *ad.witness;
    c.has_witness = true;
    c.witness = w.psi;
    c.correlation = w.correlation;
    c.margin = w.margin(epsilon);
    c.residuals.fourier = w.fourier_residual();
    c.pmm_at_correlation = pmm_bound(c.n, c.k, c.degree, c.correlation, c.delta);

    const double scale = std::ldexp(1.0, -static_cast<int>(c.n)) *
                         std::pow(static_cast<double>(n_over_k), -static_cast<double>(c.k));
    std::vector<double> phi(w.psi);
    for (auto& v : phi) {
        v *= scale;
    }
    c.spectral_norm_formula = spectral_norm_formula(c.n, c.k, phi);

    DiscrepancyResult disc;
    if (options.numeric && pattern_entry_count(c.n, c.k) <= kMaxPatternEntries) {
        const PatternMatrix psi = build_pattern_matrix(c.n, c.k, phi);
        const PatternMatrix sign = build_pattern_matrix(c.n, c.k, f);
        const double numeric = spectral_norm_numeric(psi);
        disc = discrepancy_bound(psi.real, sign.signs, psi.rows, psi.cols, c.delta, numeric);
        c.numeric_matrix = true;
        c.spectral_norm = numeric;
        c.residuals.spectral = std::abs(numeric - c.spectral_norm_formula) / std::max(numeric, 1e-300);
    } else {
        // Each z in {0,1}^k occurs 2^n (n/k)^k times, so the sums reduce to psi.
        c.spectral_norm = c.spectral_norm_formula;
        disc.l1 = w.l1();
        disc.correlation = w.correlation;
        const double rows = std::ldexp(1.0, static_cast<int>(c.n));
        const double cols = std::pow(static_cast<double>(n_over_k), static_cast<double>(c.k)) *
                            std::ldexp(1.0, static_cast<int>(c.k));
        const double numerator = disc.correlation - 2.0 * c.delta;
        disc.raw = numerator > 0.0
                       ? std::log(numerator / (3.0 * c.spectral_norm * std::sqrt(rows * cols))) / std::log(4.0)
                       : -std::numeric_limits<double>::infinity();
        disc.bound = std::max(0.0, disc.raw);
    }
    c.psi_l1 = disc.l1;
    c.residuals.l1 = std::abs(disc.l1 - 1.0);
    c.discrepancy_raw = disc.raw;
    c.bound_qubits = disc.bound;
    c.residuals.pipeline = std::max(0.0, c.pmm_at_correlation - c.discrepancy_raw);
    return c;
}

void to_json(nlohmann::json& j, const Certificate& c) {
    const auto finite = [](double v) -> nlohmann::json {
        return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    j = {{"function", c.function},
         {"epsilon", c.epsilon},
         {"delta", c.delta},
         {"degree", c.degree},
         {"approximation_error", c.approximation_error},
         {"pattern", {{"n", c.n}, {"k", c.k}}},
         {"witness", c.has_witness ? nlohmann::json(c.witness) : nlohmann::json(nullptr)},
         {"correlation", c.correlation},
         {"margin", c.margin},
         {"psi_l1", c.psi_l1},
         {"spectral_norm", c.spectral_norm},
         {"spectral_norm_formula", c.spectral_norm_formula},
         {"numeric_matrix", c.numeric_matrix},
         {"discrepancy_raw", finite(c.discrepancy_raw)},
         {"bound_qubits", c.bound_qubits},
         {"pmm_bound", c.pmm},
         {"pmm_bound_at_correlation", c.pmm_at_correlation},
         {"residuals",
          {{"l1", c.residuals.l1},
           {"fourier", c.residuals.fourier},
           {"approximation", c.residuals.approximation},
           {"spectral", c.residuals.spectral},
           {"pipeline", c.residuals.pipeline}}}};
}

}  // namespace closeness
