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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "closeness/boolean.hpp"

namespace closeness {

/// Built-in functions: "PMAJ_k" (k even), "PARITY_k", "MAJ_k" (-1 iff |x| > k/2), k <= 8.
PartialFunction registry_function(const std::string& name);
std::vector<std::string> registry_names();

struct CertificateOptions {
    /// Communication error of the bound; defaults to 3 epsilon / 7.
    std::optional<double> delta;
    /// Build and check the pattern matrix numerically when under the guard.
    bool numeric = true;
};

struct Certificate {
    std::string function;
    std::size_t k = 0;
    std::size_t n = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::size_t degree = 0;
    double approximation_error = 0.0;
    bool has_witness = false;
    std::vector<double> witness;
    double correlation = 0.0;
    double margin = 0.0;
    double psi_l1 = 0.0;
    double spectral_norm = 0.0;
    double spectral_norm_formula = 0.0;
    bool numeric_matrix = false;
    double discrepancy_raw = 0.0;
    double bound_qubits = 0.0;
    /// pmm_bound(n, k, degree, epsilon, delta).
    double pmm = 0.0;
    /// pmm_bound with the witness correlation in place of epsilon.
    double pmm_at_correlation = 0.0;

    struct Residuals {
        double l1 = 0.0;
        double fourier = 0.0;
        double approximation = 0.0;
        double spectral = 0.0;
        double pipeline = 0.0;
    } residuals;
};

/// approx_degree -> dual witness -> (n, k, 2^{-n}(n/k)^{-k} psi) pattern
/// matrix -> discrepancy bound, n = n_over_k * k. Throws
/// std::invalid_argument for an unknown function (listing the registry).
Certificate emit_certificate(const std::string& function_name, double epsilon, std::size_t n_over_k,
                             const CertificateOptions& options = {});

void to_json(nlohmann::json& j, const Certificate& c);

}  // namespace closeness
