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
#include <vector>

#include "closeness/boolean.hpp"

namespace closeness {

inline constexpr std::size_t kMaxLpArity = 8;
inline constexpr double kFeasibilityTolerance = 1e-9;

/// psi with ||psi||_1 = 1 and psi_hat(S) = 0 for every |S| <= d.
struct DualWitness {
    std::size_t k = 0;
    std::size_t d = 0;
    std::vector<double> psi;
    /// sum_dom f psi - sum_{not dom} |psi|.
    double correlation = 0.0;

    double l1() const;
    /// max |psi_hat(S)| over |S| <= d.
    double fourier_residual() const;
    /// correlation - epsilon * ||psi||_1; positive certifies deg_epsilon > d.
    double margin(double epsilon) const;
};

/// Best correlation eta*(d) = max sum_dom f psi - sum_{not dom} |psi| over
/// ||psi||_1 = 1 with psi_hat(S) = 0 for |S| <= d. By duality eta*(d) is the
/// least uniform error of a degree-d approximant (off-domain bound 1 + error).
struct DegreeLp {
    double eta = 0.0;
    std::vector<double> psi;
    /// Multilinear coefficients pi_hat(S) of the dual polynomial, zero for |S| > d.
    std::vector<double> poly;
};

/// Dense LP over {0,1}^k. Throws std::invalid_argument when k > kMaxLpArity.
DegreeLp solve_degree_lp(const PartialFunction& f, std::size_t d);
/// Same optimum over symmetric psi(x) = phi(|x|)/C(k,|x|); needs symmetric f.
double solve_symmetric_degree_lp(const PartialFunction& f, std::size_t d);

struct ApproxDegree {
    std::size_t degree = 0;
    double error = 0.0;
    /// Coefficients of a degree-`degree` approximant within `error`.
    std::vector<double> poly;
    /// Certificate that degree - 1 fails, when degree > 0.
    std::optional<DualWitness> witness;
};

/// Smallest d with eta*(d) <= epsilon + kFeasibilityTolerance.
ApproxDegree approx_degree(const PartialFunction& f, double epsilon);

/// max over dom |f - pi| and max over the complement of |pi| - 1 for the
/// polynomial with Fourier coefficients `poly`.
struct ApproximationResidual {
    double domain_error = 0.0;
    double off_domain_excess = 0.0;
};
ApproximationResidual approximation_residual(const PartialFunction& f, const std::vector<double>& poly);

}  // namespace closeness
