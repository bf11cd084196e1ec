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
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "closeness/distributions.hpp"
#include "closeness/ledger.hpp"
#include "closeness/quantum_oracle.hpp"

namespace closeness {

enum class EstimatorMode { ClassicalAMS, QuantumAccounting, QuantumStatevector };

std::string to_string(EstimatorMode mode);
/// Accepts "classical", "q-accounting" and "q-statevector".
EstimatorMode estimator_mode_from_string(const std::string& s);

/// Which sample count enters tau: the nominal t, or max of the realized totals.
enum class TauMode { Nominal, Realized };

struct ProtocolConfig {
    InstanceSpec spec;
    /// Scale of alpha; see alpha_of.
    double c_alpha = 0.25;
    /// When positive, used instead of alpha_of(spec, c_alpha).
    double alpha_override = 0.0;
    EstimatorMode estimator_mode = EstimatorMode::ClassicalAMS;
    double delta_fail = 1.0 / 9.0;
    /// Median-of-means draws per group are ceil(per_group_constant / alpha^2).
    double per_group_constant = 16.0;
    double c_q = 4.0;
    /// Statevector phase register; default_phase_width(alpha) when unset.
    std::optional<unsigned> w_phase;
    TauMode tau_mode = TauMode::Nominal;
    bool with_traces = false;

    /// Throws std::invalid_argument on an invalid spec or constant.
    void validate() const;
    double alpha() const;
};

enum class Decision { Same, EpsilonFar };

std::string to_string(Decision d);

struct Verdict {
    Decision decision = Decision::Same;
    double delta_estimate = 0.0;
    double tau = 0.0;
    bool gate_tripped = false;

    bool consistent() const {
        return (decision == Decision::Same) == (!gate_tripped && delta_estimate < tau);
    }
};

/// 1/alpha = (1 + n/(t eps^2)) / c_alpha, i.e. alpha = c_alpha u/(1+u) with
/// u = t eps^2 / n, capped at 1.
double alpha_of(const InstanceSpec& spec, double c_alpha = 0.25);

/// eps^2 t^2 / (2n) + 2t.
double tau_of(const InstanceSpec& spec);
double tau_of(const InstanceSpec& spec, double t);

struct CdvvStatistic {
    std::int64_t raw = 0;
    double z = 0.0;
};

/// raw = sum_i ((X_i - Y_i)^2 - X_i - Y_i), Z = sqrt(max(0, raw)) / M with
/// M = max(X.total, Y.total). Throws std::invalid_argument if M == 0 or the
/// lengths differ.
CdvvStatistic cdvv_Z(const OccurrenceVector& x, const OccurrenceVector& y);

/// Both parties estimate their l2 norm from collisions; one 64-bit real is
/// sent to the other side. Trips when one estimate is zero and the other not,
/// or when they differ by more than a factor 4.
bool norm_gate(const OccurrenceVector& x, const OccurrenceVector& y, CommLedger& ledger);

struct ProtocolRun {
    Verdict verdict;
    CommLedger ledger;
    double alpha = 0.0;
    std::int64_t total_x = 0;
    std::int64_t total_y = 0;
    /// Classical sketch draws (ClassicalAMS) or oracle calls (quantum modes).
    std::uint64_t draws = 0;
    std::uint64_t oracle_calls = 0;
};

/// Classical protocol with the AMS estimator; each draw sends sigma_a(i) in
/// bits_for(2 t_eff) bits, the index comes from shared randomness.
ProtocolRun run_classical(const DiscreteDistribution& p, const DiscreteDistribution& q, const ProtocolConfig& config,
                          Rng& rng);
/// Quantum protocol: the same path with Delta from the quantum oracle estimator.
ProtocolRun run_quantum(const DiscreteDistribution& p, const DiscreteDistribution& q, const ProtocolConfig& config,
                        Rng& rng);
/// Dispatches on config.estimator_mode.
ProtocolRun run_protocol(const DiscreteDistribution& p, const DiscreteDistribution& q, const ProtocolConfig& config,
                         Rng& rng);

void to_json(nlohmann::json& j, const ProtocolConfig& c);
ProtocolConfig protocol_config_from_json(const nlohmann::json& j);
/// {verdict, delta_estimate, tau, gate_tripped, alpha, ledger, config, seed}.
nlohmann::json run_artifact(const ProtocolRun& run, const ProtocolConfig& config, bool with_traces);

}  // namespace closeness
