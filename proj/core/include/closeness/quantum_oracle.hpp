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
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "closeness/distributions.hpp"
#include "closeness/ledger.hpp"
#include "closeness/sketching.hpp"
#include "closeness/statevector.hpp"

namespace closeness {

/// Private input of one party, bound to the shared hash family. Alice and Bob
/// are distinct types so that the oracle can only ever ask Alice for sigma_a
/// and Bob for sigma_b.
class PartyInput {
   public:
    PartyInput(const HashFamily& family, std::span<const std::int64_t> values);

    std::size_t n() const { return n_; }
    std::int64_t l1() const { return l1_; }
    /// True when `family` is the family this input was bound to.
    bool bound_to(const HashFamily& family) const {
        return family.n() == n_ && family.modulus() == modulus_;
    }
    std::int64_t sigma(std::uint64_t index) const { return packed_.sum(index); }

   private:
    std::size_t n_;
    std::uint32_t modulus_;
    std::int64_t l1_;
    PackedSketchInput packed_;
};

class Alice : public PartyInput {
   public:
    using PartyInput::PartyInput;
};

class Bob : public PartyInput {
   public:
    using PartyInput::PartyInput;
};

/// Smallest width w >= 1 with 2^w > v.
unsigned bits_for(std::uint64_t v);

struct RegisterLayout {
    unsigned w_I = 1;
    unsigned w_A = 1;
    unsigned w_Y = 1;
    unsigned w_phase = 0;

    /// w_I = index width of the family, w_A = bits_for(2t), w_Y = bits_for(4t^2).
    static RegisterLayout for_instance(const HashFamily& family, std::int64_t t, unsigned w_phase = 0);
    std::uint64_t call_cost() const { return 4ull * w_I + 2ull * w_A; }
};

/// max(1, ||X||_1, ||Y||_1): bounds |sigma_a|, |sigma_b| and sets every width.
std::int64_t effective_t(const Alice& alice, const Bob& bob);

enum class OracleDirection { Forward, Inverse };

/// Integer mirror of the oracle's registers on a basis input.
struct MirrorRegisters {
    std::uint64_t I = 0;
    std::int64_t A = 0;
    std::int64_t B = 0;
    std::uint64_t Y = 0;
};

/// Runs the five steps on a basis input: Y <- Y +/- f(I) mod 2^{w_Y}. Throws
/// std::logic_error if A or B is non-zero afterwards. Charges one call when a
/// ledger is given.
void oracle_apply_mirror(MirrorRegisters& regs, const HashFamily& family, const Alice& alice, const Bob& bob,
                         OracleDirection direction, const RegisterLayout& layout, CommLedger* ledger);

/// Qubit ranges holding the index register I and the accumulator Y.
struct OracleRegisters {
    QubitRange index;
    QubitRange accumulator;
};

/// |i>|y> -> |i>|y +/- f(i) mod 2^{w_Y}> on every basis state, f(i) =
/// (sigma_a(i) - sigma_b(i))^2; charges one call of 4 w_I + 2 w_A qubits.
void oracle_apply(StatevectorSim& state, const OracleRegisters& regs, const HashFamily& family, const Alice& alice,
                  const Bob& bob, OracleDirection direction, const RegisterLayout& layout, CommLedger& ledger);

LedgerEntry oracle_ledger_entry(const RegisterLayout& layout, OracleDirection direction, bool with_trace);

struct AccountingOptions {
    double c_q = 4.0;
    double per_group_constant = 16.0;
    bool with_traces = false;
};

struct QuantumEstimate {
    double estimate = 0.0;
    std::uint64_t oracle_calls = 0;
    /// Classical evaluations behind the accounting-mode value (never charged).
    std::uint64_t internal_draws = 0;
};

/// ceil(c_q * (1/alpha) * log2(3/delta_fail)).
std::uint64_t accounting_calls(double alpha, double delta_fail, double c_q);

/// Charges accounting_calls oracle calls (each replayed on the integer mirror
/// at a shared random index, alternating Forward and Inverse) and returns the
/// median-of-means estimate of ||x - y||_2^2 at accuracy (alpha, delta_fail).
QuantumEstimate montanaro_estimate_accounting(const HashFamily& family, const Alice& alice, const Bob& bob,
                                              double alpha, double delta_fail, CommLedger& ledger, Rng& rng,
                                              const AccountingOptions& options = {});
/// Single-vector form: Alice holds l, Bob holds zero.
QuantumEstimate montanaro_estimate_accounting(const HashFamily& family, std::span<const std::int64_t> l,
                                              double alpha, double delta_fail, CommLedger& ledger, Rng& rng,
                                              const AccountingOptions& options = {});

struct AmplitudeEstimate {
    double estimate = 0.0;
    std::uint64_t k_hat = 0;
    double f_max = 0.0;
    unsigned w_phase = 0;
    std::uint64_t oracle_calls = 0;
    unsigned total_qubits = 0;
    /// Outcome distribution of the phase register.
    std::vector<double> distribution;

    /// f_max * sin^2(pi m / 2^{w_phase}).
    double estimate_for(std::uint64_t m) const;
};

/// Canonical amplitude estimation of a = E_i f(i) / f_max, f_max = 4 t_eff^2,
/// with A = R(Y) O_f H_I and Q = -A S_0 A^{-1} S_chi. Returns the most likely
/// phase outcome. Costs 2^{w_phase+1} - 1 oracle calls. Throws
/// std::length_error when w_I + w_Y + 1 + w_phase exceeds the simulator guard.
AmplitudeEstimate amplitude_estimation_statevector(const HashFamily& family, const Alice& alice, const Bob& bob,
                                                   unsigned w_phase, CommLedger& ledger);
AmplitudeEstimate amplitude_estimation_statevector(const HashFamily& family, std::span<const std::int64_t> l,
                                                   unsigned w_phase, CommLedger& ledger);

/// f_max * (2 pi sqrt(a) / K + pi^2 / K^2), K = 2^{w_phase}.
double amplitude_estimation_error_bound(double a, double f_max, unsigned w_phase);

/// ceil(log2(1/alpha)) + 3.
unsigned default_phase_width(double alpha);

struct MicroInstance {
    std::vector<std::int64_t> x;
    std::vector<std::int64_t> y;
    double alpha = 0.5;
    double delta_fail = 1.0 / 3.0;
};

struct CalibrationPoint {
    unsigned w_phase = 0;
    std::uint64_t calls = 0;
    double success_mass = 0.0;
    double c_q = 0.0;
};

struct Calibration {
    double c_q = 0.0;
    std::vector<CalibrationPoint> points;
};

/// For every instance, the smallest phase width whose exact outcome
/// distribution puts mass >= 1 - delta_fail on estimates within relative
/// error alpha of ||x - y||_2^2; C_q is the largest calls * alpha / log2(3/delta_fail).
/// Throws std::invalid_argument on an empty set and std::runtime_error when no
/// width up to max_w_phase suffices.
Calibration calibrate_cq(std::span<const MicroInstance> instances, unsigned max_w_phase = 8);

void to_json(nlohmann::json& j, const RegisterLayout& layout);
void to_json(nlohmann::json& j, const Calibration& c);

}  // namespace closeness
