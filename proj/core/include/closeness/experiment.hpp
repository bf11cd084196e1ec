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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "closeness/distributions.hpp"
#include "closeness/protocol.hpp"

namespace closeness {

/// Invalid plan; `line` is 1-based within the config text, 0 when unknown.
class PlanError : public std::runtime_error {
   public:
    PlanError(const std::string& message, std::size_t line);
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

enum class PlanMode { Accuracy, Scaling, Certificate, TraceAudit, ReductionCheck };

std::string to_string(PlanMode mode);
PlanMode plan_mode_from_string(const std::string& s);

/// Which distribution pair a cell draws from.
enum class InstanceKind { Hard, FarPair, Uniform, PointMass };

std::string to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(const std::string& s);

struct Cell {
    InstanceSpec spec;
    InstanceKind kind = InstanceKind::Uniform;
    PairCase pair_case = PairCase::Same;
};

struct CertificateRequest {
    std::string function;
    double epsilon = 1.0 / 3.0;
    std::size_t n_over_k = 2;
};

struct PlanAssertions {
    std::optional<double> min_wilson_lower;
    std::optional<std::pair<double, double>> slope_classical;
    std::optional<std::pair<double, double>> slope_quantum;
    std::optional<double> max_residual;
};

struct ExperimentPlan {
    PlanMode mode = PlanMode::Accuracy;
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    std::vector<EstimatorMode> estimators{EstimatorMode::ClassicalAMS};
    /// Protocol constants; spec and estimator are filled per cell.
    ProtocolConfig protocol;
    std::vector<Cell> grid;
    std::vector<CertificateRequest> certificates;
    PlanAssertions assertions;
    std::string out_dir = "out";
    bool dump_trace = false;
    bool timing = false;
    unsigned threads = 0;

    /// Throws PlanError (line 0) on an empty grid, trials == 0 or an invalid spec.
    void validate() const;
};

/// Parses the JSON plan; errors carry the line of the offending key.
ExperimentPlan parse_plan(const std::string& text);

/// Per-trial record; one CSV row.
struct TrialRecord {
    std::uint64_t seed = 0;
    std::size_t cell = 0;
    InstanceSpec spec;
    EstimatorMode estimator = EstimatorMode::ClassicalAMS;
    Decision verdict = Decision::Same;
    Decision truth = Decision::Same;
    double delta_estimate = 0.0;
    double tau = 0.0;
    double alpha = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t qubits = 0;
    double wall_ms = 0.0;
};

struct PlanResult {
    std::vector<TrialRecord> trials;
    nlohmann::json summary;
    /// Extra artifacts (relative path, content) such as certificates and traces.
    std::vector<std::pair<std::string, nlohmann::json>> files;
    bool passed = true;
};

/// Seed of trial `trial` of cell `cell`: a splitmix64 mix of the plan seed.
std::uint64_t trial_seed(std::uint64_t plan_seed, std::size_t cell, std::size_t trial);

/// Executes the plan without touching the file system.
PlanResult execute_plan(const ExperimentPlan& plan);

std::string csv_header();
std::string csv_row(const TrialRecord& r);

/// Executes the plan and writes results.csv and summary.json (plus
/// certificates or traces) into plan.out_dir. Returns 0 when every assertion
/// passes and 1 otherwise.
int run_plan(const ExperimentPlan& plan);

}  // namespace closeness
