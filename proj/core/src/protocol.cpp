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

#include "closeness/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "closeness/sketching.hpp"

namespace closeness {

std::string to_string(EstimatorMode mode) {
    switch (mode) {
        case EstimatorMode::ClassicalAMS:
            return "classical";
        case EstimatorMode::QuantumAccounting:
            return "q-accounting";
        case EstimatorMode::QuantumStatevector:
            return "q-statevector";
    }
    return "?";
}

EstimatorMode estimator_mode_from_string(const std::string& s) {
    if (s == "classical") {
        return EstimatorMode::ClassicalAMS;
    }
    if (s == "q-accounting") {
        return EstimatorMode::QuantumAccounting;
    }
    if (s == "q-statevector") {
        return EstimatorMode::QuantumStatevector;
    }
    throw std::invalid_argument("unknown estimator '" + s + "' (classical|q-accounting|q-statevector)");
}

std::string to_string(Decision d) { return d == Decision::Same ? "same" : "far"; }

void ProtocolConfig::validate() const {
    spec.validate();
    if (!(c_alpha > 0.0)) {
        throw std::invalid_argument("c_alpha must be positive");
    }
    if (alpha_override < 0.0 || alpha_override > 1.0) {
        throw std::invalid_argument("alpha override must lie in (0, 1]");
    }
    if (!(delta_fail > 0.0 && delta_fail < 1.0)) {
        throw std::invalid_argument("delta_fail must lie in (0, 1)");
    }
    if (!(per_group_constant > 0.0) || !(c_q > 0.0)) {
        throw std::invalid_argument("estimator constants must be positive");
    }
}

double ProtocolConfig::alpha() const { return alpha_override > 0.0 ? alpha_override : alpha_of(spec, c_alpha); }

double alpha_of(const InstanceSpec& spec, double c_alpha) {
    spec.validate();
    const double u = static_cast<double>(spec.t) * spec.epsilon * spec.epsilon / static_cast<double>(spec.n);
    return std::min(1.0, c_alpha * u / (1.0 + u));
}

double tau_of(const InstanceSpec& spec) { return tau_of(spec, static_cast<double>(spec.t)); }

double tau_of(const InstanceSpec& spec, double t) {
    return spec.epsilon * spec.epsilon * t * t / (2.0 * static_cast<double>(spec.n)) + 2.0 * t;
}

CdvvStatistic cdvv_Z(const OccurrenceVector& x, const OccurrenceVector& y) {
    if (x.n() != y.n()) {
        throw std::invalid_argument("cdvv_Z: occurrence vectors have different lengths");
    }
    const std::int64_t m = std::max(x.total(), y.total());
    if (m == 0) {
        throw std::invalid_argument("cdvv_Z: both sample sets are empty");
    }
    CdvvStatistic s;
    for (std::size_t i = 0; i < x.n(); ++i) {
        const std::int64_t d = x[i] - y[i];
        s.raw += d * d - x[i] - y[i];
    }
    s.z = std::sqrt(static_cast<double>(std::max<std::int64_t>(0, s.raw))) / static_cast<double>(m);
    return s;
}

bool norm_gate(const OccurrenceVector& x, const OccurrenceVector& y, CommLedger& ledger) {
    const double ex = collision_norm_estimate(x);
    const double ey = collision_norm_estimate(y);
    ledger.append({"norm gate", Direction::AliceToBob, "collision norm estimate (real)", 64, true, 1, std::nullopt});
    if (ex == 0.0 || ey == 0.0) {
        return ex != ey;
    }
    return ex > 4.0 * ey || ey > 4.0 * ex;
}

namespace {

using Estimator = std::function<double(const HashFamily&, const Alice&, const Bob&, double alpha, ProtocolRun&,
                                       Rng& shared)>;

double classical_estimator(const HashFamily& family, const Alice& alice, const Bob& bob, double alpha,
                           const ProtocolConfig& config, ProtocolRun& run, Rng& shared) {
    const auto plan = MedianOfMeansPlan::for_accuracy(alpha, config.delta_fail, config.per_group_constant);
    const unsigned width = bits_for(2 * static_cast<std::uint64_t>(effective_t(alice, bob)));
    for (std::size_t g = 0; g < plan.groups; ++g) {
        run.ledger.append({"ams group " + std::to_string(g), Direction::AliceToBob, "sigma_a(i)", width, true,
                           plan.per_group, std::nullopt});
    }
    run.draws = plan.draws();
    return median_of_means(plan, [&](std::size_t) {
        const std::uint64_t i = family.draw_index(shared);
        const std::int64_t d = alice.sigma(i) - bob.sigma(i);
        return static_cast<double>(d * d);
    });
}

ProtocolRun run_common(const DiscreteDistribution& p, const DiscreteDistribution& q, const ProtocolConfig& config,
                       Rng& rng, const Estimator& estimate) {
    config.validate();
    if (p.n() != config.spec.n || q.n() != config.spec.n) {
        throw std::invalid_argument("distributions do not match spec.n");
    }
    ProtocolRun run;
    run.alpha = config.alpha();
    Rng alice_rng(rng());
    Rng bob_rng(rng());
    Rng shared_rng(rng());

    const OccurrenceVector x = sample_occurrences(p, config.spec, alice_rng);
    const OccurrenceVector y = sample_occurrences(q, config.spec, bob_rng);
    run.total_x = x.total();
    run.total_y = y.total();

    const double t_tau = config.tau_mode == TauMode::Nominal ? static_cast<double>(config.spec.t)
                                                              : static_cast<double>(std::max(x.total(), y.total()));
    run.verdict.tau = tau_of(config.spec, t_tau);
    run.verdict.gate_tripped = norm_gate(x, y, run.ledger);
    if (!run.verdict.gate_tripped) {
        const HashFamily family = HashFamily::build(config.spec.n);
        const Alice alice(family, x.counts());
        const Bob bob(family, y.counts());
        run.verdict.delta_estimate = estimate(family, alice, bob, run.alpha, run, shared_rng);
    }
    run.verdict.decision = (!run.verdict.gate_tripped && run.verdict.delta_estimate < run.verdict.tau)
                               ? Decision::Same
                               : Decision::EpsilonFar;
    if (!run.verdict.consistent() || !run.ledger.totals_consistent()) {
        throw std::logic_error("protocol run violated its verdict or ledger invariant");
    }
    return run;
}

}  // namespace

ProtocolRun run_classical(const DiscreteDistribution& p, const DiscreteDistribution& q, const ProtocolConfig& config,
                          Rng& rng) {
    if (config.estimator_mode != EstimatorMode::ClassicalAMS) {
        throw std::invalid_argument("run_classical needs the classical estimator");
    }
    return run_common(p, q, config, rng,
                      [&](const HashFamily& h, const Alice& a, const Bob& b, double alpha, ProtocolRun& run,
                          Rng& shared) { return classical_estimator(h, a, b, alpha, config, run, shared); });
}

ProtocolRun run_quantum(const DiscreteDistribution& p, const DiscreteDistribution& q, const ProtocolConfig& config,
                        Rng& rng) {
    if (config.estimator_mode == EstimatorMode::ClassicalAMS) {
        throw std::invalid_argument("run_quantum needs a quantum estimator");
    }
    return run_common(p, q, config, rng,
                      [&](const HashFamily& h, const Alice& a, const Bob& b, double alpha, ProtocolRun& run,
                          Rng& shared) {
                          if (config.estimator_mode == EstimatorMode::QuantumAccounting) {
                              AccountingOptions opt;
                              opt.c_q = config.c_q;
                              opt.per_group_constant = config.per_group_constant;
                              opt.with_traces = config.with_traces;
                              const QuantumEstimate e = montanaro_estimate_accounting(
                                  h, a, b, alpha, config.delta_fail, run.ledger, shared, opt);
                              run.oracle_calls = e.oracle_calls;
                              run.draws = e.oracle_calls;
                              return e.estimate;
                          }
                          const unsigned w = config.w_phase.value_or(default_phase_width(alpha));
                          const AmplitudeEstimate e = amplitude_estimation_statevector(h, a, b, w, run.ledger);
                          run.oracle_calls = e.oracle_calls;
                          run.draws = e.oracle_calls;
                          return e.estimate;
                      });
}

ProtocolRun run_protocol(const DiscreteDistribution& p, const DiscreteDistribution& q, const ProtocolConfig& config,
                         Rng& rng) {
    return config.estimator_mode == EstimatorMode::ClassicalAMS ? run_classical(p, q, config, rng)
                                                                : run_quantum(p, q, config, rng);
}

void to_json(nlohmann::json& j, const ProtocolConfig& c) {
    j = {{"spec", c.spec},
         {"c_alpha", c.c_alpha},
         {"alpha", c.alpha()},
         {"estimator", to_string(c.estimator_mode)},
         {"delta_fail", c.delta_fail},
         {"per_group_constant", c.per_group_constant},
         {"c_q", c.c_q},
         {"tau_mode", c.tau_mode == TauMode::Nominal ? "nominal" : "realized"}};
    if (c.alpha_override > 0.0) {
        j["alpha_override"] = c.alpha_override;
    }
    if (c.w_phase) {
        j["w_phase"] = *c.w_phase;
    }
}

ProtocolConfig protocol_config_from_json(const nlohmann::json& j) {
    ProtocolConfig c;
    c.spec = instance_spec_from_json(j.at("spec"));
    c.c_alpha = j.value("c_alpha", c.c_alpha);
    c.alpha_override = j.value("alpha_override", c.alpha_override);
    c.estimator_mode = estimator_mode_from_string(j.value("estimator", std::string("classical")));
    c.delta_fail = j.value("delta_fail", c.delta_fail);
    c.per_group_constant = j.value("per_group_constant", c.per_group_constant);
    c.c_q = j.value("c_q", c.c_q);
    if (j.contains("w_phase")) {
        c.w_phase = j.at("w_phase").get<unsigned>();
    }
    const std::string tau = j.value("tau_mode", std::string("nominal"));
    if (tau != "nominal" && tau != "realized") {
        throw std::invalid_argument("tau_mode must be nominal or realized");
    }
    c.tau_mode = tau == "nominal" ? TauMode::Nominal : TauMode::Realized;
    c.validate();
    return c;
}

nlohmann::json run_artifact(const ProtocolRun& run, const ProtocolConfig& config, bool with_traces) {
    nlohmann::json ledger = ledger_to_json(run.ledger, with_traces);
    return {{"verdict", to_string(run.verdict.decision)},
            {"delta_estimate", run.verdict.delta_estimate},
            {"tau", run.verdict.tau},
            {"gate_tripped", run.verdict.gate_tripped},
            {"alpha", run.alpha},
            {"oracle_calls", run.oracle_calls},
            {"draws", run.draws},
            {"ledger", ledger["entries"]},
            {"totals", ledger["totals"]},
            {"config", config},
            {"seed", config.spec.seed}};
}

}  // namespace closeness
