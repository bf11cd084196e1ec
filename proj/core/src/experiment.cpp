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

#include "closeness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "closeness/certificate.hpp"
#include "closeness/lowerbound.hpp"
#include "closeness/stats.hpp"

namespace closeness {

PlanError::PlanError(const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

std::string to_string(PlanMode mode) {
    switch (mode) {
        case PlanMode::Accuracy:
            return "accuracy";
        case PlanMode::Scaling:
            return "scaling";
        case PlanMode::Certificate:
            return "certificate";
        case PlanMode::TraceAudit:
            return "trace-audit";
        case PlanMode::ReductionCheck:
            return "reduction-check";
    }
    return "?";
}

PlanMode plan_mode_from_string(const std::string& s) {
    for (auto m : {PlanMode::Accuracy, PlanMode::Scaling, PlanMode::Certificate, PlanMode::TraceAudit,
                   PlanMode::ReductionCheck}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw std::invalid_argument("unknown mode '" + s +
                                "' (accuracy|scaling|certificate|trace-audit|reduction-check)");
}

std::string to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::Hard:
            return "hard";
        case InstanceKind::FarPair:
            return "far_pair";
        case InstanceKind::Uniform:
            return "uniform";
        case InstanceKind::PointMass:
            return "point_mass";
    }
    return "?";
}

InstanceKind instance_kind_from_string(const std::string& s) {
    for (auto k : {InstanceKind::Hard, InstanceKind::FarPair, InstanceKind::Uniform, InstanceKind::PointMass}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument("unknown instance kind '" + s + "' (hard|far_pair|uniform|point_mass)");
}

void ExperimentPlan::validate() const {
    if (trials == 0) {
        throw PlanError("trials must be at least 1", 0);
    }
    const bool needs_grid = mode == PlanMode::Accuracy || mode == PlanMode::Scaling || mode == PlanMode::TraceAudit;
    if (needs_grid && grid.empty()) {
        throw PlanError("grid must not be empty", 0);
    }
    if (mode == PlanMode::Certificate && certificates.empty()) {
        throw PlanError("certificate mode needs at least one certificate request", 0);
    }
    if (estimators.empty()) {
        throw PlanError("at least one estimator is required", 0);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            grid[i].spec.validate();
            if ((grid[i].kind == InstanceKind::Uniform || grid[i].kind == InstanceKind::PointMass) &&
                grid[i].pair_case == PairCase::Far) {
                throw std::invalid_argument("uniform and point_mass cells only exist as same pairs");
            }
        } catch (const std::invalid_argument& e) {
            throw PlanError("grid cell " + std::to_string(i) + ": " + e.what(), 0);
        }
    }
}

namespace {

std::size_t line_at_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the n-th occurrence (0-based) of "key" as a JSON key.
std::size_t line_of_key(const std::string& text, const std::string& key, std::size_t occurrence = 0) {
    const std::string needle = "\"" + key + "\"";
    std::size_t pos = 0;
    for (std::size_t i = 0;; ++i) {
        pos = text.find(needle, pos);
        if (pos == std::string::npos) {
            return 0;
        }
        if (i == occurrence) {
            return line_at_offset(text, pos);
        }
        pos += needle.size();
    }
}

class PlanReader {
   public:
    explicit PlanReader(const std::string& text) : text_(text) {}

    template <class Fn>
    void field(const nlohmann::json& obj, const std::string& key, Fn&& fn) {
        if (!obj.contains(key)) {
            return;
        }
        try {
            fn(obj.at(key));
        } catch (const PlanError&) {
            throw;
        } catch (const std::exception& e) {
            throw PlanError("invalid value for \"" + key + "\": " + e.what(), line_of_key(text_, key, next(key)));
        }
        ++seen_[key];
    }

    void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
        for (const auto& [k, v] : obj.items()) {
            if (!allowed.count(k)) {
                throw PlanError("unknown key \"" + k + "\" in " + where, line_of_key(text_, k));
            }
        }
    }

    std::size_t line_of(const std::string& key) const { return line_of_key(text_, key); }

   private:
    std::size_t next(const std::string& key) {
        auto it = seen_.find(key);
        return it == seen_.end() ? 0 : it->second;
    }

    const std::string& text_;
    std::map<std::string, std::size_t> seen_;
};

}  // namespace

ExperimentPlan parse_plan(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PlanError(std::string("malformed JSON: ") + e.what(), line_at_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!j.is_object()) {
        throw PlanError("plan must be a JSON object", 1);
    }
    PlanReader rd(text);
    rd.check_keys(j,
                  {"mode", "seed", "trials", "estimator", "estimators", "protocol", "grid", "certificates",
                   "assertions", "out", "dump_trace", "timing", "threads"},
                  "plan");
    if (!j.contains("mode")) {
        throw PlanError("missing required key \"mode\"", 1);
    }
    ExperimentPlan plan;
    rd.field(j, "mode", [&](const auto& v) { plan.mode = plan_mode_from_string(v.template get<std::string>()); });
    rd.field(j, "seed", [&](const auto& v) { plan.seed = v.template get<std::uint64_t>(); });
    rd.field(j, "trials", [&](const auto& v) {
        const auto t = v.template get<std::int64_t>();
        if (t < 1) {
            throw std::invalid_argument("trials must be at least 1");
        }
        plan.trials = static_cast<std::size_t>(t);
    });
    rd.field(j, "estimator", [&](const auto& v) {
        plan.estimators = {estimator_mode_from_string(v.template get<std::string>())};
    });
    rd.field(j, "estimators", [&](const auto& v) {
        plan.estimators.clear();
        for (const auto& e : v) {
            plan.estimators.push_back(estimator_mode_from_string(e.template get<std::string>()));
        }
        if (plan.estimators.empty()) {
            throw std::invalid_argument("estimators must not be empty");
        }
    });
    rd.field(j, "protocol", [&](const auto& p) {
        rd.check_keys(p, {"c_alpha", "alpha_override", "delta_fail", "per_group_constant", "c_q", "tau_mode", "w_phase"},
                      "protocol");
        rd.field(p, "c_alpha", [&](const auto& v) { plan.protocol.c_alpha = v.template get<double>(); });
        rd.field(p, "alpha_override", [&](const auto& v) { plan.protocol.alpha_override = v.template get<double>(); });
        rd.field(p, "delta_fail", [&](const auto& v) { plan.protocol.delta_fail = v.template get<double>(); });
        rd.field(p, "per_group_constant",
                 [&](const auto& v) { plan.protocol.per_group_constant = v.template get<double>(); });
        rd.field(p, "c_q", [&](const auto& v) { plan.protocol.c_q = v.template get<double>(); });
        rd.field(p, "w_phase", [&](const auto& v) { plan.protocol.w_phase = v.template get<unsigned>(); });
        rd.field(p, "tau_mode", [&](const auto& v) {
            const auto s = v.template get<std::string>();
            if (s != "nominal" && s != "realized") {
                throw std::invalid_argument("tau_mode must be nominal or realized");
            }
            plan.protocol.tau_mode = s == "nominal" ? TauMode::Nominal : TauMode::Realized;
        });
    });
    rd.field(j, "grid", [&](const auto& g) {
        if (!g.is_array()) {
            throw std::invalid_argument("grid must be an array");
        }
        for (const auto& c : g) {
            rd.check_keys(c, {"n", "t", "epsilon", "gamma", "C", "C0", "sampling_mode", "kind", "case"}, "grid cell");
            Cell cell;
            rd.field(c, "n", [&](const auto& v) { cell.spec.n = v.template get<std::size_t>(); });
            rd.field(c, "t", [&](const auto& v) { cell.spec.t = v.template get<std::int64_t>(); });
            rd.field(c, "epsilon", [&](const auto& v) { cell.spec.epsilon = v.template get<double>(); });
            rd.field(c, "gamma", [&](const auto& v) { cell.spec.gamma = v.template get<double>(); });
            rd.field(c, "C", [&](const auto& v) { cell.spec.C = v.template get<double>(); });
            rd.field(c, "C0", [&](const auto& v) { cell.spec.C0 = v.template get<double>(); });
            rd.field(c, "sampling_mode", [&](const auto& v) {
                cell.spec.sampling_mode = sampling_mode_from_string(v.template get<std::string>());
            });
            rd.field(c, "kind", [&](const auto& v) { cell.kind = instance_kind_from_string(v.template get<std::string>()); });
            rd.field(c, "case", [&](const auto& v) {
                const auto s = v.template get<std::string>();
                if (s != "same" && s != "far") {
                    throw std::invalid_argument("case must be same or far");
                }
                cell.pair_case = s == "same" ? PairCase::Same : PairCase::Far;
            });
            cell.spec.seed = plan.seed;
            plan.grid.push_back(cell);
        }
    });
    rd.field(j, "certificates", [&](const auto& g) {
        for (const auto& c : g) {
            rd.check_keys(c, {"function", "epsilon", "n_over_k"}, "certificate request");
            CertificateRequest r;
            rd.field(c, "function", [&](const auto& v) { r.function = v.template get<std::string>(); });
            rd.field(c, "epsilon", [&](const auto& v) { r.epsilon = v.template get<double>(); });
            rd.field(c, "n_over_k", [&](const auto& v) { r.n_over_k = v.template get<std::size_t>(); });
            plan.certificates.push_back(r);
        }
    });
    rd.field(j, "assertions", [&](const auto& a) {
        rd.check_keys(a, {"min_wilson_lower", "slope_classical", "slope_quantum", "max_residual"}, "assertions");
        const auto range = [](const nlohmann::json& v) {
            const auto r = v.get<std::vector<double>>();
            if (r.size() != 2 || r[0] > r[1]) {
                throw std::invalid_argument("expected [low, high]");
            }
            return std::make_pair(r[0], r[1]);
        };
        rd.field(a, "min_wilson_lower", [&](const auto& v) { plan.assertions.min_wilson_lower = v.template get<double>(); });
        rd.field(a, "slope_classical", [&](const auto& v) { plan.assertions.slope_classical = range(v); });
        rd.field(a, "slope_quantum", [&](const auto& v) { plan.assertions.slope_quantum = range(v); });
        rd.field(a, "max_residual", [&](const auto& v) { plan.assertions.max_residual = v.template get<double>(); });
    });
    rd.field(j, "out", [&](const auto& v) { plan.out_dir = v.template get<std::string>(); });
    rd.field(j, "dump_trace", [&](const auto& v) { plan.dump_trace = v.template get<bool>(); });
    rd.field(j, "timing", [&](const auto& v) { plan.timing = v.template get<bool>(); });
    rd.field(j, "threads", [&](const auto& v) { plan.threads = v.template get<unsigned>(); });

    try {
        plan.validate();
    } catch (const PlanError& e) {
        const std::string msg = e.what();
        std::size_t line = 1;
        if (msg.find("trials") != std::string::npos) {
            line = std::max<std::size_t>(1, rd.line_of("trials"));
        } else if (msg.find("grid") != std::string::npos) {
            line = std::max<std::size_t>(1, rd.line_of("grid"));
        } else if (msg.find("certificate") != std::string::npos) {
            line = std::max<std::size_t>(1, rd.line_of("certificates"));
        }
        throw PlanError(msg, line);
    }
    return plan;
}

std::uint64_t trial_seed(std::uint64_t plan_seed, std::size_t cell, std::size_t trial) {
    auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    return mix(plan_seed ^ mix((static_cast<std::uint64_t>(cell) << 32) ^ static_cast<std::uint64_t>(trial)));
}

std::string csv_header() {
    return "seed,n,t,epsilon,gamma,mode,verdict,truth,delta_estimate,tau,bits,qubits,wall_ms";
}

std::string csv_row(const TrialRecord& r) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << r.seed << ',' << r.spec.n << ',' << r.spec.t << ',' << r.spec.epsilon << ',' << r.spec.gamma << ','
       << to_string(r.estimator) << ',' << to_string(r.verdict) << ',' << to_string(r.truth) << ','
       << r.delta_estimate << ',' << r.tau << ',' << r.bits << ',' << r.qubits << ',';
    os << std::setprecision(6) << r.wall_ms;
    return os.str();
}

namespace {

struct CellInstance {
    DiscreteDistribution p;
    DiscreteDistribution q;
    Decision truth;
};

CellInstance build_instance(const Cell& cell) {
    switch (cell.kind) {
        case InstanceKind::Hard: {
            auto [a, b] = make_hard_pair(cell.spec, cell.pair_case);
            return {a, b, cell.pair_case == PairCase::Same ? Decision::Same : Decision::EpsilonFar};
        }
        case InstanceKind::FarPair: {
            auto [a, b] = make_far_pair(cell.spec);
            if (cell.pair_case == PairCase::Same) {
                return {a, a, Decision::Same};
            }
            return {a, b, Decision::EpsilonFar};
        }
        case InstanceKind::Uniform: {
            const auto u = DiscreteDistribution::uniform(cell.spec.n);
            return {u, u, Decision::Same};
        }
        case InstanceKind::PointMass: {
            const auto pm = DiscreteDistribution::point_mass(cell.spec.n, 0);
            return {pm, pm, Decision::Same};
        }
    }
    throw std::logic_error("unhandled instance kind");
}

// Runs fn(job) for job in [0, jobs) on a pool; rethrows the first failure.
void parallel_for(std::size_t jobs, unsigned threads, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads ? threads : hw, std::max<std::size_t>(jobs, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs) {
                return;
            }
            try {
                fn(job);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(jobs);
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

struct Group {
    std::size_t cell = 0;
    EstimatorMode estimator = EstimatorMode::ClassicalAMS;
};

void run_protocol_cells(const ExperimentPlan& plan, PlanResult& result, bool keep_artifacts,
                        std::vector<nlohmann::json>* artifacts) {
    std::vector<CellInstance> instances;
    instances.reserve(plan.grid.size());
    for (const auto& c : plan.grid) {
        instances.push_back(build_instance(c));
    }
    std::vector<Group> groups;
    for (std::size_t c = 0; c < plan.grid.size(); ++c) {
        for (auto e : plan.estimators) {
            groups.push_back({c, e});
        }
    }
    const std::size_t jobs = groups.size() * plan.trials;
    result.trials.assign(jobs, TrialRecord{});
    if (artifacts) {
        artifacts->assign(jobs, nlohmann::json());
    }
    parallel_for(jobs, plan.threads, [&](std::size_t job) {
        const Group& g = groups[job / plan.trials];
        const std::size_t trial = job % plan.trials;
        const Cell& cell = plan.grid[g.cell];
        ProtocolConfig config = plan.protocol;
        config.spec = cell.spec;
        config.estimator_mode = g.estimator;
        config.with_traces = keep_artifacts;
        TrialRecord rec;
        rec.seed = trial_seed(plan.seed, job / plan.trials, trial);
        config.spec.seed = rec.seed;
        Rng rng(rec.seed);
        const auto start = std::chrono::steady_clock::now();
        const ProtocolRun run = run_protocol(instances[g.cell].p, instances[g.cell].q, config, rng);
        const auto stop = std::chrono::steady_clock::now();
        rec.cell = job / plan.trials;
        rec.spec = config.spec;
        rec.estimator = g.estimator;
        rec.verdict = run.verdict.decision;
        rec.truth = instances[g.cell].truth;
        rec.delta_estimate = run.verdict.delta_estimate;
        rec.tau = run.verdict.tau;
        rec.alpha = run.alpha;
        rec.bits = run.ledger.classical_bits();
        rec.qubits = run.ledger.qubits();
        rec.wall_ms = plan.timing ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
        result.trials[job] = rec;
        if (artifacts) {
            (*artifacts)[job] = run_artifact(run, config, keep_artifacts);
        }
    });
}

nlohmann::json group_json(const ExperimentPlan& plan, std::size_t group) {
    const Cell& cell = plan.grid[group / plan.estimators.size()];
    return {{"cell", group / plan.estimators.size()},
            {"kind", to_string(cell.kind)},
            {"case", cell.pair_case == PairCase::Same ? "same" : "far"},
            {"estimator", to_string(plan.estimators[group % plan.estimators.size()])},
            {"n", cell.spec.n},
            {"t", cell.spec.t},
            {"epsilon", cell.spec.epsilon}};
}

void summarize_accuracy(const ExperimentPlan& plan, PlanResult& result) {
    nlohmann::json cells = nlohmann::json::array();
    const std::size_t groups = plan.grid.size() * plan.estimators.size();
    for (std::size_t g = 0; g < groups; ++g) {
        std::uint64_t ok = 0;
        long double bits = 0.0L;
        long double qubits = 0.0L;
        for (std::size_t t = 0; t < plan.trials; ++t) {
            const auto& r = result.trials[g * plan.trials + t];
            ok += r.verdict == r.truth ? 1 : 0;
            bits += r.bits;
            qubits += r.qubits;
        }
        const WilsonInterval w = wilson_interval(ok, plan.trials);
        nlohmann::json j = group_json(plan, g);
        j["trials"] = plan.trials;
        j["successes"] = ok;
        j["success_rate"] = w.rate;
        j["wilson_lower"] = w.lower;
        j["wilson_upper"] = w.upper;
        j["alpha"] = result.trials[g * plan.trials].alpha;
        j["mean_bits"] = static_cast<double>(bits / plan.trials);
        j["mean_qubits"] = static_cast<double>(qubits / plan.trials);
        if (plan.assertions.min_wilson_lower) {
            const bool pass = w.lower >= *plan.assertions.min_wilson_lower;
            j["pass"] = pass;
            result.passed = result.passed && pass;
        }
        cells.push_back(std::move(j));
    }
    result.summary["cells"] = std::move(cells);
}

void summarize_scaling(const ExperimentPlan& plan, PlanResult& result) {
    nlohmann::json fits = nlohmann::json::object();
    for (std::size_t e = 0; e < plan.estimators.size(); ++e) {
        const EstimatorMode mode = plan.estimators[e];
        std::vector<double> xs;
        std::vector<double> ys;
        nlohmann::json points = nlohmann::json::array();
        for (std::size_t c = 0; c < plan.grid.size(); ++c) {
            const std::size_t g = c * plan.estimators.size() + e;
            long double cost = 0.0L;
            for (std::size_t t = 0; t < plan.trials; ++t) {
                const auto& r = result.trials[g * plan.trials + t];
                cost += mode == EstimatorMode::ClassicalAMS ? r.bits : r.qubits;
            }
            const double mean = static_cast<double>(cost / plan.trials);
            const double inv_alpha = 1.0 / result.trials[g * plan.trials].alpha;
            xs.push_back(std::log2(inv_alpha));
            ys.push_back(std::log2(mean));
            points.push_back({{"t", plan.grid[c].spec.t}, {"inv_alpha", inv_alpha}, {"mean_cost", mean}});
        }
        const LinearFit fit = ols_fit(xs, ys);
        const bool classical = mode == EstimatorMode::ClassicalAMS;
        const std::string key = classical ? "classical" : "quantum";
        fits[to_string(mode)] = {{"points", points}, {"slope", fit.slope}, {"slope_stderr", fit.slope_stderr}};
        if (!result.summary.contains("slope_" + key)) {
            result.summary["slope_" + key] = fit.slope;
            result.summary["slope_" + key + "_stderr"] = fit.slope_stderr;
            const auto& range = classical ? plan.assertions.slope_classical : plan.assertions.slope_quantum;
            if (range) {
                const bool pass = fit.slope >= range->first && fit.slope <= range->second;
                result.summary["slope_" + key + "_pass"] = pass;
                result.passed = result.passed && pass;
            }
        }
    }
    result.summary["fits"] = std::move(fits);
}

}  // namespace

PlanResult execute_plan(const ExperimentPlan& plan) {
    plan.validate();
    PlanResult result;
    result.summary = {{"mode", to_string(plan.mode)}, {"seed", plan.seed}, {"trials", plan.trials}};
    switch (plan.mode) {
        case PlanMode::Accuracy:
        case PlanMode::Scaling: {
            std::vector<nlohmann::json> artifacts;
            run_protocol_cells(plan, result, plan.dump_trace, plan.dump_trace ? &artifacts : nullptr);
            if (plan.mode == PlanMode::Accuracy) {
                summarize_accuracy(plan, result);
            } else {
                summarize_scaling(plan, result);
            }
            for (std::size_t i = 0; i < artifacts.size(); ++i) {
                result.files.emplace_back("traces/run_" + std::to_string(i) + ".json", std::move(artifacts[i]));
            }
            break;
        }
        case PlanMode::TraceAudit: {
            std::vector<nlohmann::json> artifacts;
            run_protocol_cells(plan, result, true, &artifacts);
            std::uint64_t calls = 0;
            std::uint64_t mismatches = 0;
            for (std::size_t i = 0; i < artifacts.size(); ++i) {
                for (const auto& e : artifacts[i]["ledger"]) {
                    if (e["classical"].get<bool>()) {
                        continue;
                    }
                    ++calls;
                    const std::uint64_t width = e["width"].get<std::uint64_t>();
                    const bool trace_ok = e.contains("trace") && e["trace"]["call_cost_qubits"].get<std::uint64_t>() == width &&
                                          e["trace"]["steps"].size() == 5;
                    if (!trace_ok) {
                        ++mismatches;
                    }
                }
                result.files.emplace_back("traces/run_" + std::to_string(i) + ".json", std::move(artifacts[i]));
            }
            result.summary["oracle_calls_checked"] = calls;
            result.summary["trace_mismatches"] = mismatches;
            result.passed = mismatches == 0;
            summarize_accuracy(plan, result);
            break;
        }
        case PlanMode::Certificate: {
            nlohmann::json certs = nlohmann::json::array();
            const double limit = plan.assertions.max_residual.value_or(1e-9);
            for (const auto& req : plan.certificates) {
                const Certificate c = emit_certificate(req.function, req.epsilon, req.n_over_k);
                const double worst = std::max({c.residuals.l1, c.residuals.fourier, c.residuals.approximation,
                                               c.residuals.spectral, c.residuals.pipeline});
                const bool pass = worst <= limit && (!c.has_witness || c.margin > 1e-9);
                result.passed = result.passed && pass;
                nlohmann::json j = c;
                certs.push_back({{"function", c.function},
                                 {"degree", c.degree},
                                 {"bound_qubits", c.bound_qubits},
                                 {"max_residual", worst},
                                 {"pass", pass}});
                result.files.emplace_back("certificate_" + c.function + ".json", std::move(j));
            }
            result.summary["certificates"] = std::move(certs);
            break;
        }
        case PlanMode::ReductionCheck: {
            std::uint64_t monotone_checked = 0;
            std::uint64_t monotone_failed = 0;
            for (std::size_t n : {4u, 8u}) {
                for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << n); ++xi) {
                    for (std::uint64_t yi = 0; yi < (std::uint64_t{1} << n); ++yi) {
                        ++monotone_checked;
                        if (!check_monotone_identity(BitPair(index_to_bits(xi, n), index_to_bits(yi, n)))) {
                            ++monotone_failed;
                        }
                    }
                }
            }
            std::uint64_t padding_checked = 0;
            std::uint64_t padding_failed = 0;
            for (std::size_t n : {4u, 8u}) {
                for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << n); ++xi) {
                    const BitString x = index_to_bits(xi, n);
                    if (weight(x) != n / 2) {
                        continue;
                    }
                    for (std::uint64_t yi = 0; yi < (std::uint64_t{1} << n); ++yi) {
                        const BitString y = index_to_bits(yi, n);
                        if (weight(y) != n / 2) {
                            continue;
                        }
                        const BitPair small(x, y);
                        const BitPair big = pad_small_to_promised(small);
                        ++padding_checked;
                        if (big.common() != n * small.common() || big.weight_x() != big.n() / 2) {
                            ++padding_failed;
                        }
                    }
                }
            }
            const EmbeddingReport emb = check_G_embeddings(2);
            result.summary["monotone"] = {{"checked", monotone_checked}, {"failed", monotone_failed}};
            result.summary["padding"] = {{"checked", padding_checked}, {"failed", padding_failed}};
            result.summary["embeddings"] = {{"g_pairs", emb.g_pairs_checked},
                                            {"g_mismatches", emb.g_mismatches},
                                            {"pattern_cells", emb.pattern_cells_checked},
                                            {"pattern_mismatches", emb.pattern_mismatches}};
            result.passed = monotone_failed == 0 && padding_failed == 0 && emb.ok();
            break;
        }
    }
    result.summary["passed"] = result.passed;
    return result;
}

int run_plan(const ExperimentPlan& plan) {
    const PlanResult result = execute_plan(plan);
    namespace fs = std::filesystem;
    const fs::path out(plan.out_dir);
    fs::create_directories(out);
    {
        std::ofstream csv(out / "results.csv");
        csv << csv_header() << '\n';
        for (const auto& r : result.trials) {
            csv << csv_row(r) << '\n';
        }
    }
    {
        std::ofstream js(out / "summary.json");
        js << result.summary.dump(2) << '\n';
    }
    for (const auto& [name, content] : result.files) {
        const fs::path p = out / name;
        fs::create_directories(p.parent_path());
        std::ofstream f(p);
        f << content.dump(2) << '\n';
    }
    return result.passed ? 0 : 1;
}

}  // namespace closeness
