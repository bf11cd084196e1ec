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

// Experiment runner: accuracy studies, scaling sweeps, certificates,
// trace audits and reduction checks.
//
// Exit codes: 0 all assertions pass, 1 an assertion failed, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "closeness/experiment.hpp"

namespace {

constexpr int kUsageError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw closeness::PlanError("cannot open config file '" + path + "'", 0);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closeness_lab: two-party distribution closeness testing experiments"};
    std::string mode;
    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::string out_dir;
    bool dump_trace = false;
    bool timing = false;
    std::string estimator;
    unsigned threads = 0;
    std::string function;
    double epsilon = 1.0 / 3.0;
    std::size_t n_over_k = 2;

    app.add_option("--mode", mode, "accuracy|scaling|certificate|trace-audit|reduction-check")
        ->check(CLI::IsMember({"accuracy", "scaling", "certificate", "trace-audit", "reduction-check"}));
    app.add_option("--config", config_path, "JSON experiment plan")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "Plan seed");
    auto* trials_opt = app.add_option("--trials", trials, "Trials per cell")->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--dump-trace", dump_trace, "Write the 5-step oracle trace of every call");
    app.add_option("--estimator", estimator, "classical|q-accounting|q-statevector")
        ->check(CLI::IsMember({"classical", "q-accounting", "q-statevector"}));
    app.add_flag("--timing", timing, "Record wall_ms (makes output non-deterministic)");
    app.add_option("--threads", threads, "Worker threads (0 = hardware)");
    app.add_option("--function", function, "Certificate function: PMAJ_k, PARITY_k, MAJ_k");
    auto* eps_opt = app.add_option("--epsilon", epsilon, "Certificate approximation error");
    app.add_option("--n-over-k", n_over_k, "Certificate pattern ratio n/k")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    closeness::ExperimentPlan plan;
    try {
        if (!config_path.empty()) {
            plan = closeness::parse_plan(read_file(config_path));
        } else if (mode.empty()) {
            throw closeness::PlanError("either --config or --mode is required", 0);
        }
        if (!mode.empty()) {
            plan.mode = closeness::plan_mode_from_string(mode);
        }
        if (*seed_opt) {
            plan.seed = seed;
            for (auto& c : plan.grid) {
                c.spec.seed = seed;
            }
        }
        if (*trials_opt) {
            plan.trials = trials;
        }
        if (!out_dir.empty()) {
            plan.out_dir = out_dir;
        }
        if (!estimator.empty()) {
            plan.estimators = {closeness::estimator_mode_from_string(estimator)};
        }
        plan.dump_trace = plan.dump_trace || dump_trace;
        plan.timing = plan.timing || timing;
        if (threads > 0) {
            plan.threads = threads;
        }
        if (!function.empty()) {
            plan.certificates = {{function, epsilon, n_over_k}};
        } else if (*eps_opt) {
            for (auto& c : plan.certificates) {
                c.epsilon = epsilon;
            }
        }
        plan.validate();
    } catch (const closeness::PlanError& e) {
        std::cerr << "closeness_lab: invalid plan: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "closeness_lab: invalid plan: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        const int rc = closeness::run_plan(plan);
        std::cout << (rc == 0 ? "PASS" : "FAIL") << ": " << closeness::to_string(plan.mode) << " -> "
                  << plan.out_dir << '\n';
        return rc;
    } catch (const std::invalid_argument& e) {
        std::cerr << "closeness_lab: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::length_error& e) {
        std::cerr << "closeness_lab: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "closeness_lab: " << e.what() << '\n';
        return 1;
    }
}
