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

#include "closeness/quantum_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace closeness {

namespace {

SparseVector checked_sparse(const HashFamily& family, std::span<const std::int64_t> values) {
    if (values.size() != family.n()) {
        throw std::invalid_argument("party input length differs from the family domain");
    }
    return SparseVector::from_dense(values);
}

}  // namespace

PartyInput::PartyInput(const HashFamily& family, std::span<const std::int64_t> values)
    : n_(values.size()),
      modulus_(family.modulus()),
      l1_(checked_sparse(family, values).l1()),
      packed_(family, checked_sparse(family, values)) {}

unsigned bits_for(std::uint64_t v) { return std::max(1u, static_cast<unsigned>(std::bit_width(v))); }

RegisterLayout RegisterLayout::for_instance(const HashFamily& family, std::int64_t t, unsigned w_phase) {
    if (t < 1) {
        throw std::invalid_argument("register layout needs t >= 1");
    }
    const auto tt = static_cast<std::uint64_t>(t);
    RegisterLayout r;
    r.w_I = family.index_width();
    r.w_A = bits_for(2 * tt);
    r.w_Y = bits_for(4 * tt * tt);
    r.w_phase = w_phase;
    return r;
}

std::int64_t effective_t(const Alice& alice, const Bob& bob) {
    return std::max<std::int64_t>({1, alice.l1(), bob.l1()});
}

namespace {

void check_parties(const HashFamily& family, const Alice& alice, const Bob& bob) {
    if (!alice.bound_to(family) || !bob.bound_to(family)) {
        throw std::invalid_argument("party inputs are bound to a different hash family");
    }
}

std::uint64_t f_value(const HashFamily& family, const Alice& alice, const Bob& bob, std::uint64_t i,
                      const RegisterLayout& layout) {
    MirrorRegisters r;
    r.I = i;
    oracle_apply_mirror(r, family, alice, bob, OracleDirection::Forward, layout, nullptr);
    return r.Y;
}

}  // namespace

LedgerEntry oracle_ledger_entry(const RegisterLayout& layout, OracleDirection direction, bool with_trace) {
    const bool inverse = direction == OracleDirection::Inverse;
    LedgerEntry e;
    e.step_label = inverse ? "O_f^-1" : "O_f";
    e.direction = Direction::BobToAlice;
    e.payload_kind = "oracle call: I x4, A x2";
    e.width = layout.call_cost();
    e.classical = false;
    if (with_trace) {
        e.trace = OracleTrace::for_widths(layout.w_I, layout.w_A, inverse);
    }
    return e;
}

void oracle_apply_mirror(MirrorRegisters& regs, const HashFamily& family, const Alice& alice, const Bob& bob,
                         OracleDirection direction, const RegisterLayout& layout, CommLedger* ledger) {
    family.check_index(regs.I);
    // Step 1: Bob writes sigma_b(I) into B and sends I.
    regs.B += bob.sigma(regs.I);
    // Step 2: Alice writes sigma_a(I) into A and sends A, I.
    regs.A += alice.sigma(regs.I);
    // Step 3: Bob updates Y locally.
    const std::int64_t diff = regs.A - regs.B;
    const std::uint64_t f = static_cast<std::uint64_t>(diff * diff);
    const std::uint64_t mod_mask = (std::uint64_t{1} << layout.w_Y) - 1;
    regs.Y = (direction == OracleDirection::Forward ? regs.Y + f : regs.Y - f) & mod_mask;
    // Step 4: Bob erases B and returns A, I.
    regs.B -= bob.sigma(regs.I);
    // Step 5: Alice erases A and returns I.
    regs.A -= alice.sigma(regs.I);
    if (regs.A != 0 || regs.B != 0) {
        throw std::logic_error("oracle uncomputation left A or B non-zero");
    }
    if (ledger != nullptr) {
        ledger->append(oracle_ledger_entry(layout, direction, false));
    }
}

void oracle_apply(StatevectorSim& state, const OracleRegisters& regs, const HashFamily& family, const Alice& alice,
                  const Bob& bob, OracleDirection direction, const RegisterLayout& layout, CommLedger& ledger) {
    check_parties(family, alice, bob);
    if (regs.index.width != layout.w_I || regs.accumulator.width != layout.w_Y) {
        throw std::invalid_argument("oracle registers do not match the layout");
    }
    std::vector<std::uint64_t> f(std::size_t{1} << layout.w_I);
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        f[i] = f_value(family, alice, bob, i, layout);
    }
    const std::uint64_t mod_mask = (std::uint64_t{1} << layout.w_Y) - 1;
    const bool forward = direction == OracleDirection::Forward;
    state.permute([&](std::uint64_t b) {
        const std::uint64_t y = regs.accumulator.read(b);
        const std::uint64_t fi = f[regs.index.read(b)];
        return regs.accumulator.write(b, (forward ? y + fi : y - fi) & mod_mask);
    });
    ledger.append(oracle_ledger_entry(layout, direction, true));
}

std::uint64_t accounting_calls(double alpha, double delta_fail, double c_q) {
    if (!(alpha > 0.0 && alpha <= 1.0) || !(delta_fail > 0.0 && delta_fail < 1.0) || !(c_q > 0.0)) {
        throw std::invalid_argument("accounting_calls: need alpha in (0,1], delta in (0,1), c_q > 0");
    }
    return static_cast<std::uint64_t>(std::ceil(c_q / alpha * std::log2(3.0 / delta_fail) - 1e-9));
}

QuantumEstimate montanaro_estimate_accounting(const HashFamily& family, const Alice& alice, const Bob& bob,
                                              double alpha, double delta_fail, CommLedger& ledger, Rng& rng,
                                              const AccountingOptions& options) {
    check_parties(family, alice, bob);
    const RegisterLayout layout = RegisterLayout::for_instance(family, effective_t(alice, bob));
    QuantumEstimate out;
    out.oracle_calls = accounting_calls(alpha, delta_fail, options.c_q);
    for (std::uint64_t c = 0; c < out.oracle_calls; ++c) {
        MirrorRegisters regs;
        regs.I = family.draw_index(rng);
        const auto dir = (c % 2 == 0) ? OracleDirection::Forward : OracleDirection::Inverse;
        oracle_apply_mirror(regs, family, alice, bob, dir, layout, nullptr);
        ledger.append(oracle_ledger_entry(layout, dir, options.with_traces));
    }
    const auto plan = MedianOfMeansPlan::for_accuracy(alpha, delta_fail, options.per_group_constant);
    out.estimate = median_of_means(plan, [&](std::size_t) {
        const std::uint64_t i = family.draw_index(rng);
        const std::int64_t d = alice.sigma(i) - bob.sigma(i);
        return static_cast<double>(d * d);
    });
    out.internal_draws = plan.draws();
    return out;
}

QuantumEstimate montanaro_estimate_accounting(const HashFamily& family, std::span<const std::int64_t> l,
                                              double alpha, double delta_fail, CommLedger& ledger, Rng& rng,
                                              const AccountingOptions& options) {
    const std::vector<std::int64_t> zero(l.size(), 0);
    return montanaro_estimate_accounting(family, Alice(family, l), Bob(family, zero), alpha, delta_fail, ledger, rng, options);
}

double AmplitudeEstimate::estimate_for(std::uint64_t m) const {
    const double s = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(distribution.size()));
    return f_max * s * s;
}

AmplitudeEstimate amplitude_estimation_statevector(const HashFamily& family, const Alice& alice, const Bob& bob,
                                                   unsigned w_phase, CommLedger& ledger) {
    check_parties(family, alice, bob);
    if (w_phase == 0) {
        throw std::invalid_argument("amplitude estimation needs at least one phase qubit");
    }
    const std::int64_t t = effective_t(alice, bob);
    const RegisterLayout layout = RegisterLayout::for_instance(family, t, w_phase);
    const unsigned s = layout.w_I + layout.w_Y + 1;
    const unsigned total = s + w_phase;
    if (total > StatevectorSim::kMaxQubits) {
        throw std::length_error("statevector mode needs " + std::to_string(total) + " qubits, guard is " +
                                std::to_string(StatevectorSim::kMaxQubits) + "; use accounting mode");
    }

    AmplitudeEstimate out;
    out.w_phase = w_phase;
    out.total_qubits = total;
    out.f_max = 4.0 * static_cast<double>(t) * static_cast<double>(t);

    const OracleRegisters regs{{0, layout.w_I}, {layout.w_I, layout.w_Y}};
    const unsigned anc = s - 1;
    const double f_max = out.f_max;
    auto theta = [&](std::uint64_t b) {
        const double a = std::min(1.0, static_cast<double>(regs.accumulator.read(b)) / f_max);
        return 2.0 * std::asin(std::sqrt(a));
    };
    auto neg_theta = [&](std::uint64_t b) { return -theta(b); };

    StatevectorSim sys(s);
    auto apply_a = [&] {
        for (unsigned q = 0; q < layout.w_I; ++q) {
            sys.hadamard(q);
        }
        oracle_apply(sys, regs, family, alice, bob, OracleDirection::Forward, layout, ledger);
        sys.conditional_ry(anc, theta);
    };
    auto apply_a_inv = [&] {
        sys.conditional_ry(anc, neg_theta);
        oracle_apply(sys, regs, family, alice, bob, OracleDirection::Inverse, layout, ledger);
        for (unsigned q = 0; q < layout.w_I; ++q) {
            sys.hadamard(q);
        }
    };
    const std::uint64_t anc_bit = std::uint64_t{1} << anc;
    auto apply_q = [&] {
        sys.reflect([&](std::uint64_t b) { return (b & anc_bit) != 0; });
        apply_a_inv();
        sys.reflect([](std::uint64_t b) { return b == 0; });
        apply_a();
        sys.negate();
    };

    const std::uint64_t K = std::uint64_t{1} << w_phase;
    StatevectorSim full(total);
    auto amps = full.amplitudes();
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));
    apply_a();
    for (std::uint64_t k = 0; k < K; ++k) {
        if (k > 0) {
            apply_q();
        }
        const auto src = sys.amplitudes();
        for (std::uint64_t b = 0; b < src.size(); ++b) {
            amps[(k << s) | b] = src[b] * scale;
        }
    }
    full.check_norm();
    const QubitRange phase{s, w_phase};
    inverse_qft(full, phase);
    out.distribution = full.marginal(phase);
    out.k_hat = static_cast<std::uint64_t>(
        std::max_element(out.distribution.begin(), out.distribution.end()) - out.distribution.begin());
    out.estimate = out.estimate_for(out.k_hat);
    out.oracle_calls = 2 * K - 1;
    return out;
}

AmplitudeEstimate amplitude_estimation_statevector(const HashFamily& family, std::span<const std::int64_t> l,
                                                   unsigned w_phase, CommLedger& ledger) {
    const std::vector<std::int64_t> zero(l.size(), 0);
    return amplitude_estimation_statevector(family, Alice(family, l), Bob(family, zero), w_phase, ledger);
}

double amplitude_estimation_error_bound(double a, double f_max, unsigned w_phase) {
    const double K = std::ldexp(1.0, static_cast<int>(w_phase));
    return f_max * (2.0 * std::numbers::pi * std::sqrt(std::max(0.0, a)) / K + std::numbers::pi * std::numbers::pi / (K * K));
}

unsigned default_phase_width(double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("alpha must be positive");
    }
    return static_cast<unsigned>(std::max(0.0, std::ceil(std::log2(1.0 / alpha) - 1e-12))) + 3;
}

Calibration calibrate_cq(std::span<const MicroInstance> instances, unsigned max_w_phase) {
    if (instances.empty()) {
        throw std::invalid_argument("calibrate_cq: empty instance set");
    }
    Calibration cal;
    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const MicroInstance& inst = instances[idx];
        if (inst.x.size() != inst.y.size()) {
            throw std::invalid_argument("calibrate_cq: x and y lengths differ");
        }
        const HashFamily family = HashFamily::build(inst.x.size());
        const Alice alice(family, inst.x);
        const Bob bob(family, inst.y);
        double target = 0.0;
        for (std::size_t j = 0; j < inst.x.size(); ++j) {
            const double d = static_cast<double>(inst.x[j] - inst.y[j]);
            target += d * d;
        }
        bool found = false;
        for (unsigned w = 1; w <= max_w_phase && !found; ++w) {
            CommLedger scratch;
            const AmplitudeEstimate ae = amplitude_estimation_statevector(family, alice, bob, w, scratch);
            double mass = 0.0;
            for (std::uint64_t m = 0; m < ae.distribution.size(); ++m) {
                if (std::abs(ae.estimate_for(m) - target) <= inst.alpha * target + 1e-9) {
                    mass += ae.distribution[m];
                }
            }
            if (mass >= 1.0 - inst.delta_fail - 1e-12) {
                CalibrationPoint p;
                p.w_phase = w;
                p.calls = ae.oracle_calls;
                p.success_mass = mass;
                p.c_q = static_cast<double>(p.calls) * inst.alpha / std::log2(3.0 / inst.delta_fail);
                cal.c_q = std::max(cal.c_q, p.c_q);
                cal.points.push_back(p);
                found = true;
            }
        }
        if (!found) {
            throw std::runtime_error("calibrate_cq: instance " + std::to_string(idx) + " needs more than " +
                                     std::to_string(max_w_phase) + " phase qubits");
        }
    }
    return cal;
}

void to_json(nlohmann::json& j, const RegisterLayout& layout) {
    j = {{"w_I", layout.w_I},
         {"w_A", layout.w_A},
         {"w_Y", layout.w_Y},
         {"w_phase", layout.w_phase},
         {"call_cost_qubits", layout.call_cost()}};
}

void to_json(nlohmann::json& j, const Calibration& c) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : c.points) {
        pts.push_back({{"w_phase", p.w_phase}, {"calls", p.calls}, {"success_mass", p.success_mass}, {"c_q", p.c_q}});
    }
    j = {{"c_q", c.c_q}, {"points", std::move(pts)}};
}

}  // namespace closeness
