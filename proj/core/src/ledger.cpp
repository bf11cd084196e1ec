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

#include "closeness/ledger.hpp"

#include <stdexcept>

namespace closeness {

std::string to_string(Direction d) {
    switch (d) {
        case Direction::AliceToBob:
            return "alice->bob";
        case Direction::BobToAlice:
            return "bob->alice";
        case Direction::Local:
            return "local";
    }
    return "?";
}

OracleTrace OracleTrace::for_widths(unsigned w_index, unsigned w_arith, bool inverse) {
    OracleTrace t;
    t.inverse = inverse;
    t.steps[0] = {1, Direction::BobToAlice, "bob computes sigma_b(i) into B, sends I", {"I"}, w_index};
    t.steps[1] = {2, Direction::AliceToBob, "alice computes sigma_a(i) into A, sends A and I", {"A", "I"},
                  std::uint64_t{w_arith} + w_index};
    t.steps[2] = {3, Direction::Local,
                  inverse ? "bob subtracts (sigma_a - sigma_b)^2 from Y" : "bob adds (sigma_a - sigma_b)^2 to Y",
                  {},
                  0};
    t.steps[3] = {4, Direction::BobToAlice, "bob erases B, sends A and I", {"A", "I"},
                  std::uint64_t{w_arith} + w_index};
    t.steps[4] = {5, Direction::AliceToBob, "alice erases A, sends I", {"I"}, w_index};
    for (const auto& s : t.steps) {
        t.call_cost_qubits += s.qubits;
    }
    return t;
}

void CommLedger::append(LedgerEntry entry) {
    if (entry.repeat == 0) {
        throw std::invalid_argument("ledger entry must stand for at least one message");
    }
    (entry.classical ? classical_bits_ : qubits_) += entry.cost();
    entries_.push_back(std::move(entry));
}

bool CommLedger::totals_consistent() const {
    std::uint64_t bits = 0;
    std::uint64_t qubits = 0;
    for (const auto& e : entries_) {
        (e.classical ? bits : qubits) += e.cost();
    }
    return bits == classical_bits_ && qubits == qubits_;
}

void to_json(nlohmann::json& j, const TraceStep& s) {
    j = {{"step", s.step},
         {"direction", to_string(s.direction)},
         {"action", s.action},
         {"registers", s.registers},
         {"qubits", s.qubits}};
}

void to_json(nlohmann::json& j, const OracleTrace& t) {
    j = {{"inverse", t.inverse}, {"call_cost_qubits", t.call_cost_qubits}, {"steps", t.steps}};
}

nlohmann::json ledger_to_json(const CommLedger& ledger, bool with_traces) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : ledger.entries()) {
        nlohmann::json je = {{"step_label", e.step_label},
                             {"direction", to_string(e.direction)},
                             {"payload_kind", e.payload_kind},
                             {"width", e.width},
                             {"classical", e.classical},
                             {"repeat", e.repeat}};
        if (with_traces && e.trace) {
            je["trace"] = *e.trace;
        }
        entries.push_back(std::move(je));
    }
    return {{"entries", std::move(entries)},
            {"totals", {{"classical_bits", ledger.classical_bits()}, {"qubits", ledger.qubits()}}}};
}

}  // namespace closeness
