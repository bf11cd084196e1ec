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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace closeness {

enum class Direction { AliceToBob, BobToAlice, Local };

std::string to_string(Direction d);

/// One step of the distributed oracle: which registers travel, and where.
struct TraceStep {
    int step = 0;
    Direction direction = Direction::Local;
    std::string action;
    std::vector<std::string> registers;
    std::uint64_t qubits = 0;
};

/// The five messages of one oracle call. Steps 1, 2, 4 and 5 move register I
/// and steps 2 and 4 move register A, so a call costs 4 w_I + 2 w_A qubits.
struct OracleTrace {
    std::array<TraceStep, 5> steps;
    std::uint64_t call_cost_qubits = 0;
    bool inverse = false;

    static OracleTrace for_widths(unsigned w_index, unsigned w_arith, bool inverse);
};

struct LedgerEntry {
    std::string step_label;
    Direction direction = Direction::AliceToBob;
    std::string payload_kind;
    /// Width of one message in bits (classical) or qubits (quantum).
    std::uint64_t width = 0;
    bool classical = true;
    /// Number of identical messages this entry stands for.
    std::uint64_t repeat = 1;
    std::optional<OracleTrace> trace;

    std::uint64_t cost() const { return width * repeat; }
};

/// Append-only record of every message exchanged during one protocol run.
class CommLedger {
   public:
    void append(LedgerEntry entry);

    const std::vector<LedgerEntry>& entries() const { return entries_; }
    std::uint64_t classical_bits() const { return classical_bits_; }
    std::uint64_t qubits() const { return qubits_; }

    /// Recomputes both totals from the entries.
    bool totals_consistent() const;

   private:
    std::vector<LedgerEntry> entries_;
    std::uint64_t classical_bits_ = 0;
    std::uint64_t qubits_ = 0;
};

void to_json(nlohmann::json& j, const TraceStep& s);
void to_json(nlohmann::json& j, const OracleTrace& t);
/// Entries without traces; traces are emitted only on request.
nlohmann::json ledger_to_json(const CommLedger& ledger, bool with_traces);

}  // namespace closeness
