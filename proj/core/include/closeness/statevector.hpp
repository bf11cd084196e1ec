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

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace closeness {

/// Contiguous block of qubits inside a basis index; qubit `offset` is the
/// least significant bit of the register value.
struct QubitRange {
    unsigned offset = 0;
    unsigned width = 0;

    std::uint64_t mask() const { return ((std::uint64_t{1} << width) - 1) << offset; }
    std::uint64_t read(std::uint64_t basis) const { return (basis >> offset) & ((std::uint64_t{1} << width) - 1); }
    std::uint64_t write(std::uint64_t basis, std::uint64_t value) const {
        return (basis & ~mask()) | ((value << offset) & mask());
    }
};

/// Dense state vector over at most kMaxQubits qubits.
///
/// Single writer. When `check_norm_after_gates` is set every gate verifies
/// that the l2 norm is still 1 within kNormTolerance.
class StatevectorSim {
   public:
    using Amplitude = std::complex<double>;
    static constexpr unsigned kMaxQubits = 24;
    static constexpr double kNormTolerance = 1e-10;

    explicit StatevectorSim(unsigned num_qubits);

    unsigned num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<Amplitude> amplitudes() { return amps_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }

    void set_basis_state(std::uint64_t basis);

    void hadamard(unsigned qubit);
    void controlled_phase(unsigned control, unsigned target, double theta);
    void swap(unsigned a, unsigned b);
    /// Multiplies every amplitude by -1.
    void negate();
    /// Flips the sign of basis states where `predicate(basis)` holds.
    void reflect(const std::function<bool(std::uint64_t)>& predicate);
    /// R_y(theta(rest)) on `target`, where rest is the basis index with the
    /// target bit cleared: |0> -> cos(theta/2)|0> + sin(theta/2)|1>.
    void conditional_ry(unsigned target, const std::function<double(std::uint64_t)>& theta);
    /// Applies the basis permutation b -> map(b); throws if map is not a bijection.
    void permute(const std::function<std::uint64_t(std::uint64_t)>& map);

    double norm() const;
    /// Throws std::logic_error when |norm - 1| > kNormTolerance.
    void check_norm() const;

    /// Outcome probabilities of measuring `range` in the computational basis.
    std::vector<double> marginal(QubitRange range) const;

    bool check_norm_after_gates = true;

   private:
    void after_gate() const;

    unsigned num_qubits_;
    std::vector<Amplitude> amps_;
    std::vector<Amplitude> scratch_;
};

/// Inverse quantum Fourier transform on `range`, gate by gate
/// (swaps, then controlled phases and Hadamards), mapping
/// (1/sqrt K) sum_m e^{2 pi i k m / K} |m> to |k>.
void inverse_qft(StatevectorSim& sim, QubitRange range);

}  // namespace closeness
