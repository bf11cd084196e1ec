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

#include "closeness/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace closeness {

StatevectorSim::StatevectorSim(unsigned num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw std::length_error("StatevectorSim: " + std::to_string(num_qubits) + " qubits exceeds the guard of " +
                                std::to_string(kMaxQubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

void StatevectorSim::set_basis_state(std::uint64_t basis) {
    if (basis >= amps_.size()) {
        throw std::out_of_range("basis state outside state space");
    }
    std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
    amps_[basis] = 1.0;
}

void StatevectorSim::after_gate() const {
    if (check_norm_after_gates) {
        check_norm();
    }
}

void StatevectorSim::hadamard(unsigned qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    const double s = std::numbers::sqrt2 / 2.0;
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        if (b & bit) {
            continue;
        }
        const Amplitude a0 = amps_[b];
        const Amplitude a1 = amps_[b | bit];
        amps_[b] = s * (a0 + a1);
        amps_[b | bit] = s * (a0 - a1);
    }
    after_gate();
}

void StatevectorSim::controlled_phase(unsigned control, unsigned target, double theta) {
    const std::size_t both = (std::size_t{1} << control) | (std::size_t{1} << target);
    const Amplitude phase = std::polar(1.0, theta);
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        if ((b & both) == both) {
            amps_[b] *= phase;
        }
    }
    after_gate();
}

void StatevectorSim::swap(unsigned a, unsigned b) {
    if (a == b) {
        return;
    }
    const std::size_t ba = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    for (std::size_t x = 0; x < amps_.size(); ++x) {
        if ((x & ba) && !(x & bb)) {
            std::swap(amps_[x], amps_[(x & ~ba) | bb]);
        }
    }
    after_gate();
}

void StatevectorSim::negate() {
    for (auto& a : amps_) {
        a = -a;
    }
    after_gate();
}

void StatevectorSim::reflect(const std::function<bool(std::uint64_t)>& predicate) {
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        if (predicate(b)) {
            amps_[b] = -amps_[b];
        }
    }
    after_gate();
}

void StatevectorSim::conditional_ry(unsigned target, const std::function<double(std::uint64_t)>& theta) {
    const std::size_t bit = std::size_t{1} << target;
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        if (b & bit) {
            continue;
        }
        const double half = 0.5 * theta(b);
        const double c = std::cos(half);
        const double s = std::sin(half);
        const Amplitude a0 = amps_[b];
        const Amplitude a1 = amps_[b | bit];
        amps_[b] = c * a0 - s * a1;
        amps_[b | bit] = s * a0 + c * a1;
    }
    after_gate();
}

void StatevectorSim::permute(const std::function<std::uint64_t(std::uint64_t)>& map) {
    scratch_.assign(amps_.size(), Amplitude{0.0, 0.0});
    std::vector<bool> hit(amps_.size(), false);
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        const std::uint64_t to = map(b);
        if (to >= amps_.size() || hit[to]) {
            throw std::logic_error("StatevectorSim::permute: map is not a bijection");
        }
        hit[to] = true;
        scratch_[to] = amps_[b];
    }
    amps_.swap(scratch_);
    after_gate();
}

double StatevectorSim::norm() const {
    long double s = 0.0L;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(static_cast<double>(s));
}

void StatevectorSim::check_norm() const {
    const double nrm = norm();
    if (std::abs(nrm - 1.0) > kNormTolerance) {
        throw std::logic_error("state vector norm drifted to " + std::to_string(nrm));
    }
}

std::vector<double> StatevectorSim::marginal(QubitRange range) const {
    std::vector<double> p(std::size_t{1} << range.width, 0.0);
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        p[range.read(b)] += std::norm(amps_[b]);
    }
    return p;
}

void inverse_qft(StatevectorSim& sim, QubitRange range) {
    const unsigned w = range.width;
    for (unsigned b = 0; b < w / 2; ++b) {
        sim.swap(range.offset + b, range.offset + w - 1 - b);
    }
    for (unsigned b = 0; b < w; ++b) {
        for (unsigned c = 0; c < b; ++c) {
            const double theta = -2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << (b - c + 1));
            sim.controlled_phase(range.offset + c, range.offset + b, theta);
        }
        sim.hadamard(range.offset + b);
    }
}

}  // namespace closeness
