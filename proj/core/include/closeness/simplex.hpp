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

#include <cstddef>
#include <vector>

namespace closeness {

/// maximize c^T x subject to A x = b, x >= 0. A is row-major, rows x cols.
struct LinearProgram {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<long double> a;
    std::vector<long double> b;
    std::vector<long double> c;

    LinearProgram(std::size_t rows, std::size_t cols);
    long double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
    long double at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    long double objective = 0.0L;
    std::vector<long double> x;
    /// y = c_B^T B^{-1}; satisfies A^T y >= c and b^T y = objective at optimum.
    std::vector<long double> duals;
};

/// Dense two-phase tableau simplex in long double. Dantzig pricing, Bland's
/// rule once pivots stall.
LpSolution solve_lp(const LinearProgram& lp, long double tolerance = 1e-13L);

}  // namespace closeness
