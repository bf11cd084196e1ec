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

#include "closeness/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace closeness {

LinearProgram::LinearProgram(std::size_t r, std::size_t c)
    : rows(r), cols(c), a(r * c, 0.0L), b(r, 0.0L), c(c, 0.0L) {}

namespace {

// Tableau over the structural columns followed by one artificial per row.
class Tableau {
   public:
    Tableau(const LinearProgram& lp, long double tol)
        : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows), tol_(tol), t_(m_ * width_), rhs_(m_), sign_(m_),
          basis_(m_) {
        for (std::size_t r = 0; r < m_; ++r) {
            sign_[r] = lp.b[r] < 0 ? -1.0L : 1.0L;
            for (std::size_t j = 0; j < n_; ++j) {
                at(r, j) = sign_[r] * lp.at(r, j);
            }
            at(r, n_ + r) = 1.0L;
            rhs_[r] = sign_[r] * lp.b[r];
            basis_[r] = n_ + r;
        }
    }

    long double& at(std::size_t r, std::size_t j) { return t_[r * width_ + j]; }

    // Runs simplex for cost vector `cost` (length width_) over columns with
    // index < `allowed`. Returns false when unbounded. Dantzig pricing, with
    // Bland's rule taking over after a run of degenerate pivots.
    bool optimize(const std::vector<long double>& cost, std::size_t allowed) {
        const std::size_t max_iter = 50000 + 50 * width_;
        const std::size_t stall_limit = 50;
        std::size_t stalled = 0;
        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            const bool bland = stalled >= stall_limit;
            std::size_t enter = width_;
            long double best_rc = tol_;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (is_basic(j)) {
                    continue;
                }
                const long double rc = reduced_cost(cost, j);
                if (rc > best_rc) {
                    enter = j;
                    best_rc = rc;
                    if (bland) {
                        break;
                    }
                }
            }
            if (enter == width_) {
                return true;
            }
            std::size_t leave = m_;
            long double best = std::numeric_limits<long double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                const long double coef = at(r, enter);
                if (coef <= tol_) {
                    continue;
                }
                const long double ratio = rhs_[r] / coef;
                if (leave == m_ || ratio < best - tol_) {
                    best = ratio;
                    leave = r;
                } else if (std::fabs(ratio - best) <= tol_) {
                    const bool better = bland ? basis_[r] < basis_[leave] : coef > at(leave, enter);
                    if (better) {
                        best = ratio;
                        leave = r;
                    }
                }
            }
            if (leave == m_) {
                return false;
            }
            stalled = best > tol_ ? 0 : stalled + 1;
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex iteration limit reached");
    }

    long double reduced_cost(const std::vector<long double>& cost, std::size_t j) {
        long double z = cost[j];
        for (std::size_t r = 0; r < m_; ++r) {
            z -= cost[basis_[r]] * at(r, j);
        }
        return z;
    }

    void pivot(std::size_t r, std::size_t j) {
        const long double p = at(r, j);
        for (std::size_t k = 0; k < width_; ++k) {
            at(r, k) /= p;
        }
        rhs_[r] /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) {
                continue;
            }
            const long double f = at(i, j);
            if (f == 0.0L) {
                continue;
            }
            for (std::size_t k = 0; k < width_; ++k) {
                at(i, k) -= f * at(r, k);
            }
            rhs_[i] -= f * rhs_[r];
        }
        basis_[r] = j;
    }

    // Moves artificials still basic at level zero out of the basis where the
    // row allows it.
    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) {
                continue;
            }
            for (std::size_t j = 0; j < n_; ++j) {
                if (!is_basic(j) && std::fabs(at(r, j)) > 1e-9L) {
                    pivot(r, j);
                    break;
                }
            }
        }
    }

    bool is_basic(std::size_t j) const {
        for (auto b : basis_) {
            if (b == j) {
                return true;
            }
        }
        return false;
    }

    std::size_t m_;
    std::size_t n_;
    std::size_t width_;
    long double tol_;
    std::vector<long double> t_;
    std::vector<long double> rhs_;
    std::vector<long double> sign_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, long double tolerance) {
    if (lp.a.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || lp.c.size() != lp.cols) {
        throw std::invalid_argument("linear program has inconsistent dimensions");
    }
    Tableau tab(lp, tolerance);
    const std::size_t width = lp.cols + lp.rows;

    std::vector<long double> phase1(width, 0.0L);
    for (std::size_t r = 0; r < lp.rows; ++r) {
        phase1[lp.cols + r] = -1.0L;
    }
    tab.optimize(phase1, width);
    long double infeas = 0.0L;
    for (std::size_t r = 0; r < lp.rows; ++r) {
        if (tab.basis_[r] >= lp.cols) {
            infeas += tab.rhs_[r];
        }
    }
    LpSolution sol;
    if (infeas > 1e-10L) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    tab.drive_out_artificials();

    std::vector<long double> phase2(width, 0.0L);
    for (std::size_t j = 0; j < lp.cols; ++j) {
        phase2[j] = lp.c[j];
    }
    if (!tab.optimize(phase2, lp.cols)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.x.assign(lp.cols, 0.0L);
    for (std::size_t r = 0; r < lp.rows; ++r) {
        if (tab.basis_[r] < lp.cols) {
            sol.x[tab.basis_[r]] = tab.rhs_[r];
        }
    }
    for (std::size_t j = 0; j < lp.cols; ++j) {
        sol.objective += lp.c[j] * sol.x[j];
    }
    // Columns of the artificials hold (D B)^{-1} where D flips rows with b < 0.
    sol.duals.assign(lp.rows, 0.0L);
    for (std::size_t i = 0; i < lp.rows; ++i) {
        long double y = 0.0L;
        for (std::size_t r = 0; r < lp.rows; ++r) {
            y += phase2[tab.basis_[r]] * tab.at(r, lp.cols + i);
        }
        sol.duals[i] = y * tab.sign_[i];
    }
    return sol;
}

}  // namespace closeness
