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

#include "closeness/approx_degree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "closeness/simplex.hpp"

namespace closeness {

double DualWitness::l1() const {
    double s = 0.0;
    for (double v : psi) {
        s += std::abs(v);
    }
    return s;
}

double DualWitness::fourier_residual() const {
    const auto coeff = fourier(psi);
    double r = 0.0;
    for (std::uint64_t s = 0; s < coeff.size(); ++s) {
        if (subset_size(s) <= d) {
            r = std::max(r, std::abs(coeff[s]));
        }
    }
    return r;
}

double DualWitness::margin(double epsilon) const { return correlation - epsilon * l1(); }

namespace {

void check_arity(const PartialFunction& f) {
    if (f.k > kMaxLpArity) {
        throw std::invalid_argument("approximate degree LP is limited to k <= 8");
    }
    if (f.values.size() != (std::size_t{1} << f.k)) {
        throw std::invalid_argument("partial function table has the wrong size");
    }
}

double correlation_of(const PartialFunction& f, const std::vector<double>& psi) {
    double c = 0.0;
    for (std::size_t x = 0; x < psi.size(); ++x) {
        c += f.in_domain(x) ? static_cast<int>(f.values[x]) * psi[x] : -std::abs(psi[x]);
    }
    return c;
}

// Objective weights of u_x and v_x (psi = u - v).
std::pair<long double, long double> objective_weights(const PartialFunction& f, std::size_t x) {
    if (f.in_domain(x)) {
        const long double v = static_cast<int>(f.values[x]);
        return {v, -v};
    }
    return {-1.0L, -1.0L};
}

}  // namespace

DegreeLp solve_degree_lp(const PartialFunction& f, std::size_t d) {
    check_arity(f);
    const std::size_t size = f.values.size();
    std::vector<std::uint64_t> low;
    for (std::uint64_t s = 0; s < size; ++s) {
        if (subset_size(s) <= d) {
            low.push_back(s);
        }
    }
    LinearProgram lp(1 + low.size(), 2 * size);
    for (std::size_t x = 0; x < size; ++x) {
        lp.at(0, x) = 1.0L;
        lp.at(0, size + x) = 1.0L;
        for (std::size_t r = 0; r < low.size(); ++r) {
            const long double ch = chi(low[r], x);
            lp.at(1 + r, x) = ch;
            lp.at(1 + r, size + x) = -ch;
        }
        const auto [wu, wv] = objective_weights(f, x);
        lp.c[x] = wu;
        lp.c[size + x] = wv;
    }
    lp.b[0] = 1.0L;
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) {
        throw std::logic_error("degree LP is always feasible and bounded");
    }
    DegreeLp out;
    out.psi.resize(size);
    double mass = 0.0;
    for (std::size_t x = 0; x < size; ++x) {
        out.psi[x] = static_cast<double>(sol.x[x] - sol.x[size + x]);
        mass += std::abs(out.psi[x]);
    }
    if (mass > 0.0) {
        for (auto& v : out.psi) {
            v /= mass;
        }
    }
    out.eta = static_cast<double>(sol.objective);
    out.poly.assign(size, 0.0);
    for (std::size_t r = 0; r < low.size(); ++r) {
        out.poly[low[r]] = static_cast<double>(sol.duals[1 + r]);
    }
    return out;
}

double solve_symmetric_degree_lp(const PartialFunction& f, std::size_t d) {
    check_arity(f);
    if (!f.is_symmetric()) {
        throw std::invalid_argument("symmetric LP needs a symmetric function");
    }
    const std::size_t k = f.k;
    // K_j(w) = sum over |S| = j of chi_S(x) for any |x| = w. Summing chi_S over
    // |x| = w instead gives C(k,w) K_j(w) / C(k,j), so psi_hat(S) = 0 for
    // every |S| = j reduces to sum_w phi_w K_j(w) = 0.
    auto kraw = [&](std::size_t j, std::size_t w) {
        long double s = 0.0L;
        for (std::size_t i = 0; i <= std::min(j, w); ++i) {
            if (j - i > k - w) {
                continue;
            }
            long double c1 = 1.0L;
            for (std::size_t a = 0; a < i; ++a) {
                c1 = c1 * static_cast<long double>(w - a) / static_cast<long double>(a + 1);
            }
            long double c2 = 1.0L;
            for (std::size_t a = 0; a < j - i; ++a) {
                c2 = c2 * static_cast<long double>(k - w - a) / static_cast<long double>(a + 1);
            }
            s += ((i % 2) ? -1.0L : 1.0L) * c1 * c2;
        }
        return s;
    };
    const std::size_t dd = std::min(d, k);
    const std::size_t vars = k + 1;
    LinearProgram lp(1 + dd + 1, 2 * vars);
    for (std::size_t w = 0; w <= k; ++w) {
        // phi_w is the total mass on weight w.
        lp.at(0, w) = 1.0L;
        lp.at(0, vars + w) = 1.0L;
        for (std::size_t j = 0; j <= dd; ++j) {
            const long double v = kraw(j, w);
            lp.at(1 + j, w) = v;
            lp.at(1 + j, vars + w) = -v;
        }
        const std::uint64_t rep = (w == 0) ? 0 : ((std::uint64_t{1} << w) - 1);
        const auto [wu, wv] = objective_weights(f, rep);
        lp.c[w] = wu;
        lp.c[vars + w] = wv;
    }
    lp.b[0] = 1.0L;
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) {
        throw std::logic_error("symmetric degree LP is always feasible and bounded");
    }
    return static_cast<double>(sol.objective);
}

ApproxDegree approx_degree(const PartialFunction& f, double epsilon) {
    check_arity(f);
    if (!(epsilon >= 0.0)) {
        throw std::invalid_argument("epsilon must be non-negative");
    }
    ApproxDegree out;
    std::optional<DegreeLp> previous;
    for (std::size_t d = 0; d <= f.k; ++d) {
        DegreeLp lp = solve_degree_lp(f, d);
        if (lp.eta <= epsilon + kFeasibilityTolerance) {
            out.degree = d;
            out.error = std::max(0.0, lp.eta);
            out.poly = std::move(lp.poly);
            if (previous) {
                DualWitness w;
                w.k = f.k;
                w.d = d - 1;
                w.psi = std::move(previous->psi);
                w.correlation = correlation_of(f, w.psi);
                out.witness = std::move(w);
            }
            return out;
        }
        previous = std::move(lp);
    }
    throw std::logic_error("degree k is always feasible");
}

ApproximationResidual approximation_residual(const PartialFunction& f, const std::vector<double>& poly) {
    const auto values = inverse_fourier(poly);
    ApproximationResidual r;
    r.off_domain_excess = -1.0;
    for (std::size_t x = 0; x < values.size(); ++x) {
        if (f.in_domain(x)) {
            r.domain_error = std::max(r.domain_error, std::abs(static_cast<int>(f.values[x]) - values[x]));
        } else {
            r.off_domain_excess = std::max(r.off_domain_excess, std::abs(values[x]) - 1.0);
        }
    }
    if (r.off_domain_excess < 0.0) {
        r.off_domain_excess = 0.0;
    }
    return r;
}

}  // namespace closeness
