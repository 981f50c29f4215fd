// Copyright 2026 The HetNet Utility Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetnet/icupa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {
namespace {

constexpr double kBracketScale = 1e-12;

struct Response {
  std::vector<double> y, q;
  double value = 0.0;  // dual function
  double gy = 0.0;     // 1 - sum y
  double gq = 0.0;     // p* - sum q
  double h[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

double weight_sum(const CellProblem& cell) {
  return std::accumulate(cell.priorities.begin(), cell.priorities.end(), 0.0);
}

// Primal response to (psi, phi) with the dual value, gradient and Hessian.
Response respond(const CellProblem& cell, double psi, double phi, double tol) {
  Response r;
  const int n = cell.size();
  r.y.resize(n);
  r.q.resize(n);
  double sum_y = 0.0, sum_q = 0.0, dy_dpsi = 0.0, dy_dphi = 0.0, dq_dpsi = 0.0, dq_dphi = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w = cell.priorities[j];
    const double gi = cell.gains[j] / cell.interference[j];
    const double y = solve_y_bisection(cell, j, psi, phi, tol);
    const double q = std::max((w - psi * y) / phi, 0.0);
    r.y[j] = y;
    r.q[j] = q;
    sum_y += y;
    sum_q += q;
    const double z = gi / phi * (w / y - psi);
    r.value += w * std::log(y * std::log1p(z));
    const double fp = z > 0.0 ? fbar_prime(z) : -0.5;
    const double h_y = -psi / w + fp * gi * w / (phi * y * y);
    const double h_psi = -y / w + fp * gi / phi;
    const double h_phi = fp * z / phi;
    const double a = -h_psi / h_y;
    const double b = -h_phi / h_y;
    dy_dpsi += a;
    dy_dphi += b;
    dq_dpsi += (-y - psi * a) / phi;
    dq_dphi += -psi * b / phi - q / phi;
  }
  r.gy = 1.0 - sum_y;
  r.gq = cell.budget - sum_q;
  r.value += psi * r.gy + phi * r.gq;
  r.h[0][0] = -dy_dpsi;
  r.h[0][1] = -dy_dphi;
  r.h[1][0] = -dq_dpsi;
  r.h[1][1] = -dq_dphi;
  return r;
}

bool satisfied(const CellProblem& cell, const Response& r, double tol) {
  return std::abs(r.gy) <= tol && std::abs(r.gq) <= tol * cell.budget;
}

CellSolution pack(const CellProblem& cell, const Response& r, double psi, double phi) {
  CellSolution s{r.y, r.q, std::vector<double>(cell.size()), psi, phi};
  for (int j = 0; j < cell.size(); ++j) s.power[j] = r.q[j] / r.y[j];
  return s;
}

}  // namespace

double CellKkt::max() const { return std::max({stationarity, simplex, budget}); }

double fbar_of(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::kDomain, "fbar needs a positive argument");
  return x / ((1.0 + x) * std::log1p(x));
}

double fbar_prime(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::kDomain, "fbar needs a positive argument");
  const double l = std::log1p(x);
  // ln(1 + x) - x cancels for small x; use the series there.
  const double diff =
      x < 1e-3 ? x * x * (-0.5 + x * (1.0 / 3.0 - x * (0.25 - x * 0.2))) : l - x;
  return diff / ((1.0 + x) * (1.0 + x) * l * l);
}

void CellProblem::validate() const {
  const size_t n = priorities.size();
  if (n == 0) throw Error(ErrorCode::kConfig, "cell has no users");
  if (gains.size() != n || interference.size() != n)
    throw Error(ErrorCode::kConfig, "cell arrays differ in length");
  if (!(budget > 0.0)) throw Error(ErrorCode::kConfig, "cell budget must be positive");
  for (size_t j = 0; j < n; ++j)
    if (!(priorities[j] > 0.0 && gains[j] > 0.0 && interference[j] > 0.0))
      throw Error(ErrorCode::kConfig, "cell data must be positive");
}

double solve_y_bisection(const CellProblem& cell, int j, double psi, double phi, double tol) {
  const double w = cell.priorities[j];
  const double gi = cell.gains[j] / (cell.interference[j] * phi);
  auto h = [&](double y) {
    const double z = gi * (w / y - psi);
    return 1.0 - psi * y / w - (z > 0.0 ? fbar_of(z) : 1.0);
  };
  const double cap = w / psi;
  double lo = kBracketScale * cap, hi = cap - kBracketScale * cap;
  double h_lo = h(lo), h_hi = h(hi);
  if (h_lo < 0.0 || h_hi > 0.0)
    throw Error(ErrorCode::kNoRoot, "h keeps one sign for user " + std::to_string(j));
  double mid = 0.5 * (lo + hi);
  for (int k = 0; k < 300; ++k) {
    mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if (std::abs(hm) <= tol) return mid;
    if (hm > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * mid) break;
  }
  return mid;
}

double cell_utility(const CellProblem& cell, std::span<const double> y, std::span<const double> q) {
  double total = 0.0;
  for (int j = 0; j < cell.size(); ++j) {
    const double x = q[j] * cell.gains[j] / (cell.interference[j] * y[j]);
    total += cell.priorities[j] * std::log(y[j] * std::log1p(x));
  }
  return total;
}

CellKkt cell_kkt(const CellProblem& cell, const CellSolution& s) {
  CellKkt k;
  double sum_y = 0.0, sum_q = 0.0;
  for (int j = 0; j < cell.size(); ++j) {
    const double w = cell.priorities[j];
    const double z = s.shares[j] * cell.gains[j] / (cell.interference[j] * s.fractions[j]);
    const double fb = fbar_of(z);
    k.stationarity = std::max(k.stationarity, std::abs(1.0 - s.psi * s.fractions[j] / w - fb));
    k.stationarity = std::max(k.stationarity, std::abs(s.phi * s.shares[j] / w - fb));
    sum_y += s.fractions[j];
    sum_q += s.shares[j];
  }
  k.simplex = std::abs(sum_y - 1.0);
  k.budget = std::abs(sum_q / cell.budget - 1.0);
  return k;
}

CellResult icupa_solve_cell(const CellProblem& cell, const IcupaOptions& opt) {
  cell.validate();
  const int n = cell.size();
  CellResult out;
  std::vector<double> y_eq(n, 1.0 / n), q_eq(n, cell.budget / n);
  out.equal_utility = cell_utility(cell, y_eq, q_eq);
  const double wsum = weight_sum(cell);

  if (n == 1) {
    const double z = cell.budget * cell.gains[0] / cell.interference[0];
    const double w = cell.priorities[0];
    out.solution = CellSolution{{1.0}, {cell.budget}, {cell.budget}, w * (1.0 - fbar_of(z)),
                                w * fbar_of(z) / cell.budget};
    out.utility = out.equal_utility;
    out.kkt = cell_kkt(cell, out.solution);
    out.converged = true;
    return out;
  }

  double mean_gi = 0.0;
  for (int j = 0; j < n; ++j) mean_gi += cell.gains[j] / cell.interference[j] / n;
  const double fb0 = fbar_of(cell.budget * mean_gi);
  double psi = wsum * (1.0 - fb0);
  double phi = wsum * fb0 / cell.budget;

  Response r = respond(cell, psi, phi, opt.bisection_tol);
  double kappa = opt.kappa0;
  int it = 0;
  for (; it < opt.max_iter && !satisfied(cell, r, opt.tol); ++it) {
    double d_psi, d_phi;
    bool newton = false;
    if (opt.step == IcupaStep::kNewton) {
      // Symmetrize; the analytic Hessian is symmetric up to rounding.
      const double a = r.h[0][0], b = 0.5 * (r.h[0][1] + r.h[1][0]), c = r.h[1][1];
      const double det = a * c - b * b;
      if (a > 0.0 && det > 0.0) {
        // Gradient of D is (gy, gq); Newton step is -H^-1 grad.
        d_psi = -(c * r.gy - b * r.gq) / det;
        d_phi = -(-b * r.gy + a * r.gq) / det;
        newton = true;
      }
    }
    if (!newton) {
      const double step = kappa / std::sqrt(static_cast<double>(it + 1));
      d_psi = -step * r.gy * psi;
      d_phi = -step * r.gq / cell.budget * phi;
    }
    // Backtrack until the multipliers stay positive and the dual decreases.
    double t = 1.0;
    bool moved = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      const double psi_t = psi + t * d_psi, phi_t = phi + t * d_phi;
      if (!(psi_t > 0.0 && phi_t > 0.0)) continue;
      Response trial;
      try {
        trial = respond(cell, psi_t, phi_t, opt.bisection_tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoRoot) throw;
        continue;
      }
      const double slope = r.gy * d_psi + r.gq * d_phi;
      if (trial.value <= r.value + 1e-4 * t * slope || satisfied(cell, trial, opt.tol)) {
        psi = psi_t;
        phi = phi_t;
        r = std::move(trial);
        moved = true;
        break;
      }
    }
    if (!moved) {
      if (!newton) kappa *= 0.5;
      if (kappa < 1e-12) break;
    }
  }
  out.iterations = it;
  out.converged = satisfied(cell, r, opt.tol);
  out.solution = pack(cell, r, psi, phi);
  out.utility = cell_utility(cell, out.solution.fractions, out.solution.shares);
  out.kkt = cell_kkt(cell, out.solution);
  if (!(out.utility >= out.equal_utility)) {
    out.kept_equal = true;
    out.solution.fractions = y_eq;
    out.solution.shares = q_eq;
    out.solution.power.assign(n, cell.budget);
    out.utility = out.equal_utility;
  }
  return out;
}

std::vector<CellProblem> build_cells(const Scenario& sc, const Association& assoc,
                                     const NetworkState& state) {
  std::vector<CellProblem> cells(sc.num_bs);
  for (int j = 0; j < sc.num_users; ++j) {
    const int i = assoc.serving(j);
    double interference = sc.noise;
    for (int k = 0; k < sc.num_bs; ++k)
      if (k != i) interference += state.load[k] * state.power[k] * sc.gain(k, j);
    auto& cell = cells[i];
    cell.priorities.push_back(sc.priorities[j]);
    cell.gains.push_back(sc.gain(i, j));
    cell.interference.push_back(interference);
    cell.budget = state.power[i];
  }
  return cells;
}

IcupaResult icupa_all(const Scenario& sc, const Association& assoc, const NetworkState& state,
                      const IcupaOptions& opt) {
  IcupaResult out;
  out.pre_utility = network_utility(sc, state, assoc).value;
  const auto cells = build_cells(sc, assoc, state);
  const auto members = assoc.serving_sets();
  NetworkState next = state;
  const size_t nj = static_cast<size_t>(sc.num_users);
  next.fractions.assign(static_cast<size_t>(sc.num_bs) * nj, 0.0);
  next.user_power.assign(static_cast<size_t>(sc.num_bs) * nj, 0.0);
  out.cells.resize(sc.num_bs);
  for (int i = 0; i < sc.num_bs; ++i) {
    if (members[i].empty()) continue;
    try {
      out.cells[i] = icupa_solve_cell(cells[i], opt);
    } catch (const Error& e) {
      throw Error(e.code(), "BS " + std::to_string(i) + ": " + e.what());
    }
    const auto& s = out.cells[i].solution;
    out.iterations += out.cells[i].iterations;
    out.converged = out.converged && out.cells[i].converged;
    for (size_t k = 0; k < members[i].size(); ++k) {
      const size_t idx = static_cast<size_t>(i) * nj + members[i][k];
      next.fractions[idx] = s.fractions[k];
      next.user_power[idx] = s.power[k];
    }
  }
  out.utility = network_utility(sc, next, assoc).value;
  if (!(out.utility >= out.pre_utility)) {
    out.rejected = true;
    out.utility = out.pre_utility;
    out.state = state;
  } else {
    out.state = std::move(next);
  }
  return out;
}

}  // namespace hetnet
