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

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetnet/error.hpp"
#include "hetnet/oracles.hpp"

namespace hetnet::oracles {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Candidate {
  int a = 0;
  int b = 0;
  double value = 0.0;
};

// Picks one candidate per user so that the (a, b) sums hit the target.
// Returns the chosen index per user, or empty if nothing is reachable.
std::vector<int> knapsack_2d(const std::vector<std::vector<Candidate>>& cands, int target_a,
                             int target_b, double* best) {
  const int n = static_cast<int>(cands.size());
  struct Layer {
    int lo_a, hi_a, lo_b, hi_b;
    std::vector<double> value;
    std::vector<int> choice;
    int width() const { return hi_b - lo_b + 1; }
    size_t at(int a, int b) const {
      return static_cast<size_t>(a - lo_a) * width() + (b - lo_b);
    }
  };
  std::vector<Layer> layers;
  Layer start{0, 0, 0, 0, {0.0}, {-1}};
  layers.push_back(start);
  for (int j = 0; j < n; ++j) {
    const Layer& prev = layers.back();
    int amin = std::numeric_limits<int>::max(), amax = std::numeric_limits<int>::min();
    int bmin = amin, bmax = amax;
    for (const auto& c : cands[j]) {
      amin = std::min(amin, c.a);
      amax = std::max(amax, c.a);
      bmin = std::min(bmin, c.b);
      bmax = std::max(bmax, c.b);
    }
    Layer next;
    next.lo_a = prev.lo_a + amin;
    next.hi_a = std::min(prev.hi_a + amax, target_a);
    next.lo_b = prev.lo_b + bmin;
    next.hi_b = std::min(prev.hi_b + bmax, target_b);
    if (j == n - 1) {
      next.lo_a = next.hi_a = target_a;
      next.lo_b = next.hi_b = target_b;
    }
    if (next.lo_a > next.hi_a || next.lo_b > next.hi_b) return {};
    const size_t size = static_cast<size_t>(next.hi_a - next.lo_a + 1) * next.width();
    next.value.assign(size, kNegInf);
    next.choice.assign(size, -1);
    for (int pa = prev.lo_a; pa <= prev.hi_a; ++pa) {
      for (int pb = prev.lo_b; pb <= prev.hi_b; ++pb) {
        const double base = prev.value[prev.at(pa, pb)];
        if (base == kNegInf) continue;
        for (size_t k = 0; k < cands[j].size(); ++k) {
          const auto& c = cands[j][k];
          const int a = pa + c.a;
          const int b = pb + c.b;
          if (a < next.lo_a || a > next.hi_a || b < next.lo_b || b > next.hi_b) continue;
          const double v = base + c.value;
          const size_t idx = next.at(a, b);
          if (v > next.value[idx]) {
            next.value[idx] = v;
            next.choice[idx] = static_cast<int>(k);
          }
        }
      }
    }
    layers.push_back(std::move(next));
  }
  const Layer& last = layers.back();
  if (last.value[0] == kNegInf) return {};
  *best = last.value[0];
  std::vector<int> picked(n);
  int a = target_a, b = target_b;
  for (int j = n - 1; j >= 0; --j) {
    const Layer& l = layers[j + 1];
    const int k = l.choice[l.at(a, b)];
    picked[j] = k;
    a -= cands[j][k].a;
    b -= cands[j][k].b;
  }
  return picked;
}

double user_term(const CellProblem& cell, int j, double y, double q) {
  const double r = std::log1p(q * cell.gains[j] / (cell.interference[j] * y));
  return cell.priorities[j] * std::log(y * r);
}

}  // namespace

std::vector<double> simplex_grid_argmax(std::span<const double> priorities, double step) {
  const int n = static_cast<int>(priorities.size());
  const int units = static_cast<int>(std::lround(1.0 / step));
  if (n == 0 || units < n) throw Error(ErrorCode::kConfig, "grid too coarse for user count");
  // best[k][u]: first k users using u units
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(units + 1, kNegInf));
  std::vector<std::vector<int>> pick(n + 1, std::vector<int>(units + 1, 0));
  best[0][0] = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double w = priorities[k - 1];
    for (int u = k; u <= units - (n - k); ++u) {
      for (int a = 1; a <= u - (k - 1); ++a) {
        const double prev = best[k - 1][u - a];
        if (prev == kNegInf) continue;
        const double v = prev + w * std::log(a * step);
        if (v > best[k][u]) {
          best[k][u] = v;
          pick[k][u] = a;
        }
      }
    }
  }
  std::vector<double> y(n);
  int u = units;
  for (int k = n; k >= 1; --k) {
    y[k - 1] = pick[k][u] * step;
    u -= pick[k][u];
  }
  return y;
}

CellGridOptimum cell_grid_oracle(const CellProblem& cell) {
  cell.validate();
  const int n = cell.size();
  if (n > 4) throw Error(ErrorCode::kTooLarge, "cell grid oracle handles at most 4 users");

  constexpr int kCoarse = 100;
  std::vector<std::vector<Candidate>> coarse(n);
  for (int j = 0; j < n; ++j) {
    for (int a = 1; a < kCoarse; ++a) {
      for (int b = 1; b < kCoarse; ++b) {
        coarse[j].push_back({a, b,
                             user_term(cell, j, a / double(kCoarse),
                                       cell.budget * b / double(kCoarse))});
      }
    }
  }
  double value = kNegInf;
  std::vector<int> pick = n == 1 ? std::vector<int>{} : knapsack_2d(coarse, kCoarse, kCoarse, &value);

  constexpr int kFine = 1000;
  constexpr int kRadius = 30;
  std::vector<int> center_a(n, kFine), center_b(n, kFine);
  if (n > 1) {
    if (pick.empty()) throw Error(ErrorCode::kNoRoot, "cell grid oracle found no point");
    for (int j = 0; j < n; ++j) {
      center_a[j] = coarse[j][pick[j]].a * (kFine / kCoarse);
      center_b[j] = coarse[j][pick[j]].b * (kFine / kCoarse);
    }
  }
  std::vector<std::vector<Candidate>> fine(n);
  for (int j = 0; j < n; ++j) {
    for (int da = -kRadius; da <= kRadius; ++da) {
      for (int db = -kRadius; db <= kRadius; ++db) {
        const int a = center_a[j] + da;
        const int b = center_b[j] + db;
        if (a < 1 || b < 1 || a > kFine || b > kFine) continue;
        fine[j].push_back({a, b,
                           user_term(cell, j, a / double(kFine), cell.budget * b / double(kFine))});
      }
    }
  }
  pick = knapsack_2d(fine, kFine, kFine, &value);
  if (pick.empty()) throw Error(ErrorCode::kNoRoot, "cell grid refinement found no point");
  CellGridOptimum out;
  out.utility = value;
  for (int j = 0; j < n; ++j) {
    out.fractions.push_back(fine[j][pick[j]].a / double(kFine));
    out.shares.push_back(cell.budget * fine[j][pick[j]].b / double(kFine));
  }
  return out;
}

std::vector<double> sorted_cdf(std::span<const double> samples, std::span<const double> grid) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySamples, "no samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  std::vector<size_t> order(grid.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return grid[x] < grid[y]; });
  std::vector<double> out(grid.size());
  size_t count = 0;
  for (size_t k : order) {
    while (count < s.size() && s[count] <= grid[k]) ++count;
    out[k] = static_cast<double>(count) / static_cast<double>(s.size());
  }
  return out;
}

}  // namespace hetnet::oracles
