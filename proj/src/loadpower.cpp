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

#include "hetnet/loadpower.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "hetnet/error.hpp"

namespace hetnet {
namespace {

constexpr double kUBox = 50.0;
constexpr double kLogShareFloor = -100.0;
constexpr double kPowerRange = 40.0;  // v >= ln P - kPowerRange
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kStallIterations = 150;
// Continuation starts tried in turn until one converges.
constexpr double kFallbackStarts[] = {0.3, 0.1, 3.0};

// ln(1 + e^x) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// Bisection for f(x) = y on [lo, hi]; f is decreasing.
double bisect_f(double y, double lo, double hi, double tol) {
  for (int k = 0; k < 400; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f_of(mid);
    if (std::abs(fm - y) <= tol || hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) return mid;
    if (fm > y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Clipped log of a share: ln(num / den) inside [kLogShareFloor, 0].
double log_share(double num, double den) {
  if (!(num > 0.0)) return kLogShareFloor;
  if (!(den > 0.0)) return 0.0;
  return std::clamp(std::log(num / den), kLogShareFloor, 0.0);
}

struct Inner {
  LdpcPrimals x;
  std::vector<double> c;  // -(beta + sum lambda) per user
  std::vector<double> e;  // dL/dv without the barrier, per slot
  std::vector<char> u_clamped, w_clamped, s_clamped, v_clamped;
};

struct Constraints {
  std::vector<double> ca, cb, cl;
  double residual = 0.0;
};

// Dual of the regularized problem over y = (alpha, beta, lambda).
class DualProblem {
 public:
  DualProblem(const FullLoadStructure& st, std::span<const double> w, double T, bool gradient,
              double inverse_tol)
      : st_(st), w_(w), T_(T), gradient_(gradient), inverse_tol_(inverse_tol) {}

  int J() const { return st_.num_users(); }
  int A() const { return st_.num_slots(); }
  int M() const { return st_.num_pairs(); }
  int size() const { return 2 * J() + M(); }

  Inner inner(const Eigen::VectorXd& y, std::span<const double> zeta) const {
    Inner in;
    const int nj = J(), na = A(), nm = M();
    auto alpha = y.segment(0, nj);
    auto beta = y.segment(nj, nj);
    auto lambda = y.segment(2 * nj, nm);
    in.x.u.resize(nj);
    in.x.w.resize(nj);
    in.x.s.resize(nm);
    in.x.v.resize(na);
    in.c.resize(nj);
    in.e.assign(na, 0.0);
    in.u_clamped.assign(nj, 0);
    in.w_clamped.assign(nj, 0);
    in.s_clamped.assign(nm, 0);
    in.v_clamped.assign(na, 0);
    const double f_lo = f_of(-kUBox), f_hi = f_of(kUBox);
    for (int j = 0; j < nj; ++j) {
      double c = -beta[j];
      for (int m : st_.user_pairs[j]) c -= lambda[m];
      in.c[j] = c;
      const double target = c / w_[j];
      double u;
      if (target >= f_lo) {
        u = -kUBox;
        in.u_clamped[j] = 1;
      } else if (target <= f_hi) {
        u = kUBox;
        in.u_clamped[j] = 1;
      } else {
        u = bisect_f(target, -kUBox, kUBox, inverse_tol_);
      }
      in.x.u[j] = u;
      in.x.w[j] = log_share(-beta[j], alpha[j]);
      in.w_clamped[j] = in.x.w[j] <= kLogShareFloor || in.x.w[j] >= 0.0;
      in.e[st_.serving_slot[j]] -= beta[j];
    }
    for (int m = 0; m < nm; ++m) {
      const int j = st_.pair_user[m];
      in.x.s[m] = log_share(-lambda[m], alpha[j]);
      in.s_clamped[m] = in.x.s[m] <= kLogShareFloor || in.x.s[m] >= 0.0;
      in.e[st_.pair_bs[m]] += lambda[m];
      in.e[st_.serving_slot[j]] -= lambda[m];
    }
    for (int q = 0; q < na; ++q) {
      const double lnp = st_.ln_max_power[q];
      const double floor = lnp - kPowerRange;
      const double e = in.e[q] - (zeta.empty() ? 0.0 : zeta[q]);
      double v;
      if (e > 0.0)
        v = std::min(1.0 + lnp - T_ / e, lnp);
      else
        v = gradient_ ? lnp : floor;
      v = std::max(v, floor);
      in.x.v[q] = v;
      in.v_clamped[q] = v >= lnp || v <= floor;
    }
    return in;
  }

  double value(const Eigen::VectorXd& y, std::span<const double> zeta, const Inner& in) const {
    const int nj = J(), na = A(), nm = M();
    double d = 0.0;
    for (int j = 0; j < nj; ++j) {
      const double alpha = y[j], beta = y[nj + j];
      d += w_[j] * std::log(softplus(in.x.u[j])) - in.c[j] * in.x.u[j];
      d += -alpha * std::exp(in.x.w[j]) - beta * in.x.w[j] + alpha;
      d += beta * st_.b[j];
    }
    for (int m = 0; m < nm; ++m) {
      const double lambda = y[2 * nj + m];
      d += -y[st_.pair_user[m]] * std::exp(in.x.s[m]) - lambda * in.x.s[m];
      d += lambda * st_.a[m];
    }
    for (int q = 0; q < na; ++q) {
      const double lnp = st_.ln_max_power[q];
      const double z = zeta.empty() ? 0.0 : zeta[q];
      d += (in.e[q] - z) * in.x.v[q] + T_ * std::log(1.0 + lnp - in.x.v[q]) + z * lnp;
    }
    return d;
  }

  Constraints constraints(const Eigen::VectorXd& y, const Inner& in) const {
    const int nj = J(), nm = M();
    Constraints c;
    c.ca.resize(nj);
    c.cb.resize(nj);
    c.cl.resize(nm);
    for (int j = 0; j < nj; ++j) {
      double total = std::exp(in.x.w[j]);
      for (int m : st_.user_pairs[j]) total += std::exp(in.x.s[m]);
      c.ca[j] = total - 1.0;
      c.cb[j] = in.x.w[j] - in.x.u[j] + in.x.v[st_.serving_slot[j]] - st_.b[j];
      c.residual = std::max({c.residual, std::max(c.ca[j], 0.0), std::abs(c.cb[j]),
                             std::abs(y[j] * c.ca[j])});
    }
    for (int m = 0; m < nm; ++m) {
      const int j = st_.pair_user[m];
      c.cl[m] = in.x.s[m] - in.x.u[j] - in.x.v[st_.pair_bs[m]] +
                in.x.v[st_.serving_slot[j]] - st_.a[m];
      c.residual = std::max(c.residual, std::abs(c.cl[m]));
    }
    return c;
  }

  Eigen::VectorXd gradient(const Constraints& c) const {
    const int nj = J(), nm = M();
    Eigen::VectorXd g(size());
    for (int j = 0; j < nj; ++j) {
      g[j] = -c.ca[j];
      g[nj + j] = -c.cb[j];
    }
    for (int m = 0; m < nm; ++m) g[2 * nj + m] = -c.cl[m];
    return g;
  }

  // Solves (H + mu diag(H)) dx = rhs, H = G diag(-Hxx^-1) G^T. H is block
  // diagonal per user plus a rank-|A| term from the shared log-powers.
  bool newton_solve(const Eigen::VectorXd& y, const Inner& in, double mu,
                    const Eigen::VectorXd& rhs, Eigen::VectorXd& out) const {
    const int nj = J(), na = A();
    // Curvatures of the inner maximizer; zero where a box is active.
    std::vector<double> du(nj), dw(nj), ds(M()), dv(na);
    for (int j = 0; j < nj; ++j) {
      du[j] = in.u_clamped[j] ? 0.0 : 1.0 / (-w_[j] * f_prime(in.x.u[j]));
      dw[j] = in.w_clamped[j] || y[j] <= 0.0 ? 0.0 : 1.0 / (y[j] * std::exp(in.x.w[j]));
    }
    for (int m = 0; m < M(); ++m) {
      const double alpha = y[st_.pair_user[m]];
      ds[m] = in.s_clamped[m] || alpha <= 0.0 ? 0.0 : 1.0 / (alpha * std::exp(in.x.s[m]));
    }
    std::vector<int> free_v;
    for (int q = 0; q < na; ++q) {
      const double gap = 1.0 + st_.ln_max_power[q] - in.x.v[q];
      dv[q] = in.v_clamped[q] ? 0.0 : gap * gap / T_;
      if (dv[q] > 0.0) free_v.push_back(q);
    }
    const int nf = static_cast<int>(free_v.size());
    out.setZero(size());
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(size(), nf);
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(size());
    std::vector<std::vector<int>> rows(nj);
    for (int j = 0; j < nj; ++j) {
      // Rows: alpha_j, beta_j, lambda_m for m in user_pairs[j].
      const auto& pairs = st_.user_pairs[j];
      const int nb = 2 + static_cast<int>(pairs.size());
      auto& r = rows[j];
      r = {j, nj + j};
      for (int m : pairs) r.push_back(2 * nj + m);
      Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(nb, nb);
      Eigen::MatrixXd uv = Eigen::MatrixXd::Zero(nb, nf);
      // u_j: -1 on beta_j and every lambda row.
      Eigen::VectorXd gu = Eigen::VectorXd::Constant(nb, -1.0);
      gu[0] = 0.0;
      blk += du[j] * gu * gu.transpose();
      // w_j: e^w on alpha_j, +1 on beta_j.
      Eigen::VectorXd gw = Eigen::VectorXd::Zero(nb);
      gw[0] = std::exp(in.x.w[j]);
      gw[1] = 1.0;
      blk += dw[j] * gw * gw.transpose();
      for (size_t k = 0; k < pairs.size(); ++k) {
        const int m = pairs[k];
        Eigen::VectorXd gs = Eigen::VectorXd::Zero(nb);
        gs[0] = std::exp(in.x.s[m]);
        gs[2 + k] = 1.0;
        blk += ds[m] * gs * gs.transpose();
      }
      const int own = st_.serving_slot[j];
      for (int f = 0; f < nf; ++f) {
        const int q = free_v[f];
        if (q == own) {
          for (int r2 = 1; r2 < nb; ++r2) uv(r2, f) += 1.0;
        }
        for (size_t k = 0; k < pairs.size(); ++k)
          if (st_.pair_bs[pairs[k]] == q) uv(2 + k, f) -= 1.0;
      }
      // Marquardt damping on the full diagonal.
      for (int a = 0; a < nb; ++a) {
        double diag = blk(a, a);
        for (int f = 0; f < nf; ++f) diag += dv[free_v[f]] * uv(a, f) * uv(a, f);
        blk(a, a) += mu * std::max(diag, 1e-24);
      }
      Eigen::VectorXd local_rhs(nb);
      for (int a = 0; a < nb; ++a) local_rhs[a] = rhs[r[a]];
      Eigen::LDLT<Eigen::MatrixXd> ldlt(blk);
      if (ldlt.info() != Eigen::Success) return false;
      const Eigen::VectorXd zl = ldlt.solve(local_rhs);
      const Eigen::MatrixXd zu = ldlt.solve(uv);
      if (!zl.allFinite() || !zu.allFinite()) return false;
      for (int a = 0; a < nb; ++a) {
        z0[r[a]] = zl[a];
        z.row(r[a]) = zu.row(a);
      }
      block_uv_.push_back(std::move(uv));
    }
    if (nf == 0) {
      out = z0;
      block_uv_.clear();
      return out.allFinite();
    }
    // Capacitance matrix D^-1 + U^T B^-1 U and U^T z0.
    Eigen::MatrixXd cap = Eigen::MatrixXd::Zero(nf, nf);
    Eigen::VectorXd utz = Eigen::VectorXd::Zero(nf);
    for (int j = 0; j < nj; ++j) {
      const auto& uv = block_uv_[j];
      for (int a = 0; a < uv.rows(); ++a) {
        const int row = rows[j][a];
        cap.noalias() += uv.row(a).transpose() * z.row(row);
        utz += uv.row(a).transpose() * z0[row];
      }
    }
    block_uv_.clear();
    for (int f = 0; f < nf; ++f) cap(f, f) += 1.0 / dv[free_v[f]];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(cap);
    const Eigen::VectorXd corr = lu.solve(utz);
    out = z0 - z * corr;
    return out.allFinite();
  }

 private:
  const FullLoadStructure& st_;
  std::span<const double> w_;
  double T_;
  bool gradient_;
  double inverse_tol_;
  mutable std::vector<Eigen::MatrixXd> block_uv_;
};

// Duals matching the warm-start powers, with each BS's interference prices
// capped so the log-power stationarity starts well inside its domain.
Eigen::VectorXd initial_duals(const FullLoadStructure& st, const Scenario& sc,
                              std::span<const double> slot_power) {
  const int nj = st.num_users(), nm = st.num_pairs(), na = st.num_slots();
  Eigen::VectorXd y(2 * nj + nm);
  std::vector<double> den(nj, sc.noise);
  for (int m = 0; m < nm; ++m) {
    const int j = st.pair_user[m], q = st.pair_bs[m];
    den[j] += slot_power[q] * sc.gain(st.active[q], j);
  }
  for (int j = 0; j < nj; ++j) {
    const int q = st.serving_slot[j];
    const double eta = slot_power[q] * sc.gain(st.active[q], j) / den[j];
    const double alpha = sc.priorities[j] * f_of(std::log(eta));
    y[j] = alpha;
    y[nj + j] = -alpha * sc.noise / den[j];
  }
  std::vector<double> own(na, 0.0), out(na, 0.0);
  for (int j = 0; j < nj; ++j) own[st.serving_slot[j]] += y[j];
  for (int m = 0; m < nm; ++m) {
    const int j = st.pair_user[m], q = st.pair_bs[m];
    y[2 * nj + m] = -y[j] * slot_power[q] * sc.gain(st.active[q], j) / den[j];
    out[q] -= y[2 * nj + m];
  }
  for (int m = 0; m < nm; ++m) {
    const int j = st.pair_user[m], q = st.pair_bs[m];
    const double rho = out[q] > 0.0 ? std::min(1.0, 0.5 * own[q] / out[q]) : 1.0;
    const double lam = y[2 * nj + m];
    y[nj + j] += lam * (1.0 - rho);
    y[2 * nj + m] = lam * rho;
  }
  return y;
}

std::vector<double> recover_zeta(const FullLoadStructure& st, const Inner& in, double T) {
  std::vector<double> zeta(st.num_slots(), 0.0);
  for (int q = 0; q < st.num_slots(); ++q) {
    const double lnp = st.ln_max_power[q];
    if (in.x.v[q] >= lnp - 1e-12)
      zeta[q] = std::max(0.0, in.e[q] - T / (1.0 + lnp - in.x.v[q]));
  }
  return zeta;
}

LdpcDuals unpack(const Eigen::VectorXd& y, const FullLoadStructure& st, std::vector<double> zeta) {
  const int nj = st.num_users(), nm = st.num_pairs();
  LdpcDuals d;
  d.alpha.assign(y.data(), y.data() + nj);
  d.beta.assign(y.data() + nj, y.data() + 2 * nj);
  d.lambda.assign(y.data() + 2 * nj, y.data() + 2 * nj + nm);
  d.zeta = std::move(zeta);
  return d;
}

struct StageOutcome {
  int iterations = 0;
  double residual = kInf;
};

StageOutcome newton_stage(const DualProblem& dp, Eigen::VectorXd& y, double tol, int max_iter,
                          std::vector<double>& trace) {
  StageOutcome out;
  const std::vector<double> no_zeta;
  double mu = 1e-6;
  double best = kInf;
  int best_iter = 0;
  Eigen::VectorXd step;
  for (int it = 0; it < max_iter; ++it) {
    const Inner in = dp.inner(y, no_zeta);
    const Constraints c = dp.constraints(y, in);
    out.residual = c.residual;
    trace.push_back(c.residual);
    if (c.residual < tol) return out;
    if (c.residual < 0.9 * best) {
      best = c.residual;
      best_iter = it;
    }
    if (it - best_iter > kStallIterations) return out;
    ++out.iterations;
    const Eigen::VectorXd g = dp.gradient(c);
    const double d0 = dp.value(y, no_zeta, in);
    bool accepted = false;
    for (int tries = 0; tries < 60 && !accepted; ++tries, mu *= 10.0) {
      if (!dp.newton_solve(y, in, mu, g, step)) continue;
      Eigen::VectorXd trial = y - step;
      for (int j = 0; j < dp.J(); ++j) trial[j] = std::max(trial[j], 0.0);
      const Inner tin = dp.inner(trial, no_zeta);
      const double d1 = dp.value(trial, no_zeta, tin);
      if (std::isfinite(d1) && d1 <= d0 + 1e-4 * g.dot(trial - y)) {
        y = std::move(trial);
        accepted = true;
      }
    }
    if (!accepted) return out;
    mu = std::max(mu / 100.0, 1e-12);
  }
  const Inner in = dp.inner(y, no_zeta);
  out.residual = dp.constraints(y, in).residual;
  return out;
}

StageOutcome gradient_stage(const DualProblem& dp, Eigen::VectorXd& y, std::vector<double>& zeta,
                            const FullLoadStructure& st, double delta0, double tol, int max_iter,
                            std::vector<double>& trace, double& step_out) {
  StageOutcome out;
  double scale = delta0;
  Inner in = dp.inner(y, zeta);
  double dval = dp.value(y, zeta, in);
  for (int t = 1; t <= max_iter; ++t) {
    const Constraints c = dp.constraints(y, in);
    double res = c.residual;
    for (int q = 0; q < st.num_slots(); ++q)
      res = std::max(res, std::abs(zeta[q] * (in.x.v[q] - st.ln_max_power[q])));
    out.residual = res;
    trace.push_back(res);
    if (res < tol) break;
    ++out.iterations;
    const Eigen::VectorXd g = dp.gradient(c);
    for (int halvings = 0; halvings < 60; ++halvings) {
      const double delta = scale / std::sqrt(static_cast<double>(t));
      Eigen::VectorXd trial = y - delta * g;
      for (int j = 0; j < dp.J(); ++j) trial[j] = std::max(trial[j], 0.0);
      std::vector<double> tz(zeta);
      for (int q = 0; q < st.num_slots(); ++q)
        tz[q] = std::max(0.0, tz[q] + delta * (in.x.v[q] - st.ln_max_power[q]));
      Inner tin = dp.inner(trial, tz);
      const double tv = dp.value(trial, tz, tin);
      if (std::isfinite(tv) && tv <= dval + 1e-12 * std::max(1.0, std::abs(dval))) {
        y = std::move(trial);
        zeta = std::move(tz);
        in = std::move(tin);
        dval = tv;
        break;
      }
      scale *= 0.5;
    }
    step_out = scale / std::sqrt(static_cast<double>(t));
  }
  return out;
}

double slot_utility(const Scenario& sc, const Association& assoc, const std::vector<double>& load,
                    const std::vector<double>& power) {
  return weighted_utility(sc, assoc, load, power);
}

}  // namespace

double KktResiduals::max() const {
  return std::max({stationarity, feasibility, complementarity, dual_feasibility});
}

double f_of(double x) {
  if (x > 0.0) {
    const double em = std::exp(-x);
    return 1.0 / ((1.0 + em) * (x + std::log1p(em)));
  }
  if (x < -700.0) return 1.0;
  const double e = std::exp(x);
  return e / ((1.0 + e) * std::log1p(e));
}

double f_prime(double x) {
  if (x > 0.0) {
    const double em = std::exp(-x);
    const double l = x + std::log1p(em);
    const double sig = 1.0 / (1.0 + em);
    return sig * sig * (l * em - 1.0) / (l * l);
  }
  if (x < -700.0) return 0.0;
  const double e = std::exp(x);
  const double l = std::log1p(e);
  // log1p(e) - e loses precision for small e; use the series there.
  const double diff = e < 1e-3 ? e * e * (-0.5 + e * (1.0 / 3.0 - e * (0.25 - e * 0.2))) : l - e;
  return e * diff / ((1.0 + e) * (1.0 + e) * l * l);
}

double f_inverse(double y, double tol) {
  if (std::isnan(y)) throw Error(ErrorCode::kBracketFailure, "f_inverse of NaN");
  y = std::clamp(y, 1e-9, 1.0 - 1e-9);
  double lo = -50.0, hi = 50.0;
  for (int k = 0; k < 64 && f_of(lo) < y; ++k) lo *= 2.0;
  for (int k = 0; k < 64 && f_of(hi) > y; ++k) hi *= 2.0;
  if (!(f_of(lo) >= y && f_of(hi) <= y))
    throw Error(ErrorCode::kBracketFailure, "no monotone bracket for f_inverse");
  return bisect_f(y, lo, hi, tol);
}

FullLoadStructure build_structure(const Scenario& sc, const Association& assoc) {
  FullLoadStructure st;
  st.slot_of_bs.assign(sc.num_bs, -1);
  const auto load = derive_load_from_association(assoc);
  for (int i = 0; i < sc.num_bs; ++i)
    if (load[i] > 0.0) {
      st.slot_of_bs[i] = static_cast<int>(st.active.size());
      st.active.push_back(i);
      st.ln_max_power.push_back(std::log(sc.max_power[i]));
    }
  if (st.active.empty()) throw Error(ErrorCode::kEmptyActiveSet, "no BS serves a user");
  st.user_pairs.resize(sc.num_users);
  for (int j = 0; j < sc.num_users; ++j) {
    const int bs = assoc.serving(j);
    const double g_own = sc.gain(bs, j);
    st.serving_slot.push_back(st.slot_of_bs[bs]);
    st.b.push_back(std::log(sc.noise / g_own));
    for (int q = 0; q < st.num_slots(); ++q) {
      if (st.active[q] == bs) continue;
      st.user_pairs[j].push_back(static_cast<int>(st.pair_bs.size()));
      st.pair_bs.push_back(q);
      st.pair_user.push_back(j);
      st.a.push_back(std::log(sc.gain(st.active[q], j) / g_own));
    }
  }
  return st;
}

KktResiduals ldpc_kkt_residuals(const FullLoadStructure& st, std::span<const double> w,
                                const LdpcPrimals& x, const LdpcDuals& d, double T) {
  KktResiduals r;
  const int nj = st.num_users(), na = st.num_slots(), nm = st.num_pairs();
  std::vector<double> e(na, 0.0);
  for (int j = 0; j < nj; ++j) {
    double lam_sum = 0.0, share = std::exp(x.w[j]);
    for (int m : st.user_pairs[j]) {
      lam_sum += d.lambda[m];
      share += std::exp(x.s[m]);
    }
    r.stationarity = std::max(r.stationarity, std::abs(w[j] * f_of(x.u[j]) + d.beta[j] + lam_sum));
    r.stationarity = std::max(r.stationarity, std::abs(d.alpha[j] * std::exp(x.w[j]) + d.beta[j]));
    const double cb = x.w[j] - x.u[j] + x.v[st.serving_slot[j]] - st.b[j];
    r.feasibility = std::max({r.feasibility, share - 1.0, std::abs(cb)});
    r.complementarity = std::max(r.complementarity, std::abs(d.alpha[j] * (share - 1.0)));
    r.dual_feasibility = std::max(r.dual_feasibility, -d.alpha[j]);
    e[st.serving_slot[j]] -= d.beta[j];
  }
  for (int m = 0; m < nm; ++m) {
    const int j = st.pair_user[m];
    r.stationarity = std::max(r.stationarity, std::abs(d.alpha[j] * std::exp(x.s[m]) + d.lambda[m]));
    const double cl = x.s[m] - x.u[j] - x.v[st.pair_bs[m]] + x.v[st.serving_slot[j]] - st.a[m];
    r.feasibility = std::max(r.feasibility, std::abs(cl));
    e[st.pair_bs[m]] += d.lambda[m];
    e[st.serving_slot[j]] -= d.lambda[m];
  }
  for (int q = 0; q < na; ++q) {
    const double lnp = st.ln_max_power[q];
    r.stationarity =
        std::max(r.stationarity, std::abs(e[q] - T / (1.0 + lnp - x.v[q]) - d.zeta[q]));
    r.feasibility = std::max(r.feasibility, x.v[q] - lnp);
    r.complementarity = std::max(r.complementarity, std::abs(d.zeta[q] * (x.v[q] - lnp)));
    r.dual_feasibility = std::max(r.dual_feasibility, -d.zeta[q]);
  }
  return r;
}

double ldpc_objective(const FullLoadStructure& st, std::span<const double> w,
                      const LdpcPrimals& x, double T) {
  double total = 0.0;
  for (int j = 0; j < st.num_users(); ++j) total += w[j] * std::log(softplus(x.u[j]));
  for (int q = 0; q < st.num_slots(); ++q)
    total += T * std::log(1.0 + st.ln_max_power[q] - x.v[q]);
  return total;
}

LdpcResult ldpc_solve(const Scenario& sc, const Association& assoc, const LdpcOptions& opt) {
  const FullLoadStructure st = build_structure(sc, assoc);
  const auto load = derive_load_from_association(assoc);
  std::vector<double> warm = opt.warm_power ? *opt.warm_power : sc.max_power;
  if (static_cast<int>(warm.size()) != sc.num_bs)
    throw Error(ErrorCode::kInvariant, "warm power must have one entry per BS");
  std::vector<double> slot_power(st.num_slots());
  for (int q = 0; q < st.num_slots(); ++q) {
    const int i = st.active[q];
    slot_power[q] = std::clamp(warm[i], sc.max_power[i] * std::exp(-kPowerRange), sc.max_power[i]);
  }
  std::vector<double> warm_full(sc.num_bs, 0.0);
  for (int q = 0; q < st.num_slots(); ++q) warm_full[st.active[q]] = slot_power[q];

  LdpcResult res;
  res.warm_utility = slot_utility(sc, assoc, load, warm_full);
  const bool gradient = opt.step == LdpcStep::kGradient;

  std::vector<double> starts = {opt.continuation_start};
  if (!gradient && opt.continuation)
    for (double s : kFallbackStarts)
      if (std::find(starts.begin(), starts.end(), s) == starts.end()) starts.push_back(s);

  Eigen::VectorXd y;
  std::vector<double> zeta(st.num_slots(), 0.0);
  int budget = opt.max_iter;
  double step = 0.0;
  double best_residual = kInf;
  Eigen::VectorXd best_y;
  for (double start : starts) {
    std::vector<double> stages;
    if (!gradient && opt.continuation)
      for (double t = start; t > opt.T * (1.0 + 1e-9); t *= 0.1) stages.push_back(t);
    stages.push_back(opt.T);
    if (gradient) {
      const int nj = st.num_users();
      y.resize(2 * nj + st.num_pairs());
      y.segment(0, nj).setConstant(1.0);
      y.segment(nj, nj).setConstant(-1.0);
      y.segment(2 * nj, st.num_pairs()).setConstant(-0.1);
    } else {
      y = initial_duals(st, sc, slot_power);
    }
    StageOutcome outcome;
    for (size_t k = 0; k < stages.size() && budget > 0; ++k) {
      const bool last = k + 1 == stages.size();
      const DualProblem dp(st, sc.priorities, stages[k], gradient, opt.inverse_tol);
      if (gradient) {
        outcome = gradient_stage(dp, y, zeta, st, opt.delta0, opt.kkt_tol, budget,
                                 res.residual_trace, step);
      } else {
        outcome = newton_stage(dp, y, last ? opt.kkt_tol : 1e-3, budget, res.residual_trace);
      }
      res.iterations += outcome.iterations;
      budget -= outcome.iterations;
      if (!last && outcome.residual >= 1e-3) break;
      if (last && outcome.residual < best_residual) {
        best_residual = outcome.residual;
        best_y = y;
      }
    }
    if (best_residual < opt.kkt_tol || budget <= 0) break;
  }
  if (best_y.size() > 0) y = best_y;

  const DualProblem dp(st, sc.priorities, opt.T, gradient, opt.inverse_tol);
  const Inner in = dp.inner(y, gradient ? std::span<const double>(zeta) : std::span<const double>());
  res.primals = in.x;
  if (!gradient) zeta = recover_zeta(st, in, opt.T);
  res.duals = unpack(y, st, zeta);
  res.duals.step = step;
  // Users without interferers: alpha from stationarity.
  for (int j = 0; j < st.num_users(); ++j)
    if (st.user_pairs[j].empty())
      res.duals.alpha[j] = std::max(0.0, -res.duals.beta[j] * std::exp(-res.primals.w[j]));
  res.kkt = ldpc_kkt_residuals(st, sc.priorities, res.primals, res.duals, opt.T);
  res.converged = res.kkt.max() <= opt.kkt_tol;

  std::vector<double> power(sc.num_bs, 0.0);
  for (int q = 0; q < st.num_slots(); ++q)
    power[st.active[q]] = std::min(std::exp(res.primals.v[q]), sc.max_power[st.active[q]]);
  res.utility = slot_utility(sc, assoc, load, power);
  if (!(res.utility >= res.warm_utility)) {
    res.rejected = true;
    power = warm_full;
    res.utility = res.warm_utility;
  }
  res.state = make_state(sc, assoc, load, power);
  return res;
}

PowerSolution ldpc_projected_gradient(const Scenario& sc, const Association& assoc,
                                      const LdpcOptions& opt) {
  const FullLoadStructure st = build_structure(sc, assoc);
  const auto load = derive_load_from_association(assoc);
  const int na = st.num_slots(), nj = st.num_users();
  const double T = opt.T;
  std::vector<double> lo(na), hi(na), v(na);
  for (int q = 0; q < na; ++q) {
    hi[q] = st.ln_max_power[q];
    lo[q] = hi[q] - kPowerRange;
    const double p0 = opt.warm_power ? (*opt.warm_power)[st.active[q]] : sc.max_power[st.active[q]];
    v[q] = std::clamp(std::log(std::max(p0, 1e-300)), lo[q], hi[q]);
  }
  auto evaluate = [&](const std::vector<double>& vv, std::vector<double>* grad) {
    double obj = 0.0;
    if (grad) grad->assign(na, 0.0);
    for (int j = 0; j < nj; ++j) {
      const int own = st.serving_slot[j];
      double den = sc.noise;
      for (int m : st.user_pairs[j])
        den += std::exp(vv[st.pair_bs[m]]) * sc.gain(st.active[st.pair_bs[m]], j);
      const double eta = std::exp(vv[own]) * sc.gain(st.active[own], j) / den;
      const double u = std::log(eta);
      obj += sc.priorities[j] * std::log(softplus(u));
      if (grad) {
        const double fu = sc.priorities[j] * f_of(u);
        (*grad)[own] += fu;
        for (int m : st.user_pairs[j]) {
          const int q = st.pair_bs[m];
          (*grad)[q] -= fu * std::exp(vv[q]) * sc.gain(st.active[q], j) / den;
        }
      }
    }
    for (int q = 0; q < na; ++q) {
      obj += T * std::log(1.0 + hi[q] - vv[q]);
      if (grad) (*grad)[q] -= T / (1.0 + hi[q] - vv[q]);
    }
    return obj;
  };
  auto project = [&](std::vector<double>& vv) {
    for (int q = 0; q < na; ++q) vv[q] = std::clamp(vv[q], lo[q], hi[q]);
  };
  PowerSolution out;
  std::vector<double> g, g_prev, v_prev, trial(na);
  double obj = evaluate(v, &g);
  double step = 1.0;
  const int max_iter = std::max(opt.max_iter, 1);
  for (int it = 0; it < max_iter; ++it) {
    double pg = 0.0;
    for (int q = 0; q < na; ++q) pg = std::max(pg, std::abs(std::clamp(v[q] + g[q], lo[q], hi[q]) - v[q]));
    if (pg < 1e-11) {
      out.converged = true;
      break;
    }
    if (!v_prev.empty()) {
      double ss = 0.0, sy = 0.0;
      for (int q = 0; q < na; ++q) {
        const double s = v[q] - v_prev[q], yy = g_prev[q] - g[q];
        ss += s * s;
        sy += s * yy;
      }
      step = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e10) : std::min(step * 2.0, 1e10);
    }
    bool moved = false;
    for (int k = 0; k < 80; ++k) {
      for (int q = 0; q < na; ++q) trial[q] = v[q] + step * g[q];
      project(trial);
      double dec = 0.0;
      for (int q = 0; q < na; ++q) dec += g[q] * (trial[q] - v[q]);
      const double t_obj = evaluate(trial, nullptr);
      if (t_obj >= obj + 1e-4 * dec) {
        v_prev = v;
        g_prev = g;
        v = trial;
        obj = evaluate(v, &g);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    ++out.iterations;
    if (!moved) {
      out.converged = true;
      break;
    }
  }
  out.power.assign(sc.num_bs, 0.0);
  for (int q = 0; q < na; ++q) out.power[st.active[q]] = std::exp(v[q]);
  out.utility = weighted_utility(sc, assoc, load, out.power);
  return out;
}

GridOptimum binary_load_grid_oracle(const Scenario& sc, const Association& assoc,
                                    double grid_step, int power_points) {
  if (sc.num_bs > 3 || sc.num_users > 6)
    throw Error(ErrorCode::kTooLarge, "grid oracle needs I <= 3 and J <= 6");
  if (!(grid_step > 0.0 && grid_step <= 1.0) || power_points < 1)
    throw Error(ErrorCode::kConfig, "invalid grid resolution");
  const int levels = static_cast<int>(std::lround(1.0 / grid_step));
  const int ni = sc.num_bs;
  GridOptimum best{{}, {}, -kInf};
  std::vector<int> dk(ni, 0);
  std::vector<double> d(ni), p(ni);
  while (true) {
    for (int i = 0; i < ni; ++i) d[i] = std::min(1.0, dk[i] * grid_step);
    // Off BSs need only one power level.
    std::vector<int> pk(ni, 1);
    while (true) {
      for (int i = 0; i < ni; ++i) p[i] = sc.max_power[i] * pk[i] / power_points;
      const double u = weighted_utility(sc, assoc, d, p);
      if (u > best.utility) best = {d, p, u};
      int i = 0;
      for (; i < ni; ++i) {
        if (dk[i] > 0 && pk[i] < power_points) {
          ++pk[i];
          break;
        }
        pk[i] = 1;
      }
      if (i == ni) break;
    }
    int i = 0;
    for (; i < ni; ++i) {
      if (dk[i] < levels) {
        ++dk[i];
        break;
      }
      dk[i] = 0;
    }
    if (i == ni) break;
  }
  for (int i = 0; i < ni; ++i)
    if (best.load[i] == 0.0) best.power[i] = 0.0;
  return best;
}

}  // namespace hetnet
