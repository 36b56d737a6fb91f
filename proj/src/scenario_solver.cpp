// SPDX-License-Identifier: Apache-2.0

#include "pput/scenario_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>

namespace pput {

namespace {

using Matrix = std::vector<std::vector<double>>;

Channel make_obs(const JointPmf& data, ScenarioKind kind, const Tolerances& tol) {
  const Alphabet& ax = data.axis(0);
  const Alphabet& ay = data.axis(1);
  Alphabet axy = Alphabet::product(ax, ay);
  switch (kind) {
    case ScenarioKind::FullData:
      return Channel::identity(axy);
    case ScenarioKind::OutputPerturbation: {
      Matrix rows(axy.size(), std::vector<double>(ay.size(), 0.0));
      for (std::size_t x = 0; x < ax.size(); ++x)
        for (std::size_t y = 0; y < ay.size(); ++y) rows[x * ay.size() + y][y] = 1.0;
      return Channel(axy, ay, std::move(rows), tol);
    }
    case ScenarioKind::Inference: {
      Matrix rows(axy.size(), std::vector<double>(ax.size(), 0.0));
      for (std::size_t x = 0; x < ax.size(); ++x)
        for (std::size_t y = 0; y < ay.size(); ++y) rows[x * ay.size() + y][x] = 1.0;
      return Channel(axy, ax, std::move(rows), tol);
    }
    case ScenarioKind::Custom:
      break;
  }
  throw std::invalid_argument("Scenario: custom kind requires an obs channel");
}

// P_{X,W}(x,w) and P_{Y,W}(y,w) induced by the data model and observation.
Matrix joint_with_w(const JointPmf& data, const Channel& obs, std::size_t axis) {
  std::size_t nx = data.axis(0).size(), ny = data.axis(1).size();
  std::size_t nw = obs.output_alphabet().size();
  std::size_t n = axis == 0 ? nx : ny;
  Matrix out(n, std::vector<double>(nw, 0.0));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      double pxy = data.at(x, y);
      if (pxy <= 0.0) continue;
      const auto& row = obs.row(x * ny + y);
      std::size_t i = axis == 0 ? x : y;
      for (std::size_t w = 0; w < nw; ++w) out[i][w] += pxy * row[w];
    }
  }
  return out;
}

// Distortion cost table c(w,z) = sum_y d(y,z) P_{Y,W}(y,w) for a linear
// distortion measure.
Matrix linear_cost(const Scenario& scenario, const DistortionMeasure& dist) {
  if (!dist.is_linear()) {
    throw std::invalid_argument("linear distortion measure required");
  }
  std::size_t ny = scenario.data().axis(1).size();
  std::size_t nz = scenario.z_alphabet().size();
  Matrix d(ny, std::vector<double>(nz, 0.0));
  if (dist.kind == DistortionKind::ProbabilityOfError) {
    if (scenario.z_alphabet() != scenario.data().axis(1)) {
      throw std::invalid_argument("prob-error requires Z alphabet = Y alphabet");
    }
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) d[y][z] = y == z ? 0.0 : 1.0;
  } else {
    if (dist.d.size() != ny || dist.d[0].size() != nz) {
      throw std::invalid_argument("distortion matrix shape mismatch");
    }
    d = dist.d;
  }
  Matrix yw = joint_with_w(scenario.data(), scenario.obs(), 1);
  std::size_t nw = scenario.w_alphabet().size();
  Matrix c(nw, std::vector<double>(nz, 0.0));
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t z = 0; z < nz; ++z)
      for (std::size_t y = 0; y < ny; ++y) c[w][z] += d[y][z] * yw[y][w];
  return c;
}

double dot_all(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) s += a[i][j] * b[i][j];
  return s;
}

// Objective machinery for min I(X;Z) over Q = P_{Z|W}.
struct MiObjective {
  Matrix a;                 // P_{X,W}
  std::vector<double> px;   // fixed X marginal
  std::size_t nx, nw, nz;

  Matrix xz_joint(const Matrix& q) const {
    Matrix j(nx, std::vector<double>(nz, 0.0));
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t w = 0; w < nw; ++w) {
        double axw = a[x][w];
        if (axw <= 0.0) continue;
        for (std::size_t z = 0; z < nz; ++z) j[x][z] += axw * q[w][z];
      }
    return j;
  }

  double value(const Matrix& q) const {
    Matrix j = xz_joint(q);
    std::vector<double> pz(nz, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t z = 0; z < nz; ++z) pz[z] += j[x][z];
    double mi = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t z = 0; z < nz; ++z)
        if (j[x][z] > 0.0) mi += j[x][z] * std::log(j[x][z] / (px[x] * pz[z]));
    return mi < 0.0 ? 0.0 : mi;
  }

  // Gradient wrt q(w,z), up to an additive per-row constant (irrelevant to
  // the LMO and to the duality gap, since all feasible points have unit row
  // sums). Zero cells are clamped to keep the log finite.
  Matrix gradient(const Matrix& q) const {
    Matrix j = xz_joint(q);
    std::vector<double> pz(nz, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t z = 0; z < nz; ++z) pz[z] += j[x][z];
    Matrix g(nw, std::vector<double>(nz, 0.0));
    constexpr double kClamp = 1e-18;
    for (std::size_t w = 0; w < nw; ++w) {
      for (std::size_t z = 0; z < nz; ++z) {
        double s = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
          double axw = a[x][w];
          if (axw <= 0.0) continue;
          double ratio = std::max(j[x][z], kClamp * px[x]) /
                         (px[x] * std::max(pz[z], kClamp));
          s += axw * std::log(ratio);
        }
        g[w][z] = s;
      }
    }
    return g;
  }
};

// Exact minimization of <g, q> over row-stochastic q with <c, q> <= delta.
// Parametric in the Lagrange multiplier: per-row greedy selections at the
// optimal multiplier, blended to meet the budget with equality.
Matrix lmo(const Matrix& g, const Matrix& c, double delta) {
  std::size_t nw = g.size(), nz = g[0].size();
  auto greedy = [&](double lam, bool tie_low_cost) {
    Matrix q(nw, std::vector<double>(nz, 0.0));
    for (std::size_t w = 0; w < nw; ++w) {
      double best = kInf;
      for (std::size_t z = 0; z < nz; ++z)
        best = std::min(best, g[w][z] + lam * c[w][z]);
      double band = 1e-12 * (1.0 + std::abs(best));
      std::size_t pick = 0;
      bool first = true;
      for (std::size_t z = 0; z < nz; ++z) {
        if (g[w][z] + lam * c[w][z] > best + band) continue;
        if (first || (tie_low_cost ? c[w][z] < c[w][pick] : c[w][z] > c[w][pick])) {
          pick = z;
          first = false;
        }
      }
      q[w][pick] = 1.0;
    }
    return q;
  };
  Matrix q0 = greedy(0.0, true);
  if (dot_all(c, q0) <= delta) return q0;

  std::vector<double> lambdas;
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t z1 = 0; z1 < nz; ++z1) {
      for (std::size_t z2 = 0; z2 < nz; ++z2) {
        double dc = c[w][z2] - c[w][z1];
        if (dc <= 0.0) continue;
        double lam = (g[w][z1] - g[w][z2]) / dc;
        if (lam > 0.0) lambdas.push_back(lam);
      }
    }
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  // Smallest multiplier whose low-cost greedy meets the budget.
  std::size_t lo = 0, hi = lambdas.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (dot_all(c, greedy(lambdas[mid], true)) <= delta) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  double lam = lo < lambdas.size() ? lambdas[lo]
                                   : (lambdas.empty() ? 1.0 : lambdas.back() * 2.0);
  Matrix qa = greedy(lam, true);
  double ca = dot_all(c, qa);
  if (ca > delta) return qa;  // budget at the polytope's minimum cost; best effort
  Matrix qb = greedy(lam, false);
  double cb = dot_all(c, qb);
  if (cb <= delta) return qb;
  double alpha = (cb - delta) / (cb - ca);
  Matrix q(nw, std::vector<double>(nz, 0.0));
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t z = 0; z < nz; ++z)
      q[w][z] = alpha * qa[w][z] + (1.0 - alpha) * qb[w][z];
  return q;
}

Matrix uniform_rows(std::size_t nw, std::size_t nz) {
  return Matrix(nw, std::vector<double>(nz, 1.0 / static_cast<double>(nz)));
}

Matrix dirichlet_rows(std::mt19937_64& rng, std::size_t nw, std::size_t nz) {
  std::exponential_distribution<double> exp1(1.0);
  Matrix q(nw, std::vector<double>(nz, 0.0));
  for (auto& row : q) {
    double total = 0.0;
    for (double& v : row) {
      v = exp1(rng);
      total += v;
    }
    for (double& v : row) v /= total;
  }
  return q;
}

// Blend a candidate toward the minimum-cost vertex until it meets the
// budget.
Matrix make_feasible(const Matrix& candidate, const Matrix& c, double delta) {
  double cost = dot_all(c, candidate);
  if (cost <= delta) return candidate;
  Matrix v = lmo(c, c, kInf);  // per-row min-cost vertex (budget never binds)
  double cv = dot_all(c, v);
  if (cost - cv <= 0.0) return v;
  double alpha = (delta - cv) / (cost - cv);
  alpha = std::max(0.0, std::min(1.0, alpha));
  Matrix q = v;
  for (std::size_t w = 0; w < q.size(); ++w)
    for (std::size_t z = 0; z < q[w].size(); ++z)
      q[w][z] = alpha * candidate[w][z] + (1.0 - alpha) * v[w][z];
  return q;
}

struct FwResult {
  Matrix q;
  double value;
  double gap;
};

FwResult frank_wolfe(const MiObjective& obj, const Matrix& c, double delta,
                     Matrix q, std::size_t max_iters, double gap_tol) {
  double gap = kInf;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    Matrix g = obj.gradient(q);
    Matrix s = lmo(g, c, delta);
    gap = 0.0;
    for (std::size_t w = 0; w < q.size(); ++w)
      for (std::size_t z = 0; z < q[w].size(); ++z)
        gap += g[w][z] * (q[w][z] - s[w][z]);
    if (gap <= gap_tol) break;

    // Exact line search: bisect the directional derivative (convex in gamma).
    Matrix d = s;
    for (std::size_t w = 0; w < q.size(); ++w)
      for (std::size_t z = 0; z < q[w].size(); ++z) d[w][z] -= q[w][z];
    auto blend = [&](double gamma) {
      Matrix r = q;
      for (std::size_t w = 0; w < q.size(); ++w)
        for (std::size_t z = 0; z < q[w].size(); ++z) r[w][z] += gamma * d[w][z];
      return r;
    };
    auto slope = [&](double gamma) {
      Matrix gg = obj.gradient(blend(gamma));
      return dot_all(gg, d);
    };
    double gamma;
    if (slope(1.0) <= 0.0) {
      gamma = 1.0;
    } else {
      double a = 0.0, b = 1.0;
      for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (a + b);
        (slope(mid) <= 0.0 ? a : b) = mid;
      }
      gamma = 0.5 * (a + b);
    }
    if (gamma <= 0.0) break;
    q = blend(gamma);
  }
  return FwResult{q, obj.value(q), std::max(gap, 0.0)};
}

Channel matrix_to_channel(const Matrix& q, const Alphabet& in, const Alphabet& out,
                          const Tolerances& tol) {
  return Channel(in, out, q, tol);
}

// (Y,Z) joint from the Y-W table and mechanism, as a plain matrix.
Matrix yz_matrix(const Matrix& yw, const Matrix& q) {
  std::size_t ny = yw.size(), nw = q.size(), nz = q[0].size();
  Matrix out(ny, std::vector<double>(nz, 0.0));
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t w = 0; w < nw; ++w) {
      if (yw[y][w] <= 0.0) continue;
      for (std::size_t z = 0; z < nz; ++z) out[y][z] += yw[y][w] * q[w][z];
    }
  return out;
}

JointPmf matrix_to_joint(const Matrix& m, const Alphabet& a, const Alphabet& b,
                         const Tolerances& tol) {
  std::vector<double> flat;
  flat.reserve(m.size() * m[0].size());
  for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
  return JointPmf({a, b}, std::move(flat), tol);
}

}  // namespace

Scenario::Scenario(JointPmf data, ScenarioKind kind,
                   std::optional<Alphabet> z_alphabet, const Tolerances& tol)
    : data_(std::move(data)), kind_(kind), obs_(make_obs(data_, kind, tol)),
      z_(z_alphabet ? std::move(*z_alphabet) : data_.axis(1)) {
  if (z_.size() == 0) throw std::invalid_argument("Scenario: empty Z alphabet");
}

Scenario::Scenario(JointPmf data, Channel obs, Alphabet z_alphabet,
                   const Tolerances& tol)
    : data_(std::move(data)), kind_(ScenarioKind::Custom), obs_(std::move(obs)),
      z_(std::move(z_alphabet)) {
  if (obs_.input_alphabet() != Alphabet::product(data_.axis(0), data_.axis(1))) {
    throw std::invalid_argument("Scenario: obs input must be product(X,Y)");
  }
  (void)tol;
}

std::string TradeoffPoint::status_string() const {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Approximate: return "approximate";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

std::pair<double, double> evaluate(const Scenario& scenario, const Channel& mechanism,
                                   const PrivacyMeasure& privacy,
                                   const DistortionMeasure& dist,
                                   const Tolerances& tol) {
  if (mechanism.input_alphabet() != scenario.w_alphabet()) {
    throw std::invalid_argument("evaluate: mechanism input must be W");
  }
  JointPmf xyz = push_mechanism(scenario.data(), scenario.obs(), mechanism, tol);
  double j = leakage(privacy, marginal(xyz, {0, 2}), tol);
  double d = distortion(dist, marginal(xyz, {1, 2}), tol);
  return {j, d};
}

double min_distortion(const Scenario& scenario, const DistortionMeasure& dist,
                      const Tolerances& tol) {
  (void)tol;
  Matrix c = linear_cost(scenario, dist);
  double total = 0.0;
  for (const auto& row : c) total += *std::min_element(row.begin(), row.end());
  return total;
}

TradeoffPoint solve_point(const Scenario& scenario, const DistortionMeasure& dist,
                          double delta, const SolverOptions& opts,
                          const Tolerances& tol) {
  Matrix c = linear_cost(scenario, dist);
  double mind = 0.0;
  for (const auto& row : c) mind += *std::min_element(row.begin(), row.end());
  if (delta < mind - 1e-12) {
    return TradeoffPoint{delta, kInf, SolveStatus::Infeasible, 0.0, std::nullopt};
  }

  std::size_t nx = scenario.data().axis(0).size();
  std::size_t nw = scenario.w_alphabet().size();
  std::size_t nz = scenario.z_alphabet().size();
  MiObjective obj{joint_with_w(scenario.data(), scenario.obs(), 0),
                  marginal_pmf(scenario.data(), 0).probs(), nx, nw, nz};

  std::mt19937_64 rng(opts.seed);
  std::optional<FwResult> best;
  std::size_t runs = std::max<std::size_t>(opts.restarts, 1);
  std::size_t iters = std::max<std::size_t>(opts.max_iters / runs, 100);
  for (std::size_t run = 0; run < runs; ++run) {
    Matrix start;
    if (run == 0 && opts.init) {
      start = *opts.init;
    } else if (run == 0 || (run == 1 && opts.init)) {
      start = uniform_rows(nw, nz);
    } else {
      start = dirichlet_rows(rng, nw, nz);
    }
    FwResult r = frank_wolfe(obj, c, delta, make_feasible(start, c, delta),
                             iters, opts.gap_tol);
    if (!best || r.value < best->value) best = std::move(r);
  }
  SolveStatus status =
      best->gap <= opts.gap_tol ? SolveStatus::Optimal : SolveStatus::Approximate;
  Channel mech = matrix_to_channel(best->q, scenario.w_alphabet(),
                                   scenario.z_alphabet(), tol);
  return TradeoffPoint{delta, best->value, status, best->gap, std::move(mech)};
}

TradeoffPoint brute_force_oracle(const Scenario& scenario,
                                 const PrivacyMeasure& privacy,
                                 const DistortionMeasure& dist, double delta,
                                 std::size_t grid_resolution,
                                 const Tolerances& tol) {
  std::size_t nw = scenario.w_alphabet().size();
  std::size_t nz = scenario.z_alphabet().size();
  if (nw * (nz - 1) > 8) {
    throw std::invalid_argument("brute_force_oracle: too many channel parameters");
  }
  if (grid_resolution == 0) throw std::invalid_argument("brute_force_oracle: resolution");

  Matrix a = joint_with_w(scenario.data(), scenario.obs(), 0);
  Matrix yw = joint_with_w(scenario.data(), scenario.obs(), 1);
  const Alphabet& ax = scenario.data().axis(0);
  const Alphabet& ay = scenario.data().axis(1);
  const Alphabet& az = scenario.z_alphabet();
  std::size_t nx = ax.size();
  MiObjective xz{a, marginal_pmf(scenario.data(), 0).probs(), nx, nw, nz};

  auto score = [&](const Matrix& q) -> std::pair<double, double> {
    JointPmf yz = matrix_to_joint(yz_matrix(yw, q), ay, az, tol);
    double d = distortion(dist, yz, tol);
    JointPmf xzj = matrix_to_joint(xz.xz_joint(q), ax, az, tol);
    return {leakage(privacy, xzj, tol), d};
  };

  // All compositions of k into nz parts, as simplex rows.
  std::size_t k = grid_resolution;
  std::vector<std::vector<double>> row_points;
  std::vector<double> row(nz, 0.0);
  std::function<void(std::size_t, std::size_t)> gen = [&](std::size_t pos,
                                                          std::size_t left) {
    if (pos == nz - 1) {
      row[pos] = static_cast<double>(left) / static_cast<double>(k);
      row_points.push_back(row);
      return;
    }
    for (std::size_t take = 0; take <= left; ++take) {
      row[pos] = static_cast<double>(take) / static_cast<double>(k);
      gen(pos + 1, left - take);
    }
  };
  gen(0, k);

  std::optional<Matrix> best_q;
  double best_j = kInf;
  Matrix q(nw);
  std::function<void(std::size_t)> sweep = [&](std::size_t w) {
    if (w == nw) {
      auto [j, d] = score(q);
      if (d <= delta + 1e-12 && j < best_j) {
        best_j = j;
        best_q = q;
      }
      return;
    }
    for (const auto& rp : row_points) {
      q[w] = rp;
      sweep(w + 1);
    }
  };
  sweep(0);

  if (!best_q) {
    return TradeoffPoint{delta, kInf, SolveStatus::Infeasible, 0.0, std::nullopt};
  }

  // Local refinement: coordinate-pair hill climbing at finer steps.
  for (double step : {0.5 / k, 0.1 / k, 0.02 / k}) {
    bool improved = true;
    std::size_t guard = 0;
    while (improved && guard++ < 200) {
      improved = false;
      for (std::size_t w = 0; w < nw; ++w) {
        for (std::size_t i = 0; i < nz; ++i) {
          for (std::size_t j2 = 0; j2 < nz; ++j2) {
            if (i == j2 || (*best_q)[w][j2] < step) continue;
            Matrix trial = *best_q;
            trial[w][i] += step;
            trial[w][j2] -= step;
            auto [j, d] = score(trial);
            if (d <= delta + 1e-12 && j < best_j - 1e-15) {
              best_j = j;
              best_q = std::move(trial);
              improved = true;
            }
          }
        }
      }
    }
  }

  Channel mech = matrix_to_channel(*best_q, scenario.w_alphabet(), az, tol);
  double nominal_gap = 1.0 / static_cast<double>(k);
  return TradeoffPoint{delta, best_j, SolveStatus::Approximate, nominal_gap,
                       std::move(mech)};
}

std::vector<TradeoffPoint> tradeoff_curve(const Scenario& scenario,
                                          const DistortionMeasure& dist,
                                          const std::vector<double>& deltas,
                                          const SolverOptions& opts,
                                          const Tolerances& tol) {
  if (!std::is_sorted(deltas.begin(), deltas.end())) {
    throw std::invalid_argument("tradeoff_curve: deltas must be ascending");
  }
  std::vector<TradeoffPoint> points;
  SolverOptions local = opts;
  for (double delta : deltas) {
    TradeoffPoint pt = solve_point(scenario, dist, delta, local, tol);
    if (pt.mechanism) {
      Matrix warm;
      for (std::size_t w = 0; w < scenario.w_alphabet().size(); ++w)
        warm.push_back(pt.mechanism->row(w));
      local.init = std::move(warm);
    }
    points.push_back(std::move(pt));
  }
  // Enforce monotone nonincreasing pi by a running minimum.
  double run_min = kInf;
  for (auto& pt : points) {
    if (pt.status == SolveStatus::Infeasible) continue;
    if (pt.pi > run_min + opts.gap_tol) {
      std::cerr << "tradeoff_curve: raw value inversion at delta=" << pt.delta
                << " (" << pt.pi << " > " << run_min << ")\n";
    }
    run_min = std::min(run_min, pt.pi);
    pt.pi = run_min;
  }
  return points;
}

Channel project_inf_to_op(const JointPmf& p_xy, const Channel& mech_inf,
                          const Tolerances& tol) {
  if (mech_inf.input_alphabet() != p_xy.axis(0)) {
    throw std::invalid_argument("project_inf_to_op: mechanism input must be X");
  }
  Channel x_given_y = condition(p_xy, 1, tol);
  return mech_inf.compose_after(x_given_y, tol);
}

Channel project_fd_to_op(const JointPmf& p_xy, const Channel& mech_fd,
                         const Tolerances& tol) {
  const Alphabet& ax = p_xy.axis(0);
  const Alphabet& ay = p_xy.axis(1);
  if (mech_fd.input_alphabet() != Alphabet::product(ax, ay)) {
    throw std::invalid_argument("project_fd_to_op: mechanism input must be (X,Y)");
  }
  Channel x_given_y = condition(p_xy, 1, tol);
  std::size_t nz = mech_fd.output_alphabet().size();
  std::vector<std::vector<double>> rows(ay.size(), std::vector<double>(nz, 0.0));
  std::vector<bool> present(ay.size(), true);
  for (std::size_t y = 0; y < ay.size(); ++y) {
    if (!x_given_y.row_present(y)) {
      present[y] = false;
      continue;
    }
    for (std::size_t x = 0; x < ax.size(); ++x) {
      double pxy = x_given_y.row(y)[x];
      if (pxy <= 0.0) continue;
      const auto& mrow = mech_fd.row(x * ay.size() + y);
      for (std::size_t z = 0; z < nz; ++z) rows[y][z] += pxy * mrow[z];
    }
  }
  return Channel(ay, mech_fd.output_alphabet(), std::move(rows), std::move(present),
                 tol);
}

}  // namespace pput
