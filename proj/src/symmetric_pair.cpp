// SPDX-License-Identifier: Apache-2.0

#include "pput/symmetric_pair.hpp"

#include <cmath>

namespace pput {

void validate(const SPParams& params) {
  if (params.m < 2) throw std::invalid_argument("SPParams: m must be >= 2");
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw std::invalid_argument("SPParams: p must be in [0,1]");
  }
}

JointPmf sp_joint(const SPParams& params, const Tolerances& tol) {
  validate(params);
  std::size_t m = params.m;
  double diag = (1.0 - params.p) / static_cast<double>(m);
  double off = params.p / static_cast<double>(m * (m - 1));
  Alphabet a = Alphabet::integers(m);
  std::vector<double> t(m * m, off);
  for (std::size_t i = 0; i < m; ++i) t[i * m + i] = diag;
  return JointPmf({a, a}, std::move(t), tol);
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

double r_m(const SPParams& params) {
  validate(params);
  double m = static_cast<double>(params.m);
  double v = std::log(m) - params.p * std::log(m - 1.0) - binary_entropy(params.p);
  return v < 0.0 ? 0.0 : v;
}

ClosedFormResult pi_fd_closed(const SPParams& params, double delta) {
  validate(params);
  if (delta < 0.0) throw std::invalid_argument("pi_fd_closed: delta < 0");
  double edge = 1.0 - 1.0 / static_cast<double>(params.m);
  if (delta <= edge - params.p) {
    return {r_m({params.m, params.p + delta}), "r_m(p+delta)"};
  }
  if (delta <= params.p - edge) {
    return {r_m({params.m, params.p - delta}), "r_m(p-delta)"};
  }
  return {0.0, "perfect-privacy"};
}

Channel fd_optimal_mechanism(const SPParams& params, double delta,
                             const Tolerances& tol) {
  validate(params);
  if (delta < 0.0) throw std::invalid_argument("fd_optimal_mechanism: delta < 0");
  std::size_t m = params.m;
  double p = params.p;
  double edge = 1.0 - 1.0 / static_cast<double>(m);
  Alphabet a = Alphabet::integers(m);
  Alphabet axy = Alphabet::product(a, a);
  std::vector<std::vector<double>> rows(m * m, std::vector<double>(m, 0.0));
  if (p <= edge) {
    // Z = Y + N when X = Y, else Z = Y; Pr(N != 0) = t/(1-p).
    double t = std::min(edge - p, delta);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        auto& row = rows[x * m + y];
        if (x == y) {
          for (std::size_t z = 0; z < m; ++z) {
            row[z] = z == y ? 1.0 - t / (1.0 - p)
                            : t / ((1.0 - p) * static_cast<double>(m - 1));
          }
        } else {
          row[y] = 1.0;
        }
      }
    }
  } else {
    // Z = Y with probability t'/p, else Z = X.
    double tp = std::max(p - delta, edge);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        auto& row = rows[x * m + y];
        row[y] += tp / p;
        row[x] += 1.0 - tp / p;
      }
    }
  }
  return Channel(axy, a, std::move(rows), tol);
}

ClosedFormResult pi_op_closed(const SPParams& params, double delta) {
  validate(params);
  if (delta < 0.0) throw std::invalid_argument("pi_op_closed: delta < 0");
  double m = static_cast<double>(params.m);
  double edge = 1.0 - 1.0 / m;
  if (delta < edge) {
    double q = params.p + delta * (1.0 - params.p * m / (m - 1.0));
    return {r_m({params.m, q}), "r_m(p+delta*(1-pm/(m-1)))"};
  }
  return {0.0, "perfect-privacy"};
}

Channel op_optimal_mechanism(const SPParams& params, double delta,
                             const Tolerances& tol) {
  validate(params);
  if (delta < 0.0) throw std::invalid_argument("op_optimal_mechanism: delta < 0");
  std::size_t m = params.m;
  double edge = 1.0 - 1.0 / static_cast<double>(m);
  double t = std::min(delta, edge);
  Alphabet a = Alphabet::integers(m);
  std::vector<std::vector<double>> rows(m, std::vector<double>(m, t / (m - 1.0)));
  for (std::size_t y = 0; y < m; ++y) rows[y][y] = 1.0 - t;
  return Channel(a, a, std::move(rows), tol);
}

ClosedFormResult pi_inf_closed(const SPParams& params, double delta) {
  validate(params);
  if (delta < 0.0) throw std::invalid_argument("pi_inf_closed: delta < 0");
  double m = static_cast<double>(params.m);
  double edge = 1.0 - 1.0 / m;
  if (delta >= edge) return {0.0, "perfect-privacy"};
  double h = (m - 1.0) * (1.0 - delta);
  // The open interval (delta, h) contains p = 1-1/m whenever delta < 1-1/m,
  // which covers the singular point of t's denominator.
  if (params.p > delta && params.p < h) return {kInf, "infeasible"};
  double t = (delta - params.p) / (1.0 - params.p * m / (m - 1.0));
  // p on the boundary of (delta, h) can push t a few ulps outside [0,1].
  t = std::min(std::max(t, 0.0), 1.0);
  return {r_m({params.m, t}), "r_m(t)"};
}

std::optional<Channel> inf_optimal_mechanism(const SPParams& params, double delta,
                                             const Tolerances& tol) {
  ClosedFormResult res = pi_inf_closed(params, delta);
  if (res.value == kInf) return std::nullopt;
  std::size_t m = params.m;
  double edge = 1.0 - 1.0 / static_cast<double>(m);
  double t;
  if (delta >= edge) {
    t = edge;  // uniform test channel, Pr(X != Z) = 1-1/m <= delta
  } else {
    t = (delta - params.p) /
        (1.0 - params.p * static_cast<double>(m) / (static_cast<double>(m) - 1.0));
  }
  t = std::min(std::max(t, 0.0), 1.0);
  Alphabet a = Alphabet::integers(m);
  std::vector<std::vector<double>> rows(m, std::vector<double>(m, t / (m - 1.0)));
  for (std::size_t x = 0; x < m; ++x) rows[x][x] = 1.0 - t;
  return Channel(a, a, std::move(rows), tol);
}

double fano_g(std::size_t m, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("fano_g: epsilon < 0");
  double edge = 1.0 - 1.0 / static_cast<double>(m);
  if (epsilon <= edge) return r_m({m, epsilon});
  return 0.0;
}

double fano_g_star(std::size_t m, double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("fano_g_star: epsilon outside [0,1]");
  }
  double edge = 1.0 - 1.0 / static_cast<double>(m);
  if (epsilon >= edge) return r_m({m, epsilon});
  return 0.0;
}

namespace {

// Pr(axis_a != axis_b) for two same-alphabet axes of a 3-axis joint.
double disagreement(const JointPmf& xyz, std::size_t axis_a, std::size_t axis_b) {
  JointPmf pair = marginal(xyz, {axis_a, axis_b});
  double agree = 0.0;
  for (std::size_t i = 0; i < pair.axis(0).size(); ++i) agree += pair.at(i, i);
  return 1.0 - agree;
}

}  // namespace

std::pair<double, double> error_relation_check(const SPParams& params,
                                               const Channel& mech_fd,
                                               const Tolerances& tol) {
  validate(params);
  std::size_t m = params.m;
  JointPmf data = sp_joint(params, tol);
  Alphabet axy = Alphabet::product(data.axis(0), data.axis(1));
  if (mech_fd.input_alphabet() != axy) {
    throw std::invalid_argument("error_relation_check: mech input must be (X,Y)");
  }
  JointPmf xyz = push_mechanism(data, Channel::identity(axy), mech_fd, tol);
  double lhs = disagreement(xyz, 1, 2) - disagreement(xyz, 0, 2);
  double sum = 0.0;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      if (x == y) continue;
      const auto& row = mech_fd.row(x * m + y);
      sum += row[x] - row[y];
    }
  }
  double rhs = params.p / static_cast<double>(m * (m - 1)) * sum;
  return {lhs, rhs};
}

std::pair<double, double> markov_error_relation(const SPParams& params,
                                                const Channel& mech,
                                                const Tolerances& tol) {
  validate(params);
  std::size_t m = params.m;
  JointPmf data = sp_joint(params, tol);
  if (mech.input_alphabet() != data.axis(0)) {
    throw std::invalid_argument("markov_error_relation: mech input must be X");
  }
  std::size_t nz = mech.output_alphabet().size();
  // P_{X,Y,Z} = P_{X,Y} P_{Z|X}.
  std::vector<double> t(m * m * nz, 0.0);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      double pxy = data.at(x, y);
      for (std::size_t z = 0; z < nz; ++z) {
        t[(x * m + y) * nz + z] = pxy * mech.row(x)[z];
      }
    }
  }
  JointPmf xyz({data.axis(0), data.axis(1), mech.output_alphabet()}, std::move(t), tol);
  double pr_yz = disagreement(xyz, 1, 2);
  double pr_xz = disagreement(xyz, 0, 2);
  double dm = static_cast<double>(m);
  double predicted = params.p + pr_xz * (1.0 - params.p * dm / (dm - 1.0));
  return {pr_yz, predicted};
}

}  // namespace pput
