// SPDX-License-Identifier: Apache-2.0
//
// The tradeoff optimization pi(delta) = inf_{P_{Z|W}} J(X;Z) subject to
// D(P_{Y,Z}) <= delta, under full-data / output-perturbation / inference
// observation constraints. Mutual-information privacy with a linear
// distortion constraint is solved by conditional gradient (Frank-Wolfe)
// with an exact linear-minimization oracle; everything else goes through
// the brute-force grid oracle.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "pput/measures.hpp"
#include "pput/probability.hpp"

namespace pput {

enum class ScenarioKind { FullData, OutputPerturbation, Inference, Custom };

// Data model plus the observation constraint P_{W|X,Y}.
class Scenario {
 public:
  // FD: W = (X,Y); OP: W = Y; INF: W = X. z_alphabet defaults to the Y
  // alphabet when not supplied.
  Scenario(JointPmf data, ScenarioKind kind,
           std::optional<Alphabet> z_alphabet = std::nullopt,
           const Tolerances& tol = Tolerances{});
  // Custom observation channel with input alphabet product(X, Y).
  Scenario(JointPmf data, Channel obs, Alphabet z_alphabet,
           const Tolerances& tol = Tolerances{});

  const JointPmf& data() const { return data_; }
  ScenarioKind kind() const { return kind_; }
  const Channel& obs() const { return obs_; }
  const Alphabet& w_alphabet() const { return obs_.output_alphabet(); }
  const Alphabet& z_alphabet() const { return z_; }

 private:
  JointPmf data_;
  ScenarioKind kind_;
  Channel obs_;
  Alphabet z_;
};

enum class SolveStatus { Optimal, Approximate, Infeasible };

struct TradeoffPoint {
  double delta = 0.0;
  double pi = 0.0;          // nats; +inf iff Infeasible
  SolveStatus status = SolveStatus::Optimal;
  double gap = 0.0;         // certificate for Approximate/Optimal
  std::optional<Channel> mechanism;
  std::string status_string() const;
};

struct SolverOptions {
  std::size_t max_iters = 50000;
  double gap_tol = 1e-6;   // nats
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  // Warm start for curve sweeps.
  std::optional<std::vector<std::vector<double>>> init;
};

// Compose scenario + mechanism and report (leakage on (X,Z), distortion on
// (Y,Z)).
std::pair<double, double> evaluate(const Scenario& scenario, const Channel& mechanism,
                                   const PrivacyMeasure& privacy,
                                   const DistortionMeasure& dist,
                                   const Tolerances& tol = Tolerances{});

// Exact minimum of a linear distortion over the channel polytope,
// sum_w min_z c(w,z); any delta below it is infeasible.
double min_distortion(const Scenario& scenario, const DistortionMeasure& dist,
                      const Tolerances& tol = Tolerances{});

// Conditional-gradient solve of min I(X;Z) s.t. linear D <= delta.
// Requires privacy = MutualInformation and a linear distortion measure.
TradeoffPoint solve_point(const Scenario& scenario, const DistortionMeasure& dist,
                          double delta, const SolverOptions& opts = SolverOptions{},
                          const Tolerances& tol = Tolerances{});

// Exhaustive grid over each row's simplex at the given resolution with a
// local refinement pass. Works for any measure pair; returns an upper
// bound on the infimum (status Approximate). Total free parameter count
// |W|*(|Z|-1) must be <= 8.
TradeoffPoint brute_force_oracle(const Scenario& scenario,
                                 const PrivacyMeasure& privacy,
                                 const DistortionMeasure& dist, double delta,
                                 std::size_t grid_resolution,
                                 const Tolerances& tol = Tolerances{});

// Per-point solve with warm starting from the previous point's mechanism;
// pi values are made nonincreasing by a running minimum.
std::vector<TradeoffPoint> tradeoff_curve(const Scenario& scenario,
                                          const DistortionMeasure& dist,
                                          const std::vector<double>& deltas,
                                          const SolverOptions& opts = SolverOptions{},
                                          const Tolerances& tol = Tolerances{});

// P_{Z'|Y}(z|y) = sum_x P_{Z|X}(z|x) P_{X|Y}(x|y). Preserves the (Y,Z)
// joint; never increases leakage for measures satisfying linkage.
Channel project_inf_to_op(const JointPmf& p_xy, const Channel& mech_inf,
                          const Tolerances& tol = Tolerances{});

// P_{Z'|Y}(z|y) = sum_x P_{Z|X,Y}(z|x,y) P_{X|Y}(x|y).
Channel project_fd_to_op(const JointPmf& p_xy, const Channel& mech_fd,
                         const Tolerances& tol = Tolerances{});

}  // namespace pput
