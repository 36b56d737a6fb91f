// SPDX-License-Identifier: Apache-2.0
//
// The SP(m,p) symmetric-pair data model and its closed-form tradeoffs:
// r_m, the full-data / output-perturbation / inference frontiers, the
// optimal mechanisms achieving them, the Fano-style envelopes, and the
// error-relation identities used as oracles in the test suites.

#pragma once

#include <string>
#include <utility>

#include "pput/probability.hpp"

namespace pput {

struct SPParams {
  std::size_t m = 2;
  double p = 0.0;
};

struct ClosedFormResult {
  double value = 0.0;      // nats; may be +inf
  std::string branch;      // which closed-form case fired
};

void validate(const SPParams& params);

// The SP(m,p) joint: (1-p)/m on the diagonal, p/(m(m-1)) off it.
JointPmf sp_joint(const SPParams& params, const Tolerances& tol = Tolerances{});

// r_m(p) = log m - p log(m-1) - h2(p), nats. I(X;Y) of SP(m,p).
double r_m(const SPParams& params);
double binary_entropy(double p);

// Full data frontier and its achieving mechanism P_{Z|X,Y} (input
// alphabet product(X,Y), output alphabet = Y labels).
ClosedFormResult pi_fd_closed(const SPParams& params, double delta);
Channel fd_optimal_mechanism(const SPParams& params, double delta,
                             const Tolerances& tol = Tolerances{});

// Output perturbation frontier and its p-independent mechanism P_{Z|Y}.
ClosedFormResult pi_op_closed(const SPParams& params, double delta);
Channel op_optimal_mechanism(const SPParams& params, double delta,
                             const Tolerances& tol = Tolerances{});

// Inference frontier. The mechanism is absent exactly when the frontier
// is +inf (empty feasible set).
ClosedFormResult pi_inf_closed(const SPParams& params, double delta);
std::optional<Channel> inf_optimal_mechanism(const SPParams& params, double delta,
                                             const Tolerances& tol = Tolerances{});

// Fano envelopes: g is the min-information frontier under Pr(X!=Z) <= eps,
// g* under Pr(X!=Z) >= eps.
double fano_g(std::size_t m, double epsilon);
double fano_g_star(std::size_t m, double epsilon);

// Pr(Y!=Z) - Pr(X!=Z) computed directly (lhs) and via the per-symbol sum
// identity (rhs) for a full-data mechanism P_{Z|X,Y}.
std::pair<double, double> error_relation_check(const SPParams& params,
                                               const Channel& mech_fd,
                                               const Tolerances& tol = Tolerances{});

// For an inference mechanism P_{Z|X} (Y -> X -> Z): measured Pr(Y!=Z) and
// the affine prediction p + Pr(X!=Z)(1 - pm/(m-1)).
std::pair<double, double> markov_error_relation(const SPParams& params,
                                                const Channel& mech,
                                                const Tolerances& tol = Tolerances{});

}  // namespace pput
