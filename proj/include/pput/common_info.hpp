// SPDX-License-Identifier: Apache-2.0
//
// Gacs-Korner common part of a joint distribution via connected components
// of the support bipartite graph, the C(X;Y) = I(X;Y) equality test, and
// the constructive witnesses separating full-data from output-perturbation
// mechanisms.

#pragma once

#include <array>
#include <optional>

#include "pput/probability.hpp"

namespace pput {

// Labeling of the common part U: one component id per X symbol and per Y
// symbol, plus the distribution of U. Symbols with zero marginal get the
// reserved null component (last label, "null").
struct CommonPart {
  Alphabet u_alphabet;
  std::vector<std::size_t> u_of_x;  // X index -> U index
  std::vector<std::size_t> u_of_y;  // Y index -> U index
  Pmf p_u;
  bool has_null_component = false;
};

struct GapWitness {
  std::size_t x0, x1, y0, y1;
};

struct BinaryReleaseParams {
  double s = 0.5;
  double t = 0.0;  // 0 means "half the allowed upper bound"
};

CommonPart common_part(const JointPmf& p_xy, const Tolerances& tol = Tolerances{});

// C(X;Y) = H(U), nats.
double gk_common_information(const JointPmf& p_xy,
                             const Tolerances& tol = Tolerances{});

// True iff X -> U -> Y is a Markov chain, i.e. I(X;Y|U) <= tol.info.
bool ci_equals_mi(const JointPmf& p_xy, const Tolerances& tol = Tolerances{});

// Lexicographically first (x0, x1, y0, y1) with y0 != y1,
// P(x0,y0) > 0, P(x0,y1) > 0 and P_{X|Y}(x1|y0) != P_{X|Y}(x1|y1);
// absent iff C(X;Y) = I(X;Y).
std::optional<GapWitness> strict_gap_witness(const JointPmf& p_xy,
                                            const Tolerances& tol = Tolerances{});

struct BinaryReleaseConstruction {
  Channel mech_fd;       // P_{Z|X,Y}, binary Z, input product(X,Y)
  Channel mech_op;       // P_{Z'|Y} := P_{Z|Y}
  GapWitness witness;
  double s, t;
};

// The binary-Z construction that makes Z independent of X under the full
// data mechanism while the induced output perturbation mechanism P_{Z'|Y}
// leaks about X. Requires C(X;Y) != I(X;Y).
BinaryReleaseConstruction binary_release_construction(const JointPmf& p_xy,
                                       const BinaryReleaseParams& params = BinaryReleaseParams{},
                                       const Tolerances& tol = Tolerances{});

}  // namespace pput
