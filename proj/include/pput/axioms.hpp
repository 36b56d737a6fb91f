// SPDX-License-Identifier: Apache-2.0
//
// Executable checks of the post-processing and linkage inequalities for
// privacy measures over Markov triples, plus the two built-in
// counterexample constructions and a seeded random-triple generator.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pput/measures.hpp"

namespace pput {

// Joint over (A,B,C) with I(A;C|B) ~ 0 by construction.
struct MarkovTriple {
  JointPmf joint;
  // Construction record, when built from P_{A,B} and P_{C|B}.
  std::optional<JointPmf> p_ab;
  std::optional<Channel> c_given_b;
};

enum class InequalityKind { PostProcessing, Linkage };

struct AxiomReport {
  PrivacyKind measure;
  InequalityKind inequality;
  double lhs;  // J(A;C)
  double rhs;  // J(A;B) for post-processing, J(B;C) for linkage
  bool holds;  // rhs - lhs >= -eps_axiom
  double margin;  // rhs - lhs
};

constexpr double kAxiomSlack = 1e-9;

// Def. 1: J(A;B) >= J(A;C). For DP the channels P_{B|A} and the composed
// P_{C|A} are compared; adjacency is taken over the A alphabet.
AxiomReport check_post_processing(const PrivacyMeasure& measure,
                                  const MarkovTriple& triple,
                                  const Tolerances& tol = Tolerances{});

// Def. 2: J(B;C) >= J(A;C). For DP, J(B;C) uses the given adjacency over B
// (or Hamming-1 by default) and J(A;C) the measure's adjacency over A.
AxiomReport check_linkage(const PrivacyMeasure& measure, const MarkovTriple& triple,
                          const PrivacyMeasure& measure_b,
                          const Tolerances& tol = Tolerances{});
AxiomReport check_linkage(const PrivacyMeasure& measure, const MarkovTriple& triple,
                          const Tolerances& tol = Tolerances{});

// A ternary (1/2, 1/4, 1/4); B = 1{A != 0}; C = B. Violates linkage for
// the maximal-information-leakage measure.
MarkovTriple linkage_counterexample(const Tolerances& tol = Tolerances{});

struct DpCounterexample {
  Pmf p_a;            // over {0,1}^2, uniform
  Channel b_given_a;  // deterministic OR: B1 = B2 = A1 or A2
  Channel c_given_b;  // binary release with parameters (q, r, s)
  MarkovTriple triple;
};

// The mechanism family with 0 < q < r < s < 1 for which DP(A;C) > DP(B;C).
DpCounterexample dp_counterexample(double q, double r, double s,
                                   const Tolerances& tol = Tolerances{});

// Compose P_{A,B} with P_{C|B} into a Markov triple, keeping provenance.
MarkovTriple make_markov_triple(JointPmf p_ab, Channel c_given_b,
                                const Tolerances& tol = Tolerances{});

// P_{A,B} and rows of P_{C|B} sampled from Dirichlet(1); deterministic
// given the seed.
MarkovTriple random_markov_triple(std::uint64_t seed, std::size_t na,
                                  std::size_t nb, std::size_t nc,
                                  const Tolerances& tol = Tolerances{});
MarkovTriple random_markov_triple(std::uint64_t seed, const Alphabet& a,
                                  const Alphabet& b, const Alphabet& c,
                                  const Tolerances& tol = Tolerances{});

// |J(joint) - J(permuted joint)| <= 1e-10, with DP adjacency permuted
// consistently. Permutations map old index -> new index per axis.
bool check_isomorphism_invariance(const PrivacyMeasure& measure,
                                  const JointPmf& joint,
                                  const std::vector<std::size_t>& x_perm,
                                  const std::vector<std::size_t>& z_perm,
                                  const Tolerances& tol = Tolerances{});

}  // namespace pput
