// SPDX-License-Identifier: Apache-2.0
//
// Privacy-leakage functionals J(X;Z) and distortion functionals D(P_{Y,Z}).
// All leakages are extended reals in [0, +inf], in nats.

#pragma once

#include <optional>
#include <set>
#include <utility>

#include "pput/probability.hpp"

namespace pput {

// Symmetric, irreflexive set of label pairs over one alphabet.
class AdjacencyRelation {
 public:
  AdjacencyRelation(Alphabet alphabet,
                    std::vector<std::pair<std::string, std::string>> pairs);

  const Alphabet& alphabet() const { return alphabet_; }
  // Unordered index pairs, stored with first < second.
  const std::set<std::pair<std::size_t, std::size_t>>& pairs() const {
    return pairs_;
  }
  bool empty() const { return pairs_.empty(); }

  // Hamming-distance-1 pairs for equal-length bit-string labels; throws if
  // the labels are not bit strings of one common length.
  static AdjacencyRelation hamming1(const Alphabet& alphabet);
  AdjacencyRelation relabeled(const std::vector<std::size_t>& perm) const;

 private:
  Alphabet alphabet_;
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

enum class PrivacyKind {
  MutualInformation,
  MaximalInformationLeakage,
  SibsonInfinity,
  InformationPrivacy,
  DifferentialPrivacy,
};

struct PrivacyMeasure {
  PrivacyKind kind = PrivacyKind::MutualInformation;
  // Required for DifferentialPrivacy; adjacency over the X alphabet.
  std::optional<AdjacencyRelation> adjacency;

  static PrivacyMeasure mi() { return {PrivacyKind::MutualInformation, {}}; }
  static PrivacyMeasure maximal() {
    return {PrivacyKind::MaximalInformationLeakage, {}};
  }
  static PrivacyMeasure sibson() { return {PrivacyKind::SibsonInfinity, {}}; }
  static PrivacyMeasure ip() { return {PrivacyKind::InformationPrivacy, {}}; }
  static PrivacyMeasure dp(AdjacencyRelation adj) {
    return {PrivacyKind::DifferentialPrivacy, std::move(adj)};
  }
};

enum class DistortionKind {
  ExpectedDistortion,
  ProbabilityOfError,
  ConditionalEntropy,
  WitnessIndicator,
};

struct DistortionMeasure {
  DistortionKind kind = DistortionKind::ProbabilityOfError;
  // ExpectedDistortion: d[y][z] >= 0.
  std::vector<std::vector<double>> d;
  // WitnessIndicator: value is 1 iff the (Y,Z) joint is within `tol` of
  // `target` in max-abs, else 2.
  std::optional<JointPmf> target;
  double witness_tol = 1e-6;

  bool is_linear() const {
    return kind == DistortionKind::ExpectedDistortion ||
           kind == DistortionKind::ProbabilityOfError;
  }

  static DistortionMeasure prob_error() {
    return {DistortionKind::ProbabilityOfError, {}, {}, 0.0};
  }
  static DistortionMeasure expected(std::vector<std::vector<double>> d);
  static DistortionMeasure cond_entropy() {
    return {DistortionKind::ConditionalEntropy, {}, {}, 0.0};
  }
  static DistortionMeasure witness(JointPmf target, double tol = 1e-6);
};

// --- privacy leakages -------------------------------------------------

// I*(X;Z) = H(X) - min_z H(X|Z=z), over z with P_Z(z) > tol.support.
double maximal_information_leakage(const JointPmf& joint,
                                   const Tolerances& tol = Tolerances{});

// I_inf(X;Z) = log sum_z max_{x: P_X(x)>0} P_{Z|X}(z|x).
double sibson_infinity(const JointPmf& joint, const Tolerances& tol = Tolerances{});
double sibson_infinity(const Channel& channel, const Pmf& input,
                       const Tolerances& tol = Tolerances{});

// IP(X;Z) = max_{x,z in support} |ln P(x,z)/(P(x)P(z))|, with |ln 0| = inf.
double information_privacy(const JointPmf& joint, const Tolerances& tol = Tolerances{});
// Maximization over all event pairs (A,B) instead of singletons.
double information_privacy_sets(const JointPmf& joint,
                                const Tolerances& tol = Tolerances{});

// DP(X;Z) over a channel, max over adjacent row pairs and outputs of the
// absolute log-ratio, with |ln(c/0)| = |ln 0| = inf and |ln(0/0)| = 0.
double differential_privacy(const Channel& channel, const AdjacencyRelation& adjacency);

// Dispatch on measure kind; joint over (X,Z). DP extracts the channel
// P_{Z|X} from the joint (requires full-support X marginal).
double leakage(const PrivacyMeasure& measure, const JointPmf& joint,
               const Tolerances& tol = Tolerances{});

// --- distortion -------------------------------------------------------

double distortion(const DistortionMeasure& measure, const JointPmf& yz_joint,
                  const Tolerances& tol = Tolerances{});

}  // namespace pput
