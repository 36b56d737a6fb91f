// SPDX-License-Identifier: Apache-2.0

#include "pput/axioms.hpp"

#include <cmath>
#include <random>

namespace pput {

namespace {

AxiomReport make_report(const PrivacyMeasure& measure, InequalityKind kind,
                        double lhs, double rhs) {
  bool holds;
  double margin;
  if (rhs == kInf) {
    holds = true;
    margin = lhs == kInf ? 0.0 : kInf;
  } else if (lhs == kInf) {
    holds = false;
    margin = -kInf;
  } else {
    margin = rhs - lhs;
    holds = margin >= -kAxiomSlack;
  }
  return AxiomReport{measure.kind, kind, lhs, rhs, holds, margin};
}

// DP needs channel structure; derive P_{B|A} from the (A,B) marginal and
// compose P_{C|A} = P_{C|B} o P_{B|A} using the provenance channel.
struct DpChannels {
  Channel b_given_a;
  Channel c_given_a;
};

DpChannels dp_channels(const MarkovTriple& t, const Tolerances& tol) {
  if (!t.c_given_b) {
    throw std::invalid_argument(
        "DP axiom check requires the triple's P_{C|B} provenance channel");
  }
  Channel b_given_a = condition(marginal(t.joint, {0, 1}), 0, tol);
  Channel c_given_a = t.c_given_b->compose_after(b_given_a, tol);
  return {std::move(b_given_a), std::move(c_given_a)};
}

std::vector<double> dirichlet1(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (double& x : v) {
    x = exp1(rng);
    total += x;
  }
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

AxiomReport check_post_processing(const PrivacyMeasure& measure,
                                  const MarkovTriple& t, const Tolerances& tol) {
  if (measure.kind == PrivacyKind::DifferentialPrivacy) {
    if (!measure.adjacency) {
      throw std::invalid_argument("check_post_processing: DP without adjacency");
    }
    DpChannels ch = dp_channels(t, tol);
    double rhs = differential_privacy(ch.b_given_a, *measure.adjacency);
    double lhs = differential_privacy(ch.c_given_a, *measure.adjacency);
    return make_report(measure, InequalityKind::PostProcessing, lhs, rhs);
  }
  double rhs = leakage(measure, marginal(t.joint, {0, 1}), tol);
  double lhs = leakage(measure, marginal(t.joint, {0, 2}), tol);
  return make_report(measure, InequalityKind::PostProcessing, lhs, rhs);
}

AxiomReport check_linkage(const PrivacyMeasure& measure, const MarkovTriple& t,
                          const PrivacyMeasure& measure_b, const Tolerances& tol) {
  if (measure.kind == PrivacyKind::DifferentialPrivacy) {
    if (!measure.adjacency || !measure_b.adjacency) {
      throw std::invalid_argument("check_linkage: DP without adjacency");
    }
    if (!t.c_given_b) {
      throw std::invalid_argument(
          "check_linkage: DP requires the triple's P_{C|B} provenance channel");
    }
    DpChannels ch = dp_channels(t, tol);
    double rhs = differential_privacy(*t.c_given_b, *measure_b.adjacency);
    double lhs = differential_privacy(ch.c_given_a, *measure.adjacency);
    return make_report(measure, InequalityKind::Linkage, lhs, rhs);
  }
  double rhs = leakage(measure_b, marginal(t.joint, {1, 2}), tol);
  double lhs = leakage(measure, marginal(t.joint, {0, 2}), tol);
  return make_report(measure, InequalityKind::Linkage, lhs, rhs);
}

AxiomReport check_linkage(const PrivacyMeasure& measure, const MarkovTriple& t,
                          const Tolerances& tol) {
  PrivacyMeasure measure_b = measure;
  if (measure.kind == PrivacyKind::DifferentialPrivacy) {
    measure_b.adjacency = AdjacencyRelation::hamming1(t.joint.axis(1));
  }
  return check_linkage(measure, t, measure_b, tol);
}

MarkovTriple make_markov_triple(JointPmf p_ab, Channel c_given_b,
                                const Tolerances& tol) {
  if (p_ab.rank() != 2 || p_ab.axis(1) != c_given_b.input_alphabet()) {
    throw std::invalid_argument("make_markov_triple: alphabet mismatch");
  }
  std::size_t na = p_ab.axis(0).size(), nb = p_ab.axis(1).size();
  std::size_t nc = c_given_b.output_alphabet().size();
  std::vector<double> t(na * nb * nc, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      double pab = p_ab.at(a, b);
      if (pab <= 0.0) continue;
      for (std::size_t c = 0; c < nc; ++c) {
        t[(a * nb + b) * nc + c] = pab * c_given_b.row(b)[c];
      }
    }
  }
  JointPmf joint({p_ab.axis(0), p_ab.axis(1), c_given_b.output_alphabet()},
                 std::move(t), tol);
  return MarkovTriple{std::move(joint), std::move(p_ab), std::move(c_given_b)};
}

MarkovTriple linkage_counterexample(const Tolerances& tol) {
  Alphabet a_alpha({"0", "1", "2"});
  Alphabet b_alpha({"0", "1"});
  // B = 1{A != 0}, C = B.
  std::vector<double> ab = {0.5, 0.0, 0.0, 0.25, 0.0, 0.25};
  JointPmf p_ab({a_alpha, b_alpha}, std::move(ab), tol);
  return make_markov_triple(std::move(p_ab), Channel::identity(b_alpha), tol);
}

DpCounterexample dp_counterexample(double q, double r, double s,
                                   const Tolerances& tol) {
  if (!(0.0 < q && q < r && r < s && s < 1.0)) {
    throw std::invalid_argument("dp_counterexample: need 0 < q < r < s < 1");
  }
  Alphabet bits2({"00", "01", "10", "11"});
  Alphabet c_alpha({"0", "1"});
  Pmf p_a = Pmf::uniform(bits2);
  // B1 = B2 = A1 or A2.
  std::vector<std::vector<double>> or_rows = {
      {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}};
  Channel b_given_a(bits2, bits2, std::move(or_rows), tol);
  std::vector<std::vector<double>> c_rows = {
      {1 - q, q}, {1 - r, r}, {1 - r, r}, {1 - s, s}};
  Channel c_given_b(bits2, c_alpha, std::move(c_rows), tol);

  // P_{A,B}(a,b) = P_A(a) 1{b = or(a)}.
  std::vector<double> ab(16, 0.0);
  for (std::size_t a = 0; a < 4; ++a) {
    std::size_t b = a == 0 ? 0 : 3;
    ab[a * 4 + b] = p_a[a];
  }
  JointPmf p_ab({bits2, bits2}, std::move(ab), tol);
  MarkovTriple triple = make_markov_triple(std::move(p_ab), c_given_b, tol);
  return DpCounterexample{std::move(p_a), std::move(b_given_a),
                          std::move(c_given_b), std::move(triple)};
}

MarkovTriple random_markov_triple(std::uint64_t seed, const Alphabet& a,
                                  const Alphabet& b, const Alphabet& c,
                                  const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  std::vector<double> ab = dirichlet1(rng, a.size() * b.size());
  JointPmf p_ab({a, b}, std::move(ab), tol);
  std::vector<std::vector<double>> rows(b.size());
  for (auto& row : rows) row = dirichlet1(rng, c.size());
  Channel c_given_b(b, c, std::move(rows), tol);
  return make_markov_triple(std::move(p_ab), std::move(c_given_b), tol);
}

MarkovTriple random_markov_triple(std::uint64_t seed, std::size_t na,
                                  std::size_t nb, std::size_t nc,
                                  const Tolerances& tol) {
  return random_markov_triple(seed, Alphabet::integers(na), Alphabet::integers(nb),
                              Alphabet::integers(nc), tol);
}

bool check_isomorphism_invariance(const PrivacyMeasure& measure,
                                  const JointPmf& joint,
                                  const std::vector<std::size_t>& x_perm,
                                  const std::vector<std::size_t>& z_perm,
                                  const Tolerances& tol) {
  std::size_t nx = joint.axis(0).size(), nz = joint.axis(1).size();
  if (x_perm.size() != nx || z_perm.size() != nz) {
    throw std::invalid_argument("check_isomorphism_invariance: permutation size");
  }
  auto is_bijection = [](const std::vector<std::size_t>& p) {
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i : p) {
      if (i >= p.size() || seen[i]) return false;
      seen[i] = true;
    }
    return true;
  };
  if (!is_bijection(x_perm) || !is_bijection(z_perm)) {
    throw std::invalid_argument("check_isomorphism_invariance: not a bijection");
  }
  std::vector<std::string> xl(nx), zl(nz);
  for (std::size_t i = 0; i < nx; ++i) xl[x_perm[i]] = joint.axis(0).label(i);
  for (std::size_t i = 0; i < nz; ++i) zl[z_perm[i]] = joint.axis(1).label(i);
  std::vector<double> t(nx * nz);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t z = 0; z < nz; ++z) {
      t[x_perm[x] * nz + z_perm[z]] = joint.at(x, z);
    }
  }
  JointPmf permuted({Alphabet(xl), Alphabet(zl)}, std::move(t), tol);
  PrivacyMeasure permuted_measure = measure;
  if (measure.kind == PrivacyKind::DifferentialPrivacy && measure.adjacency) {
    permuted_measure.adjacency = measure.adjacency->relabeled(x_perm);
  }
  double a = leakage(measure, joint, tol);
  double b = leakage(permuted_measure, permuted, tol);
  if (a == kInf || b == kInf) return a == b;
  return std::abs(a - b) <= 1e-10;
}

}  // namespace pput
