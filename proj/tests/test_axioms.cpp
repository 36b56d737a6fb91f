// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>

#include "doctest.h"
#include "pput/axioms.hpp"

using namespace pput;

TEST_CASE("first counterexample instance") {
  MarkovTriple t = linkage_counterexample();
  CHECK(is_markov(t.joint));

  PrivacyMeasure mil = PrivacyMeasure::maximal();
  JointPmf bc = marginal(t.joint, {1, 2});
  JointPmf ac = marginal(t.joint, {0, 2});
  CHECK(nats_to_bits(maximal_information_leakage(bc)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nats_to_bits(maximal_information_leakage(ac)) ==
        doctest::Approx(1.5).epsilon(1e-12));

  AxiomReport pp = check_post_processing(mil, t);
  CHECK(pp.holds);

  AxiomReport lk = check_linkage(mil, t);
  CHECK_FALSE(lk.holds);
  CHECK(nats_to_bits(lk.margin) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("dp counterexample instance") {
  DpCounterexample ce = dp_counterexample(0.1, 0.3, 0.6);
  PrivacyMeasure dp_a =
      PrivacyMeasure::dp(AdjacencyRelation::hamming1(ce.triple.joint.axis(0)));
  PrivacyMeasure dp_b =
      PrivacyMeasure::dp(AdjacencyRelation::hamming1(ce.triple.joint.axis(1)));
  AxiomReport lk = check_linkage(dp_a, ce.triple, dp_b);
  CHECK(lk.rhs == doctest::Approx(std::log(3.0)).epsilon(1e-12));  // over B
  CHECK(lk.lhs == doctest::Approx(std::log(6.0)).epsilon(1e-12));  // over A
  CHECK_FALSE(lk.holds);

  // Strict violation across the valid parameter region.
  for (auto [q, r, s] : {std::array<double, 3>{0.05, 0.2, 0.9},
                         std::array<double, 3>{0.2, 0.4, 0.5},
                         std::array<double, 3>{0.3, 0.6, 0.7}}) {
    DpCounterexample c = dp_counterexample(q, r, s);
    PrivacyMeasure da =
        PrivacyMeasure::dp(AdjacencyRelation::hamming1(c.triple.joint.axis(0)));
    PrivacyMeasure db =
        PrivacyMeasure::dp(AdjacencyRelation::hamming1(c.triple.joint.axis(1)));
    CHECK(check_linkage(da, c.triple, db).margin < 0.0);
  }
  CHECK_THROWS(dp_counterexample(0.3, 0.2, 0.6));
}

TEST_CASE("random markov triples") {
  MarkovTriple a = random_markov_triple(42, 3, 3, 3);
  MarkovTriple b = random_markov_triple(42, 3, 3, 3);
  CHECK(a.joint.probs() == b.joint.probs());  // deterministic given seed
  CHECK(conditional_mutual_information(a.joint) <= 1e-9);

  // Degenerate chain |B| = 1: A and C independent.
  MarkovTriple d = random_markov_triple(7, 3, 1, 3);
  CHECK(mutual_information(marginal(d.joint, {0, 2})) <= 1e-12);
}

TEST_CASE("axioms hold for mi, ip, sibson on random triples") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    MarkovTriple t = random_markov_triple(seed, 3, 3, 3);
    for (auto m : {PrivacyMeasure::mi(), PrivacyMeasure::ip(),
                   PrivacyMeasure::sibson()}) {
      CHECK(check_post_processing(m, t).margin >= -kAxiomSlack);
      CHECK(check_linkage(m, t).margin >= -kAxiomSlack);
    }
    // Maximal information leakage: post-processing only is guaranteed.
    CHECK(check_post_processing(PrivacyMeasure::maximal(), t).margin >=
          -kAxiomSlack);
  }
}

TEST_CASE("dp post-processing on random channel compositions") {
  Alphabet bits({"00", "01", "10", "11"});
  PrivacyMeasure dp = PrivacyMeasure::dp(AdjacencyRelation::hamming1(bits));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    MarkovTriple t = random_markov_triple(1000 + seed, bits, bits, bits);
    AxiomReport r = check_post_processing(dp, t);
    CHECK(r.margin >= -kAxiomSlack);
  }
}
