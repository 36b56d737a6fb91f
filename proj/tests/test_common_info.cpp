// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "pput/common_info.hpp"
#include "pput/measures.hpp"
#include "pput/symmetric_pair.hpp"

using namespace pput;

namespace {

// X uniform on 4 symbols, Y = floor(X / 2).
JointPmf half_joint() {
  std::vector<double> p(8, 0.0);
  for (std::size_t x = 0; x < 4; ++x) p[x * 2 + x / 2] = 0.25;
  return JointPmf({Alphabet::integers(4), Alphabet::integers(2)}, std::move(p));
}

JointPmf random_joint(std::uint64_t seed, std::size_t nx, std::size_t ny,
                      double sparsity = 0.0) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(nx * ny);
  double total = 0.0;
  for (double& v : p) {
    v = u(rng) < sparsity ? 0.0 : exp1(rng);
    total += v;
  }
  if (total <= 0.0) p[0] = total = 1.0;
  for (double& v : p) v /= total;
  return JointPmf({Alphabet::integers(nx), Alphabet::integers(ny)}, std::move(p));
}

}  // namespace

TEST_CASE("common part components") {
  // Full-support joint: a single component, zero common information.
  CommonPart one = common_part(sp_joint({3, 0.4}));
  CHECK(one.u_alphabet.size() == 1);
  CHECK(entropy(one.p_u) == doctest::Approx(0.0));
  CHECK(gk_common_information(sp_joint({10, 0.4})) == doctest::Approx(0.0));

  // Block-diagonal joint: two components with mass (1/2, 1/2).
  std::vector<double> p(16, 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      p[i * 4 + j] = 0.125;
      p[(2 + i) * 4 + 2 + j] = 0.125;
    }
  JointPmf block({Alphabet::integers(4), Alphabet::integers(4)}, std::move(p));
  CommonPart two = common_part(block);
  CHECK(two.u_alphabet.size() == 2);
  CHECK(two.p_u[0] == doctest::Approx(0.5));
  CHECK(nats_to_bits(gk_common_information(block)) == doctest::Approx(1.0));

  // Y = X identically: U is X itself.
  std::size_t m = 5;
  std::vector<double> diag(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) diag[i * m + i] = 1.0 / m;
  JointPmf ident({Alphabet::integers(m), Alphabet::integers(m)}, std::move(diag));
  CHECK(gk_common_information(ident) == doctest::Approx(std::log(m)).epsilon(1e-13));

  // Y = floor(X/2): two components of mass 1/2 -> 1 bit.
  CHECK(nats_to_bits(gk_common_information(half_joint())) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("equality test and witness") {
  CHECK(ci_equals_mi(half_joint()));
  CHECK_FALSE(strict_gap_witness(half_joint()).has_value());

  CHECK_FALSE(ci_equals_mi(sp_joint({10, 0.4})));
  CHECK(strict_gap_witness(sp_joint({2, 0.25})).has_value());

  JointPmf prod = JointPmf::product(Pmf(Alphabet::integers(2), {0.4, 0.6}),
                                    Pmf(Alphabet::integers(3), {0.2, 0.3, 0.5}));
  CHECK(ci_equals_mi(prod));
  CHECK_FALSE(strict_gap_witness(prod).has_value());

  // Witness present exactly when the equality fails, on randomized supports.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    JointPmf j = random_joint(seed, 3 + seed % 2, 3 + seed % 2, 0.4);
    CHECK(ci_equals_mi(j) == !strict_gap_witness(j).has_value());
  }
}

TEST_CASE("common information bounded by mutual information") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    JointPmf j = random_joint(500 + seed, 4, 4, 0.3);
    CHECK(gk_common_information(j) <= mutual_information(j) + 1e-9);
  }
}

TEST_CASE("binary release construction") {
  JointPmf sp = sp_joint({2, 0.25});
  BinaryReleaseConstruction c = binary_release_construction(sp);

  // The full-data mechanism makes Z independent of X; the induced
  // output-perturbation mechanism does not.
  Alphabet y2 = Alphabet::integers(2);
  Channel obs_fd = Channel::identity(Alphabet::product(y2, y2));
  Channel obs_op(Alphabet::product(y2, y2), y2, {{1, 0}, {0, 1}, {1, 0}, {0, 1}});
  JointPmf xyz = push_mechanism(sp, obs_fd, c.mech_fd);
  JointPmf xyz2 = push_mechanism(sp, obs_op, c.mech_op);
  CHECK(mutual_information(marginal(xyz, {0, 2})) <= 1e-12);
  CHECK(mutual_information(marginal(xyz2, {0, 2})) > 1e-6);

  // P(Z=0 | x) = s for every supported x.
  Channel z_given_x = condition(marginal(xyz, {0, 2}), 0);
  for (std::size_t x = 0; x < 2; ++x)
    CHECK(z_given_x.row(x)[0] == doctest::Approx(c.s).epsilon(1e-12));

  // Identical (Y,Z) joints, so the witness distortion is 1 for both.
  JointPmf yz = marginal(xyz, {1, 2});
  JointPmf yz2 = marginal(xyz2, {1, 2});
  for (std::size_t i = 0; i < yz.probs().size(); ++i)
    CHECK(yz.probs()[i] == doctest::Approx(yz2.probs()[i]).epsilon(1e-12));
  DistortionMeasure w = DistortionMeasure::witness(yz2);
  CHECK(distortion(w, yz) == 1.0);
  CHECK(distortion(w, yz2) == 1.0);

  // Requires a joint with unequal common and mutual information.
  CHECK_THROWS(binary_release_construction(half_joint()));
  CHECK_THROWS(binary_release_construction(sp, BinaryReleaseParams{1.5, 0.0}));
}
