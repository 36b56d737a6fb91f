// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "pput/scenario_solver.hpp"
#include "pput/symmetric_pair.hpp"

using namespace pput;

namespace {

std::pair<double, double> eval_mech(const SPParams& params, ScenarioKind kind,
                                    const Channel& mech) {
  Scenario sc(sp_joint(params), kind);
  return evaluate(sc, mech, PrivacyMeasure::mi(), DistortionMeasure::prob_error());
}

Channel random_channel(std::uint64_t seed, const Alphabet& in, const Alphabet& out) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<std::vector<double>> rows(in.size(), std::vector<double>(out.size()));
  for (auto& row : rows) {
    double t = 0.0;
    for (double& v : row) { v = exp1(rng); t += v; }
    for (double& v : row) v /= t;
  }
  return Channel(in, out, std::move(rows));
}

}  // namespace

TEST_CASE("sp joint") {
  JointPmf j = sp_joint({2, 0.25});
  CHECK(j.at(0, 0) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(j.at(0, 1) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(j.at(1, 0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(j.at(1, 1) == doctest::Approx(0.375).epsilon(1e-15));

  JointPmf d = sp_joint({3, 0.0});
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y)
      CHECK(d.at(x, y) == doctest::Approx(x == y ? 1.0 / 3 : 0.0));

  // p = 1 - 1/m gives the uniform product.
  JointPmf u = sp_joint({4, 0.75});
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      CHECK(u.at(x, y) == doctest::Approx(1.0 / 16).epsilon(1e-13));

  CHECK_THROWS(sp_joint({1, 0.5}));
  CHECK_THROWS(sp_joint({3, 1.5}));
}

TEST_CASE("r_m") {
  CHECK(r_m({7, 0.0}) == doctest::Approx(std::log(7.0)).epsilon(1e-14));
  CHECK(r_m({4, 0.75}) == doctest::Approx(0.0));
  CHECK(nats_to_bits(r_m({10, 0.4})) == doctest::Approx(1.0830).epsilon(1e-4));
  CHECK(r_m({10, 0.4}) ==
        doctest::Approx(mutual_information(sp_joint({10, 0.4}))).epsilon(1e-13));
}

TEST_CASE("full data closed form") {
  SPParams ten{10, 0.4};
  ClosedFormResult r = pi_fd_closed(ten, 0.2);
  CHECK(r.value == doctest::Approx(r_m({10, 0.6})).epsilon(1e-13));
  CHECK(pi_fd_closed(ten, 0.9).value == doctest::Approx(0.0));
  CHECK(pi_fd_closed(ten, 0.95).value == doctest::Approx(0.0));

  // High-disagreement branch.
  CHECK(pi_fd_closed({2, 0.9}, 0.2).value ==
        doctest::Approx(r_m({2, 0.7})).epsilon(1e-13));

  // Both branch formulas agree at the boundary.
  double at_edge = pi_fd_closed(ten, 1.0 - 0.1 - 0.4).value;
  CHECK(at_edge == doctest::Approx(r_m({10, 0.9})).epsilon(1e-12));
}

TEST_CASE("output perturbation closed form") {
  CHECK(nats_to_bits(pi_op_closed({2, 0.25}, 0.1).value) ==
        doctest::Approx(nats_to_bits(r_m({2, 0.3}))).epsilon(1e-12));
  CHECK(pi_op_closed({10, 0.4}, 0.2).value ==
        doctest::Approx(r_m({10, 0.4 + 0.2 * (1 - 4.0 / 9)})).epsilon(1e-13));
  CHECK(pi_op_closed({10, 0.4}, 0.95).value == doctest::Approx(0.0));
}

TEST_CASE("inference closed form") {
  // t = (0.2 - 0.1) / (1 - 1/9) = 0.1125
  CHECK(pi_inf_closed({10, 0.1}, 0.2).value ==
        doctest::Approx(r_m({10, 0.1125})).epsilon(1e-13));
  CHECK(pi_inf_closed({10, 0.3}, 0.2).value == kInf);
  CHECK(pi_inf_closed({10, 0.3}, 0.2).branch == "infeasible");
  CHECK(pi_inf_closed({10, 0.3}, 0.9).value == doctest::Approx(0.0));
  CHECK_FALSE(inf_optimal_mechanism({10, 0.3}, 0.2).has_value());
  // p exactly at independence with delta below 1 - 1/m is infeasible.
  CHECK(pi_inf_closed({10, 0.9}, 0.5).value == kInf);
}

TEST_CASE("fano envelopes") {
  CHECK(fano_g(10, 0.0) == doctest::Approx(std::log(10.0)).epsilon(1e-14));
  CHECK(fano_g(10, 0.9) == doctest::Approx(0.0));
  CHECK(fano_g_star(10, 0.9) == doctest::Approx(0.0));
  CHECK(fano_g_star(10, 1.0) ==
        doctest::Approx(std::log(10.0) - std::log(9.0)).epsilon(1e-13));
  CHECK(fano_g(10, 0.95) == doctest::Approx(0.0));
}

TEST_CASE("mechanism achievability") {
  // Evaluating each closed-form optimal mechanism reproduces the closed form.
  for (double delta : {0.0, 0.1, 0.2, 0.5, 0.85}) {
    SPParams ten{10, 0.4};
    auto [pi_fd, d_fd] = eval_mech(ten, ScenarioKind::FullData,
                                   fd_optimal_mechanism(ten, delta));
    CHECK(pi_fd == doctest::Approx(pi_fd_closed(ten, delta).value).epsilon(1e-10));
    CHECK(d_fd <= delta + 1e-12);

    auto [pi_op, d_op] = eval_mech(ten, ScenarioKind::OutputPerturbation,
                                   op_optimal_mechanism(ten, delta));
    CHECK(pi_op == doctest::Approx(pi_op_closed(ten, delta).value).epsilon(1e-10));
    CHECK(d_op <= delta + 1e-12);
  }
  // High-p full-data branch.
  SPParams hp{2, 0.9};
  auto [pi2, d2] = eval_mech(hp, ScenarioKind::FullData,
                             fd_optimal_mechanism(hp, 0.2));
  CHECK(pi2 == doctest::Approx(pi_fd_closed(hp, 0.2).value).epsilon(1e-10));
  CHECK(d2 <= 0.2 + 1e-12);

  // Inference, feasible region.
  SPParams low{10, 0.1};
  auto mech = inf_optimal_mechanism(low, 0.2);
  REQUIRE(mech.has_value());
  auto [pi3, d3] = eval_mech(low, ScenarioKind::Inference, *mech);
  CHECK(pi3 == doctest::Approx(pi_inf_closed(low, 0.2).value).epsilon(1e-10));
  CHECK(d3 <= 0.2 + 1e-12);
}

TEST_CASE("error relation identities") {
  SPParams params{3, 0.3};
  Alphabet y3 = Alphabet::integers(3);
  Alphabet xy = Alphabet::product(y3, y3);

  // Z = Y: Pr(Y!=Z) - Pr(X!=Z) = -p.
  std::vector<std::vector<double>> zy(9, std::vector<double>(3, 0.0));
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) zy[x * 3 + y][y] = 1.0;
  auto [lhs, rhs] = error_relation_check(params, Channel(xy, y3, zy));
  CHECK(lhs == doctest::Approx(-0.3).epsilon(1e-13));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  // Constant mechanism: both differences vanish.
  Channel cst = Channel::constant(xy, Pmf::uniform(y3));
  auto [l2, r2] = error_relation_check(params, cst);
  CHECK(l2 == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(r2 == doctest::Approx(0.0).epsilon(1e-13));

  // Random full-data mechanisms.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto [l, r] = error_relation_check(params, random_channel(seed, xy, y3));
    CHECK(l == doctest::Approx(r).epsilon(1e-12));
  }

  // Markov-chain relation with the symmetric test channel and random ones.
  SPParams low{10, 0.1};
  auto mech = inf_optimal_mechanism(low, 0.2);
  auto [measured, predicted] = markov_error_relation(low, *mech);
  CHECK(measured == doctest::Approx(predicted).epsilon(1e-12));
  Alphabet y10 = Alphabet::integers(10);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto [mm, pp] = markov_error_relation(low, random_channel(seed, y10, y10));
    CHECK(mm == doctest::Approx(pp).epsilon(1e-12));
  }
}

TEST_CASE("closed forms respect the scenario hierarchy") {
  for (std::size_t m : {2, 3, 5, 10}) {
    for (int pi10 = 0; pi10 <= 10; ++pi10) {
      SPParams params{m, pi10 / 10.0};
      for (int di20 = 0; di20 <= 19; ++di20) {
        double delta = di20 * 0.05;
        double fd = pi_fd_closed(params, delta).value;
        double op = pi_op_closed(params, delta).value;
        double inf = pi_inf_closed(params, delta).value;
        CHECK(fd <= op + 1e-12);
        CHECK(op <= inf + 1e-12);
      }
    }
  }
}
