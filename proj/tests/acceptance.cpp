// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Each numbered check prints one pass/fail
// line; the process exits nonzero if any check fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "pput/axioms.hpp"
#include "pput/common_info.hpp"
#include "pput/measures.hpp"
#include "pput/probability.hpp"
#include "pput/scenario_solver.hpp"
#include "pput/symmetric_pair.hpp"

using namespace pput;

namespace {

int g_failures = 0;

void report(int number, const char* title, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s%s%s\n", pass ? "PASS" : "FAIL", number, title,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++g_failures;
}

JointPmf random_joint(std::uint64_t seed, std::size_t nx, std::size_t ny) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> p(nx * ny);
  double total = 0.0;
  for (double& v : p) {
    v = exp1(rng);
    total += v;
  }
  for (double& v : p) v /= total;
  return JointPmf({Alphabet::integers(nx), Alphabet::integers(ny)}, std::move(p));
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

// 1. r_m(p) equals mutual_information(sp_joint(m,p)) within 1e-12 nats.
void check1() {
  double worst = 0.0;
  for (std::size_t m : {2, 3, 5, 10}) {
    for (int pi10 = 0; pi10 <= 10; ++pi10) {
      SPParams params{m, pi10 / 10.0};
      double diff = std::abs(r_m(params) - mutual_information(sp_joint(params)));
      worst = std::max(worst, diff);
    }
  }
  report(1, "closed-form consistency r_m vs mutual information", worst <= 1e-12,
         "max |diff| = " + std::to_string(worst) + " nats");
}

// 2. Optimal mechanisms reproduce the closed forms over a 20-point grid.
void check2() {
  double worst_pi = 0.0, worst_d = 0.0;
  auto run = [&](const SPParams& params, ScenarioKind kind, double delta,
                 double closed, const Channel& mech) {
    Scenario sc(sp_joint(params), kind);
    auto [pi, d] = evaluate(sc, mech, PrivacyMeasure::mi(),
                            DistortionMeasure::prob_error());
    worst_pi = std::max(worst_pi, std::abs(pi - closed));
    worst_d = std::max(worst_d, d - delta);
  };
  for (int i = 0; i < 20; ++i) {
    double delta = i * 0.05;
    SPParams low{10, 0.4};  // p <= 1-1/m branch
    run(low, ScenarioKind::FullData, delta, pi_fd_closed(low, delta).value,
        fd_optimal_mechanism(low, delta));
    SPParams high{2, 0.9};  // p > 1-1/m branch
    run(high, ScenarioKind::FullData, delta, pi_fd_closed(high, delta).value,
        fd_optimal_mechanism(high, delta));
    run(low, ScenarioKind::OutputPerturbation, delta,
        pi_op_closed(low, delta).value, op_optimal_mechanism(low, delta));
    SPParams inf_p{10, 0.1};
    if (auto mech = inf_optimal_mechanism(inf_p, delta)) {
      run(inf_p, ScenarioKind::Inference, delta, pi_inf_closed(inf_p, delta).value,
          *mech);
    }
  }
  report(2, "optimal mechanisms achieve the closed forms",
         worst_pi <= 1e-10 && worst_d <= 1e-12,
         "max pi diff = " + std::to_string(worst_pi) +
             " nats, max excess distortion = " + std::to_string(worst_d));
}

// 3. First-order solver matches the closed forms within 1e-3 bits at m=2.
void check3() {
  double worst = 0.0;
  for (double p : {0.1, 0.25, 0.4}) {
    SPParams params{2, p};
    JointPmf data = sp_joint(params);
    for (int i = 1; i <= 9; ++i) {
      double delta = 0.05 * i;
      auto solved = [&](ScenarioKind k) {
        return solve_point(Scenario(data, k), DistortionMeasure::prob_error(),
                           delta)
            .pi;
      };
      double op = solved(ScenarioKind::OutputPerturbation);
      double fd = solved(ScenarioKind::FullData);
      double inf = solved(ScenarioKind::Inference);
      worst = std::max(
          worst, std::abs(nats_to_bits(op - pi_op_closed(params, delta).value)));
      worst = std::max(
          worst, std::abs(nats_to_bits(fd - pi_fd_closed(params, delta).value)));
      double inf_closed = pi_inf_closed(params, delta).value;
      if (std::isinf(inf_closed) || std::isinf(inf)) {
        if (std::isinf(inf_closed) != std::isinf(inf)) worst = 1.0;
      } else {
        worst = std::max(worst, std::abs(nats_to_bits(inf - inf_closed)));
      }
    }
  }
  report(3, "solver matches closed forms within 1e-3 bits", worst <= 1e-3,
         "max |diff| = " + std::to_string(worst) + " bits");
}

// 4. The m=10, p=0.4 preset curves: hierarchy, infeasible region, zero tail.
void check4() {
  SPParams params{10, 0.4};
  bool ok = true;
  std::string why;
  for (int i = 0; i <= 19; ++i) {
    double delta = i * 0.05;
    double fd = pi_fd_closed(params, delta).value;
    double op = pi_op_closed(params, delta).value;
    double inf = pi_inf_closed(params, delta).value;
    if (!(fd <= op + 1e-12 && op <= inf + 1e-12)) { ok = false; why = "hierarchy"; }
    if ((delta < 0.4) != std::isinf(inf)) { ok = false; why = "infeasible region"; }
    if (delta >= 0.9 && (fd > 1e-12 || op > 1e-12 || inf > 1e-12)) {
      ok = false;
      why = "zero tail";
    }
    // Exact values against the formulas.
    double m = 10.0;
    if (delta <= 1 - 1.0 / m - 0.4 &&
        std::abs(fd - r_m({10, 0.4 + delta})) > 1e-10) { ok = false; why = "fd"; }
    if (delta < 1 - 1.0 / m &&
        std::abs(op - r_m({10, 0.4 + delta * (1 - 0.4 * m / (m - 1))})) > 1e-10) {
      ok = false;
      why = "op";
    }
    if (delta >= 0.4 && delta < 0.9) {
      double t = (delta - 0.4) / (1 - 0.4 * m / (m - 1));
      if (std::abs(inf - r_m({10, t})) > 1e-10) { ok = false; why = "inf"; }
    }
  }
  report(4, "m=10 p=0.4 preset curves match the formulas", ok, why);
}

// 5. Hierarchy on random data models via the solver.
void check5() {
  double slack = bits_to_nats(2e-3);
  bool ok = true;
  std::string why;
  SolverOptions opts;
  opts.max_iters = 16000;
  opts.restarts = 4;
  for (std::uint64_t seed = 0; seed < 50 && ok; ++seed) {
    JointPmf data = random_joint(4000 + seed, 3, 3);
    for (int i = 1; i <= 5 && ok; ++i) {
      double delta = 0.1 * i;
      auto solved = [&](ScenarioKind k) {
        return solve_point(Scenario(data, k), DistortionMeasure::prob_error(),
                           delta, opts)
            .pi;
      };
      double fd = solved(ScenarioKind::FullData);
      double op = solved(ScenarioKind::OutputPerturbation);
      double inf = solved(ScenarioKind::Inference);
      if (fd > op + slack || op > inf + slack) {
        ok = false;
        why = "seed " + std::to_string(seed) + " delta " + std::to_string(delta);
      }
    }
  }
  report(5, "solver hierarchy fd <= op <= inf on random joints", ok, why);
}

// 6. Built-in counterexamples have the documented values.
void check6() {
  MarkovTriple t1 = linkage_counterexample();
  double bc = nats_to_bits(maximal_information_leakage(marginal(t1.joint, {1, 2})));
  double ac = nats_to_bits(maximal_information_leakage(marginal(t1.joint, {0, 2})));
  AxiomReport lk1 = check_linkage(PrivacyMeasure::maximal(), t1);

  DpCounterexample ce = dp_counterexample(0.1, 0.3, 0.6);
  PrivacyMeasure dp_a =
      PrivacyMeasure::dp(AdjacencyRelation::hamming1(ce.triple.joint.axis(0)));
  PrivacyMeasure dp_b =
      PrivacyMeasure::dp(AdjacencyRelation::hamming1(ce.triple.joint.axis(1)));
  AxiomReport lk2 = check_linkage(dp_a, ce.triple, dp_b);

  bool ok = std::abs(bc - 1.0) <= 1e-12 && std::abs(ac - 1.5) <= 1e-12 &&
            !lk1.holds && std::abs(lk2.rhs - std::log(3.0)) <= 1e-12 &&
            std::abs(lk2.lhs - std::log(6.0)) <= 1e-12 && !lk2.holds;
  report(6, "counterexample suite values and violation flags", ok,
         "leakage(B;C) = " + std::to_string(bc) + " bits, leakage(A;C) = " +
             std::to_string(ac) + " bits");
}

// 7. Axioms hold where the theory guarantees them.
void check7() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    MarkovTriple t = random_markov_triple(seed, 3, 3, 3);
    for (auto measure : {PrivacyMeasure::mi(), PrivacyMeasure::ip(),
                         PrivacyMeasure::sibson()}) {
      worst = std::min(worst, check_post_processing(measure, t).margin);
      worst = std::min(worst, check_linkage(measure, t).margin);
    }
    worst = std::min(worst, check_post_processing(PrivacyMeasure::maximal(), t).margin);
  }
  Alphabet bits({"00", "01", "10", "11"});
  PrivacyMeasure dp = PrivacyMeasure::dp(AdjacencyRelation::hamming1(bits));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    MarkovTriple t = random_markov_triple(90000 + seed, bits, bits, bits);
    worst = std::min(worst, check_post_processing(dp, t).margin);
  }
  report(7, "post-processing/linkage property suite", worst >= -1e-9,
         "min margin = " + std::to_string(worst) + " nats");
}

// 8. Singleton and exhaustive-subset information privacy agree.
void check8() {
  double worst = 0.0;
  std::mt19937_64 sizes(1);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::size_t nx = 2 + sizes() % 3, nz = 2 + sizes() % 3;
    JointPmf j = random_joint(7000 + seed, nx, nz);
    worst = std::max(worst,
                     std::abs(information_privacy(j) - information_privacy_sets(j)));
  }
  report(8, "singleton vs subset information privacy", worst <= 1e-10,
         "max |diff| = " + std::to_string(worst) + " nats");
}

// 9. Projection behavior with equal vs unequal common information.
void check9() {
  // Y = floor(X/2), X uniform: common part equals the mutual information.
  std::vector<double> p(8, 0.0);
  for (std::size_t x = 0; x < 4; ++x) p[x * 2 + x / 2] = 0.25;
  JointPmf half({Alphabet::integers(4), Alphabet::integers(2)}, std::move(p));
  bool ok = ci_equals_mi(half);
  Alphabet xy = Alphabet::product(half.axis(0), half.axis(1));
  Scenario fd_sc(half, ScenarioKind::FullData);
  Scenario op_sc(half, ScenarioKind::OutputPerturbation);
  for (std::uint64_t seed = 0; seed < 1000 && ok; ++seed) {
    Channel mech = random_channel(seed, xy, half.axis(1));
    auto [l_fd, d1] = evaluate(fd_sc, mech, PrivacyMeasure::mi(),
                               DistortionMeasure::prob_error());
    auto [l_op, d2] = evaluate(op_sc, project_fd_to_op(half, mech),
                               PrivacyMeasure::mi(), DistortionMeasure::prob_error());
    (void)d1; (void)d2;
    if (l_op > l_fd + 1e-10) ok = false;
  }

  // SP(2, 0.25): the binary-release construction separates the scenarios
  // under the witness distortion.
  JointPmf sp = sp_joint({2, 0.25});
  BinaryReleaseConstruction c6 = binary_release_construction(sp);
  Scenario sp_fd(sp, ScenarioKind::FullData);
  Scenario sp_op(sp, ScenarioKind::OutputPerturbation);
  JointPmf yz_fd = marginal(push_mechanism(sp, sp_fd.obs(), c6.mech_fd), {1, 2});
  JointPmf yz_op = marginal(push_mechanism(sp, sp_op.obs(), c6.mech_op), {1, 2});
  double max_dev = 0.0;
  for (std::size_t i = 0; i < yz_fd.probs().size(); ++i)
    max_dev = std::max(max_dev, std::abs(yz_fd.probs()[i] - yz_op.probs()[i]));
  double leak_fd =
      mutual_information(marginal(push_mechanism(sp, sp_fd.obs(), c6.mech_fd), {0, 2}));
  double leak_op =
      mutual_information(marginal(push_mechanism(sp, sp_op.obs(), c6.mech_op), {0, 2}));
  DistortionMeasure witness = DistortionMeasure::witness(yz_op);
  bool sep = leak_fd <= 1e-9 && leak_op >= 1e-6 && max_dev <= 1e-12 &&
             distortion(witness, yz_fd) == 1.0;
  ok = ok && sep;
  report(9, "projection and separation witnesses", ok,
         "fd leakage = " + std::to_string(leak_fd) +
             ", projected leakage = " + std::to_string(leak_op) + " nats");
}

// 10. Error-relation identities on random mechanisms.
void check10() {
  double worst = 0.0;
  std::vector<SPParams> grid{{2, 0.25}, {3, 0.3}, {5, 0.6}, {10, 0.4}};
  for (const SPParams& params : grid) {
    Alphabet a = Alphabet::integers(params.m);
    Alphabet axy = Alphabet::product(a, a);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      auto [l1, r1] = error_relation_check(params, random_channel(seed, axy, a));
      worst = std::max(worst, std::abs(l1 - r1));
      auto [l2, r2] = markov_error_relation(params, random_channel(seed, a, a));
      worst = std::max(worst, std::abs(l2 - r2));
    }
  }
  report(10, "error-relation identities", worst <= 1e-12,
         "max |diff| = " + std::to_string(worst));
}

}  // namespace

int main() {
  check1();
  check2();
  check3();
  check4();
  check5();
  check6();
  check7();
  check8();
  check9();
  check10();
  return g_failures == 0 ? 0 : 1;
}
