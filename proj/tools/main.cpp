// SPDX-License-Identifier: Apache-2.0
//
// Command line front end. Subcommands: measure, tradeoff, common-info,
// check-axioms, sp. All numeric output is printed to 12 significant
// digits with infinities rendered as "inf"; reruns with identical inputs
// and seed are byte-identical.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pput/axioms.hpp"
#include "pput/common_info.hpp"
#include "pput/json_io.hpp"
#include "pput/measures.hpp"
#include "pput/probability.hpp"
#include "pput/scenario_solver.hpp"
#include "pput/symmetric_pair.hpp"

namespace {

using namespace pput;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> parse_deltas(const std::string& spec) {
  double a = 0.0, b = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0) {
    throw InputError("bad --deltas grammar, expected a:b:step");
  }
  std::vector<double> out;
  for (double d = a; d <= b + 1e-12; d += step) out.push_back(std::min(d, b));
  return out;
}

PrivacyMeasure parse_privacy(const std::string& name,
                             const std::optional<std::string>& adjacency_path,
                             const Alphabet& x_alphabet) {
  if (name == "mi") return PrivacyMeasure::mi();
  if (name == "mil") return PrivacyMeasure::maximal();
  if (name == "sibson") return PrivacyMeasure::sibson();
  if (name == "ip") return PrivacyMeasure::ip();
  if (name == "dp") {
    if (adjacency_path) {
      return PrivacyMeasure::dp(load_adjacency(*adjacency_path, x_alphabet));
    }
    return PrivacyMeasure::dp(AdjacencyRelation::hamming1(x_alphabet));
  }
  throw InputError("unknown privacy measure: " + name);
}

struct Output {
  std::optional<std::string> path;
  std::ostringstream buf;
  void flush() {
    if (path) {
      save_text(*path, buf.str());
    } else {
      std::cout << buf.str();
    }
  }
};

int cmd_measure(const std::string& privacy_name,
                const std::optional<std::string>& adjacency_path,
                const std::string& joint_path, const std::string& unit,
                Output& out) {
  JointPmf joint = load_joint(joint_path);
  PrivacyMeasure m = parse_privacy(privacy_name, adjacency_path, joint.axis(0));
  double nats = leakage(m, joint);
  out.buf << "privacy,value_nats,value_bits\n" << privacy_name << ",";
  out.buf << (unit == "bits" ? "" : fmt(nats)) << ",";
  out.buf << (unit == "nats" ? "" : fmt(nats_to_bits(nats))) << "\n";
  return 0;
}

int cmd_tradeoff(const std::string& data_path, const std::string& scenario_name,
                 const std::string& privacy_name, const std::string& dist_spec,
                 const std::string& deltas_spec, std::size_t z_size, bool oracle,
                 std::size_t grid, std::uint64_t seed,
                 const std::optional<std::string>& emit_mechanism, Output& out) {
  JointPmf data = load_joint(data_path);

  ScenarioKind kind;
  if (scenario_name == "fd") kind = ScenarioKind::FullData;
  else if (scenario_name == "op") kind = ScenarioKind::OutputPerturbation;
  else if (scenario_name == "inf") kind = ScenarioKind::Inference;
  else throw InputError("unknown scenario: " + scenario_name);

  std::optional<Alphabet> z;
  if (z_size > 0) z = Alphabet::integers(z_size);
  Scenario scenario(data, kind, z);

  DistortionMeasure dist;
  if (dist_spec == "prob-error") {
    dist = DistortionMeasure::prob_error();
  } else if (dist_spec == "cond-entropy") {
    dist = DistortionMeasure::cond_entropy();
  } else if (dist_spec.rfind("expected:", 0) == 0) {
    dist = load_distortion_matrix(dist_spec.substr(9));
  } else {
    throw InputError("unknown distortion: " + dist_spec);
  }

  PrivacyMeasure privacy = parse_privacy(privacy_name, std::nullopt, data.axis(0));
  bool solver_ok = privacy.kind == PrivacyKind::MutualInformation && dist.is_linear();
  if (!solver_ok && !oracle) {
    throw InputError("this privacy/distortion pair needs --oracle");
  }

  std::vector<double> deltas = parse_deltas(deltas_spec);
  out.buf << "delta,pi_nats,pi_bits,status,gap\n";
  std::optional<Channel> last_mech;
  std::vector<TradeoffPoint> points;
  if (oracle) {
    for (double d : deltas) {
      points.push_back(brute_force_oracle(scenario, privacy, dist, d, grid));
    }
  } else {
    SolverOptions opts;
    opts.seed = seed;
    points = tradeoff_curve(scenario, dist, deltas, opts);
  }
  for (const auto& pt : points) {
    out.buf << fmt(pt.delta) << "," << fmt(pt.pi) << ","
            << fmt(nats_to_bits(pt.pi)) << "," << pt.status_string() << ","
            << fmt(pt.gap) << "\n";
    if (pt.mechanism) last_mech = pt.mechanism;
  }
  if (emit_mechanism) {
    if (!last_mech) throw InputError("no feasible point; nothing to emit");
    save_text(*emit_mechanism, channel_to_json(*last_mech));
  }
  return 0;
}

int cmd_common_info(const std::string& joint_path, Output& out) {
  JointPmf joint = load_joint(joint_path);
  CommonPart cp = common_part(joint);
  double c = gk_common_information(joint);
  double mi = mutual_information(joint);
  bool equal = ci_equals_mi(joint);
  out.buf << "common_information_nats," << fmt(c) << "\n";
  out.buf << "common_information_bits," << fmt(nats_to_bits(c)) << "\n";
  out.buf << "mutual_information_nats," << fmt(mi) << "\n";
  out.buf << "mutual_information_bits," << fmt(nats_to_bits(mi)) << "\n";
  for (std::size_t x = 0; x < joint.axis(0).size(); ++x) {
    out.buf << "component_x," << joint.axis(0).label(x) << ","
            << cp.u_alphabet.label(cp.u_of_x[x]) << "\n";
  }
  for (std::size_t y = 0; y < joint.axis(1).size(); ++y) {
    out.buf << "component_y," << joint.axis(1).label(y) << ","
            << cp.u_alphabet.label(cp.u_of_y[y]) << "\n";
  }
  out.buf << "equality," << (equal ? "C=I" : "C<I") << "\n";
  if (auto w = strict_gap_witness(joint)) {
    out.buf << "witness," << joint.axis(0).label(w->x0) << ","
            << joint.axis(0).label(w->x1) << "," << joint.axis(1).label(w->y0)
            << "," << joint.axis(1).label(w->y1) << "\n";
  } else {
    out.buf << "witness,none\n";
  }
  return 0;
}

const char* kind_name(PrivacyKind k) {
  switch (k) {
    case PrivacyKind::MutualInformation: return "mi";
    case PrivacyKind::MaximalInformationLeakage: return "mil";
    case PrivacyKind::SibsonInfinity: return "sibson";
    case PrivacyKind::InformationPrivacy: return "ip";
    case PrivacyKind::DifferentialPrivacy: return "dp";
  }
  return "?";
}

nlohmann::json report_json(const AxiomReport& r, const std::string& label) {
  nlohmann::json j;
  j["measure"] = kind_name(r.measure);
  j["inequality"] =
      r.inequality == InequalityKind::PostProcessing ? "post-processing" : "linkage";
  j["lhs_nats"] = fmt(r.lhs);
  j["rhs_nats"] = fmt(r.rhs);
  j["holds"] = r.holds;
  j["margin_nats"] = fmt(r.margin);
  j["label"] = label;
  return j;
}

int cmd_check_axioms(const std::string& name, std::size_t trials,
                     std::uint64_t seed, Output& out) {
  bool linkage_guaranteed = name == "mi" || name == "ip" || name == "sibson";
  bool is_dp = name == "dp";
  bool is_mil = name == "mil";
  if (!linkage_guaranteed && !is_dp && !is_mil) {
    throw InputError("unknown privacy measure: " + name);
  }
  int exit_code = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    AxiomReport report{};
    std::string label = "ok";
    if (i == 0 && is_mil) {
      // Built-in linkage counterexample for maximal information leakage.
      report = check_linkage(PrivacyMeasure::maximal(), linkage_counterexample());
      label = report.holds ? "unexpected-pass" : "expected-violation";
    } else if (i == 0 && is_dp) {
      DpCounterexample ce = dp_counterexample(0.1, 0.3, 0.6);
      PrivacyMeasure dp_a =
          PrivacyMeasure::dp(AdjacencyRelation::hamming1(ce.triple.joint.axis(0)));
      PrivacyMeasure dp_b =
          PrivacyMeasure::dp(AdjacencyRelation::hamming1(ce.triple.joint.axis(1)));
      report = check_linkage(dp_a, ce.triple, dp_b);
      label = report.holds ? "unexpected-pass" : "expected-violation";
    } else if (is_dp) {
      // Random channel compositions over bit-string alphabets.
      Alphabet bits({"00", "01", "10", "11"});
      MarkovTriple triple = random_markov_triple(seed + i, bits, bits, bits);
      PrivacyMeasure dp_a = PrivacyMeasure::dp(AdjacencyRelation::hamming1(bits));
      report = check_post_processing(dp_a, triple);
      if (!report.holds) {
        label = "violation";
        exit_code = 1;
      }
    } else {
      MarkovTriple triple = random_markov_triple(seed + i, 3, 3, 3);
      PrivacyMeasure m = parse_privacy(name, std::nullopt, triple.joint.axis(0));
      AxiomReport pp = check_post_processing(m, triple);
      report = pp;
      if (linkage_guaranteed) {
        AxiomReport lk = check_linkage(m, triple);
        if (lk.margin < pp.margin) report = lk;
      }
      if (!report.holds) {
        label = "violation";
        exit_code = 1;
      }
    }
    out.buf << report_json(report, label).dump() << "\n";
  }
  return exit_code;
}

int cmd_sp(std::size_t m, double p, const std::string& deltas_spec,
           const std::string& scenario, bool fig2, Output& out) {
  SPParams params{m, p};
  std::string deltas = deltas_spec;
  std::vector<std::string> scenarios;
  if (fig2) {
    params = SPParams{10, 0.4};
    deltas = "0:0.95:0.05";
    scenarios = {"fd", "op", "inf"};
  } else if (scenario == "all") {
    scenarios = {"fd", "op", "inf"};
  } else if (scenario == "fd" || scenario == "op" || scenario == "inf") {
    scenarios = {scenario};
  } else {
    throw InputError("unknown scenario: " + scenario);
  }
  validate(params);
  out.buf << "delta,scenario,pi_nats,pi_bits,branch,status\n";
  for (double d : parse_deltas(deltas)) {
    for (const auto& sc : scenarios) {
      ClosedFormResult r;
      if (sc == "fd") r = pi_fd_closed(params, d);
      else if (sc == "op") r = pi_op_closed(params, d);
      else r = pi_inf_closed(params, d);
      const char* status = std::isinf(r.value) ? "infeasible" : "ok";
      out.buf << fmt(d) << "," << sc << "," << fmt(r.value) << ","
              << fmt(nats_to_bits(r.value)) << "," << r.branch << "," << status
              << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-utility tradeoff analysis for finite-alphabet mechanisms"};
  app.require_subcommand(1);
  app.fallthrough();  // allow global flags after the subcommand name

  std::uint64_t seed = 0;
  std::optional<std::string> out_path;
  std::string unit = "both";
  app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--unit", unit, "nats|bits|both (default both)")
      ->check(CLI::IsMember({"nats", "bits", "both"}));

  auto* c_measure = app.add_subcommand("measure", "evaluate a privacy measure");
  std::string m_privacy, m_joint;
  std::optional<std::string> m_adjacency;
  c_measure->add_option("--privacy", m_privacy, "mi|mil|sibson|ip|dp")->required();
  c_measure->add_option("--joint", m_joint, "joint (X,Z) JSON file")->required();
  c_measure->add_option("--adjacency", m_adjacency, "adjacency JSON (dp only)");

  auto* c_tradeoff = app.add_subcommand("tradeoff", "compute a tradeoff curve");
  std::string t_data, t_scenario, t_privacy = "mi", t_dist = "prob-error", t_deltas;
  std::size_t t_zsize = 0, t_grid = 25;
  bool t_oracle = false;
  std::optional<std::string> t_emit;
  c_tradeoff->add_option("--data", t_data, "joint (X,Y) JSON file")->required();
  c_tradeoff->add_option("--scenario", t_scenario, "fd|op|inf")->required();
  c_tradeoff->add_option("--privacy", t_privacy, "privacy measure (default mi)");
  c_tradeoff->add_option("--distortion", t_dist,
                         "prob-error|expected:<d.json>|cond-entropy");
  c_tradeoff->add_option("--deltas", t_deltas, "grid a:b:step")->required();
  c_tradeoff->add_option("--z-size", t_zsize, "release alphabet size (default |Y|)");
  c_tradeoff->add_flag("--oracle", t_oracle, "use the brute-force grid oracle");
  c_tradeoff->add_option("--grid", t_grid, "oracle grid resolution (default 25)");
  c_tradeoff->add_option("--emit-mechanism", t_emit,
                         "write the last feasible mechanism as channel JSON");

  auto* c_common = app.add_subcommand("common-info", "common-information analysis");
  std::string ci_joint;
  c_common->add_option("joint", ci_joint, "joint (X,Y) JSON file")->required();

  auto* c_axioms = app.add_subcommand("check-axioms", "axiom property checks");
  std::string a_measure;
  std::size_t a_trials = 1;
  c_axioms->add_option("--measure", a_measure, "mi|mil|sibson|ip|dp")->required();
  c_axioms->add_option("--trials", a_trials, "number of trials (default 1)");

  auto* c_sp = app.add_subcommand("sp", "symmetric-pair closed forms");
  std::size_t sp_m = 2;
  double sp_p = 0.0;
  std::string sp_deltas = "0:1:0.05", sp_scenario = "all";
  bool sp_fig2 = false;
  c_sp->add_option("--m", sp_m, "alphabet size");
  c_sp->add_option("--p", sp_p, "disagreement probability");
  c_sp->add_option("--deltas", sp_deltas, "grid a:b:step");
  c_sp->add_option("--scenario", sp_scenario, "fd|op|inf|all");
  c_sp->add_flag("--fig2", sp_fig2, "preset: m=10, p=0.4, deltas 0:0.95:0.05");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Output out{out_path, {}};
  try {
    int code = 0;
    if (*c_measure) {
      code = cmd_measure(m_privacy, m_adjacency, m_joint, unit, out);
    } else if (*c_tradeoff) {
      code = cmd_tradeoff(t_data, t_scenario, t_privacy, t_dist, t_deltas, t_zsize,
                          t_oracle, t_grid, seed, t_emit, out);
    } else if (*c_common) {
      code = cmd_common_info(ci_joint, out);
    } else if (*c_axioms) {
      code = cmd_check_axioms(a_measure, a_trials, seed, out);
    } else if (*c_sp) {
      code = cmd_sp(sp_m, sp_p, sp_deltas, sp_scenario, sp_fig2, out);
    }
    out.flush();
    return code;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
