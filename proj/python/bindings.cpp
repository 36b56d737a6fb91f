// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the main operations: distributions and channels,
// leakage/distortion evaluation, common-information analysis, the
// symmetric-pair closed forms, and the tradeoff solver.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pput/axioms.hpp"
#include "pput/common_info.hpp"
#include "pput/measures.hpp"
#include "pput/probability.hpp"
#include "pput/scenario_solver.hpp"
#include "pput/symmetric_pair.hpp"

namespace py = pybind11;
using namespace pput;

namespace {

JointPmf make_joint(const std::vector<std::string>& x_labels,
                    const std::vector<std::string>& y_labels,
                    const std::vector<std::vector<double>>& pmf) {
  std::vector<double> flat;
  for (const auto& row : pmf) flat.insert(flat.end(), row.begin(), row.end());
  return JointPmf({Alphabet(x_labels), Alphabet(y_labels)}, std::move(flat));
}

PrivacyMeasure measure_by_name(const std::string& name) {
  if (name == "mi") return PrivacyMeasure::mi();
  if (name == "mil") return PrivacyMeasure::maximal();
  if (name == "sibson") return PrivacyMeasure::sibson();
  if (name == "ip") return PrivacyMeasure::ip();
  throw std::invalid_argument("unknown measure (dp needs explicit adjacency): " +
                              name);
}

ScenarioKind kind_by_name(const std::string& name) {
  if (name == "fd") return ScenarioKind::FullData;
  if (name == "op") return ScenarioKind::OutputPerturbation;
  if (name == "inf") return ScenarioKind::Inference;
  throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace

PYBIND11_MODULE(_pput, m) {
  m.doc() = "Privacy-utility tradeoffs for finite-alphabet mechanisms";

  py::class_<Alphabet>(m, "Alphabet")
      .def(py::init<std::vector<std::string>>())
      .def("labels", &Alphabet::labels)
      .def("__len__", &Alphabet::size);

  py::class_<JointPmf>(m, "JointPmf")
      .def("probs", &JointPmf::probs)
      .def("rank", &JointPmf::rank);

  py::class_<Channel>(m, "Channel")
      .def("row", &Channel::row)
      .def("row_present", &Channel::row_present);

  m.def("make_joint", &make_joint, py::arg("x_labels"), py::arg("y_labels"),
        py::arg("pmf"));
  m.def("entropy", [](const std::vector<double>& p) { return entropy(p); });
  m.def("mutual_information",
        [](const JointPmf& j) { return mutual_information(j); });
  m.def("leakage", [](const std::string& name, const JointPmf& j) {
    return leakage(measure_by_name(name), j);
  });

  m.def("common_information",
        [](const JointPmf& j) { return gk_common_information(j); });
  m.def("common_information_equals_mi",
        [](const JointPmf& j) { return ci_equals_mi(j); });

  m.def("sp_joint", [](std::size_t mm, double p) { return sp_joint({mm, p}); });
  m.def("r_m", [](std::size_t mm, double p) { return r_m({mm, p}); });
  auto closed = [](ClosedFormResult r) { return py::make_tuple(r.value, r.branch); };
  m.def("pi_fd", [closed](std::size_t mm, double p, double d) {
    return closed(pi_fd_closed({mm, p}, d));
  });
  m.def("pi_op", [closed](std::size_t mm, double p, double d) {
    return closed(pi_op_closed({mm, p}, d));
  });
  m.def("pi_inf", [closed](std::size_t mm, double p, double d) {
    return closed(pi_inf_closed({mm, p}, d));
  });

  m.def(
      "solve_tradeoff_point",
      [](const JointPmf& data, const std::string& scenario, double delta,
         std::uint64_t seed) {
        Scenario sc(data, kind_by_name(scenario));
        SolverOptions opts;
        opts.seed = seed;
        TradeoffPoint pt =
            solve_point(sc, DistortionMeasure::prob_error(), delta, opts);
        py::dict out;
        out["delta"] = pt.delta;
        out["pi_nats"] = pt.pi;
        out["status"] = pt.status_string();
        out["gap"] = pt.gap;
        return out;
      },
      py::arg("data"), py::arg("scenario"), py::arg("delta"), py::arg("seed") = 0,
      "min I(X;Z) s.t. Pr(Y != Z) <= delta under fd/op/inf observation");
}
