// SPDX-License-Identifier: Apache-2.0

#include "pput/probability.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace pput {

namespace {

void check_nonnegative(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0)) {
      throw std::invalid_argument(std::string(what) + ": negative or NaN entry");
    }
  }
}

void normalize_mass(std::vector<double>& v, double tol_pmf, const char* what) {
  double mass = std::accumulate(v.begin(), v.end(), 0.0);
  if (std::abs(mass - 1.0) > tol_pmf) {
    throw std::invalid_argument(std::string(what) + ": mass " +
                                std::to_string(mass) + " is not 1");
  }
  for (double& x : v) x /= mass;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("Alphabet: empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw std::invalid_argument("Alphabet: duplicate label '" + l + "'");
    }
  }
}

std::size_t Alphabet::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw std::invalid_argument("Alphabet: unknown label '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

Alphabet Alphabet::integers(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return Alphabet(std::move(labels));
}

Alphabet Alphabet::product(const Alphabet& a, const Alphabet& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (const auto& la : a.labels()) {
    for (const auto& lb : b.labels()) labels.push_back(la + "," + lb);
  }
  return Alphabet(std::move(labels));
}

Pmf::Pmf(Alphabet alphabet, std::vector<double> probs, const Tolerances& tol)
    : alphabet_(std::move(alphabet)), p_(std::move(probs)) {
  if (p_.size() != alphabet_.size()) {
    throw std::invalid_argument("Pmf: size mismatch with alphabet");
  }
  check_nonnegative(p_, "Pmf");
  normalize_mass(p_, tol.pmf, "Pmf");
}

Pmf Pmf::uniform(Alphabet alphabet) {
  std::vector<double> p(alphabet.size(), 1.0 / static_cast<double>(alphabet.size()));
  return Pmf(std::move(alphabet), std::move(p));
}

Pmf Pmf::point_mass(Alphabet alphabet, std::size_t at) {
  if (at >= alphabet.size()) throw std::invalid_argument("Pmf: point mass index");
  std::vector<double> p(alphabet.size(), 0.0);
  p[at] = 1.0;
  return Pmf(std::move(alphabet), std::move(p));
}

JointPmf::JointPmf(std::vector<Alphabet> axes, std::vector<double> probs,
                   const Tolerances& tol)
    : axes_(std::move(axes)), p_(std::move(probs)) {
  if (axes_.size() != 2 && axes_.size() != 3) {
    throw std::invalid_argument("JointPmf: only 2 or 3 axes supported");
  }
  std::size_t n = 1;
  for (const auto& a : axes_) n *= a.size();
  if (p_.size() != n) throw std::invalid_argument("JointPmf: tensor size mismatch");
  check_nonnegative(p_, "JointPmf");
  normalize_mass(p_, tol.pmf, "JointPmf");
}

double JointPmf::at(std::size_t i, std::size_t j) const {
  if (rank() != 2) throw std::invalid_argument("JointPmf::at: rank != 2");
  return p_.at(i * axes_[1].size() + j);
}

double JointPmf::at(std::size_t i, std::size_t j, std::size_t k) const {
  if (rank() != 3) throw std::invalid_argument("JointPmf::at: rank != 3");
  return p_.at((i * axes_[1].size() + j) * axes_[2].size() + k);
}

JointPmf JointPmf::product(const Pmf& p, const Pmf& q) {
  std::vector<double> t(p.size() * q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) t[i * q.size() + j] = p[i] * q[j];
  }
  return JointPmf({p.alphabet(), q.alphabet()}, std::move(t));
}

Channel::Channel(Alphabet input, Alphabet output,
                 std::vector<std::vector<double>> rows, const Tolerances& tol)
    : Channel(std::move(input), std::move(output), std::move(rows),
              std::vector<bool>(), tol) {}

Channel::Channel(Alphabet input, Alphabet output,
                 std::vector<std::vector<double>> rows, std::vector<bool> present,
                 const Tolerances& tol)
    : in_(std::move(input)), out_(std::move(output)), rows_(std::move(rows)),
      present_(std::move(present)) {
  if (present_.empty()) present_.assign(in_.size(), true);
  if (rows_.size() != in_.size() || present_.size() != in_.size()) {
    throw std::invalid_argument("Channel: row count mismatch with input alphabet");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!present_[i]) continue;
    if (rows_[i].size() != out_.size()) {
      throw std::invalid_argument("Channel: row width mismatch with output alphabet");
    }
    check_nonnegative(rows_[i], "Channel row");
    normalize_mass(rows_[i], tol.pmf, "Channel row");
  }
}

const std::vector<double>& Channel::row(std::size_t i) const {
  if (!present_.at(i)) {
    throw std::invalid_argument("Channel: row '" + in_.label(i) +
                                "' is absent (zero-probability conditional)");
  }
  return rows_[i];
}

Channel Channel::identity(const Alphabet& a) {
  std::vector<std::vector<double>> rows(a.size(), std::vector<double>(a.size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) rows[i][i] = 1.0;
  return Channel(a, a, std::move(rows));
}

Channel Channel::constant(const Alphabet& input, const Pmf& q) {
  std::vector<std::vector<double>> rows(input.size(), q.probs());
  return Channel(input, q.alphabet(), std::move(rows));
}

Channel Channel::compose_after(const Channel& first, const Tolerances& tol) const {
  if (first.out_ != in_) {
    throw std::invalid_argument("Channel::compose_after: alphabet mismatch");
  }
  std::vector<std::vector<double>> rows(first.in_.size(),
                                        std::vector<double>(out_.size(), 0.0));
  std::vector<bool> present(first.in_.size(), true);
  for (std::size_t a = 0; a < first.in_.size(); ++a) {
    if (!first.present_[a]) {
      present[a] = false;
      continue;
    }
    for (std::size_t b = 0; b < in_.size(); ++b) {
      double pb = first.rows_[a][b];
      if (pb <= 0.0) continue;
      for (std::size_t c = 0; c < out_.size(); ++c) {
        rows[a][c] += pb * row(b)[c];
      }
    }
  }
  return Channel(first.in_, out_, std::move(rows), std::move(present), tol);
}

JointPmf marginal(const JointPmf& joint, const std::vector<std::size_t>& keep_axes) {
  if (keep_axes.size() < 2) {
    throw std::invalid_argument("marginal: use marginal_pmf for a single axis");
  }
  std::vector<std::size_t> sorted = keep_axes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.back() >= joint.rank()) {
    throw std::invalid_argument("marginal: invalid axis indices");
  }
  std::vector<Alphabet> out_axes;
  for (std::size_t a : keep_axes) out_axes.push_back(joint.axis(a));

  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < joint.rank(); ++i) dims.push_back(joint.axis(i).size());
  std::size_t out_n = 1;
  for (const auto& a : out_axes) out_n *= a.size();
  std::vector<double> out(out_n, 0.0);

  std::vector<std::size_t> idx(joint.rank(), 0);
  const auto& p = joint.probs();
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t d = joint.rank(); d-- > 0;) {
      idx[d] = rem % dims[d];
      rem /= dims[d];
    }
    std::size_t o = 0;
    for (std::size_t a : keep_axes) o = o * joint.axis(a).size() + idx[a];
    out[o] += p[flat];
  }
  return JointPmf(std::move(out_axes), std::move(out));
}

Pmf marginal_pmf(const JointPmf& joint, std::size_t keep_axis) {
  if (keep_axis >= joint.rank()) throw std::invalid_argument("marginal_pmf: axis");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < joint.rank(); ++i) dims.push_back(joint.axis(i).size());
  std::vector<double> out(dims[keep_axis], 0.0);
  const auto& p = joint.probs();
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    std::size_t rem = flat, k = 0;
    for (std::size_t d = joint.rank(); d-- > 0;) {
      std::size_t id = rem % dims[d];
      rem /= dims[d];
      if (d == keep_axis) k = id;
    }
    out[k] += p[flat];
  }
  return Pmf(joint.axis(keep_axis), std::move(out));
}

Channel condition(const JointPmf& joint, std::size_t given_axis,
                  const Tolerances& tol) {
  if (joint.rank() != 2 || given_axis > 1) {
    throw std::invalid_argument("condition: two-axis joint required");
  }
  std::size_t other = 1 - given_axis;
  const Alphabet& in = joint.axis(given_axis);
  const Alphabet& out = joint.axis(other);
  std::vector<std::vector<double>> rows(in.size(), std::vector<double>(out.size(), 0.0));
  std::vector<bool> present(in.size(), true);
  for (std::size_t g = 0; g < in.size(); ++g) {
    double mass = 0.0;
    for (std::size_t o = 0; o < out.size(); ++o) {
      double v = given_axis == 0 ? joint.at(g, o) : joint.at(o, g);
      rows[g][o] = v;
      mass += v;
    }
    if (mass <= tol.support) {
      present[g] = false;
      continue;
    }
    for (double& v : rows[g]) v /= mass;
  }
  return Channel(in, out, std::move(rows), std::move(present), tol);
}

JointPmf push_mechanism(const JointPmf& data, const Channel& obs,
                        const Channel& mech, const Tolerances& tol) {
  if (data.rank() != 2) throw std::invalid_argument("push_mechanism: data must be 2-axis");
  const Alphabet& ax = data.axis(0);
  const Alphabet& ay = data.axis(1);
  if (obs.input_alphabet() != Alphabet::product(ax, ay)) {
    throw std::invalid_argument("push_mechanism: obs input must be product(X,Y)");
  }
  if (mech.input_alphabet() != obs.output_alphabet()) {
    throw std::invalid_argument("push_mechanism: mech input must match obs output");
  }
  const Alphabet& az = mech.output_alphabet();
  std::size_t nw = obs.output_alphabet().size();
  std::vector<double> out(ax.size() * ay.size() * az.size(), 0.0);
  for (std::size_t x = 0; x < ax.size(); ++x) {
    for (std::size_t y = 0; y < ay.size(); ++y) {
      double pxy = data.at(x, y);
      if (pxy <= 0.0) continue;
      std::size_t xy = x * ay.size() + y;
      for (std::size_t w = 0; w < nw; ++w) {
        double pw = obs.row(xy)[w];
        if (pw <= 0.0) continue;
        if (!mech.row_present(w)) continue;
        for (std::size_t z = 0; z < az.size(); ++z) {
          out[(x * ay.size() + y) * az.size() + z] += pxy * pw * mech.row(w)[z];
        }
      }
    }
  }
  return JointPmf({ax, ay, az}, std::move(out), tol);
}

double entropy(const std::vector<double>& p, const Tolerances& tol) {
  double h = 0.0;
  for (double x : p) {
    if (x > tol.support) h -= x * std::log(x);
  }
  return h < 0.0 ? 0.0 : h;
}

double entropy(const Pmf& p, const Tolerances& tol) { return entropy(p.probs(), tol); }

double mutual_information(const JointPmf& joint, const Tolerances& tol) {
  if (joint.rank() != 2) throw std::invalid_argument("mutual_information: rank != 2");
  Pmf px = marginal_pmf(joint, 0);
  Pmf pz = marginal_pmf(joint, 1);
  double mi = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    for (std::size_t j = 0; j < pz.size(); ++j) {
      double pij = joint.at(i, j);
      if (pij > tol.support) mi += pij * std::log(pij / (px[i] * pz[j]));
    }
  }
  return mi < 0.0 ? 0.0 : mi;
}

double conditional_mutual_information(const JointPmf& joint, const Tolerances& tol) {
  if (joint.rank() != 3) {
    throw std::invalid_argument("conditional_mutual_information: rank != 3");
  }
  std::size_t na = joint.axis(0).size(), nb = joint.axis(1).size(),
              nc = joint.axis(2).size();
  double cmi = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    double pb = 0.0;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t c = 0; c < nc; ++c) pb += joint.at(a, b, c);
    if (pb <= tol.support) continue;
    // I(A;C | B=b) from the slice.
    std::vector<double> pa(na, 0.0), pc(nc, 0.0);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t c = 0; c < nc; ++c) {
        pa[a] += joint.at(a, b, c);
        pc[c] += joint.at(a, b, c);
      }
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t c = 0; c < nc; ++c) {
        double pac = joint.at(a, b, c);
        if (pac > tol.support) cmi += pac * std::log(pac * pb / (pa[a] * pc[c]));
      }
    }
  }
  return cmi < 0.0 ? 0.0 : cmi;
}

bool is_markov(const JointPmf& joint, const Tolerances& tol) {
  return conditional_mutual_information(joint, tol) <= tol.info;
}

}  // namespace pput
