// SPDX-License-Identifier: Apache-2.0

#include "pput/measures.hpp"

#include <algorithm>
#include <cmath>

namespace pput {

AdjacencyRelation::AdjacencyRelation(
    Alphabet alphabet, std::vector<std::pair<std::string, std::string>> pairs)
    : alphabet_(std::move(alphabet)) {
  for (const auto& [a, b] : pairs) {
    std::size_t i = alphabet_.index_of(a);
    std::size_t j = alphabet_.index_of(b);
    if (i == j) throw std::invalid_argument("AdjacencyRelation: reflexive pair");
    pairs_.emplace(std::min(i, j), std::max(i, j));
  }
}

AdjacencyRelation AdjacencyRelation::hamming1(const Alphabet& alphabet) {
  std::size_t len = alphabet.label(0).size();
  for (const auto& l : alphabet.labels()) {
    if (l.size() != len || l.find_first_not_of("01") != std::string::npos) {
      throw std::invalid_argument(
          "hamming1: labels must be equal-length bit strings");
    }
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    for (std::size_t j = i + 1; j < alphabet.size(); ++j) {
      const auto& a = alphabet.label(i);
      const auto& b = alphabet.label(j);
      std::size_t dist = 0;
      for (std::size_t k = 0; k < len; ++k) dist += a[k] != b[k];
      if (dist == 1) pairs.emplace_back(a, b);
    }
  }
  return AdjacencyRelation(alphabet, std::move(pairs));
}

AdjacencyRelation AdjacencyRelation::relabeled(
    const std::vector<std::size_t>& perm) const {
  // perm maps old index -> new index over the same label multiset reordered.
  if (perm.size() != alphabet_.size()) {
    throw std::invalid_argument("relabeled: permutation size mismatch");
  }
  std::vector<std::string> labels(alphabet_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    labels.at(perm[i]) = alphabet_.label(i);
  }
  Alphabet permuted(labels);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [i, j] : pairs_) {
    pairs.emplace_back(alphabet_.label(i), alphabet_.label(j));
  }
  return AdjacencyRelation(std::move(permuted), std::move(pairs));
}

DistortionMeasure DistortionMeasure::expected(std::vector<std::vector<double>> d) {
  for (const auto& row : d) {
    for (double v : row) {
      if (!(v >= 0.0)) throw std::invalid_argument("expected: negative entry");
    }
  }
  return {DistortionKind::ExpectedDistortion, std::move(d), {}, 0.0};
}

DistortionMeasure DistortionMeasure::witness(JointPmf target, double tol) {
  if (target.rank() != 2) throw std::invalid_argument("witness: 2-axis target");
  return {DistortionKind::WitnessIndicator, {}, std::move(target), tol};
}

double maximal_information_leakage(const JointPmf& joint, const Tolerances& tol) {
  Pmf px = marginal_pmf(joint, 0);
  Pmf pz = marginal_pmf(joint, 1);
  double hx = entropy(px, tol);
  double min_cond = kInf;
  for (std::size_t z = 0; z < pz.size(); ++z) {
    if (pz[z] <= tol.support) continue;
    std::vector<double> post(px.size());
    for (std::size_t x = 0; x < px.size(); ++x) post[x] = joint.at(x, z) / pz[z];
    min_cond = std::min(min_cond, entropy(post, tol));
  }
  if (min_cond == kInf) throw std::invalid_argument("maximal_information_leakage: empty support");
  double v = hx - min_cond;
  return v < 0.0 ? 0.0 : v;
}

double sibson_infinity(const JointPmf& joint, const Tolerances& tol) {
  Pmf px = marginal_pmf(joint, 0);
  std::size_t nz = joint.axis(1).size();
  double total = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    double best = 0.0;
    for (std::size_t x = 0; x < px.size(); ++x) {
      if (px[x] <= tol.support) continue;
      best = std::max(best, joint.at(x, z) / px[x]);
    }
    total += best;
  }
  double v = std::log(total);
  return v < 0.0 ? 0.0 : v;
}

double sibson_infinity(const Channel& channel, const Pmf& input,
                       const Tolerances& tol) {
  std::size_t nz = channel.output_alphabet().size();
  double total = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    double best = 0.0;
    for (std::size_t x = 0; x < input.size(); ++x) {
      if (input[x] <= tol.support) continue;
      best = std::max(best, channel.row(x)[z]);
    }
    total += best;
  }
  double v = std::log(total);
  return v < 0.0 ? 0.0 : v;
}

double information_privacy(const JointPmf& joint, const Tolerances& tol) {
  Pmf px = marginal_pmf(joint, 0);
  Pmf pz = marginal_pmf(joint, 1);
  double worst = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] <= tol.support) continue;
    for (std::size_t z = 0; z < pz.size(); ++z) {
      if (pz[z] <= tol.support) continue;
      double ratio = joint.at(x, z) / (px[x] * pz[z]);
      if (ratio <= 0.0) return kInf;
      worst = std::max(worst, std::abs(std::log(ratio)));
    }
  }
  return worst;
}

double information_privacy_sets(const JointPmf& joint, const Tolerances& tol) {
  Pmf px = marginal_pmf(joint, 0);
  Pmf pz = marginal_pmf(joint, 1);
  std::size_t nx = px.size(), nz = pz.size();
  if (nx > 16 || nz > 16) {
    throw std::invalid_argument("information_privacy_sets: alphabet too large");
  }
  double worst = 0.0;
  for (std::size_t a = 1; a < (1u << nx); ++a) {
    double pa = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      if (a & (1u << x)) pa += px[x];
    if (pa <= tol.support) continue;
    for (std::size_t b = 1; b < (1u << nz); ++b) {
      double pb = 0.0, pab = 0.0;
      for (std::size_t z = 0; z < nz; ++z) {
        if (!(b & (1u << z))) continue;
        pb += pz[z];
        for (std::size_t x = 0; x < nx; ++x)
          if (a & (1u << x)) pab += joint.at(x, z);
      }
      if (pb <= tol.support) continue;
      double ratio = pab / (pa * pb);
      if (ratio <= 0.0) return kInf;
      worst = std::max(worst, std::abs(std::log(ratio)));
    }
  }
  return worst;
}

double differential_privacy(const Channel& channel,
                            const AdjacencyRelation& adjacency) {
  if (adjacency.empty()) {
    throw std::invalid_argument("differential_privacy: empty adjacency");
  }
  if (adjacency.alphabet() != channel.input_alphabet()) {
    throw std::invalid_argument("differential_privacy: adjacency alphabet mismatch");
  }
  std::size_t nz = channel.output_alphabet().size();
  double worst = 0.0;
  for (const auto& [i, j] : adjacency.pairs()) {
    if (!channel.row_present(i) || !channel.row_present(j)) continue;
    for (std::size_t z = 0; z < nz; ++z) {
      double a = channel.row(i)[z], b = channel.row(j)[z];
      if (a == 0.0 && b == 0.0) continue;  // |ln(0/0)| = 0
      if (a == 0.0 || b == 0.0) return kInf;
      worst = std::max(worst, std::abs(std::log(a / b)));
    }
  }
  return worst;
}

double leakage(const PrivacyMeasure& measure, const JointPmf& joint,
               const Tolerances& tol) {
  if (joint.rank() != 2) throw std::invalid_argument("leakage: 2-axis joint required");
  double value;
  switch (measure.kind) {
    case PrivacyKind::MutualInformation:
      value = mutual_information(joint, tol);
      break;
    case PrivacyKind::MaximalInformationLeakage:
      value = maximal_information_leakage(joint, tol);
      break;
    case PrivacyKind::SibsonInfinity:
      value = sibson_infinity(joint, tol);
      break;
    case PrivacyKind::InformationPrivacy:
      value = information_privacy(joint, tol);
      break;
    case PrivacyKind::DifferentialPrivacy: {
      if (!measure.adjacency) {
        throw std::invalid_argument("leakage: DP requires an adjacency relation");
      }
      value = differential_privacy(condition(joint, 0, tol), *measure.adjacency);
      break;
    }
    default:
      throw std::logic_error("leakage: unknown measure kind");
  }
  // Summation noise below the zero-information threshold reads as zero.
  return value <= tol.info ? 0.0 : value;
}

double distortion(const DistortionMeasure& measure, const JointPmf& yz,
                  const Tolerances& tol) {
  if (yz.rank() != 2) throw std::invalid_argument("distortion: 2-axis joint required");
  std::size_t ny = yz.axis(0).size(), nz = yz.axis(1).size();
  switch (measure.kind) {
    case DistortionKind::ExpectedDistortion: {
      if (measure.d.size() != ny) {
        throw std::invalid_argument("distortion: matrix shape mismatch");
      }
      double total = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        if (measure.d[y].size() != nz) {
          throw std::invalid_argument("distortion: matrix shape mismatch");
        }
        for (std::size_t z = 0; z < nz; ++z) total += measure.d[y][z] * yz.at(y, z);
      }
      return total;
    }
    case DistortionKind::ProbabilityOfError: {
      if (yz.axis(0) != yz.axis(1)) {
        throw std::invalid_argument("distortion: prob-error requires Z = Y alphabet");
      }
      double agree = 0.0;
      for (std::size_t y = 0; y < ny; ++y) agree += yz.at(y, y);
      return 1.0 - agree;
    }
    case DistortionKind::ConditionalEntropy: {
      Pmf pz = marginal_pmf(yz, 1);
      double h = 0.0;
      for (std::size_t z = 0; z < nz; ++z) {
        if (pz[z] <= tol.support) continue;
        std::vector<double> post(ny);
        for (std::size_t y = 0; y < ny; ++y) post[y] = yz.at(y, z) / pz[z];
        h += pz[z] * entropy(post, tol);
      }
      return h;
    }
    case DistortionKind::WitnessIndicator: {
      const JointPmf& target = *measure.target;
      if (target.axis(0) != yz.axis(0) || target.axis(1) != yz.axis(1)) {
        throw std::invalid_argument("distortion: witness target alphabet mismatch");
      }
      double dev = 0.0;
      for (std::size_t i = 0; i < yz.probs().size(); ++i) {
        dev = std::max(dev, std::abs(yz.probs()[i] - target.probs()[i]));
      }
      return dev <= measure.witness_tol ? 1.0 : 2.0;
    }
  }
  throw std::logic_error("distortion: unknown measure kind");
}

}  // namespace pput
