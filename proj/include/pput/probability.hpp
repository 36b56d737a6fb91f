// SPDX-License-Identifier: Apache-2.0
//
// Finite-alphabet distributions and channels: construction, validation,
// marginalization, conditioning, composition, and the information
// quantities used throughout the library. All information values are in
// nats; convert to bits at the output layer.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pput {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double nats_to_bits(double nats) { return nats / std::log(2.0); }
inline double bits_to_nats(double bits) { return bits * std::log(2.0); }

struct Tolerances {
  double pmf = 1e-9;      // max deviation of total mass from 1
  double support = 1e-12; // below this a probability counts as zero
  double info = 1e-9;     // nats; threshold for "mutual information is zero"
};

// Ordered list of distinct symbol names. Order is part of identity.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  // Index of a label; throws if absent.
  std::size_t index_of(const std::string& label) const;
  bool operator==(const Alphabet& o) const { return labels_ == o.labels_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

  // {"0", "1", ..., "n-1"}
  static Alphabet integers(std::size_t n);
  // Labels "a,b" for every pair, a-major.
  static Alphabet product(const Alphabet& a, const Alphabet& b);

 private:
  std::vector<std::string> labels_;
};

// Probability mass function over a labeled alphabet. Entries within
// tol.pmf of total mass 1 are renormalized at construction; anything
// further off is rejected.
class Pmf {
 public:
  Pmf(Alphabet alphabet, std::vector<double> probs,
      const Tolerances& tol = Tolerances{});

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_.at(i); }
  const std::vector<double>& probs() const { return p_; }

  static Pmf uniform(Alphabet alphabet);
  static Pmf point_mass(Alphabet alphabet, std::size_t at);

 private:
  Alphabet alphabet_;
  std::vector<double> p_;
};

// Dense joint distribution over 2 or 3 labeled axes (row-major tensor).
class JointPmf {
 public:
  JointPmf(std::vector<Alphabet> axes, std::vector<double> probs,
           const Tolerances& tol = Tolerances{});

  std::size_t rank() const { return axes_.size(); }
  const Alphabet& axis(std::size_t i) const { return axes_.at(i); }
  const std::vector<Alphabet>& axes() const { return axes_; }
  const std::vector<double>& probs() const { return p_; }

  double at(std::size_t i, std::size_t j) const;
  double at(std::size_t i, std::size_t j, std::size_t k) const;

  // Product distribution p ⊗ q.
  static JointPmf product(const Pmf& p, const Pmf& q);

 private:
  std::vector<Alphabet> axes_;
  std::vector<double> p_;
};

// Row-stochastic kernel. Rows may be absent (conditioning on a
// zero-probability symbol yields no row rather than a fabricated one).
class Channel {
 public:
  Channel(Alphabet input, Alphabet output, std::vector<std::vector<double>> rows,
          const Tolerances& tol = Tolerances{});
  // With explicit row presence mask.
  Channel(Alphabet input, Alphabet output, std::vector<std::vector<double>> rows,
          std::vector<bool> present, const Tolerances& tol = Tolerances{});

  const Alphabet& input_alphabet() const { return in_; }
  const Alphabet& output_alphabet() const { return out_; }
  bool row_present(std::size_t i) const { return present_.at(i); }
  // Row for input symbol i; throws if absent.
  const std::vector<double>& row(std::size_t i) const;
  double at(std::size_t z, std::size_t w) const { return row(w).at(z); }

  static Channel identity(const Alphabet& a);
  // Every row equals q.
  static Channel constant(const Alphabet& input, const Pmf& q);
  // this ∘ first: rows of `first` feed into `this`.
  Channel compose_after(const Channel& first,
                        const Tolerances& tol = Tolerances{}) const;

 private:
  Alphabet in_, out_;
  std::vector<std::vector<double>> rows_;
  std::vector<bool> present_;
};

// --- operations ------------------------------------------------------

// Sum out the axes not listed in keep_axes; result axes follow keep_axes
// order. keep_axes must be valid and distinct.
JointPmf marginal(const JointPmf& joint, const std::vector<std::size_t>& keep_axes);
Pmf marginal_pmf(const JointPmf& joint, std::size_t keep_axis);

// Conditional distribution of the other axis given `given_axis` of a
// two-axis joint. Rows for symbols with marginal probability <= tol.support
// are absent.
Channel condition(const JointPmf& joint, std::size_t given_axis,
                  const Tolerances& tol = Tolerances{});

// Full joint P_{X,Y} P_{W|X,Y} P_{Z|W} marginalized over W. `obs` has input
// alphabet product(X, Y); `mech` maps W to Z.
JointPmf push_mechanism(const JointPmf& data, const Channel& obs,
                        const Channel& mech, const Tolerances& tol = Tolerances{});

// -sum p log p, natural log, 0 log 0 = 0.
double entropy(const Pmf& p, const Tolerances& tol = Tolerances{});
double entropy(const std::vector<double>& p, const Tolerances& tol = Tolerances{});

// I(X;Z) of a two-axis joint, in nats.
double mutual_information(const JointPmf& joint, const Tolerances& tol = Tolerances{});

// I(A;C|B) of a three-axis joint (A,B,C), in nats.
double conditional_mutual_information(const JointPmf& joint,
                                      const Tolerances& tol = Tolerances{});

// True iff I(A;C|B) <= tol.info.
bool is_markov(const JointPmf& joint, const Tolerances& tol = Tolerances{});

}  // namespace pput
