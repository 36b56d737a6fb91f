// SPDX-License-Identifier: Apache-2.0
//
// File formats: joints as {"x_labels", "y_labels", "pmf"} (plus "w_labels"
// and a 3-deep array for three axes), channels as {"in_labels",
// "out_labels", "rows"}, distortion matrices as {"y_labels", "z_labels",
// "d"}, adjacency as a list of label pairs.

#pragma once

#include <string>

#include "pput/measures.hpp"
#include "pput/probability.hpp"

namespace pput {

// Raised on malformed input; message carries the parse location when the
// JSON itself is invalid.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

JointPmf load_joint(const std::string& path, const Tolerances& tol = Tolerances{});
Channel load_channel(const std::string& path, const Tolerances& tol = Tolerances{});
DistortionMeasure load_distortion_matrix(const std::string& path);
AdjacencyRelation load_adjacency(const std::string& path, const Alphabet& alphabet);

std::string joint_to_json(const JointPmf& joint);
std::string channel_to_json(const Channel& channel);

void save_text(const std::string& path, const std::string& text);

}  // namespace pput
