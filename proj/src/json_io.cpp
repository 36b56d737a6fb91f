// SPDX-License-Identifier: Apache-2.0

#include "pput/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pput {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Alphabet labels_field(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw InputError(path + ": missing array field \"" + key + "\"");
  }
  std::vector<std::string> labels;
  for (const auto& v : j[key]) {
    if (!v.is_string()) throw InputError(path + ": \"" + std::string(key) +
                                         "\" entries must be strings");
    labels.push_back(v.get<std::string>());
  }
  try {
    return Alphabet(std::move(labels));
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<std::vector<double>> matrix_field(const json& j, const char* key,
                                              std::size_t rows, std::size_t cols,
                                              const std::string& path) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != rows) {
    throw InputError(path + ": field \"" + std::string(key) + "\" must be a " +
                     std::to_string(rows) + "-row array");
  }
  std::vector<std::vector<double>> m;
  for (const auto& row : j[key]) {
    if (!row.is_array() || row.size() != cols) {
      throw InputError(path + ": each \"" + std::string(key) + "\" row needs " +
                       std::to_string(cols) + " numbers");
    }
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw InputError(path + ": non-numeric matrix entry");
      r.push_back(v.get<double>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

JointPmf load_joint(const std::string& path, const Tolerances& tol) {
  json j = parse_file(path);
  Alphabet ax = labels_field(j, "x_labels", path);
  Alphabet ay = labels_field(j, "y_labels", path);
  try {
    if (j.contains("w_labels")) {
      Alphabet aw = labels_field(j, "w_labels", path);
      if (!j.contains("pmf") || !j["pmf"].is_array() || j["pmf"].size() != ax.size()) {
        throw InputError(path + ": \"pmf\" must have one block per x label");
      }
      std::vector<double> flat;
      for (const auto& block : j["pmf"]) {
        json wrap;
        wrap["m"] = block;
        auto m = matrix_field(wrap, "m", ay.size(), aw.size(), path);
        for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
      }
      return JointPmf({ax, ay, aw}, std::move(flat), tol);
    }
    auto m = matrix_field(j, "pmf", ax.size(), ay.size(), path);
    std::vector<double> flat;
    for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
    return JointPmf({ax, ay}, std::move(flat), tol);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

Channel load_channel(const std::string& path, const Tolerances& tol) {
  json j = parse_file(path);
  Alphabet in = labels_field(j, "in_labels", path);
  Alphabet out = labels_field(j, "out_labels", path);
  auto rows = matrix_field(j, "rows", in.size(), out.size(), path);
  try {
    return Channel(std::move(in), std::move(out), std::move(rows), tol);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

DistortionMeasure load_distortion_matrix(const std::string& path) {
  json j = parse_file(path);
  Alphabet ay = labels_field(j, "y_labels", path);
  Alphabet az = labels_field(j, "z_labels", path);
  auto d = matrix_field(j, "d", ay.size(), az.size(), path);
  try {
    return DistortionMeasure::expected(std::move(d));
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

AdjacencyRelation load_adjacency(const std::string& path, const Alphabet& alphabet) {
  json j = parse_file(path);
  if (!j.is_array()) throw InputError(path + ": adjacency must be a list of pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      throw InputError(path + ": each adjacency entry must be a pair of labels");
    }
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  try {
    return AdjacencyRelation(alphabet, std::move(pairs));
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string joint_to_json(const JointPmf& joint) {
  json j;
  j["x_labels"] = joint.axis(0).labels();
  j["y_labels"] = joint.axis(1).labels();
  if (joint.rank() == 3) {
    j["w_labels"] = joint.axis(2).labels();
    std::size_t ny = joint.axis(1).size(), nw = joint.axis(2).size();
    json blocks = json::array();
    for (std::size_t x = 0; x < joint.axis(0).size(); ++x) {
      json block = json::array();
      for (std::size_t y = 0; y < ny; ++y) {
        json row = json::array();
        for (std::size_t w = 0; w < nw; ++w) row.push_back(joint.at(x, y, w));
        block.push_back(std::move(row));
      }
      blocks.push_back(std::move(block));
    }
    j["pmf"] = std::move(blocks);
  } else {
    json rows = json::array();
    for (std::size_t x = 0; x < joint.axis(0).size(); ++x) {
      json row = json::array();
      for (std::size_t y = 0; y < joint.axis(1).size(); ++y)
        row.push_back(joint.at(x, y));
      rows.push_back(std::move(row));
    }
    j["pmf"] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

std::string channel_to_json(const Channel& channel) {
  json j;
  j["in_labels"] = channel.input_alphabet().labels();
  j["out_labels"] = channel.output_alphabet().labels();
  json rows = json::array();
  for (std::size_t i = 0; i < channel.input_alphabet().size(); ++i) {
    json row = json::array();
    if (channel.row_present(i)) {
      for (double v : channel.row(i)) row.push_back(v);
    } else {
      for (std::size_t z = 0; z < channel.output_alphabet().size(); ++z)
        row.push_back(nullptr);
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
}

}  // namespace pput
