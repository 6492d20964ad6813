// Copyright 2026 The tandem-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "teval/recon_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>

#include <Eigen/QR>
#include <json.hpp>

#include "teval/score_io.hpp"
#include "teval/synthgen.hpp"

namespace teval {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_float(const std::string& token, std::size_t line_no) {
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() ||
      end != digits.data() + digits.size() || !std::isfinite(value)) {
    throw ParseError(line_no, "bad embedding value '" + token + "'");
  }
  return value;
}

}  // namespace

std::vector<EmbeddingPair<double>> parse_embedding_pairs(std::istream& in) {
  struct Datum {
    std::optional<VectorXr> raw;
    std::size_t raw_line = 0;
  };
  std::map<std::string, Datum> data;
  std::vector<std::pair<std::string, VectorXr>> anon;
  std::vector<std::size_t> anon_lines;
  std::optional<Eigen::Index> dim;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (fields.size() < 3) throw ParseError(line_no, "expected id, kind, values");
    VectorXr x(static_cast<Eigen::Index>(fields.size() - 2));
    for (std::size_t k = 2; k < fields.size(); ++k) {
      x[static_cast<Eigen::Index>(k - 2)] = parse_float(fields[k], line_no);
    }
    if (dim && *dim != x.size()) {
      throw ParseError(line_no, "dimension " + std::to_string(x.size()) +
                                    " differs from " + std::to_string(*dim));
    }
    dim = x.size();
    if (fields[1] == "raw") {
      Datum& datum = data[fields[0]];
      if (datum.raw) throw DuplicateIdError(line_no, fields[0]);
      datum.raw = std::move(x);
      datum.raw_line = line_no;
    } else if (fields[1] == "anon") {
      anon.emplace_back(fields[0], std::move(x));
      anon_lines.push_back(line_no);
    } else {
      throw ParseError(line_no, "kind must be 'anon' or 'raw', got '" +
                                    fields[1] + "'");
    }
  }

  std::vector<EmbeddingPair<double>> pairs;
  for (std::size_t k = 0; k < anon.size(); ++k) {
    auto it = data.find(anon[k].first);
    if (it == data.end() || !it->second.raw) {
      throw ParseError(anon_lines[k],
                       "no raw embedding for datum '" + anon[k].first + "'");
    }
    pairs.push_back({anon[k].second, *it->second.raw, anon[k].first});
  }
  for (const auto& [id, datum] : data) {
    bool used = false;
    for (const auto& a : anon) used = used || a.first == id;
    if (!used) {
      throw ParseError(datum.raw_line,
                       "datum '" + id + "' has no anonymized embedding");
    }
  }
  return pairs;
}

std::vector<EmbeddingPair<double>> read_embedding_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::kIo, "cannot open '" + path + "'");
  try {
    return parse_embedding_pairs(in);
  } catch (const ParseError& e) {
    throw Error(e.category(), path + ": " + e.what());
  }
}

std::string serialize_embedding_pairs(
    const std::vector<EmbeddingPair<double>>& pairs) {
  std::string out;
  std::map<std::string, bool> raw_written;
  auto append = [&out](const std::string& id, const char* kind,
                       const VectorXr& x) {
    out += id;
    out += ' ';
    out += kind;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      out += ' ';
      out += format_real(x[i]);
    }
    out += '\n';
  };
  for (const auto& p : pairs) {
    if (!raw_written[p.datum_id]) {
      append(p.datum_id, "raw", p.x_raw);
      raw_written[p.datum_id] = true;
    }
    append(p.datum_id, "anon", p.x_anon);
  }
  return out;
}

std::string net_to_json(const ReconNet<double>& net, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["dims"] = net.dims();
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json biases = nlohmann::json::array();
  for (const auto& layer : net.layers()) {
    std::vector<double> w;
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        w.push_back(layer.weight(r, c));
      }
    }
    weights.push_back(w);
    biases.push_back(std::vector<double>(layer.bias.data(),
                                         layer.bias.data() + layer.bias.size()));
  }
  j["weights"] = weights;
  j["biases"] = biases;
  j["activation"] = "tanh";
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

ReconNet<double> net_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    if (j.at("activation").get<std::string>() != "tanh") {
      throw Error(ErrorCategory::kParse, "unsupported activation");
    }
    ReconNet<double> net(j.at("dims").get<std::vector<int>>());
    auto& layers = net.layers();
    const auto& weights = j.at("weights");
    const auto& biases = j.at("biases");
    if (weights.size() != layers.size() || biases.size() != layers.size()) {
      throw Error(ErrorCategory::kShape, "layer count does not match dims");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
      auto w = weights[l].get<std::vector<double>>();
      auto b = biases[l].get<std::vector<double>>();
      auto& layer = layers[l];
      if (static_cast<Eigen::Index>(w.size()) != layer.weight.size() ||
          static_cast<Eigen::Index>(b.size()) != layer.bias.size()) {
        throw Error(ErrorCategory::kShape,
                    "layer " + std::to_string(l) + " has the wrong size");
      }
      for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
          layer.weight(r, c) =
              w[static_cast<std::size_t>(r * layer.weight.cols() + c)];
        }
      }
      layer.bias = as_vector(b);
    }
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCategory::kParse, std::string("bad net JSON: ") + e.what());
  }
}

LinearAnonymizer make_linear_anonymizer(int dim, double scale,
                                        std::uint64_t seed) {
  GaussianSource rng(seed);
  MatrixXr a = MatrixXr::Identity(dim, dim);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a.data()[i] += scale * rng.standard_normal();
  }
  return {a};
}

std::vector<EmbeddingPair<double>> make_linear_pairs(
    const LinearAnonymizer& anonymizer, std::size_t count, double raw_scale,
    std::uint64_t seed, const std::string& id_prefix) {
  GaussianSource rng(seed);
  const Eigen::Index d = anonymizer.mixing.rows();
  std::vector<EmbeddingPair<double>> pairs;
  for (std::size_t k = 0; k < count; ++k) {
    VectorXr raw(d);
    for (Eigen::Index i = 0; i < d; ++i) raw[i] = raw_scale * rng.standard_normal();
    pairs.push_back({anonymizer.mixing * raw, raw,
                     id_prefix + std::to_string(k)});
  }
  return pairs;
}

double mean_reconstruction_error(const ReconNet<double>& net,
                                 const std::vector<EmbeddingPair<double>>& pairs) {
  double total = 0.0;
  for (const auto& p : pairs) total += (net.forward(p.x_anon) - p.x_raw).squaredNorm();
  return total / static_cast<double>(pairs.size());
}

double mean_baseline_error(const std::vector<EmbeddingPair<double>>& pairs) {
  double total = 0.0;
  for (const auto& p : pairs) total += (p.x_anon - p.x_raw).squaredNorm();
  return total / static_cast<double>(pairs.size());
}

ReconNet<double> least_squares_net(
    const std::vector<EmbeddingPair<double>>& pairs) {
  const Eigen::Index d = pairs.front().x_anon.size();
  const auto n = static_cast<Eigen::Index>(pairs.size());
  MatrixXr design(n, d + 1);
  MatrixXr targets(n, d);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& p = pairs[static_cast<std::size_t>(k)];
    design.row(k).head(d) = p.x_anon.transpose();
    design(k, d) = 1.0;
    targets.row(k) = p.x_raw.transpose();
  }
  const MatrixXr solution = design.colPivHouseholderQr().solve(targets);
  ReconNet<double> net({static_cast<int>(d), static_cast<int>(d)});
  net.layers()[0].weight = solution.topRows(d).transpose();
  net.layers()[0].bias = solution.row(d).transpose();
  return net;
}

}  // namespace teval
