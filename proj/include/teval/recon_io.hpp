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

#ifndef TEVAL_RECON_IO_HPP
#define TEVAL_RECON_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "teval/recon_attack.hpp"

namespace teval {

// Embedding pair file: "<datum_id> anon <d floats>" and
// "<datum_id> raw <d floats>" lines. Each datum has exactly one raw line and
// one or more anon lines; every anon line yields one pair, in file order.
std::vector<EmbeddingPair<double>> parse_embedding_pairs(std::istream& in);
std::vector<EmbeddingPair<double>> read_embedding_pairs(const std::string& path);
std::string serialize_embedding_pairs(
    const std::vector<EmbeddingPair<double>>& pairs);

// {"dims", "weights" (row-major, one list per layer), "biases",
//  "activation", "seed"}
std::string net_to_json(const ReconNet<double>& net, std::uint64_t seed);
ReconNet<double> net_from_json(const std::string& text);

// Synthetic linear anonymiser x_anon = A x_raw with A = I + scale * G,
// G standard normal. Raw embeddings are standard normal times raw_scale.
struct LinearAnonymizer {
  MatrixXr mixing;
};
LinearAnonymizer make_linear_anonymizer(int dim, double scale,
                                        std::uint64_t seed);
std::vector<EmbeddingPair<double>> make_linear_pairs(
    const LinearAnonymizer& anonymizer, std::size_t count, double raw_scale,
    std::uint64_t seed, const std::string& id_prefix = "d");

// Mean |F(x_anon) - x_raw|^2 over pairs.
double mean_reconstruction_error(const ReconNet<double>& net,
                                 const std::vector<EmbeddingPair<double>>& pairs);
// Mean |x_anon - x_raw|^2, i.e. the error without any attack.
double mean_baseline_error(const std::vector<EmbeddingPair<double>>& pairs);

// Affine least-squares fit x_raw ~ W x_anon + b over the pairs.
ReconNet<double> least_squares_net(
    const std::vector<EmbeddingPair<double>>& pairs);

}  // namespace teval

#endif  // TEVAL_RECON_IO_HPP
