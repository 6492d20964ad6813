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

#ifndef TEVAL_TYPES_HPP
#define TEVAL_TYPES_HPP

#include <vector>

#include <Eigen/Core>

namespace teval {

using real = double;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXr = Vector<real>;
using MatrixXr = Matrix<real>;

// Read-only view accepted by the metric functions; binds to VectorXr,
// column blocks and mapped std::vector storage without copying.
using ScoresRef = Eigen::Ref<const VectorXr>;

inline Eigen::Map<const VectorXr> as_vector(const std::vector<real>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace teval

#endif  // TEVAL_TYPES_HPP
