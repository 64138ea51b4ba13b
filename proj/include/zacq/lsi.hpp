// Copyright 2026 The ZaCQ Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZACQ_LSI_HPP_
#define ZACQ_LSI_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "zacq/vecsearch.hpp"

namespace zacq {

inline constexpr std::uint64_t kLsiSeed = 0x5eed1e55ULL;

struct TruncatedSvd {
  Eigen::MatrixXd u;  // m x rank, orthonormal columns
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd v;  // n x rank
};

// Rank-`rank` SVD by randomized subspace iteration with Gaussian test
// vectors. Deterministic for a fixed seed.
TruncatedSvd randomized_svd(const Eigen::MatrixXd& a, std::size_t rank, std::uint64_t seed = kLsiSeed,
                            int power_iterations = 4);

struct LsiModel {
  std::size_t dims = 0;
  std::vector<TermId> term_ids;      // row order of term_loadings
  Eigen::MatrixXd term_loadings;     // U * Sigma
  Eigen::VectorXd singular_values;
  std::vector<std::string> doc_ids;  // documents the model was fitted on
};

// Fits LSI on the term x document TF-IDF matrix of `docs` (all documents
// when empty). dims must lie in [1, min(terms, docs)].
LsiModel lsi_fit(const Index& index, std::size_t dims, std::span<const std::string> docs = {});

// The m result-set terms with the largest loading norm, ties alphabetical.
std::vector<std::string> lsi_keywords(const LsiModel& model, std::span<const std::string> results,
                                      const Index& index, std::size_t m = 25,
                                      const std::unordered_set<std::string>* excluded = nullptr);

}  // namespace zacq

#endif  // ZACQ_LSI_HPP_
