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

#include "zacq/lsi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include "zacq/error.hpp"

namespace zacq {
namespace {

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

TruncatedSvd randomized_svd(const Eigen::MatrixXd& a, std::size_t rank, std::uint64_t seed,
                            int power_iterations) {
  const auto m = static_cast<std::size_t>(a.rows());
  const auto n = static_cast<std::size_t>(a.cols());
  if (rank == 0 || rank > std::min(m, n)) {
    throw Error(ErrorCode::kInvalidArgument, "svd rank " + std::to_string(rank) + " outside [1, " +
                                                 std::to_string(std::min(m, n)) + "]");
  }
  constexpr std::size_t kOversample = 10;
  const auto width = static_cast<Eigen::Index>(std::min(rank + kOversample, std::min(m, n)));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd omega(static_cast<Eigen::Index>(n), width);
  for (Eigen::Index j = 0; j < omega.cols(); ++j) {
    for (Eigen::Index i = 0; i < omega.rows(); ++i) omega(i, j) = gauss(rng);
  }

  Eigen::MatrixXd q = orthonormal_basis(a * omega);
  for (int it = 0; it < std::max(power_iterations, 4); ++it) {
    Eigen::MatrixXd z = orthonormal_basis(a.transpose() * q);
    q = orthonormal_basis(a * z);
  }

  Eigen::MatrixXd b = q.transpose() * a;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto r = static_cast<Eigen::Index>(rank);
  TruncatedSvd out;
  out.u = (q * svd.matrixU()).leftCols(r);
  out.singular_values = svd.singularValues().head(r);
  out.v = svd.matrixV().leftCols(r);
  return out;
}

LsiModel lsi_fit(const Index& index, std::size_t dims, std::span<const std::string> docs) {
  std::vector<std::string> doc_ids(docs.begin(), docs.end());
  if (doc_ids.empty()) doc_ids = index.doc_ids();

  std::map<TermId, Eigen::Index> rows;
  for (const auto& id : doc_ids) {
    const SparseVector* v = index.doc_vector(id);
    if (v == nullptr) throw Error(ErrorCode::kNotFound, "unknown function id '" + id + "'");
    for (const auto& [t, w] : v->entries()) rows.emplace(t, 0);
  }
  Eigen::Index next = 0;
  for (auto& [t, row] : rows) row = next++;

  if (dims == 0 || dims > std::min(rows.size(), doc_ids.size())) {
    throw Error(ErrorCode::kInvalidArgument, "lsi dims " + std::to_string(dims) + " outside [1, " +
                                                 std::to_string(std::min(rows.size(), doc_ids.size())) + "]");
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                            static_cast<Eigen::Index>(doc_ids.size()));
  for (std::size_t d = 0; d < doc_ids.size(); ++d) {
    for (const auto& [t, w] : index.doc_vector(doc_ids[d])->entries()) {
      a(rows.at(t), static_cast<Eigen::Index>(d)) = w;
    }
  }

  TruncatedSvd svd = randomized_svd(a, dims);
  LsiModel model;
  model.dims = dims;
  model.doc_ids = std::move(doc_ids);
  for (const auto& [t, row] : rows) model.term_ids.push_back(t);
  model.term_loadings = svd.u * svd.singular_values.asDiagonal();
  model.singular_values = std::move(svd.singular_values);
  return model;
}

std::vector<std::string> lsi_keywords(const LsiModel& model, std::span<const std::string> results,
                                      const Index& index, std::size_t m,
                                      const std::unordered_set<std::string>* excluded) {
  if (results.empty()) throw Error(ErrorCode::kInvalidArgument, "lsi_keywords needs a non-empty result list");
  std::unordered_map<TermId, Eigen::Index> row_of;
  for (std::size_t i = 0; i < model.term_ids.size(); ++i) {
    row_of.emplace(model.term_ids[i], static_cast<Eigen::Index>(i));
  }

  std::map<TermId, double> scored;
  for (const auto& id : results) {
    for (TermId t : index.doc_terms(id)) {
      if (scored.contains(t)) continue;
      if (excluded != nullptr && excluded->contains(index.term(t))) continue;
      auto it = row_of.find(t);
      scored.emplace(t, it == row_of.end() ? 0.0 : model.term_loadings.row(it->second).norm());
    }
  }

  std::vector<std::pair<double, std::string>> ranked;
  ranked.reserve(scored.size());
  // Quantized so that numerically equal loadings tie-break alphabetically.
  for (const auto& [t, s] : scored) ranked.emplace_back(std::round(s * 1e9) / 1e9, index.term(t));
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (ranked.size() > m) ranked.resize(m);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [s, term] : ranked) out.push_back(std::move(term));
  return out;
}

}  // namespace zacq
