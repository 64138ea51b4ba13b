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


#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "test_support.hpp"
#include "zacq/error.hpp"
#include "zacq/lsi.hpp"

namespace zacq {
namespace {

using Matrix = std::vector<std::vector<double>>;  // row-major

// One-sided Jacobi: rotates column pairs of A until they are mutually
// orthogonal; the column norms are then the singular values.
std::vector<double> jacobi_singular_values(Matrix a) {
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a[i][p] * a[i][p];
          beta += a[i][q] * a[i][q];
          gamma += a[i][p] * a[i][q];
        }
        if (std::abs(gamma) < 1e-15) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = a[i][p];
          const double y = a[i][q];
          a[i][p] = c * x - s * y;
          a[i][q] = s * x + c * y;
        }
      }
    }
    if (off < 1e-14) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) s += a[i][j] * a[i][j];
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

Eigen::MatrixXd to_eigen(const Matrix& a) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(a.front().size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a[i][j];
  }
  return out;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::normal_distribution<double> g;
  Matrix a(m, std::vector<double>(n));
  for (auto& row : a) {
    for (auto& x : row) x = g(rng);
  }
  return a;
}

TEST_CASE("randomized SVD agrees with a Jacobi oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_matrix(rng, 20, 12);
    const auto oracle = jacobi_singular_values(a);
    const TruncatedSvd svd = randomized_svd(to_eigen(a), 5);
    REQUIRE(svd.singular_values.size() == 5);
    for (int i = 0; i < 5; ++i) {
      CHECK(std::abs(svd.singular_values(i) - oracle[static_cast<std::size_t>(i)]) / oracle[static_cast<std::size_t>(i)] < 1e-3);
    }
  }
}

TEST_CASE("randomized SVD recovers a rank-one matrix exactly") {
  Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(8, 1.0, 2.0);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(6, -1.0, 3.0);
  const Eigen::MatrixXd a = u * v.transpose();
  const TruncatedSvd svd = randomized_svd(a, 1);
  const Eigen::MatrixXd back = svd.u * svd.singular_values.asDiagonal() * svd.v.transpose();
  CHECK((back - a).norm() < 1e-6);
}

TEST_CASE("left singular vectors are orthonormal") {
  std::mt19937_64 rng(5);
  for (std::size_t size : {10U, 30U, 50U}) {
    const Eigen::MatrixXd a = to_eigen(random_matrix(rng, size, size));
    const TruncatedSvd svd = randomized_svd(a, size / 2);
    const Eigen::MatrixXd gram = svd.u.transpose() * svd.u;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("randomized SVD is deterministic and checks its rank") {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXd a = to_eigen(random_matrix(rng, 15, 10));
  CHECK(randomized_svd(a, 4).u == randomized_svd(a, 4).u);
  CHECK_THROWS_AS(randomized_svd(a, 0), Error);
  CHECK_THROWS_AS(randomized_svd(a, 11), Error);
}

TEST_CASE("lsi keywords come from the result set") {
  const Engine engine = testing::toy_engine();
  const Index& idx = engine.index();
  const RankedResults r = engine.search("read file", 50);
  const auto ids = r.ids();
  const LsiModel model = lsi_fit(idx, 10, ids);
  CHECK(model.dims == 10);
  CHECK_THROWS_AS(lsi_fit(idx, 0, ids), Error);

  const auto keywords = lsi_keywords(model, ids, idx, 25);
  CHECK(keywords.size() == 25);
  std::set<std::string> result_terms;
  for (const auto& id : ids) {
    for (TermId t : idx.doc_terms(id)) result_terms.insert(idx.term(t));
  }
  for (const auto& k : keywords) CHECK(result_terms.contains(k));
  CHECK(std::set<std::string>(keywords.begin(), keywords.end()).size() == keywords.size());

  const std::unordered_set<std::string> excluded{keywords.front()};
  const auto without = lsi_keywords(model, ids, idx, 25, &excluded);
  CHECK(std::find(without.begin(), without.end(), keywords.front()) == without.end());
}

TEST_CASE("lsi keywords return every term when there are fewer than m") {
  const Index idx = Index::build(Corpus({testing::doc("a", "readFile", ""), testing::doc("b", "readFile", "File."),
                                         testing::doc("c", "sortList", "")}));
  const std::vector<std::string> ids{"a", "b"};
  const LsiModel model = lsi_fit(idx, 1, ids);
  auto keywords = lsi_keywords(model, ids, idx, 25);
  std::sort(keywords.begin(), keywords.end());
  CHECK(keywords == std::vector<std::string>{"file", "read"});
  CHECK_THROWS_AS(lsi_keywords(model, {}, idx, 25), Error);
}

}  // namespace
}  // namespace zacq
