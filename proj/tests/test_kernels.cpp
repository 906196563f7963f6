// Copyright 2026 The vendi Authors.
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


#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "vendi/error.hpp"
#include "vendi/kernels.hpp"

using namespace vendi;

using testing::error_kind_of;

TEST_CASE("embedding matrix rejects non-finite entries with a location") {
  RowMatrix m = RowMatrix::Zero(3, 2);
  m(2, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    EmbeddingMatrix e(m);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteValue);
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("gaussian gram matches scalar reference") {
  const auto e = testing::random_embeddings(40, 6, 3);
  const auto spec = KernelSpec::gaussian(1.7);
  const auto ref = testing::reference_normalized_gram(spec, testing::to_rows(e));
  const GramMatrix g = gram_matrix(spec, e, true);
  REQUIRE(g.normalized);
  double worst = 0;
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) worst = std::max(worst, std::abs(g.entries(i, j) - ref[i][j]));
  CHECK(worst < 1e-15);
  CHECK(g.entries.trace() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((g.entries - g.entries.transpose()).norm() == 0.0);
}

TEST_CASE("cosine gram matches scalar reference and has unit diagonal") {
  const auto e = testing::random_embeddings(25, 4, 9);
  const auto ref = testing::reference_normalized_gram(KernelSpec::cosine(), testing::to_rows(e));
  const GramMatrix g = gram_matrix(KernelSpec::cosine(), e, false);
  for (std::size_t i = 0; i < 25; ++i) {
    CHECK(g.entries(i, i) == 1.0);
    for (std::size_t j = 0; j < 25; ++j) CHECK(g.entries(i, j) / 25.0 == doctest::Approx(ref[i][j]).epsilon(1e-12));
  }
}

TEST_CASE("cosine kernel is scale invariant") {
  const auto e = testing::random_embeddings(10, 5, 1);
  RowMatrix scaled = e.values();
  for (Eigen::Index i = 0; i < scaled.rows(); ++i) scaled.row(i) *= 0.5 + static_cast<double>(i);
  const auto a = gram_matrix(KernelSpec::cosine(), e, true).entries;
  const auto b = gram_matrix(KernelSpec::cosine(), EmbeddingMatrix(scaled), true).entries;
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kernel errors") {
  RowMatrix m = RowMatrix::Ones(3, 2);
  m.row(1).setZero();
  const EmbeddingMatrix e(m);
  CHECK(error_kind_of([&] { gram_matrix(KernelSpec::cosine(), e, true); }) == ErrorKind::ZeroNormVector);
  CHECK(error_kind_of([&] { KernelSpec::gaussian(0.0).validate(); }) == ErrorKind::InvalidParams);
  CHECK(error_kind_of([&] { KernelSpec::gaussian(-1.0).validate(); }) == ErrorKind::InvalidParams);
  const std::vector<double> x{1, 2}, y{1, 2, 3};
  CHECK(error_kind_of([&] { evaluate_kernel(KernelSpec::gaussian(1.0), x, y); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([&] { parse_kernel_kind("laplace"); }) == ErrorKind::InvalidParams);
}

TEST_CASE("cross kernel and frobenius agree with the gram matrix") {
  const auto e = testing::random_embeddings(30, 3, 4);
  const auto spec = KernelSpec::gaussian(0.9);
  const Eigen::MatrixXd k = gram_matrix(spec, e, false).entries;
  const Eigen::MatrixXd c = cross_kernel(spec, e, e);
  CHECK((k - c).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(kernel_frobenius_squared(spec, e) == doctest::Approx(k.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("kernel values stay in range") {
  const auto e = testing::random_embeddings(50, 2, 11);
  for (const auto& spec : {KernelSpec::cosine(), KernelSpec::gaussian(0.3)}) {
    const auto k = gram_matrix(spec, e, false).entries;
    CHECK(k.maxCoeff() <= 1.0);
    CHECK(k.minCoeff() >= (spec.kind == KernelKind::Cosine ? -1.0 : 0.0));
  }
}
