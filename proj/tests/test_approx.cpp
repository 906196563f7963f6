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


#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "vendi/approx.hpp"

using namespace vendi;
using testing::error_kind_of;

TEST_CASE("random Fourier proxy has unit diagonal and approximates the kernel") {
  const auto e = testing::random_embeddings(30, 4, 1);
  const double sigma = 1.3;
  const auto ref = testing::reference_normalized_gram(KernelSpec::gaussian(sigma), testing::to_rows(e));
  double prev_err = INFINITY;
  for (std::size_t t : {64u, 1024u, 16384u}) {
    const RowMatrix z = rff_features(e, sample_rff(4, t, sigma, 99));
    const Eigen::MatrixXd proxy = z * z.transpose();
    double err = 0;
    for (std::size_t i = 0; i < 30; ++i) {
      CHECK(proxy(i, i) == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t j = 0; j < 30; ++j) err += std::abs(proxy(i, j) - 30.0 * ref[i][j]);
    }
    err /= 900.0;
    CHECK(err < 3.0 / std::sqrt(static_cast<double>(t)));
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("fkea spectrum is a probability vector and seeded") {
  const auto e = testing::random_embeddings(200, 3, 4);
  const Spectrum a = fkea_spectrum(e, KernelSpec::gaussian(1.0), 32, 5);
  const Spectrum b = fkea_spectrum(e, KernelSpec::gaussian(1.0), 32, 5);
  const Spectrum c = fkea_spectrum(e, KernelSpec::gaussian(1.0), 32, 6);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.values.size() == 64);
  CHECK(a.raw_sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.source == SpectrumSource::FKEA);
}

TEST_CASE("fkea requires a shift-invariant kernel") {
  const auto e = testing::random_embeddings(10, 3, 4);
  CHECK(error_kind_of([&] { fkea_spectrum(e, KernelSpec::cosine(), 8, 1); }) == ErrorKind::ShiftInvariantRequired);
  CHECK(error_kind_of([&] { sample_rff(3, 0, 1.0, 1); }) == ErrorKind::InvalidParams);
}

TEST_CASE("fkea truncated score approaches the exact truncated score") {
  const auto e = testing::random_embeddings(300, 2, 7);
  const auto spec = KernelSpec::gaussian(0.5);
  const double truth = truncated_vendi_score(e, spec, 1.0, 20).score;
  const double approx = fkea_truncated_vendi(e, spec, 1.0, 20, 3).score;
  CHECK(std::isfinite(approx));
  CHECK(approx > 1.0);
  // 20 features is coarse; this only guards against gross errors.
  CHECK(std::abs(approx - truth) / truth < 0.5);
}

TEST_CASE("landmarks are distinct, sorted and seeded") {
  const LandmarkSet a = sample_landmarks(100, 30, 8);
  CHECK(a.indices.size() == 30);
  CHECK(std::is_sorted(a.indices.begin(), a.indices.end()));
  CHECK(std::adjacent_find(a.indices.begin(), a.indices.end()) == a.indices.end());
  CHECK(a.indices.back() < 100);
  CHECK(sample_landmarks(100, 30, 8).indices == a.indices);
  CHECK(error_kind_of([] { sample_landmarks(10, 11, 0); }) == ErrorKind::InvalidParams);
  CHECK(error_kind_of([] { sample_landmarks(10, 0, 0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("nystrom with every point as a landmark is exact") {
  const auto e = testing::random_embeddings(120, 3, 9);
  const auto spec = KernelSpec::gaussian(1.0);
  const Spectrum exact = sample_spectrum(e, spec);
  const Spectrum ny = nystrom_spectrum(e, spec, 120, 1, 0.0);
  double sum = 0;
  for (std::size_t i = 0; i < ny.values.size(); ++i) {
    CHECK(std::abs(ny.values[i] - exact.values[i]) < 1e-8);
    sum += ny.values[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("nystrom recovers a low-rank kernel once the landmarks span it") {
  // Cosine kernel on rank-4 data: any 4 landmarks in general position span the features.
  const auto e = testing::random_embeddings(200, 4, 10);
  const Spectrum exact = sample_spectrum(e, KernelSpec::cosine());
  const Spectrum ny = nystrom_spectrum(e, KernelSpec::cosine(), 10, 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ny.values[i] - exact.values[i]) < 1e-8);
  for (std::size_t i = 4; i < ny.values.size(); ++i) CHECK(ny.values[i] < 1e-10);
}

TEST_CASE("nystrom spectrum mass never exceeds one") {
  const auto e = testing::random_embeddings(150, 3, 11);
  for (std::size_t t : {5u, 20u, 80u}) {
    const Spectrum ny = nystrom_spectrum(e, KernelSpec::gaussian(0.7), t, 4);
    CHECK(std::accumulate(ny.values.begin(), ny.values.end(), 0.0) <= 1.0 + 1e-10);
    CHECK(nystrom_truncated_vendi(e, KernelSpec::gaussian(0.7), 1.0, t, 4).score >= 1.0);
  }
}
