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
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vendi/entropy.hpp"

using namespace vendi;
using testing::error_kind_of;

TEST_CASE("renyi entropy matches its definition") {
  const std::vector<double> p{0.5, 0.25, 0.125, 0.125};
  for (double a : {0.5, 1.0, 1.5, 2.0, 3.0, 10.0}) {
    CHECK(renyi_entropy(p, a) == doctest::Approx(testing::reference_renyi(p, a)).epsilon(1e-14));
  }
  CHECK(renyi_entropy(p, 1.0) == doctest::Approx(1.75 * std::log(2.0)));
}

TEST_CASE("uniform spectrum gives ln k for every order") {
  for (int k : {1, 2, 7, 64}) {
    const std::vector<double> p(static_cast<std::size_t>(k), 1.0 / k);
    for (double a : {0.3, 1.0, 2.0, 5.0}) CHECK(renyi_entropy(p, a) == doctest::Approx(std::log(k)).epsilon(1e-13));
  }
}

TEST_CASE("renyi entropy is continuous at order one and nonincreasing in order") {
  const std::vector<double> p{0.7, 0.2, 0.1};
  const double h1 = renyi_entropy(p, 1.0);
  CHECK(renyi_entropy(p, 1.0 + 1e-7) == doctest::Approx(h1).epsilon(1e-6));
  CHECK(renyi_entropy(p, 1.0 - 1e-7) == doctest::Approx(h1).epsilon(1e-6));
  double prev = renyi_entropy(p, 0.1);
  for (double a = 0.2; a < 8.0; a += 0.3) {
    const double h = renyi_entropy(p, a);
    CHECK(h <= prev + 1e-14);
    prev = h;
  }
}

TEST_CASE("renyi entropy input validation") {
  const std::vector<double> p{0.5, 0.5};
  CHECK(error_kind_of([&] { renyi_entropy(p, 0.0); }) == ErrorKind::InvalidAlpha);
  CHECK(error_kind_of([&] { renyi_entropy(p, -1.0); }) == ErrorKind::InvalidAlpha);
  CHECK(error_kind_of([&] { renyi_entropy(p, INFINITY); }) == ErrorKind::InvalidAlpha);
  const std::vector<double> neg{1.5, -0.5}, small{0.3, 0.3};
  CHECK(error_kind_of([&] { renyi_entropy(neg, 1.0); }) == ErrorKind::NotAProbability);
  CHECK(error_kind_of([&] { renyi_entropy(small, 2.0); }) == ErrorKind::NotAProbability);
}

TEST_CASE("orthonormal embeddings score their count, duplicates do not matter") {
  for (std::size_t k : {1u, 3u, 6u}) {
    for (std::size_t m : {1u, 4u}) {
      const auto e = testing::orthonormal_repeated(k, 8, m, 7);
      for (double a : {1.0, 2.0, 0.5}) {
        CHECK(vendi_score(e, KernelSpec::cosine(), a).score == doctest::Approx(static_cast<double>(k)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("score lies in [1, n]") {
  const auto e = testing::random_embeddings(50, 4, 2);
  for (double sigma : {0.01, 0.5, 100.0}) {
    const double s = vendi_score(e, KernelSpec::gaussian(sigma), 1.0).score;
    CHECK(s >= 1.0 - 1e-12);
    CHECK(s <= 50.0 + 1e-9);
  }
}

TEST_CASE("rke equals the order-two score and the inverse Frobenius norm") {
  const auto e = testing::random_embeddings(40, 3, 8);
  const auto spec = KernelSpec::gaussian(0.8);
  const ScoreReport rke = rke_score(e, spec);
  CHECK(rke.method == ScoreMethod::RKE);
  CHECK(rke.alpha == 2.0);
  CHECK(rke.score == doctest::Approx(vendi_score(e, spec, 2.0).score).epsilon(1e-12));
  const auto k = testing::reference_normalized_gram(spec, testing::to_rows(e));
  double fro = 0;
  for (const auto& row : k)
    for (double x : row) fro += x * x;
  CHECK(rke.score == doctest::Approx(1.0 / fro).epsilon(1e-12));
}

TEST_CASE("truncation at or above the rank is a no-op") {
  const auto e = testing::random_embeddings(100, 5, 12);
  const double exact = vendi_score(e, KernelSpec::cosine(), 1.0).score;
  for (std::size_t t : {5u, 6u, 50u, 200u}) {
    CHECK(truncated_vendi_score(e, KernelSpec::cosine(), 1.0, t).score == doctest::Approx(exact).epsilon(1e-10));
  }
  CHECK(truncated_vendi_score(e, KernelSpec::cosine(), 1.0, 1).score == doctest::Approx(1.0));
}

TEST_CASE("transformed score") {
  CHECK(transformed_score(4.0, 2.0) == doctest::Approx(0.5));
  CHECK(transformed_score(std::exp(1.3), 1.0) == doctest::Approx(1.3));
  CHECK(transformed_score(8.0, 1.5) == doctest::Approx(std::pow(8.0, -1.0 / 3.0)));
}

TEST_CASE("method names round-trip") {
  for (auto m : {ScoreMethod::Exact, ScoreMethod::Truncated, ScoreMethod::Nystrom, ScoreMethod::FKEA,
                 ScoreMethod::Oracle, ScoreMethod::RKE}) {
    CHECK(parse_score_method(to_string(m)) == m);
  }
  CHECK(error_kind_of([] { parse_score_method("magic"); }) == ErrorKind::InvalidParams);
}
