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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "vendi/kernels.hpp"
#include "vendi/spectra.hpp"

namespace vendi {

/// Orders with |alpha - 1| below this use the Shannon formula.
inline constexpr double kShannonAlphaWindow = 1e-9;

/// Allowed drift of a probability vector's sum from 1.
inline constexpr double kProbabilitySumTolerance = 1e-6;

enum class ScoreMethod { Exact, Truncated, Nystrom, FKEA, Oracle, RKE };

std::string to_string(ScoreMethod method);
ScoreMethod parse_score_method(const std::string& name);

struct ScoreReport {
  ScoreMethod method = ScoreMethod::Exact;
  double alpha = 1.0;
  std::optional<std::size_t> t;
  std::optional<std::uint64_t> seed;
  double score = 1.0;
  double entropy = 0.0;  // nats
  std::size_t n = 0;
  KernelSpec kernel;
  double elapsed_seconds = 0.0;
};

/// Order-alpha Renyi entropy in nats; 0 * log 0 = 0 and 0^alpha = 0.
/// Throws InvalidAlpha for alpha <= 0 and NotAProbability when entries are
/// negative or the sum is more than 1e-6 away from 1.
double renyi_entropy(std::span<const double> probabilities, double alpha);

/// exp(H_alpha) raised to (1 - alpha) / alpha, which equals the alpha-norm of
/// the probability vector. At alpha = 1 the comparison space is the entropy
/// itself, so log(score) is returned.
double transformed_score(double score, double alpha);

/// Vendi_alpha of the samples. Cosine data with d < n goes through the d x d
/// covariance; everything else through the n x n Gram matrix.
ScoreReport vendi_score(const EmbeddingMatrix& embeddings, const KernelSpec& spec, double alpha);

/// RKE = 1 / ||K/n||_F^2 straight from kernel entries, no eigensolve.
ScoreReport rke_score(const EmbeddingMatrix& embeddings, const KernelSpec& spec);

ScoreReport truncated_vendi_score(const EmbeddingMatrix& embeddings, const KernelSpec& spec, double alpha,
                                  std::size_t t);

/// Spectrum of the normalized kernel matrix via the cheaper of the two
/// equivalent routes.
Spectrum sample_spectrum(const EmbeddingMatrix& embeddings, const KernelSpec& spec);

}  // namespace vendi
