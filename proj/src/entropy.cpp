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

#include "vendi/entropy.hpp"

#include <chrono>
#include <cmath>
#include <vector>

#include "vendi/error.hpp"
#include "vendi/parallel.hpp"

namespace vendi {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_alpha(double alpha) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw Error(ErrorKind::InvalidAlpha, "entropy order alpha must be a positive finite number");
  }
}

}  // namespace

std::string to_string(ScoreMethod method) {
  switch (method) {
    case ScoreMethod::Exact: return "exact";
    case ScoreMethod::Truncated: return "truncated";
    case ScoreMethod::Nystrom: return "nystrom";
    case ScoreMethod::FKEA: return "fkea";
    case ScoreMethod::Oracle: return "oracle";
    case ScoreMethod::RKE: return "rke";
  }
  return "unknown";
}

ScoreMethod parse_score_method(const std::string& name) {
  for (ScoreMethod m : {ScoreMethod::Exact, ScoreMethod::Truncated, ScoreMethod::Nystrom, ScoreMethod::FKEA,
                        ScoreMethod::Oracle, ScoreMethod::RKE}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorKind::InvalidParams, "unknown method '" + name + "'");
}

double renyi_entropy(std::span<const double> probabilities, double alpha) {
  check_alpha(alpha);
  for (double p : probabilities) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorKind::NotAProbability, "probability entries must be finite and nonnegative");
    }
  }
  const double total = pairwise_sum(probabilities);
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    throw Error(ErrorKind::NotAProbability, "probabilities sum to " + std::to_string(total));
  }

  std::vector<double> terms;
  terms.reserve(probabilities.size());
  if (std::abs(alpha - 1.0) < kShannonAlphaWindow) {
    for (double p : probabilities) {
      if (p > 0.0) terms.push_back(-p * std::log(p));
    }
    return pairwise_sum(terms);
  }
  for (double p : probabilities) {
    if (p > 0.0) terms.push_back(alpha == 2.0 ? p * p : std::pow(p, alpha));
  }
  return std::log(pairwise_sum(terms)) / (1.0 - alpha);
}

double transformed_score(double score, double alpha) {
  check_alpha(alpha);
  if (std::abs(alpha - 1.0) < kShannonAlphaWindow) return std::log(score);
  return std::pow(score, (1.0 - alpha) / alpha);
}

Spectrum sample_spectrum(const EmbeddingMatrix& embeddings, const KernelSpec& spec) {
  spec.validate();
  if (spec.kind == KernelKind::Cosine && embeddings.cols() < embeddings.rows() &&
      embeddings.cols() <= kDefaultCovarianceDimCap) {
    return spectrum_from_covariance(embeddings, spec);
  }
  return spectrum_from_gram(gram_matrix(spec, embeddings, true));
}

ScoreReport vendi_score(const EmbeddingMatrix& embeddings, const KernelSpec& spec, double alpha) {
  check_alpha(alpha);
  const auto start = Clock::now();
  const Spectrum spectrum = sample_spectrum(embeddings, spec);
  ScoreReport r;
  r.method = ScoreMethod::Exact;
  r.alpha = alpha;
  r.entropy = renyi_entropy(spectrum.values, alpha);
  r.score = std::exp(r.entropy);
  r.n = embeddings.rows();
  r.kernel = spec;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

ScoreReport rke_score(const EmbeddingMatrix& embeddings, const KernelSpec& spec) {
  spec.validate();
  const auto start = Clock::now();
  const double n = static_cast<double>(embeddings.rows());
  const double frobenius_sq = kernel_frobenius_squared(spec, embeddings) / (n * n);
  ScoreReport r;
  r.method = ScoreMethod::RKE;
  r.alpha = 2.0;
  r.score = 1.0 / frobenius_sq;
  r.entropy = -std::log(frobenius_sq);
  r.n = embeddings.rows();
  r.kernel = spec;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

ScoreReport truncated_vendi_score(const EmbeddingMatrix& embeddings, const KernelSpec& spec, double alpha,
                                  std::size_t t) {
  check_alpha(alpha);
  if (t == 0) throw Error(ErrorKind::InvalidParams, "truncation level t must be at least 1");
  const auto start = Clock::now();
  const TruncatedSpectrum truncated = truncate_spectrum(sample_spectrum(embeddings, spec), t);
  ScoreReport r;
  r.method = ScoreMethod::Truncated;
  r.alpha = alpha;
  r.t = t;
  r.entropy = renyi_entropy(truncated.values, alpha);
  r.score = std::exp(r.entropy);
  r.n = embeddings.rows();
  r.kernel = spec;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

}  // namespace vendi
