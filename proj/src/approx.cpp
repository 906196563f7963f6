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

#include "vendi/approx.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "vendi/error.hpp"
#include "vendi/parallel.hpp"

namespace vendi {

namespace {

using Clock = std::chrono::steady_clock;

// Fixed partition for the covariance reduction; independent of thread count.
constexpr Eigen::Index kReductionBlock = 1024;

// Accumulates (1/n) sum_rows f(rows)^T f(rows) over fixed row blocks, summing
// the block partials in block order.
template <typename BlockFn>
Eigen::MatrixXd blocked_covariance(Eigen::Index n, Eigen::Index width, BlockFn&& block_rows) {
  const auto blocks = static_cast<std::size_t>((n + kReductionBlock - 1) / kReductionBlock);
  std::vector<Eigen::MatrixXd> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const Eigen::Index begin = static_cast<Eigen::Index>(b) * kReductionBlock;
    const Eigen::Index count = std::min(kReductionBlock, n - begin);
    const Eigen::MatrixXd rows = block_rows(begin, count);
    partial[b] = Eigen::MatrixXd::Zero(width, width);
    partial[b].selfadjointView<Eigen::Lower>().rankUpdate(rows.transpose());
  });
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(width, width);
  for (const auto& p : partial) total += p;
  total /= static_cast<double>(n);
  total.triangularView<Eigen::StrictlyUpper>() = total.transpose();
  return total;
}

ScoreReport truncated_report(const Spectrum& spectrum, ScoreMethod method, const KernelSpec& spec,
                             double alpha, std::size_t t, std::uint64_t seed, std::size_t n,
                             Clock::time_point start) {
  const TruncatedSpectrum truncated = truncate_spectrum(spectrum, t);
  ScoreReport r;
  r.method = method;
  r.alpha = alpha;
  r.t = t;
  r.seed = seed;
  r.entropy = renyi_entropy(truncated.values, alpha);
  r.score = std::exp(r.entropy);
  r.n = n;
  r.kernel = spec;
  r.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

RFFBasis sample_rff(std::size_t d, std::size_t t, double sigma, std::uint64_t seed) {
  if (d < 1 || t < 1 || !(std::isfinite(sigma) && sigma > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "random Fourier features need d >= 1, t >= 1 and sigma > 0");
  }
  RFFBasis basis;
  basis.t = t;
  basis.sigma = sigma;
  basis.seed = seed;
  basis.frequencies.resize(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(d));
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / sigma;
  double* out = basis.frequencies.data();
  for (std::size_t i = 0; i < t * d; ++i) out[i] = normal(engine) * scale;
  return basis;
}

RowMatrix rff_features(const EmbeddingMatrix& embeddings, const RFFBasis& basis) {
  if (static_cast<std::size_t>(basis.frequencies.cols()) != embeddings.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "frequency dimension differs from embedding dimension");
  }
  const auto t = static_cast<Eigen::Index>(basis.t);
  const double scale = 1.0 / std::sqrt(static_cast<double>(basis.t));
  const Eigen::MatrixXd phase = embeddings.values() * basis.frequencies.transpose();
  RowMatrix features(phase.rows(), 2 * t);
  features.leftCols(t) = phase.array().cos() * scale;
  features.rightCols(t) = phase.array().sin() * scale;
  return features;
}

Spectrum fkea_spectrum(const EmbeddingMatrix& embeddings, const RFFBasis& basis) {
  if (static_cast<std::size_t>(basis.frequencies.cols()) != embeddings.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "frequency dimension differs from embedding dimension");
  }
  const auto n = static_cast<Eigen::Index>(embeddings.rows());
  const auto t = static_cast<Eigen::Index>(basis.t);
  const double scale = 1.0 / std::sqrt(static_cast<double>(basis.t));
  const RowMatrix& x = embeddings.values();
  const Eigen::MatrixXd cov = blocked_covariance(n, 2 * t, [&](Eigen::Index begin, Eigen::Index count) {
    const Eigen::MatrixXd phase = x.middleRows(begin, count) * basis.frequencies.transpose();
    Eigen::MatrixXd features(count, 2 * t);
    features.leftCols(t) = phase.array().cos() * scale;
    features.rightCols(t) = phase.array().sin() * scale;
    return features;
  });
  return symmetric_spectrum(cov, SpectrumSource::FKEA);
}

Spectrum fkea_spectrum(const EmbeddingMatrix& embeddings, double sigma, std::size_t t, std::uint64_t seed) {
  return fkea_spectrum(embeddings, sample_rff(embeddings.cols(), t, sigma, seed));
}

Spectrum fkea_spectrum(const EmbeddingMatrix& embeddings, const KernelSpec& spec, std::size_t t,
                       std::uint64_t seed) {
  if (spec.kind != KernelKind::Gaussian) {
    throw Error(ErrorKind::ShiftInvariantRequired, "FKEA needs a shift-invariant (Gaussian) kernel");
  }
  spec.validate();
  return fkea_spectrum(embeddings, spec.sigma, t, seed);
}

LandmarkSet sample_landmarks(std::size_t n, std::size_t t, std::uint64_t seed, double rcond) {
  if (t < 1 || t > n) {
    throw Error(ErrorKind::InvalidParams,
                "landmark count t=" + std::to_string(t) + " must satisfy 1 <= t <= n=" + std::to_string(n));
  }
  if (!(std::isfinite(rcond) && rcond >= 0.0 && rcond < 1.0)) {
    throw Error(ErrorKind::InvalidParams, "rcond must lie in [0, 1)");
  }
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::mt19937_64 engine(seed);
  for (std::size_t i = 0; i < t; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(engine)]);
  }
  pool.resize(t);
  std::sort(pool.begin(), pool.end());
  return {std::move(pool), seed, rcond};
}

Spectrum nystrom_spectrum(const EmbeddingMatrix& embeddings, const KernelSpec& spec,
                          const LandmarkSet& landmarks) {
  spec.validate();
  const std::size_t n = embeddings.rows();
  const std::size_t t = landmarks.indices.size();
  if (t < 1 || t > n) throw Error(ErrorKind::InvalidParams, "landmark count must satisfy 1 <= t <= n");
  std::vector<std::size_t> check = landmarks.indices;
  std::sort(check.begin(), check.end());
  if (std::adjacent_find(check.begin(), check.end()) != check.end() || check.back() >= n) {
    throw Error(ErrorKind::InvalidParams, "landmark indices must be distinct and below n");
  }

  const Eigen::MatrixXd c = cross_kernel(spec, embeddings, embeddings.select_rows(landmarks.indices));
  Eigen::MatrixXd w(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
  for (std::size_t a = 0; a < t; ++a) w.row(static_cast<Eigen::Index>(a)) = c.row(static_cast<Eigen::Index>(landmarks.indices[a]));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "eigendecomposition of the landmark block failed");
  }
  const Eigen::VectorXd& lambda = solver.eigenvalues();  // ascending
  const double lambda_max = lambda(lambda.size() - 1);
  const double cutoff = landmarks.rcond * lambda_max;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = lambda.size() - 1; i >= 0; --i) {
    if (lambda(i) > cutoff && lambda(i) > 0.0) kept.push_back(i);
  }
  if (kept.empty()) {
    throw Error(ErrorKind::DegenerateLandmarks, "no landmark-block eigenvalue above the rcond cutoff");
  }

  Eigen::MatrixXd projector(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    projector.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(kept[k]) / std::sqrt(lambda(kept[k]));
  }
  const Eigen::MatrixXd cov = blocked_covariance(
      static_cast<Eigen::Index>(n), projector.cols(),
      [&](Eigen::Index begin, Eigen::Index count) -> Eigen::MatrixXd { return c.middleRows(begin, count) * projector; });
  return symmetric_spectrum(cov, SpectrumSource::Nystrom);
}

Spectrum nystrom_spectrum(const EmbeddingMatrix& embeddings, const KernelSpec& spec, std::size_t t,
                          std::uint64_t seed, double rcond) {
  return nystrom_spectrum(embeddings, spec, sample_landmarks(embeddings.rows(), t, seed, rcond));
}

ScoreReport fkea_truncated_vendi(const EmbeddingMatrix& embeddings, double sigma, double alpha, std::size_t t,
                                 std::uint64_t seed) {
  return fkea_truncated_vendi(embeddings, KernelSpec::gaussian(sigma), alpha, t, seed);
}

ScoreReport fkea_truncated_vendi(const EmbeddingMatrix& embeddings, const KernelSpec& spec, double alpha,
                                 std::size_t t, std::uint64_t seed) {
  const auto start = Clock::now();
  const Spectrum spectrum = fkea_spectrum(embeddings, spec, t, seed);
  return truncated_report(spectrum, ScoreMethod::FKEA, spec, alpha, t, seed, embeddings.rows(), start);
}

ScoreReport nystrom_truncated_vendi(const EmbeddingMatrix& embeddings, const KernelSpec& spec, double alpha,
                                    std::size_t t, std::uint64_t seed, double rcond) {
  const auto start = Clock::now();
  const Spectrum spectrum = nystrom_spectrum(embeddings, spec, t, seed, rcond);
  return truncated_report(spectrum, ScoreMethod::Nystrom, spec, alpha, t, seed, embeddings.rows(), start);
}

}  // namespace vendi
