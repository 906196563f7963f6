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

// Sub-cubic spectrum estimators. Both produce at most a t x t (Nystrom) or
// 2t x 2t (FKEA) eigenproblem, so their cost is linear in the sample count.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vendi/entropy.hpp"
#include "vendi/kernels.hpp"
#include "vendi/spectra.hpp"

namespace vendi {

inline constexpr double kDefaultNystromRcond = 1e-10;

/// t frequency vectors drawn from N(0, sigma^-2 I), the spectral measure of
/// the Gaussian kernel with bandwidth sigma.
struct RFFBasis {
  std::size_t t = 0;
  RowMatrix frequencies;  // t x d
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

/// Frequencies are generated from a single mt19937_64 stream seeded with
/// `seed`, row-major, as standard normals scaled by 1/sigma.
RFFBasis sample_rff(std::size_t d, std::size_t t, double sigma, std::uint64_t seed);

/// n x 2t feature matrix: columns [cos(w_i . x) / sqrt(t)] then
/// [sin(w_i . x) / sqrt(t)]. Inner products of two rows equal
/// (1/t) sum_i cos(w_i . (x - y)).
RowMatrix rff_features(const EmbeddingMatrix& embeddings, const RFFBasis& basis);

/// Eigenvalues of the 2t x 2t matrix (1/n) Phi^T Phi.
Spectrum fkea_spectrum(const EmbeddingMatrix& embeddings, const RFFBasis& basis);
Spectrum fkea_spectrum(const EmbeddingMatrix& embeddings, double sigma, std::size_t t, std::uint64_t seed);
/// Throws ShiftInvariantRequired for the cosine kernel.
Spectrum fkea_spectrum(const EmbeddingMatrix& embeddings, const KernelSpec& spec, std::size_t t,
                       std::uint64_t seed);

struct LandmarkSet {
  std::vector<std::size_t> indices;  // sorted, distinct
  std::uint64_t seed = 0;
  double rcond = kDefaultNystromRcond;
};

/// t of n indices, uniformly without replacement (partial Fisher-Yates on a
/// mt19937_64 seeded with `seed`).
LandmarkSet sample_landmarks(std::size_t n, std::size_t t, std::uint64_t seed,
                             double rcond = kDefaultNystromRcond);

/// With W = K[S,S] and C = K[:,S]: eigenvalues of (1/n) W^{+/2} C^T C W^{+/2},
/// where the pseudo-inverse keeps eigenvalues of W above rcond * max.
/// Computed as (1/n) B^T B with B = C U diag(lambda^{-1/2}) over the kept
/// eigenpairs, which has the same nonzero spectrum.
Spectrum nystrom_spectrum(const EmbeddingMatrix& embeddings, const KernelSpec& spec,
                          const LandmarkSet& landmarks);
Spectrum nystrom_spectrum(const EmbeddingMatrix& embeddings, const KernelSpec& spec, std::size_t t,
                          std::uint64_t seed, double rcond = kDefaultNystromRcond);

ScoreReport fkea_truncated_vendi(const EmbeddingMatrix& embeddings, double sigma, double alpha, std::size_t t,
                                 std::uint64_t seed);
ScoreReport fkea_truncated_vendi(const EmbeddingMatrix& embeddings, const KernelSpec& spec, double alpha,
                                 std::size_t t, std::uint64_t seed);
ScoreReport nystrom_truncated_vendi(const EmbeddingMatrix& embeddings, const KernelSpec& spec, double alpha,
                                    std::size_t t, std::uint64_t seed, double rcond = kDefaultNystromRcond);

}  // namespace vendi
