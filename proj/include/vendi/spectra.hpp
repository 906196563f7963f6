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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vendi/kernels.hpp"

namespace vendi {

/// Eigenvalues in [-kNegativeEigenTolerance, 0) are clamped to zero; anything
/// more negative means the matrix was not a kernel matrix. Magnitudes below
/// dim * eps * lambda_max are zeroed as rounding noise.
inline constexpr double kNegativeEigenTolerance = 1e-8;

/// Largest embedding dimension accepted by the covariance path.
inline constexpr std::size_t kDefaultCovarianceDimCap = 4096;

enum class SpectrumSource { Gram, Covariance, FKEA, Nystrom, Oracle };

/// Nonnegative eigenvalues sorted nonincreasing. `raw_sum` is the sum of the
/// solver output before clamping; values are never renormalized.
struct Spectrum {
  std::vector<double> values;
  double raw_sum = 0.0;
  SpectrumSource source = SpectrumSource::Gram;
};

/// Top-t eigenvalues with the residual mass 1 - S_t spread uniformly.
struct TruncatedSpectrum {
  std::size_t t = 0;
  std::vector<double> values;
  double shift = 0.0;
};

/// Full symmetric eigendecomposition (eigenvalues only) of a dense matrix,
/// sorted descending, clamped per the negative-eigenvalue policy.
Spectrum symmetric_spectrum(const Eigen::MatrixXd& matrix, SpectrumSource source);

/// Spectrum of a trace-normalized Gram matrix. Throws InvalidParams if the
/// matrix was built with normalize = false.
Spectrum spectrum_from_gram(const GramMatrix& gram);

/// Spectrum of (1/n) Phi^T Phi with Phi the unit-normalized rows. Only the
/// cosine kernel has this finite feature map.
Spectrum spectrum_from_covariance(const EmbeddingMatrix& embeddings, const KernelSpec& spec,
                                  std::size_t max_dim = kDefaultCovarianceDimCap);

/// Keeps the t largest values (zero-padding when fewer) and adds
/// (1 - S_t) / t to each. For a sorted input with S_t <= 1 this is the
/// Euclidean projection onto the probability simplex on the first t
/// coordinates. If numerical drift leaves S_t > 1 the general simplex
/// projection is applied instead, so the output is always a probability
/// vector.
TruncatedSpectrum truncate_spectrum(std::span<const double> values, std::size_t t);
inline TruncatedSpectrum truncate_spectrum(const Spectrum& s, std::size_t t) {
  return truncate_spectrum(s.values, t);
}

/// Euclidean distance between two sequences after zero-padding the shorter.
double padded_l2_distance(std::span<const double> a, std::span<const double> b);

}  // namespace vendi
