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
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vendi {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row norms below this are rejected for the cosine kernel.
inline constexpr double kMinRowNorm = 1e-12;

/// n samples by d coordinates, row i is the embedding of sample i.
/// Always finite and non-empty; construction validates.
class EmbeddingMatrix {
 public:
  explicit EmbeddingMatrix(RowMatrix values);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  const RowMatrix& values() const noexcept { return values_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols(), cols()};
  }

  /// Copy with every row scaled to unit Euclidean norm (the cosine feature
  /// map). Throws ZeroNormVector naming the first offending row.
  EmbeddingMatrix unit_rows() const;

  /// Rows at the given indices, in order.
  EmbeddingMatrix select_rows(std::span<const std::size_t> indices) const;

 private:
  RowMatrix values_;
};

enum class KernelKind { Cosine, Gaussian };

/// A normalized kernel: k(x, x) = 1 for every x.
struct KernelSpec {
  KernelKind kind = KernelKind::Cosine;
  double sigma = 0.0;  // bandwidth, only meaningful for Gaussian

  static KernelSpec cosine() { return {KernelKind::Cosine, 0.0}; }
  static KernelSpec gaussian(double sigma) { return {KernelKind::Gaussian, sigma}; }

  /// Throws InvalidParams for a Gaussian kernel without a positive finite sigma.
  void validate() const;
  std::string name() const;

  bool operator==(const KernelSpec&) const = default;
};

KernelKind parse_kernel_kind(const std::string& name);

/// Square symmetric kernel matrix. `normalized` means every entry has been
/// divided by the order, so the trace is 1.
struct GramMatrix {
  Eigen::MatrixXd entries;
  bool normalized = false;

  std::size_t order() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

double evaluate_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

/// K[i][j] = k(x_i, x_j), optionally divided by n. The upper triangle is
/// evaluated and mirrored; each entry depends only on its two rows.
GramMatrix gram_matrix(const KernelSpec& spec, const EmbeddingMatrix& embeddings, bool normalize);

/// Rectangular block K[i][j] = k(a_i, b_j).
Eigen::MatrixXd cross_kernel(const KernelSpec& spec, const EmbeddingMatrix& a, const EmbeddingMatrix& b);

/// Sum over i of (sum over j of k(x_i, x_j)^2), accumulated row by row and
/// reduced pairwise. Never materializes the n x n matrix.
double kernel_frobenius_squared(const KernelSpec& spec, const EmbeddingMatrix& embeddings);

}  // namespace vendi
