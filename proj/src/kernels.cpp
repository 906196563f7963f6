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

#include "vendi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vendi/error.hpp"
#include "vendi/parallel.hpp"

namespace vendi {

namespace {

constexpr std::size_t kRowBlock = 32;

std::size_t block_count(std::size_t n) { return (n + kRowBlock - 1) / kRowBlock; }

// Rows in the form the per-entry formula consumes: unit rows for cosine,
// raw coordinates for Gaussian.
RowMatrix prepared_rows(const KernelSpec& spec, const EmbeddingMatrix& e) {
  spec.validate();
  if (spec.kind == KernelKind::Cosine) return e.unit_rows().values();
  return e.values();
}

struct EntryFormula {
  KernelKind kind;
  double inv_two_sigma_sq;

  explicit EntryFormula(const KernelSpec& spec)
      : kind(spec.kind),
        inv_two_sigma_sq(spec.kind == KernelKind::Gaussian ? 1.0 / (2.0 * spec.sigma * spec.sigma) : 0.0) {}

  template <typename RowA, typename RowB>
  double operator()(const RowA& a, const RowB& b) const {
    if (kind == KernelKind::Cosine) return std::clamp(a.dot(b), -1.0, 1.0);
    return std::exp(-(a - b).squaredNorm() * inv_two_sigma_sq);
  }
};

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(RowMatrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error(ErrorKind::InvalidParams, "embedding matrix needs n >= 1 and d >= 1");
  }
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      if (!std::isfinite(values_(i, j))) {
        std::ostringstream msg;
        msg << "non-finite embedding value at row " << i << ", column " << j;
        throw Error(ErrorKind::NonFiniteValue, msg.str());
      }
    }
  }
}

EmbeddingMatrix EmbeddingMatrix::unit_rows() const {
  RowMatrix out = values_;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (!(norm >= kMinRowNorm)) {
      throw Error(ErrorKind::ZeroNormVector,
                  "row " + std::to_string(i) + " has norm below 1e-12; cosine kernel undefined");
    }
    out.row(i) /= norm;
  }
  return EmbeddingMatrix(std::move(out));
}

EmbeddingMatrix EmbeddingMatrix::select_rows(std::span<const std::size_t> indices) const {
  RowMatrix out(static_cast<Eigen::Index>(indices.size()), values_.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= rows()) throw Error(ErrorKind::InvalidParams, "row index out of range");
    out.row(static_cast<Eigen::Index>(i)) = values_.row(static_cast<Eigen::Index>(indices[i]));
  }
  return EmbeddingMatrix(std::move(out));
}

void KernelSpec::validate() const {
  if (kind == KernelKind::Gaussian && !(std::isfinite(sigma) && sigma > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "Gaussian kernel requires a positive finite sigma");
  }
}

std::string KernelSpec::name() const { return kind == KernelKind::Cosine ? "cosine" : "gaussian"; }

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "cosine") return KernelKind::Cosine;
  if (name == "gaussian") return KernelKind::Gaussian;
  throw Error(ErrorKind::InvalidParams, "unknown kernel '" + name + "' (expected cosine or gaussian)");
}

double evaluate_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  spec.validate();
  if (x.size() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "vectors of length " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  Eigen::Map<const Eigen::VectorXd> a(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::Map<const Eigen::VectorXd> b(y.data(), static_cast<Eigen::Index>(y.size()));
  if (!a.allFinite() || !b.allFinite()) throw Error(ErrorKind::NonFiniteValue, "kernel argument is not finite");

  if (spec.kind == KernelKind::Cosine) {
    const double na = a.norm();
    const double nb = b.norm();
    if (!(na >= kMinRowNorm) || !(nb >= kMinRowNorm)) {
      throw Error(ErrorKind::ZeroNormVector, "cosine kernel of a zero-norm vector");
    }
    return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
  }
  return std::exp(-(a - b).squaredNorm() / (2.0 * spec.sigma * spec.sigma));
}

GramMatrix gram_matrix(const KernelSpec& spec, const EmbeddingMatrix& embeddings, bool normalize) {
  const RowMatrix rows = prepared_rows(spec, embeddings);
  const EntryFormula entry(spec);
  const auto n = rows.rows();
  const double scale = normalize ? 1.0 / static_cast<double>(n) : 1.0;

  GramMatrix gram{Eigen::MatrixXd(n, n), normalize};
  Eigen::MatrixXd& k = gram.entries;
  parallel_for(block_count(static_cast<std::size_t>(n)), [&](std::size_t block) {
    const auto begin = static_cast<Eigen::Index>(block * kRowBlock);
    const auto end = std::min<Eigen::Index>(n, begin + static_cast<Eigen::Index>(kRowBlock));
    for (Eigen::Index i = begin; i < end; ++i) {
      k(i, i) = scale;
      for (Eigen::Index j = i + 1; j < n; ++j) k(j, i) = entry(rows.row(i), rows.row(j)) * scale;
    }
  });
  // Mirror the lower triangle (column-major writes above were contiguous).
  k.triangularView<Eigen::StrictlyUpper>() = k.transpose();
  return gram;
}

Eigen::MatrixXd cross_kernel(const KernelSpec& spec, const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "cross kernel between embeddings of different dimension");
  }
  const RowMatrix ra = prepared_rows(spec, a);
  const RowMatrix rb = prepared_rows(spec, b);
  const EntryFormula entry(spec);
  Eigen::MatrixXd out(ra.rows(), rb.rows());
  parallel_for(block_count(a.rows()), [&](std::size_t block) {
    const auto begin = static_cast<Eigen::Index>(block * kRowBlock);
    const auto end = std::min<Eigen::Index>(ra.rows(), begin + static_cast<Eigen::Index>(kRowBlock));
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < rb.rows(); ++j) out(i, j) = entry(ra.row(i), rb.row(j));
    }
  });
  return out;
}

double kernel_frobenius_squared(const KernelSpec& spec, const EmbeddingMatrix& embeddings) {
  const RowMatrix rows = prepared_rows(spec, embeddings);
  const EntryFormula entry(spec);
  const auto n = rows.rows();
  std::vector<double> row_sums(static_cast<std::size_t>(n));
  parallel_for(block_count(static_cast<std::size_t>(n)), [&](std::size_t block) {
    const auto begin = static_cast<Eigen::Index>(block * kRowBlock);
    const auto end = std::min<Eigen::Index>(n, begin + static_cast<Eigen::Index>(kRowBlock));
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double v = (i == j) ? 1.0 : entry(rows.row(i), rows.row(j));
        terms[static_cast<std::size_t>(j)] = v * v;
      }
      row_sums[static_cast<std::size_t>(i)] = pairwise_sum(terms);
    }
  });
  return pairwise_sum(row_sums);
}

}  // namespace vendi
