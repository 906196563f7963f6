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

#include "vendi/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "vendi/error.hpp"
#include "vendi/parallel.hpp"

namespace vendi {

Spectrum symmetric_spectrum(const Eigen::MatrixXd& matrix, SpectrumSource source) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "eigendecomposition needs a square matrix");
  }
  Spectrum out;
  out.source = source;
  if (matrix.rows() == 0) return out;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  out.values.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.values.begin(), out.values.end());
  out.raw_sum = pairwise_sum(out.values);

  // Rank tolerance: magnitudes below dim * eps * lambda_max are rounding noise.
  // Left in, they would dominate sum p^alpha for alpha < 1.
  const double floor = static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(out.values.front()), std::abs(out.values.back()));
  for (double& v : out.values) {
    if (std::abs(v) <= floor) v = 0.0;
    if (v < -kNegativeEigenTolerance) {
      std::ostringstream msg;
      msg << "eigenvalue " << v << " below -1e-8; input is not a positive semi-definite kernel matrix";
      throw Error(ErrorKind::NotPSD, msg.str());
    }
    if (v < 0.0) v = 0.0;
  }
  return out;
}

Spectrum spectrum_from_gram(const GramMatrix& gram) {
  if (!gram.normalized) {
    throw Error(ErrorKind::InvalidParams, "spectrum_from_gram expects a trace-normalized Gram matrix");
  }
  return symmetric_spectrum(gram.entries, SpectrumSource::Gram);
}

Spectrum spectrum_from_covariance(const EmbeddingMatrix& embeddings, const KernelSpec& spec,
                                  std::size_t max_dim) {
  if (spec.kind != KernelKind::Cosine) {
    throw Error(ErrorKind::InfiniteDimensionalKernel,
                "the Gaussian kernel has no finite feature map; use the Gram path");
  }
  if (embeddings.cols() > max_dim) {
    throw Error(ErrorKind::InvalidParams, "embedding dimension " + std::to_string(embeddings.cols()) +
                                              " exceeds the covariance-path cap " + std::to_string(max_dim));
  }
  const RowMatrix phi = embeddings.unit_rows().values();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(phi.cols(), phi.cols());
  cov.selfadjointView<Eigen::Lower>().rankUpdate(phi.transpose(), 1.0 / static_cast<double>(phi.rows()));
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  return symmetric_spectrum(cov, SpectrumSource::Covariance);
}

namespace {

// Projection of y onto {u : u >= 0, sum u = 1} by the sort-and-threshold rule.
std::vector<double> project_onto_simplex(std::vector<double> y, double& threshold) {
  std::vector<double> sorted = y;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  threshold = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) threshold = candidate;
  }
  for (double& v : y) v = std::max(v - threshold, 0.0);
  return y;
}

}  // namespace

TruncatedSpectrum truncate_spectrum(std::span<const double> values, std::size_t t) {
  if (t == 0) throw Error(ErrorKind::InvalidParams, "truncation level t must be at least 1");
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::NotAProbability, "spectrum entries must be finite and nonnegative");
    }
  }

  std::vector<double> top(values.begin(), values.end());
  std::sort(top.begin(), top.end(), std::greater<>());
  top.resize(t, 0.0);

  TruncatedSpectrum out;
  out.t = t;
  const double head_mass = pairwise_sum(top);
  if (head_mass <= 1.0) {
    out.shift = (1.0 - head_mass) / static_cast<double>(t);
    for (double& v : top) v += out.shift;
    out.values = std::move(top);
  } else {
    double threshold = 0.0;
    out.values = project_onto_simplex(std::move(top), threshold);
    out.shift = -threshold;
  }
  return out;
}

double padded_l2_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t len = std::max(a.size(), b.size());
  std::vector<double> sq(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    sq[i] = (x - y) * (x - y);
  }
  return std::sqrt(pairwise_sum(sq));
}

}  // namespace vendi
