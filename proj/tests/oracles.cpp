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


#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace vendi::testing {

double reference_kernel(const KernelSpec& spec, const std::vector<double>& x, const std::vector<double>& y) {
  if (spec.kind == KernelKind::Cosine) {
    double xy = 0, xx = 0, yy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      xy += x[i] * y[i];
      xx += x[i] * x[i];
      yy += y[i] * y[i];
    }
    return xy / std::sqrt(xx * yy);
  }
  double dist = 0;
  for (std::size_t i = 0; i < x.size(); ++i) dist += (x[i] - y[i]) * (x[i] - y[i]);
  return std::exp(-dist / (2.0 * spec.sigma * spec.sigma));
}

Matrix reference_normalized_gram(const KernelSpec& spec, const Matrix& rows) {
  const std::size_t n = rows.size();
  Matrix k(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i][j] = reference_kernel(spec, rows[i], rows[j]) / static_cast<double>(n);
  return k;
}

std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<double> bisection_simplex_projection(const std::vector<double>& v, std::size_t t) {
  std::vector<double> top(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(t, v.size())));
  top.resize(t, 0.0);
  auto mass = [&](double theta) {
    double s = 0;
    for (double x : top) s += std::max(x - theta, 0.0);
    return s;
  };
  double lo = *std::min_element(top.begin(), top.end()) - 1.0;  // mass(lo) >= 1
  double hi = *std::max_element(top.begin(), top.end());        // mass(hi) = 0
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) > 1.0 ? lo : hi) = mid;
  }
  const double theta = 0.5 * (lo + hi);
  std::vector<double> out(t);
  for (std::size_t i = 0; i < t; ++i) out[i] = std::max(top[i] - theta, 0.0);
  return out;
}

double reference_renyi(const std::vector<double>& p, double alpha) {
  if (alpha == 1.0) {
    double h = 0;
    for (double x : p)
      if (x > 0) h -= x * std::log(x);
    return h;
  }
  double s = 0;
  for (double x : p)
    if (x > 0) s += std::pow(x, alpha);
  return std::log(s) / (1.0 - alpha);
}

Matrix to_rows(const EmbeddingMatrix& e) {
  Matrix rows(e.rows());
  for (std::size_t i = 0; i < e.rows(); ++i) rows[i].assign(e.row(i).begin(), e.row(i).end());
  return rows;
}

EmbeddingMatrix orthonormal_repeated(std::size_t k, std::size_t d, std::size_t m, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(d, k);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(gen);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() * Eigen::MatrixXd::Identity(d, k);
  RowMatrix rows(static_cast<Eigen::Index>(k * m), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < k * m; ++r) rows.row(static_cast<Eigen::Index>(r)) = q.col(static_cast<Eigen::Index>(r % k)).transpose();
  return EmbeddingMatrix(std::move(rows));
}

EmbeddingMatrix random_embeddings(std::size_t n, std::size_t d, unsigned seed, double scale) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal(0.0, scale);
  RowMatrix rows(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < rows.size(); ++i) rows.data()[i] = normal(gen);
  return EmbeddingMatrix(std::move(rows));
}

}  // namespace vendi::testing
