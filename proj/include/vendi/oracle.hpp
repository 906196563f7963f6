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

// Exact population scores for finitely supported distributions, the
// concentration-bound calculator, and Monte Carlo checks of those bounds.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vendi/entropy.hpp"
#include "vendi/kernels.hpp"
#include "vendi/spectra.hpp"

namespace vendi {

inline constexpr double kDistributionSumTolerance = 1e-12;

/// m atoms (rows of `support`) with probabilities `probs`. Atoms may repeat.
struct DiscreteDistribution {
  RowMatrix support;
  std::vector<double> probs;
  std::string label;

  std::size_t size() const noexcept { return probs.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(support.cols()); }

  /// Throws InvalidParams / NotAProbability / NonFiniteValue.
  void validate() const;
};

/// Sorted eigenvalues of [sqrt(w_i w_j) k(x_i, x_j)]. For a probability
/// vector w these are the nonzero eigenvalues of the kernel covariance
/// sum_i w_i phi(x_i) phi(x_i)^T.
Spectrum weighted_atom_spectrum(const EmbeddingMatrix& atoms, std::span<const double> weights,
                                const KernelSpec& spec, SpectrumSource source);

Spectrum population_spectrum(const DiscreteDistribution& dist, const KernelSpec& spec);

/// exp(H_alpha) of the population spectrum, or of its t-truncation.
ScoreReport population_vendi(const DiscreteDistribution& dist, const KernelSpec& spec, double alpha,
                             std::optional<std::size_t> t = std::nullopt);

/// n i.i.d. atom indices by inverse CDF; deterministic in `seed`.
std::vector<std::size_t> sample_indices(const DiscreteDistribution& dist, std::size_t n, std::uint64_t seed);
EmbeddingMatrix sample_from(const DiscreteDistribution& dist, std::size_t n, std::uint64_t seed);

/// Empirical distribution of the sampled indices: one atom per distinct
/// index, weight = count / n. Its weighted_atom_spectrum equals the spectrum
/// of the normalized Gram matrix of the sampled rows.
DiscreteDistribution empirical_distribution(const DiscreteDistribution& dist,
                                            std::span<const std::size_t> indices);

enum class BoundStatement { Thm1, Cor1_RKE, Cor2a_alpha1, Cor2b, Thm2, Thm3a_FKEA, Thm3b_Nystrom };

std::string to_string(BoundStatement statement);
BoundStatement parse_bound_statement(const std::string& name);

/// The Nystrom statement carries an unspecified universal constant; the
/// calculator uses 1 and the value is only indicative.
bool is_asymptotic(BoundStatement statement) noexcept;

struct BoundQuery {
  BoundStatement statement = BoundStatement::Thm1;
  std::size_t n = 0;
  double delta = 0.1;
  double alpha = 1.0;
  std::optional<std::size_t> d;
  std::optional<std::size_t> t;
  std::optional<double> tau;
  std::optional<std::size_t> r;
};

/// Right-hand side of the selected concentration statement, natural logs.
///
///   Thm1, Cor1   sqrt(32 ln(2/delta) / n)
///   Cor2a        sqrt(8 d ln(2/delta) / n) ln(n d / (32 ln(2/delta)))
///   Cor2b        sqrt(32 d^(2-alpha) ln(2/delta) / n)
///   Thm2         sqrt(32 max(1, t^(2-alpha)) ln(2/delta) / n)
///   Thm3a        sqrt(128 max(1, t^(2-alpha)) ln(3/delta) / min(n, t))
///   Thm3b        sqrt(max(1, t^(2-alpha)) ln(2/delta) t tau^2 ln(n)^2 / n)
///
/// At alpha = 1 the truncated statements bound the entropy gap instead:
/// eps sqrt(t) ln(sqrt(t) / eps), eps being the statement's l2 radius, which
/// needs eps <= 1/e. Throws PreconditionViolated naming the failed inequality.
double theoretical_bound(const BoundQuery& query);

struct MonteCarloQuery {
  BoundStatement statement = BoundStatement::Thm1;
  std::size_t n = 0;
  std::size_t trials = 0;
  double delta = 0.1;
  double alpha = 1.0;
  std::optional<std::size_t> t;
  std::optional<double> tau;
  std::optional<std::size_t> r;
  std::uint64_t seed = 0;
  double rcond = 1e-10;
};

struct MonteCarloResult {
  std::size_t violations = 0;
  std::size_t trials = 0;
  double bound = 0.0;
  std::vector<double> distances;  // one per trial, in trial order
};

/// Repeats: draw n samples, measure the statement's empirical gap against the
/// population value, compare with theoretical_bound. The gap is the padded
/// l2 spectrum distance for Thm1, the entropy gap for Cor2a (and alpha = 1
/// truncated statements), and |score^((1-alpha)/alpha)| differences
/// otherwise. Trial i draws from a stream derived from (seed, i).
MonteCarloResult monte_carlo_check(const DiscreteDistribution& dist, const KernelSpec& spec,
                                   const MonteCarloQuery& query);

}  // namespace vendi
