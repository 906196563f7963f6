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

#include "vendi/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "vendi/approx.hpp"
#include "vendi/error.hpp"
#include "vendi/parallel.hpp"

namespace vendi {

namespace {

[[noreturn]] void violated(const std::string& what) { throw Error(ErrorKind::PreconditionViolated, what); }
[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidParams, what); }

bool is_shannon(double alpha) { return std::abs(alpha - 1.0) < kShannonAlphaWindow; }

// eps sqrt(dim) ln(sqrt(dim) / eps): entropy gap implied by an l2 gap of eps
// between probability vectors living in `dim` coordinates.
double entropy_gap_bound(double eps, double dim, const char* statement) {
  if (eps > 1.0 / std::numbers::e) {
    std::ostringstream msg;
    msg << statement << " at alpha = 1 needs the l2 radius " << eps << " <= 1/e";
    violated(msg.str());
  }
  const double root = std::sqrt(dim);
  return eps * root * std::log(root / eps);
}

std::size_t require(const std::optional<std::size_t>& v, const char* name, const char* statement) {
  if (!v || *v == 0) invalid(std::string(statement) + " requires a positive " + name);
  return *v;
}

double order_factor(double alpha, double t) { return std::max(1.0, std::pow(t, 2.0 - alpha)); }

void require_basic_sample_size(std::size_t n, double delta, const char* statement) {
  const double min_n = 2.0 + 8.0 * std::log(1.0 / delta);
  if (static_cast<double>(n) < min_n) {
    std::ostringstream msg;
    msg << statement << " requires n >= 2 + 8 ln(1/delta) = " << min_n << ", got n = " << n;
    violated(msg.str());
  }
}

double gap(double empirical_score, double population_score, double alpha) {
  return std::abs(transformed_score(empirical_score, alpha) - transformed_score(population_score, alpha));
}

}  // namespace

void DiscreteDistribution::validate() const {
  if (probs.empty() || support.rows() != static_cast<Eigen::Index>(probs.size()) || support.cols() < 1) {
    throw Error(ErrorKind::InvalidParams, "distribution needs m >= 1 atoms with one probability each");
  }
  if (!support.allFinite()) throw Error(ErrorKind::NonFiniteValue, "distribution atoms must be finite");
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) throw Error(ErrorKind::NotAProbability, "negative or non-finite probability");
  }
  const double total = pairwise_sum(probs);
  if (std::abs(total - 1.0) > kDistributionSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << total << ", not 1 within 1e-12";
    throw Error(ErrorKind::NotAProbability, msg.str());
  }
}

Spectrum weighted_atom_spectrum(const EmbeddingMatrix& atoms, std::span<const double> weights,
                                const KernelSpec& spec, SpectrumSource source) {
  if (weights.size() != atoms.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "one weight per atom required");
  }
  Eigen::MatrixXd m = gram_matrix(spec, atoms, false).entries;
  Eigen::VectorXd root(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) root(static_cast<Eigen::Index>(i)) = std::sqrt(weights[i]);
  m = root.asDiagonal() * m * root.asDiagonal();
  return symmetric_spectrum(m, source);
}

Spectrum population_spectrum(const DiscreteDistribution& dist, const KernelSpec& spec) {
  dist.validate();
  return weighted_atom_spectrum(EmbeddingMatrix(dist.support), dist.probs, spec, SpectrumSource::Oracle);
}

ScoreReport population_vendi(const DiscreteDistribution& dist, const KernelSpec& spec, double alpha,
                             std::optional<std::size_t> t) {
  const auto start = std::chrono::steady_clock::now();
  const Spectrum spectrum = population_spectrum(dist, spec);
  ScoreReport r;
  r.method = ScoreMethod::Oracle;
  r.alpha = alpha;
  r.t = t;
  r.entropy = t ? renyi_entropy(truncate_spectrum(spectrum, *t).values, alpha) : renyi_entropy(spectrum.values, alpha);
  r.score = std::exp(r.entropy);
  r.n = dist.size();
  r.kernel = spec;
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<std::size_t> sample_indices(const DiscreteDistribution& dist, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidParams, "sample size must be at least 1");
  dist.validate();
  std::vector<double> cdf(dist.size());
  double running = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) cdf[i] = (running += dist.probs[i]);

  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::size_t> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double u = uniform(engine) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out[s] = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), dist.size() - 1);
  }
  return out;
}

EmbeddingMatrix sample_from(const DiscreteDistribution& dist, std::size_t n, std::uint64_t seed) {
  const std::vector<std::size_t> idx = sample_indices(dist, n, seed);
  return EmbeddingMatrix(dist.support).select_rows(idx);
}

DiscreteDistribution empirical_distribution(const DiscreteDistribution& dist,
                                            std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(ErrorKind::InvalidParams, "empty sample");
  std::vector<std::size_t> counts(dist.size(), 0);
  for (std::size_t i : indices) {
    if (i >= dist.size()) throw Error(ErrorKind::InvalidParams, "sample index outside the support");
    ++counts[i];
  }
  std::vector<std::size_t> observed;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) observed.push_back(i);
  }
  DiscreteDistribution out;
  out.label = dist.label + " (empirical)";
  out.support.resize(static_cast<Eigen::Index>(observed.size()), dist.support.cols());
  out.probs.resize(observed.size());
  const double n = static_cast<double>(indices.size());
  for (std::size_t k = 0; k < observed.size(); ++k) {
    out.support.row(static_cast<Eigen::Index>(k)) = dist.support.row(static_cast<Eigen::Index>(observed[k]));
    out.probs[k] = static_cast<double>(counts[observed[k]]) / n;
  }
  return out;
}

std::string to_string(BoundStatement statement) {
  switch (statement) {
    case BoundStatement::Thm1: return "thm1";
    case BoundStatement::Cor1_RKE: return "cor1";
    case BoundStatement::Cor2a_alpha1: return "cor2a";
    case BoundStatement::Cor2b: return "cor2b";
    case BoundStatement::Thm2: return "thm2";
    case BoundStatement::Thm3a_FKEA: return "thm3a";
    case BoundStatement::Thm3b_Nystrom: return "thm3b";
  }
  return "unknown";
}

BoundStatement parse_bound_statement(const std::string& name) {
  for (BoundStatement s : {BoundStatement::Thm1, BoundStatement::Cor1_RKE, BoundStatement::Cor2a_alpha1,
                           BoundStatement::Cor2b, BoundStatement::Thm2, BoundStatement::Thm3a_FKEA,
                           BoundStatement::Thm3b_Nystrom}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorKind::InvalidParams, "unknown statement '" + name + "'");
}

bool is_asymptotic(BoundStatement statement) noexcept { return statement == BoundStatement::Thm3b_Nystrom; }

double theoretical_bound(const BoundQuery& q) {
  if (!(q.delta > 0.0 && q.delta < 1.0)) invalid("delta must lie in (0, 1)");
  if (q.n < 1) invalid("n must be at least 1");
  if (!(std::isfinite(q.alpha) && q.alpha > 0.0)) invalid("alpha must be positive");

  const double n = static_cast<double>(q.n);
  const double log2d = std::log(2.0 / q.delta);
  const double e2 = std::numbers::e * std::numbers::e;

  switch (q.statement) {
    case BoundStatement::Thm1:
      require_basic_sample_size(q.n, q.delta, "thm1");
      return std::sqrt(32.0 * log2d / n);

    case BoundStatement::Cor1_RKE:
      if (q.alpha < 2.0) violated("cor1 holds for alpha >= 2");
      require_basic_sample_size(q.n, q.delta, "cor1");
      return std::sqrt(32.0 * log2d / n);

    case BoundStatement::Cor2a_alpha1: {
      const double d = static_cast<double>(require(q.d, "feature dimension d", "cor2a"));
      if (n < 32.0 * e2 * log2d) {
        std::ostringstream msg;
        msg << "cor2a requires n >= 32 e^2 ln(2/delta) = " << 32.0 * e2 * log2d << ", got n = " << q.n;
        violated(msg.str());
      }
      return std::sqrt(8.0 * d * log2d / n) * std::log(n * d / (32.0 * log2d));
    }

    case BoundStatement::Cor2b: {
      const double d = static_cast<double>(require(q.d, "feature dimension d", "cor2b"));
      if (!(q.alpha > 1.0 && q.alpha < 2.0)) violated("cor2b holds for 1 < alpha < 2");
      require_basic_sample_size(q.n, q.delta, "cor2b");
      return std::sqrt(32.0 * std::pow(d, 2.0 - q.alpha) * log2d / n);
    }

    case BoundStatement::Thm2: {
      const double t = static_cast<double>(require(q.t, "truncation level t", "thm2"));
      if (q.alpha < 1.0 && !is_shannon(q.alpha)) violated("thm2 holds for alpha >= 1");
      require_basic_sample_size(q.n, q.delta, "thm2");
      if (is_shannon(q.alpha)) return entropy_gap_bound(std::sqrt(32.0 * log2d / n), t, "thm2");
      return std::sqrt(32.0 * order_factor(q.alpha, t) * log2d / n);
    }

    case BoundStatement::Thm3a_FKEA: {
      const double t = static_cast<double>(require(q.t, "feature count t", "thm3a"));
      if (q.alpha < 1.0 && !is_shannon(q.alpha)) violated("thm3a holds for alpha >= 1");
      require_basic_sample_size(q.n, q.delta, "thm3a");
      const double m = std::min(n, t);
      const double log3d = std::log(3.0 / q.delta);
      if (is_shannon(q.alpha)) return entropy_gap_bound(std::sqrt(128.0 * log3d / m), t, "thm3a");
      return std::sqrt(128.0 * order_factor(q.alpha, t) * log3d / m);
    }

    case BoundStatement::Thm3b_Nystrom: {
      const double t = static_cast<double>(require(q.t, "landmark count t", "thm3b"));
      const double r = static_cast<double>(require(q.r, "rank r", "thm3b"));
      if (!q.tau || !(*q.tau > 0.0)) invalid("thm3b requires a positive tau");
      if (q.alpha < 1.0 && !is_shannon(q.alpha)) violated("thm3b holds for alpha >= 1");
      require_basic_sample_size(q.n, q.delta, "thm3b");
      const double tau = *q.tau;
      const double logn = std::log(n);
      if (t < r * tau * logn) {
        std::ostringstream msg;
        msg << "thm3b requires t >= r tau ln(n) = " << r * tau * logn << ", got t = " << q.t.value();
        violated(msg.str());
      }
      const double core = log2d * t * tau * tau * logn * logn / n;
      if (is_shannon(q.alpha)) return entropy_gap_bound(std::sqrt(core), t, "thm3b");
      return std::sqrt(order_factor(q.alpha, t) * core);
    }
  }
  invalid("unknown statement");
}

MonteCarloResult monte_carlo_check(const DiscreteDistribution& dist, const KernelSpec& spec,
                                   const MonteCarloQuery& q) {
  dist.validate();
  spec.validate();
  if (q.trials < 1) throw Error(ErrorKind::InvalidParams, "monte carlo check needs at least one trial");

  const BoundStatement st = q.statement;
  double alpha = q.alpha;
  if (st == BoundStatement::Cor2a_alpha1) alpha = 1.0;

  BoundQuery bq{st, q.n, q.delta, alpha, std::nullopt, q.t, q.tau, q.r};
  if (st == BoundStatement::Cor2a_alpha1 || st == BoundStatement::Cor2b) {
    if (spec.kind != KernelKind::Cosine) {
      throw Error(ErrorKind::InfiniteDimensionalKernel, to_string(st) + " needs a finite-dimensional kernel");
    }
    bq.d = dist.dim();
  }
  if (st == BoundStatement::Thm3a_FKEA && spec.kind != KernelKind::Gaussian) {
    throw Error(ErrorKind::ShiftInvariantRequired, "thm3a needs the Gaussian kernel");
  }

  MonteCarloResult result;
  result.trials = q.trials;
  result.bound = theoretical_bound(bq);
  result.distances.assign(q.trials, 0.0);

  const Spectrum population = population_spectrum(dist, spec);
  const bool truncated = st == BoundStatement::Thm2 || st == BoundStatement::Thm3a_FKEA ||
                         st == BoundStatement::Thm3b_Nystrom;
  std::vector<double> population_values = population.values;
  if (truncated) population_values = truncate_spectrum(population, *q.t).values;
  const double population_score = std::exp(renyi_entropy(population_values, alpha));

  parallel_for(q.trials, [&](std::size_t trial) {
    const std::uint64_t trial_seed = derive_seed({q.seed, trial});
    const std::vector<std::size_t> idx = sample_indices(dist, q.n, trial_seed);

    std::vector<double> empirical;
    if (st == BoundStatement::Thm3a_FKEA || st == BoundStatement::Thm3b_Nystrom) {
      const EmbeddingMatrix sample = EmbeddingMatrix(dist.support).select_rows(idx);
      const std::uint64_t method_seed = derive_seed({q.seed, trial, 1});
      const Spectrum s = st == BoundStatement::Thm3a_FKEA
                             ? fkea_spectrum(sample, spec, *q.t, method_seed)
                             : nystrom_spectrum(sample, spec, std::min(*q.t, q.n), method_seed, q.rcond);
      empirical = truncate_spectrum(s, *q.t).values;
    } else {
      // Duplicate draws collapse onto weighted atoms: same nonzero spectrum
      // as the n x n normalized Gram matrix, at the cost of the support size.
      const DiscreteDistribution emp = empirical_distribution(dist, idx);
      const Spectrum s = weighted_atom_spectrum(EmbeddingMatrix(emp.support), emp.probs, spec, SpectrumSource::Gram);
      empirical = truncated ? truncate_spectrum(s, *q.t).values : s.values;
    }

    double distance = 0.0;
    if (st == BoundStatement::Thm1) {
      distance = padded_l2_distance(empirical, population.values);
    } else {
      distance = gap(std::exp(renyi_entropy(empirical, alpha)), population_score, alpha);
    }
    result.distances[trial] = distance;
  });

  for (double d : result.distances) {
    if (d > result.bound) ++result.violations;
  }
  return result;
}

}  // namespace vendi
