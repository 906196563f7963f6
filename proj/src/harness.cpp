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

#include "vendi/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <tuple>

#include "vendi/error.hpp"
#include "vendi/parallel.hpp"

namespace vendi {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool needs_t(ScoreMethod m) {
  return m == ScoreMethod::Truncated || m == ScoreMethod::Nystrom || m == ScoreMethod::FKEA;
}

void validate_methods(const std::vector<ScoreMethod>& methods, const std::optional<std::size_t>& t,
                      const KernelSpec& kernel) {
  if (methods.empty()) throw Error(ErrorKind::InvalidParams, "at least one method required");
  for (ScoreMethod m : methods) {
    if (m == ScoreMethod::Oracle) throw Error(ErrorKind::InvalidParams, "oracle is not a sweep method");
    if (needs_t(m) && (!t || *t < 1)) {
      throw Error(ErrorKind::InvalidParams, "method " + to_string(m) + " needs t >= 1");
    }
    if (m == ScoreMethod::FKEA && kernel.kind != KernelKind::Gaussian) {
      throw Error(ErrorKind::ShiftInvariantRequired, "fkea needs a gaussian kernel");
    }
  }
  std::vector<ScoreMethod> sorted = methods;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::InvalidParams, "duplicate method in method list");
  }
}

void validate_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw Error(ErrorKind::InvalidParams, "at least one alpha required");
  for (double a : alphas) {
    if (!std::isfinite(a) || a <= 0.0) throw Error(ErrorKind::InvalidAlpha, "alpha must be positive and finite");
  }
}

// Sample for one cell: the materialized rows, plus the collapsed empirical
// distribution when the source is a distribution. The collapsed form has the
// same nonzero spectrum as the Gram matrix of the rows and a smaller
// eigenproblem when atoms repeat; cosine cells use the covariance route instead.
struct CellSample {
  EmbeddingMatrix rows;
  std::optional<DiscreteDistribution> collapsed;
};

struct CellSpec {
  std::optional<std::size_t> k;
  std::size_t n = 0;
  std::size_t repeat = 0;
  std::uint64_t stream = 0;  // base stream for the cell's method seeds
};

// Scores every (method, alpha) on one sample.
std::vector<TableRow> score_cell(const CellSample& sample, const CellSpec& cell, const std::vector<ScoreMethod>& methods,
                                 const std::vector<double>& alphas, const std::optional<std::size_t>& t,
                                 const KernelSpec& kernel, double rcond) {
  std::vector<TableRow> rows;
  std::optional<Spectrum> exact;
  double exact_seconds = 0.0;
  auto exact_spectrum = [&]() -> const Spectrum& {
    if (!exact) {
      const auto start = Clock::now();
      if (sample.collapsed && kernel.kind == KernelKind::Gaussian) {
        exact = weighted_atom_spectrum(EmbeddingMatrix(sample.collapsed->support), sample.collapsed->probs, kernel,
                                       SpectrumSource::Gram);
      } else {
        exact = sample_spectrum(sample.rows, kernel);
      }
      exact_seconds = seconds_since(start);
    }
    return *exact;
  };

  auto emit = [&](ScoreMethod method, double alpha, std::optional<std::size_t> row_t, std::uint64_t seed,
                  double score, double seconds) {
    TableRow row;
    row.k = cell.k;
    row.method = method;
    row.alpha = alpha;
    row.t = row_t;
    if (kernel.kind == KernelKind::Gaussian) row.sigma = kernel.sigma;
    row.n = cell.n;
    row.repeat = cell.repeat;
    row.seed = seed;
    row.score = score;
    row.elapsed_seconds = seconds;
    rows.push_back(row);
  };

  for (ScoreMethod method : methods) {
    const std::uint64_t seed = derive_seed({cell.stream, static_cast<std::uint64_t>(method)});
    switch (method) {
      case ScoreMethod::Exact: {
        const Spectrum& s = exact_spectrum();
        for (double a : alphas) {
          const auto start = Clock::now();
          const double h = renyi_entropy(s.values, a);
          emit(method, a, std::nullopt, seed, std::exp(h), exact_seconds + seconds_since(start));
        }
        break;
      }
      case ScoreMethod::Truncated: {
        const Spectrum& s = exact_spectrum();
        const auto start = Clock::now();
        const TruncatedSpectrum tr = truncate_spectrum(s, *t);
        const double base = exact_seconds + seconds_since(start);
        for (double a : alphas) {
          const auto a_start = Clock::now();
          const double h = renyi_entropy(tr.values, a);
          emit(method, a, t, seed, std::exp(h), base + seconds_since(a_start));
        }
        break;
      }
      case ScoreMethod::RKE: {
        const ScoreReport r = rke_score(sample.rows, kernel);
        emit(method, 2.0, std::nullopt, seed, r.score, r.elapsed_seconds);
        break;
      }
      case ScoreMethod::Nystrom:
      case ScoreMethod::FKEA: {
        const auto start = Clock::now();
        const Spectrum s = method == ScoreMethod::FKEA ? fkea_spectrum(sample.rows, kernel, *t, seed)
                                                       : nystrom_spectrum(sample.rows, kernel, *t, seed, rcond);
        const TruncatedSpectrum tr = truncate_spectrum(s, *t);
        const double base = seconds_since(start);
        for (double a : alphas) {
          const auto a_start = Clock::now();
          const double h = renyi_entropy(tr.values, a);
          emit(method, a, t, seed, std::exp(h), base + seconds_since(a_start));
        }
        break;
      }
      case ScoreMethod::Oracle:
        throw Error(ErrorKind::InvalidParams, "oracle is not a sweep method");
    }
  }
  return rows;
}

CellSample sample_distribution(const DiscreteDistribution& dist, std::size_t n, std::uint64_t seed) {
  const std::vector<std::size_t> indices = sample_indices(dist, n, seed);
  RowMatrix rows(static_cast<Eigen::Index>(n), dist.support.cols());
  for (std::size_t i = 0; i < n; ++i) rows.row(static_cast<Eigen::Index>(i)) = dist.support.row(static_cast<Eigen::Index>(indices[i]));
  return {EmbeddingMatrix(std::move(rows)), empirical_distribution(dist, indices)};
}

template <typename T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  return doc.contains(key) ? doc.at(key).get<T>() : fallback;
}

std::vector<ScoreMethod> methods_from_json(const nlohmann::json& doc, std::vector<ScoreMethod> fallback) {
  if (!doc.contains("methods")) return fallback;
  std::vector<ScoreMethod> out;
  for (const auto& m : doc.at("methods")) out.push_back(parse_score_method(m.get<std::string>()));
  return out;
}

std::vector<double> alphas_from_json(const nlohmann::json& doc) {
  if (!doc.contains("alpha")) return {1.0};
  const auto& a = doc.at("alpha");
  if (a.is_number()) return {a.get<double>()};
  return a.get<std::vector<double>>();
}

KernelSpec kernel_from_json(const nlohmann::json& doc) {
  KernelSpec spec;
  spec.kind = parse_kernel_kind(get_or<std::string>(doc, "kernel", "cosine"));
  if (spec.kind == KernelKind::Gaussian) {
    if (!doc.contains("sigma")) throw Error(ErrorKind::InvalidParams, "gaussian kernel needs 'sigma'");
    spec.sigma = doc.at("sigma").get<double>();
  }
  spec.validate();
  return spec;
}

std::optional<std::size_t> optional_size(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<std::size_t>();
}

template <typename Fn>
auto with_json_errors(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
  }
}

}  // namespace

SynthLayout parse_synth_layout(const std::string& name) {
  if (name == "sphere") return SynthLayout::RandomSphere;
  if (name == "orthogonal") return SynthLayout::Orthogonal;
  throw Error(ErrorKind::InvalidParams, "unknown layout '" + name + "' (expected sphere or orthogonal)");
}

DiscreteDistribution synth_mixture(const SynthParams& p) {
  if (p.k < 1 || p.d < 1 || p.atoms_per_mode < 1) {
    throw Error(ErrorKind::InvalidParams, "synth_mixture needs k >= 1, d >= 1 and atoms_per_mode >= 1");
  }
  if (!std::isfinite(p.spread) || p.spread < 0.0 || !std::isfinite(p.within_std) || p.within_std < 0.0) {
    throw Error(ErrorKind::InvalidParams, "spread and within_std must be finite and non-negative");
  }
  if (p.layout == SynthLayout::Orthogonal && p.k > p.d) {
    throw Error(ErrorKind::InvalidParams, "orthogonal layout needs k <= d");
  }
  const auto k = static_cast<Eigen::Index>(p.k);
  const auto d = static_cast<Eigen::Index>(p.d);
  std::mt19937_64 engine(p.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Eigen::MatrixXd centers(k, d);
  if (p.layout == SynthLayout::Orthogonal) {
    Eigen::MatrixXd g(d, k);
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index i = 0; i < d; ++i) g(i, j) = normal(engine);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
    centers = q.transpose() * p.spread;
  } else {
    for (Eigen::Index i = 0; i < k; ++i) {
      Eigen::VectorXd v(d);
      do {
        for (Eigen::Index j = 0; j < d; ++j) v(j) = normal(engine);
      } while (v.norm() == 0.0);
      centers.row(i) = v.normalized().transpose() * p.spread;
    }
  }

  const auto per = static_cast<Eigen::Index>(p.atoms_per_mode);
  DiscreteDistribution dist;
  dist.support.resize(k * per, d);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index a = 0; a < per; ++a) {
      for (Eigen::Index j = 0; j < d; ++j) dist.support(i * per + a, j) = centers(i, j) + p.within_std * normal(engine);
    }
  }
  dist.probs.assign(static_cast<std::size_t>(k * per), 1.0 / static_cast<double>(k * per));
  dist.label = "synth k=" + std::to_string(p.k) + " d=" + std::to_string(p.d);
  dist.validate();
  return dist;
}

DiscreteDistribution synth_mixture(std::size_t k, std::size_t d, double spread, double within_std,
                                   std::uint64_t seed) {
  SynthParams p;
  p.k = k;
  p.d = d;
  p.spread = spread;
  p.within_std = within_std;
  p.seed = seed;
  return synth_mixture(p);
}

std::vector<std::size_t> default_n_grid() {
  std::vector<std::size_t> grid;
  for (int i = 0; i < 10; ++i) {
    grid.push_back(static_cast<std::size_t>(std::lround(250.0 * std::pow(32.0, i / 9.0))));
  }
  return grid;
}

void SweepConfig::validate() const {
  if (n_grid.empty()) throw Error(ErrorKind::InvalidParams, "n_grid must not be empty");
  if (n_grid.front() < 1) throw Error(ErrorKind::InvalidParams, "n_grid entries must be positive");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) throw Error(ErrorKind::InvalidParams, "n_grid must be strictly increasing");
  }
  if (repeats < 1) throw Error(ErrorKind::InvalidParams, "repeats must be >= 1");
  kernel.validate();
  validate_methods(methods, t, kernel);
  validate_alphas(alpha);
  if (source.distribution.has_value() == source.file.has_value()) {
    throw Error(ErrorKind::InvalidParams, "source must be exactly one of a distribution or an embedding file");
  }
  if (source.distribution) source.distribution->validate();
}

std::vector<TableRow> convergence_sweep(const SweepConfig& config) {
  config.validate();
  std::optional<EmbeddingMatrix> data;
  if (config.source.file) {
    data = read_embeddings(*config.source.file, config.source.format);
    if (data->rows() < config.n_grid.back()) {
      throw Error(ErrorKind::GridExceedsData, "file has " + std::to_string(data->rows()) + " rows, grid needs " +
                                                  std::to_string(config.n_grid.back()));
    }
  }

  std::vector<TableRow> rows;
  for (std::size_t n : config.n_grid) {
    for (std::size_t rep = 0; rep < config.repeats; ++rep) {
      const std::uint64_t sample_seed = derive_seed({config.seed, n, rep});
      CellSample sample = data ? CellSample{data->select_rows(sample_landmarks(data->rows(), n, sample_seed).indices),
                                            std::nullopt}
                               : sample_distribution(*config.source.distribution, n, sample_seed);
      const CellSpec cell{std::nullopt, n, rep, derive_seed({config.seed, n, rep, 1})};
      auto cell_rows = score_cell(sample, cell, config.methods, config.alpha, config.t, config.kernel, config.rcond);
      rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    }
  }
  sort_rows(rows);
  return rows;
}

void DiversityConfig::validate() const {
  if (k_grid.empty()) throw Error(ErrorKind::InvalidParams, "k_grid must not be empty");
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (k_grid[i] < 1 || (i > 0 && k_grid[i] <= k_grid[i - 1])) {
      throw Error(ErrorKind::InvalidParams, "k_grid must be positive and strictly increasing");
    }
  }
  if (n < 1 || repeats < 1 || d < 1) throw Error(ErrorKind::InvalidParams, "n, d and repeats must be >= 1");
  kernel.validate();
  validate_methods(methods, t, kernel);
  validate_alphas(alpha);
}

std::vector<TableRow> diversity_sweep(const DiversityConfig& config) {
  config.validate();
  std::vector<TableRow> rows;
  for (std::size_t k : config.k_grid) {
    SynthParams p;
    p.k = k;
    p.d = config.d;
    p.spread = config.spread;
    p.within_std = config.within_std;
    p.atoms_per_mode = config.atoms_per_mode;
    p.layout = config.layout;
    p.seed = derive_seed({config.seed, k});
    const DiscreteDistribution dist = synth_mixture(p);
    for (std::size_t rep = 0; rep < config.repeats; ++rep) {
      const CellSample sample = sample_distribution(dist, config.n, derive_seed({config.seed, k, config.n, rep}));
      const CellSpec cell{k, config.n, rep, derive_seed({config.seed, k, config.n, rep, 1})};
      auto cell_rows = score_cell(sample, cell, config.methods, config.alpha, config.t, config.kernel, config.rcond);
      rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    }
  }
  sort_rows(rows);
  return rows;
}

void sort_rows(std::vector<TableRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
    return std::tie(a.k, a.n, a.repeat, a.method, a.alpha, a.t) < std::tie(b.k, b.n, b.repeat, b.method, b.alpha, b.t);
  });
}

SynthParams synth_params_from_json(const nlohmann::json& doc) {
  return with_json_errors([&] {
    SynthParams p;
    p.k = doc.at("k").get<std::size_t>();
    p.d = doc.at("d").get<std::size_t>();
    p.spread = get_or<double>(doc, "spread", 1.0);
    p.within_std = get_or<double>(doc, "within_std", 0.0);
    p.seed = get_or<std::uint64_t>(doc, "seed", 0);
    p.atoms_per_mode = get_or<std::size_t>(doc, "atoms_per_mode", kDefaultAtomsPerMode);
    p.layout = parse_synth_layout(get_or<std::string>(doc, "layout", "sphere"));
    return p;
  });
}

SweepConfig sweep_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  return with_json_errors([&] {
    SweepConfig c;
    c.n_grid = doc.contains("n_grid") ? doc.at("n_grid").get<std::vector<std::size_t>>() : default_n_grid();
    c.repeats = get_or<std::size_t>(doc, "repeats", 1);
    c.methods = methods_from_json(doc, {ScoreMethod::Exact});
    c.alpha = alphas_from_json(doc);
    c.t = optional_size(doc, "t");
    c.kernel = kernel_from_json(doc);
    c.seed = get_or<std::uint64_t>(doc, "seed", 0);
    c.rcond = get_or<double>(doc, "rcond", kDefaultNystromRcond);

    const auto& src = doc.at("source");
    auto resolve = [&](const std::string& p) {
      const std::filesystem::path path(p);
      return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
    };
    if (src.contains("synth")) {
      c.source.distribution = synth_mixture(synth_params_from_json(src.at("synth")));
    } else if (src.contains("distribution")) {
      c.source.distribution = read_distribution(resolve(src.at("distribution").get<std::string>()));
    } else if (src.contains("embeddings")) {
      c.source.file = resolve(src.at("embeddings").get<std::string>());
      c.source.format = parse_embedding_format(get_or<std::string>(src, "format", "vemb"));
    } else {
      throw Error(ErrorKind::InvalidParams, "source needs one of 'synth', 'distribution' or 'embeddings'");
    }
    return c;
  });
}

DiversityConfig diversity_config_from_json(const nlohmann::json& doc) {
  return with_json_errors([&] {
    DiversityConfig c;
    c.k_grid = doc.at("k_grid").get<std::vector<std::size_t>>();
    c.d = get_or<std::size_t>(doc, "d", c.d);
    c.spread = get_or<double>(doc, "spread", c.spread);
    c.within_std = get_or<double>(doc, "within_std", c.within_std);
    c.atoms_per_mode = get_or<std::size_t>(doc, "atoms_per_mode", c.atoms_per_mode);
    c.layout = parse_synth_layout(get_or<std::string>(doc, "layout", "sphere"));
    c.n = get_or<std::size_t>(doc, "n", c.n);
    c.repeats = get_or<std::size_t>(doc, "repeats", c.repeats);
    c.methods = methods_from_json(doc, c.methods);
    c.alpha = alphas_from_json(doc);
    c.t = optional_size(doc, "t");
    c.kernel = kernel_from_json(doc);
    c.seed = get_or<std::uint64_t>(doc, "seed", 0);
    c.rcond = get_or<double>(doc, "rcond", c.rcond);
    return c;
  });
}

}  // namespace vendi
