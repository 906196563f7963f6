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

// Synthetic mixtures and the convergence / diversity sweeps.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "json.hpp"
#include "vendi/approx.hpp"
#include "vendi/entropy.hpp"
#include "vendi/io.hpp"
#include "vendi/oracle.hpp"

namespace vendi {

inline constexpr std::size_t kDefaultAtomsPerMode = 32;

enum class SynthLayout {
  RandomSphere,  // centers uniform on the sphere of radius `spread`
  Orthogonal,    // centers along a random orthonormal frame, needs k <= d
};

SynthLayout parse_synth_layout(const std::string& name);

struct SynthParams {
  std::size_t k = 1;
  std::size_t d = 2;
  double spread = 1.0;
  double within_std = 0.0;
  std::uint64_t seed = 0;
  std::size_t atoms_per_mode = kDefaultAtomsPerMode;
  SynthLayout layout = SynthLayout::RandomSphere;
};

/// k modes of `atoms_per_mode` atoms each, center + N(0, within_std^2 I),
/// uniform probabilities. Deterministic in the seed.
DiscreteDistribution synth_mixture(const SynthParams& params);
DiscreteDistribution synth_mixture(std::size_t k, std::size_t d, double spread, double within_std,
                                   std::uint64_t seed);

struct SweepSource {
  std::optional<DiscreteDistribution> distribution;
  std::optional<std::filesystem::path> file;
  EmbeddingFormat format = EmbeddingFormat::Vemb;
};

struct SweepConfig {
  std::vector<std::size_t> n_grid;
  std::size_t repeats = 1;
  std::vector<ScoreMethod> methods{ScoreMethod::Exact};
  std::vector<double> alpha{1.0};
  std::optional<std::size_t> t;
  KernelSpec kernel;
  std::uint64_t seed = 0;
  double rcond = kDefaultNystromRcond;
  SweepSource source;

  /// Throws InvalidParams on an empty or non-increasing grid, zero repeats,
  /// unsupported methods, or a missing t.
  void validate() const;
};

/// 250 to 8000 in 10 log-spaced steps.
std::vector<std::size_t> default_n_grid();

/// One row per (n, repeat, method, alpha); RKE contributes a single alpha = 2
/// row per cell. Samples for a cell come from the stream (seed, n, repeat);
/// method randomness from (seed, n, repeat, method). Rows are returned in
/// canonical order.
std::vector<TableRow> convergence_sweep(const SweepConfig& config);

struct DiversityConfig {
  std::vector<std::size_t> k_grid;
  std::size_t d = 32;
  double spread = 1.0;
  double within_std = 0.0;
  std::size_t atoms_per_mode = kDefaultAtomsPerMode;
  SynthLayout layout = SynthLayout::RandomSphere;
  std::size_t n = 1000;
  std::size_t repeats = 1;
  std::vector<ScoreMethod> methods{ScoreMethod::Exact, ScoreMethod::Truncated, ScoreMethod::Nystrom,
                                   ScoreMethod::FKEA};
  std::vector<double> alpha{1.0};
  std::optional<std::size_t> t;
  KernelSpec kernel;
  std::uint64_t seed = 0;
  double rcond = kDefaultNystromRcond;

  void validate() const;
};

/// For each k: synth_mixture with seed (seed, k), then `repeats` cells of n
/// samples scored by every method. Rows carry k.
std::vector<TableRow> diversity_sweep(const DiversityConfig& config);

/// Canonical ordering: k, n, repeat, method, alpha, t.
void sort_rows(std::vector<TableRow>& rows);

/// Config documents mirror the struct fields; relative paths resolve against
/// `base_dir`.
SweepConfig sweep_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
DiversityConfig diversity_config_from_json(const nlohmann::json& doc);
SynthParams synth_params_from_json(const nlohmann::json& doc);

}  // namespace vendi
