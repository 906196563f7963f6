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

// File formats.
//
// vemb (little-endian regardless of host):
//   offset  0  4 bytes   magic "VEMB"
//   offset  4  uint16    version = 1
//   offset  6  uint16    flags = 0
//   offset  8  uint64    n (rows)
//   offset 16  uint64    d (columns)
//   offset 24  n*d IEEE-754 float32, row-major
//
// Embedding CSV: comma-separated decimal rows; a non-numeric first line is
// treated as a header and skipped.
//
// Score records (json-lines or CSV) carry, in order: method, kernel, sigma,
// alpha, t, seed, n, score, entropy, elapsed_seconds.
//
// Convergence tables: "method,alpha,t,sigma,n,repeat,seed,score,elapsed_seconds".
// Diversity tables prepend a "k" column.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vendi/entropy.hpp"
#include "vendi/kernels.hpp"
#include "vendi/oracle.hpp"

namespace vendi {

enum class EmbeddingFormat { Vemb, Csv };
EmbeddingFormat parse_embedding_format(const std::string& name);

struct EmbeddingFileHeader {
  char magic[4] = {'V', 'E', 'M', 'B'};
  std::uint16_t version = 1;
  std::uint16_t flags = 0;
  std::uint64_t n = 0;
  std::uint64_t d = 0;
};

inline constexpr std::size_t kVembHeaderBytes = 24;

EmbeddingMatrix read_embeddings(const std::filesystem::path& path, EmbeddingFormat format);
EmbeddingMatrix read_vemb(std::istream& in);
EmbeddingMatrix read_embeddings_csv(std::istream& in);

/// Values are stored as float32; the round trip is exact for data that is
/// already single precision.
void write_embeddings(const EmbeddingMatrix& embeddings, const std::filesystem::path& path);
void write_vemb(const EmbeddingMatrix& embeddings, std::ostream& out);

enum class ScoreFormat { JsonLines, Csv };
ScoreFormat parse_score_format(const std::string& name);

nlohmann::ordered_json score_to_json(const ScoreReport& report);
void write_scores(std::span<const ScoreReport> reports, std::ostream& out, ScoreFormat format);
void write_score(const ScoreReport& report, const std::filesystem::path& path, ScoreFormat format);

/// One sweep cell. `k` is set only by diversity sweeps.
struct TableRow {
  std::optional<std::size_t> k;
  ScoreMethod method = ScoreMethod::Exact;
  double alpha = 1.0;
  std::optional<std::size_t> t;
  std::optional<double> sigma;
  std::size_t n = 0;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  double score = 0.0;
  double elapsed_seconds = 0.0;
};

inline constexpr const char* kConvergenceHeader = "method,alpha,t,sigma,n,repeat,seed,score,elapsed_seconds";
inline constexpr const char* kDiversityHeader = "k,method,alpha,t,sigma,n,repeat,seed,score,elapsed_seconds";

void write_table(std::span<const TableRow> rows, std::ostream& out);
void write_table(std::span<const TableRow> rows, const std::filesystem::path& path);
void write_diversity_table(std::span<const TableRow> rows, std::ostream& out);
void write_diversity_table(std::span<const TableRow> rows, const std::filesystem::path& path);

/// Distribution documents: {"support": [[...], ...], "probs": [...], "label": "..."}.
DiscreteDistribution distribution_from_json(const nlohmann::json& doc);
nlohmann::ordered_json distribution_to_json(const DiscreteDistribution& dist);
DiscreteDistribution read_distribution(const std::filesystem::path& path);
void write_distribution(const DiscreteDistribution& dist, const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Shortest decimal that round-trips the double.
std::string format_double(double value);

}  // namespace vendi
