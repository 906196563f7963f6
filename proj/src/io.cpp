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

#include "vendi/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "vendi/error.hpp"

namespace vendi {

namespace {

std::uint64_t load_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void store_le(std::ostream& out, std::uint64_t v, int bytes) {
  char buf[8];
  for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(buf, bytes);
}

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::IoFailure, "write to '" + path.string() + "' failed");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

std::string optional_csv(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); }

void write_row(std::ostream& out, const TableRow& row, bool with_k) {
  if (with_k) out << optional_csv(row.k) << ',';
  out << to_string(row.method) << ',' << format_double(row.alpha) << ',' << optional_csv(row.t) << ','
      << (row.sigma ? format_double(*row.sigma) : std::string()) << ',' << row.n << ',' << row.repeat << ','
      << row.seed << ',' << format_double(row.score) << ',' << format_double(row.elapsed_seconds) << '\n';
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorKind::IoFailure, "cannot format number");
  return std::string(buf, ptr);
}

EmbeddingFormat parse_embedding_format(const std::string& name) {
  if (name == "vemb") return EmbeddingFormat::Vemb;
  if (name == "csv") return EmbeddingFormat::Csv;
  throw Error(ErrorKind::InvalidParams, "unknown embedding format '" + name + "' (expected vemb or csv)");
}

ScoreFormat parse_score_format(const std::string& name) {
  if (name == "jsonl" || name == "json-lines" || name == "json") return ScoreFormat::JsonLines;
  if (name == "csv") return ScoreFormat::Csv;
  throw Error(ErrorKind::InvalidParams, "unknown score format '" + name + "' (expected jsonl or csv)");
}

EmbeddingMatrix read_vemb(std::istream& in) {
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < 4 || std::memcmp(p, "VEMB", 4) != 0) throw Error(ErrorKind::BadMagic, "missing VEMB magic");
  if (bytes.size() < kVembHeaderBytes) throw Error(ErrorKind::TruncatedPayload, "file ends inside the header");

  EmbeddingFileHeader header;
  header.version = static_cast<std::uint16_t>(load_le(p + 4, 2));
  header.flags = static_cast<std::uint16_t>(load_le(p + 6, 2));
  header.n = load_le(p + 8, 8);
  header.d = load_le(p + 16, 8);
  if (header.version != 1 || header.flags != 0) {
    throw Error(ErrorKind::BadMagic, "unsupported vemb version " + std::to_string(header.version) + " / flags " +
                                         std::to_string(header.flags));
  }
  if (header.n == 0 || header.d == 0) throw Error(ErrorKind::InvalidParams, "vemb declares an empty matrix");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / 4;
  if (header.n > limit / header.d) throw Error(ErrorKind::PayloadLengthMismatch, "declared size overflows");

  const std::uint64_t expected = header.n * header.d * 4;
  const std::uint64_t actual = bytes.size() - kVembHeaderBytes;
  if (actual < expected) {
    throw Error(ErrorKind::TruncatedPayload, "payload has " + std::to_string(actual) + " bytes, header declares " +
                                                 std::to_string(expected));
  }
  if (actual > expected) {
    throw Error(ErrorKind::PayloadLengthMismatch, "payload has " + std::to_string(actual - expected) +
                                                      " bytes beyond the declared n*d values");
  }

  RowMatrix values(static_cast<Eigen::Index>(header.n), static_cast<Eigen::Index>(header.d));
  const unsigned char* payload = p + kVembHeaderBytes;
  for (std::uint64_t i = 0; i < header.n; ++i) {
    for (std::uint64_t j = 0; j < header.d; ++j) {
      const auto bits = static_cast<std::uint32_t>(load_le(payload + 4 * (i * header.d + j), 4));
      const double v = static_cast<double>(std::bit_cast<float>(bits));
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::NonFiniteValue,
                    "non-finite value at row " + std::to_string(i) + ", column " + std::to_string(j));
      }
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return EmbeddingMatrix(std::move(values));
}

EmbeddingMatrix read_embeddings_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split_commas(view);

    std::vector<double> row;
    row.reserve(fields.size());
    std::optional<std::size_t> bad_column;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) {
        bad_column = c;
        break;
      }
      row.push_back(*v);
    }
    if (bad_column) {
      if (first_content_line) {
        first_content_line = false;
        continue;  // header
      }
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ", column " +
                                             std::to_string(*bad_column) + ": '" + std::string(fields[*bad_column]) +
                                             "' is not a number");
    }
    first_content_line = false;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw Error(ErrorKind::NonFiniteValue, "non-finite value at row " + std::to_string(rows.size()) +
                                                   ", column " + std::to_string(c) + " (line " +
                                                   std::to_string(line_no) + ")");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::RaggedRows, "line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                                             " fields, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::InvalidParams, "csv contains no data rows");

  RowMatrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return EmbeddingMatrix(std::move(values));
}

EmbeddingMatrix read_embeddings(const std::filesystem::path& path, EmbeddingFormat format) {
  if (format == EmbeddingFormat::Vemb) {
    auto in = open_input(path, std::ios::binary);
    return read_vemb(in);
  }
  auto in = open_input(path, std::ios::in);
  return read_embeddings_csv(in);
}

void write_vemb(const EmbeddingMatrix& embeddings, std::ostream& out) {
  out.write("VEMB", 4);
  store_le(out, 1, 2);
  store_le(out, 0, 2);
  store_le(out, embeddings.rows(), 8);
  store_le(out, embeddings.cols(), 8);
  const RowMatrix& v = embeddings.values();
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      store_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v(i, j))), 4);
    }
  }
}

void write_embeddings(const EmbeddingMatrix& embeddings, const std::filesystem::path& path) {
  auto out = open_output(path, std::ios::binary | std::ios::trunc);
  write_vemb(embeddings, out);
  finish(out, path);
}

nlohmann::ordered_json score_to_json(const ScoreReport& r) {
  nlohmann::ordered_json j;
  j["method"] = to_string(r.method);
  j["kernel"] = r.kernel.name();
  j["sigma"] = r.kernel.kind == KernelKind::Gaussian ? nlohmann::ordered_json(r.kernel.sigma) : nullptr;
  j["alpha"] = r.alpha;
  j["t"] = r.t ? nlohmann::ordered_json(*r.t) : nullptr;
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nullptr;
  j["n"] = r.n;
  j["score"] = r.score;
  j["entropy"] = r.entropy;
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

void write_scores(std::span<const ScoreReport> reports, std::ostream& out, ScoreFormat format) {
  if (format == ScoreFormat::JsonLines) {
    for (const auto& r : reports) out << score_to_json(r).dump() << '\n';
    return;
  }
  out << "method,kernel,sigma,alpha,t,seed,n,score,entropy,elapsed_seconds\n";
  for (const auto& r : reports) {
    out << to_string(r.method) << ',' << r.kernel.name() << ','
        << (r.kernel.kind == KernelKind::Gaussian ? format_double(r.kernel.sigma) : std::string()) << ','
        << format_double(r.alpha) << ',' << optional_csv(r.t) << ','
        << (r.seed ? std::to_string(*r.seed) : std::string()) << ',' << r.n << ',' << format_double(r.score) << ','
        << format_double(r.entropy) << ',' << format_double(r.elapsed_seconds) << '\n';
  }
}

void write_score(const ScoreReport& report, const std::filesystem::path& path, ScoreFormat format) {
  auto out = open_output(path, std::ios::trunc);
  write_scores(std::span(&report, 1), out, format);
  finish(out, path);
}

void write_table(std::span<const TableRow> rows, std::ostream& out) {
  out << kConvergenceHeader << '\n';
  for (const auto& row : rows) write_row(out, row, false);
}

void write_table(std::span<const TableRow> rows, const std::filesystem::path& path) {
  auto out = open_output(path, std::ios::trunc);
  write_table(rows, out);
  finish(out, path);
}

void write_diversity_table(std::span<const TableRow> rows, std::ostream& out) {
  out << kDiversityHeader << '\n';
  for (const auto& row : rows) write_row(out, row, true);
}

void write_diversity_table(std::span<const TableRow> rows, const std::filesystem::path& path) {
  auto out = open_output(path, std::ios::trunc);
  write_diversity_table(rows, out);
  finish(out, path);
}

DiscreteDistribution distribution_from_json(const nlohmann::json& doc) {
  try {
    DiscreteDistribution dist;
    const auto& support = doc.at("support");
    const auto& probs = doc.at("probs");
    if (!support.is_array() || support.empty() || !probs.is_array()) {
      throw Error(ErrorKind::ParseError, "distribution needs non-empty 'support' and 'probs' arrays");
    }
    const std::size_t m = support.size();
    const std::size_t d = support.front().size();
    if (probs.size() != m) throw Error(ErrorKind::ParseError, "'probs' length differs from 'support' length");
    dist.support.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < m; ++i) {
      if (support[i].size() != d) throw Error(ErrorKind::RaggedRows, "support atom " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < d; ++j) {
        dist.support(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = support[i][j].get<double>();
      }
    }
    dist.probs = probs.get<std::vector<double>>();
    dist.label = doc.value("label", std::string());
    dist.validate();
    return dist;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("distribution document: ") + e.what());
  }
}

nlohmann::ordered_json distribution_to_json(const DiscreteDistribution& dist) {
  nlohmann::ordered_json doc;
  doc["label"] = dist.label;
  doc["probs"] = dist.probs;
  auto support = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < dist.support.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < dist.support.cols(); ++j) row.push_back(dist.support(i, j));
    support.push_back(std::move(row));
  }
  doc["support"] = std::move(support);
  return doc;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  auto in = open_input(path, std::ios::in);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, "'" + path.string() + "': " + e.what());
  }
}

DiscreteDistribution read_distribution(const std::filesystem::path& path) {
  return distribution_from_json(read_json_file(path));
}

void write_distribution(const DiscreteDistribution& dist, const std::filesystem::path& path) {
  auto out = open_output(path, std::ios::trunc);
  out << distribution_to_json(dist).dump(1) << '\n';
  finish(out, path);
}

}  // namespace vendi
