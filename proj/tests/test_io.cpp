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


#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "vendi/io.hpp"

using namespace vendi;
using testing::error_kind_of;

namespace {

std::filesystem::path tmp(const std::string& name) {
  std::filesystem::create_directories(VENDI_TEST_TMPDIR);
  return std::filesystem::path(VENDI_TEST_TMPDIR) / name;
}

std::string vemb_bytes(std::uint64_t n, std::uint64_t d, std::size_t values, const char* magic = "VEMB") {
  std::string s(magic, 4);
  auto put = [&](std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  put(1, 2);
  put(0, 2);
  put(n, 8);
  put(d, 8);
  for (std::size_t i = 0; i < values; ++i) {
    const float f = static_cast<float>(i) + 0.5f;
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put(bits, 4);
  }
  return s;
}

}  // namespace

TEST_CASE("vemb header layout is little-endian") {
  std::stringstream buf;
  RowMatrix m(1, 1);
  m << 1.0;
  write_vemb(EmbeddingMatrix(m), buf);
  const std::string s = buf.str();
  REQUIRE(s.size() == 28);
  CHECK(s.substr(0, 4) == "VEMB");
  CHECK(s[4] == 1);
  CHECK(s[5] == 0);
  CHECK(s[8] == 1);
  CHECK(s[16] == 1);
  CHECK(static_cast<unsigned char>(s[27]) == 0x3f);  // 1.0f = 0x3f800000
}

TEST_CASE("vemb round trip is bitwise on single precision payloads") {
  const auto e = testing::random_embeddings(7, 5, 3);
  const auto path = tmp("roundtrip.vemb");
  write_embeddings(e, path);
  const EmbeddingMatrix back = read_embeddings(path, EmbeddingFormat::Vemb);
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 5);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(back.values()(i, j) == static_cast<double>(static_cast<float>(e.values()(i, j))));
  write_embeddings(back, path);
  const EmbeddingMatrix again = read_embeddings(path, EmbeddingFormat::Vemb);
  CHECK(again.values() == back.values());
}

TEST_CASE("vemb decoding errors") {
  {
    std::istringstream in(vemb_bytes(2, 3, 6));
    const auto e = read_vemb(in);
    CHECK(e.rows() == 2);
    CHECK(e.values()(1, 2) == 5.5);
  }
  {
    std::istringstream in(vemb_bytes(5, 3, 12));
    CHECK(error_kind_of([&] { read_vemb(in); }) == ErrorKind::TruncatedPayload);
  }
  {
    std::istringstream in(vemb_bytes(2, 3, 7));
    CHECK(error_kind_of([&] { read_vemb(in); }) == ErrorKind::PayloadLengthMismatch);
  }
  {
    std::istringstream in(vemb_bytes(2, 3, 6, "VEMX"));
    CHECK(error_kind_of([&] { read_vemb(in); }) == ErrorKind::BadMagic);
  }
  {
    std::istringstream in(std::string("VEMB\x01\x00", 6));
    CHECK(error_kind_of([&] { read_vemb(in); }) == ErrorKind::TruncatedPayload);
  }
  {
    std::string bytes = vemb_bytes(2, 2, 4);
    const float nan = std::numeric_limits<float>::quiet_NaN();
    std::memcpy(&bytes[24 + 4 * 3], &nan, 4);
    std::istringstream in(bytes);
    try {
      read_vemb(in);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonFiniteValue);
      CHECK(std::string(e.what()).find("row 1, column 1") != std::string::npos);
    }
  }
}

TEST_CASE("csv parsing") {
  {
    std::istringstream in("1.0,0.0\n0.0,1.0");
    const auto e = read_embeddings_csv(in);
    CHECK(e.values() == RowMatrix::Identity(2, 2));
  }
  {
    std::istringstream in("x,y\r\n1, 2\r\n3,4\r\n\r\n");
    const auto e = read_embeddings_csv(in);
    CHECK(e.rows() == 2);
    CHECK(e.values()(1, 0) == 3.0);
  }
  {
    std::istringstream in("1,2\n3\n");
    CHECK(error_kind_of([&] { read_embeddings_csv(in); }) == ErrorKind::RaggedRows);
  }
  {
    std::istringstream in("1,2\n3,abc\n");
    CHECK(error_kind_of([&] { read_embeddings_csv(in); }) == ErrorKind::ParseError);
  }
  {
    std::istringstream in("1,2\n3,inf\n");
    try {
      read_embeddings_csv(in);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonFiniteValue);
      CHECK(std::string(e.what()).find("row 1, column 1") != std::string::npos);
    }
  }
  {
    std::istringstream in("a,b\n");
    CHECK(error_kind_of([&] { read_embeddings_csv(in); }) == ErrorKind::InvalidParams);
  }
  CHECK(error_kind_of([] { read_embeddings("/nonexistent/file.csv", EmbeddingFormat::Csv); }) ==
        ErrorKind::IoFailure);
}

TEST_CASE("score json line carries ten fields in order") {
  ScoreReport r;
  r.method = ScoreMethod::FKEA;
  r.kernel = KernelSpec::gaussian(2.5);
  r.alpha = 1.5;
  r.t = 64;
  r.seed = 9;
  r.n = 100;
  r.score = 3.25;
  r.entropy = std::log(3.25);
  std::ostringstream out;
  write_scores(std::span(&r, 1), out, ScoreFormat::JsonLines);
  const std::string line = out.str();
  CHECK(std::count(line.begin(), line.end(), '\n') == 1);
  const auto j = nlohmann::ordered_json::parse(line);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"method", "kernel", "sigma", "alpha", "t", "seed", "n", "score", "entropy",
                                         "elapsed_seconds"});
  CHECK(j["method"] == "fkea");
  CHECK(j["sigma"] == 2.5);
  CHECK(j["t"] == 64);

  r.kernel = KernelSpec::cosine();
  r.t.reset();
  r.seed.reset();
  const auto k = score_to_json(r);
  CHECK(k["sigma"].is_null());
  CHECK(k["t"].is_null());
  CHECK(k["seed"].is_null());
}

TEST_CASE("score csv has a header and one row per report") {
  std::vector<ScoreReport> reports(2);
  std::ostringstream out;
  write_scores(reports, out, ScoreFormat::Csv);
  const std::string s = out.str();
  CHECK(s.rfind("method,kernel,sigma,alpha,t,seed,n,score,entropy,elapsed_seconds\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}

TEST_CASE("tables") {
  std::ostringstream empty;
  write_table(std::span<const TableRow>(), empty);
  CHECK(empty.str() == "method,alpha,t,sigma,n,repeat,seed,score,elapsed_seconds\n");

  TableRow row;
  row.method = ScoreMethod::Truncated;
  row.alpha = 1.0;
  row.t = 64;
  row.sigma = 0.5;
  row.n = 500;
  row.repeat = 1;
  row.seed = 42;
  row.score = 0.1;
  row.elapsed_seconds = 2.0;
  std::ostringstream one;
  write_table(std::span(&row, 1), one);
  CHECK(one.str() == "method,alpha,t,sigma,n,repeat,seed,score,elapsed_seconds\ntruncated,1,64,0.5,500,1,42,0.1,2\n");

  row.k = 8;
  std::ostringstream div;
  write_diversity_table(std::span(&row, 1), div);
  CHECK(div.str() == "k,method,alpha,t,sigma,n,repeat,seed,score,elapsed_seconds\n8,truncated,1,64,0.5,500,1,42,0.1,2\n");
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678, 2.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("distribution documents round-trip") {
  DiscreteDistribution d;
  d.support = testing::random_embeddings(4, 3, 1).values();
  d.probs = {0.1, 0.2, 0.3, 0.4};
  d.label = "four";
  const auto path = tmp("dist.json");
  write_distribution(d, path);
  const auto back = read_distribution(path);
  CHECK(back.support == d.support);
  CHECK(back.probs == d.probs);
  CHECK(back.label == "four");

  CHECK(error_kind_of([] { distribution_from_json(nlohmann::json::parse(R"({"support": [[1]]})")); }) ==
        ErrorKind::ParseError);
  CHECK(error_kind_of([] {
          distribution_from_json(nlohmann::json::parse(R"({"support": [[1], [2, 3]], "probs": [0.5, 0.5]})"));
        }) == ErrorKind::RaggedRows);
  CHECK(error_kind_of([] {
          distribution_from_json(nlohmann::json::parse(R"({"support": [[1], [2]], "probs": [0.5, 0.6]})"));
        }) == ErrorKind::NotAProbability);
}
