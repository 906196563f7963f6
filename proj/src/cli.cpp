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

#include "vendi/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "vendi/approx.hpp"
#include "vendi/entropy.hpp"
#include "vendi/error.hpp"
#include "vendi/harness.hpp"
#include "vendi/io.hpp"
#include "vendi/oracle.hpp"
#include "vendi/parallel.hpp"

namespace vendi {

namespace {

const std::vector<std::string> kKernels{"cosine", "gaussian"};
const std::vector<std::string> kScoreMethods{"exact", "truncated", "nystrom", "fkea", "rke"};
const std::vector<std::string> kStatements{"thm1", "cor1", "cor2a", "cor2b", "thm2", "thm3a", "thm3b"};

// "-" or "stdout" means the caller's output stream.
void emit(const std::string& target, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (target == "-" || target == "stdout") {
    write(out);
    out.flush();
    return;
  }
  std::ofstream file(target, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::IoFailure, "cannot open '" + target + "' for writing");
  write(file);
  file.flush();
  if (!file) throw Error(ErrorKind::IoFailure, "write to '" + target + "' failed");
}

struct KernelArgs {
  std::string kernel = "cosine";
  std::optional<double> sigma;
};

void add_kernel_options(CLI::App* cmd, KernelArgs& k) {
  cmd->add_option("--kernel", k.kernel, "Kernel")->check(CLI::IsMember(kKernels))->capture_default_str();
  cmd->add_option("--sigma", k.sigma, "Gaussian bandwidth (required with --kernel gaussian)");
}

KernelSpec resolve_kernel(const KernelArgs& k, std::ostream& err) {
  const KernelKind kind = parse_kernel_kind(k.kernel);
  if (kind == KernelKind::Cosine) {
    if (k.sigma) err << "warning: --sigma is ignored for --kernel cosine\n";
    return KernelSpec::cosine();
  }
  if (!k.sigma) throw Error(ErrorKind::InvalidParams, "--sigma is required with --kernel gaussian");
  const KernelSpec spec = KernelSpec::gaussian(*k.sigma);
  spec.validate();
  return spec;
}

std::size_t require_t(const std::optional<std::size_t>& t, const std::string& method) {
  if (!t) throw Error(ErrorKind::InvalidParams, "--t is required with --method " + method);
  if (*t < 1) throw Error(ErrorKind::InvalidParams, "--t must be >= 1");
  return *t;
}

std::string fixed_decimals(double value, int decimals) {
  // printf rounds the exact binary value; ties go to even.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel-entropy diversity scores, oracles, bounds and sweeps", "vendi"};
  app.require_subcommand(1);

  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = available parallelism)")
      ->envname("VENDI_THREADS")
      ->capture_default_str();

  // score
  auto* score = app.add_subcommand("score", "Score an embedding file");
  std::string input;
  std::string format;
  KernelArgs score_kernel;
  double alpha = 1.0;
  std::string method = "exact";
  std::optional<std::size_t> t;
  std::uint64_t seed = 0;
  double rcond = kDefaultNystromRcond;
  std::string out_path = "-";
  std::string out_format = "jsonl";
  score->add_option("--input", input, "Embedding file")->required()->check(CLI::ExistingFile);
  score->add_option("--format", format, "vemb|csv (default: csv for *.csv, else vemb)")
      ->check(CLI::IsMember({"vemb", "csv"}));
  add_kernel_options(score, score_kernel);
  auto* score_alpha = score->add_option("--alpha", alpha, "Entropy order")->capture_default_str();
  score->add_option("--method", method, "Estimator")->check(CLI::IsMember(kScoreMethods))->capture_default_str();
  score->add_option("--t", t, "Truncation rank / feature count / landmark count");
  score->add_option("--seed", seed, "Seed for fkea frequencies or nystrom landmarks")->capture_default_str();
  score->add_option("--rcond", rcond, "Nystrom landmark-block cutoff")->capture_default_str();
  score->add_option("--out", out_path, "Output path or - for stdout")->capture_default_str();
  score->add_option("--out-format", out_format, "jsonl|csv")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Population score of a distribution document");
  std::string dist_path;
  KernelArgs oracle_kernel;
  double oracle_alpha = 1.0;
  std::optional<std::size_t> oracle_t;
  std::string oracle_out = "-";
  std::string oracle_format = "jsonl";
  oracle->add_option("--dist", dist_path, "Distribution JSON")->required()->check(CLI::ExistingFile);
  add_kernel_options(oracle, oracle_kernel);
  oracle->add_option("--alpha", oracle_alpha, "Entropy order")->capture_default_str();
  oracle->add_option("--t", oracle_t, "Truncation rank");
  oracle->add_option("--out", oracle_out, "Output path or - for stdout")->capture_default_str();
  oracle->add_option("--out-format", oracle_format, "jsonl|csv")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate a concentration bound");
  std::string statement;
  BoundQuery query;
  int decimals = 5;
  bound->add_option("--statement", statement, "Statement")->required()->check(CLI::IsMember(kStatements));
  bound->add_option("--n", query.n, "Sample size")->required();
  bound->add_option("--delta", query.delta, "Failure probability")->capture_default_str();
  bound->add_option("--alpha", query.alpha, "Entropy order")->capture_default_str();
  bound->add_option("--d", query.d, "Feature dimension (cor2a, cor2b)");
  bound->add_option("--t", query.t, "Truncation rank (thm2, thm3a, thm3b)");
  bound->add_option("--tau", query.tau, "Eigenvalue decay ratio (thm3b)");
  bound->add_option("--r", query.r, "Rank (thm3b)");
  bound->add_option("--decimals", decimals, "Printed decimals")->check(CLI::Range(0, 17))->capture_default_str();

  // converge / diversity
  auto* converge = app.add_subcommand("converge", "Run a convergence sweep");
  auto* diversity = app.add_subcommand("diversity", "Run a diversity sweep");
  std::string config_path;
  std::string table_out;
  for (auto* cmd : {converge, diversity}) {
    cmd->add_option("--config", config_path, "Sweep config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", table_out, "CSV output path or -")->required();
  }

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic mixture distribution document");
  SynthParams sp;
  std::string layout = "sphere";
  std::string synth_out;
  synth->add_option("--k", sp.k, "Modes")->required();
  synth->add_option("--d", sp.d, "Dimension")->required();
  synth->add_option("--spread", sp.spread, "Center radius")->capture_default_str();
  synth->add_option("--within-std", sp.within_std, "Within-mode noise scale")->capture_default_str();
  synth->add_option("--seed", sp.seed, "Seed")->capture_default_str();
  synth->add_option("--atoms-per-mode", sp.atoms_per_mode, "Atoms per mode")->capture_default_str();
  synth->add_option("--layout", layout, "sphere|orthogonal")
      ->check(CLI::IsMember({"sphere", "orthogonal"}))
      ->capture_default_str();
  synth->add_option("--out", synth_out, "Output path or -")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    set_thread_count(threads);

    if (score->parsed()) {
      const KernelSpec spec = resolve_kernel(score_kernel, err);
      if (format.empty()) format = input.size() >= 4 && input.ends_with(".csv") ? "csv" : "vemb";
      if (method == "rke" && score_alpha->count() > 0) {
        err << "warning: --alpha is ignored for --method rke (fixed at 2)\n";
      }
      std::optional<std::size_t> tt;
      if (method == "truncated" || method == "nystrom" || method == "fkea") tt = require_t(t, method);
      if (method == "fkea" && spec.kind != KernelKind::Gaussian) {
        throw Error(ErrorKind::ShiftInvariantRequired, "--method fkea needs --kernel gaussian");
      }
      const ScoreFormat sf = parse_score_format(out_format);

      const EmbeddingMatrix e = read_embeddings(input, parse_embedding_format(format));
      ScoreReport report;
      if (method == "exact") report = vendi_score(e, spec, alpha);
      else if (method == "truncated") report = truncated_vendi_score(e, spec, alpha, *tt);
      else if (method == "nystrom") report = nystrom_truncated_vendi(e, spec, alpha, *tt, seed, rcond);
      else if (method == "fkea") report = fkea_truncated_vendi(e, spec, alpha, *tt, seed);
      else report = rke_score(e, spec);
      emit(out_path, out, [&](std::ostream& o) { write_scores(std::span(&report, 1), o, sf); });
    } else if (oracle->parsed()) {
      const KernelSpec spec = resolve_kernel(oracle_kernel, err);
      const ScoreFormat sf = parse_score_format(oracle_format);
      const DiscreteDistribution dist = read_distribution(dist_path);
      const ScoreReport report = population_vendi(dist, spec, oracle_alpha, oracle_t);
      emit(oracle_out, out, [&](std::ostream& o) { write_scores(std::span(&report, 1), o, sf); });
    } else if (bound->parsed()) {
      query.statement = parse_bound_statement(statement);
      const double value = theoretical_bound(query);
      if (is_asymptotic(query.statement)) {
        err << "note: " << statement << " carries an unspecified universal constant; printed with constant 1\n";
      }
      out << fixed_decimals(value, decimals) << '\n';
    } else if (converge->parsed()) {
      const auto path = std::filesystem::path(config_path);
      const SweepConfig cfg = sweep_config_from_json(read_json_file(path), path.parent_path());
      const auto rows = convergence_sweep(cfg);
      emit(table_out, out, [&](std::ostream& o) { write_table(rows, o); });
    } else if (diversity->parsed()) {
      const DiversityConfig cfg = diversity_config_from_json(read_json_file(config_path));
      const auto rows = diversity_sweep(cfg);
      emit(table_out, out, [&](std::ostream& o) { write_diversity_table(rows, o); });
    } else if (synth->parsed()) {
      sp.layout = parse_synth_layout(layout);
      const DiscreteDistribution dist = synth_mixture(sp);
      emit(synth_out, out, [&](std::ostream& o) { o << distribution_to_json(dist).dump(1) << '\n'; });
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.kind()) ? kExitValidation : kExitComputation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace vendi
