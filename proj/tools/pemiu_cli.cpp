// Copyright 2026  The pemiu-toolkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED.  See the Apache 2 License for the specific
// language governing permissions and limitations under the License.

// Command-line frontend.  Deliberately speaks only the public C API, so it
// doubles as a worked example of driving the shared library.

#include <charconv>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pemiu.h"

namespace {

namespace fs = std::filesystem;

// Exit codes: 0 ok, 2 invalid input or arguments, 3 not enough data to
// satisfy the request, 4 filesystem trouble.
int exit_code_for(pemiu_status st) {
  switch (st) {
    case PEMIU_OK:
      return 0;
    case PEMIU_E_EMPTY_SCORE_LIST:
    case PEMIU_E_TOO_FEW_EXAMPLES:
    case PEMIU_E_SINGLE_CLASS:
      return 3;
    case PEMIU_E_IO:
      return 4;
    default:
      return 2;
  }
}

int report_failure(pemiu_status st) {
  std::cerr << "error: " << pemiu_status_name(st) << ": " << pemiu_last_error() << "\n";
  return exit_code_for(st);
}

#define CHECK(expr)                                    \
  do {                                                 \
    pemiu_status check_st_ = (expr);                   \
    if (check_st_ != PEMIU_OK) return report_failure(check_st_); \
  } while (0)

using CStr = std::unique_ptr<char, decltype(&pemiu_string_free)>;
CStr own(char* s) { return CStr(s, &pemiu_string_free); }

struct DatasetDeleter {
  void operator()(pemiu_dataset* d) const { pemiu_dataset_free(d); }
};
struct ScoresDeleter {
  void operator()(pemiu_scores* s) const { pemiu_scores_free(s); }
};
struct ProbeDeleter {
  void operator()(pemiu_probe* p) const { pemiu_probe_free(p); }
};
using DatasetPtr = std::unique_ptr<pemiu_dataset, DatasetDeleter>;
using ProbePtr = std::unique_ptr<pemiu_probe, ProbeDeleter>;

std::uint64_t draw_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Picks the explicit seed or draws one and says so; every randomized command
// runs with a concrete seed that also lands in the artifacts.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
  if (given) return *given;
  std::uint64_t seed = draw_seed();
  std::cout << "seed: " << seed << " (auto-drawn; pass --seed to reproduce)\n";
  return seed;
}

template <typename T>
std::vector<T> parse_csv_list(const std::string& text, const std::string& what) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    T value{};
    auto res = std::from_chars(text.data() + start, text.data() + end, value);
    if (res.ec != std::errc() || res.ptr != text.data() + end)
      throw CLI::ValidationError(what, "cannot parse '" + text + "' as a comma list");
    out.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << dir << ": " << ec.message()
              << "\n";
    return 4;
  }
  return 0;
}

int write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 4;
  }
  return 0;
}

DatasetPtr load_dataset(const std::string& path, int& rc) {
  pemiu_dataset* ds = nullptr;
  pemiu_status st = pemiu_dataset_read(path.c_str(), &ds);
  if (st != PEMIU_OK) {
    rc = report_failure(st);
    return nullptr;
  }
  rc = 0;
  return DatasetPtr(ds);
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g%%", v * 100.0);
  return buf;
}

/* ---- generate ---- */

struct GenerateOpts {
  std::uint32_t identities = 0;
  std::uint32_t samples = 2;
  double sigma = 0.1;
  double offset = 0.5;
  std::uint32_t dim = 512;
  bool no_unit_norm = false;
  std::string format = "pseb";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out = ".";
};

int run_generate(const GenerateOpts& opt) {
  if (int rc = ensure_out_dir(opt.out)) return rc;
  std::uint64_t seed = resolve_seed(opt.seed);

  pemiu_dataset* ds = nullptr;
  CHECK(pemiu_dataset_generate(opt.dim, opt.identities, opt.samples, opt.sigma, opt.offset,
                               opt.no_unit_norm ? 0 : 1, seed, opt.threads, &ds));
  DatasetPtr owner(ds);

  const bool csv = opt.format == "csv";
  fs::path path = fs::path(opt.out) / (csv ? "dataset.csv" : "dataset.pseb");
  CHECK(pemiu_dataset_write(ds, path.string().c_str(), csv ? PEMIU_FORMAT_CSV
                                                           : PEMIU_FORMAT_BINARY));
  size_t count = 0;
  CHECK(pemiu_dataset_size(ds, &count));
  std::cout << "wrote " << count << " records to " << path.string() << " (seed " << seed
            << ")\n";
  return 0;
}

/* ---- protect ---- */

struct ProtectOpts {
  std::string data;
  std::uint32_t k = 0;
  std::string mode = "per-identity";
  std::int32_t displacement = -1;
  std::string format = "pseb";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out = ".";
};

int run_protect(const ProtectOpts& opt) {
  if (int rc = ensure_out_dir(opt.out)) return rc;
  std::uint64_t seed = resolve_seed(opt.seed);

  int rc = 0;
  DatasetPtr ds = load_dataset(opt.data, rc);
  if (!ds) return rc;

  pemiu_protect_mode mode = PEMIU_PROTECT_PER_IDENTITY;
  if (opt.mode == "per-record")
    mode = PEMIU_PROTECT_PER_RECORD;
  else if (opt.mode == "fixed")
    mode = PEMIU_PROTECT_FIXED;

  pemiu_dataset* prot = nullptr;
  char* log_json = nullptr;
  CHECK(pemiu_dataset_protect(ds.get(), opt.k, mode, opt.displacement, seed, opt.threads,
                              &prot, &log_json));
  DatasetPtr prot_owner(prot);
  CStr log_owner = own(log_json);

  const bool csv = opt.format == "csv";
  fs::path data_path = fs::path(opt.out) / (csv ? "protected.csv" : "protected.pseb");
  CHECK(pemiu_dataset_write(prot, data_path.string().c_str(),
                            csv ? PEMIU_FORMAT_CSV : PEMIU_FORMAT_BINARY));
  fs::path log_path = fs::path(opt.out) / "permutations.json";
  if (int wrc = write_text(log_path, std::string(log_json) + "\n")) return wrc;

  std::cout << "protected " << opt.data << " with K=" << opt.k << " (" << opt.mode
            << ", seed " << seed << ")\n"
            << "wrote " << data_path.string() << " and " << log_path.string() << "\n";
  return 0;
}

/* ---- evaluate ---- */

struct EvaluateOpts {
  std::vector<std::string> data;
  std::string pairing;
  std::string targets = "0.001,0.01";
  int threads = 1;
  std::string out = ".";
};

int run_evaluate(const EvaluateOpts& opt) {
  if (int rc = ensure_out_dir(opt.out)) return rc;
  std::vector<double> targets = parse_csv_list<double>(opt.targets, "--targets");

  for (const std::string& data_path : opt.data) {
    int rc = 0;
    DatasetPtr ds = load_dataset(data_path, rc);
    if (!ds) return rc;

    std::string stem = fs::path(data_path).stem().string();
    fs::path det_path = fs::path(opt.out) / ("det_" + stem + ".csv");
    fs::path ops_path = fs::path(opt.out) / ("operating_points_" + stem + ".json");

    char* ops_json = nullptr;
    CHECK(pemiu_evaluate(ds.get(), opt.pairing.empty() ? nullptr : opt.pairing.c_str(),
                         targets.data(), targets.size(), stem.c_str(),
                         det_path.string().c_str(), opt.threads, &ops_json));
    CStr ops_owner = own(ops_json);
    if (int wrc = write_text(ops_path, std::string(ops_json) + "\n")) return wrc;

    // One human-readable line per dataset; details live in the artifacts.
    pemiu_scores* scores = nullptr;
    CHECK(pemiu_score_protocol(ds.get(),
                               opt.pairing.empty() ? nullptr : opt.pairing.c_str(),
                               opt.threads, &scores));
    std::unique_ptr<pemiu_scores, ScoresDeleter> scores_owner(scores);
    double eer = 0.0, eer_t = 0.0;
    CHECK(pemiu_eer(scores, &eer, &eer_t));
    std::cout << stem << ": eer=" << percent(eer) << " at threshold " << eer_t;
    for (double target : targets) {
      double t = 0.0, fmr = 0.0, fnmr = 0.0;
      CHECK(pemiu_threshold_at_fmr(scores, target, &t, &fmr, &fnmr));
      std::cout << "; fnmr@fmr<=" << percent(target) << " = " << percent(fnmr);
    }
    std::cout << "\n";
  }
  return 0;
}

/* ---- rsr-sweep ---- */

struct SweepOpts {
  std::string data;
  std::uint32_t gen_identities = 500;
  std::uint32_t gen_samples = 2;
  double gen_sigma = 0.1;
  double gen_offset = 0.5;
  std::uint32_t gen_dim = 512;
  std::uint64_t gen_seed = 7;
  std::string k = "32,64,128";
  std::string p;
  std::string mode = "fixed";
  std::string channel = "identity";
  std::string targets = "0.001,0.01";
  bool per_cell_calibration = false;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out = ".";
};

int run_rsr_sweep(const SweepOpts& opt) {
  if (int rc = ensure_out_dir(opt.out)) return rc;
  std::uint64_t seed = resolve_seed(opt.seed);

  std::vector<std::uint32_t> k_list = parse_csv_list<std::uint32_t>(opt.k, "--k");
  std::vector<std::uint32_t> p_list;
  if (!opt.p.empty()) p_list = parse_csv_list<std::uint32_t>(opt.p, "--p");
  std::vector<double> targets = parse_csv_list<double>(opt.targets, "--targets");

  DatasetPtr ds;
  if (!opt.data.empty()) {
    int rc = 0;
    ds = load_dataset(opt.data, rc);
    if (!ds) return rc;
  } else {
    // Self-contained sweep on the synthetic reference corpus.
    pemiu_dataset* generated = nullptr;
    CHECK(pemiu_dataset_generate(opt.gen_dim, opt.gen_identities, opt.gen_samples,
                                 opt.gen_sigma, opt.gen_offset, 1, opt.gen_seed,
                                 opt.threads, &generated));
    ds.reset(generated);
    std::cout << "generated sweep corpus: " << opt.gen_identities << " identities x "
              << opt.gen_samples << " samples, dim " << opt.gen_dim << ", seed "
              << opt.gen_seed << "\n";
  }

  fs::path csv_path = fs::path(opt.out) / "rsr_grid.csv";
  CHECK(pemiu_rsr_sweep(ds.get(), k_list.data(), k_list.size(),
                        p_list.empty() ? nullptr : p_list.data(), p_list.size(),
                        opt.mode == "per-identity" ? PEMIU_SWEEP_PER_IDENTITY
                                                   : PEMIU_SWEEP_FIXED_DISPLACEMENT,
                        opt.channel.c_str(), targets.data(), targets.size(),
                        opt.per_cell_calibration ? 1 : 0, seed, opt.threads,
                        csv_path.string().c_str()));
  std::cout << "wrote " << csv_path.string() << " (seed " << seed << ")\n";
  return 0;
}

/* ---- attack-seed ---- */

struct AttackOpts {
  std::string protected_path;
  std::string originals_path;
  std::string record;
  std::string mode = "known-seed";
  std::string log;
  std::uint32_t k = 0;
  double threshold = 0.0;
  std::string channel = "identity";
  std::uint64_t budget = 1000000;
  std::string order = "exhaustive";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out = ".";
};

int run_attack(const AttackOpts& opt) {
  if (int rc = ensure_out_dir(opt.out)) return rc;

  int rc = 0;
  DatasetPtr prot = load_dataset(opt.protected_path, rc);
  if (!prot) return rc;
  DatasetPtr orig = load_dataset(opt.originals_path, rc);
  if (!orig) return rc;

  const bool brute = opt.mode == "brute-force";
  if (brute && opt.k == 0) {
    std::cerr << "error: brute-force mode needs --k\n";
    return 2;
  }
  if (!brute && opt.log.empty()) {
    std::cerr << "error: known-seed mode needs --log\n";
    return 2;
  }
  const bool randomized = brute && (opt.order == "random" || opt.channel.rfind("gaussian", 0) == 0);
  std::uint64_t seed = randomized ? resolve_seed(opt.seed) : opt.seed.value_or(0);

  char* report_json = nullptr;
  CHECK(pemiu_attack_seed(prot.get(), orig.get(), opt.record.c_str(),
                          brute ? PEMIU_ATTACK_BRUTE_FORCE : PEMIU_ATTACK_KNOWN_SEED,
                          opt.log.empty() ? nullptr : opt.log.c_str(), opt.k, opt.threshold,
                          opt.channel.c_str(), opt.budget,
                          opt.order == "random" ? PEMIU_ORDER_RANDOM : PEMIU_ORDER_EXHAUSTIVE,
                          seed, opt.threads, &report_json));
  CStr report_owner = own(report_json);

  fs::path report_path = fs::path(opt.out) / "attack_report.json";
  if (int wrc = write_text(report_path, std::string(report_json) + "\n")) return wrc;

  // Small stdout summary; the JSON has the full story.
  std::string text(report_json);
  auto grab = [&text](const std::string& key) {
    std::size_t pos = text.find("\"" + key + "\":");
    if (pos == std::string::npos) return std::string("?");
    pos = text.find(':', pos) + 1;
    while (pos < text.size() && text[pos] == ' ') ++pos;
    std::size_t end = text.find_first_of(",\n}", pos);
    return text.substr(pos, end - pos);
  };
  std::cout << opt.mode << " attack on '" << opt.record
            << "': success=" << grab("success") << " best_score=" << grab("best_score")
            << " candidates_tried=" << grab("candidates_tried") << "\n"
            << "wrote " << report_path.string() << "\n";
  return 0;
}

/* ---- probe ---- */

struct ProbeOpts {
  std::string train;
  std::vector<std::string> eval;
  std::uint32_t folds = 5;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out = ".";
};

int run_probe(const ProbeOpts& opt) {
  if (int rc = ensure_out_dir(opt.out)) return rc;
  std::uint64_t seed = resolve_seed(opt.seed);

  int rc = 0;
  DatasetPtr train = load_dataset(opt.train, rc);
  if (!train) return rc;

  std::string train_stem = fs::path(opt.train).stem().string();
  pemiu_probe* probe = nullptr;
  char* report_json = nullptr;
  CHECK(pemiu_probe_train(train.get(), opt.folds, seed, train_stem.c_str(), opt.threads,
                          &probe, &report_json));
  ProbePtr probe_owner(probe);
  CStr report_owner = own(report_json);

  auto emit = [&](const std::string& stem, const char* json) -> int {
    fs::path path = fs::path(opt.out) / ("probe_report_" + stem + ".json");
    if (int wrc = write_text(path, std::string(json) + "\n")) return wrc;
    std::string text(json);
    std::size_t pos = text.find("\"mean\":");
    std::string mean = "?";
    if (pos != std::string::npos) {
      pos = text.find(':', pos) + 1;
      std::size_t end = text.find_first_of(",\n}", pos);
      mean = text.substr(pos, end - pos);
    }
    std::cout << stem << ": mean held-out accuracy =" << mean << " -> " << path.string()
              << "\n";
    return 0;
  };
  if (int erc = emit(train_stem, report_json)) return erc;

  for (const std::string& eval_path : opt.eval) {
    DatasetPtr eval_ds = load_dataset(eval_path, rc);
    if (!eval_ds) return rc;
    std::string stem = fs::path(eval_path).stem().string();
    char* eval_json = nullptr;
    CHECK(pemiu_probe_eval(probe, eval_ds.get(), stem.c_str(), opt.threads, &eval_json));
    CStr eval_owner = own(eval_json);
    if (int erc = emit(stem, eval_json)) return erc;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PE-MIU block-permutation protection toolkit"};
  app.set_version_flag("--version", std::string(pemiu_version()));
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* cmd_gen = app.add_subcommand("generate", "Generate a synthetic embedding corpus");
  cmd_gen->add_option("--identities", gen.identities, "Number of identities")->required();
  cmd_gen->add_option("--samples", gen.samples, "Samples per identity");
  cmd_gen->add_option("--sigma", gen.sigma, "Intra-identity coordinate noise");
  cmd_gen->add_option("--offset", gen.offset, "Attribute shift along the hidden direction");
  cmd_gen->add_option("--dim", gen.dim, "Embedding dimension");
  cmd_gen->add_flag("--no-unit-norm", gen.no_unit_norm, "Skip unit-norm scaling");
  cmd_gen->add_option("--format", gen.format, "Container: pseb or csv")
      ->check(CLI::IsMember({"pseb", "csv"}));
  cmd_gen->add_option("--seed", gen.seed, "Generator seed (auto-drawn when omitted)");
  cmd_gen->add_option("--threads", gen.threads, "Worker threads");
  cmd_gen->add_option("--out", gen.out, "Output directory");

  ProtectOpts prot;
  CLI::App* cmd_prot =
      app.add_subcommand("protect", "Apply block-permutation protection to a dataset");
  cmd_prot->add_option("--data", prot.data, "Input dataset")->required();
  cmd_prot->add_option("--k", prot.k, "Block size (must divide the dimension)")->required();
  cmd_prot->add_option("--mode", prot.mode, "per-identity, per-record or fixed")
      ->check(CLI::IsMember({"per-identity", "per-record", "fixed"}));
  cmd_prot->add_option("--p", prot.displacement,
                       "Displacement for fixed mode (0 or 2..N; omit for uniform)");
  cmd_prot->add_option("--format", prot.format, "Container: pseb or csv")
      ->check(CLI::IsMember({"pseb", "csv"}));
  cmd_prot->add_option("--seed", prot.seed, "Permutation seed (auto-drawn when omitted)");
  cmd_prot->add_option("--threads", prot.threads, "Worker threads");
  cmd_prot->add_option("--out", prot.out, "Output directory");

  EvaluateOpts ev;
  CLI::App* cmd_eval =
      app.add_subcommand("evaluate", "Verification metrics: DET curve, EER, thresholds");
  cmd_eval->add_option("--data", ev.data, "Dataset(s) to evaluate")->required();
  cmd_eval->add_option("--pairing", ev.pairing,
                       "Pairing CSV id_a,id_b,mated (default: all record pairs)");
  cmd_eval->add_option("--targets", ev.targets, "FMR targets, comma separated");
  cmd_eval->add_option("--threads", ev.threads, "Worker threads");
  cmd_eval->add_option("--out", ev.out, "Output directory");

  SweepOpts sweep;
  CLI::App* cmd_sweep = app.add_subcommand(
      "rsr-sweep", "Reversibility grid over block sizes and displacements");
  cmd_sweep->add_option("--data", sweep.data,
                        "Unprotected dataset (omit to generate the reference corpus)");
  cmd_sweep->add_option("--gen-identities", sweep.gen_identities,
                        "Generated corpus: identities");
  cmd_sweep->add_option("--gen-samples", sweep.gen_samples, "Generated corpus: samples/id");
  cmd_sweep->add_option("--gen-sigma", sweep.gen_sigma, "Generated corpus: noise sigma");
  cmd_sweep->add_option("--gen-offset", sweep.gen_offset, "Generated corpus: attribute offset");
  cmd_sweep->add_option("--gen-dim", sweep.gen_dim, "Generated corpus: dimension");
  cmd_sweep->add_option("--gen-seed", sweep.gen_seed, "Generated corpus: seed");
  cmd_sweep->add_option("--k", sweep.k, "Block sizes, comma separated");
  cmd_sweep->add_option("--p", sweep.p,
                        "Displacements, comma separated (default: per-K preset)");
  cmd_sweep->add_option("--mode", sweep.mode, "fixed or per-identity")
      ->check(CLI::IsMember({"fixed", "per-identity"}));
  cmd_sweep->add_option("--channel", sweep.channel,
                        "identity | gaussian:<sigma> | external:<path>");
  cmd_sweep->add_option("--targets", sweep.targets, "FMR targets, comma separated");
  cmd_sweep->add_flag("--per-cell-calibration", sweep.per_cell_calibration,
                      "Recalibrate thresholds on each cell's protected system");
  cmd_sweep->add_option("--seed", sweep.seed, "Sweep seed (auto-drawn when omitted)");
  cmd_sweep->add_option("--threads", sweep.threads, "Worker threads");
  cmd_sweep->add_option("--out", sweep.out, "Output directory");

  AttackOpts atk;
  CLI::App* cmd_atk =
      app.add_subcommand("attack-seed", "Known-seed or brute-force permutation attack");
  cmd_atk->add_option("--protected", atk.protected_path, "Protected dataset")->required();
  cmd_atk->add_option("--originals", atk.originals_path, "Original dataset")->required();
  cmd_atk->add_option("--record", atk.record, "Record id to attack")->required();
  cmd_atk->add_option("--mode", atk.mode, "known-seed or brute-force")
      ->check(CLI::IsMember({"known-seed", "brute-force"}));
  cmd_atk->add_option("--log", atk.log, "Permutation log (known-seed mode)");
  cmd_atk->add_option("--k", atk.k, "Block size (brute-force mode)");
  cmd_atk->add_option("--threshold", atk.threshold, "Acceptance threshold")->required();
  cmd_atk->add_option("--channel", atk.channel,
                      "identity | gaussian:<sigma> | external:<path>");
  cmd_atk->add_option("--budget", atk.budget, "Candidate budget (brute-force mode)");
  cmd_atk->add_option("--order", atk.order, "exhaustive or random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  cmd_atk->add_option("--seed", atk.seed, "Seed for randomized attack parts");
  cmd_atk->add_option("--threads", atk.threads, "Worker threads");
  cmd_atk->add_option("--out", atk.out, "Output directory");

  ProbeOpts probe;
  CLI::App* cmd_probe =
      app.add_subcommand("probe", "Attribute-leakage linear probe (stratified CV)");
  cmd_probe->add_option("--train", probe.train, "Training dataset")->required();
  cmd_probe->add_option("--eval", probe.eval,
                        "Dataset(s) scored with the trained per-fold probes");
  cmd_probe->add_option("--folds", probe.folds, "Cross-validation folds");
  cmd_probe->add_option("--seed", probe.seed, "Fold-assignment seed");
  cmd_probe->add_option("--threads", probe.threads, "Worker threads");
  cmd_probe->add_option("--out", probe.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_prot->parsed()) return run_protect(prot);
    if (cmd_eval->parsed()) return run_evaluate(ev);
    if (cmd_sweep->parsed()) return run_rsr_sweep(sweep);
    if (cmd_atk->parsed()) return run_attack(atk);
    if (cmd_probe->parsed()) return run_probe(probe);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
