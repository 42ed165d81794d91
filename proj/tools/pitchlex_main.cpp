// SPDX-License-Identifier: Apache-2.0
// pitchlex: linguistic features, transcript accuracy and the seven-model
// funding regression suite over a campaign corpus.
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pitchlex/pitchlex.h"

namespace {

struct Options {
  std::string corpus;
  std::string dict;
  std::string map;
  std::string sources;
  std::string out;
  std::string format;
  std::string reference;
  std::string workers;
  std::string tol;
  std::string max_iter;
  bool standardize = false;
  bool keep_brackets = false;
};

int report_failure(pl_status status) {
  std::fprintf(stderr, "pitchlex: error: %s: %s\n", pl_status_name(status), pl_last_error());
  return 1;
}

int run(const Options& opts, const char* command) {
  pl_config* config = nullptr;
  if (auto st = pl_config_create(&config); st != PL_OK) return report_failure(st);

  const std::vector<std::pair<const char*, const std::string*>> settings = {
      {"corpus", &opts.corpus},   {"dict", &opts.dict},       {"map", &opts.map},
      {"sources", &opts.sources}, {"out", &opts.out},         {"format", &opts.format},
      {"workers", &opts.workers}, {"tol", &opts.tol},         {"max_iter", &opts.max_iter},
      {"reference", &opts.reference}};
  for (const auto& [key, value] : settings) {
    if (value->empty()) continue;
    if (auto st = pl_config_set(config, key, value->c_str()); st != PL_OK) {
      pl_config_free(config);
      return report_failure(st);
    }
  }
  pl_config_set(config, "standardize", opts.standardize ? "true" : "false");
  pl_config_set(config, "keep_brackets", opts.keep_brackets ? "true" : "false");

  pl_report* report = nullptr;
  const auto st = pl_run(config, command, &report);
  pl_config_free(config);
  if (st != PL_OK) return report_failure(st);

  for (size_t i = 0; i < pl_report_diagnostic_count(report); ++i) {
    std::fprintf(stderr, "pitchlex: %s\n", pl_report_diagnostic(report, i));
  }
  for (size_t i = 0; i < pl_report_written_count(report); ++i) {
    std::fprintf(stderr, "wrote %s\n", pl_report_written(report, i));
  }
  const std::string summary = pl_report_summary(report);
  if (!summary.empty()) std::fputs(summary.back() == '\n' ? summary.c_str() : (summary + "\n").c_str(), stdout);
  pl_report_free(report);
  return 0;
}

// PITCHLEX_<NAME> variables become arguments ahead of the real ones. Options
// keep their last value, so flags beat the environment, and anything set
// either way beats the --config file.
struct EnvOption {
  const char* flag;
  const char* env;
  bool is_switch;
};

constexpr EnvOption kEnvOptions[] = {
    {"--corpus", "PITCHLEX_CORPUS", false},       {"--dict", "PITCHLEX_DICT", false},
    {"--map", "PITCHLEX_MAP", false},             {"--sources", "PITCHLEX_SOURCES", false},
    {"--out", "PITCHLEX_OUT", false},             {"--format", "PITCHLEX_FORMAT", false},
    {"--reference", "PITCHLEX_REFERENCE", false}, {"--standardize", "PITCHLEX_STANDARDIZE", true},
    {"--keep-brackets", "PITCHLEX_KEEP_BRACKETS", true}, {"--workers", "PITCHLEX_WORKERS", false},
    {"--tol", "PITCHLEX_TOL", false},             {"--max-iter", "PITCHLEX_MAX_ITER", false},
};

bool truthy(std::string v) {
  for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return v == "1" || v == "true" || v == "yes" || v == "on";
}

std::vector<std::string> with_environment(int argc, char** argv) {
  std::vector<std::string> args{argv[0]};
  for (const auto& o : kEnvOptions) {
    const char* value = std::getenv(o.env);
    if (value == nullptr) continue;
    if (o.is_switch) {
      if (truthy(value)) args.emplace_back(o.flag);
    } else {
      args.emplace_back(std::string(o.flag) + "=" + value);
    }
  }
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowdfunding pitch text analysis"};
  app.set_version_flag("--version", pl_version());
  app.set_config("--config", "", "TOML/INI file with option values");
  app.footer("Each option may also be set as PITCHLEX_<NAME> (e.g. PITCHLEX_CORPUS, PITCHLEX_MAX_ITER).\n"
             "Precedence: command line, then environment, then --config file.");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Options opts;
  app.add_option("--corpus", opts.corpus, "Corpus file (.csv or .jsonl)");
  app.add_option("--dict", opts.dict, "Dictionary file; 'demo' or omitted uses the bundled lexicon");
  app.add_option("--map", opts.map, "Feature-to-category mapping: a file or inline 'feature=category,...'");
  app.add_option("--sources", opts.sources, "Two subtitle sources, comma separated (default otter,youtube)");
  app.add_option("--out", opts.out, "Output directory (default results)");
  app.add_option("--format", opts.format, "Table format")->check(CLI::IsMember({"markdown", "csv", "json"}));
  app.add_option("--reference", opts.reference, "Reference transcript source (default manual)");
  app.add_flag("--standardize", opts.standardize, "z-score predictors before fitting");
  app.add_flag("--keep-brackets", opts.keep_brackets, "Keep [bracketed] annotations in transcripts");
  app.add_option("--workers", opts.workers, "Worker threads (default 1)");
  app.add_option("--tol", opts.tol, "Newton convergence tolerance");
  app.add_option("--max-iter", opts.max_iter, "Newton iteration limit");

  std::string command;
  app.add_subcommand("features", "Per-record features and descriptive statistics")
      ->callback([&] { command = "features"; });
  app.add_subcommand("accuracy", "Word hit rate of each subtitle source against the reference")
      ->callback([&] { command = "accuracy"; });
  app.add_subcommand("suite", "Fit the seven models and render the regression table")
      ->callback([&] { command = "suite"; });

  const auto args = with_environment(argc, argv);
  std::vector<char*> raw;
  for (const auto& a : args) raw.push_back(const_cast<char*>(a.c_str()));
  CLI11_PARSE(app, static_cast<int>(raw.size()), raw.data());
  if (opts.corpus.empty()) {
    std::fprintf(stderr, "pitchlex: error: --corpus is required\n");
    return 1;
  }
  return run(opts, command.c_str());
}
