// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pitchlex/features.hpp"
#include "pitchlex/lexicon.hpp"
#include "pitchlex/suite.hpp"

namespace pitchlex {

struct RunConfig {
  std::filesystem::path corpus_path;
  std::string dictionary;  // file path; empty or "demo" selects the bundled lexicon
  std::string mapping;     // file path or inline "feature=category,..."; empty = identity
  std::vector<std::string> subtitle_sources{"otter", "youtube"};
  std::filesystem::path output_dir{"results"};
  TableFormat format = TableFormat::Markdown;
  bool standardize = false;
  bool keep_brackets = false;
  unsigned workers = 1;
  double tol = 1e-8;
  int max_iter = 50;
  std::string reference = "manual";
};

struct RunOutcome {
  std::string summary;  // for standard output
  std::vector<std::string> diagnostics;
  std::vector<std::filesystem::path> written;
};

/// The bundled demonstration lexicon in dictionary file format.
std::string_view demo_dictionary_text();
CategoryDictionary load_dictionary_spec(const std::string& spec);
CategoryMapping load_mapping_spec(const std::string& spec);

/// Each command computes everything in memory first and only then writes
/// its outputs (each through a temporary file), so a failing run leaves no
/// partial tables behind. Failures throw pitchlex::Error.
RunOutcome cmd_features(const RunConfig& config);
RunOutcome cmd_accuracy(const RunConfig& config);
RunOutcome cmd_suite(const RunConfig& config);

}  // namespace pitchlex
