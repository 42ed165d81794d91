// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pitchlex/corpus.hpp"
#include "pitchlex/subtitles.hpp"

namespace pitchlex {

struct NormalizeOptions {
  bool strip_brackets = true;  // drop "[Music]"-style annotations
  bool keep_numerals = true;   // false drops digit tokens entirely
};

/// Lowercase word list: punctuation removed except internal apostrophes,
/// numerals kept as digit strings.
std::vector<std::string> normalize_words(std::string_view text, const NormalizeOptions& options = {});

enum class EditOp { Match, Substitute, Insert, Delete };

struct AlignedPair {
  EditOp op = EditOp::Match;
  std::optional<std::string> ref;  // absent for Insert
  std::optional<std::string> hyp;  // absent for Delete

  bool operator==(const AlignedPair&) const = default;
};

struct WordAlignment {
  std::size_t matches = 0;
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t ref_len = 0;
  std::vector<AlignedPair> ops;  // reference order

  std::size_t edit_distance() const { return substitutions + insertions + deletions; }
};

/// Unit-cost Levenshtein alignment over words. Among minimum-cost
/// alignments the one with the most matches wins; remaining ties resolve
/// match > substitution > deletion > insertion, walking back from the end.
WordAlignment align_words(std::span<const std::string> ref, std::span<const std::string> hyp);

/// matches / ref_len. Throws Error(Undefined) when the reference is empty.
double hit_rate(const WordAlignment& alignment);

struct RecordAccuracy {
  std::string record_id;
  double hit_rate = 0.0;
};

struct SourceAccuracy {
  std::string source;
  std::vector<RecordAccuracy> records;  // corpus order
  double mean = 0.0;
  double sd = 0.0;  // sample sd; 0 for n = 1
  std::size_t n = 0;
};

struct AccuracyReport {
  std::string reference;
  std::vector<SourceAccuracy> sources;  // ranked by mean, best first
  std::vector<std::string> diagnostics;
};

struct BenchmarkOptions {
  std::string reference = "manual";
  std::vector<std::string> sources;  // empty: every non-reference source in the corpus
  NormalizeOptions normalize;
  FlattenOptions flatten;
};

AccuracyReport benchmark_sources(std::span<const CampaignRecord> corpus, const BenchmarkOptions& options = {});

/// record_id,source,hit_rate rows.
std::string accuracy_csv(const AccuracyReport& report);
/// Per-source mean/sd/n summary plus the ranking.
std::string accuracy_json(const AccuracyReport& report);

}  // namespace pitchlex
