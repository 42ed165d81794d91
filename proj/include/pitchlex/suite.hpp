// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pitchlex/corpus.hpp"
#include "pitchlex/error.hpp"
#include "pitchlex/features.hpp"
#include "pitchlex/glm.hpp"
#include "pitchlex/subtitles.hpp"

namespace pitchlex {

/// The twelve linguistic predictors of the standard model suite.
inline constexpr std::array<std::string_view, 12> kLinguisticPredictors = {
    "word_count", "sixltr",     "dictionary", "numbers",  "tone",      "sadness",
    "adjectives", "adverbs",    "perceptual", "informal", "certainty", "discrepancy"};

inline constexpr std::string_view kDescriptionSource = "description";

enum class TextKind { None, Description, Subtitle };

struct ModelSpec {
  int id = 0;
  std::string label;
  TextKind text_kind = TextKind::None;
  std::string text_source;  // "description" or a subtitle source name; empty for TextKind::None
  bool include_controls = false;
  bool include_video_dummy = false;
  std::string sample_filter;

  /// Predictor names in row order, intercept excluded.
  std::vector<std::string> predictors() const;
};

using SourcePair = std::pair<std::string, std::string>;

/// 1 controls | 2 description | 3 controls + description | 4/6 subtitle
/// source only | 5/7 controls without the video dummy + subtitle source.
ModelSpec build_model_spec(int id, const SourcePair& sources);

struct SuiteOptions {
  FitOptions fit;
  bool standardize = false;  // z-score predictors before fitting
  FlattenOptions flatten;
  unsigned workers = 1;
};

struct ModelOutcome {
  ModelSpec spec;
  std::optional<FitResult> fit;
  std::size_t obs = 0;
  std::vector<VifEntry> vif;
  std::vector<std::string> dropped_columns;
  std::vector<std::string> diagnostics;
  std::optional<ErrorKind> skip_reason;

  bool skipped() const { return !fit.has_value(); }
};

struct SourceStats {
  std::string source;
  DescriptiveStats stats;
};

struct SuiteResult {
  std::vector<ModelOutcome> models;  // ids 1..7 in order
  std::vector<SourceStats> stats;    // description first, then subtitle sources with data
  std::vector<int> ranking;          // fitted model ids by pseudo R2, best first
  std::vector<std::string> diagnostics;
};

/// Throws Error(EmptyInput) for an empty corpus. Models whose sample is
/// empty, single-class, separated or collinear are reported as skipped.
SuiteResult run_suite(std::span<const CampaignRecord> corpus, const FeatureExtractor& extractor,
                      const SourcePair& sources, const SuiteOptions& options = {});

/// Table-3-shaped grid: predictor rows, model columns, Obs. and Pseudo R2 rows.
struct TableGrid {
  std::vector<std::string> model_ids;
  std::vector<std::string> model_labels;
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  std::vector<std::string> footnotes;

  bool operator==(const TableGrid&) const = default;
};

/// "coef<stars> (se)" at three decimals.
std::string format_cell(double coefficient, double standard_error, double p_value);

std::string_view display_name(std::string_view predictor);

TableGrid build_grid(const SuiteResult& result);

enum class TableFormat { Markdown, Csv, Json };
TableFormat parse_table_format(std::string_view name);
std::string_view extension_for(TableFormat format);

std::string render_table(const SuiteResult& result, TableFormat format);
/// Reads the "table" member written by render_table(..., Json).
TableGrid grid_from_json(std::string_view json_text);

nlohmann::ordered_json to_json(const SuiteResult& result);
std::string vif_csv(const ModelOutcome& model);
std::string ranking_text(const SuiteResult& result);

}  // namespace pitchlex
