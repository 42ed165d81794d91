// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pitchlex {

/// One crowdfunding campaign with its outcome, controls and texts.
struct CampaignRecord {
  std::string id;
  int funded = 0;
  double goal_usd = 0.0;
  long created_count = 1;
  int has_video = 0;
  long picture_count = 0;
  double duration_days = 0.0;
  long updates_count = 0;
  double pledged_usd = 0.0;
  long reward_levels = 1;
  int team = 0;
  int creativity = 1;
  std::string description;
  // source name ("otter", "youtube", "manual", ...) -> raw subtitle bytes or plain text
  std::map<std::string, std::string> subtitles;

  bool operator==(const CampaignRecord&) const = default;
};

inline constexpr std::size_t kControlCount = 10;
inline constexpr std::array<std::string_view, kControlCount> kControlNames = {
    "goal",     "created",     "video",       "picture", "duration",
    "log_updates", "log_pledged", "reward_levels", "team", "creativity"};

struct ControlVector {
  double goal = 0.0;
  double created = 0.0;
  double video = 0.0;
  double picture = 0.0;
  double duration = 0.0;
  double log_updates = 0.0;  // ln(1 + updates_count)
  double log_pledged = 0.0;  // ln(1 + pledged_usd)
  double reward_levels = 0.0;
  double team = 0.0;
  double creativity = 0.0;

  /// Values in kControlNames order.
  std::array<double, kControlCount> values() const;
};

enum class CorpusFormat { Csv, Jsonl };

/// Picks the format from the extension: .csv, or .jsonl/.ndjson/.json.
CorpusFormat corpus_format_for(const std::filesystem::path& path);

/// Reads records in file order. Side files named by *_path columns resolve
/// against the corpus file's directory.
///
/// Throws Error(Schema) for a missing or mistyped field (naming the row and
/// field) or a duplicate id, and Error(Io) when a side file cannot be read.
std::vector<CampaignRecord> load_corpus(const std::filesystem::path& path, CorpusFormat format);
std::vector<CampaignRecord> load_corpus(const std::filesystem::path& path);

/// Inline serialization; load_corpus on the output yields equal records.
std::string write_corpus(std::span<const CampaignRecord> records, CorpusFormat format);

struct Violation {
  std::string field;
  std::string rule;
};

/// Empty iff every record invariant holds.
std::vector<Violation> validate_record(const CampaignRecord& record);

ControlVector derive_controls(const CampaignRecord& record);

}  // namespace pitchlex
