// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/corpus.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "csv.hpp"
#include "pitchlex/error.hpp"
#include "text_util.hpp"

namespace pitchlex {
namespace {

using nlohmann::json;

constexpr std::string_view kSubtitlePrefix = "subtitle_";
constexpr std::string_view kPathSuffix = "_path";

[[noreturn]] void schema_error(std::size_t row, std::string_view field, const std::string& what) {
  throw Error(ErrorKind::Schema, fmt::format("row {}: field {}: {}", row, field, what));
}

// Uniform access to one CSV row or one JSONL object.
class FieldReader {
 public:
  explicit FieldReader(std::size_t row) : row_(row) {}
  virtual ~FieldReader() = default;

  virtual std::optional<std::string> text(std::string_view name) const = 0;
  virtual double real(std::string_view name) const = 0;
  virtual long integer(std::string_view name) const = 0;
  virtual std::vector<std::string> keys() const = 0;

  std::size_t row() const { return row_; }

 protected:
  std::size_t row_;
};

class CsvFields final : public FieldReader {
 public:
  CsvFields(std::size_t row, const std::vector<std::string>& header, const detail::CsvRow& cells)
      : FieldReader(row), header_(header), cells_(cells) {}

  std::optional<std::string> text(std::string_view name) const override {
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (header_[i] == name) {
        if (i >= cells_.size() || cells_[i].empty()) return std::nullopt;
        return cells_[i];
      }
    }
    return std::nullopt;
  }

  double real(std::string_view name) const override {
    const auto raw = required(name);
    const auto s = detail::trim(raw);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
      schema_error(row_, name, "expected a number, got '" + raw + "'");
    }
    return value;
  }

  long integer(std::string_view name) const override {
    const auto raw = required(name);
    const auto s = detail::trim(raw);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      schema_error(row_, name, "expected an integer, got '" + raw + "'");
    }
    return value;
  }

  std::vector<std::string> keys() const override { return header_; }

 private:
  std::string required(std::string_view name) const {
    auto v = text(name);
    if (!v) schema_error(row_, name, "missing value");
    return *v;
  }

  const std::vector<std::string>& header_;
  const detail::CsvRow& cells_;
};

class JsonFields final : public FieldReader {
 public:
  JsonFields(std::size_t row, const json& obj) : FieldReader(row), obj_(obj) {}

  std::optional<std::string> text(std::string_view name) const override {
    const auto it = obj_.find(name);
    if (it == obj_.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) schema_error(row_, name, "expected a string");
    return it->get<std::string>();
  }

  double real(std::string_view name) const override {
    const auto& v = required(name);
    if (v.is_boolean()) return v.get<bool>() ? 1.0 : 0.0;
    if (!v.is_number()) schema_error(row_, name, "expected a number, got " + v.dump());
    return v.get<double>();
  }

  long integer(std::string_view name) const override {
    const auto& v = required(name);
    if (v.is_boolean()) return v.get<bool>() ? 1 : 0;
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e18) return static_cast<long>(d);
    }
    schema_error(row_, name, "expected an integer, got " + v.dump());
  }

  std::vector<std::string> keys() const override {
    std::vector<std::string> out;
    for (const auto& [k, v] : obj_.items()) out.push_back(k);
    return out;
  }

 private:
  const json& required(std::string_view name) const {
    const auto it = obj_.find(name);
    if (it == obj_.end() || it->is_null()) schema_error(row_, name, "missing value");
    return *it;
  }

  const json& obj_;
};

std::string read_side_file(const std::filesystem::path& base, const std::string& rel,
                           const std::string& record_id) {
  const auto path = base / rel;
  try {
    return detail::read_file(path);
  } catch (const Error&) {
    throw Error(ErrorKind::Io, "record " + record_id + ": cannot read side file " + path.string());
  }
}

CampaignRecord read_record(const FieldReader& f, const std::filesystem::path& base) {
  CampaignRecord r;
  auto id = f.text("id");
  if (!id) schema_error(f.row(), "id", "missing value");
  r.id = *id;
  r.funded = static_cast<int>(f.integer("funded"));
  r.goal_usd = f.real("goal_usd");
  r.created_count = f.integer("created_count");
  r.has_video = static_cast<int>(f.integer("has_video"));
  r.picture_count = f.integer("picture_count");
  r.duration_days = f.real("duration_days");
  r.updates_count = f.integer("updates_count");
  r.pledged_usd = f.real("pledged_usd");
  r.reward_levels = f.integer("reward_levels");
  r.team = static_cast<int>(f.integer("team"));
  r.creativity = static_cast<int>(f.integer("creativity"));

  const auto inline_desc = f.text("description");
  const auto desc_path = f.text("description_path");
  if (inline_desc && desc_path) {
    schema_error(f.row(), "description", "both description and description_path are set");
  }
  if (desc_path) {
    r.description = read_side_file(base, *desc_path, r.id);
  } else if (inline_desc) {
    r.description = *inline_desc;
  }

  for (const auto& key : f.keys()) {
    if (!key.starts_with(kSubtitlePrefix)) continue;
    std::string source = key.substr(kSubtitlePrefix.size());
    const bool is_path = source.ends_with(kPathSuffix);
    if (is_path) source.resize(source.size() - kPathSuffix.size());
    if (source.empty()) schema_error(f.row(), key, "subtitle source name is empty");
    const auto value = f.text(key);
    if (!value) continue;
    std::string bytes = is_path ? read_side_file(base, *value, r.id) : *value;
    if (!r.subtitles.emplace(source, std::move(bytes)).second) {
      schema_error(f.row(), key, "subtitle source '" + source + "' given twice");
    }
  }
  return r;
}

void check_unique_ids(const std::vector<CampaignRecord>& records) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!seen.insert(records[i].id).second) {
      schema_error(i + 1, "id", "duplicate id '" + records[i].id + "'");
    }
  }
}

std::vector<CampaignRecord> load_csv(std::string_view text, const std::filesystem::path& base) {
  const auto rows = detail::parse_csv(text);
  std::vector<CampaignRecord> records;
  if (rows.empty()) return records;
  const auto& header = rows.front();
  {
    std::set<std::string> names;
    for (const auto& h : header) {
      if (!names.insert(h).second) schema_error(0, h, "duplicate column");
    }
    const bool has_desc = names.count("description") || names.count("description_path");
    if (!has_desc) schema_error(1, "description", "column missing (need description or description_path)");
    for (auto required : {"id", "funded", "goal_usd", "created_count", "has_video", "picture_count",
                          "duration_days", "updates_count", "pledged_usd", "reward_levels", "team",
                          "creativity"}) {
      if (!names.count(required)) schema_error(1, required, "column missing");
    }
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw Error(ErrorKind::Schema, fmt::format("row {}: expected {} fields, found {}", i,
                                                 header.size(), rows[i].size()));
    }
    records.push_back(read_record(CsvFields(i, header, rows[i]), base));
  }
  return records;
}

std::vector<CampaignRecord> load_jsonl(std::string_view text, const std::filesystem::path& base) {
  std::vector<CampaignRecord> records;
  const std::string normalized = detail::normalize_newlines(detail::strip_bom(text));
  const auto lines = detail::split_lines(normalized);
  std::size_t row = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = detail::trim(lines[i]);
    if (line.empty()) continue;
    ++row;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::Parse, fmt::format("jsonl line {}: {}", i + 1, e.what()));
    }
    if (!obj.is_object()) {
      throw Error(ErrorKind::Schema, fmt::format("row {}: expected a JSON object", row));
    }
    records.push_back(read_record(JsonFields(row, obj), base));
  }
  return records;
}

std::string format_real(double v) { return fmt::format("{}", v); }

}  // namespace

std::array<double, kControlCount> ControlVector::values() const {
  return {goal, created, video, picture, duration, log_updates, log_pledged, reward_levels, team, creativity};
}

CorpusFormat corpus_format_for(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return CorpusFormat::Csv;
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return CorpusFormat::Jsonl;
  throw Error(ErrorKind::Config, "cannot infer corpus format from '" + path.string() + "' (use .csv or .jsonl)");
}

std::vector<CampaignRecord> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  const std::string text = detail::read_file(path);
  const auto base = path.parent_path();
  auto records = format == CorpusFormat::Csv ? load_csv(text, base) : load_jsonl(text, base);
  check_unique_ids(records);
  return records;
}

std::vector<CampaignRecord> load_corpus(const std::filesystem::path& path) {
  return load_corpus(path, corpus_format_for(path));
}

std::string write_corpus(std::span<const CampaignRecord> records, CorpusFormat format) {
  std::set<std::string> sources;
  for (const auto& r : records) {
    for (const auto& [name, bytes] : r.subtitles) sources.insert(name);
  }

  std::string out;
  if (format == CorpusFormat::Csv) {
    detail::CsvRow header{"id", "funded", "goal_usd", "created_count", "has_video", "picture_count",
                          "duration_days", "updates_count", "pledged_usd", "reward_levels", "team",
                          "creativity", "description"};
    for (const auto& s : sources) header.push_back(std::string(kSubtitlePrefix) + s);
    detail::append_csv_row(out, header);
    for (const auto& r : records) {
      detail::CsvRow row{r.id,
                         std::to_string(r.funded),
                         format_real(r.goal_usd),
                         std::to_string(r.created_count),
                         std::to_string(r.has_video),
                         std::to_string(r.picture_count),
                         format_real(r.duration_days),
                         std::to_string(r.updates_count),
                         format_real(r.pledged_usd),
                         std::to_string(r.reward_levels),
                         std::to_string(r.team),
                         std::to_string(r.creativity),
                         r.description};
      for (const auto& s : sources) {
        const auto it = r.subtitles.find(s);
        row.push_back(it == r.subtitles.end() ? std::string() : it->second);
      }
      detail::append_csv_row(out, row);
    }
    return out;
  }

  for (const auto& r : records) {
    json obj = {{"id", r.id},
                {"funded", r.funded},
                {"goal_usd", r.goal_usd},
                {"created_count", r.created_count},
                {"has_video", r.has_video},
                {"picture_count", r.picture_count},
                {"duration_days", r.duration_days},
                {"updates_count", r.updates_count},
                {"pledged_usd", r.pledged_usd},
                {"reward_levels", r.reward_levels},
                {"team", r.team},
                {"creativity", r.creativity},
                {"description", r.description}};
    for (const auto& [name, bytes] : r.subtitles) obj[std::string(kSubtitlePrefix) + name] = bytes;
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<Violation> validate_record(const CampaignRecord& r) {
  std::vector<Violation> v;
  auto binary = [&](std::string_view field, int value) {
    if (value != 0 && value != 1) v.push_back({std::string(field), "must be 0 or 1"});
  };
  if (r.id.empty()) v.push_back({"id", "must be non-empty"});
  binary("funded", r.funded);
  if (!(std::isfinite(r.goal_usd) && r.goal_usd > 0)) v.push_back({"goal_usd", "must be > 0"});
  if (r.created_count < 1) v.push_back({"created_count", "must be >= 1"});
  binary("has_video", r.has_video);
  if (r.picture_count < 0) v.push_back({"picture_count", "must be >= 0"});
  if (!(std::isfinite(r.duration_days) && r.duration_days > 0)) v.push_back({"duration_days", "must be > 0"});
  if (r.updates_count < 0) v.push_back({"updates_count", "must be >= 0"});
  if (!(std::isfinite(r.pledged_usd) && r.pledged_usd >= 0)) v.push_back({"pledged_usd", "must be >= 0"});
  if (r.reward_levels < 1) v.push_back({"reward_levels", "must be >= 1"});
  binary("team", r.team);
  if (r.creativity < 1 || r.creativity > 3) v.push_back({"creativity", "must be in {1,2,3}"});
  for (const auto& [name, bytes] : r.subtitles) {
    if (name.empty()) v.push_back({"subtitles", "source name must be non-empty"});
  }
  return v;
}

ControlVector derive_controls(const CampaignRecord& r) {
  ControlVector c;
  c.goal = r.goal_usd;
  c.created = static_cast<double>(r.created_count);
  c.video = r.has_video;
  c.picture = static_cast<double>(r.picture_count);
  c.duration = r.duration_days;
  c.log_updates = std::log1p(static_cast<double>(r.updates_count));
  c.log_pledged = std::log1p(r.pledged_usd);
  c.reward_levels = static_cast<double>(r.reward_levels);
  c.team = r.team;
  c.creativity = r.creativity;
  return c;
}

}  // namespace pitchlex
