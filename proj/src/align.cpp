// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/align.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "csv.hpp"
#include "pitchlex/error.hpp"
#include "pitchlex/lexicon.hpp"

namespace pitchlex {

std::vector<std::string> normalize_words(std::string_view text, const NormalizeOptions& options) {
  const std::string cleaned = options.strip_brackets ? strip_annotations(text) : std::string(text);
  std::vector<std::string> words;
  for (auto& tok : tokenize(cleaned)) {
    if (tok.kind == TokenKind::Number && !options.keep_numerals) continue;
    words.push_back(std::move(tok.surface));
  }
  return words;
}

WordAlignment align_words(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  // Cell (i, j) scores ref[0..i) against hyp[0..j): fewest edits, then most matches.
  struct Cell {
    std::size_t cost = 0;
    std::size_t matches = 0;
    bool operator==(const Cell&) const = default;
  };
  auto better = [](const Cell& a, const Cell& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.matches > b.matches;
  };
  std::vector<Cell> table((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Cell& { return table[i * (m + 1) + j]; };
  auto diag_step = [&](std::size_t i, std::size_t j) {
    const Cell& d = at(i - 1, j - 1);
    const bool same = ref[i - 1] == hyp[j - 1];
    return Cell{d.cost + (same ? 0 : 1), d.matches + (same ? 1 : 0)};
  };
  auto gap_step = [](const Cell& c) { return Cell{c.cost + 1, c.matches}; };

  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = {i, 0};
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = {j, 0};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      Cell best = diag_step(i, j);
      if (const auto up = gap_step(at(i - 1, j)); better(up, best)) best = up;
      if (const auto left = gap_step(at(i, j - 1)); better(left, best)) best = left;
      at(i, j) = best;
    }
  }

  WordAlignment a;
  a.ref_len = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const Cell here = at(i, j);
    const bool diag_ok = i > 0 && j > 0 && diag_step(i, j) == here;
    if (diag_ok && ref[i - 1] == hyp[j - 1]) {
      a.ops.push_back({EditOp::Match, ref[i - 1], hyp[j - 1]});
      ++a.matches;
      --i;
      --j;
    } else if (diag_ok) {
      a.ops.push_back({EditOp::Substitute, ref[i - 1], hyp[j - 1]});
      ++a.substitutions;
      --i;
      --j;
    } else if (i > 0 && gap_step(at(i - 1, j)) == here) {
      a.ops.push_back({EditOp::Delete, ref[i - 1], std::nullopt});
      ++a.deletions;
      --i;
    } else {
      a.ops.push_back({EditOp::Insert, std::nullopt, hyp[j - 1]});
      ++a.insertions;
      --j;
    }
  }
  std::reverse(a.ops.begin(), a.ops.end());
  return a;
}

double hit_rate(const WordAlignment& alignment) {
  if (alignment.ref_len == 0) throw Error(ErrorKind::Undefined, "hit rate is undefined for an empty reference");
  return static_cast<double>(alignment.matches) / static_cast<double>(alignment.ref_len);
}

AccuracyReport benchmark_sources(std::span<const CampaignRecord> corpus, const BenchmarkOptions& options) {
  AccuracyReport report;
  report.reference = options.reference;

  std::vector<std::string> sources = options.sources;
  if (sources.empty()) {
    std::set<std::string> seen;
    for (const auto& r : corpus) {
      for (const auto& [name, bytes] : r.subtitles) {
        if (name != options.reference) seen.insert(name);
      }
    }
    sources.assign(seen.begin(), seen.end());
  }

  std::vector<SourceAccuracy> per_source(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) per_source[s].source = sources[s];

  auto words_of = [&](const std::string& bytes) {
    return normalize_words(transcript_text(bytes, options.flatten), options.normalize);
  };

  for (const auto& record : corpus) {
    const auto ref_it = record.subtitles.find(options.reference);
    if (ref_it == record.subtitles.end()) {
      report.diagnostics.push_back("record " + record.id + ": no '" + options.reference +
                                   "' reference transcript, skipped");
      continue;
    }
    std::vector<std::string> ref;
    try {
      ref = words_of(ref_it->second);
    } catch (const Error& e) {
      report.diagnostics.push_back("record " + record.id + ": reference unreadable (" + e.what() + "), skipped");
      continue;
    }
    if (ref.empty()) {
      report.diagnostics.push_back("record " + record.id + ": reference transcript is empty, skipped");
      continue;
    }
    for (std::size_t s = 0; s < sources.size(); ++s) {
      const auto hyp_it = record.subtitles.find(sources[s]);
      if (hyp_it == record.subtitles.end()) {
        report.diagnostics.push_back("record " + record.id + ": no '" + sources[s] + "' track, pair omitted");
        continue;
      }
      try {
        const auto hyp = words_of(hyp_it->second);
        per_source[s].records.push_back({record.id, hit_rate(align_words(ref, hyp))});
      } catch (const Error& e) {
        report.diagnostics.push_back("record " + record.id + ": '" + sources[s] + "' track unreadable (" +
                                     e.what() + "), pair omitted");
      }
    }
  }

  for (auto& src : per_source) {
    src.n = src.records.size();
    if (src.n == 0) continue;
    double sum = 0.0;
    for (const auto& r : src.records) sum += r.hit_rate;
    src.mean = sum / static_cast<double>(src.n);
    if (src.n > 1) {
      double ss = 0.0;
      for (const auto& r : src.records) ss += (r.hit_rate - src.mean) * (r.hit_rate - src.mean);
      src.sd = std::sqrt(ss / static_cast<double>(src.n - 1));
    }
  }
  for (auto& src : per_source) {
    if (src.n > 0) report.sources.push_back(std::move(src));
  }
  std::stable_sort(report.sources.begin(), report.sources.end(),
                   [](const SourceAccuracy& a, const SourceAccuracy& b) { return a.mean > b.mean; });
  return report;
}

std::string accuracy_csv(const AccuracyReport& report) {
  std::string out;
  detail::append_csv_row(out, {"record_id", "source", "hit_rate"});
  for (const auto& src : report.sources) {
    for (const auto& r : src.records) {
      detail::append_csv_row(out, {r.record_id, src.source, fmt::format("{:.6f}", r.hit_rate)});
    }
  }
  return out;
}

std::string accuracy_json(const AccuracyReport& report) {
  nlohmann::ordered_json j;
  j["reference"] = report.reference;
  j["sources"] = nlohmann::ordered_json::array();
  j["ranking"] = nlohmann::ordered_json::array();
  for (const auto& src : report.sources) {
    j["sources"].push_back({{"source", src.source}, {"mean", src.mean}, {"sd", src.sd}, {"n", src.n}});
    j["ranking"].push_back(src.source);
  }
  j["diagnostics"] = report.diagnostics;
  return j.dump(2) + "\n";
}

}  // namespace pitchlex
