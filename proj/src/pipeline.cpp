// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/pipeline.hpp"

#include <map>

#include <fmt/format.h>

#include "parallel.hpp"
#include "pitchlex/align.hpp"
#include "pitchlex/corpus.hpp"
#include "pitchlex/error.hpp"
#include "text_util.hpp"

namespace pitchlex {
namespace {

using OutputSet = std::vector<std::pair<std::string, std::string>>;

std::vector<CampaignRecord> load_nonempty_corpus(const RunConfig& config) {
  if (config.corpus_path.empty()) throw Error(ErrorKind::Config, "no corpus given (--corpus)");
  auto records = load_corpus(config.corpus_path);
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "empty corpus");
  return records;
}

FlattenOptions flatten_options(const RunConfig& config) { return {.strip_annotations = !config.keep_brackets}; }

void write_outputs(const RunConfig& config, const OutputSet& outputs, RunOutcome& outcome) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + config.output_dir.string());
  for (const auto& [name, contents] : outputs) {
    const auto path = config.output_dir / name;
    detail::write_file_atomic(path, contents);
    outcome.written.push_back(path);
  }
}

AccuracyReport accuracy_for(const std::vector<CampaignRecord>& records, const RunConfig& config) {
  BenchmarkOptions options;
  options.reference = config.reference;
  options.normalize.strip_brackets = !config.keep_brackets;
  options.flatten = flatten_options(config);
  return benchmark_sources(records, options);
}

bool has_reference(const std::vector<CampaignRecord>& records, const std::string& reference) {
  for (const auto& r : records) {
    if (r.subtitles.count(reference)) return true;
  }
  return false;
}

}  // namespace

CategoryDictionary load_dictionary_spec(const std::string& spec) {
  if (spec.empty() || spec == "demo") return CategoryDictionary::load(demo_dictionary_text());
  return CategoryDictionary::load(detail::read_file(spec));
}

CategoryMapping load_mapping_spec(const std::string& spec) {
  if (spec.empty()) return CategoryMapping::identity();
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return CategoryMapping::parse(detail::read_file(spec));
  if (spec.find('=') == std::string::npos) throw Error(ErrorKind::Io, "cannot read mapping file " + spec);
  return CategoryMapping::parse(spec);
}

RunOutcome cmd_features(const RunConfig& config) {
  const auto records = load_nonempty_corpus(config);
  const auto dict = load_dictionary_spec(config.dictionary);
  const FeatureExtractor extractor(dict, load_mapping_spec(config.mapping));
  const auto flatten = flatten_options(config);

  std::vector<std::string> sources{std::string(kDescriptionSource)};
  for (const auto& s : config.subtitle_sources) {
    if (std::find(sources.begin(), sources.end(), s) == sources.end()) sources.push_back(s);
  }

  // per_source[s][i] is empty when record i lacks source s.
  std::vector<std::vector<std::optional<LinguisticFeatureVector>>> per_source(
      sources.size(), std::vector<std::optional<LinguisticFeatureVector>>(records.size()));
  std::vector<std::vector<std::string>> notes(records.size());
  detail::parallel_for(records.size(), config.workers, [&](std::size_t i) {
    const auto& rec = records[i];
    per_source[0][i] = extractor.extract(rec.description);
    for (std::size_t s = 1; s < sources.size(); ++s) {
      const auto it = rec.subtitles.find(sources[s]);
      if (it == rec.subtitles.end()) continue;
      try {
        per_source[s][i] = extractor.extract(transcript_text(it->second, flatten));
      } catch (const Error& e) {
        notes[i].push_back("record " + rec.id + ": '" + sources[s] + "' track unreadable: " + e.what());
      }
    }
  });

  RunOutcome outcome;
  for (auto& n : notes) outcome.diagnostics.insert(outcome.diagnostics.end(), n.begin(), n.end());

  std::vector<LabeledFeatures> rows;
  OutputSet outputs;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    std::vector<LinguisticFeatureVector> present;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!per_source[s][i]) continue;
      rows.push_back({records[i].id, sources[s], *per_source[s][i]});
      present.push_back(*per_source[s][i]);
    }
    if (present.empty()) {
      outcome.diagnostics.push_back("no records carry source '" + sources[s] + "'");
      continue;
    }
    outputs.emplace_back("stats_" + sources[s] + ".csv", stats_csv(summarize(present)));
    outcome.summary += fmt::format("{}: {} records\n", sources[s], present.size());
  }
  outputs.insert(outputs.begin(), {"features.csv", features_csv(rows)});
  write_outputs(config, outputs, outcome);
  return outcome;
}

RunOutcome cmd_accuracy(const RunConfig& config) {
  const auto records = load_nonempty_corpus(config);
  if (!has_reference(records, config.reference)) {
    throw Error(ErrorKind::EmptyInput, "no record has a '" + config.reference + "' reference transcript");
  }
  const auto report = accuracy_for(records, config);

  RunOutcome outcome;
  outcome.diagnostics = report.diagnostics;
  for (const auto& src : report.sources) {
    outcome.summary += fmt::format("{}: mean hit rate {:.3f} (sd {:.3f}, n = {})\n", src.source, src.mean, src.sd, src.n);
  }
  write_outputs(config, {{"accuracy.csv", accuracy_csv(report)}, {"accuracy.json", accuracy_json(report)}}, outcome);
  return outcome;
}

RunOutcome cmd_suite(const RunConfig& config) {
  if (config.subtitle_sources.size() != 2) {
    throw Error(ErrorKind::Config, "the model suite needs exactly two subtitle sources (--sources a,b)");
  }
  const auto records = load_nonempty_corpus(config);
  const auto dict = load_dictionary_spec(config.dictionary);
  const FeatureExtractor extractor(dict, load_mapping_spec(config.mapping));

  SuiteOptions options;
  options.fit.tol = config.tol;
  options.fit.max_iter = config.max_iter;
  options.standardize = config.standardize;
  options.flatten = flatten_options(config);
  options.workers = config.workers;
  const SourcePair sources{config.subtitle_sources[0], config.subtitle_sources[1]};
  const auto result = run_suite(records, extractor, sources, options);

  if (result.ranking.empty()) {
    const auto& first = result.models.front();
    throw Error(first.skip_reason.value_or(ErrorKind::EmptyInput),
                "all models skipped; " + (first.diagnostics.empty() ? std::string("no diagnostics") : first.diagnostics.back()));
  }

  RunOutcome outcome;
  outcome.diagnostics = result.diagnostics;
  outcome.summary = ranking_text(result);

  OutputSet outputs;
  outputs.emplace_back(fmt::format("table.{}", extension_for(config.format)), render_table(result, config.format));
  outputs.emplace_back("fits.json", to_json(result).dump(2) + "\n");
  for (const auto& s : result.stats) outputs.emplace_back("stats_" + s.source + ".csv", stats_csv(s.stats));
  for (const auto& m : result.models) {
    if (!m.skipped()) outputs.emplace_back(fmt::format("vif_{}.csv", m.spec.id), vif_csv(m));
  }
  if (has_reference(records, config.reference)) {
    const auto report = accuracy_for(records, config);
    outputs.emplace_back("accuracy.csv", accuracy_csv(report));
    outputs.emplace_back("accuracy.json", accuracy_json(report));
  }
  write_outputs(config, outputs, outcome);
  return outcome;
}

}  // namespace pitchlex
