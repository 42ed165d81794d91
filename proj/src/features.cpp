// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/features.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "csv.hpp"
#include "pitchlex/error.hpp"
#include "text_util.hpp"

namespace pitchlex {

CategoryMapping CategoryMapping::identity() {
  CategoryMapping m;
  for (auto name : kRequiredCategories) m.feature_to_category.emplace(name, name);
  return m;
}

CategoryMapping CategoryMapping::parse(std::string_view text) {
  CategoryMapping m;
  std::string normalized = detail::normalize_newlines(text);
  std::replace(normalized.begin(), normalized.end(), ',', '\n');
  for (auto line : detail::split_lines(normalized)) {
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Config, "mapping entry '" + std::string(line) + "' is not feature=category");
    }
    const auto feature = detail::trim(line.substr(0, eq));
    const auto category = detail::trim(line.substr(eq + 1));
    if (feature.empty() || category.empty()) {
      throw Error(ErrorKind::Config, "mapping entry '" + std::string(line) + "' has an empty side");
    }
    m.feature_to_category[std::string(feature)] = std::string(category);
  }
  for (auto name : kRequiredCategories) {
    if (!m.feature_to_category.count(name)) {
      throw Error(ErrorKind::Config, "category mapping is missing feature '" + std::string(name) + "'");
    }
  }
  return m;
}

std::array<double, kFeatureCount> LinguisticFeatureVector::values() const {
  return {static_cast<double>(word_count), sixltr, dictionary, numbers, tone, sadness, adjectives,
          adverbs, perceptual, informal, certainty, discrepancy, present_focus};
}

double LinguisticFeatureVector::value(std::string_view name) const {
  const auto it = std::find(kFeatureNames.begin(), kFeatureNames.end(), name);
  if (it == kFeatureNames.end()) {
    throw Error(ErrorKind::InvalidArgument, "unknown feature '" + std::string(name) + "'");
  }
  return values()[static_cast<std::size_t>(it - kFeatureNames.begin())];
}

double tone_index(double posemo_pct, double negemo_pct) {
  const double total = posemo_pct + negemo_pct;
  if (total <= 0.0) return 50.0;
  return 50.0 + 50.0 * (posemo_pct - negemo_pct) / total;
}

FeatureExtractor::FeatureExtractor(const CategoryDictionary& dict, const CategoryMapping& mapping)
    : dict_(&dict) {
  for (std::size_t i = 0; i < kRequiredCategories.size(); ++i) {
    const auto feature = kRequiredCategories[i];
    const auto it = mapping.feature_to_category.find(feature);
    if (it == mapping.feature_to_category.end()) {
      throw Error(ErrorKind::Config, "category mapping is missing feature '" + std::string(feature) + "'");
    }
    const auto id = dict.find_category(it->second);
    if (!id) {
      throw Error(ErrorKind::Config, "dictionary has no category '" + it->second + "' (needed for " +
                                         std::string(feature) + ")");
    }
    slot_[i] = dict.index_of(*id);
  }
  if (const auto it = mapping.feature_to_category.find(kNumberWordsKey);
      it != mapping.feature_to_category.end()) {
    number_words_ = dict.find_category(it->second);
    if (!number_words_) {
      throw Error(ErrorKind::Config, "dictionary has no category '" + it->second + "' (needed for numbers)");
    }
  }
}

LinguisticFeatureVector FeatureExtractor::extract(std::string_view text) const {
  const auto tokens = tokenize(text);
  const auto profile = category_percentages(*dict_, tokens, number_words_);
  auto pct = [&](std::size_t feature) { return profile.category_pct[slot_[feature]]; };

  LinguisticFeatureVector v;
  v.word_count = profile.word_count;
  v.sixltr = profile.sixltr_pct;
  v.dictionary = profile.dictionary_pct;
  v.numbers = profile.numbers_pct;
  v.tone = tone_index(pct(0), pct(1));
  v.sadness = pct(2);
  v.adjectives = pct(3);
  v.adverbs = pct(4);
  v.perceptual = pct(5);
  v.informal = pct(6);
  v.certainty = pct(7);
  v.discrepancy = pct(8);
  v.present_focus = pct(9);
  return v;
}

LinguisticFeatureVector extract_features(std::string_view text, const CategoryDictionary& dict,
                                         const CategoryMapping& mapping) {
  return FeatureExtractor(dict, mapping).extract(text);
}

VariableStats describe(std::string name, std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "cannot summarize an empty sample");
  VariableStats s;
  s.name = std::move(name);
  s.obs = values.size();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  if (s.min == s.max) {
    s.mean = s.min;
    return s;
  }
  double sum = 0.0;
  for (double x : values) sum += x;
  s.mean = std::clamp(sum / static_cast<double>(values.size()), s.min, s.max);
  double ss = 0.0;
  for (double x : values) ss += (x - s.mean) * (x - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

DescriptiveStats summarize(std::span<const LinguisticFeatureVector> vectors) {
  if (vectors.empty()) throw Error(ErrorKind::EmptyInput, "cannot summarize an empty list of feature vectors");
  DescriptiveStats stats;
  std::vector<double> column(vectors.size());
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    for (std::size_t i = 0; i < vectors.size(); ++i) column[i] = vectors[i].values()[f];
    stats.variables.push_back(describe(std::string(kFeatureNames[f]), column));
  }
  return stats;
}

std::string stats_csv(const DescriptiveStats& stats) {
  std::string out;
  detail::append_csv_row(out, {"variable", "obs", "mean", "sd", "min", "max"});
  for (const auto& v : stats.variables) {
    detail::append_csv_row(out, {v.name, std::to_string(v.obs), fmt::format("{:.3f}", v.mean),
                                 fmt::format("{:.3f}", v.sd), fmt::format("{:.3f}", v.min),
                                 fmt::format("{:.3f}", v.max)});
  }
  return out;
}

std::string features_csv(std::span<const LabeledFeatures> rows) {
  std::string out;
  detail::CsvRow header{"record_id", "source"};
  for (auto name : kFeatureNames) header.emplace_back(name);
  detail::append_csv_row(out, header);
  for (const auto& row : rows) {
    detail::CsvRow line{row.record_id, row.source};
    const auto values = row.features.values();
    line.push_back(std::to_string(row.features.word_count));
    for (std::size_t f = 1; f < kFeatureCount; ++f) line.push_back(fmt::format("{}", values[f]));
    detail::append_csv_row(out, line);
  }
  return out;
}

}  // namespace pitchlex
