// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pitchlex/lexicon.hpp"

namespace pitchlex {

/// Feature names the extractor resolves against dictionary categories.
inline constexpr std::array<std::string_view, 10> kRequiredCategories = {
    "posemo",     "negemo",   "sadness",   "adjectives",  "adverbs",
    "perceptual", "informal", "certainty", "discrepancy", "present_focus"};

/// Optional mapping key: a category whose words ("three", "dozen") count as numbers.
inline constexpr std::string_view kNumberWordsKey = "numbers";

/// Feature-name to dictionary-category-name wiring.
struct CategoryMapping {
  std::map<std::string, std::string, std::less<>> feature_to_category;

  static CategoryMapping identity();
  /// Accepts "feature=category" pairs separated by commas or newlines;
  /// "#" starts a comment line. Every required feature must be present.
  static CategoryMapping parse(std::string_view text);
};

inline constexpr std::size_t kFeatureCount = 13;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "word_count", "sixltr",     "dictionary", "numbers",   "tone",
    "sadness",    "adjectives", "adverbs",    "perceptual", "informal",
    "certainty",  "discrepancy", "present_focus"};

struct LinguisticFeatureVector {
  std::size_t word_count = 0;
  double sixltr = 0.0;
  double dictionary = 0.0;
  double numbers = 0.0;
  double tone = 50.0;
  double sadness = 0.0;
  double adjectives = 0.0;
  double adverbs = 0.0;
  double perceptual = 0.0;
  double informal = 0.0;
  double certainty = 0.0;
  double discrepancy = 0.0;
  double present_focus = 0.0;

  /// Values in kFeatureNames order.
  std::array<double, kFeatureCount> values() const;
  double value(std::string_view name) const;
};

/// Bounded contrast of positive against negative emotion, 50 when neither occurs.
double tone_index(double posemo_pct, double negemo_pct);

class FeatureExtractor {
 public:
  /// Throws Error(Config) naming the first mapped category the dictionary lacks.
  FeatureExtractor(const CategoryDictionary& dict, const CategoryMapping& mapping);

  LinguisticFeatureVector extract(std::string_view text) const;
  const CategoryDictionary& dictionary() const noexcept { return *dict_; }

 private:
  const CategoryDictionary* dict_;
  std::array<std::size_t, kRequiredCategories.size()> slot_{};
  std::optional<int> number_words_;
};

LinguisticFeatureVector extract_features(std::string_view text, const CategoryDictionary& dict,
                                         const CategoryMapping& mapping = CategoryMapping::identity());

struct VariableStats {
  std::string name;
  std::size_t obs = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct DescriptiveStats {
  std::vector<VariableStats> variables;  // kFeatureNames order
};

/// Obs/mean/sample-sd/min/max per feature. Throws Error(EmptyInput) on an empty list.
DescriptiveStats summarize(std::span<const LinguisticFeatureVector> vectors);
VariableStats describe(std::string name, std::span<const double> values);

std::string stats_csv(const DescriptiveStats& stats);

struct LabeledFeatures {
  std::string record_id;
  std::string source;
  LinguisticFeatureVector features;
};

std::string features_csv(std::span<const LabeledFeatures> rows);

}  // namespace pitchlex
